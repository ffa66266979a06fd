use std::collections::BTreeSet;
use std::f64::consts::FRAC_PI_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::config::RunConfig;
use crate::fock::{
    embed_one_body, embed_two_body, state_matrix, symmetry_defect, table_states, to_table_basis, Configuration,
    TableState, TwoBodyTensor,
};
use crate::linalg::{max_abs, orthonormality_defect, r, CMatrix};
use crate::nvmodel::{
    coulomb_expectations, excited_triplet_spin_orbit, nonradiative_links, spin_orbit_hamiltonian, spin_orbit_operators,
    spin_spin_hamiltonian, strain_hamiltonian, FineStructureParams, SpatialSpinOperator, StrainCoefficients,
};
use crate::quad::{build_orbitals, coulomb_tensor, spin_spin_parameters};
use crate::spectra::{
    axis_difference, polarization_vs_strain, selection_rules, singlet_transition_ratio, stark_scan, strain_scan,
    transition, Polarization, StrainAxis,
};
use crate::symm::{DanglingBondRep, DoubleGroup, IrrepName, RepCharacters};

use super::{excited_spread, linear_fit, relative_shift};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub group: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// One `PASS`/`FAIL` line per check.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            s.push_str(&format!("{tag} [{}] {}: {}\n", c.group, c.name, c.detail));
        }
        let failed = self.failures().count();
        s.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        s
    }

    fn push(&mut self, group: &'static str, name: &str, passed: bool, detail: String) {
        self.checks.push(Check { group, name: name.to_string(), passed, detail });
    }

    fn push_result(&mut self, group: &'static str, name: &str, r: crate::Result<(bool, String)>) {
        match r {
            Ok((p, d)) => self.push(group, name, p, d),
            Err(e) => self.push(group, name, false, format!("error: {e}")),
        }
    }
}

/// The allowed optical lines with their polarisation, (upper, lower, class).
pub const REFERENCE_SELECTION_RULES: [(&str, &str, Polarization); 18] = [
    ("A1", "3A2-", Polarization::SigmaPlus),
    ("A2", "3A2-", Polarization::SigmaPlus),
    ("E1", "3A2-", Polarization::SigmaMinus),
    ("E2", "3A2-", Polarization::SigmaMinus),
    ("Ex", "3A20", Polarization::Y),
    ("Ey", "3A20", Polarization::X),
    ("A1", "3A2+", Polarization::SigmaMinus),
    ("A2", "3A2+", Polarization::SigmaMinus),
    ("E1", "3A2+", Polarization::SigmaPlus),
    ("E2", "3A2+", Polarization::SigmaPlus),
    ("1Ex", "1A1(e2)", Polarization::X),
    ("1Ey", "1A1(e2)", Polarization::Y),
    ("1Ex", "1E1", Polarization::X),
    ("1Ey", "1E1", Polarization::Y),
    ("1Ex", "1E2", Polarization::Y),
    ("1Ey", "1E2", Polarization::X),
    ("1A1(a2)", "1Ex", Polarization::X),
    ("1A1(a2)", "1Ey", Polarization::Y),
];

fn group_checks(rep: &mut ValidationReport) {
    let g = DoubleGroup::c3v();
    let irreps = g.irreps();
    let mut worst: f64 = 0.0;
    for a in irreps {
        for b in irreps {
            let ip = g.inner_product(&RepCharacters::from(a), &RepCharacters::from(b));
            let want = if a.name == b.name { 1.0 } else { 0.0 };
            worst = worst.max((ip - r(want)).norm());
        }
    }
    rep.push("group", "character orthogonality", worst < 1e-12, format!("max defect {worst:.1e}"));

    let chars = g.characters_of(&DanglingBondRep);
    let reduced = g.reduce(&chars);
    let ok = matches!(&reduced, Ok(m) if m.len() == 2 && m.get(&IrrepName::A1) == Some(&2) && m.get(&IrrepName::E) == Some(&1));
    rep.push("group", "dangling bonds reduce to 2A1 + E", ok, format!("{reduced:?}"));

    let mut sum = CMatrix::zeros(4, 4);
    let mut idem: f64 = 0.0;
    for ir in irreps.iter().filter(|i| i.name.is_single_valued()) {
        let p = g.projector(&DanglingBondRep, ir.name);
        idem = idem.max(max_abs(&(&p * &p - &p)));
        sum += p;
    }
    let complete = max_abs(&(sum - CMatrix::identity(4, 4)));
    rep.push(
        "group",
        "projectors idempotent and complete",
        idem < 1e-12 && complete < 1e-12,
        format!("idempotency {idem:.1e}, completeness {complete:.1e}"),
    );
}

fn state_checks(rep: &mut ValidationReport) {
    let states = table_states();
    let ortho = orthonormality_defect(&state_matrix(states));
    rep.push(
        "states",
        "fifteen orthonormal states",
        states.len() == 15 && ortho < 1e-12,
        format!("defect {ortho:.1e}"),
    );
    let sym = symmetry_defect(states);
    rep.push("states", "each state transforms per its irrep", sym < 1e-10, format!("defect {sym:.1e}"));
}

/// Random real-orbital Coulomb tensor: C_abcd = C_badc = C_cbad = C_adcb,
/// restricted to the e orbitals and averaged over the group.
fn random_symmetric_tensor(rng: &mut ChaCha8Rng) -> TwoBodyTensor {
    let mut raw = [[[[0.0; 2]; 2]; 2]; 2];
    for a in raw.iter_mut().flatten().flatten().flatten() {
        *a = rng.random_range(-1.0..1.0);
    }
    let sym = |a: usize, b: usize, c: usize, d: usize| {
        (raw[a][b][c][d] + raw[c][b][a][d] + raw[a][d][c][b] + raw[c][d][a][b]) / 4.0
    };
    TwoBodyTensor::symmetrized(|a, b, c, d| {
        if a.max(b).max(c).max(d) > 1 {
            r(0.0)
        } else {
            r(0.5 * (sym(a, b, c, d) + sym(b, a, d, c)))
        }
    })
    .group_averaged(&DoubleGroup::c3v())
}

fn coulomb_checks(rep: &mut ValidationReport, config: &RunConfig) {
    let mut rng = ChaCha8Rng::seed_from_u64(config.quadrature.seed);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let t = random_symmetric_tensor(&mut rng);
        let h = to_table_basis(&embed_two_body(&t));
        let d = |n: &str| h.get(n, n).re;
        let fock = [0.0, 0.5 * (d("1E1") + d("1E2")) - d("3A20"), d("1A1(e2)") - d("3A20")];
        let exp = coulomb_expectations(&t);
        let ladder = exp.exchange_ladder();
        let scale = ladder.iter().map(|v| v.abs()).fold(1e-300, f64::max);
        let split = (d("1E1") - d("1E2")).abs();
        for k in 0..3 {
            worst = worst.max((fock[k] - ladder[k]).abs() / scale).max(split / scale);
        }
    }
    rep.push(
        "coulomb",
        "exchange ladder matches the determinant oracle",
        worst < 1e-10,
        format!("max relative defect {worst:.1e}"),
    );

    let res = (|| {
        let geom = config.orbitals.geometry()?;
        let orbitals = build_orbitals(&geom, &config.orbitals.model(&geom)?)?;
        let c = coulomb_tensor(&orbitals, &config.quadrature)?;
        let (e, s) = (c.exchange(), c.partner_splitting());
        let ok = e.value > 0.0 && s.value.abs() <= 3.0 * s.error;
        Ok((ok, format!("e = {:.1} ± {:.1} GHz, E1 − E2 = {:.1} ± {:.1} GHz", e.value, e.error, s.value, s.error)))
    })();
    rep.push_result("coulomb", "Gaussian orbitals give e > 0 and degenerate partners", res);
}

fn spin_orbit_checks(rep: &mut ValidationReport, config: &RunConfig) {
    let fs = &config.fine_structure;
    let so = spin_orbit_hamiltonian(0.0, fs.lambda_z);
    let closed = excited_triplet_spin_orbit(fs.lambda_z);
    let diff = so.excited_triplet.max_abs_diff(&closed);
    rep.push("spin-orbit", "axial block from the one-body embedding", diff < 1e-12, format!("max |Δ| {diff:.1e}"));

    let mut ev = closed.eigenvalues();
    ev.sort_by(f64::total_cmp);
    let l = fs.lambda_z;
    let want = [-l, -l, 0.0, 0.0, l, l];
    let d = ev.iter().zip(want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    rep.push("spin-orbit", "eigenvalues ±λz, 0 doubly degenerate", d < 1e-12, format!("{ev:?}"));

    let nonaxial = max_abs(&spin_orbit_hamiltonian(fs.lambda_xy, 0.0).excited_triplet.matrix);
    rep.push("spin-orbit", "λxy leaves the excited triplet unmixed", nonaxial < 1e-12, format!("max {nonaxial:.1e}"));

    // Excited triplet to singlets of the e² and ae configurations.
    let links = nonradiative_links(fs.lambda_xy.max(1.0), fs.lambda_z.max(1.0));
    let singlet = |s: TableState| !s.is_triplet() && s.config() != Configuration::AA;
    let pairs: BTreeSet<(&str, &str)> = links
        .iter()
        .filter_map(|k| {
            if TableState::EXCITED_TRIPLET.contains(&k.from) && singlet(k.to) {
                Some((k.from.name(), k.to.name()))
            } else if TableState::EXCITED_TRIPLET.contains(&k.to) && singlet(k.from) {
                Some((k.to.name(), k.from.name()))
            } else {
                None
            }
        })
        .collect();
    let expected: BTreeSet<(&str, &str)> =
        [("A1", "1A1(e2)"), ("E1", "1E1"), ("E2", "1E2"), ("Ex", "1Ey"), ("Ey", "1Ex")].into_iter().collect();
    rep.push("spin-orbit", "excited triplet links to lower singlets", pairs == expected, format!("{pairs:?}"));
    let ops = spin_orbit_operators(fs.lambda_xy, fs.lambda_z);
    let total: CMatrix = ops.iter().map(embed_one_body).fold(CMatrix::zeros(15, 15), |a, b| a + b);
    let defect = crate::linalg::hermitian_defect(&total);
    rep.push("spin-orbit", "one-body operator is Hermitian", defect < 1e-12, format!("{defect:.1e}"));
}

fn spin_spin_checks(rep: &mut ValidationReport, config: &RunConfig) {
    let fs = &config.fine_structure;
    let (d, dp, dpp) = (fs.delta, fs.delta_prime, fs.delta_double_prime);
    let closed = spin_spin_hamiltonian(d, dp, dpp);
    let map = SpatialSpinOperator::from_dipolar(d, dp, dpp).excited_triplet_block();
    let diff = closed.max_abs_diff(&map);
    rep.push("spin-spin", "closed form matches the spatial map", diff < 1e-10, format!("max |Δ| {diff:.1e}"));

    let nodd = spin_spin_hamiltonian(d, dp, 0.0);
    let gap = nodd.get("A2", "A2").re - nodd.get("A1", "A1").re;
    let ms = 0.5 * (nodd.get("E1", "E1").re + nodd.get("E2", "E2").re) - nodd.get("Ex", "Ex").re;
    rep.push(
        "spin-spin",
        "A2 − A1 = 4Δ′ and ms gap = 3Δ",
        (gap - 4.0 * dp).abs() < 1e-12 && (ms - 3.0 * d).abs() < 1e-12,
        format!("A2 − A1 = {gap:.4}, ms gap = {ms:.4} GHz"),
    );

    let names = closed.basis.clone();
    let mut stray: f64 = 0.0;
    let allowed = [("E1", "Ey"), ("E2", "Ex")];
    let only_ddp = spin_spin_hamiltonian(0.0, 0.0, 1.0);
    for (i, a) in names.iter().enumerate() {
        for (j, b) in names.iter().enumerate() {
            let pair_ok = allowed.iter().any(|(x, y)| (a == x && b == y) || (a == y && b == x));
            if !pair_ok {
                stray = stray.max(only_ddp.matrix[(i, j)].norm());
            }
        }
    }
    rep.push("spin-spin", "Δ″ couples only E1–Ey and E2–Ex", stray < 1e-15, format!("stray {stray:.1e}"));

    let thermal = SpatialSpinOperator::from_dipolar(d, dp, dpp).thermal_average();
    let zfs = SpatialSpinOperator::from_dipolar(d, 0.0, 0.0).thermal_average();
    let so = SpatialSpinOperator::axial_spin_orbit(fs.lambda_z).thermal_average();
    let a = max_abs(&(thermal - zfs));
    let b = max_abs(&so);
    rep.push(
        "spin-spin",
        "spatial average keeps only 3Δ and removes spin-orbit",
        a < 1e-12 && b < 1e-12,
        format!("residuals {a:.1e}, {b:.1e}"),
    );
}

fn selection_checks(rep: &mut ValidationReport) {
    let computed: BTreeSet<(&str, &str, Polarization)> =
        selection_rules().iter().flat_map(|t| t.allowed().map(|r| (r.from, r.to, r.polarization))).collect();
    let reference: BTreeSet<(&str, &str, Polarization)> = REFERENCE_SELECTION_RULES.into_iter().collect();
    let missing = reference.difference(&computed).count();
    let extra = computed.difference(&reference).count();
    rep.push(
        "selection",
        "polarisation table equals the reference",
        missing == 0 && extra == 0,
        format!("{} lines, {missing} missing, {extra} extra", computed.len()),
    );
    let mut nonzero_forbidden = 0;
    for t in selection_rules() {
        for rule in t.rules.iter().filter(|r| r.polarization == Polarization::Forbidden) {
            let (f, l) = (TableState::from_name(rule.from).unwrap(), TableState::from_name(rule.to).unwrap());
            if !transition(f, l).is_zero() {
                nonzero_forbidden += 1;
            }
        }
    }
    let ratio = singlet_transition_ratio();
    rep.push(
        "selection",
        "forbidden amplitudes are exactly zero",
        nonzero_forbidden == 0 && ratio.same_configuration == 0.0,
        format!("{nonzero_forbidden} nonzero, 1A1(e2)–1E(e2) amplitude {}", ratio.same_configuration),
    );
}

fn strain_checks(rep: &mut ValidationReport, config: &RunConfig) {
    let ground = strain_hamiltonian(&StrainCoefficients::e_type(3.7, -1.9)).ground_triplet;
    let g = max_abs(&ground.matrix);
    rep.push("strain", "ground triplet blind to E strain", g == 0.0, format!("max {g:e}"));

    let fs = FineStructureParams { lambda_z: 5.5, ..config.fine_structure };
    let big = 100.0 * fs.lambda_z;
    let res = (|| {
        let grid = [big, big * 1.01];
        let s = strain_scan(&fs, StrainAxis::E1, &grid)?;
        let mut worst: f64 = 0.0;
        for b in 0..6 {
            let slope = (s.energies[1][b] - s.energies[0][b]) / (grid[1] - grid[0]);
            worst = worst.max((slope.abs() - 1.0).abs());
        }
        Ok((worst < 1e-3, format!("max |slope| − 1 = {worst:.1e} at δE1 = {big} GHz")))
    })();
    rep.push_result("strain", "excited branches approach slope ±1", res);

    let res = (|| {
        let grid: Vec<f64> = (0..=40).map(|k| 0.5 * k as f64).collect();
        let e1 = polarization_vs_strain(&fs, StrainAxis::E1, &grid, "A2")?;
        let e2 = polarization_vs_strain(&fs, StrainAxis::E2, &grid, "A2")?;
        Ok::<_, crate::Error>((e1, e2))
    })();
    match res {
        Ok((e1, e2)) => {
            let c0 = e1[0].to_minus.circular_degree;
            rep.push("strain", "A2 emission circular at zero strain", (c0 - 1.0).abs() < 1e-12, format!("{c0}"));
            let last = e1.last().unwrap();
            let c20 = last.to_minus.circular_degree;
            rep.push(
                "strain",
                "A2 emission circular degree < 0.2 at δE1 = 20 GHz",
                c20.abs() < 0.2,
                format!("circular degree {c20:.4}"),
            );
            let (a1, a2) = (last.to_minus.linear_axis, e2.last().unwrap().to_minus.linear_axis);
            let (ok, detail) = match (a1, a2) {
                (Some(x), Some(y)) => {
                    let diff = axis_difference(x, y);
                    ((diff - FRAC_PI_2).abs() < 1e-6, format!("axis difference {:.6} rad", diff))
                }
                _ => (false, "no linear component".into()),
            };
            rep.push("strain", "linear axes of δE1 and δE2 scans differ by 90°", ok, detail);
        }
        Err(e) => rep.push("strain", "A2 emission polarisation", false, format!("error: {e}")),
    }
}

fn stark_checks(rep: &mut ValidationReport, config: &RunConfig) {
    let p = config.piezo;
    let zero = FineStructureParams::zero();
    let grid: Vec<f64> = (0..=10).map(|k| 0.1 * k as f64).collect();
    let res = (|| {
        let s = stark_scan(&zero, &p, &config.optical, nalgebra::Vector3::z(), &grid, (0.0, 0.0))?;
        let shift = relative_shift(&s);
        let (slope, _, resid) = linear_fit(&grid, &shift);
        let want = p.axial_relative_slope();
        let nonlin = resid / (slope.abs() * grid[grid.len() - 1]);
        let ok = (slope - want).abs() <= 1e-9 * want.abs() && nonlin < 1e-9;
        Ok((ok, format!("slope {slope:.6} GHz/(MV/m), g(d−b) = {want:.6}, nonlinearity {nonlin:.1e}")))
    })();
    rep.push_result("stark", "axial relative slope equals g(d − b)", res);

    let res = (|| {
        let s = stark_scan(&zero, &p, &config.optical, nalgebra::Vector3::x(), &grid, (0.0, 0.0))?;
        let spread = excited_spread(&s);
        let (slope, _, _) = linear_fit(&grid, &spread);
        let want = p.transverse_splitting_slope();
        Ok(((slope - want).abs() <= 1e-9 * want.abs(), format!("slope {slope:.6}, 2ga = {want:.6} GHz/(MV/m)")))
    })();
    rep.push_result("stark", "transverse splitting slope equals 2ga", res);

    let res = (|| {
        let pre = 0.3;
        let s = stark_scan(&zero, &p, &config.optical, nalgebra::Vector3::x(), &grid, (0.0, pre))?;
        let spread = excited_spread(&s);
        let ga = p.g * p.a;
        let worst = grid
            .iter()
            .zip(&spread)
            .map(|(e, sp)| {
                let want = 2.0 * pre.hypot(ga * e);
                (sp - want).abs() / want
            })
            .fold(0.0, f64::max);
        Ok((worst < 1e-6, format!("max relative deviation {worst:.1e}")))
    })();
    rep.push_result("stark", "pre-strained response follows √(δ² + (gaE)²)", res);
}

fn integral_checks(rep: &mut ValidationReport, config: &RunConfig) {
    let res = (|| {
        let geom = config.orbitals.geometry()?;
        let orbitals = build_orbitals(&geom, &config.orbitals.model(&geom)?)?;
        let a = spin_spin_parameters(&orbitals, &config.quadrature)?;
        let b = spin_spin_parameters(&orbitals, &config.quadrature)?;
        Ok::<_, crate::Error>((a, b))
    })();
    match res {
        Ok((a, b)) => {
            rep.push(
                "integrals",
                "dipolar tensor traceless within 3σ",
                a.is_traceless(3.0),
                format!("trace {:.2e} ± {:.2e} GHz", a.trace.value, a.trace.error),
            );
            rep.push(
                "integrals",
                "Δ′ > 0 for the default geometry",
                a.delta_prime.value > 0.0,
                format!(
                    "Δ = {:.3} ± {:.3}, Δ′ = {:.3} ± {:.3}, Δ″ = {:.3} ± {:.3} GHz",
                    a.delta.value,
                    a.delta.error,
                    a.delta_prime.value,
                    a.delta_prime.error,
                    a.delta_double_prime.value,
                    a.delta_double_prime.error
                ),
            );
            rep.push("integrals", "fixed seed is bitwise reproducible", a == b, String::new());
        }
        Err(e) => rep.push("integrals", "spin-spin integrals", false, format!("error: {e}")),
    }
}

/// Check groups in report order.
pub const CHECK_GROUPS: [&str; 9] =
    ["group", "states", "coulomb", "spin-orbit", "spin-spin", "selection", "strain", "stark", "integrals"];

/// Runs the checks of one group; None for an unknown name.
pub fn validate_group(group: &str, config: &RunConfig) -> Option<ValidationReport> {
    let mut rep = ValidationReport::default();
    match group {
        "group" => group_checks(&mut rep),
        "states" => state_checks(&mut rep),
        "coulomb" => coulomb_checks(&mut rep, config),
        "spin-orbit" => spin_orbit_checks(&mut rep, config),
        "spin-spin" => spin_spin_checks(&mut rep, config),
        "selection" => selection_checks(&mut rep),
        "strain" => strain_checks(&mut rep, config),
        "stark" => stark_checks(&mut rep, config),
        "integrals" => integral_checks(&mut rep, config),
        _ => return None,
    }
    Some(rep)
}

/// Runs every structural and numerical check against its oracle.
pub fn validate(config: &RunConfig) -> ValidationReport {
    let mut rep = ValidationReport::default();
    for g in CHECK_GROUPS {
        rep.checks.extend(validate_group(g, config).expect("listed groups exist").checks);
    }
    rep
}
