use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{kron, r, CMatrix, ZERO};
use crate::symm::DoubleGroup;

use super::basis::{build_two_hole_basis, hop, Determinant, SpinOrbital, N_DETERMINANTS, N_SPIN_ORBITALS};

/// orbital_part ⊗ spin_part acting on one particle, orbitals ordered (ex, ey, a).
#[derive(Clone, Debug, PartialEq)]
pub struct OneBodyOperator {
    pub orbital_part: CMatrix,
    pub spin_part: CMatrix,
}

impl OneBodyOperator {
    pub fn new(orbital_part: CMatrix, spin_part: CMatrix) -> Self {
        assert_eq!(orbital_part.shape(), (3, 3), "orbital part is 3x3");
        assert_eq!(spin_part.shape(), (2, 2), "spin part is 2x2");
        OneBodyOperator { orbital_part, spin_part }
    }

    /// Purely orbital operator (spin identity).
    pub fn orbital(orbital_part: CMatrix) -> Self {
        Self::new(orbital_part, CMatrix::identity(2, 2))
    }

    pub fn identity() -> Self {
        Self::new(CMatrix::identity(3, 3), CMatrix::identity(2, 2))
    }

    /// 6x6 matrix on spin-orbitals indexed 2·orbital + spin.
    pub fn spin_orbital_matrix(&self) -> CMatrix {
        kron(&self.orbital_part, &self.spin_part)
    }
}

/// Σ_pq h_pq c†_p c_q on the determinant basis.
pub fn embed_one_body(op: &OneBodyOperator) -> CMatrix {
    embed_spin_orbital_matrix(&op.spin_orbital_matrix())
}

pub(crate) fn embed_spin_orbital_matrix(h: &CMatrix) -> CMatrix {
    let basis = build_two_hole_basis();
    let mut m = CMatrix::zeros(N_DETERMINANTS, N_DETERMINANTS);
    for ket in &basis {
        for p in 0..N_SPIN_ORBITALS {
            for q in 0..N_SPIN_ORBITALS {
                let hpq = h[(p, q)];
                if hpq == ZERO {
                    continue;
                }
                if let Some((mask, sign)) = hop(ket.mask(), p, q) {
                    let bra = Determinant::from_mask(mask).expect("hopping keeps two holes");
                    m[(bra.index(), ket.index())] += hpq * sign;
                }
            }
        }
    }
    m
}

/// C_abcd = ∫ a*(1) b*(2) V(r12) c(1) d(2) with indices over (ex, ey, a).
#[derive(Clone, Debug, PartialEq)]
pub struct TwoBodyTensor {
    entries: [[[[Complex64; 3]; 3]; 3]; 3],
}

impl TwoBodyTensor {
    /// Validates Hermiticity C_abcd = C_cdab* and exchange symmetry C_abcd = C_badc,
    /// to 1e-10 relative to the largest entry.
    pub fn new(entries: [[[[Complex64; 3]; 3]; 3]; 3]) -> Result<Self> {
        let t = TwoBodyTensor { entries };
        let scale = t.max_abs().max(1e-300);
        let (herm, exch) = t.symmetry_defects();
        if herm > 1e-10 * scale {
            return Err(Error::TensorSymmetry { symmetry: "Hermiticity", defect: herm });
        }
        if exch > 1e-10 * scale {
            return Err(Error::TensorSymmetry { symmetry: "exchange", defect: exch });
        }
        Ok(t)
    }

    pub fn zero() -> Self {
        TwoBodyTensor { entries: [[[[ZERO; 3]; 3]; 3]; 3] }
    }

    pub fn from_fn(f: impl Fn(usize, usize, usize, usize) -> Complex64) -> Result<Self> {
        let mut e = [[[[ZERO; 3]; 3]; 3]; 3];
        for (a, ea) in e.iter_mut().enumerate() {
            for (b, eb) in ea.iter_mut().enumerate() {
                for (c, ec) in eb.iter_mut().enumerate() {
                    for (d, ed) in ec.iter_mut().enumerate() {
                        *ed = f(a, b, c, d);
                    }
                }
            }
        }
        Self::new(e)
    }

    /// Builds the tensor from an arbitrary one by averaging over the
    /// Hermiticity/exchange orbit, so the result always validates.
    pub fn symmetrized(raw: impl Fn(usize, usize, usize, usize) -> Complex64) -> Self {
        let e = |a, b, c, d| {
            let s: Complex64 = raw(a, b, c, d) + raw(b, a, d, c) + raw(c, d, a, b).conj() + raw(d, c, b, a).conj();
            s * 0.25
        };
        Self::from_fn(e).expect("symmetrised tensor satisfies its invariants")
    }

    /// Average over the C3v orbital action on (ex, ey, a), leaving a tensor
    /// that only has the couplings allowed by symmetry.
    pub fn group_averaged(&self, group: &DoubleGroup) -> Self {
        let mats: Vec<CMatrix> = group.elements()[..6].iter().map(|g| g.orbital_triplet_matrix()).collect();
        let mut out = [[[[ZERO; 3]; 3]; 3]; 3];
        for m in &mats {
            for a in 0..3 {
                for b in 0..3 {
                    for c in 0..3 {
                        for d in 0..3 {
                            let mut s = ZERO;
                            for p in 0..3 {
                                for q in 0..3 {
                                    for u in 0..3 {
                                        for v in 0..3 {
                                            let w = m[(p, a)].conj() * m[(q, b)].conj() * m[(u, c)] * m[(v, d)];
                                            if w != ZERO {
                                                s += w * self.entries[p][q][u][v];
                                            }
                                        }
                                    }
                                }
                            }
                            out[a][b][c][d] += s / r(mats.len() as f64);
                        }
                    }
                }
            }
        }
        TwoBodyTensor { entries: out }
    }

    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> Complex64 {
        self.entries[a][b][c][d]
    }

    pub fn entries(&self) -> &[[[[Complex64; 3]; 3]; 3]; 3] {
        &self.entries
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().flatten().flatten().flatten().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// (Hermiticity defect, exchange defect)
    pub fn symmetry_defects(&self) -> (f64, f64) {
        let mut herm: f64 = 0.0;
        let mut exch: f64 = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        let x = self.entries[a][b][c][d];
                        herm = herm.max((x - self.entries[c][d][a][b].conj()).norm());
                        exch = exch.max((x - self.entries[b][a][d][c]).norm());
                    }
                }
            }
        }
        (herm, exch)
    }

    /// True when every entry with an `a` index vanishes.
    pub fn restricted_to_e(&self) -> bool {
        let mut ok = true;
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        if [a, b, c, d].contains(&2) && self.entries[a][b][c][d] != ZERO {
                            ok = false;
                        }
                    }
                }
            }
        }
        ok
    }
}

/// Antisymmetrised two-body matrix elements <ij|V|kl> - <ij|V|lk> on the
/// determinant basis.
pub fn embed_two_body(t: &TwoBodyTensor) -> CMatrix {
    let basis = build_two_hole_basis();
    let v = |p: SpinOrbital, q: SpinOrbital, r: SpinOrbital, s: SpinOrbital| {
        if p.spin != r.spin || q.spin != s.spin {
            return ZERO;
        }
        t.get(p.orbital.index(), q.orbital.index(), r.orbital.index(), s.orbital.index())
    };
    let mut m = CMatrix::zeros(N_DETERMINANTS, N_DETERMINANTS);
    for bra in &basis {
        let (i, j) = bra.spin_orbitals();
        for ket in &basis {
            let (k, l) = ket.spin_orbitals();
            m[(bra.index(), ket.index())] = v(i, j, k, l) - v(i, j, l, k);
        }
    }
    m
}
