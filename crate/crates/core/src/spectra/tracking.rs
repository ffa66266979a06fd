use rayon::prelude::*;
use serde::Serialize;

use crate::linalg::{eigh, hermitian_norm, max_abs, CMatrix, CVector, HamiltonianBlock};
use crate::{Error, Result};

/// Eigenvalues closer than this (GHz) are treated as one degenerate level.
const DEGENERACY_TOL: f64 = 1e-9;
/// Minimum squared overlap between successive eigenvectors of one branch.
pub const TRACKING_THRESHOLD: f64 = 0.5;

/// A point where a branch could not be continued with overlap above the threshold.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Crossing {
    pub index: usize,
    pub branch: usize,
    pub overlap: f64,
}

/// Branch-tracked eigen-decomposition of a family of Hermitian blocks.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanResult {
    pub parameter: String,
    pub grid: Vec<f64>,
    /// Labels of the unperturbed basis.
    pub basis: Vec<String>,
    /// Basis label with the largest weight in each branch at the first point.
    pub branch_labels: Vec<String>,
    /// `energies[point][branch]`.
    pub energies: Vec<Vec<f64>>,
    /// `weights[point][branch][basis]` = |⟨basis|branch⟩|².
    pub weights: Vec<Vec<Vec<f64>>>,
    pub crossings: Vec<Crossing>,
    /// max over steps of (largest sorted-eigenvalue jump − ‖ΔH‖₂); ≤ 0 up to round-off.
    pub weyl_excess: f64,
    /// `vectors[point]`, columns in branch order.
    #[serde(skip)]
    pub vectors: Vec<CMatrix>,
}

impl ScanResult {
    pub fn branch(&self, label: &str) -> Option<usize> {
        self.branch_labels.iter().position(|l| l == label)
    }

    pub fn branch_energies(&self, branch: usize) -> Vec<f64> {
        self.energies.iter().map(|e| e[branch]).collect()
    }

    pub fn vector(&self, point: usize, branch: usize) -> CVector {
        self.vectors[point].column(branch).into_owned()
    }

    pub fn weyl_ok(&self) -> bool {
        self.weyl_excess <= 1e-9
    }
}

/// Groups of indices of consecutive (sorted) eigenvalues within the tolerance.
fn clusters(values: &[f64]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (k, v) in values.iter().enumerate() {
        match out.last_mut() {
            Some(c) if (v - values[*c.last().unwrap()]).abs() <= DEGENERACY_TOL * (1.0 + v.abs()) => c.push(k),
            _ => out.push(vec![k]),
        }
    }
    out
}

/// Within each degenerate cluster, replaces the arbitrary eigenvectors by the
/// orthonormalised projections of the best-fitting reference vectors, and
/// returns which reference each new column follows (None for non-degenerate).
fn align_degenerate(values: &[f64], vectors: &CMatrix, references: &CMatrix) -> (CMatrix, Vec<Option<usize>>) {
    let mut out = vectors.clone();
    let mut follows = vec![None; values.len()];
    let mut used = vec![false; references.ncols()];
    for cluster in clusters(values).into_iter().filter(|c| c.len() > 1) {
        let span = CMatrix::from_fn(vectors.nrows(), cluster.len(), |i, j| vectors[(i, cluster[j])]);
        let mut candidates: Vec<(f64, usize)> = (0..references.ncols())
            .filter(|r| !used[*r])
            .map(|r| ((span.adjoint() * references.column(r)).norm_squared(), r))
            .collect();
        candidates.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut basis: Vec<CVector> = Vec::new();
        let mut chosen = Vec::new();
        for (_, r) in candidates {
            if basis.len() == cluster.len() {
                break;
            }
            let v: CVector = &span * (span.adjoint() * references.column(r));
            if let Some(v) = orthonormalised(v, &basis) {
                basis.push(v);
                chosen.push(Some(r));
                used[r] = true;
            }
        }
        // Directions no free reference reaches keep the solver's own vectors.
        for j in 0..cluster.len() {
            if basis.len() == cluster.len() {
                break;
            }
            if let Some(v) = orthonormalised(span.column(j).into_owned(), &basis) {
                basis.push(v);
                chosen.push(None);
            }
        }
        for (slot, (&k, v)) in cluster.iter().zip(&basis).enumerate() {
            out.set_column(k, v);
            follows[k] = chosen[slot];
        }
    }
    (out, follows)
}

fn orthonormalised(mut v: CVector, basis: &[CVector]) -> Option<CVector> {
    for b in basis {
        let p = b.dotc(&v);
        v -= b * p;
    }
    let n = v.norm();
    (n > 1e-6).then(|| v.unscale(n))
}

/// Diagonalises each block and links eigenvectors across the grid by maximal
/// overlap. Degenerate levels take the directions of the unperturbed labels at
/// the first point and of the previous branch vectors afterwards.
pub fn diagonalize_tracked(parameter: &str, grid: &[f64], blocks: &[HamiltonianBlock]) -> Result<ScanResult> {
    if blocks.len() != grid.len() {
        return Err(Error::Dimension { expected: grid.len(), found: blocks.len() });
    }
    let Some(first) = blocks.first() else {
        return Err(Error::Config("empty scan grid".into()));
    };
    let n = first.dim();
    for b in blocks {
        if b.basis != first.basis {
            return Err(Error::Config("scan blocks use different bases".into()));
        }
        let scale = max_abs(&b.matrix).max(1.0);
        let defect = b.hermitian_defect();
        if defect > 1e-10 * scale {
            return Err(Error::NotHermitian { defect });
        }
    }
    let decomposed: Vec<(Vec<f64>, CMatrix)> = blocks.par_iter().map(|b| eigh(&b.matrix)).collect();

    let mut energies = Vec::with_capacity(grid.len());
    let mut vectors: Vec<CMatrix> = Vec::with_capacity(grid.len());
    let mut crossings = Vec::new();
    for (idx, (values, vecs)) in decomposed.iter().enumerate() {
        let (reference, prev) = match vectors.last() {
            None => (CMatrix::identity(n, n), None),
            Some(p) => (p.clone(), Some(p)),
        };
        let (aligned, follows) = align_degenerate(values, vecs, &reference);
        let mut order = vec![usize::MAX; n];
        match prev {
            None => order = (0..n).collect(),
            Some(p) => {
                let mut taken = vec![false; n];
                let mut assigned = vec![false; n];
                for (k, f) in follows.iter().enumerate() {
                    if let Some(b) = f {
                        order[*b] = k;
                        taken[k] = true;
                        assigned[*b] = true;
                    }
                }
                let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
                for b in (0..n).filter(|b| !assigned[*b]) {
                    for k in (0..n).filter(|k| !taken[*k]) {
                        pairs.push((p.column(b).dotc(&aligned.column(k)).norm_sqr(), b, k));
                    }
                }
                pairs.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
                for (_, b, k) in pairs {
                    if !assigned[b] && !taken[k] {
                        order[b] = k;
                        assigned[b] = true;
                        taken[k] = true;
                    }
                }
            }
        }
        let mut m = CMatrix::zeros(n, n);
        let mut e = vec![0.0; n];
        for (b, &k) in order.iter().enumerate() {
            let mut v: CVector = aligned.column(k).into_owned();
            if let Some(p) = prev {
                let ov = p.column(b).dotc(&v);
                if ov.norm_sqr() < TRACKING_THRESHOLD {
                    crossings.push(Crossing { index: idx, branch: b, overlap: ov.norm_sqr() });
                }
                if ov.norm() > 0.0 {
                    v *= ov.conj() / ov.norm();
                }
            }
            m.set_column(b, &v);
            e[b] = values[k];
        }
        energies.push(e);
        vectors.push(m);
    }

    let mut weyl_excess = f64::NEG_INFINITY;
    for i in 1..blocks.len() {
        let jump = decomposed[i].0.iter().zip(&decomposed[i - 1].0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let bound = hermitian_norm(&(&blocks[i].matrix - &blocks[i - 1].matrix));
        weyl_excess = weyl_excess.max(jump - bound);
    }
    if blocks.len() < 2 {
        weyl_excess = 0.0;
    }

    let weights = vectors
        .iter()
        .map(|m| (0..n).map(|b| (0..n).map(|i| m[(i, b)].norm_sqr()).collect()).collect())
        .collect::<Vec<Vec<Vec<f64>>>>();
    let branch_labels = (0..n)
        .map(|b| {
            let w: &Vec<f64> = &weights[0][b];
            let i = (0..n).max_by(|&x, &y| w[x].total_cmp(&w[y]).then(y.cmp(&x))).unwrap();
            first.basis[i].clone()
        })
        .collect();

    Ok(ScanResult {
        parameter: parameter.to_string(),
        grid: grid.to_vec(),
        basis: first.basis.clone(),
        branch_labels,
        energies,
        weights,
        crossings,
        weyl_excess,
        vectors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, r};

    fn block(m: CMatrix) -> HamiltonianBlock {
        let names: Vec<String> = (0..m.nrows()).map(|i| format!("s{i}")).collect();
        HamiltonianBlock::new(names, m)
    }

    #[test]
    fn crossing_levels_keep_identity() {
        let grid: Vec<f64> = (0..21).map(|k| -1.0 + 0.1 * k as f64).collect();
        let blocks: Vec<_> =
            grid.iter().map(|&t| block(CMatrix::from_row_slice(2, 2, &[r(t), r(0.0), r(0.0), r(-t)]))).collect();
        let s = diagonalize_tracked("t", &grid, &blocks).unwrap();
        let b0 = s.branch("s0").unwrap();
        for (k, t) in grid.iter().enumerate() {
            assert!((s.energies[k][b0] - t).abs() < 1e-12);
        }
        assert!(s.crossings.is_empty());
        assert!(s.weyl_ok());
    }

    #[test]
    fn clusters_sharing_a_reference_each_get_their_own() {
        // A 4-fold level splits into two doublets that both overlap every
        // unperturbed label equally.
        let h = |t: f64| {
            let mut m = CMatrix::zeros(4, 4);
            m[(0, 1)] = r(t);
            m[(1, 0)] = r(t);
            m[(2, 3)] = r(t);
            m[(3, 2)] = r(t);
            block(m)
        };
        let grid = [0.0, 0.1, 0.2];
        let blocks: Vec<_> = grid.iter().map(|&t| h(t)).collect();
        let s = diagonalize_tracked("t", &grid, &blocks).unwrap();
        for e in &s.energies[1..] {
            let mut v = e.clone();
            v.sort_by(f64::total_cmp);
            assert!(v.windows(2).all(|w| w[1] >= w[0]));
        }
        for k in 0..3 {
            let m = &s.vectors[k];
            assert!((m.adjoint() * m - CMatrix::identity(4, 4)).norm() < 1e-10);
        }
    }

    #[test]
    fn degenerate_start_resolved_by_labels() {
        let grid = [0.0, 0.1, 0.2];
        let blocks: Vec<_> = grid
            .iter()
            .map(|&t| block(CMatrix::from_row_slice(2, 2, &[r(0.0), c(0.0, t), c(0.0, -t), r(0.0)])))
            .collect();
        let s = diagonalize_tracked("t", &grid, &blocks).unwrap();
        assert_eq!(s.branch_labels, vec!["s0", "s1"]);
        assert!((s.weights[0][0][0] - 1.0).abs() < 1e-12);
        assert!((s.weights[2][0][0] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn non_hermitian_rejected() {
        let b = block(CMatrix::from_row_slice(2, 2, &[r(0.0), r(1.0), r(0.0), r(0.0)]));
        assert!(matches!(diagonalize_tracked("t", &[0.0], &[b]), Err(Error::NotHermitian { .. })));
    }
}
