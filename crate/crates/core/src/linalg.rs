//! Small dense complex linear algebra helpers shared by every module.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn r(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    CMatrix::from_fn(ar * br, ac * bc, |i, j| a[(i / br, j / bc)] * b[(i % br, j % bc)])
}

pub fn kron_vec(a: &CVector, b: &CVector) -> CVector {
    CVector::from_fn(a.len() * b.len(), |i, _| a[i / b.len()] * b[i % b.len()])
}

pub fn real_to_complex(m: &DMatrix<f64>) -> CMatrix {
    m.map(r)
}

/// Largest absolute entry.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn hermitian_defect(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

pub fn ensure_hermitian(m: &CMatrix, tol: f64) -> Result<()> {
    let defect = hermitian_defect(m);
    if defect > tol {
        return Err(Error::NotHermitian { defect });
    }
    Ok(())
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
/// Column `k` of the returned matrix is the eigenvector of eigenvalue `k`.
pub fn eigh(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    // Symmetrise first so roundoff asymmetry cannot leak into the solver.
    let h = (m + m.adjoint()).scale(0.5);
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    (values, vectors)
}

pub fn eigvalsh(m: &CMatrix) -> Vec<f64> {
    eigh(m).0
}

/// Spectral norm of a Hermitian matrix.
pub fn hermitian_norm(m: &CMatrix) -> f64 {
    eigvalsh(m).iter().fold(0.0, |acc, v| acc.max(v.abs()))
}

/// Sequential Gram-Schmidt in input order; vectors whose residual norm falls
/// below `tol` are dropped.
pub fn gram_schmidt(vectors: &[CVector], tol: f64) -> Vec<CVector> {
    let mut basis: Vec<CVector> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        // Two passes keep the result orthogonal to machine precision.
        for _ in 0..2 {
            for b in &basis {
                let p = b.dotc(&w);
                w -= b * p;
            }
        }
        let n = w.norm();
        if n > tol {
            basis.push(w.unscale(n));
        }
    }
    basis
}

pub fn columns_to_matrix(cols: &[CVector]) -> CMatrix {
    let n = cols.first().map_or(0, |v| v.len());
    CMatrix::from_fn(n, cols.len(), |i, j| cols[j][i])
}

/// max |S^dagger S - I| for the columns of `s`.
pub fn orthonormality_defect(s: &CMatrix) -> f64 {
    let g = s.adjoint() * s;
    max_abs(&(g - CMatrix::identity(s.ncols(), s.ncols())))
}

/// Rotate `v` by a global phase so its largest component is real positive.
pub fn fix_phase(v: &CVector) -> CVector {
    let k = (0..v.len()).max_by(|&a, &b| v[a].norm().total_cmp(&v[b].norm())).unwrap_or(0);
    let Some(&z) = v.get(k) else {
        return v.clone();
    };
    if z.norm() == 0.0 {
        return v.clone();
    }
    v * (z.conj() / z.norm())
}

/// Phase-insensitive fidelity |<a|b>|^2 for normalised vectors.
pub fn overlap_sq(a: &CVector, b: &CVector) -> f64 {
    a.dotc(b).norm_sqr()
}

/// A Hermitian matrix bound to an ordered list of named basis states.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianBlock {
    pub basis: Vec<String>,
    pub matrix: CMatrix,
}

impl HamiltonianBlock {
    pub fn new<S: Into<String>>(basis: impl IntoIterator<Item = S>, matrix: CMatrix) -> Self {
        let basis: Vec<String> = basis.into_iter().map(Into::into).collect();
        assert_eq!(basis.len(), matrix.nrows(), "basis size must match the matrix");
        assert!(matrix.is_square(), "Hamiltonian blocks are square");
        HamiltonianBlock { basis, matrix }
    }

    pub fn zeros<S: Into<String>>(basis: impl IntoIterator<Item = S>) -> Self {
        let basis: Vec<String> = basis.into_iter().map(Into::into).collect();
        let n = basis.len();
        HamiltonianBlock { basis, matrix: CMatrix::zeros(n, n) }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    /// Matrix element <row|H|col> by state name. Panics on unknown names.
    pub fn get(&self, row: &str, col: &str) -> Complex64 {
        let i = self.index_of(row).unwrap_or_else(|| panic!("unknown state {row}"));
        let j = self.index_of(col).unwrap_or_else(|| panic!("unknown state {col}"));
        self.matrix[(i, j)]
    }

    pub fn hermitian_defect(&self) -> f64 {
        hermitian_defect(&self.matrix)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        eigvalsh(&self.matrix)
    }

    /// Sub-block on the named states, in the order given.
    pub fn restrict(&self, names: &[&str]) -> HamiltonianBlock {
        let idx: Vec<usize> =
            names.iter().map(|n| self.index_of(n).unwrap_or_else(|| panic!("unknown state {n}"))).collect();
        let m = CMatrix::from_fn(idx.len(), idx.len(), |i, j| self.matrix[(idx[i], idx[j])]);
        HamiltonianBlock::new(names.iter().copied(), m)
    }

    /// Largest entry-wise difference; the bases must agree.
    pub fn max_abs_diff(&self, other: &HamiltonianBlock) -> f64 {
        assert_eq!(self.basis, other.basis, "comparing blocks on different bases");
        max_abs(&(&self.matrix - &other.matrix))
    }
}

impl std::ops::Add for HamiltonianBlock {
    type Output = HamiltonianBlock;
    fn add(self, rhs: HamiltonianBlock) -> HamiltonianBlock {
        assert_eq!(self.basis, rhs.basis, "adding blocks on different bases");
        HamiltonianBlock { basis: self.basis, matrix: self.matrix + rhs.matrix }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_of_identities_is_identity() {
        let a = CMatrix::identity(2, 2);
        let b = CMatrix::identity(3, 3);
        assert_eq!(kron(&a, &b), CMatrix::identity(6, 6));
    }

    #[test]
    fn kron_index_order_is_outer_major() {
        let a = CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ZERO, ZERO]);
        let b = CMatrix::from_row_slice(2, 2, &[r(1.0), r(2.0), r(3.0), r(4.0)]);
        let k = kron(&a, &b);
        assert_eq!(k[(0, 2)], r(1.0));
        assert_eq!(k[(1, 3)], r(4.0));
        assert_eq!(k[(2, 0)], ZERO);
    }

    #[test]
    fn eigh_sorts_and_diagonalises() {
        let m = CMatrix::from_row_slice(2, 2, &[r(1.0), c(0.0, -2.0), c(0.0, 2.0), r(1.0)]);
        let (vals, vecs) = eigh(&m);
        assert!((vals[0] + 1.0).abs() < 1e-12 && (vals[1] - 3.0).abs() < 1e-12);
        let d = vecs.adjoint() * &m * &vecs;
        assert!((d[(0, 1)]).norm() < 1e-12);
    }

    #[test]
    fn gram_schmidt_drops_dependent_vectors() {
        let v1 = CVector::from_vec(vec![ONE, ONE, ZERO]);
        let v2 = CVector::from_vec(vec![r(2.0), r(2.0), ZERO]);
        let v3 = CVector::from_vec(vec![ZERO, ONE, ONE]);
        let b = gram_schmidt(&[v1, v2, v3], 1e-10);
        assert_eq!(b.len(), 2);
        assert!(orthonormality_defect(&columns_to_matrix(&b)) < 1e-14);
    }
}
