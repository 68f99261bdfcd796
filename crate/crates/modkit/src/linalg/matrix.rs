//! Dense complex matrices with explicit Hilbert-space dimensions.
//!
//! A `ComplexMatrix` is an operator `H0 → H1` stored row-major; `rows` is the
//! dimension of the codomain `H1` and `cols` the dimension of the domain `H0`.
//! Singular values and Hermitian eigenvalues go through nalgebra; all other
//! arithmetic is implemented directly with a fixed summation order so that
//! identical inputs always produce identical output bytes.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{Error, Result};

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::EntryCount {
                rows,
                cols,
                got: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// Matrix unit E_{ij} of the given shape.
    pub fn matrix_unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.entries[i * cols + j] = C64::new(1.0, 0.0);
        m
    }

    /// Standard basis vector e_k as a `dim x 1` column operator.
    pub fn basis_column(dim: usize, k: usize) -> Self {
        Self::matrix_unit(dim, 1, k, 0)
    }

    /// Column vector with the given entries.
    pub fn column_vector(entries: Vec<C64>) -> Self {
        let rows = entries.len();
        Self {
            rows,
            cols: 1,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn at(&self, i: usize, j: usize) -> C64 {
        self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self.at(i, j)).collect()
    }

    /// True when one of the dimensions is zero, so the matrix has no entries.
    pub fn is_vacuous(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    fn same_shape(&self, other: &Self, context: &'static str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                context,
                expected_rows: self.rows,
                expected_cols: self.cols,
                rows: other.rows,
                cols: other.cols,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "matrix addition")?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "matrix subtraction")?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scale(&self, z: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * z).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                context: "matrix product",
                expected_rows: self.cols,
                expected_cols: other.cols,
                rows: other.rows,
                cols: other.cols,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += a * other.at(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).conj())
    }

    pub fn trace(&self) -> Result<C64> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut t = C64::new(0.0, 0.0);
        for i in 0..self.rows {
            t += self.at(i, i);
        }
        Ok(t)
    }

    /// Hilbert–Schmidt inner product `tr(self* · other)`, conjugate linear in
    /// the first slot.
    pub fn hs_inner(&self, other: &Self) -> Result<C64> {
        self.same_shape(other, "Hilbert-Schmidt inner product")?;
        let mut acc = C64::new(0.0, 0.0);
        for (a, b) in self.entries.iter().zip(&other.entries) {
            acc += a.conj() * b;
        }
        Ok(acc)
    }

    pub fn hs_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// `hs_norm(self - self*)`; errors on non-square input.
    pub fn self_adjoint_residual(&self) -> Result<f64> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.sub(&self.adjoint())?.hs_norm())
    }

    pub fn apply_vec(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch {
                context: "operator applied to vector",
                expected_rows: self.cols,
                expected_cols: 1,
                rows: v.len(),
                cols: 1,
            });
        }
        let mut out = vec![C64::new(0.0, 0.0); self.rows];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for (j, value) in v.iter().enumerate() {
                acc += self.at(i, j) * value;
            }
            *slot = acc;
        }
        Ok(out)
    }

    /// Kronecker product; `(self ⊗ other)[(i·p+k), (j·q+l)] = self[i,j]·other[k,l]`
    /// for `other` of shape `p x q`.
    pub fn kron(&self, other: &Self) -> Self {
        let (p, q) = other.shape();
        Self::from_fn(self.rows * p, self.cols * q, |r, c| {
            self.at(r / p, c / q) * other.at(r % p, c % q)
        })
    }

    /// Largest singular value.
    pub fn op_norm(&self) -> f64 {
        if self.is_vacuous() {
            return 0.0;
        }
        self.singular_values().first().copied().unwrap_or(0.0)
    }

    /// Singular values in descending order.
    pub fn singular_values(&self) -> Vec<f64> {
        if self.is_vacuous() {
            return Vec::new();
        }
        let svd = self.to_na().svd(false, false);
        let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
        sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
        sv
    }

    /// Numerical rank with a cutoff relative to the largest singular value.
    pub fn rank(&self, rel_cutoff: f64) -> usize {
        let sv = self.singular_values();
        let top = sv.first().copied().unwrap_or(0.0);
        if top <= 0.0 {
            return 0;
        }
        sv.iter().filter(|&&s| s > rel_cutoff * top).count()
    }

    /// Eigenvalues of the Hermitian part `(self + self*)/2`, ascending.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(Vec::new());
        }
        let sym = self.add(&self.adjoint())?.scale(C64::new(0.5, 0.0));
        let eig = nalgebra::SymmetricEigen::new(sym.to_na());
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(vals)
    }

    pub(crate) fn to_na(&self) -> DMatrix<C64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j))
    }

    pub(crate) fn from_na(m: &DMatrix<C64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.at(i, j);
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn adjoint_conjugates_scalars() {
        let m = ComplexMatrix::new(1, 1, vec![c(0.0, 1.0)]).unwrap();
        assert_eq!(m.adjoint().at(0, 0), c(0.0, -1.0));
    }

    #[test]
    fn adjoint_of_identity_is_identity() {
        let id = ComplexMatrix::identity(2);
        assert_eq!(id.adjoint(), id);
    }

    #[test]
    fn adjoint_is_involutive() {
        let m = ComplexMatrix::from_fn(3, 2, |i, j| c(i as f64, j as f64 + 0.5));
        assert_eq!(m.adjoint().adjoint(), m);
    }

    #[test]
    fn op_norm_of_zero_is_zero() {
        assert_eq!(ComplexMatrix::zeros(3, 4).op_norm(), 0.0);
    }

    #[test]
    fn op_norm_of_diagonal_is_largest_entry() {
        let m = ComplexMatrix::from_fn(2, 2, |i, j| {
            if i == j && i == 0 {
                c(3.0, 0.0)
            } else if i == j {
                c(1.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        assert!((m.op_norm() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn entry_count_is_checked() {
        assert!(matches!(
            ComplexMatrix::new(2, 2, vec![c(1.0, 0.0)]),
            Err(Error::EntryCount { .. })
        ));
    }

    #[test]
    fn kron_of_units() {
        let a = ComplexMatrix::matrix_unit(2, 2, 0, 1);
        let b = ComplexMatrix::matrix_unit(3, 3, 2, 0);
        let k = a.kron(&b);
        assert_eq!(k.shape(), (6, 6));
        assert_eq!(k.at(2, 3), c(1.0, 0.0));
        assert_eq!(k.hs_norm(), 1.0);
    }

    #[test]
    fn vacuous_matrices_are_inert() {
        let m = ComplexMatrix::zeros(0, 3);
        assert_eq!(m.op_norm(), 0.0);
        assert_eq!(m.adjoint().shape(), (3, 0));
        let p = m.mul(&ComplexMatrix::zeros(3, 2)).unwrap();
        assert_eq!(p.shape(), (0, 2));
    }
}
