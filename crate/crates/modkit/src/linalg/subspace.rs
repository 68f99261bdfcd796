//! Operator subspaces of `L(H0, H1)` with Hilbert–Schmidt-orthonormal bases.
//!
//! A subspace is stored through an orthonormal basis under the pairing
//! `⟨x, y⟩ = tr(x*y)`. Membership, projections and subspace equality are all
//! decided against this basis; equality compares orthogonal projectors, which
//! is basis independent.

use serde::{Deserialize, Serialize};

use super::matrix::{ComplexMatrix, C64};
use crate::{Error, Result};

/// A finite-dimensional Hilbert space, identified by its dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HilbertSpace {
    pub dim: usize,
}

impl HilbertSpace {
    pub fn new(dim: usize) -> Self {
        Self { dim }
    }
}

/// Numerical cutoffs standing in for the exact rank / span / positivity
/// decisions of the underlying algebra.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative singular-value cutoff for rank and membership decisions.
    #[serde(default = "default_rank")]
    pub rank: f64,
    /// Orthonormality residual accepted for a stored basis.
    #[serde(default = "default_orth")]
    pub orth: f64,
    /// Residual accepted when checking operator identities.
    #[serde(default = "default_eq")]
    pub eq: f64,
    /// Eigenvalue floor accepted when checking positivity.
    #[serde(default = "default_psd")]
    pub psd: f64,
}

fn default_rank() -> f64 {
    1e-9
}
fn default_orth() -> f64 {
    1e-10
}
fn default_eq() -> f64 {
    1e-8
}
fn default_psd() -> f64 {
    1e-8
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rank: default_rank(),
            orth: default_orth(),
            eq: default_eq(),
            psd: default_psd(),
        }
    }
}

/// Relative residual: `residual / max(1, scale)`.
pub(crate) fn rel(residual: f64, scale: f64) -> f64 {
    residual / scale.max(1.0)
}

/// Result of a membership test: the verdict plus the distance to the span.
#[derive(Clone, Copy, Debug)]
pub struct Membership {
    pub contained: bool,
    pub residual: f64,
}

/// Subspace of `L(domain, codomain)` spanned by an HS-orthonormal basis.
///
/// The zero subspace (empty basis) is a first-class value so degenerate
/// modules flow through every operation.
#[derive(Clone, Debug)]
pub struct OperatorSubspace {
    domain: HilbertSpace,
    codomain: HilbertSpace,
    basis: Vec<ComplexMatrix>,
}

impl OperatorSubspace {
    /// The zero subspace of `L(domain, codomain)`.
    pub fn zero(domain: HilbertSpace, codomain: HilbertSpace) -> Self {
        Self {
            domain,
            codomain,
            basis: Vec::new(),
        }
    }

    /// All of `L(domain, codomain)`, with matrix units as basis.
    pub fn full(domain: HilbertSpace, codomain: HilbertSpace) -> Self {
        let mut basis = Vec::with_capacity(domain.dim * codomain.dim);
        for i in 0..codomain.dim {
            for j in 0..domain.dim {
                basis.push(ComplexMatrix::matrix_unit(codomain.dim, domain.dim, i, j));
            }
        }
        Self {
            domain,
            codomain,
            basis,
        }
    }

    /// Orthonormalizes a spanning set into a basis, dropping dependent inputs
    /// whose singular value falls below `tol.rank` relative to the largest.
    /// An empty spanning set yields the zero subspace.
    pub fn span(
        domain: HilbertSpace,
        codomain: HilbertSpace,
        mats: &[ComplexMatrix],
        tol: &Tolerances,
    ) -> Result<Self> {
        Self::span_with_floor(domain, codomain, mats, 0.0, tol)
    }

    /// [`span`](Self::span) with an absolute floor on the scale reference:
    /// singular values below `tol.rank · max(σ_max, floor)` are dropped.
    /// Callers whose inputs are projections of unit-norm operators pass
    /// `floor = 1` so that an all-roundoff spanning set collapses to the
    /// zero subspace instead of being renormalized into garbage directions.
    pub(crate) fn span_with_floor(
        domain: HilbertSpace,
        codomain: HilbertSpace,
        mats: &[ComplexMatrix],
        floor: f64,
        tol: &Tolerances,
    ) -> Result<Self> {
        let n = domain.dim * codomain.dim;
        for m in mats {
            check_shape(domain, codomain, m)?;
        }
        if mats.is_empty() || n == 0 {
            return Ok(Self::zero(domain, codomain));
        }
        // Rows of `stack` are the flattened spanning matrices; the row space
        // is recovered from the right singular vectors.
        let stack = nalgebra::DMatrix::from_fn(mats.len(), n, |i, j| mats[i].entries()[j]);
        let svd = stack.svd(false, true);
        let v_t = svd.v_t.expect("requested V^T");
        let top = svd.singular_values.iter().copied().fold(0.0, f64::max);
        let reference = top.max(floor);
        let mut kept: Vec<usize> = (0..svd.singular_values.len())
            .filter(|&i| top > 0.0 && svd.singular_values[i] > tol.rank * reference)
            .collect();
        kept.sort_by(|&a, &b| {
            svd.singular_values[b]
                .partial_cmp(&svd.singular_values[a])
                .unwrap()
                .then(a.cmp(&b))
        });
        let basis = kept
            .into_iter()
            .map(|r| {
                ComplexMatrix::new(
                    codomain.dim,
                    domain.dim,
                    (0..n).map(|j| v_t[(r, j)]).collect(),
                )
                .expect("row has the right length")
            })
            .collect();
        Ok(Self {
            domain,
            codomain,
            basis,
        })
    }

    /// Wraps an already orthonormal family, verifying the Gram matrix.
    pub fn from_orthonormal(
        domain: HilbertSpace,
        codomain: HilbertSpace,
        basis: Vec<ComplexMatrix>,
        tol: &Tolerances,
    ) -> Result<Self> {
        for m in &basis {
            check_shape(domain, codomain, m)?;
        }
        let s = Self {
            domain,
            codomain,
            basis,
        };
        let residual = s.gram_residual();
        if residual > tol.orth {
            return Err(Error::NotOrthonormal { residual });
        }
        Ok(s)
    }

    pub fn domain(&self) -> HilbertSpace {
        self.domain
    }

    pub fn codomain(&self) -> HilbertSpace {
        self.codomain
    }

    /// Shape of every member: `(codomain.dim, domain.dim)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.codomain.dim, self.domain.dim)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }

    /// Largest deviation of the basis Gram matrix from the identity.
    pub fn gram_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                let g = a.hs_inner(b).expect("basis shapes agree");
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - C64::new(target, 0.0)).norm());
            }
        }
        worst
    }

    pub(crate) fn check_member_shape(&self, m: &ComplexMatrix) -> Result<()> {
        check_shape(self.domain, self.codomain, m)
    }

    /// Expansion coefficients of the orthogonal projection of `m`.
    pub fn coefficients(&self, m: &ComplexMatrix) -> Result<Vec<C64>> {
        self.check_member_shape(m)?;
        self.basis.iter().map(|b| b.hs_inner(m)).collect()
    }

    /// Orthogonal projection of `m` onto the subspace.
    pub fn project(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        let coeffs = self.coefficients(m)?;
        Ok(self
            .from_coords(&coeffs)
            .expect("coefficient count matches"))
    }

    /// Reassembles an element from basis coordinates.
    pub fn from_coords(&self, coords: &[C64]) -> Result<ComplexMatrix> {
        if coords.len() != self.basis.len() {
            return Err(Error::ShapeMismatch {
                context: "subspace coordinates",
                expected_rows: self.basis.len(),
                expected_cols: 1,
                rows: coords.len(),
                cols: 1,
            });
        }
        let mut out = ComplexMatrix::zeros(self.codomain.dim, self.domain.dim);
        for (c, b) in coords.iter().zip(&self.basis) {
            out = out.add(&b.scale(*c)).expect("shapes agree");
        }
        Ok(out)
    }

    /// Membership test: distance of `m` to the span against
    /// `tol.rank · max(1, ‖m‖_HS)`.
    pub fn contains(&self, m: &ComplexMatrix, tol: &Tolerances) -> Result<Membership> {
        let proj = self.project(m)?;
        let residual = m.sub(&proj)?.hs_norm();
        Ok(Membership {
            contained: residual <= tol.rank * m.hs_norm().max(1.0),
            residual,
        })
    }

    /// Coordinates of `m`, failing if `m` is not in the subspace.
    pub fn coords(&self, m: &ComplexMatrix, tol: &Tolerances) -> Result<Vec<C64>> {
        let membership = self.contains(m, tol)?;
        if !membership.contained {
            return Err(Error::NotInSubspace {
                residual: membership.residual,
            });
        }
        self.coefficients(m)
    }

    /// Orthogonal projector onto the subspace as an `N x N` matrix on the
    /// flattened operator space, `N = rows·cols`.
    pub fn projector_matrix(&self) -> ComplexMatrix {
        let n = self.domain.dim * self.codomain.dim;
        let mut p = ComplexMatrix::zeros(n, n);
        for b in &self.basis {
            let v = b.entries();
            let outer = ComplexMatrix::from_fn(n, n, |i, j| v[i] * v[j].conj());
            p = p.add(&outer).expect("square shapes agree");
        }
        p
    }

    /// Operator-norm distance between the projectors of two subspaces.
    pub fn projector_distance(&self, other: &Self) -> Result<f64> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::ShapeMismatch {
                context: "projector comparison",
                expected_rows: self.codomain.dim,
                expected_cols: self.domain.dim,
                rows: other.codomain.dim,
                cols: other.domain.dim,
            });
        }
        Ok(self
            .projector_matrix()
            .sub(&other.projector_matrix())?
            .op_norm())
    }

    /// Subspace equality via projector comparison.
    pub fn equals(&self, other: &Self, tol: &Tolerances) -> Result<bool> {
        Ok(self.projector_distance(other)? <= tol.eq)
    }

    /// Orthogonal complement inside `L(domain, codomain)`.
    pub fn orthogonal_complement(&self, tol: &Tolerances) -> Self {
        let full = Self::full(self.domain, self.codomain);
        let residuals: Vec<ComplexMatrix> = full
            .basis
            .iter()
            .map(|e| {
                let proj = self.project(e).expect("unit has the right shape");
                e.sub(&proj).expect("shapes agree")
            })
            .collect();
        // Residuals of unit matrices: scale 1 is the honest reference, so a
        // complement of a (numerically) full subspace is empty rather than
        // renormalized roundoff.
        Self::span_with_floor(self.domain, self.codomain, &residuals, 1.0, tol)
            .expect("residuals have the right shape")
    }
}

fn check_shape(domain: HilbertSpace, codomain: HilbertSpace, m: &ComplexMatrix) -> Result<()> {
    if m.rows() != codomain.dim || m.cols() != domain.dim {
        return Err(Error::ShapeMismatch {
            context: "operator subspace member",
            expected_rows: codomain.dim,
            expected_cols: domain.dim,
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn dependent_pair_collapses_to_one_dimension() {
        let id = ComplexMatrix::identity(2);
        let two_id = id.scale(c(2.0, 0.0));
        let s = OperatorSubspace::span(
            HilbertSpace::new(2),
            HilbertSpace::new(2),
            &[id, two_id],
            &tol(),
        )
        .unwrap();
        assert_eq!(s.dim(), 1);
    }

    #[test]
    fn orthogonal_units_stay_two_dimensional() {
        let e11 = ComplexMatrix::matrix_unit(2, 2, 0, 0);
        let e22 = ComplexMatrix::matrix_unit(2, 2, 1, 1);
        let s = OperatorSubspace::span(
            HilbertSpace::new(2),
            HilbertSpace::new(2),
            &[e11, e22],
            &tol(),
        )
        .unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.gram_residual() < 1e-12);
    }

    #[test]
    fn empty_input_gives_zero_subspace() {
        let s = OperatorSubspace::span(HilbertSpace::new(2), HilbertSpace::new(3), &[], &tol())
            .unwrap();
        assert_eq!(s.dim(), 0);
        let m = ComplexMatrix::zeros(3, 2);
        assert!(s.contains(&m, &tol()).unwrap().contained);
    }

    #[test]
    fn membership_distinguishes_complement() {
        let e11 = ComplexMatrix::matrix_unit(2, 2, 0, 0);
        let e22 = ComplexMatrix::matrix_unit(2, 2, 1, 1);
        let s = OperatorSubspace::span(
            HilbertSpace::new(2),
            HilbertSpace::new(2),
            &[e11.clone(), e22],
            &tol(),
        )
        .unwrap();
        let e12 = ComplexMatrix::matrix_unit(2, 2, 0, 1);
        let m = s.contains(&e12, &tol()).unwrap();
        assert!(!m.contained);
        assert!((m.residual - 1.0).abs() < 1e-12);
        assert!(s.contains(&e11, &tol()).unwrap().contained);
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let s = OperatorSubspace::full(HilbertSpace::new(2), HilbertSpace::new(2));
        let m = ComplexMatrix::zeros(3, 2);
        assert!(matches!(
            s.contains(&m, &tol()),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn complement_of_diagonal_is_offdiagonal() {
        let e11 = ComplexMatrix::matrix_unit(2, 2, 0, 0);
        let e22 = ComplexMatrix::matrix_unit(2, 2, 1, 1);
        let s = OperatorSubspace::span(
            HilbertSpace::new(2),
            HilbertSpace::new(2),
            &[e11, e22],
            &tol(),
        )
        .unwrap();
        let comp = s.orthogonal_complement(&tol());
        assert_eq!(comp.dim(), 2);
        let e12 = ComplexMatrix::matrix_unit(2, 2, 0, 1);
        assert!(comp.contains(&e12, &tol()).unwrap().contained);
    }

    #[test]
    fn reorthonormalizing_preserves_projector() {
        let mats = vec![
            ComplexMatrix::from_fn(2, 2, |i, j| c((i + 2 * j) as f64, 1.0)),
            ComplexMatrix::from_fn(2, 2, |i, j| c(1.0, (i * j) as f64 - 0.5)),
        ];
        let s1 = OperatorSubspace::span(HilbertSpace::new(2), HilbertSpace::new(2), &mats, &tol())
            .unwrap();
        let s2 = OperatorSubspace::span(
            HilbertSpace::new(2),
            HilbertSpace::new(2),
            s1.basis(),
            &tol(),
        )
        .unwrap();
        assert!(s1.projector_distance(&s2).unwrap() < 1e-10);
    }
}
