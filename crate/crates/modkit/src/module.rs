//! Concrete right Hilbert modules `X ⊆ L(H0, H1)` over a block algebra
//! `A ⊆ L(H0)`, closed under the right action (`xa ∈ X`) and under inner
//! products (`x*y ∈ A`), with `⟨x, y⟩_A = x*y`.
//!
//! Module elements are addressed by coordinates in the stored orthonormal
//! basis of `X`; module maps are coordinate matrices. For an adjointable map
//! the coordinate matrix of the module adjoint coincides with the conjugate
//! transpose (take traces in `t(x)*y = x*t*(y)`), which makes the coordinate
//! picture a faithful *-representation of `L_A(X)` — in particular the
//! coordinate operator norm *is* the module-map norm.

use crate::algebra::{AlgebraElement, CStarAlgebra};
use crate::linalg::{
    lstsq, psd_order_check, rel, ComplexMatrix, HilbertSpace, Membership, OperatorSubspace,
    Tolerances, C64,
};
use crate::{Error, Result};

/// Validated concrete module: the subspace, the acting algebra, and the
/// tolerances under which the axioms were accepted.
#[derive(Clone, Debug)]
pub struct ConcreteModule {
    space: OperatorSubspace,
    algebra: CStarAlgebra,
    tol: Tolerances,
}

/// Outcome of scanning the two closure axioms; `worst` entries are the
/// argmax residual witnesses `(basis index, partner index, residual)`.
#[derive(Clone, Debug)]
pub struct ModuleValidationReport {
    pub domain_matches: bool,
    pub basis_gram_residual: f64,
    pub right_action_ok: bool,
    pub right_action_worst: Option<(usize, usize, f64)>,
    pub inner_product_ok: bool,
    pub inner_product_worst: Option<(usize, usize, f64)>,
}

impl ModuleValidationReport {
    pub fn ok(&self) -> bool {
        self.domain_matches && self.right_action_ok && self.inner_product_ok
    }
}

/// Inner product value: the concrete operator `x*y` on `H0` together with
/// its abstract coordinates in the algebra.
#[derive(Clone, Debug)]
pub struct InnerProduct {
    pub concrete: ComplexMatrix,
    pub element: AlgebraElement,
}

/// Module map in coordinates, together with its adjoint.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap {
    action: ComplexMatrix,
    adjoint_action: ComplexMatrix,
}

impl ModuleMap {
    pub fn new(action: ComplexMatrix, adjoint_action: ComplexMatrix) -> Result<Self> {
        if action.rows() != action.cols() || adjoint_action.shape() != action.shape() {
            return Err(Error::ShapeMismatch {
                context: "module map coordinates",
                expected_rows: action.rows(),
                expected_cols: action.rows(),
                rows: adjoint_action.rows(),
                cols: adjoint_action.cols(),
            });
        }
        Ok(Self {
            action,
            adjoint_action,
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            action: ComplexMatrix::identity(dim),
            adjoint_action: ComplexMatrix::identity(dim),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            action: ComplexMatrix::zeros(dim, dim),
            adjoint_action: ComplexMatrix::zeros(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.action.rows()
    }

    pub fn action(&self) -> &ComplexMatrix {
        &self.action
    }

    pub fn adjoint_action(&self) -> &ComplexMatrix {
        &self.adjoint_action
    }

    pub fn adjoint(&self) -> Self {
        Self {
            action: self.adjoint_action.clone(),
            adjoint_action: self.action.clone(),
        }
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            action: self.action.mul(&other.action)?,
            adjoint_action: other.adjoint_action.mul(&self.adjoint_action)?,
        })
    }

    /// `Σ c_i t_i`, with adjoint `Σ conj(c_i) t_i*`.
    pub fn linear_combination(maps: &[Self], coeffs: &[C64]) -> Result<Self> {
        let dim = maps.first().map(|m| m.dim()).unwrap_or(0);
        let mut action = ComplexMatrix::zeros(dim, dim);
        let mut adjoint = ComplexMatrix::zeros(dim, dim);
        for (m, c) in maps.iter().zip(coeffs) {
            action = action.add(&m.action.scale(*c))?;
            adjoint = adjoint.add(&m.adjoint_action.scale(c.conj()))?;
        }
        Ok(Self {
            action,
            adjoint_action: adjoint,
        })
    }
}

/// Outcome of the adjointability test; absence of an adjoint is a result,
/// not an error.
#[derive(Clone, Debug)]
pub enum AdjointabilityOutcome {
    Adjointable(ModuleMap),
    NotAdjointable { residual: f64 },
}

impl ConcreteModule {
    /// Checks the module axioms and wraps the data, or reports which closure
    /// fails with the witnessing pair and residual.
    pub fn validate(
        space: OperatorSubspace,
        algebra: CStarAlgebra,
        tol: Tolerances,
    ) -> Result<Self> {
        let report = Self::check(&space, &algebra, &tol)?;
        if !report.domain_matches {
            return Err(Error::ShapeMismatch {
                context: "module domain vs algebra representation space",
                expected_rows: algebra.rep_space().dim,
                expected_cols: algebra.rep_space().dim,
                rows: space.domain().dim,
                cols: space.domain().dim,
            });
        }
        if !report.right_action_ok {
            let (i, j, residual) = report.right_action_worst.unwrap_or((0, 0, f64::NAN));
            return Err(Error::ClosureViolation {
                axiom: "right action",
                i,
                j,
                residual,
            });
        }
        if !report.inner_product_ok {
            let (i, j, residual) = report.inner_product_worst.unwrap_or((0, 0, f64::NAN));
            return Err(Error::ClosureViolation {
                axiom: "inner product",
                i,
                j,
                residual,
            });
        }
        Ok(Self {
            space,
            algebra,
            tol,
        })
    }

    /// Non-failing scan of both closure axioms over basis × generators.
    pub fn check(
        space: &OperatorSubspace,
        algebra: &CStarAlgebra,
        tol: &Tolerances,
    ) -> Result<ModuleValidationReport> {
        let domain_matches = space.domain() == algebra.rep_space();
        let mut report = ModuleValidationReport {
            domain_matches,
            basis_gram_residual: space.gram_residual(),
            right_action_ok: true,
            right_action_worst: None,
            inner_product_ok: true,
            inner_product_worst: None,
        };
        if !domain_matches {
            report.right_action_ok = false;
            report.inner_product_ok = false;
            return Ok(report);
        }
        for (i, x) in space.basis().iter().enumerate() {
            for (u, image) in algebra.unit_images().iter().enumerate() {
                let moved = x.mul(image)?;
                let m: Membership = space.contains(&moved, tol)?;
                if !m.contained {
                    report.right_action_ok = false;
                }
                if report
                    .right_action_worst
                    .map(|(_, _, r)| m.residual > r)
                    .unwrap_or(true)
                {
                    report.right_action_worst = Some((i, u, m.residual));
                }
            }
        }
        let rep_image = algebra.rep_subspace(tol)?;
        for (i, x) in space.basis().iter().enumerate() {
            for (j, y) in space.basis().iter().enumerate() {
                let prod = x.adjoint().mul(y)?;
                let m = rep_image.contains(&prod, tol)?;
                if !m.contained {
                    report.inner_product_ok = false;
                }
                if report
                    .inner_product_worst
                    .map(|(_, _, r)| m.residual > r)
                    .unwrap_or(true)
                {
                    report.inner_product_worst = Some((i, j, m.residual));
                }
            }
        }
        Ok(report)
    }

    pub fn space(&self) -> &OperatorSubspace {
        &self.space
    }

    pub fn algebra(&self) -> &CStarAlgebra {
        &self.algebra
    }

    pub fn tol(&self) -> &Tolerances {
        &self.tol
    }

    pub fn h0(&self) -> HilbertSpace {
        self.space.domain()
    }

    pub fn h1(&self) -> HilbertSpace {
        self.space.codomain()
    }

    /// Linear dimension of the module.
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis_element(&self, i: usize) -> &ComplexMatrix {
        &self.space.basis()[i]
    }

    pub fn contains(&self, x: &ComplexMatrix) -> Result<Membership> {
        self.space.contains(x, &self.tol)
    }

    pub fn coords(&self, x: &ComplexMatrix) -> Result<Vec<C64>> {
        self.space.coords(x, &self.tol)
    }

    pub fn from_coords(&self, coords: &[C64]) -> Result<ComplexMatrix> {
        self.space.from_coords(coords)
    }

    /// `⟨x, y⟩_A = x*y`, returned concretely and in algebra coordinates.
    pub fn inner_product(&self, x: &ComplexMatrix, y: &ComplexMatrix) -> Result<InnerProduct> {
        self.space.check_member_shape(x)?;
        self.space.check_member_shape(y)?;
        let concrete = x.adjoint().mul(y)?;
        let element = self.algebra.element_from_rep(&concrete, &self.tol)?;
        Ok(InnerProduct { concrete, element })
    }

    /// Operator norm of a module element; agrees with `‖x*x‖^{1/2}` by the
    /// C*-identity.
    pub fn module_norm(&self, x: &ComplexMatrix) -> Result<f64> {
        self.space.check_member_shape(x)?;
        let norm = x.op_norm();
        debug_assert!({
            let gram_norm = x.adjoint().mul(x)?.op_norm();
            (norm * norm - gram_norm).abs() <= self.tol.eq * gram_norm.max(1.0)
        });
        Ok(norm)
    }

    /// Rank of `span{x ξ : x ∈ basis, ξ ∈ H0}` inside `H1`.
    pub fn range_rank(&self) -> usize {
        let h0 = self.h0().dim;
        let h1 = self.h1().dim;
        let k = self.dim();
        if h1 == 0 {
            return 0;
        }
        let stacked = ComplexMatrix::from_fn(h1, k * h0, |r, c| {
            let (i, xi) = (c / h0, c % h0);
            self.space.basis()[i].at(r, xi)
        });
        stacked.rank(self.tol.rank)
    }

    /// `X·H0` dense in `H1`, i.e. full range rank.
    pub fn is_nondegenerate(&self) -> bool {
        self.range_rank() == self.h1().dim
    }

    /// Rank-one module map `θ_{x,y}: z ↦ x⟨y, z⟩_A`, with adjoint `θ_{y,x}`.
    pub fn rank_one(&self, x: &ComplexMatrix, y: &ComplexMatrix) -> Result<ModuleMap> {
        let action = self.rank_one_action(x, y)?;
        let adjoint_action = self.rank_one_action(y, x)?;
        ModuleMap::new(action, adjoint_action)
    }

    fn rank_one_action(&self, x: &ComplexMatrix, y: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.space.check_member_shape(x)?;
        self.space.check_member_shape(y)?;
        let k = self.dim();
        let y_adj = y.adjoint();
        let mut cols = Vec::with_capacity(k);
        for z in self.space.basis() {
            let image = x.mul(&y_adj.mul(z)?)?;
            cols.push(self.space.coords(&image, &self.tol)?);
        }
        Ok(ComplexMatrix::from_fn(k, k, |r, c| cols[c][r]))
    }

    /// Coordinate matrix of the right translation `x ↦ x·rep(a)`. Not a
    /// module map in general (it does not commute with the right action).
    pub fn right_translation(&self, a: &AlgebraElement) -> Result<ComplexMatrix> {
        let rep = self.algebra.rep(a)?;
        let k = self.dim();
        let mut cols = Vec::with_capacity(k);
        for x in self.space.basis() {
            let moved = x.mul(&rep)?;
            cols.push(self.space.coords(&moved, &self.tol)?);
        }
        Ok(ComplexMatrix::from_fn(k, k, |r, c| cols[c][r]))
    }

    pub fn apply_map(&self, t: &ModuleMap, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        let coords = self.coords(x)?;
        let image = t.action().apply_vec(&coords)?;
        self.from_coords(&image)
    }

    /// Module-map norm: the coordinate operator norm (exact, since the
    /// coordinate picture is a faithful *-representation of `L_A(X)`).
    pub fn map_norm(&self, t: &ModuleMap) -> f64 {
        t.action().op_norm()
    }

    /// Solves `t(x_i)*x_j = x_i*s(x_j)` for the adjoint coordinates `s` in
    /// the least-squares sense and accepts when the relation holds within
    /// `tol.eq`.
    pub fn adjointability(&self, action: &ComplexMatrix) -> Result<AdjointabilityOutcome> {
        let k = self.dim();
        if action.shape() != (k, k) {
            return Err(Error::ShapeMismatch {
                context: "module map action",
                expected_rows: k,
                expected_cols: k,
                rows: action.rows(),
                cols: action.cols(),
            });
        }
        let h0 = self.h0().dim;
        let basis = self.space.basis();
        // grams[i][m] = x_i* x_m
        let mut grams = Vec::with_capacity(k);
        for xi in basis {
            let xi_adj = xi.adjoint();
            let row: Vec<ComplexMatrix> = basis
                .iter()
                .map(|xm| xi_adj.mul(xm))
                .collect::<Result<_>>()?;
            grams.push(row);
        }
        // t(x_j) in concrete form, one per basis element
        let mut t_images = Vec::with_capacity(k);
        for j in 0..k {
            t_images.push(self.from_coords(&action.column(j))?);
        }
        let rows = k * h0 * h0;
        let system = ComplexMatrix::from_fn(rows, k, |r, m| {
            let (i, rest) = (r / (h0 * h0), r % (h0 * h0));
            grams[i][m].entries()[rest]
        });
        let rhs = ComplexMatrix::from_fn(rows, k, |r, j| {
            let (i, rest) = (r / (h0 * h0), r % (h0 * h0));
            let lhs = t_images[i]
                .adjoint()
                .mul(&basis[j])
                .expect("member shapes agree");
            lhs.entries()[rest]
        });
        let (solution, residual) = lstsq(&system, &rhs, self.tol.rank)?;
        let relative = rel(residual, rhs.hs_norm());
        if relative > self.tol.eq {
            return Ok(AdjointabilityOutcome::NotAdjointable { residual: relative });
        }
        Ok(AdjointabilityOutcome::Adjointable(ModuleMap::new(
            action.clone(),
            solution,
        )?))
    }

    /// `⟨t(x), t(x)⟩_A ≤ ‖t‖²⟨x, x⟩_A` as a positive-semidefinite order
    /// check; a failure signals tolerance trouble or corrupted input.
    pub fn contraction_bound_check(&self, t: &ModuleMap, x: &ComplexMatrix) -> Result<bool> {
        let tx = self.apply_map(t, x)?;
        let lhs = tx.adjoint().mul(&tx)?;
        let norm = self.map_norm(t);
        let rhs = x.adjoint().mul(x)?.scale(C64::new(norm * norm, 0.0));
        psd_order_check(&lhs, &rhs, &self.tol)
    }
}
