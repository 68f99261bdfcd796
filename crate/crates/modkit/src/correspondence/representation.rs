//! Representations of correspondences on pairs of Hilbert spaces.
//!
//! Given an `(A, B)` correspondence `(X, φ)` and a nondegenerate
//! representation `ρ` of `B` on `H0`, the pair `(H0, ρ)` is a `(B, C)`
//! correspondence over the scalars, and `H1 = X ⊗_ρ H0` is a Hilbert space.
//! The triple
//!
//! ```text
//! λ(a)(x ⊗ ξ) = φ(a)x ⊗ ξ,     π(x)ξ = x ⊗ ξ,     π(x)*(z ⊗ ξ) = ρ(⟨x,z⟩_B)ξ
//! ```
//!
//! satisfies the compatibility conditions
//!
//! ```text
//! (1) π(φ(a)x) = λ(a)π(x)
//! (2) π(xb)   = π(x)ρ(b)
//! (3) ρ(⟨x,y⟩_B) = π(x)*π(y)
//! ```
//!
//! and `π` is isometric whenever `ρ` is faithful. Chaining two builders
//! represents an interior tensor product as `π(x ⊗ y) = τ(x)π(y)`.

use crate::algebra::CStarAlgebra;
use crate::linalg::{ComplexMatrix, HilbertSpace, OperatorSubspace, C64};
use crate::{Error, Result};

use super::bimodule::LeftInnerProduct;
use super::tensor::interior_tensor;
use super::{Correspondence, TensorModule};

/// A triple `(λ, ρ, π)`: `λ` represents the left algebra on `H1`, `ρ` the
/// right algebra on `H0`, and `π` sends module basis elements into
/// `L(H0, H1)`.
#[derive(Clone, Debug)]
pub struct RepresentationTriple {
    lambda: Vec<ComplexMatrix>,
    rho: Vec<ComplexMatrix>,
    pi: Vec<ComplexMatrix>,
    h0: usize,
    h1: usize,
}

impl RepresentationTriple {
    /// Wraps user-supplied data after shape checks; used for perturbation
    /// studies and externally provided triples.
    pub fn new(
        lambda: Vec<ComplexMatrix>,
        rho: Vec<ComplexMatrix>,
        pi: Vec<ComplexMatrix>,
        h0: usize,
        h1: usize,
    ) -> Result<Self> {
        for m in &lambda {
            if m.shape() != (h1, h1) {
                return Err(Error::ShapeMismatch {
                    context: "lambda generator",
                    expected_rows: h1,
                    expected_cols: h1,
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
        }
        for m in &rho {
            if m.shape() != (h0, h0) {
                return Err(Error::ShapeMismatch {
                    context: "rho generator",
                    expected_rows: h0,
                    expected_cols: h0,
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
        }
        for m in &pi {
            if m.shape() != (h1, h0) {
                return Err(Error::ShapeMismatch {
                    context: "pi image",
                    expected_rows: h1,
                    expected_cols: h0,
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
        }
        Ok(Self {
            lambda,
            rho,
            pi,
            h0,
            h1,
        })
    }

    pub fn lambda(&self) -> &[ComplexMatrix] {
        &self.lambda
    }

    pub fn rho(&self) -> &[ComplexMatrix] {
        &self.rho
    }

    pub fn pi(&self) -> &[ComplexMatrix] {
        &self.pi
    }

    pub fn h0(&self) -> usize {
        self.h0
    }

    pub fn h1(&self) -> usize {
        self.h1
    }

    /// `π` of a module element given by coordinates.
    pub fn pi_of_coords(&self, coords: &[C64]) -> Result<ComplexMatrix> {
        combine_units(&self.pi, coords, self.h1, self.h0)
    }

    /// `λ` of a left-algebra element given by coordinates.
    pub fn lambda_of_coords(&self, coords: &[C64]) -> Result<ComplexMatrix> {
        combine_units(&self.lambda, coords, self.h1, self.h1)
    }

    /// `ρ` of a right-algebra element given by coordinates.
    pub fn rho_of_coords(&self, coords: &[C64]) -> Result<ComplexMatrix> {
        combine_units(&self.rho, coords, self.h0, self.h0)
    }
}

pub(crate) fn combine_units(
    units: &[ComplexMatrix],
    coords: &[C64],
    rows: usize,
    cols: usize,
) -> Result<ComplexMatrix> {
    if coords.len() != units.len() {
        return Err(Error::ShapeMismatch {
            context: "generator combination",
            expected_rows: units.len(),
            expected_cols: 1,
            rows: coords.len(),
            cols: 1,
        });
    }
    let mut out = ComplexMatrix::zeros(rows, cols);
    for (c, u) in coords.iter().zip(units) {
        if *c != C64::new(0.0, 0.0) {
            out = out.add(&u.scale(*c))?;
        }
    }
    Ok(out)
}

fn require_representation(
    algebra: &CStarAlgebra,
    mats: &[ComplexMatrix],
    tol: &crate::linalg::Tolerances,
) -> Result<()> {
    algebra.is_representation(mats, tol)?;
    let defect = algebra.rep_unit_defect(mats);
    if defect > tol.eq {
        return Err(Error::DegenerateRepresentation { residual: defect });
    }
    Ok(())
}

/// Builds the representation of `(X, φ)` induced by a nondegenerate
/// representation `ρ` of the right algebra: `H1 = X ⊗_ρ H0`, `π` the
/// creation operators, `λ` the left action on the tensor quotient. The
/// compatibility conditions (1) and (3) are asserted before returning;
/// condition (2) follows and is reported by [`verify_representation`].
pub fn build_representation(
    c: &Correspondence,
    rho: &[ComplexMatrix],
) -> Result<RepresentationTriple> {
    let tol = *c.tol();
    let b = c.module().algebra();
    require_representation(b, rho, &tol)?;
    let h0 = rho.first().map(|m| m.rows()).unwrap_or(0);
    let fock = Correspondence::from_representation(b, rho, &tol)?;
    let tm = interior_tensor(c, &fock)?;
    let h1 = tm.dim();
    let k = c.module().dim();

    let mut pi = Vec::with_capacity(k);
    for i in 0..k {
        let mut e_i = vec![C64::new(0.0, 0.0); k];
        e_i[i] = C64::new(1.0, 0.0);
        let mut columns = Vec::with_capacity(h0);
        for xi in 0..h0 {
            let mut e_xi = vec![C64::new(0.0, 0.0); h0];
            e_xi[xi] = C64::new(1.0, 0.0);
            columns.push(tm.elementary(&e_i, &e_xi)?);
        }
        pi.push(ComplexMatrix::from_fn(h1, h0, |r, col| columns[col][r]));
    }
    let lambda = tm.left_action_units().to_vec();
    let triple = RepresentationTriple {
        lambda,
        rho: rho.to_vec(),
        pi,
        h0,
        h1,
    };

    c.left_algebra().is_representation(&triple.lambda, &tol)?;
    let report = verify_representation(c, &triple)?;
    if report.cco1 > tol.eq || report.cco3 > tol.eq {
        return Err(Error::Validation(format!(
            "representation construction violates its compatibility conditions \
             (residuals {:.3e}, {:.3e})",
            report.cco1, report.cco3
        )));
    }
    Ok(triple)
}

/// Residuals of the three compatibility conditions plus the structural flags
/// used downstream.
#[derive(Clone, Copy, Debug)]
pub struct RepresentationReport {
    pub cco1: f64,
    pub cco2: f64,
    pub cco3: f64,
    /// Largest deviation of `‖π(x)‖` from `‖x‖` over the basis.
    pub isometry_defect: f64,
    /// Rank of `π(X)·H0` inside `H1`.
    pub pi_range_rank: usize,
    pub pi_range_full: bool,
    pub lambda_nondegenerate: bool,
    pub lambda_faithful: bool,
    pub rho_nondegenerate: bool,
    pub rho_faithful: bool,
}

/// Measures the compatibility conditions of a triple against a
/// correspondence; residuals are the output, nothing is asserted.
pub fn verify_representation(
    c: &Correspondence,
    triple: &RepresentationTriple,
) -> Result<RepresentationReport> {
    let tol = c.tol();
    let a = c.left_algebra();
    let b = c.module().algebra();
    let k = c.module().dim();

    let mut cco1: f64 = 0.0;
    for (u, map) in c.phi_maps().iter().enumerate() {
        let lambda_u = &triple.lambda[u];
        for i in 0..k {
            let moved = map.action().column(i);
            let lhs = triple.pi_of_coords(&moved)?;
            let rhs = lambda_u.mul(&triple.pi[i])?;
            cco1 = cco1.max(lhs.sub(&rhs)?.op_norm());
        }
    }

    let mut cco2: f64 = 0.0;
    for u in 0..b.dim() {
        let (beta, bi, bj) = b.unit_position(u);
        let unit = b.matrix_unit(beta, bi, bj);
        let translate = c.module().right_translation(&unit)?;
        for i in 0..k {
            let lhs = triple.pi_of_coords(&translate.column(i))?;
            let rhs = triple.pi[i].mul(&triple.rho[u])?;
            cco2 = cco2.max(lhs.sub(&rhs)?.op_norm());
        }
    }

    let mut cco3: f64 = 0.0;
    let mut isometry_defect: f64 = 0.0;
    for i in 0..k {
        for j in 0..k {
            let ip = c
                .module()
                .inner_product(c.module().basis_element(i), c.module().basis_element(j))?;
            let lhs = triple.rho_of_coords(&b.coords(&ip.element))?;
            let rhs = triple.pi[i].adjoint().mul(&triple.pi[j])?;
            cco3 = cco3.max(lhs.sub(&rhs)?.op_norm());
        }
        let defect = (triple.pi[i].op_norm() - c.module().basis_element(i).op_norm()).abs();
        isometry_defect = isometry_defect.max(defect);
    }

    let h0 = triple.h0;
    let stacked = ComplexMatrix::from_fn(triple.h1, k * h0, |r, col| {
        triple.pi[col / h0].at(r, col % h0)
    });
    let pi_range_rank = stacked.rank(tol.rank);

    Ok(RepresentationReport {
        cco1,
        cco2,
        cco3,
        isometry_defect,
        pi_range_rank,
        pi_range_full: pi_range_rank == triple.h1,
        lambda_nondegenerate: a.rep_nondegenerate(&triple.lambda, tol),
        lambda_faithful: a.rep_faithful(&triple.lambda),
        rho_nondegenerate: b.rep_nondegenerate(&triple.rho, tol),
        rho_faithful: b.rep_faithful(&triple.rho),
    })
}

/// Kernel comparison between `λ` and `φ`.
#[derive(Clone, Debug)]
pub struct FaithfulnessReport {
    pub lambda_faithful: bool,
    pub phi_injective: bool,
    pub lambda_kernel_blocks: Vec<usize>,
    pub phi_kernel_blocks: Vec<usize>,
}

/// Decides faithfulness of `λ` blockwise and compares with injectivity of
/// `φ`; when `ρ` is faithful the two must agree, and a mismatch is an error.
pub fn faithfulness_check(
    c: &Correspondence,
    triple: &RepresentationTriple,
    rho_faithful: bool,
) -> Result<FaithfulnessReport> {
    let tol = c.tol();
    let lambda_hom = crate::algebra::StarHomomorphism::new_unchecked(
        c.left_algebra().clone(),
        triple.lambda.to_vec(),
    );
    let lambda_kernel = lambda_hom.kernel(tol)?;
    let phi_kernel = c.phi_kernel()?;
    let report = FaithfulnessReport {
        lambda_faithful: lambda_kernel.is_empty(),
        phi_injective: phi_kernel.is_empty(),
        lambda_kernel_blocks: lambda_kernel.members().iter().copied().collect(),
        phi_kernel_blocks: phi_kernel.members().iter().copied().collect(),
    };
    if rho_faithful && report.lambda_faithful != report.phi_injective {
        return Err(Error::Validation(format!(
            "faithfulness of λ ({}) disagrees with injectivity of φ ({}) under a faithful ρ",
            report.lambda_faithful, report.phi_injective
        )));
    }
    Ok(report)
}

/// A representation triple together with the residual of the left
/// compatibility condition `λ(⟨x,y⟩_left) = π(x)π(y)*`.
#[derive(Clone, Debug)]
pub struct BimoduleRepresentation {
    pub triple: RepresentationTriple,
    pub left_compat_residual: f64,
}

/// Builds the representation and additionally asserts the left-inner-product
/// condition; a residual beyond `tol.eq` signals an invalid left inner
/// product.
pub fn build_bimodule_representation(
    c: &Correspondence,
    lip: &LeftInnerProduct,
    rho: &[ComplexMatrix],
) -> Result<BimoduleRepresentation> {
    let tol = *c.tol();
    if lip.algebra().blocks() != c.left_algebra().blocks() {
        return Err(Error::Validation(
            "left inner product is valued in a different algebra than the left action".into(),
        ));
    }
    let k = c.module().dim();
    let triple = build_representation(c, rho)?;
    let mut worst: f64 = 0.0;
    for i in 0..k {
        for j in 0..k {
            let coords = c.left_algebra().coords(lip.entry(i, j));
            let lhs = triple.lambda_of_coords(&coords)?;
            let rhs = triple.pi[i].mul(&triple.pi[j].adjoint())?;
            worst = worst.max(lhs.sub(&rhs)?.op_norm());
        }
    }
    if worst > tol.eq {
        return Err(Error::Validation(format!(
            "left inner product fails λ(⟨x,y⟩) = π(x)π(y)* (residual {worst:.3e})"
        )));
    }
    Ok(BimoduleRepresentation {
        triple,
        left_compat_residual: worst,
    })
}

/// Composite representation of `X ⊗_B Y` through chained builders, with
/// `π(x ⊗ y) = τ(x)π_Y(y)`.
#[derive(Clone, Debug)]
pub struct TensorRepresentation {
    /// `(σ_B, ρ_C, π_Y)` on `(H0, K1)`.
    pub y_triple: RepresentationTriple,
    /// `(λ_A, σ_B, τ_X)` on `(K1, H2)`.
    pub x_triple: RepresentationTriple,
    pub tensor: TensorModule,
    /// `π` of each quotient basis element, in `L(H0, H2)`.
    pub pi: Vec<ComplexMatrix>,
    pub cco1: f64,
    pub cco2: f64,
    pub cco3: f64,
    /// Projector distance between `span{π(quotient basis)}` and
    /// `span{τ(x_i)π_Y(y_j)}`.
    pub span_distance: f64,
    /// Largest deviation of `‖π(v)‖` from the tensor module norm of `v`.
    pub isometry_defect: f64,
}

/// Chains two representation builders over a nondegenerate representation of
/// `C` and represents the interior tensor product as operator products.
/// Requires the middle algebra to act nondegenerately on `Y`.
pub fn tensor_representation(
    xc: &Correspondence,
    yc: &Correspondence,
    rho_c: &[ComplexMatrix],
) -> Result<TensorRepresentation> {
    let tol = *xc.tol();
    if !yc.left_action_nondegenerate() {
        return Err(Error::Validation(
            "middle algebra does not act nondegenerately on the right factor".into(),
        ));
    }
    let tensor = interior_tensor(xc, yc)?;
    let y_triple = build_representation(yc, rho_c)?;
    let x_triple = build_representation(xc, y_triple.lambda())?;

    let n = tensor.left_dim() * tensor.right_dim();
    let ky = tensor.right_dim();
    let h0 = y_triple.h0();
    let h2 = x_triple.h1();
    let mut products = Vec::with_capacity(n);
    for p in 0..n {
        let (i, j) = (p / ky, p % ky);
        products.push(x_triple.pi()[i].mul(&y_triple.pi()[j])?);
    }
    let mut pi = Vec::with_capacity(tensor.dim());
    for r in 0..tensor.dim() {
        let mut e_r = vec![C64::new(0.0, 0.0); tensor.dim()];
        e_r[r] = C64::new(1.0, 0.0);
        let pre = tensor.quotient_to_pre(&e_r)?;
        let mut acc = ComplexMatrix::zeros(h2, h0);
        for (p, coeff) in pre.iter().enumerate() {
            if *coeff != C64::new(0.0, 0.0) {
                acc = acc.add(&products[p].scale(*coeff))?;
            }
        }
        pi.push(acc);
    }

    let pi_of = |coords: &[C64]| -> Result<ComplexMatrix> { combine_units(&pi, coords, h2, h0) };

    let mut cco1: f64 = 0.0;
    for (u, l_u) in tensor.left_action_units().iter().enumerate() {
        let lambda_u = &x_triple.lambda()[u];
        for (s, pi_s) in pi.iter().enumerate() {
            let lhs = pi_of(&l_u.column(s))?;
            let rhs = lambda_u.mul(pi_s)?;
            cco1 = cco1.max(lhs.sub(&rhs)?.op_norm());
        }
    }
    let mut cco2: f64 = 0.0;
    for (w, r_w) in tensor.right_action_units().iter().enumerate() {
        let rho_w = &rho_c[w];
        for (s, pi_s) in pi.iter().enumerate() {
            let lhs = pi_of(&r_w.column(s))?;
            let rhs = pi_s.mul(rho_w)?;
            cco2 = cco2.max(lhs.sub(&rhs)?.op_norm());
        }
    }
    let c_algebra = tensor.right_algebra();
    let mut cco3: f64 = 0.0;
    let mut isometry_defect: f64 = 0.0;
    for r in 0..tensor.dim() {
        let mut e_r = vec![C64::new(0.0, 0.0); tensor.dim()];
        e_r[r] = C64::new(1.0, 0.0);
        for s in 0..tensor.dim() {
            let mut e_s = vec![C64::new(0.0, 0.0); tensor.dim()];
            e_s[s] = C64::new(1.0, 0.0);
            let elem = tensor.inner_product_element(&e_r, &e_s, &tol)?;
            let lhs = combine_units(rho_c, &c_algebra.coords(&elem), h0, h0)?;
            let rhs = pi[r].adjoint().mul(&pi[s])?;
            cco3 = cco3.max(lhs.sub(&rhs)?.op_norm());
        }
        isometry_defect = isometry_defect.max((pi[r].op_norm() - tensor.module_norm(&e_r)?).abs());
    }

    let domain = HilbertSpace::new(h0);
    let codomain = HilbertSpace::new(h2);
    let pi_span = OperatorSubspace::span(domain, codomain, &pi, &tol)?;
    let product_span = OperatorSubspace::span(domain, codomain, &products, &tol)?;
    let span_distance = pi_span.projector_distance(&product_span)?;

    Ok(TensorRepresentation {
        y_triple,
        x_triple,
        tensor,
        pi,
        cco1,
        cco2,
        cco3,
        span_distance,
        isometry_defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::testutil::*;
    use crate::linalg::Tolerances;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn column_module_representation_is_the_inclusion() {
        // (C^d, scalar action) over ρ = id on C: H1 ≅ C^d and all conditions
        // hold to machine precision.
        let c = scalar_on_columns(3);
        let rho = c.module().algebra().identity_rep_matrices();
        let triple = build_representation(&c, &rho).unwrap();
        assert_eq!(triple.h0(), 1);
        assert_eq!(triple.h1(), 3);
        let report = verify_representation(&c, &triple).unwrap();
        assert!(report.cco1 < 1e-10);
        assert!(report.cco2 < 1e-10);
        assert!(report.cco3 < 1e-10);
        assert!(report.isometry_defect < 1e-10);
        assert!(report.pi_range_full);
        assert!(report.lambda_nondegenerate);
        // λ(1) is the identity on H1
        let one = c.left_algebra().identity_element();
        let l = triple
            .lambda_of_coords(&c.left_algebra().coords(&one))
            .unwrap();
        assert!(l.sub(&ComplexMatrix::identity(3)).unwrap().hs_norm() < 1e-10);
    }

    #[test]
    fn zero_module_represents_on_the_zero_space() {
        let b = crate::algebra::CStarAlgebra::identity_rep(vec![2]);
        let space = crate::linalg::OperatorSubspace::zero(
            crate::linalg::HilbertSpace::new(2),
            crate::linalg::HilbertSpace::new(2),
        );
        let module = crate::module::ConcreteModule::validate(space, b.clone(), tol()).unwrap();
        let scalars = crate::algebra::CStarAlgebra::identity_rep(vec![1]);
        let c = Correspondence::new(module, scalars, vec![ComplexMatrix::zeros(0, 0)]).unwrap();
        let rho = b.identity_rep_matrices();
        let triple = build_representation(&c, &rho).unwrap();
        assert_eq!(triple.h1(), 0);
    }

    #[test]
    fn degenerate_rho_is_rejected() {
        let c = scalar_on_columns(2);
        // ρ(1) = 0 on C^1 is a *-map but not unital.
        let rho = vec![ComplexMatrix::zeros(1, 1)];
        assert!(matches!(
            build_representation(&c, &rho),
            Err(Error::DegenerateRepresentation { .. })
        ));
    }

    #[test]
    fn full_matrix_representation_verifies() {
        let c = full_matrix_correspondence();
        let rho = c.module().algebra().identity_rep_matrices();
        let triple = build_representation(&c, &rho).unwrap();
        // X ⊗_{M_2} C^2 collapses to C^2
        assert_eq!(triple.h1(), 2);
        let report = verify_representation(&c, &triple).unwrap();
        assert!(report.cco1 < 1e-9);
        assert!(report.cco2 < 1e-9);
        assert!(report.cco3 < 1e-9);
        assert!(report.isometry_defect < 1e-9);
        assert!(report.pi_range_full);
    }

    #[test]
    fn faithfulness_matches_injectivity_for_faithful_rho() {
        let c = matrices_on_columns(2);
        let rho = c.module().algebra().identity_rep_matrices();
        let triple = build_representation(&c, &rho).unwrap();
        let report = faithfulness_check(&c, &triple, true).unwrap();
        assert!(report.lambda_faithful);
        assert!(report.phi_injective);
    }

    #[test]
    fn killed_block_kills_lambda() {
        // A = C ⊕ M_2, first block acting as zero on the column module C^2.
        let scalars = crate::algebra::CStarAlgebra::identity_rep(vec![1]);
        let space = crate::linalg::OperatorSubspace::full(
            crate::linalg::HilbertSpace::new(1),
            crate::linalg::HilbertSpace::new(2),
        );
        let module = crate::module::ConcreteModule::validate(space, scalars, tol()).unwrap();
        let a = crate::algebra::CStarAlgebra::identity_rep(vec![1, 2]);
        let mut actions = vec![ComplexMatrix::zeros(2, 2)];
        let m2 = crate::algebra::CStarAlgebra::identity_rep(vec![2]);
        actions.extend(m2.identity_rep_matrices());
        let c = Correspondence::new(module, a, actions).unwrap();
        let rho = c.module().algebra().identity_rep_matrices();
        let triple = build_representation(&c, &rho).unwrap();
        let report = faithfulness_check(&c, &triple, true).unwrap();
        assert!(!report.lambda_faithful);
        assert!(!report.phi_injective);
        assert_eq!(report.lambda_kernel_blocks, vec![0]);
        assert_eq!(report.phi_kernel_blocks, vec![0]);
    }

    #[test]
    fn tensor_representation_of_column_modules_is_isometric() {
        let x = scalar_on_columns(2);
        let y = scalar_on_columns(3);
        let rho = y.module().algebra().identity_rep_matrices();
        let rep = tensor_representation(&x, &y, &rho).unwrap();
        assert_eq!(rep.tensor.dim(), 6);
        assert!(rep.cco1 < 1e-9, "cco1 {}", rep.cco1);
        assert!(rep.cco2 < 1e-9, "cco2 {}", rep.cco2);
        assert!(rep.cco3 < 1e-9, "cco3 {}", rep.cco3);
        assert!(rep.span_distance < 1e-9);
        assert!(rep.isometry_defect < 1e-9);
    }

    #[test]
    fn degenerate_middle_action_is_rejected() {
        // B = C ⊕ C with the second block acting as zero on C^2: the middle
        // action misses part of the module.
        let scalars = crate::algebra::CStarAlgebra::identity_rep(vec![1]);
        let space = crate::linalg::OperatorSubspace::full(
            crate::linalg::HilbertSpace::new(1),
            crate::linalg::HilbertSpace::new(2),
        );
        let module = crate::module::ConcreteModule::validate(space, scalars, tol()).unwrap();
        let b = crate::algebra::CStarAlgebra::identity_rep(vec![1, 1]);
        let e1 = ComplexMatrix::matrix_unit(2, 2, 0, 0);
        let y =
            Correspondence::new(module, b.clone(), vec![e1, ComplexMatrix::zeros(2, 2)]).unwrap();
        assert!(!y.left_action_nondegenerate());

        // X: the diagonal module span{E11, E22} over B, with B itself acting
        // on the left.
        let e11 = ComplexMatrix::matrix_unit(2, 2, 0, 0);
        let e22 = ComplexMatrix::matrix_unit(2, 2, 1, 1);
        let x_space = crate::linalg::OperatorSubspace::span(
            crate::linalg::HilbertSpace::new(2),
            crate::linalg::HilbertSpace::new(2),
            &[e11, e22],
            &tol(),
        )
        .unwrap();
        let x_module = crate::module::ConcreteModule::validate(x_space, b.clone(), tol()).unwrap();
        let mut actions = Vec::new();
        for u in 0..b.dim() {
            let image = b.unit_image(u).clone();
            let mut cols = Vec::new();
            for xe in x_module.space().basis() {
                cols.push(x_module.coords(&image.mul(xe).unwrap()).unwrap());
            }
            actions.push(ComplexMatrix::from_fn(2, 2, |r, c| cols[c][r]));
        }
        let x = Correspondence::new(x_module, b.clone(), actions).unwrap();
        let rho = y.module().algebra().identity_rep_matrices();
        assert!(tensor_representation(&x, &y, &rho).is_err());
    }
}
