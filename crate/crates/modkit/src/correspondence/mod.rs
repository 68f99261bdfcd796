//! C*-correspondences `(X, φ)`: a concrete right Hilbert `B`-module together
//! with a left action `φ: A → L_B(X)` by adjointable module maps, plus the
//! constructions built on them — interior tensor products, representations
//! on pairs of Hilbert spaces, and the bimodule-existence criteria.

mod bimodule;
mod representation;
mod tensor;

pub use bimodule::{
    bimodule_criterion, ideal_criterion, BimoduleDecision, IdealDecision, LeftInnerProduct,
};
pub use representation::{
    build_bimodule_representation, build_representation, faithfulness_check, tensor_representation,
    verify_representation, BimoduleRepresentation, FaithfulnessReport, RepresentationReport,
    RepresentationTriple, TensorRepresentation,
};
pub use tensor::{interior_tensor, TensorModule};

use crate::algebra::{AlgebraElement, CStarAlgebra, Ideal, StarHomomorphism};
use crate::linalg::{rel, ComplexMatrix, OperatorSubspace, Tolerances};
use crate::module::{AdjointabilityOutcome, ConcreteModule, ModuleMap};
use crate::{Error, Result};

/// An `(A, B)` C*-correspondence: the module lives over `B`, and `phi` sends
/// each matrix unit of `A` to an adjointable module map.
#[derive(Clone, Debug)]
pub struct Correspondence {
    module: ConcreteModule,
    left_algebra: CStarAlgebra,
    phi: Vec<ModuleMap>,
}

impl Correspondence {
    /// Validates that the generator images are adjointable and satisfy the
    /// *-homomorphism relations before wrapping.
    pub fn new(
        module: ConcreteModule,
        left_algebra: CStarAlgebra,
        phi_actions: Vec<ComplexMatrix>,
    ) -> Result<Self> {
        let tol = *module.tol();
        if phi_actions.len() != left_algebra.dim() {
            return Err(Error::Validation(format!(
                "expected {} left-action generators, got {}",
                left_algebra.dim(),
                phi_actions.len()
            )));
        }
        let mut phi = Vec::with_capacity(phi_actions.len());
        for action in &phi_actions {
            match module.adjointability(action)? {
                AdjointabilityOutcome::Adjointable(map) => phi.push(map),
                AdjointabilityOutcome::NotAdjointable { residual } => {
                    return Err(Error::NotAdjointable { residual });
                }
            }
        }
        // Generator relations of φ in the coordinate picture, where module
        // maps multiply as matrices and the involution is the module adjoint.
        let scale = phi.iter().map(|t| t.action().op_norm()).fold(0.0, f64::max);
        for u in 0..left_algebra.dim() {
            let (bu, iu, ju) = left_algebra.unit_position(u);
            let star_partner = left_algebra.unit_index(bu, ju, iu);
            let res = phi[star_partner]
                .action()
                .sub(phi[u].adjoint_action())?
                .hs_norm();
            if rel(res, scale) > tol.eq {
                return Err(Error::NotStarHomomorphism {
                    context: "left action star relation".into(),
                    residual: rel(res, scale),
                });
            }
            for v in 0..left_algebra.dim() {
                let (bv, iv, jv) = left_algebra.unit_position(v);
                let product = phi[u].action().mul(phi[v].action())?;
                let expected = if bu == bv && ju == iv {
                    phi[left_algebra.unit_index(bu, iu, jv)].action().clone()
                } else {
                    ComplexMatrix::zeros(module.dim(), module.dim())
                };
                let res = product.sub(&expected)?.hs_norm();
                if rel(res, scale * scale) > tol.eq {
                    return Err(Error::NotStarHomomorphism {
                        context: "left action multiplicativity".into(),
                        residual: rel(res, scale * scale),
                    });
                }
            }
        }
        Ok(Self {
            module,
            left_algebra,
            phi,
        })
    }

    /// The `(B, C)` correspondence carried by a representation of `B` on a
    /// Hilbert space: the space itself as a column module over the scalars,
    /// with `B` acting through the representation.
    pub fn from_representation(
        algebra: &CStarAlgebra,
        rho: &[ComplexMatrix],
        tol: &Tolerances,
    ) -> Result<Self> {
        algebra.is_representation(rho, tol)?;
        let h = rho.first().map(|m| m.rows()).unwrap_or(0);
        let scalars = CStarAlgebra::identity_rep(vec![1]);
        let space = OperatorSubspace::full(
            crate::linalg::HilbertSpace::new(1),
            crate::linalg::HilbertSpace::new(h),
        );
        let module = ConcreteModule::validate(space, scalars, *tol)?;
        // Column coordinates are the vectors themselves, so each generator
        // acts by its own representing matrix.
        Self::new(module, algebra.clone(), rho.to_vec())
    }

    pub fn module(&self) -> &ConcreteModule {
        &self.module
    }

    pub fn left_algebra(&self) -> &CStarAlgebra {
        &self.left_algebra
    }

    pub fn tol(&self) -> &Tolerances {
        self.module.tol()
    }

    pub fn phi_maps(&self) -> &[ModuleMap] {
        &self.phi
    }

    /// Left action of an abstract element.
    pub fn phi(&self, a: &AlgebraElement) -> Result<ModuleMap> {
        let coords = self.left_algebra.coords(a);
        ModuleMap::linear_combination(&self.phi, &coords)
    }

    /// Applies `φ(a)` to a module element.
    pub fn apply_left(&self, a: &AlgebraElement, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        let map = self.phi(a)?;
        self.module.apply_map(&map, x)
    }

    /// `φ` as a homomorphism into coordinate matrices.
    pub fn phi_hom(&self) -> StarHomomorphism {
        StarHomomorphism::new_unchecked(
            self.left_algebra.clone(),
            self.phi.iter().map(|t| t.action().clone()).collect(),
        )
    }

    /// Kernel of the left action, as a block subset of `A`.
    pub fn phi_kernel(&self) -> Result<Ideal> {
        self.phi_hom().kernel(self.tol())
    }

    /// Span of the left-action generators inside coordinate space.
    pub fn phi_image_span(&self) -> Result<OperatorSubspace> {
        let k = self.module.dim();
        let actions: Vec<ComplexMatrix> = self.phi.iter().map(|t| t.action().clone()).collect();
        OperatorSubspace::span(
            crate::linalg::HilbertSpace::new(k),
            crate::linalg::HilbertSpace::new(k),
            &actions,
            self.tol(),
        )
    }

    /// True when `φ(A)X` has full module rank.
    pub fn left_action_nondegenerate(&self) -> bool {
        let k = self.module.dim();
        if k == 0 {
            return true;
        }
        let cols = self.phi.len() * k;
        let stacked = ComplexMatrix::from_fn(k, cols, |r, c| {
            let (u, j) = (c / k, c % k);
            self.phi[u].action().at(r, j)
        });
        stacked.rank(self.tol().rank) == k
    }
}

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;
    use crate::linalg::HilbertSpace;

    /// Scalars acting on the column module C^d: (H, φ) with φ(1) = id.
    pub(crate) fn scalar_on_columns(d: usize) -> Correspondence {
        let tol = Tolerances::default();
        let scalars = CStarAlgebra::identity_rep(vec![1]);
        let space = OperatorSubspace::full(HilbertSpace::new(1), HilbertSpace::new(d));
        let module = ConcreteModule::validate(space, scalars.clone(), tol).unwrap();
        Correspondence::new(module, scalars, vec![ComplexMatrix::identity(d)]).unwrap()
    }

    /// M_d acting by multiplication on the column module C^d over the
    /// scalars.
    pub(crate) fn matrices_on_columns(d: usize) -> Correspondence {
        let tol = Tolerances::default();
        let scalars = CStarAlgebra::identity_rep(vec![1]);
        let space = OperatorSubspace::full(HilbertSpace::new(1), HilbertSpace::new(d));
        let module = ConcreteModule::validate(space, scalars, tol).unwrap();
        let a = CStarAlgebra::identity_rep(vec![d]);
        let actions = a.identity_rep_matrices();
        Correspondence::new(module, a, actions).unwrap()
    }

    /// X = M_2 over B = M_2 with A = M_2 acting by left multiplication.
    pub(crate) fn full_matrix_correspondence() -> Correspondence {
        let tol = Tolerances::default();
        let b = CStarAlgebra::identity_rep(vec![2]);
        let space = OperatorSubspace::full(HilbertSpace::new(2), HilbertSpace::new(2));
        let module = ConcreteModule::validate(space, b.clone(), tol).unwrap();
        // Left multiplication by e_{ij} in the matrix-unit coordinates of X.
        let mut actions = Vec::new();
        for u in 0..b.dim() {
            let image = b.unit_image(u).clone();
            let mut cols = Vec::new();
            for x in module.space().basis() {
                cols.push(module.coords(&image.mul(x).unwrap()).unwrap());
            }
            actions.push(ComplexMatrix::from_fn(4, 4, |r, c| cols[c][r]));
        }
        Correspondence::new(module, b, actions).unwrap()
    }
}
