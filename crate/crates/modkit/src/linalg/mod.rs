//! Dense complex linear algebra substrate: adjoints, operator norms,
//! SVD-backed rank and membership decisions, Hilbert–Schmidt geometry, and
//! subspace arithmetic. Everything else in the crate builds on this module.

mod matrix;
mod solve;
mod subspace;

pub use matrix::{ComplexMatrix, C64};
pub use solve::{
    lstsq, min_hermitian_eigenvalue, psd_order_check, solve_linear_membership, LinearConstraint,
};
pub use subspace::{HilbertSpace, Membership, OperatorSubspace, Tolerances};

pub(crate) use subspace::rel;
