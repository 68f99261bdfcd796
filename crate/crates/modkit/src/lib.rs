//! Numerical toolkit for concrete Hilbert C*-modules and C*-correspondences.
//!
//! The objects handled here are all finite-dimensional and concrete:
//!
//! - closed operator subspaces `X ⊆ L(H0, H1)` that are right Hilbert modules
//!   over a block-diagonal C*-algebra `A ⊆ L(H0)`, with inner product
//!   `⟨x, y⟩_A = x*y`;
//! - the compact-module maps `K_A(X)` and adjointable maps `L_A(X)` of such a
//!   module, realized as concrete operator algebras on `H1`;
//! - C*-correspondences `(X, φ)` together with their representations on pairs
//!   of Hilbert spaces, built Fock-style through the interior tensor product
//!   `X ⊗_ρ H0`;
//! - the criteria deciding when a correspondence carries a (unique) Hilbert
//!   bimodule structure.
//!
//! Every decision that is exact in the algebra (`rank`, `span`, `⊆`, `= 0`)
//! becomes a singular-value or eigenvalue cutoff here, governed by a single
//! [`Tolerances`] record.

pub mod algebra;
pub mod correspondence;
pub mod instance;
pub mod linalg;
pub mod module;
pub mod opspaces;
pub mod sampling;

pub use linalg::{ComplexMatrix, HilbertSpace, OperatorSubspace, Tolerances, C64};

use thiserror::Error;

/// Errors shared by all layers of the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("entry count {got} does not match declared shape {rows}x{cols}")]
    EntryCount {
        rows: usize,
        cols: usize,
        got: usize,
    },

    #[error(
        "shape mismatch in {context}: expected {expected_rows}x{expected_cols}, got {rows}x{cols}"
    )]
    ShapeMismatch {
        context: &'static str,
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not self-adjoint (relative residual {residual:.3e})")]
    NotSelfAdjoint { residual: f64 },

    #[error("basis is not orthonormal (Gram residual {residual:.3e})")]
    NotOrthonormal { residual: f64 },

    #[error("operator does not lie in the subspace (residual {residual:.3e})")]
    NotInSubspace { residual: f64 },

    #[error("{axiom} closure fails for pair ({i}, {j}): residual {residual:.3e}")]
    ClosureViolation {
        axiom: &'static str,
        i: usize,
        j: usize,
        residual: f64,
    },

    #[error("module is degenerate: X·H0 spans {found} of {expected} dimensions")]
    DegenerateModule { found: usize, expected: usize },

    #[error("representation is degenerate or not unital (residual {residual:.3e})")]
    DegenerateRepresentation { residual: f64 },

    #[error("not a *-homomorphism: {context} (residual {residual:.3e})")]
    NotStarHomomorphism { context: String, residual: f64 },

    #[error("map is not adjointable (best residual {residual:.3e})")]
    NotAdjointable { residual: f64 },

    #[error("block {block} is neither annihilated nor mapped injectively (rank {rank} of {full})")]
    AmbiguousBlockKernel {
        block: usize,
        rank: usize,
        full: usize,
    },

    #[error("ideal enumeration refused: {blocks} blocks exceeds the limit of {max}")]
    TooManyBlocks { blocks: usize, max: usize },

    #[error("ideal does not belong to this algebra")]
    ForeignIdeal,

    #[error("linear system for {context} is inconsistent (residual {residual:.3e})")]
    InconsistentSystem {
        context: &'static str,
        residual: f64,
    },

    #[error("middle algebras do not match: {0}")]
    MiddleAlgebraMismatch(String),

    #[error("Gram matrix is not positive semidefinite (eigenvalue {eigenvalue:.3e})")]
    IndefiniteGram { eigenvalue: f64 },

    #[error("{0}")]
    Validation(String),

    #[error("instance file: {0}")]
    Instance(String),
}

pub type Result<T> = std::result::Result<T, Error>;
