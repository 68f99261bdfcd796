//! Linear solvers over operator spaces: membership-constrained subspaces,
//! minimum-norm least squares, and the positive-semidefinite order check.
//!
//! A constraint of the form `left·u·right ∈ target` (or the same with `u*`)
//! is equivalent to finitely many Hilbert–Schmidt orthogonality conditions
//! `⟨c_k, u⟩ = 0`, one per basis element of the target's orthogonal
//! complement. The solution set is therefore the kernel of a single stacked
//! matrix, recovered from its SVD with the `tol.rank` cutoff.

use nalgebra::DMatrix;

use super::matrix::{ComplexMatrix, C64};
use super::subspace::{HilbertSpace, OperatorSubspace, Tolerances};
use crate::{Error, Result};

/// One membership constraint on an unknown operator `u`.
#[derive(Clone, Debug)]
pub enum LinearConstraint {
    /// `left · u · right ∈ target`
    Sandwich {
        left: ComplexMatrix,
        right: ComplexMatrix,
        target: OperatorSubspace,
    },
    /// `left · u* · right ∈ target` (conjugate linear in `u`; linearized
    /// internally through the trace pairing)
    AdjointSandwich {
        left: ComplexMatrix,
        right: ComplexMatrix,
        target: OperatorSubspace,
    },
}

impl LinearConstraint {
    /// `u · right ∈ target`
    pub fn right_multiplication(right: ComplexMatrix, target: OperatorSubspace) -> Self {
        let rows = target.codomain().dim;
        LinearConstraint::Sandwich {
            left: ComplexMatrix::identity(rows),
            right,
            target,
        }
    }

    /// `u* · right ∈ target`
    pub fn adjoint_right_multiplication(right: ComplexMatrix, target: OperatorSubspace) -> Self {
        let rows = target.codomain().dim;
        LinearConstraint::AdjointSandwich {
            left: ComplexMatrix::identity(rows),
            right,
            target,
        }
    }
}

/// Computes the subspace of all `u ∈ L(u_domain, u_codomain)` satisfying
/// every constraint, as the SVD kernel of the stacked
/// project-to-complement system.
pub fn solve_linear_membership(
    u_domain: HilbertSpace,
    u_codomain: HilbertSpace,
    constraints: &[LinearConstraint],
    tol: &Tolerances,
) -> Result<OperatorSubspace> {
    let n = u_domain.dim * u_codomain.dim;
    if n == 0 {
        return Ok(OperatorSubspace::zero(u_domain, u_codomain));
    }

    let mut rows: Vec<ComplexMatrix> = Vec::new();
    for constraint in constraints {
        match constraint {
            LinearConstraint::Sandwich {
                left,
                right,
                target,
            } => {
                check_sandwich_shapes(left, right, target, u_codomain, u_domain, false)?;
                let left_adj = left.adjoint();
                let right_adj = right.adjoint();
                for c in target.orthogonal_complement(tol).basis() {
                    // ⟨c, l·u·r⟩ = ⟨l*·c·r*, u⟩
                    rows.push(left_adj.mul(c)?.mul(&right_adj)?);
                }
            }
            LinearConstraint::AdjointSandwich {
                left,
                right,
                target,
            } => {
                check_sandwich_shapes(left, right, target, u_codomain, u_domain, true)?;
                for c in target.orthogonal_complement(tol).basis() {
                    // ⟨c, l·u*·r⟩ = conj(⟨r·c*·l, u⟩)
                    rows.push(right.mul(&c.adjoint())?.mul(left)?);
                }
            }
        }
    }

    if rows.is_empty() {
        return Ok(OperatorSubspace::full(u_domain, u_codomain));
    }

    // Stack conj(vec(row_i)) so that `stack · vec(u) = 0` encodes every
    // orthogonality condition; pad to square so the full V factor is present.
    let height = rows.len().max(n);
    let stack = DMatrix::from_fn(height, n, |i, j| {
        if i < rows.len() {
            rows[i].entries()[j].conj()
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let svd = stack.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let top = svd.singular_values.iter().copied().fold(0.0, f64::max);
    // Constraint matrices are built from unit complement directions and
    // O(1) module data; flooring the reference at 1 keeps an all-roundoff
    // system from masquerading as a genuine constraint.
    let reference = top.max(1.0);
    let mut kernel_rows: Vec<usize> = (0..v_t.nrows())
        .filter(|&i| {
            let sv = svd.singular_values.get(i).copied().unwrap_or(0.0);
            sv <= tol.rank * reference
        })
        .collect();
    kernel_rows.sort_unstable();
    let basis: Vec<ComplexMatrix> = kernel_rows
        .into_iter()
        .map(|r| {
            ComplexMatrix::new(
                u_codomain.dim,
                u_domain.dim,
                (0..n).map(|j| v_t[(r, j)].conj()).collect(),
            )
            .expect("row length matches")
        })
        .collect();
    OperatorSubspace::from_orthonormal(u_domain, u_codomain, basis, tol)
}

fn check_sandwich_shapes(
    left: &ComplexMatrix,
    right: &ComplexMatrix,
    target: &OperatorSubspace,
    u_codomain: HilbertSpace,
    u_domain: HilbertSpace,
    adjoint: bool,
) -> Result<()> {
    let (inner_left, inner_right) = if adjoint {
        (u_domain.dim, u_codomain.dim)
    } else {
        (u_codomain.dim, u_domain.dim)
    };
    if left.cols() != inner_left {
        return Err(Error::ShapeMismatch {
            context: "constraint left factor",
            expected_rows: left.rows(),
            expected_cols: inner_left,
            rows: left.rows(),
            cols: left.cols(),
        });
    }
    if right.rows() != inner_right {
        return Err(Error::ShapeMismatch {
            context: "constraint right factor",
            expected_rows: inner_right,
            expected_cols: right.cols(),
            rows: right.rows(),
            cols: right.cols(),
        });
    }
    if target.codomain().dim != left.rows() || target.domain().dim != right.cols() {
        return Err(Error::ShapeMismatch {
            context: "constraint target",
            expected_rows: left.rows(),
            expected_cols: right.cols(),
            rows: target.codomain().dim,
            cols: target.domain().dim,
        });
    }
    Ok(())
}

/// Minimum-norm least-squares solution of `a · x = b` for each column of `b`,
/// with singular values below `rel_cutoff` relative to the largest treated as
/// zero. Returns the solution and the residual `‖a·x − b‖_HS`.
pub fn lstsq(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    rel_cutoff: f64,
) -> Result<(ComplexMatrix, f64)> {
    if a.rows() != b.rows() {
        return Err(Error::ShapeMismatch {
            context: "least squares right-hand side",
            expected_rows: a.rows(),
            expected_cols: b.cols(),
            rows: b.rows(),
            cols: b.cols(),
        });
    }
    if a.cols() == 0 || b.cols() == 0 {
        let x = ComplexMatrix::zeros(a.cols(), b.cols());
        let residual = b.hs_norm();
        return Ok((x, if a.cols() == 0 { residual } else { 0.0 }));
    }
    if a.rows() == 0 {
        return Ok((ComplexMatrix::zeros(a.cols(), b.cols()), 0.0));
    }
    let svd = a.to_na().svd(true, true);
    let eps = svd.singular_values.iter().copied().fold(0.0, f64::max) * rel_cutoff;
    let x_na = svd
        .solve(&b.to_na(), eps)
        .map_err(|e| Error::Validation(format!("SVD solve failed: {e}")))?;
    let x = ComplexMatrix::from_na(&x_na);
    let residual = a.mul(&x)?.sub(b)?.hs_norm();
    Ok((x, residual))
}

/// Smallest eigenvalue of the Hermitian part of `m`.
pub fn min_hermitian_eigenvalue(m: &ComplexMatrix) -> Result<f64> {
    Ok(m.hermitian_eigenvalues()?.first().copied().unwrap_or(0.0))
}

/// Decides `a ≤ b` in the positive-semidefinite order: both inputs must be
/// self-adjoint within `tol.eq`, and the verdict is
/// `min eig(b − a) ≥ −tol.psd`.
pub fn psd_order_check(a: &ComplexMatrix, b: &ComplexMatrix, tol: &Tolerances) -> Result<bool> {
    for m in [a, b] {
        let residual = m.self_adjoint_residual()?;
        let relative = residual / m.hs_norm().max(1.0);
        if relative > tol.eq {
            return Err(Error::NotSelfAdjoint { residual: relative });
        }
    }
    let diff = b.sub(a)?;
    Ok(min_hermitian_eigenvalue(&diff)? >= -tol.psd)
}
