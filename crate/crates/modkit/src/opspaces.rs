//! Concrete realizations on `H1` of the compact-module maps and adjointable
//! maps of a nondegenerate concrete module `X ⊆ L(H0, H1)`.
//!
//! - `K_A(X)` is realized as `span{x y* : x, y ∈ X} ⊆ L(H1)`, matching
//!   `θ_{x,y} ↦ x y*`.
//! - `L_A(X)` is realized as the idealizer
//!   `B = {b ∈ L(H1) : bX ⊆ X and b*X ⊆ X}`, with `τ(b)(x) = bx` and the
//!   inverse `b_t` solved from `b_t·(xξ) = t(x)ξ` over the spanning set
//!   `X·H0`.
//! - `X^n` is materialized as the row module over `M_n(A)`, acting
//!   `H0^n → H1`, with the diagonal amplification `t ↦ t ⊕ … ⊕ t`.

use crate::algebra::CStarAlgebra;
use crate::linalg::{
    lstsq, rel, solve_linear_membership, ComplexMatrix, HilbertSpace, LinearConstraint,
    OperatorSubspace, Tolerances,
};
use crate::module::{ConcreteModule, ModuleMap};
use crate::{Error, Result};

/// `span{x y*} ⊆ L(H1)`, the concrete copy of the compact-module maps.
#[derive(Clone, Debug)]
pub struct RepresentedCompacts {
    space: OperatorSubspace,
}

/// The idealizer `B ⊆ L(H1)`, the concrete copy of the adjointable maps.
#[derive(Clone, Debug)]
pub struct RepresentedAdjointables {
    idealizer: OperatorSubspace,
}

fn require_nondegenerate(m: &ConcreteModule) -> Result<()> {
    let found = m.range_rank();
    if found != m.h1().dim {
        return Err(Error::DegenerateModule {
            found,
            expected: m.h1().dim,
        });
    }
    Ok(())
}

/// Builds `span{x_i x_j*}` and verifies it is closed under products and
/// adjoints. Requires `X·H0` dense in `H1`.
pub fn compacts(m: &ConcreteModule) -> Result<RepresentedCompacts> {
    require_nondegenerate(m)?;
    let tol = *m.tol();
    let h1 = m.h1();
    let mut products = Vec::with_capacity(m.dim() * m.dim());
    for x in m.space().basis() {
        for y in m.space().basis() {
            products.push(x.mul(&y.adjoint())?);
        }
    }
    let space = OperatorSubspace::span(h1, h1, &products, &tol)?;
    for a in space.basis() {
        let adj = a.adjoint();
        let membership = space.contains(&adj, &tol)?;
        if !membership.contained {
            return Err(Error::Validation(format!(
                "compacts are not adjoint-closed (residual {:.3e})",
                membership.residual
            )));
        }
        for b in space.basis() {
            let prod = a.mul(b)?;
            let membership = space.contains(&prod, &tol)?;
            if !membership.contained {
                return Err(Error::Validation(format!(
                    "compacts are not multiplicatively closed (residual {:.3e})",
                    membership.residual
                )));
            }
        }
    }
    Ok(RepresentedCompacts { space })
}

impl RepresentedCompacts {
    pub fn space(&self) -> &OperatorSubspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `τ`-direction of the isomorphism: a concrete compact operator acts on
    /// the module by left multiplication.
    pub fn to_module_map(&self, m: &ConcreteModule, s: &ComplexMatrix) -> Result<ModuleMap> {
        let tol = m.tol();
        let membership = self.space.contains(s, tol)?;
        if !membership.contained {
            return Err(Error::NotInSubspace {
                residual: membership.residual,
            });
        }
        left_multiplication_map(m, s)
    }

    /// Inverse direction: recovers the concrete operator of a compact module
    /// map and checks it lands in the span.
    pub fn from_module_map(&self, m: &ConcreteModule, t: &ModuleMap) -> Result<ComplexMatrix> {
        let (b, residual) = solve_intertwiner(m, t)?;
        let tol = m.tol();
        if residual > tol.eq {
            return Err(Error::InconsistentSystem {
                context: "compact operator recovery",
                residual,
            });
        }
        let membership = self.space.contains(&b, tol)?;
        if !membership.contained {
            return Err(Error::NotInSubspace {
                residual: membership.residual,
            });
        }
        Ok(b)
    }
}

/// Coordinate module map of `x ↦ b·x`, with adjoint `x ↦ b*·x`.
fn left_multiplication_map(m: &ConcreteModule, b: &ComplexMatrix) -> Result<ModuleMap> {
    let k = m.dim();
    let b_adj = b.adjoint();
    let mut action_cols = Vec::with_capacity(k);
    let mut adjoint_cols = Vec::with_capacity(k);
    for x in m.space().basis() {
        action_cols.push(m.coords(&b.mul(x)?)?);
        adjoint_cols.push(m.coords(&b_adj.mul(x)?)?);
    }
    ModuleMap::new(
        ComplexMatrix::from_fn(k, k, |r, c| action_cols[c][r]),
        ComplexMatrix::from_fn(k, k, |r, c| adjoint_cols[c][r]),
    )
}

/// Computes the idealizer `{u : u·x_i ∈ X, u*·x_i ∈ X}` with the membership
/// constraint solver and verifies that `τ` is a *-homomorphism on its basis.
pub fn adjointables(m: &ConcreteModule) -> Result<RepresentedAdjointables> {
    require_nondegenerate(m)?;
    let tol = *m.tol();
    let h1 = m.h1();
    let mut constraints = Vec::with_capacity(2 * m.dim());
    for x in m.space().basis() {
        constraints.push(LinearConstraint::right_multiplication(
            x.clone(),
            m.space().clone(),
        ));
        constraints.push(LinearConstraint::adjoint_right_multiplication(
            x.clone(),
            m.space().clone(),
        ));
    }
    let idealizer = solve_linear_membership(h1, h1, &constraints, &tol)?;
    let r = RepresentedAdjointables { idealizer };
    // τ must be multiplicative and star-preserving on the computed basis.
    let maps: Vec<ModuleMap> = r
        .idealizer
        .basis()
        .iter()
        .map(|b| left_multiplication_map(m, b))
        .collect::<Result<_>>()?;
    for (i, bi) in r.idealizer.basis().iter().enumerate() {
        let adj_res = maps[i]
            .adjoint_action()
            .sub(&maps[i].action().adjoint())?
            .hs_norm();
        if rel(adj_res, maps[i].action().hs_norm()) > tol.eq {
            return Err(Error::Validation(format!(
                "τ is not star-preserving on the idealizer basis (residual {adj_res:.3e})"
            )));
        }
        for (j, bj) in r.idealizer.basis().iter().enumerate() {
            let product = bi.mul(bj)?;
            let composed = maps[i].compose(&maps[j])?;
            let direct = left_multiplication_map(m, &product)?;
            let res = composed.action().sub(direct.action())?.hs_norm();
            if rel(res, direct.action().hs_norm()) > tol.eq {
                return Err(Error::Validation(format!(
                    "τ is not multiplicative on the idealizer basis (residual {res:.3e})"
                )));
            }
        }
    }
    Ok(r)
}

impl RepresentedAdjointables {
    pub fn idealizer(&self) -> &OperatorSubspace {
        &self.idealizer
    }

    pub fn dim(&self) -> usize {
        self.idealizer.dim()
    }

    /// `τ(b)`: left multiplication by an idealizer element, as a module map.
    pub fn tau(&self, m: &ConcreteModule, b: &ComplexMatrix) -> Result<ModuleMap> {
        let membership = self.idealizer.contains(b, m.tol())?;
        if !membership.contained {
            return Err(Error::NotInSubspace {
                residual: membership.residual,
            });
        }
        left_multiplication_map(m, b)
    }

    /// `τ^{-1}(t) = b_t`, the unique operator with `b_t·(xξ) = t(x)ξ`.
    /// Checks `‖b_t‖ ≤ ‖t‖` and membership in the idealizer.
    pub fn tau_inverse(&self, m: &ConcreteModule, t: &ModuleMap) -> Result<ComplexMatrix> {
        let tol = m.tol();
        let (b, residual) = solve_intertwiner(m, t)?;
        if residual > tol.eq {
            return Err(Error::InconsistentSystem {
                context: "idealizer element recovery",
                residual,
            });
        }
        let norm_t = m.map_norm(t);
        if b.op_norm() > norm_t + tol.eq {
            return Err(Error::Validation(format!(
                "recovered operator norm {:.6e} exceeds the map norm {:.6e}",
                b.op_norm(),
                norm_t
            )));
        }
        let membership = self.idealizer.contains(&b, tol)?;
        if !membership.contained {
            return Err(Error::NotInSubspace {
                residual: membership.residual,
            });
        }
        Ok(b)
    }
}

/// Least-squares solve of `b·(x_i ξ_k) = t(x_i) ξ_k` over the spanning set
/// `X·H0`; the relative residual is zero exactly when `t` intertwines.
pub fn solve_intertwiner(m: &ConcreteModule, t: &ModuleMap) -> Result<(ComplexMatrix, f64)> {
    let h0 = m.h0().dim;
    let h1 = m.h1().dim;
    let k = m.dim();
    let mut t_images = Vec::with_capacity(k);
    for j in 0..k {
        t_images.push(m.from_coords(&t.action().column(j))?);
    }
    // Columns of `v` enumerate x_i ξ_k; `w` holds the images t(x_i) ξ_k.
    let v = ComplexMatrix::from_fn(h1, k * h0, |r, c| m.basis_element(c / h0).at(r, c % h0));
    let w = ComplexMatrix::from_fn(h1, k * h0, |r, c| t_images[c / h0].at(r, c % h0));
    let v_t = ComplexMatrix::from_fn(k * h0, h1, |r, c| v.at(c, r));
    let w_t = ComplexMatrix::from_fn(k * h0, h1, |r, c| w.at(c, r));
    let (b_t, residual) = lstsq(&v_t, &w_t, m.tol().rank)?;
    let b = ComplexMatrix::from_fn(h1, h1, |r, c| b_t.at(c, r));
    Ok((b, rel(residual, w.hs_norm())))
}

/// The row module `X^n ≅ M_{1,n}(X) ⊆ L(H0^n, H1)` over `M_n(A)`, built as a
/// fresh validated module.
pub fn amplify_module(m: &ConcreteModule, n: usize) -> Result<ConcreteModule> {
    let tol = *m.tol();
    let a = m.algebra();
    let h0 = a.rep_space().dim;
    let blocks_n: Vec<usize> = a.blocks().iter().map(|&b| n * b).collect();
    let mut unit_images = Vec::new();
    for (beta, &nb) in a.blocks().iter().enumerate() {
        let size = n * nb;
        for p in 0..size {
            for q in 0..size {
                let (s, i) = (p / nb, p % nb);
                let (t, j) = (q / nb, q % nb);
                let slot = ComplexMatrix::matrix_unit(n, n, s, t);
                unit_images.push(slot.kron(a.unit_image(a.unit_index(beta, i, j))));
            }
        }
    }
    let algebra_n =
        CStarAlgebra::with_embedding(blocks_n, HilbertSpace::new(n * h0), unit_images, &tol)?;
    let mut basis = Vec::with_capacity(n * m.dim());
    for s in 0..n {
        let slot = ComplexMatrix::matrix_unit(1, n, 0, s);
        for x in m.space().basis() {
            basis.push(slot.kron(x));
        }
    }
    let space = OperatorSubspace::from_orthonormal(HilbertSpace::new(n * h0), m.h1(), basis, &tol)?;
    ConcreteModule::validate(space, algebra_n, tol)
}

/// Diagonal amplification `κ(t)(x_1, …, x_n) = (t(x_1), …, t(x_n))` in the
/// coordinates of [`amplify_module`]; `κ(t)* = κ(t*)`.
pub fn amplify_map(t: &ModuleMap, n: usize) -> ModuleMap {
    let eye = ComplexMatrix::identity(n);
    ModuleMap::new(eye.kron(t.action()), eye.kron(t.adjoint_action()))
        .expect("kron preserves squareness")
}

/// Recovers the corner map `s_{1,1}` of an amplified map: restriction to the
/// first slot. Inverts [`amplify_map`] on its image.
pub fn corner_map(amplified: &ModuleMap, n: usize) -> Result<ModuleMap> {
    let total = amplified.dim();
    if n == 0 || !total.is_multiple_of(n) {
        return Err(Error::Validation(format!(
            "amplified dimension {total} is not a multiple of {n}"
        )));
    }
    let k = total / n;
    let action = ComplexMatrix::from_fn(k, k, |i, j| amplified.action().at(i, j));
    let adjoint = ComplexMatrix::from_fn(k, k, |i, j| amplified.adjoint_action().at(i, j));
    ModuleMap::new(action, adjoint)
}

/// Dimensions exhibiting the gap between `L_{M_n(C)}(C^n)` (the row module,
/// idealizer in `L(C)`) and `L_C(C^n)` (the column module, idealizer in
/// `L(C^n)`): `1` versus `n²`.
#[derive(Clone, Copy, Debug)]
pub struct AdjointableGapReport {
    pub n: usize,
    pub row_module_dim: usize,
    pub row_adjointables_dim: usize,
    pub column_adjointables_dim: usize,
}

pub fn adjointable_dimension_gap(n: usize, tol: &Tolerances) -> Result<AdjointableGapReport> {
    if !(2..=6).contains(&n) {
        return Err(Error::Validation(format!(
            "gap report is restricted to 2 ≤ n ≤ 6, got {n}"
        )));
    }
    let row_algebra = CStarAlgebra::identity_rep(vec![n]);
    let row_space = OperatorSubspace::full(HilbertSpace::new(n), HilbertSpace::new(1));
    let row_module = ConcreteModule::validate(row_space, row_algebra, *tol)?;
    let row_adj = adjointables(&row_module)?;

    let scalars = CStarAlgebra::identity_rep(vec![1]);
    let col_space = OperatorSubspace::full(HilbertSpace::new(1), HilbertSpace::new(n));
    let col_module = ConcreteModule::validate(col_space, scalars, *tol)?;
    let col_adj = adjointables(&col_module)?;

    Ok(AdjointableGapReport {
        n,
        row_module_dim: row_module.dim(),
        row_adjointables_dim: row_adj.dim(),
        column_adjointables_dim: col_adj.dim(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::C64;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn h(n: usize) -> HilbertSpace {
        HilbertSpace::new(n)
    }

    fn column_module(d: usize) -> ConcreteModule {
        let scalars = CStarAlgebra::identity_rep(vec![1]);
        ConcreteModule::validate(OperatorSubspace::full(h(1), h(d)), scalars, tol()).unwrap()
    }

    fn full_matrix_module() -> ConcreteModule {
        let a = CStarAlgebra::identity_rep(vec![2]);
        ConcreteModule::validate(OperatorSubspace::full(h(2), h(2)), a, tol()).unwrap()
    }

    #[test]
    fn column_compacts_saturate_all_matrices() {
        // Brute-force oracle: span{ξη*} over the standard basis is all of M_d.
        for d in [2usize, 3] {
            let m = column_module(d);
            let k = compacts(&m).unwrap();
            assert_eq!(k.dim(), d * d);
            let mut outer_products = Vec::new();
            for i in 0..d {
                for j in 0..d {
                    let xi = ComplexMatrix::basis_column(d, i);
                    let eta = ComplexMatrix::basis_column(d, j);
                    outer_products.push(xi.mul(&eta.adjoint()).unwrap());
                }
            }
            let oracle = OperatorSubspace::span(h(d), h(d), &outer_products, &tol()).unwrap();
            assert!(k.space().projector_distance(&oracle).unwrap() < 1e-10);
        }
    }

    #[test]
    fn full_matrix_compacts_are_everything() {
        let m = full_matrix_module();
        let k = compacts(&m).unwrap();
        assert_eq!(k.dim(), 4);
    }

    #[test]
    fn zero_module_is_rejected_by_compacts() {
        let a = CStarAlgebra::identity_rep(vec![2]);
        let space = OperatorSubspace::zero(h(2), h(2));
        let m = ConcreteModule::validate(space, a, tol()).unwrap();
        assert!(matches!(compacts(&m), Err(Error::DegenerateModule { .. })));
    }

    #[test]
    fn column_adjointables_are_all_matrices() {
        // Constraint solver against hand enumeration: every operator on C^d
        // maps columns to columns.
        let d = 3;
        let m = column_module(d);
        let l = adjointables(&m).unwrap();
        assert_eq!(l.dim(), d * d);
    }

    #[test]
    fn full_matrix_adjointables_are_left_multiplications() {
        let m = full_matrix_module();
        let l = adjointables(&m).unwrap();
        assert_eq!(l.dim(), 4);
    }

    #[test]
    fn compacts_sit_inside_adjointables() {
        for m in [column_module(2), full_matrix_module()] {
            let k = compacts(&m).unwrap();
            let l = adjointables(&m).unwrap();
            for b in k.space().basis() {
                assert!(l.idealizer().contains(b, &tol()).unwrap().contained);
            }
        }
    }

    #[test]
    fn tau_inverse_of_identity_is_identity() {
        let m = full_matrix_module();
        let l = adjointables(&m).unwrap();
        let id = ModuleMap::identity(m.dim());
        let b = l.tau_inverse(&m, &id).unwrap();
        assert!(
            b.sub(&ComplexMatrix::identity(m.h1().dim))
                .unwrap()
                .hs_norm()
                < 1e-10
        );
    }

    #[test]
    fn tau_inverse_of_rank_one_is_outer_product() {
        let m = column_module(3);
        let l = adjointables(&m).unwrap();
        let x = ComplexMatrix::column_vector(vec![
            C64::new(1.0, 0.0),
            C64::new(0.0, 1.0),
            C64::new(0.5, -0.5),
        ]);
        let y = ComplexMatrix::column_vector(vec![
            C64::new(0.0, 1.0),
            C64::new(2.0, 0.0),
            C64::new(1.0, 1.0),
        ]);
        let theta = m.rank_one(&x, &y).unwrap();
        let b = l.tau_inverse(&m, &theta).unwrap();
        let expected = x.mul(&y.adjoint()).unwrap();
        assert!(b.sub(&expected).unwrap().hs_norm() < 1e-8);
    }

    #[test]
    fn tau_round_trips() {
        let m = full_matrix_module();
        let l = adjointables(&m).unwrap();
        for b in l.idealizer().basis() {
            let t = l.tau(&m, b).unwrap();
            let back = l.tau_inverse(&m, &t).unwrap();
            assert!(back.sub(b).unwrap().hs_norm() < 1e-8);
        }
    }

    #[test]
    fn amplified_module_validates_and_keeps_the_idealizer() {
        let m = column_module(2);
        let amplified = amplify_module(&m, 2).unwrap();
        assert_eq!(amplified.dim(), 4);
        assert_eq!(amplified.algebra().blocks(), &[2]);
        assert!(amplified.is_nondegenerate());
        // L_{M_n(A)}(X^n) realizes as the same idealizer in L(H1).
        let l1 = adjointables(&m).unwrap();
        let ln = adjointables(&amplified).unwrap();
        assert_eq!(l1.dim(), ln.dim());
        assert!(l1.idealizer().projector_distance(ln.idealizer()).unwrap() < 1e-8);
    }

    #[test]
    fn amplification_of_one_copy_is_identity() {
        let m = full_matrix_module();
        let x = ComplexMatrix::from_fn(2, 2, |i, j| C64::new(i as f64, j as f64 + 0.5));
        let y = ComplexMatrix::from_fn(2, 2, |i, j| C64::new(1.0 - j as f64, i as f64));
        let t = m.rank_one(&x, &y).unwrap();
        let amplified = amplify_map(&t, 1);
        assert_eq!(amplified, t);
    }

    #[test]
    fn amplified_adjoint_is_adjoint_amplified() {
        let m = full_matrix_module();
        let x = ComplexMatrix::from_fn(2, 2, |i, j| C64::new(i as f64 - 1.0, j as f64));
        let y = ComplexMatrix::from_fn(2, 2, |i, j| C64::new(0.5, (i * j) as f64));
        let t = m.rank_one(&x, &y).unwrap();
        let lhs = amplify_map(&t, 3).adjoint();
        let rhs = amplify_map(&t.adjoint(), 3);
        assert!(lhs.action().sub(rhs.action()).unwrap().hs_norm() < 1e-12);
    }

    #[test]
    fn corner_recovers_the_unamplified_map() {
        let m = column_module(2);
        let x = ComplexMatrix::column_vector(vec![C64::new(1.0, 1.0), C64::new(0.0, -1.0)]);
        let y = ComplexMatrix::column_vector(vec![C64::new(2.0, 0.0), C64::new(1.0, 0.0)]);
        let t = m.rank_one(&x, &y).unwrap();
        let recovered = corner_map(&amplify_map(&t, 3), 3).unwrap();
        assert!(recovered.action().sub(t.action()).unwrap().hs_norm() < 1e-12);
    }

    #[test]
    fn dimension_gap_for_small_n() {
        for n in [2usize, 3] {
            let report = adjointable_dimension_gap(n, &tol()).unwrap();
            assert_eq!(report.row_adjointables_dim, 1);
            assert_eq!(report.column_adjointables_dim, n * n);
        }
    }

    #[test]
    fn gap_report_rejects_large_n() {
        assert!(adjointable_dimension_gap(7, &tol()).is_err());
    }
}
