//! Interior tensor product `X ⊗_B Y` of an `(A, B)` correspondence with a
//! `(B, C)` correspondence.
//!
//! The balanced tensor product is realized as a quotient of the free span of
//! elementary tensors `x_i ⊗ y_j` of basis pairs. The `C`-valued inner
//! product
//!
//! ```text
//! ⟨x1 ⊗ y1, x2 ⊗ y2⟩_C = ⟨y1, φ_Y(⟨x1, x2⟩_B) y2⟩_C
//! ```
//!
//! is turned into a scalar Gram matrix through the trace of the concrete
//! representation of `C` (a faithful positive functional, so the null space
//! of the trace pairing is exactly the null space of the module seminorm).
//! Eigenvectors above the relative cutoff, scaled by inverse square-root
//! eigenvalues, form the orthonormal quotient basis; balanced relations like
//! `xb ⊗ y = x ⊗ φ_Y(b)y` collapse because their difference is a null
//! vector.

use crate::algebra::{AlgebraElement, CStarAlgebra};
use crate::linalg::{ComplexMatrix, C64};
use crate::{Error, Result};

use super::Correspondence;

/// Quotient data of the interior tensor product.
#[derive(Clone, Debug)]
pub struct TensorModule {
    left_dim: usize,
    right_dim: usize,
    dim: usize,
    /// `dim × N` map from pre-space coefficients to quotient coordinates.
    embed: ComplexMatrix,
    /// `N × dim` coefficient vectors of the quotient basis elements.
    cobasis: ComplexMatrix,
    /// `N × N` scalar Gram matrix of the elementary tensors.
    gram: ComplexMatrix,
    /// `C`-valued inner products of elementary tensors, row-major `N × N`
    /// grid of concrete matrices on the representation space of `C`.
    ip_pre: Vec<ComplexMatrix>,
    /// Left action of each generator of `A` on quotient coordinates.
    left_action: Vec<ComplexMatrix>,
    /// Right action of each generator of `C` on quotient coordinates.
    right_action: Vec<ComplexMatrix>,
    left_algebra: CStarAlgebra,
    right_algebra: CStarAlgebra,
}

/// Builds `X ⊗_{φ_Y} Y`. The right algebra of `xc` must be the left algebra
/// of `yc` in the same presentation.
pub fn interior_tensor(xc: &Correspondence, yc: &Correspondence) -> Result<TensorModule> {
    let tol = *xc.tol();
    let middle = xc.module().algebra();
    if !middle.same_presentation(yc.left_algebra(), &tol) {
        return Err(Error::MiddleAlgebraMismatch(format!(
            "right algebra has blocks {:?} on a {}-dimensional space, left action expects blocks {:?} on a {}-dimensional space",
            middle.blocks(),
            middle.rep_space().dim,
            yc.left_algebra().blocks(),
            yc.left_algebra().rep_space().dim,
        )));
    }
    let kx = xc.module().dim();
    let ky = yc.module().dim();
    let n = kx * ky;
    let hc = yc.module().algebra().rep_space().dim;

    // φ_Y(⟨x_i, x_k⟩_B) applied to every y_l, indexed by (i, k).
    let mut moved: Vec<Vec<ComplexMatrix>> = Vec::with_capacity(kx * kx);
    for i in 0..kx {
        for k in 0..kx {
            let ip = xc
                .module()
                .inner_product(xc.module().basis_element(i), xc.module().basis_element(k))?;
            let map = yc.phi(&ip.element)?;
            let mut images = Vec::with_capacity(ky);
            for l in 0..ky {
                images.push(yc.module().from_coords(&map.action().column(l))?);
            }
            moved.push(images);
        }
    }

    let mut ip_pre = vec![ComplexMatrix::zeros(hc, hc); n * n];
    let mut gram_entries = vec![C64::new(0.0, 0.0); n * n];
    for i in 0..kx {
        for j in 0..ky {
            let p = i * ky + j;
            let yj_adj = yc.module().basis_element(j).adjoint();
            for k in 0..kx {
                for (l, image) in moved[i * kx + k].iter().enumerate() {
                    let q = k * ky + l;
                    let value = yj_adj.mul(image)?;
                    gram_entries[p * n + q] = value.trace()?;
                    ip_pre[p * n + q] = value;
                }
            }
        }
    }
    // Hermitize to absorb floating-point asymmetry.
    let gram = ComplexMatrix::from_fn(n, n, |p, q| {
        (gram_entries[p * n + q] + gram_entries[q * n + p].conj()) * C64::new(0.5, 0.0)
    });

    let (embed, cobasis, dim) = quotient_basis(&gram, &tol)?;

    let mut left_action = Vec::with_capacity(xc.left_algebra().dim());
    for map in xc.phi_maps() {
        let pre = map.action().kron(&ComplexMatrix::identity(ky));
        left_action.push(embed.mul(&pre)?.mul(&cobasis)?);
    }
    let right_algebra = yc.module().algebra().clone();
    let mut right_action = Vec::with_capacity(right_algebra.dim());
    for u in 0..right_algebra.dim() {
        let (beta, i, j) = right_algebra.unit_position(u);
        let unit = right_algebra.matrix_unit(beta, i, j);
        let translate = yc.module().right_translation(&unit)?;
        let pre = ComplexMatrix::identity(kx).kron(&translate);
        right_action.push(embed.mul(&pre)?.mul(&cobasis)?);
    }

    Ok(TensorModule {
        left_dim: kx,
        right_dim: ky,
        dim,
        embed,
        cobasis,
        gram,
        ip_pre,
        left_action,
        right_action,
        left_algebra: xc.left_algebra().clone(),
        right_algebra,
    })
}

/// Eigendecomposition of the Gram matrix into the quotient embedding. Returns
/// `(embed, cobasis, dim)`.
fn quotient_basis(
    gram: &ComplexMatrix,
    tol: &crate::linalg::Tolerances,
) -> Result<(ComplexMatrix, ComplexMatrix, usize)> {
    let n = gram.rows();
    if n == 0 {
        return Ok((ComplexMatrix::zeros(0, 0), ComplexMatrix::zeros(0, 0), 0));
    }
    let eig = nalgebra::SymmetricEigen::new(gram.to_na());
    let max_eig = eig.eigenvalues.iter().copied().fold(0.0, f64::max);
    let min_eig = eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if min_eig < -tol.psd * max_eig.max(1.0) {
        return Err(Error::IndefiniteGram {
            eigenvalue: min_eig,
        });
    }
    let mut kept: Vec<usize> = (0..n)
        .filter(|&i| max_eig > 0.0 && eig.eigenvalues[i] > tol.rank * max_eig)
        .collect();
    kept.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .unwrap()
            .then(a.cmp(&b))
    });
    let dim = kept.len();
    let embed = ComplexMatrix::from_fn(dim, n, |r, p| {
        let col = kept[r];
        eig.eigenvectors[(p, col)].conj() * C64::new(eig.eigenvalues[col].sqrt(), 0.0)
    });
    let cobasis = ComplexMatrix::from_fn(n, dim, |p, r| {
        let col = kept[r];
        eig.eigenvectors[(p, col)] * C64::new(1.0 / eig.eigenvalues[col].sqrt(), 0.0)
    });
    Ok((embed, cobasis, dim))
}

impl TensorModule {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_dim(&self) -> usize {
        self.left_dim
    }

    pub fn right_dim(&self) -> usize {
        self.right_dim
    }

    pub fn left_algebra(&self) -> &CStarAlgebra {
        &self.left_algebra
    }

    pub fn right_algebra(&self) -> &CStarAlgebra {
        &self.right_algebra
    }

    pub fn gram(&self) -> &ComplexMatrix {
        &self.gram
    }

    /// Pre-space coefficient vector of `x ⊗ y` for coordinate vectors of the
    /// factors.
    pub fn elementary_pre(&self, x_coords: &[C64], y_coords: &[C64]) -> Result<Vec<C64>> {
        if x_coords.len() != self.left_dim || y_coords.len() != self.right_dim {
            return Err(Error::ShapeMismatch {
                context: "elementary tensor coordinates",
                expected_rows: self.left_dim,
                expected_cols: self.right_dim,
                rows: x_coords.len(),
                cols: y_coords.len(),
            });
        }
        let mut pre = Vec::with_capacity(self.left_dim * self.right_dim);
        for xi in x_coords {
            for yj in y_coords {
                pre.push(xi * yj);
            }
        }
        Ok(pre)
    }

    /// Quotient coordinates of `x ⊗ y`.
    pub fn elementary(&self, x_coords: &[C64], y_coords: &[C64]) -> Result<Vec<C64>> {
        let pre = self.elementary_pre(x_coords, y_coords)?;
        self.pre_to_quotient(&pre)
    }

    pub fn pre_to_quotient(&self, pre: &[C64]) -> Result<Vec<C64>> {
        self.embed.apply_vec(pre)
    }

    /// Coefficient vector of a quotient element in the pre-space.
    pub fn quotient_to_pre(&self, coords: &[C64]) -> Result<Vec<C64>> {
        self.cobasis.apply_vec(coords)
    }

    /// Hilbert seminorm of a pre-space coefficient vector, `√(c† G c)`.
    pub fn pre_seminorm(&self, pre: &[C64]) -> Result<f64> {
        let gc = self.gram.apply_vec(pre)?;
        let mut acc = C64::new(0.0, 0.0);
        for (c, g) in pre.iter().zip(&gc) {
            acc += c.conj() * g;
        }
        Ok(acc.re.max(0.0).sqrt())
    }

    /// `C`-valued inner product of two quotient elements, concretely on the
    /// representation space of `C`.
    pub fn inner_product(&self, u: &[C64], v: &[C64]) -> Result<ComplexMatrix> {
        let cu = self.quotient_to_pre(u)?;
        let cv = self.quotient_to_pre(v)?;
        let n = self.left_dim * self.right_dim;
        let hc = self.right_algebra.rep_space().dim;
        let mut out = ComplexMatrix::zeros(hc, hc);
        for (p, cu_p) in cu.iter().enumerate() {
            if *cu_p == C64::new(0.0, 0.0) {
                continue;
            }
            for (q, cv_q) in cv.iter().enumerate() {
                let coeff = cu_p.conj() * cv_q;
                if coeff != C64::new(0.0, 0.0) {
                    out = out.add(&self.ip_pre[p * n + q].scale(coeff))?;
                }
            }
        }
        Ok(out)
    }

    /// Abstract form of [`inner_product`](Self::inner_product).
    pub fn inner_product_element(
        &self,
        u: &[C64],
        v: &[C64],
        tol: &crate::linalg::Tolerances,
    ) -> Result<AlgebraElement> {
        let m = self.inner_product(u, v)?;
        self.right_algebra.element_from_rep(&m, tol)
    }

    /// Module norm `‖v‖ = ‖⟨v, v⟩_C‖^{1/2}` of a quotient element.
    pub fn module_norm(&self, coords: &[C64]) -> Result<f64> {
        Ok(self.inner_product(coords, coords)?.op_norm().sqrt())
    }

    /// Action of a left-algebra element on quotient coordinates.
    pub fn left_action(&self, a: &AlgebraElement) -> Result<ComplexMatrix> {
        combine(&self.left_algebra, &self.left_action, a, self.dim)
    }

    pub fn left_action_units(&self) -> &[ComplexMatrix] {
        &self.left_action
    }

    /// Action of a right-algebra element on quotient coordinates.
    pub fn right_action(&self, c: &AlgebraElement) -> Result<ComplexMatrix> {
        combine(&self.right_algebra, &self.right_action, c, self.dim)
    }

    pub fn right_action_units(&self) -> &[ComplexMatrix] {
        &self.right_action
    }

    /// Quotient norm of `xb ⊗ y − x ⊗ φ_Y(b)y`, which the quotient collapses
    /// to zero. Measured through the embedding `Λ^{1/2}V†` rather than as
    /// `√(d†Gd)`, which would drown an exact null vector in the rounding of
    /// the cancellation.
    pub fn balancing_residual(
        &self,
        xc: &Correspondence,
        yc: &Correspondence,
        x_coords: &[C64],
        b: &AlgebraElement,
        y_coords: &[C64],
    ) -> Result<f64> {
        let xb = xc.module().right_translation(b)?.apply_vec(x_coords)?;
        let phi_y = yc.phi(b)?.action().apply_vec(y_coords)?;
        let pre_left = self.elementary_pre(&xb, y_coords)?;
        let pre_right = self.elementary_pre(x_coords, &phi_y)?;
        let diff: Vec<C64> = pre_left
            .iter()
            .zip(&pre_right)
            .map(|(a, b)| a - b)
            .collect();
        let quotient = self.pre_to_quotient(&diff)?;
        Ok(quotient.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
    }
}

fn combine(
    algebra: &CStarAlgebra,
    units: &[ComplexMatrix],
    a: &AlgebraElement,
    dim: usize,
) -> Result<ComplexMatrix> {
    let coords = algebra.coords(a);
    let mut out = ComplexMatrix::zeros(dim, dim);
    for (c, u) in coords.iter().zip(units) {
        if *c != C64::new(0.0, 0.0) {
            out = out.add(&u.scale(*c))?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::testutil::*;
    use crate::linalg::Tolerances;

    #[test]
    fn column_tensor_has_product_dimension() {
        // C^m ⊗_C C^n with scalar actions is the plain vector-space tensor.
        for (m, n) in [(2usize, 2usize), (2, 3), (3, 3)] {
            let x = scalar_on_columns(m);
            let y = scalar_on_columns(n);
            let t = interior_tensor(&x, &y).unwrap();
            assert_eq!(t.dim(), m * n);
        }
    }

    #[test]
    fn balanced_relation_collapses() {
        // M_2 ⊗_{M_2} C^2 ≅ C^2: the Gram rank drops from 8 to 2.
        let x = full_matrix_correspondence();
        let y = matrices_on_columns(2);
        let t = interior_tensor(&x, &y).unwrap();
        assert_eq!(t.dim(), 2);
    }

    #[test]
    fn balancing_residual_is_zero_by_construction() {
        let x = full_matrix_correspondence();
        let y = matrices_on_columns(2);
        let t = interior_tensor(&x, &y).unwrap();
        let b = x.module().algebra().matrix_unit(0, 0, 1);
        let x_coords = [
            C64::new(1.0, 0.0),
            C64::new(0.0, -1.0),
            C64::new(0.5, 0.5),
            C64::new(0.0, 2.0),
        ];
        let y_coords = [C64::new(1.0, 1.0), C64::new(-1.0, 0.0)];
        let residual = t
            .balancing_residual(&x, &y, &x_coords, &b, &y_coords)
            .unwrap();
        assert!(residual < 1e-10, "residual {residual}");
    }

    #[test]
    fn middle_algebra_mismatch_is_rejected() {
        let x = scalar_on_columns(2); // right algebra C
        let y = matrices_on_columns(2); // left algebra M_2
        assert!(matches!(
            interior_tensor(&x, &y),
            Err(Error::MiddleAlgebraMismatch(_))
        ));
    }

    #[test]
    fn quotient_basis_is_orthonormal_for_the_module_pairing() {
        let x = scalar_on_columns(2);
        let y = scalar_on_columns(3);
        let t = interior_tensor(&x, &y).unwrap();
        let tol = Tolerances::default();
        for r in 0..t.dim() {
            for s in 0..t.dim() {
                let mut er = vec![C64::new(0.0, 0.0); t.dim()];
                let mut es = vec![C64::new(0.0, 0.0); t.dim()];
                er[r] = C64::new(1.0, 0.0);
                es[s] = C64::new(1.0, 0.0);
                let ip = t.inner_product(&er, &es).unwrap();
                let expected = if r == s { 1.0 } else { 0.0 };
                assert!((ip.trace().unwrap() - C64::new(expected, 0.0)).norm() < tol.eq);
            }
        }
    }

    #[test]
    fn left_action_respects_the_algebra_product() {
        let x = matrices_on_columns(2);
        let y = scalar_on_columns(3);
        let t = interior_tensor(&x, &y).unwrap();
        let a = x.left_algebra();
        let e01 = a.matrix_unit(0, 0, 1);
        let e10 = a.matrix_unit(0, 1, 0);
        let product = a.mul(&e01, &e10).unwrap();
        let lhs = t
            .left_action(&e01)
            .unwrap()
            .mul(&t.left_action(&e10).unwrap())
            .unwrap();
        let rhs = t.left_action(&product).unwrap();
        assert!(lhs.sub(&rhs).unwrap().hs_norm() < 1e-10);
    }
}
