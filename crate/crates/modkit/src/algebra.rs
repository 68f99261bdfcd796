//! Finite-dimensional C*-algebras as direct sums of full matrix blocks.
//!
//! An algebra is presented in Wedderburn form: block sizes `n_1, …, n_k`
//! together with a concrete faithful nondegenerate representation on a
//! Hilbert space, stored as one image per block matrix unit. Abstract
//! elements are tuples of block matrices; ideals are block subsets; quotients
//! drop blocks.

use std::collections::BTreeSet;

use crate::linalg::{lstsq, rel, ComplexMatrix, HilbertSpace, OperatorSubspace, Tolerances, C64};
use crate::{Error, Result};

/// Abstract element of a block algebra: one square matrix per block.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    blocks: Vec<ComplexMatrix>,
}

impl AlgebraElement {
    pub fn blocks(&self) -> &[ComplexMatrix] {
        &self.blocks
    }

    pub fn block(&self, beta: usize) -> &ComplexMatrix {
        &self.blocks[beta]
    }
}

/// Block-diagonal C*-algebra `⊕_β M_{n_β}` with a concrete action.
#[derive(Clone, Debug)]
pub struct CStarAlgebra {
    blocks: Vec<usize>,
    rep_space: HilbertSpace,
    unit_images: Vec<ComplexMatrix>,
    unit_offsets: Vec<usize>,
}

impl CStarAlgebra {
    /// The identity block representation: block `β` acts on its own summand
    /// of `⊕_β C^{n_β}`. Faithful and nondegenerate by construction; the
    /// finite-dimensional stand-in for a universal representation.
    pub fn identity_rep(blocks: Vec<usize>) -> Self {
        let total: usize = blocks.iter().sum();
        let mut unit_images = Vec::new();
        let mut col = 0;
        for &n in &blocks {
            for i in 0..n {
                for j in 0..n {
                    unit_images.push(ComplexMatrix::matrix_unit(total, total, col + i, col + j));
                }
            }
            col += n;
        }
        let unit_offsets = offsets(&blocks);
        Self {
            blocks,
            rep_space: HilbertSpace::new(total),
            unit_images,
            unit_offsets,
        }
    }

    /// Wraps a custom embedding, checking that it is a faithful nondegenerate
    /// *-homomorphism on the block matrix units.
    pub fn with_embedding(
        blocks: Vec<usize>,
        rep_space: HilbertSpace,
        unit_images: Vec<ComplexMatrix>,
        tol: &Tolerances,
    ) -> Result<Self> {
        let dim: usize = blocks.iter().map(|n| n * n).sum();
        if unit_images.len() != dim {
            return Err(Error::Validation(format!(
                "expected {dim} unit images, got {}",
                unit_images.len()
            )));
        }
        for m in &unit_images {
            if m.shape() != (rep_space.dim, rep_space.dim) {
                return Err(Error::ShapeMismatch {
                    context: "algebra embedding",
                    expected_rows: rep_space.dim,
                    expected_cols: rep_space.dim,
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
        }
        let a = Self {
            unit_offsets: offsets(&blocks),
            blocks,
            rep_space,
            unit_images,
        };
        a.is_representation(&a.unit_images, tol)?;
        if !a.rep_faithful(&a.unit_images) {
            return Err(Error::Validation(
                "embedding is not faithful: a block matrix unit is annihilated".into(),
            ));
        }
        let defect = a.rep_unit_defect(&a.unit_images);
        if defect > tol.eq {
            return Err(Error::DegenerateRepresentation { residual: defect });
        }
        Ok(a)
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Linear dimension `Σ n_β²`.
    pub fn dim(&self) -> usize {
        self.unit_images.len()
    }

    pub fn rep_space(&self) -> HilbertSpace {
        self.rep_space
    }

    /// Index of the matrix unit `e^β_{ij}` in the generator ordering.
    pub fn unit_index(&self, beta: usize, i: usize, j: usize) -> usize {
        self.unit_offsets[beta] + i * self.blocks[beta] + j
    }

    /// Inverse of [`unit_index`](Self::unit_index).
    pub fn unit_position(&self, idx: usize) -> (usize, usize, usize) {
        let beta = match self.unit_offsets.binary_search(&idx) {
            Ok(b) => b,
            Err(b) => b - 1,
        };
        let local = idx - self.unit_offsets[beta];
        let n = self.blocks[beta];
        (beta, local / n, local % n)
    }

    pub fn unit_image(&self, idx: usize) -> &ComplexMatrix {
        &self.unit_images[idx]
    }

    pub fn unit_images(&self) -> &[ComplexMatrix] {
        &self.unit_images
    }

    /// Abstract matrix unit `e^β_{ij}`.
    pub fn matrix_unit(&self, beta: usize, i: usize, j: usize) -> AlgebraElement {
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(b, &n)| {
                if b == beta {
                    ComplexMatrix::matrix_unit(n, n, i, j)
                } else {
                    ComplexMatrix::zeros(n, n)
                }
            })
            .collect();
        AlgebraElement { blocks }
    }

    pub fn zero_element(&self) -> AlgebraElement {
        AlgebraElement {
            blocks: self
                .blocks
                .iter()
                .map(|&n| ComplexMatrix::zeros(n, n))
                .collect(),
        }
    }

    pub fn identity_element(&self) -> AlgebraElement {
        AlgebraElement {
            blocks: self
                .blocks
                .iter()
                .map(|&n| ComplexMatrix::identity(n))
                .collect(),
        }
    }

    /// Coordinates with respect to the unit basis (block-major, row-major).
    pub fn coords(&self, a: &AlgebraElement) -> Vec<C64> {
        let mut out = Vec::with_capacity(self.dim());
        for (b, &n) in self.blocks.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    out.push(a.blocks[b].at(i, j));
                }
            }
        }
        out
    }

    pub fn from_coords(&self, coords: &[C64]) -> Result<AlgebraElement> {
        if coords.len() != self.dim() {
            return Err(Error::ShapeMismatch {
                context: "algebra coordinates",
                expected_rows: self.dim(),
                expected_cols: 1,
                rows: coords.len(),
                cols: 1,
            });
        }
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(b, &n)| ComplexMatrix::from_fn(n, n, |i, j| coords[self.unit_index(b, i, j)]))
            .collect();
        Ok(AlgebraElement { blocks })
    }

    fn check_element(&self, a: &AlgebraElement) -> Result<()> {
        if a.blocks.len() != self.blocks.len()
            || a.blocks
                .iter()
                .zip(&self.blocks)
                .any(|(m, &n)| m.shape() != (n, n))
        {
            return Err(Error::Validation(
                "element block shapes do not match the algebra".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_element(a)?;
        self.check_element(b)?;
        let blocks = a
            .blocks
            .iter()
            .zip(&b.blocks)
            .map(|(x, y)| x.add(y))
            .collect::<Result<_>>()?;
        Ok(AlgebraElement { blocks })
    }

    pub fn sub(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_element(a)?;
        self.check_element(b)?;
        let blocks = a
            .blocks
            .iter()
            .zip(&b.blocks)
            .map(|(x, y)| x.sub(y))
            .collect::<Result<_>>()?;
        Ok(AlgebraElement { blocks })
    }

    pub fn scale(&self, a: &AlgebraElement, z: C64) -> AlgebraElement {
        AlgebraElement {
            blocks: a.blocks.iter().map(|m| m.scale(z)).collect(),
        }
    }

    /// Blockwise product: the abstract multiplication of the algebra.
    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_element(a)?;
        self.check_element(b)?;
        let blocks = a
            .blocks
            .iter()
            .zip(&b.blocks)
            .map(|(x, y)| x.mul(y))
            .collect::<Result<_>>()?;
        Ok(AlgebraElement { blocks })
    }

    /// Blockwise conjugate transpose: the abstract involution.
    pub fn star(&self, a: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            blocks: a.blocks.iter().map(|m| m.adjoint()).collect(),
        }
    }

    /// C*-norm of an abstract element: the largest block operator norm.
    pub fn elem_norm(&self, a: &AlgebraElement) -> f64 {
        a.blocks.iter().map(|m| m.op_norm()).fold(0.0, f64::max)
    }

    /// Concrete action of an abstract element on the representation space.
    pub fn rep(&self, a: &AlgebraElement) -> Result<ComplexMatrix> {
        self.check_element(a)?;
        let mut out = ComplexMatrix::zeros(self.rep_space.dim, self.rep_space.dim);
        for (idx, image) in self.unit_images.iter().enumerate() {
            let (b, i, j) = self.unit_position(idx);
            let coeff = a.blocks[b].at(i, j);
            if coeff != C64::new(0.0, 0.0) {
                out = out.add(&image.scale(coeff))?;
            }
        }
        Ok(out)
    }

    /// The image `rep(A)` as an operator subspace of `L(rep_space)`.
    pub fn rep_subspace(&self, tol: &Tolerances) -> Result<OperatorSubspace> {
        OperatorSubspace::span(self.rep_space, self.rep_space, &self.unit_images, tol)
    }

    /// Recovers the abstract element whose representation is `m`, failing if
    /// `m` does not lie in `rep(A)` within tolerance.
    pub fn element_from_rep(&self, m: &ComplexMatrix, tol: &Tolerances) -> Result<AlgebraElement> {
        if m.shape() != (self.rep_space.dim, self.rep_space.dim) {
            return Err(Error::ShapeMismatch {
                context: "algebra element recovery",
                expected_rows: self.rep_space.dim,
                expected_cols: self.rep_space.dim,
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let n = self.rep_space.dim * self.rep_space.dim;
        let stacked = ComplexMatrix::from_fn(n, self.dim(), |row, col| {
            self.unit_images[col].entries()[row]
        });
        let target = ComplexMatrix::new(n, 1, m.entries().to_vec())?;
        let (coords, residual) = lstsq(&stacked, &target, tol.rank)?;
        if rel(residual, m.hs_norm()) > tol.eq {
            return Err(Error::NotInSubspace { residual });
        }
        self.from_coords(&coords.column(0))
    }

    /// Checks that `mats` (one per matrix unit, all square of one size)
    /// defines a *-representation: multiplicative and star-preserving on the
    /// generators within `tol.eq`.
    pub fn is_representation(&self, mats: &[ComplexMatrix], tol: &Tolerances) -> Result<()> {
        let residual = self.representation_residual(mats)?;
        if residual > tol.eq {
            return Err(Error::NotStarHomomorphism {
                context: "generator relations".into(),
                residual,
            });
        }
        Ok(())
    }

    /// Largest relative defect in the generator relations of a candidate
    /// representation.
    pub fn representation_residual(&self, mats: &[ComplexMatrix]) -> Result<f64> {
        if mats.len() != self.dim() {
            return Err(Error::Validation(format!(
                "expected {} generator images, got {}",
                self.dim(),
                mats.len()
            )));
        }
        let h = mats.first().map(|m| m.rows()).unwrap_or(0);
        for m in mats {
            if m.shape() != (h, h) {
                return Err(Error::NotSquare {
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
        }
        let scale = mats.iter().map(|m| m.op_norm()).fold(0.0, f64::max);
        let mut worst: f64 = 0.0;
        for u in 0..self.dim() {
            let (bu, iu, ju) = self.unit_position(u);
            // star: image(e_ji) = image(e_ij)^*
            let star_partner = self.unit_index(bu, ju, iu);
            let star_res = mats[star_partner].sub(&mats[u].adjoint())?.hs_norm();
            worst = worst.max(rel(star_res, scale));
            for v in 0..self.dim() {
                let (bv, iv, jv) = self.unit_position(v);
                let product = mats[u].mul(&mats[v])?;
                let expected = if bu == bv && ju == iv {
                    mats[self.unit_index(bu, iu, jv)].clone()
                } else {
                    ComplexMatrix::zeros(h, h)
                };
                let res = product.sub(&expected)?.hs_norm();
                worst = worst.max(rel(res, scale * scale));
            }
        }
        Ok(worst)
    }

    /// A *-representation of a block algebra is faithful iff no block matrix
    /// unit is annihilated; unit images are partial isometries, so a norm
    /// threshold of 1/2 separates the two cases.
    pub fn rep_faithful(&self, mats: &[ComplexMatrix]) -> bool {
        mats.iter().all(|m| m.op_norm() > 0.5)
    }

    /// Distance of `rep(1)` from the identity; zero exactly when the
    /// representation is nondegenerate.
    pub fn rep_unit_defect(&self, mats: &[ComplexMatrix]) -> f64 {
        let h = mats.first().map(|m| m.rows()).unwrap_or(0);
        let mut unit = ComplexMatrix::zeros(h, h);
        for (b, &n) in self.blocks.iter().enumerate() {
            for i in 0..n {
                unit = unit
                    .add(&mats[self.unit_index(b, i, i)])
                    .expect("square shapes agree");
            }
        }
        unit.sub(&ComplexMatrix::identity(h))
            .expect("square shapes agree")
            .hs_norm()
    }

    pub fn rep_nondegenerate(&self, mats: &[ComplexMatrix], tol: &Tolerances) -> bool {
        self.rep_unit_defect(mats) <= tol.eq
    }

    /// Identity representation matrices, the default choice of `ρ`.
    pub fn identity_rep_matrices(&self) -> Vec<ComplexMatrix> {
        Self::identity_rep(self.blocks.clone()).unit_images
    }

    /// Structural equality of presentations: same blocks, same space, same
    /// embedding within `tol.eq`.
    pub fn same_presentation(&self, other: &Self, tol: &Tolerances) -> bool {
        self.blocks == other.blocks
            && self.rep_space == other.rep_space
            && self
                .unit_images
                .iter()
                .zip(&other.unit_images)
                .all(|(a, b)| match a.sub(b) {
                    Ok(d) => rel(d.hs_norm(), a.hs_norm()) <= tol.eq,
                    Err(_) => false,
                })
    }
}

fn offsets(blocks: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(blocks.len());
    let mut acc = 0;
    for &n in blocks {
        out.push(acc);
        acc += n * n;
    }
    out
}

/// Ideal of a block algebra: a subset of its blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    parent_blocks: Vec<usize>,
    members: BTreeSet<usize>,
}

impl Ideal {
    pub fn new(parent: &CStarAlgebra, members: BTreeSet<usize>) -> Result<Self> {
        if members.iter().any(|&b| b >= parent.block_count()) {
            return Err(Error::ForeignIdeal);
        }
        Ok(Self {
            parent_blocks: parent.blocks().to_vec(),
            members,
        })
    }

    pub fn empty(parent: &CStarAlgebra) -> Self {
        Self {
            parent_blocks: parent.blocks().to_vec(),
            members: BTreeSet::new(),
        }
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn contains_block(&self, beta: usize) -> bool {
        self.members.contains(&beta)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn parent_blocks(&self) -> &[usize] {
        &self.parent_blocks
    }

    fn check_parent(&self, a: &CStarAlgebra) -> Result<()> {
        if self.parent_blocks != a.blocks() {
            return Err(Error::ForeignIdeal);
        }
        Ok(())
    }
}

/// All `2^k` ideals of a `k`-block algebra, in binary counting order.
pub fn enumerate_ideals(a: &CStarAlgebra) -> Result<Vec<Ideal>> {
    const MAX_BLOCKS: usize = 20;
    let k = a.block_count();
    if k > MAX_BLOCKS {
        return Err(Error::TooManyBlocks {
            blocks: k,
            max: MAX_BLOCKS,
        });
    }
    let mut out = Vec::with_capacity(1 << k);
    for mask in 0u32..(1u32 << k) {
        let members: BTreeSet<usize> = (0..k).filter(|&b| mask & (1 << b) != 0).collect();
        out.push(Ideal {
            parent_blocks: a.blocks().to_vec(),
            members,
        });
    }
    Ok(out)
}

/// Linear *-map out of a block algebra, stored as one image per block matrix
/// unit. The images may live in any matrix space that multiplies: concrete
/// operators or coordinate matrices of module maps.
#[derive(Clone, Debug)]
pub struct StarHomomorphism {
    source: CStarAlgebra,
    images: Vec<ComplexMatrix>,
}

impl StarHomomorphism {
    /// Validated constructor: checks the generator relations.
    pub fn new(source: CStarAlgebra, images: Vec<ComplexMatrix>, tol: &Tolerances) -> Result<Self> {
        let residual = source.representation_residual(&images)?;
        if residual > tol.eq {
            return Err(Error::NotStarHomomorphism {
                context: "generator relations".into(),
                residual,
            });
        }
        Ok(Self { source, images })
    }

    /// Wraps images without validation; for data whose relations are trusted
    /// or deliberately broken (error-path tests).
    pub fn new_unchecked(source: CStarAlgebra, images: Vec<ComplexMatrix>) -> Self {
        Self { source, images }
    }

    pub fn source(&self) -> &CStarAlgebra {
        &self.source
    }

    pub fn images(&self) -> &[ComplexMatrix] {
        &self.images
    }

    pub fn apply(&self, a: &AlgebraElement) -> Result<ComplexMatrix> {
        let coords = self.source.coords(a);
        let (rows, cols) = self.images.first().map(|m| m.shape()).unwrap_or((0, 0));
        let mut out = ComplexMatrix::zeros(rows, cols);
        for (c, img) in coords.iter().zip(&self.images) {
            if *c != C64::new(0.0, 0.0) {
                out = out.add(&img.scale(*c))?;
            }
        }
        Ok(out)
    }

    /// The kernel as a block subset. Each block of a finite-dimensional
    /// C*-algebra is simple, so it is either annihilated or mapped
    /// injectively; anything in between signals corrupted input.
    pub fn kernel(&self, tol: &Tolerances) -> Result<Ideal> {
        let mut members = BTreeSet::new();
        for (beta, &n) in self.source.blocks().iter().enumerate() {
            let full = n * n;
            let width: usize = self
                .images
                .first()
                .map(|m| m.rows() * m.cols())
                .unwrap_or(0);
            let stacked = ComplexMatrix::from_fn(full, width, |r, c| {
                let idx = self.source.unit_index(beta, r / n, r % n);
                self.images[idx].entries()[c]
            });
            let rank = stacked.rank(tol.rank);
            if rank == 0 {
                members.insert(beta);
            } else if rank != full {
                return Err(Error::AmbiguousBlockKernel {
                    block: beta,
                    rank,
                    full,
                });
            }
        }
        Ok(Ideal {
            parent_blocks: self.source.blocks().to_vec(),
            members,
        })
    }
}

/// Quotient of a block algebra by an ideal.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: CStarAlgebra,
    pub map: StarHomomorphism,
    /// Original block indices surviving in the quotient, ascending.
    pub retained: Vec<usize>,
}

/// Drops the blocks of `j`; the quotient carries the identity representation
/// of the retained blocks, and the quotient map is the blockwise projection.
pub fn quotient(a: &CStarAlgebra, j: &Ideal) -> Result<Quotient> {
    j.check_parent(a)?;
    let retained: Vec<usize> = (0..a.block_count())
        .filter(|b| !j.contains_block(*b))
        .collect();
    let q_blocks: Vec<usize> = retained.iter().map(|&b| a.blocks()[b]).collect();
    let q = CStarAlgebra::identity_rep(q_blocks);
    let mut images = Vec::with_capacity(a.dim());
    for idx in 0..a.dim() {
        let (beta, i, jj) = a.unit_position(idx);
        match retained.iter().position(|&b| b == beta) {
            Some(pos) => images.push(q.unit_image(q.unit_index(pos, i, jj)).clone()),
            None => images.push(ComplexMatrix::zeros(q.rep_space().dim, q.rep_space().dim)),
        }
    }
    let map = StarHomomorphism::new_unchecked(a.clone(), images);
    Ok(Quotient {
        algebra: q,
        map,
        retained,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn identity_rep_is_valid() {
        let a = CStarAlgebra::identity_rep(vec![2, 3]);
        assert_eq!(a.dim(), 13);
        assert_eq!(a.rep_space().dim, 5);
        a.is_representation(a.unit_images(), &tol()).unwrap();
        assert!(a.rep_faithful(a.unit_images()));
        assert!(a.rep_nondegenerate(a.unit_images(), &tol()));
    }

    #[test]
    fn rep_and_recovery_round_trip() {
        let a = CStarAlgebra::identity_rep(vec![2, 1]);
        let e = a.matrix_unit(0, 0, 1);
        let m = a.rep(&e).unwrap();
        let back = a.element_from_rep(&m, &tol()).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn recovery_rejects_operators_outside_the_image() {
        let a = CStarAlgebra::identity_rep(vec![1, 1]);
        let off_diagonal = ComplexMatrix::matrix_unit(2, 2, 0, 1);
        assert!(matches!(
            a.element_from_rep(&off_diagonal, &tol()),
            Err(Error::NotInSubspace { .. })
        ));
    }

    #[test]
    fn kernel_of_identity_map_is_empty() {
        let a = CStarAlgebra::identity_rep(vec![2]);
        let h = StarHomomorphism::new(a.clone(), a.unit_images().to_vec(), &tol()).unwrap();
        assert!(h.kernel(&tol()).unwrap().is_empty());
    }

    #[test]
    fn kernel_of_block_projection() {
        // M2 ⊕ M3 → M2, dropping the second block.
        let a = CStarAlgebra::identity_rep(vec![2, 3]);
        let m2 = CStarAlgebra::identity_rep(vec![2]);
        let mut images = Vec::new();
        for idx in 0..a.dim() {
            let (beta, i, j) = a.unit_position(idx);
            if beta == 0 {
                images.push(m2.unit_image(m2.unit_index(0, i, j)).clone());
            } else {
                images.push(ComplexMatrix::zeros(2, 2));
            }
        }
        let h = StarHomomorphism::new(a, images, &tol()).unwrap();
        let k = h.kernel(&tol()).unwrap();
        assert_eq!(k.members().iter().copied().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn ambiguous_kernel_is_detected() {
        // Annihilating only part of a block is not a *-homomorphism; the
        // blockwise rank test flags it.
        let a = CStarAlgebra::identity_rep(vec![2]);
        let mut images = vec![ComplexMatrix::zeros(2, 2); 4];
        images[0] = ComplexMatrix::matrix_unit(2, 2, 0, 0);
        let h = StarHomomorphism::new_unchecked(a, images);
        assert!(matches!(
            h.kernel(&tol()),
            Err(Error::AmbiguousBlockKernel { .. })
        ));
    }

    #[test]
    fn quotient_by_empty_ideal_is_isomorphic() {
        let a = CStarAlgebra::identity_rep(vec![2, 3]);
        let q = quotient(&a, &Ideal::empty(&a)).unwrap();
        assert_eq!(q.algebra.blocks(), a.blocks());
        assert!(q.map.kernel(&tol()).unwrap().is_empty());
    }

    #[test]
    fn quotient_drops_ideal_blocks() {
        let a = CStarAlgebra::identity_rep(vec![2, 3]);
        let j = Ideal::new(&a, [0usize].into_iter().collect()).unwrap();
        let q = quotient(&a, &j).unwrap();
        assert_eq!(q.algebra.blocks(), &[3]);
        assert_eq!(q.retained, vec![1]);
        // kernel of the quotient map is the ideal itself
        assert_eq!(q.map.kernel(&tol()).unwrap(), j);
    }

    #[test]
    fn quotient_of_three_blocks_by_two_is_injective_on_the_rest() {
        let a = CStarAlgebra::identity_rep(vec![2, 1, 2]);
        let j = Ideal::new(&a, [0usize, 2].into_iter().collect()).unwrap();
        let q = quotient(&a, &j).unwrap();
        assert_eq!(q.algebra.blocks(), &[1]);
        // induced map on the retained block has full rank
        let img = q.map.apply(&a.matrix_unit(1, 0, 0)).unwrap();
        assert!(img.op_norm() > 0.5);
    }

    #[test]
    fn ideal_enumeration_counts() {
        let one = CStarAlgebra::identity_rep(vec![2]);
        assert_eq!(enumerate_ideals(&one).unwrap().len(), 2);
        let two = CStarAlgebra::identity_rep(vec![2, 3]);
        assert_eq!(enumerate_ideals(&two).unwrap().len(), 4);
        let three = CStarAlgebra::identity_rep(vec![2, 1, 1]);
        assert_eq!(enumerate_ideals(&three).unwrap().len(), 8);
    }

    #[test]
    fn ideal_enumeration_guards_block_count() {
        let big = CStarAlgebra::identity_rep(vec![1; 21]);
        assert!(matches!(
            enumerate_ideals(&big),
            Err(Error::TooManyBlocks { .. })
        ));
    }

    #[test]
    fn abstract_product_matches_represented_product() {
        let a = CStarAlgebra::identity_rep(vec![2, 2]);
        let x = a.matrix_unit(0, 0, 1);
        let y = a.matrix_unit(0, 1, 0);
        let xy = a.mul(&x, &y).unwrap();
        let lhs = a.rep(&xy).unwrap();
        let rhs = a.rep(&x).unwrap().mul(&a.rep(&y).unwrap()).unwrap();
        assert!(lhs.sub(&rhs).unwrap().hs_norm() < 1e-12);
    }
}
