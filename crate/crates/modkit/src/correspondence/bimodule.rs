//! Criteria deciding when a correspondence carries a Hilbert bimodule
//! structure.
//!
//! `(X, φ)` admits a unique left inner product valued in `A₀ = A/ker(φ)`
//! exactly when every rank-one map `θ_{x,y}` lies in `φ(A)`; the inner
//! product is then `⟨x, y⟩_left = φ₀^{-1}(θ_{x,y})`, recovered here by a
//! least-squares solve against the generator images, and it satisfies
//!
//! ```text
//! ⟨x, y⟩_left · z = x ⟨y, z⟩_B        and        ‖⟨x, x⟩_left‖ = ‖x‖².
//! ```
//!
//! Uniqueness is checked operationally: an independent second solve through
//! an injective `λ` of a built representation (`⟨x,y⟩_left =
//! λ^{-1}(π(x)π(y)*)`) must agree with the direct solve. The ideal-based
//! variant searches the block subsets of `A` for an ideal `J` carried
//! isomorphically onto the compacts by `φ|_J`.

use crate::algebra::{enumerate_ideals, quotient, AlgebraElement, CStarAlgebra, Ideal};
use crate::linalg::{lstsq, ComplexMatrix, HilbertSpace, OperatorSubspace, C64};
use crate::{Error, Result};

use super::representation::build_representation;
use super::Correspondence;

/// A left inner product in algebra-valued form: one element per basis pair.
#[derive(Clone, Debug)]
pub struct LeftInnerProduct {
    algebra: CStarAlgebra,
    dim: usize,
    entries: Vec<AlgebraElement>,
}

impl LeftInnerProduct {
    pub fn new(algebra: CStarAlgebra, dim: usize, entries: Vec<AlgebraElement>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::Validation(format!(
                "expected {} inner-product entries, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(Self {
            algebra,
            dim,
            entries,
        })
    }

    pub fn algebra(&self) -> &CStarAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `⟨x_i, x_j⟩_left`.
    pub fn entry(&self, i: usize, j: usize) -> &AlgebraElement {
        &self.entries[i * self.dim + j]
    }
}

/// Outcome of the containment criterion.
#[derive(Clone, Debug)]
pub struct BimoduleDecision {
    /// Verdict of `K_B(X) ⊆ φ(A)`.
    pub holds: bool,
    pub compacts_dim: usize,
    pub phi_image_dim: usize,
    /// First pair whose rank-one map escapes `φ(A)`, with its residual.
    pub witness: Option<(usize, usize, f64)>,
    /// Blocks of `A` annihilated by `φ`.
    pub kernel_blocks: Vec<usize>,
    /// The correspondence over the quotient `A₀`, when the criterion holds.
    pub correspondence0: Option<Correspondence>,
    /// Recovered left inner product over `A₀`.
    pub left_inner_product: Option<LeftInnerProduct>,
    /// Largest residual of the `θ ∈ φ(A)` solves.
    pub solve_residual: Option<f64>,
    /// Largest residual of `⟨x,y⟩_left·z = x⟨y,z⟩_B` over basis triples.
    pub bimod_residual: Option<f64>,
    /// Largest deviation of `‖⟨x,x⟩_left‖` from `‖x‖²` over the basis.
    pub norm_residual: Option<f64>,
    /// Disagreement between the two independent inner-product solves.
    pub uniqueness_residual: Option<f64>,
}

/// All rank-one coordinate actions `θ_{x_i, x_j}`, row-major by pair.
fn rank_one_actions(c: &Correspondence) -> Result<Vec<ComplexMatrix>> {
    let k = c.module().dim();
    let mut out = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let theta = c
                .module()
                .rank_one(c.module().basis_element(i), c.module().basis_element(j))?;
            out.push(theta.action().clone());
        }
    }
    Ok(out)
}

/// Stacked generator-image matrix of a family of coordinate actions, used to
/// solve for preimage coordinates.
fn stacked_images(images: &[ComplexMatrix], k: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(k * k, images.len(), |row, col| images[col].entries()[row])
}

fn solve_preimages(
    system: &ComplexMatrix,
    targets: &[ComplexMatrix],
    k: usize,
    rank_cutoff: f64,
) -> Result<(ComplexMatrix, Vec<f64>)> {
    let rhs = ComplexMatrix::from_fn(k * k, targets.len(), |row, col| targets[col].entries()[row]);
    let (solution, _) = lstsq(system, &rhs, rank_cutoff)?;
    let reconstructed = system.mul(&solution)?;
    let mut residuals = Vec::with_capacity(targets.len());
    for col in 0..targets.len() {
        let mut acc = 0.0f64;
        for row in 0..k * k {
            acc += (reconstructed.at(row, col) - rhs.at(row, col)).norm_sqr();
        }
        residuals.push(acc.sqrt());
    }
    Ok((solution, residuals))
}

/// Decides `K_B(X) ⊆ φ(A)` and, when it holds, recovers the unique left
/// inner product over `A₀ = A/ker(φ)` together with its consistency
/// residuals.
pub fn bimodule_criterion(c: &Correspondence) -> Result<BimoduleDecision> {
    let tol = *c.tol();
    let k = c.module().dim();
    let thetas = rank_one_actions(c)?;
    let coord_space = HilbertSpace::new(k);
    let compacts = OperatorSubspace::span(coord_space, coord_space, &thetas, &tol)?;
    let phi_span = c.phi_image_span()?;

    let mut holds = true;
    let mut witness: Option<(usize, usize, f64)> = None;
    for (pair, theta) in thetas.iter().enumerate() {
        let membership = phi_span.contains(theta, &tol)?;
        if !membership.contained {
            holds = false;
            if witness
                .map(|(_, _, r)| membership.residual > r)
                .unwrap_or(true)
            {
                witness = Some((pair / k, pair % k, membership.residual));
            }
        }
    }
    let kernel = c.phi_kernel()?;
    let kernel_blocks: Vec<usize> = kernel.members().iter().copied().collect();

    let mut decision = BimoduleDecision {
        holds,
        compacts_dim: compacts.dim(),
        phi_image_dim: phi_span.dim(),
        witness,
        kernel_blocks,
        correspondence0: None,
        left_inner_product: None,
        solve_residual: None,
        bimod_residual: None,
        norm_residual: None,
        uniqueness_residual: None,
    };
    if !holds {
        return Ok(decision);
    }

    // Quotient away the kernel and restrict φ to the surviving blocks.
    let a = c.left_algebra();
    let q = quotient(a, &kernel)?;
    let a0 = q.algebra.clone();
    let mut actions0 = Vec::with_capacity(a0.dim());
    for idx in 0..a0.dim() {
        let (pos, i, j) = a0.unit_position(idx);
        let original = q.retained[pos];
        actions0.push(c.phi_maps()[a.unit_index(original, i, j)].action().clone());
    }
    let c0 = Correspondence::new(c.module().clone(), a0.clone(), actions0)?;
    if !c0.phi_kernel()?.is_empty() {
        return Err(Error::Validation(
            "quotient left action is not injective; quotient contract violated".into(),
        ));
    }

    // Direct solve: θ_{x_i,x_j} = φ₀(⟨x_i,x_j⟩_left).
    let phi0_images: Vec<ComplexMatrix> =
        c0.phi_maps().iter().map(|m| m.action().clone()).collect();
    let system = stacked_images(&phi0_images, k);
    let (coords, residuals) = solve_preimages(&system, &thetas, k, tol.rank)?;
    let solve_residual = residuals.iter().copied().fold(0.0, f64::max);
    let mut entries = Vec::with_capacity(k * k);
    for pair in 0..k * k {
        entries.push(a0.from_coords(&coords.column(pair))?);
    }
    let lip = LeftInnerProduct::new(a0.clone(), k, entries)?;

    // ⟨x_i, x_j⟩_left · x_l = x_i (x_j* x_l), both sides concrete.
    let mut bimod_residual: f64 = 0.0;
    for i in 0..k {
        for j in 0..k {
            let entry = lip.entry(i, j);
            for l in 0..k {
                let lhs = c0.apply_left(entry, c.module().basis_element(l))?;
                let xj_adj = c.module().basis_element(j).adjoint();
                let rhs = c
                    .module()
                    .basis_element(i)
                    .mul(&xj_adj.mul(c.module().basis_element(l))?)?;
                bimod_residual = bimod_residual.max(lhs.sub(&rhs)?.op_norm());
            }
        }
    }

    // ‖⟨x,x⟩_left‖ = ‖x‖² (the C*-norm of a rank-one map θ_{x,x}).
    let mut norm_residual: f64 = 0.0;
    for i in 0..k {
        let norm = c.module().basis_element(i).op_norm();
        let lhs = a0.elem_norm(lip.entry(i, i));
        norm_residual = norm_residual.max((lhs - norm * norm).abs());
    }

    // Independent second solve through an injective λ of a built
    // representation: ⟨x_i,x_j⟩_left = λ^{-1}(π(x_i)π(x_j)*).
    let rho = c.module().algebra().identity_rep_matrices();
    let triple = build_representation(&c0, &rho)?;
    let lambda_system = stacked_images_rect(triple.lambda());
    let mut lambda_targets = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            lambda_targets.push(triple.pi()[i].mul(&triple.pi()[j].adjoint())?);
        }
    }
    let (coords2, residuals2) = solve_preimages_rect(&lambda_system, &lambda_targets, tol.rank)?;
    let second_solve_residual = residuals2.iter().copied().fold(0.0, f64::max);
    let mut uniqueness_residual = second_solve_residual;
    for pair in 0..k * k {
        let elem2 = a0.from_coords(&coords2.column(pair))?;
        let diff = a0.sub(&elem2, lip.entry(pair / k, pair % k))?;
        uniqueness_residual = uniqueness_residual.max(a0.elem_norm(&diff));
    }

    decision.correspondence0 = Some(c0);
    decision.left_inner_product = Some(lip);
    decision.solve_residual = Some(solve_residual);
    decision.bimod_residual = Some(bimod_residual);
    decision.norm_residual = Some(norm_residual);
    decision.uniqueness_residual = Some(uniqueness_residual);
    Ok(decision)
}

fn stacked_images_rect(images: &[ComplexMatrix]) -> ComplexMatrix {
    let entries = images.first().map(|m| m.rows() * m.cols()).unwrap_or(0);
    ComplexMatrix::from_fn(entries, images.len(), |row, col| images[col].entries()[row])
}

fn solve_preimages_rect(
    system: &ComplexMatrix,
    targets: &[ComplexMatrix],
    rank_cutoff: f64,
) -> Result<(ComplexMatrix, Vec<f64>)> {
    let entries = system.rows();
    let rhs = ComplexMatrix::from_fn(entries, targets.len(), |row, col| {
        targets[col].entries()[row]
    });
    let (solution, _) = lstsq(system, &rhs, rank_cutoff)?;
    let reconstructed = system.mul(&solution)?;
    let mut residuals = Vec::with_capacity(targets.len());
    for col in 0..targets.len() {
        let mut acc = 0.0f64;
        for row in 0..entries {
            acc += (reconstructed.at(row, col) - rhs.at(row, col)).norm_sqr();
        }
        residuals.push(acc.sqrt());
    }
    Ok((solution, residuals))
}

/// Outcome of the ideal search.
#[derive(Clone, Debug)]
pub struct IdealDecision {
    /// First ideal carried isomorphically onto the compacts, if any.
    pub ideal: Option<Ideal>,
    /// Number of ideals examined.
    pub tested: usize,
    pub compacts_dim: usize,
    /// Left inner product valued in the ideal (as elements of `A` supported
    /// on its blocks).
    pub left_inner_product: Option<LeftInnerProduct>,
    pub solve_residual: Option<f64>,
    pub bimod_residual: Option<f64>,
}

/// Searches the ideals of `A` for one that `φ` maps isomorphically onto
/// `K_B(X)`: blockwise injective and with matching span.
pub fn ideal_criterion(c: &Correspondence) -> Result<IdealDecision> {
    let tol = *c.tol();
    let a = c.left_algebra();
    let k = c.module().dim();
    let thetas = rank_one_actions(c)?;
    let coord_space = HilbertSpace::new(k);
    let compacts = OperatorSubspace::span(coord_space, coord_space, &thetas, &tol)?;

    let ideals = enumerate_ideals(a)?;
    let mut tested = 0;
    let mut found: Option<Ideal> = None;
    for j in &ideals {
        tested += 1;
        let mut injective = true;
        for &beta in j.members() {
            let n = a.blocks()[beta];
            let block_images: Vec<ComplexMatrix> = (0..n * n)
                .map(|local| {
                    c.phi_maps()[a.unit_index(beta, local / n, local % n)]
                        .action()
                        .clone()
                })
                .collect();
            let stacked =
                ComplexMatrix::from_fn(n * n, k * k, |r, col| block_images[r].entries()[col]);
            if stacked.rank(tol.rank) != n * n {
                injective = false;
                break;
            }
        }
        if !injective {
            continue;
        }
        let image_actions: Vec<ComplexMatrix> = j
            .members()
            .iter()
            .flat_map(|&beta| {
                let n = a.blocks()[beta];
                (0..n * n).map(move |local| (beta, local / n, local % n))
            })
            .map(|(beta, bi, bj)| c.phi_maps()[a.unit_index(beta, bi, bj)].action().clone())
            .collect();
        let image_span = OperatorSubspace::span(coord_space, coord_space, &image_actions, &tol)?;
        if image_span.projector_distance(&compacts)? <= tol.eq {
            found = Some(j.clone());
            break;
        }
    }

    let mut decision = IdealDecision {
        ideal: found.clone(),
        tested,
        compacts_dim: compacts.dim(),
        left_inner_product: None,
        solve_residual: None,
        bimod_residual: None,
    };
    let Some(j) = found else {
        return Ok(decision);
    };

    // Inner product valued in J: solve against the J-generators only, then
    // scatter the coordinates back into full A-elements.
    let j_units: Vec<usize> = j
        .members()
        .iter()
        .flat_map(|&beta| {
            let n = a.blocks()[beta];
            (0..n * n).map(move |local| a.unit_index(beta, local / n, local % n))
        })
        .collect();
    if j_units.is_empty() {
        // Zero compacts: the empty ideal carries the zero inner product.
        let entries = vec![a.zero_element(); k * k];
        decision.left_inner_product = Some(LeftInnerProduct::new(a.clone(), k, entries)?);
        decision.solve_residual = Some(0.0);
        decision.bimod_residual = Some(0.0);
        return Ok(decision);
    }
    let j_images: Vec<ComplexMatrix> = j_units
        .iter()
        .map(|&u| c.phi_maps()[u].action().clone())
        .collect();
    let system = stacked_images(&j_images, k);
    let (coords, residuals) = solve_preimages(&system, &thetas, k, tol.rank)?;
    let solve_residual = residuals.iter().copied().fold(0.0, f64::max);
    let mut entries = Vec::with_capacity(k * k);
    for pair in 0..k * k {
        let mut full = vec![C64::new(0.0, 0.0); a.dim()];
        for (row, &u) in j_units.iter().enumerate() {
            full[u] = coords.at(row, pair);
        }
        entries.push(a.from_coords(&full)?);
    }
    let lip = LeftInnerProduct::new(a.clone(), k, entries)?;

    let mut bimod_residual: f64 = 0.0;
    for i in 0..k {
        for jj in 0..k {
            let entry = lip.entry(i, jj);
            for l in 0..k {
                let lhs = c.apply_left(entry, c.module().basis_element(l))?;
                let xj_adj = c.module().basis_element(jj).adjoint();
                let rhs = c
                    .module()
                    .basis_element(i)
                    .mul(&xj_adj.mul(c.module().basis_element(l))?)?;
                bimod_residual = bimod_residual.max(lhs.sub(&rhs)?.op_norm());
            }
        }
    }

    decision.left_inner_product = Some(lip);
    decision.solve_residual = Some(solve_residual);
    decision.bimod_residual = Some(bimod_residual);
    Ok(decision)
}
