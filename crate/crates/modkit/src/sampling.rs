//! Seeded random generators for modules, maps, and correspondences.
//!
//! Over a block algebra with its identity representation, the concrete
//! modules of the kind handled here are exactly parameterized by a choice of
//! pairwise-orthogonal "fiber" subspaces `W_β ⊆ H1`, one per block: the
//! module is `⊕_β { x : ran(x|_{V_β}) ⊆ W_β }`. Drawing a random unitary
//! frame for the fibers therefore samples valid modules with the closure
//! axioms holding by construction, and the fibers double as an independent
//! structural oracle for the computed compacts and idealizers
//! (`K = L = ⊕_β L(W_β)` when every fiber is hit).
//!
//! Left actions are sampled as multiplicity embeddings `A → ⊕_β M_{w_β}`
//! conjugated by random unitaries, which keeps the generator relations exact
//! up to rounding and gives precise control over planted kernel blocks and
//! over nondegeneracy of the action.

use rand::{Rng, RngExt, SeedableRng};
pub use rand_chacha::ChaCha8Rng;

use crate::algebra::CStarAlgebra;
use crate::correspondence::Correspondence;
use crate::linalg::{ComplexMatrix, HilbertSpace, OperatorSubspace, Tolerances, C64};
use crate::module::{ConcreteModule, ModuleMap};
use crate::Result;

/// Deterministic generator with a fixed stream for reproducible tests.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform integer in `lo..=hi`.
pub fn random_size<R: Rng + ?Sized>(rng: &mut R, lo: usize, hi: usize) -> usize {
    rng.random_range(lo..=hi)
}

/// Standard complex Gaussian via Box–Muller.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random();
    let r = (-2.0 * u1.ln()).sqrt();
    let angle = std::f64::consts::TAU * u2;
    C64::new(
        r * angle.cos() / std::f64::consts::SQRT_2,
        r * angle.sin() / std::f64::consts::SQRT_2,
    )
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| random_complex(rng))
}

/// Haar-like random unitary from Gram–Schmidt on a Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    if n == 0 {
        return ComplexMatrix::zeros(0, 0);
    }
    loop {
        let g = random_matrix(rng, n, n);
        let mut columns: Vec<Vec<C64>> = Vec::with_capacity(n);
        let mut ok = true;
        for j in 0..n {
            let mut v = g.column(j);
            for existing in &columns {
                let mut overlap = C64::new(0.0, 0.0);
                for (e, x) in existing.iter().zip(&v) {
                    overlap += e.conj() * x;
                }
                for (x, e) in v.iter_mut().zip(existing) {
                    *x -= overlap * e;
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-6 {
                ok = false;
                break;
            }
            for x in v.iter_mut() {
                *x /= C64::new(norm, 0.0);
            }
            columns.push(v);
        }
        if ok {
            return ComplexMatrix::from_fn(n, n, |i, j| columns[j][i]);
        }
    }
}

/// Shape of a random module: block sizes of the acting algebra, one fiber
/// dimension per block, and extra unused dimensions of `H1`.
#[derive(Clone, Debug)]
pub struct ModuleProfile {
    pub blocks: Vec<usize>,
    pub fibers: Vec<usize>,
    pub extra_h1: usize,
}

/// A sampled module together with its fiber frame (orthonormal columns of
/// `H1` spanning each `W_β`), kept for structural oracles and for building
/// left actions.
#[derive(Clone, Debug)]
pub struct RandomModule {
    pub module: ConcreteModule,
    pub fiber_bases: Vec<ComplexMatrix>,
}

/// Samples a module with the given profile. Nondegenerate exactly when
/// `extra_h1 = 0`.
pub fn random_module_with<R: Rng + ?Sized>(
    rng: &mut R,
    profile: &ModuleProfile,
    tol: &Tolerances,
) -> Result<RandomModule> {
    assert_eq!(profile.blocks.len(), profile.fibers.len());
    let algebra = CStarAlgebra::identity_rep(profile.blocks.clone());
    let h0: usize = profile.blocks.iter().sum();
    let h1: usize = profile.fibers.iter().sum::<usize>() + profile.extra_h1;
    let frame = random_unitary(rng, h1);
    let mut fiber_bases = Vec::with_capacity(profile.fibers.len());
    let mut basis = Vec::new();
    let mut fiber_offset = 0;
    let mut col_offset = 0;
    for (&n, &w) in profile.blocks.iter().zip(&profile.fibers) {
        let fiber = ComplexMatrix::from_fn(h1, w, |i, j| frame.at(i, fiber_offset + j));
        for wj in 0..w {
            for v in 0..n {
                basis.push(ComplexMatrix::from_fn(h1, h0, |r, c| {
                    if c == col_offset + v {
                        fiber.at(r, wj)
                    } else {
                        C64::new(0.0, 0.0)
                    }
                }));
            }
        }
        fiber_bases.push(fiber);
        fiber_offset += w;
        col_offset += n;
    }
    let space = OperatorSubspace::from_orthonormal(
        HilbertSpace::new(h0),
        HilbertSpace::new(h1),
        basis,
        tol,
    )?;
    let module = ConcreteModule::validate(space, algebra, *tol)?;
    Ok(RandomModule {
        module,
        fiber_bases,
    })
}

/// Samples a small nondegenerate module with random blocks and fibers.
pub fn random_module<R: Rng + ?Sized>(rng: &mut R, tol: &Tolerances) -> RandomModule {
    let block_count = rng.random_range(1..=2usize);
    let blocks: Vec<usize> = (0..block_count)
        .map(|_| rng.random_range(1..=3usize))
        .collect();
    let fibers: Vec<usize> = (0..block_count)
        .map(|_| rng.random_range(1..=2usize))
        .collect();
    let profile = ModuleProfile {
        blocks,
        fibers,
        extra_h1: 0,
    };
    random_module_with(rng, &profile, tol).expect("structural sampler produces valid modules")
}

/// Random element as a Gaussian combination of the basis.
pub fn random_element<R: Rng + ?Sized>(rng: &mut R, m: &ConcreteModule) -> ComplexMatrix {
    let coords: Vec<C64> = (0..m.dim()).map(|_| random_complex(rng)).collect();
    m.from_coords(&coords).expect("coordinate count matches")
}

/// Random adjointable map: a Gaussian combination of rank-one maps.
pub fn random_adjointable<R: Rng + ?Sized>(rng: &mut R, m: &ConcreteModule) -> Result<ModuleMap> {
    if m.dim() == 0 {
        return Ok(ModuleMap::zero(0));
    }
    let terms = 3.min(m.dim());
    let mut maps = Vec::with_capacity(terms);
    let mut coeffs = Vec::with_capacity(terms);
    for _ in 0..terms {
        let x = random_element(rng, m);
        let y = random_element(rng, m);
        maps.push(m.rank_one(&x, &y)?);
        coeffs.push(random_complex(rng));
    }
    ModuleMap::linear_combination(&maps, &coeffs)
}

/// Shape of a random correspondence on top of a random module.
#[derive(Clone, Debug)]
pub struct CorrespondenceProfile {
    /// Block sizes of the left algebra `A`.
    pub left_blocks: Vec<usize>,
    /// Block sizes of the right algebra `B`.
    pub right_blocks: Vec<usize>,
    /// Annihilate the first block of `A` (plants a kernel).
    pub kill_first_block: bool,
    /// Make the embedding multiplicities saturate every fiber, so that
    /// `φ(A)X` has full module rank.
    pub fill: bool,
}

/// A sampled correspondence with the concrete operators realizing the left
/// action on `H1`, kept for oracle-style cross checks.
#[derive(Clone, Debug)]
pub struct RandomCorrespondence {
    pub correspondence: Correspondence,
    pub source: RandomModule,
    pub phi_concrete: Vec<ComplexMatrix>,
}

/// Samples a correspondence by embedding `A` into `⊕_β L(W_β)` with random
/// multiplicities and a random basis rotation of each fiber.
pub fn random_correspondence<R: Rng + ?Sized>(
    rng: &mut R,
    profile: &CorrespondenceProfile,
    tol: &Tolerances,
) -> Result<RandomCorrespondence> {
    let a = CStarAlgebra::identity_rep(profile.left_blocks.clone());
    let n_alpha = profile.left_blocks.len();
    let n_beta = profile.right_blocks.len();

    // Multiplicity matrix μ[β][α]; fibers grow to fit Σ_α μ·m_α (+ slack).
    let mut mu = vec![vec![0usize; n_alpha]; n_beta];
    for alpha in 0..n_alpha {
        if profile.kill_first_block && alpha == 0 {
            continue;
        }
        // Keep φ injective on this block: at least one fiber hosts a copy.
        let host = rng.random_range(0..n_beta);
        mu[host][alpha] = 1;
        for (beta, row) in mu.iter_mut().enumerate() {
            if beta != host && rng.random::<f64>() < 0.3 {
                row[alpha] += 1;
            }
        }
    }
    let mut fibers: Vec<usize> = mu
        .iter()
        .map(|row| {
            let used: usize = row
                .iter()
                .zip(&profile.left_blocks)
                .map(|(&m, &s)| m * s)
                .sum();
            let pad = if profile.fill {
                0
            } else {
                usize::from(rng.random::<f64>() < 0.4)
            };
            used + pad
        })
        .collect();
    if fibers.iter().sum::<usize>() == 0 {
        // Keep the module itself nonzero even when φ annihilates everything.
        fibers[0] = 1;
    }

    let module_profile = ModuleProfile {
        blocks: profile.right_blocks.clone(),
        fibers,
        extra_h1: 0,
    };
    let source = random_module_with(rng, &module_profile, tol)?;
    let module = source.module.clone();
    let h1 = module.h1().dim;

    // Rotations within each fiber.
    let rotations: Vec<ComplexMatrix> = source
        .fiber_bases
        .iter()
        .map(|f| random_unitary(rng, f.cols()))
        .collect();

    let mut phi_concrete = Vec::with_capacity(a.dim());
    let mut actions = Vec::with_capacity(a.dim());
    for u in 0..a.dim() {
        let (alpha, i, j) = a.unit_position(u);
        let mut op = ComplexMatrix::zeros(h1, h1);
        for beta in 0..n_beta {
            let w = source.fiber_bases[beta].cols();
            if w == 0 {
                continue;
            }
            // Block-diagonal multiplicity embedding inside the fiber.
            let mut local = ComplexMatrix::zeros(w, w);
            let mut offset = 0;
            for (alpha2, &m_size) in profile.left_blocks.iter().enumerate() {
                for _ in 0..mu[beta][alpha2] {
                    if alpha2 == alpha {
                        let unit = ComplexMatrix::matrix_unit(w, w, offset + i, offset + j);
                        local = local.add(&unit)?;
                    }
                    offset += m_size;
                }
            }
            let rotated = rotations[beta]
                .mul(&local)?
                .mul(&rotations[beta].adjoint())?;
            let lifted = source.fiber_bases[beta]
                .mul(&rotated)?
                .mul(&source.fiber_bases[beta].adjoint())?;
            op = op.add(&lifted)?;
        }
        let mut cols = Vec::with_capacity(module.dim());
        for x in module.space().basis() {
            cols.push(module.coords(&op.mul(x)?)?);
        }
        actions.push(ComplexMatrix::from_fn(
            module.dim(),
            module.dim(),
            |r, c| cols[c][r],
        ));
        phi_concrete.push(op);
    }
    let correspondence = Correspondence::new(module, a, actions)?;
    Ok(RandomCorrespondence {
        correspondence,
        source,
        phi_concrete,
    })
}

/// Small random correspondence with sensible default block sizes.
pub fn small_random_correspondence<R: Rng + ?Sized>(
    rng: &mut R,
    kill_first_block: bool,
    fill: bool,
    tol: &Tolerances,
) -> Result<RandomCorrespondence> {
    // A planted kernel needs a second block that keeps acting.
    let left_count = if kill_first_block {
        2
    } else {
        rng.random_range(1..=2usize)
    };
    let left_blocks: Vec<usize> = (0..left_count)
        .map(|_| rng.random_range(1..=2usize))
        .collect();
    let right_blocks: Vec<usize> = (0..rng.random_range(1..=2usize))
        .map(|_| rng.random_range(1..=2usize))
        .collect();
    let profile = CorrespondenceProfile {
        left_blocks,
        right_blocks,
        kill_first_block,
        fill,
    };
    random_correspondence(rng, &profile, tol)
}
