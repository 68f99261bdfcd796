//! Acceptance suite: one test per criterion, each printing a pass line with
//! the measured extremes (visible with `-- --nocapture`). Tolerances are
//! pinned in the assertions.

use modkit::algebra::CStarAlgebra;
use modkit::correspondence::{
    bimodule_criterion, build_representation, faithfulness_check, ideal_criterion, interior_tensor,
    tensor_representation, verify_representation, Correspondence,
};
use modkit::linalg::{ComplexMatrix, HilbertSpace, OperatorSubspace, Tolerances, C64};
use modkit::module::{ConcreteModule, ModuleMap};
use modkit::opspaces::{
    adjointable_dimension_gap, adjointables, amplify_map, compacts, solve_intertwiner,
};
use modkit::sampling::{
    self, random_adjointable, random_element, random_module, small_random_correspondence,
    RandomCorrespondence,
};

#[path = "common/fixtures.rs"]
mod fixtures;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn column_module(d: usize) -> ConcreteModule {
    let scalars = CStarAlgebra::identity_rep(vec![1]);
    let space = OperatorSubspace::full(HilbertSpace::new(1), HilbertSpace::new(d));
    ConcreteModule::validate(space, scalars, tol()).unwrap()
}

/// Scalars acting on the column module C^d.
fn scalar_on_columns(d: usize) -> Correspondence {
    let module = column_module(d);
    let scalars = CStarAlgebra::identity_rep(vec![1]);
    Correspondence::new(module, scalars, vec![ComplexMatrix::identity(d)]).unwrap()
}

/// M_d acting by multiplication on the column module C^d.
fn matrices_on_columns(d: usize) -> Correspondence {
    let module = column_module(d);
    let a = CStarAlgebra::identity_rep(vec![d]);
    let actions = a.identity_rep_matrices();
    Correspondence::new(module, a, actions).unwrap()
}

/// Random finite-rank combination `Σ c θ_{x,y}` with its concrete
/// counterpart `Σ c x y*`.
fn random_finite_rank(
    rng: &mut sampling::ChaCha8Rng,
    m: &ConcreteModule,
) -> (ModuleMap, ComplexMatrix) {
    let terms = 3;
    let mut maps = Vec::with_capacity(terms);
    let mut coeffs = Vec::with_capacity(terms);
    let mut concrete = ComplexMatrix::zeros(m.h1().dim, m.h1().dim);
    for _ in 0..terms {
        let x = random_element(rng, m);
        let y = random_element(rng, m);
        let c = sampling::random_complex(rng);
        maps.push(m.rank_one(&x, &y).unwrap());
        coeffs.push(c);
        concrete = concrete
            .add(&x.mul(&y.adjoint()).unwrap().scale(c))
            .unwrap();
    }
    (
        ModuleMap::linear_combination(&maps, &coeffs).unwrap(),
        concrete,
    )
}

#[test]
fn criterion_01_cstar_norm_identity() {
    let mut rng = sampling::seeded(101);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let rm = random_module(&mut rng, &tol());
        for _ in 0..10 {
            let x = random_element(&mut rng, &rm.module);
            let n = x.op_norm();
            let gram = x.adjoint().mul(&x).unwrap().op_norm();
            worst = worst.max((n * n - gram).abs());
        }
    }
    println!("criterion 01 C*-norm identity: PASS (worst |‖x‖²−‖x*x‖| = {worst:.3e})");
    assert!(worst < 1e-8);
}

#[test]
fn criterion_02_compacts_isomorphism() {
    let mut rng = sampling::seeded(102);
    let mut modules: Vec<ConcreteModule> = vec![];
    for d in [2usize, 3, 4] {
        let m = column_module(d);
        assert_eq!(compacts(&m).unwrap().dim(), d * d, "dim K(C^{d}) ≠ d²");
        modules.push(m);
    }
    for _ in 0..10 {
        modules.push(random_module(&mut rng, &tol()).module);
    }
    let mut product_worst: f64 = 0.0;
    let mut norm_worst: f64 = 0.0;
    for m in &modules {
        let mut previous: Option<(ModuleMap, ComplexMatrix)> = None;
        for _ in 0..50 {
            let (theta, concrete) = random_finite_rank(&mut rng, m);
            let scale = concrete.op_norm().max(1e-12);
            norm_worst = norm_worst.max((m.map_norm(&theta) - concrete.op_norm()).abs() / scale);
            if let Some((prev_theta, prev_concrete)) = previous.take() {
                // θ_a θ_b and (ab) act identically on the module.
                let composed = prev_theta.compose(&theta).unwrap();
                let product = prev_concrete.mul(&concrete).unwrap();
                for l in 0..m.dim() {
                    let z = m.basis_element(l);
                    let via_maps = m.apply_map(&composed, z).unwrap();
                    let via_product = product.mul(z).unwrap();
                    product_worst =
                        product_worst.max(via_maps.sub(&via_product).unwrap().op_norm());
                }
            }
            previous = Some((theta, concrete));
        }
    }
    println!(
        "criterion 02 compacts isomorphism: PASS (product residual {product_worst:.3e}, norm rel. error {norm_worst:.3e})"
    );
    assert!(product_worst < 1e-8);
    assert!(norm_worst < 1e-6);
}

#[test]
fn criterion_03_adjointables_idealizer() {
    let mut rng = sampling::seeded(103);
    let mut round_trip_worst: f64 = 0.0;
    let mut norm_bound_worst: f64 = 0.0;
    let mut random_maps = 0;
    for _ in 0..10 {
        let rm = random_module(&mut rng, &tol());
        let l = adjointables(&rm.module).unwrap();
        for b in l.idealizer().basis() {
            // τ then τ⁻¹ must return to the same concrete operator …
            let t = l.tau(&rm.module, b).unwrap();
            let back = l.tau_inverse(&rm.module, &t).unwrap();
            round_trip_worst = round_trip_worst.max(back.sub(b).unwrap().op_norm());
            // … and τ of that operator must return the same module map.
            let again = l.tau(&rm.module, &back).unwrap();
            round_trip_worst =
                round_trip_worst.max(again.action().sub(t.action()).unwrap().op_norm());
        }
        for _ in 0..10 {
            let t = random_adjointable(&mut rng, &rm.module).unwrap();
            let (b_t, residual) = solve_intertwiner(&rm.module, &t).unwrap();
            assert!(residual < 1e-8, "intertwiner system inconsistent");
            norm_bound_worst = norm_bound_worst.max(b_t.op_norm() - rm.module.map_norm(&t));
            random_maps += 1;
        }
    }
    assert_eq!(random_maps, 100);
    println!(
        "criterion 03 adjointables idealizer: PASS (round trip {round_trip_worst:.3e}, ‖b_t‖−‖t‖ ≤ {norm_bound_worst:.3e})"
    );
    assert!(round_trip_worst < 1e-8);
    assert!(norm_bound_worst < 1e-8);
}

#[test]
fn criterion_04_amplification_and_gap() {
    for n in [2usize, 3] {
        let gap = adjointable_dimension_gap(n, &tol()).unwrap();
        assert_eq!(gap.row_adjointables_dim, 1, "dim over M_{n} must be 1");
        assert_eq!(
            gap.column_adjointables_dim,
            n * n,
            "dim over the scalars must be n²"
        );
    }
    let mut rng = sampling::seeded(104);
    let mut adjoint_worst: f64 = 0.0;
    for _ in 0..20 {
        let rm = random_module(&mut rng, &tol());
        let t = random_adjointable(&mut rng, &rm.module).unwrap();
        for n in [2usize, 3] {
            let lhs = amplify_map(&t, n).adjoint();
            let rhs = amplify_map(&t.adjoint(), n);
            adjoint_worst = adjoint_worst.max(lhs.action().sub(rhs.action()).unwrap().op_norm());
        }
    }
    println!(
        "criterion 04 amplification and dimension gap: PASS (κ(t)*−κ(t*) = {adjoint_worst:.3e})"
    );
    assert!(adjoint_worst < 1e-8);
}

#[test]
fn criterion_05_contraction_bound() {
    let mut rng = sampling::seeded(105);
    let mut min_eig_worst = f64::INFINITY;
    for _ in 0..100 {
        let rm = random_module(&mut rng, &tol());
        let t = random_adjointable(&mut rng, &rm.module).unwrap();
        let x = random_element(&mut rng, &rm.module);
        let tx = rm.module.apply_map(&t, &x).unwrap();
        let lhs = tx.adjoint().mul(&tx).unwrap();
        let norm = rm.module.map_norm(&t);
        let rhs = x
            .adjoint()
            .mul(&x)
            .unwrap()
            .scale(C64::new(norm * norm, 0.0));
        let min_eig = rhs
            .sub(&lhs)
            .unwrap()
            .hermitian_eigenvalues()
            .unwrap()
            .first()
            .copied()
            .unwrap_or(0.0);
        min_eig_worst = min_eig_worst.min(min_eig);
        assert!(rm.module.contraction_bound_check(&t, &x).unwrap());
    }
    println!("criterion 05 contraction bound: PASS (worst min eigenvalue {min_eig_worst:.3e})");
    assert!(min_eig_worst >= -1e-8);
}

#[test]
fn criterion_06_representation_builder() {
    let mut rng = sampling::seeded(106);
    let mut cco_worst: f64 = 0.0;
    let mut isometry_worst: f64 = 0.0;
    for trial in 0..20 {
        let fill = trial % 2 == 0;
        let rc: RandomCorrespondence =
            small_random_correspondence(&mut rng, false, fill, &tol()).unwrap();
        let c = &rc.correspondence;
        let rho = c.module().algebra().identity_rep_matrices();
        let triple = build_representation(c, &rho).unwrap();
        let report = verify_representation(c, &triple).unwrap();
        cco_worst = cco_worst.max(report.cco1).max(report.cco2).max(report.cco3);
        isometry_worst = isometry_worst.max(report.isometry_defect);
        assert!(report.pi_range_full, "π(X)H0 must span H1");
        if c.left_action_nondegenerate() {
            assert!(
                report.lambda_nondegenerate,
                "λ must be nondegenerate when φ(A)X has full rank"
            );
        }
    }
    println!(
        "criterion 06 representation builder: PASS (compatibility residual {cco_worst:.3e}, isometry defect {isometry_worst:.3e})"
    );
    assert!(cco_worst < 1e-8);
    assert!(isometry_worst < 1e-8);
}

#[test]
fn criterion_07_faithfulness_equivalence() {
    let mut rng = sampling::seeded(107);
    let mut misclassified = 0;
    for trial in 0..20 {
        let kill = trial % 2 == 0;
        let rc = small_random_correspondence(&mut rng, kill, true, &tol()).unwrap();
        let c = &rc.correspondence;
        let rho = c.module().algebra().identity_rep_matrices();
        let triple = build_representation(c, &rho).unwrap();
        let report = faithfulness_check(c, &triple, true).unwrap();
        if report.lambda_faithful != report.phi_injective {
            misclassified += 1;
        }
        assert_eq!(
            report.phi_injective, !kill,
            "planted kernel must decide injectivity"
        );
    }
    println!(
        "criterion 07 faithfulness equivalence: PASS ({misclassified} misclassifications in 20 trials)"
    );
    assert_eq!(misclassified, 0);
}

#[test]
fn criterion_08_bimodule_criterion() {
    for d in [2usize, 3] {
        let decision = bimodule_criterion(&scalar_on_columns(d)).unwrap();
        assert!(!decision.holds, "scalars on C^{d} must fail the criterion");
    }
    let mut bimod_worst: f64 = 0.0;
    let mut uniqueness_worst: f64 = 0.0;
    let one = bimodule_criterion(&scalar_on_columns(1)).unwrap();
    assert!(one.holds, "the line is a bimodule over the scalars");
    bimod_worst = bimod_worst.max(one.bimod_residual.unwrap());
    uniqueness_worst = uniqueness_worst.max(one.uniqueness_residual.unwrap());
    for d in [2usize, 3] {
        let decision = bimodule_criterion(&matrices_on_columns(d)).unwrap();
        assert!(decision.holds, "M_{d} on C^{d} must pass the criterion");
        bimod_worst = bimod_worst.max(decision.bimod_residual.unwrap());
        uniqueness_worst = uniqueness_worst.max(decision.uniqueness_residual.unwrap());
        assert!(decision.norm_residual.unwrap() < 1e-8);
    }
    println!(
        "criterion 08 bimodule criterion: PASS (bimodule identity {bimod_worst:.3e}, uniqueness {uniqueness_worst:.3e})"
    );
    assert!(bimod_worst < 1e-8);
    assert!(uniqueness_worst < 1e-8);
}

#[test]
fn criterion_09_ideal_criterion() {
    // C ⊕ M_2 with the scalar block killed: the matrix block is the ideal.
    let module = column_module(2);
    let a = CStarAlgebra::identity_rep(vec![1, 2]);
    let mut actions = vec![ComplexMatrix::zeros(2, 2)];
    actions.extend(CStarAlgebra::identity_rep(vec![2]).identity_rep_matrices());
    let c = Correspondence::new(module, a, actions).unwrap();
    let decision = ideal_criterion(&c).unwrap();
    let ideal = decision.ideal.expect("two-block instance has an ideal");
    assert_eq!(
        ideal.members().iter().copied().collect::<Vec<_>>(),
        vec![1],
        "the second block carries the compacts"
    );

    let none = ideal_criterion(&scalar_on_columns(2)).unwrap();
    assert!(none.ideal.is_none(), "scalars on C² admit no such ideal");
    println!(
        "criterion 09 ideal criterion: PASS (two-block instance selects block 2; scalar action selects none)"
    );
}

#[test]
fn criterion_10_interior_tensor() {
    for (m, n) in [(2usize, 2usize), (2, 3), (3, 3)] {
        let t = interior_tensor(&scalar_on_columns(m), &scalar_on_columns(n)).unwrap();
        assert_eq!(t.dim(), m * n, "dim C^m ⊗ C^n must be mn");
    }

    let mut rng = sampling::seeded(110);
    let mut balancing_worst: f64 = 0.0;
    let mut cco_worst: f64 = 0.0;
    let mut span_worst: f64 = 0.0;
    let mut isometry_worst: f64 = 0.0;
    let mut triples = 0;
    for _ in 0..4 {
        // Composable pair: the right algebra of X is the left algebra of Y.
        let middle: Vec<usize> = (0..sampling::random_size(&mut rng, 1, 2))
            .map(|_| sampling::random_size(&mut rng, 1, 2))
            .collect();
        let x_profile = sampling::CorrespondenceProfile {
            left_blocks: vec![sampling::random_size(&mut rng, 1, 2)],
            right_blocks: middle.clone(),
            kill_first_block: false,
            fill: true,
        };
        let y_profile = sampling::CorrespondenceProfile {
            left_blocks: middle,
            right_blocks: vec![1],
            kill_first_block: false,
            fill: true,
        };
        let xc = sampling::random_correspondence(&mut rng, &x_profile, &tol()).unwrap();
        let yc = sampling::random_correspondence(&mut rng, &y_profile, &tol()).unwrap();
        let x = &xc.correspondence;
        let y = &yc.correspondence;
        let tensor = interior_tensor(x, y).unwrap();
        let b_algebra = x.module().algebra();
        for _ in 0..25 {
            let x_coords: Vec<C64> = (0..tensor.left_dim())
                .map(|_| sampling::random_complex(&mut rng))
                .collect();
            let y_coords: Vec<C64> = (0..tensor.right_dim())
                .map(|_| sampling::random_complex(&mut rng))
                .collect();
            let b_coords: Vec<C64> = (0..b_algebra.dim())
                .map(|_| sampling::random_complex(&mut rng))
                .collect();
            let b = b_algebra.from_coords(&b_coords).unwrap();
            balancing_worst = balancing_worst.max(
                tensor
                    .balancing_residual(x, y, &x_coords, &b, &y_coords)
                    .unwrap(),
            );
            triples += 1;
        }
        let rho_c = y.module().algebra().identity_rep_matrices();
        let rep = tensor_representation(x, y, &rho_c).unwrap();
        cco_worst = cco_worst.max(rep.cco1).max(rep.cco2).max(rep.cco3);
        span_worst = span_worst.max(rep.span_distance);
        isometry_worst = isometry_worst.max(rep.isometry_defect);
    }
    assert_eq!(triples, 100);
    println!(
        "criterion 10 interior tensor: PASS (balancing {balancing_worst:.3e}, compatibility {cco_worst:.3e}, span {span_worst:.3e}, isometry {isometry_worst:.3e})"
    );
    assert!(balancing_worst < 1e-8);
    assert!(cco_worst < 1e-8);
    assert!(span_worst < 1e-8);
    assert!(isometry_worst < 1e-8);
}

#[test]
fn criterion_11_cli_regression() {
    let failures = fixtures::compare_fixtures();
    println!(
        "criterion 11 CLI regression: {} ({} fixtures compared byte for byte)",
        if failures.is_empty() { "PASS" } else { "FAIL" },
        fixtures::FIXTURES.len()
    );
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
