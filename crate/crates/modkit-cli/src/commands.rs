//! One runner per subcommand. Runners return `Err` only for input problems
//! (missing ids, malformed matrices); mathematical failures become failed
//! checks inside the report so the exit-status contract holds.

use std::collections::BTreeMap;

use modkit::algebra::CStarAlgebra;
use modkit::correspondence::{
    bimodule_criterion, build_representation, faithfulness_check, ideal_criterion,
    tensor_representation, verify_representation, Correspondence, RepresentationTriple,
};
use modkit::instance::{self, InstanceFile, MatrixSpec};
use modkit::linalg::{ComplexMatrix, Tolerances};
use modkit::module::ConcreteModule;
use modkit::opspaces;
use modkit::sampling;
use modkit::{Error, Result};

use crate::report::Report;

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Instance(_)
            | Error::EntryCount { .. }
            | Error::ShapeMismatch { .. }
            | Error::NotSquare { .. }
    )
}

/// Splits an error into "input problem" (propagated, exit 2) versus
/// "mathematical failure" (returned for a failed check).
fn math_failure(e: Error) -> Result<Error> {
    if is_input_error(&e) {
        Err(e)
    } else {
        Ok(e)
    }
}

fn error_residual(e: &Error) -> Option<f64> {
    match e {
        Error::NotSelfAdjoint { residual }
        | Error::NotOrthonormal { residual }
        | Error::NotInSubspace { residual }
        | Error::ClosureViolation { residual, .. }
        | Error::NotStarHomomorphism { residual, .. }
        | Error::NotAdjointable { residual }
        | Error::InconsistentSystem { residual, .. }
        | Error::DegenerateRepresentation { residual } => Some(*residual),
        _ => None,
    }
}

pub fn validate(parsed: &InstanceFile, tol: &Tolerances, instance: &str) -> Result<Report> {
    let mut report = Report::new("validate", instance);
    let mut algebras: BTreeMap<String, CStarAlgebra> = BTreeMap::new();
    for (id, spec) in &parsed.algebras {
        match instance::build_algebra(id, spec, tol) {
            Ok(algebra) => {
                let residual = algebra.representation_residual(algebra.unit_images())?;
                report.check(
                    format!("algebra '{id}': generator relations"),
                    residual <= tol.eq,
                    Some(residual),
                    format!("blocks {:?}", algebra.blocks()),
                );
                report.check(
                    format!("algebra '{id}': faithful embedding"),
                    algebra.rep_faithful(algebra.unit_images()),
                    None,
                    String::new(),
                );
                let defect = algebra.rep_unit_defect(algebra.unit_images());
                report.check(
                    format!("algebra '{id}': nondegenerate embedding"),
                    defect <= tol.eq,
                    Some(defect),
                    String::new(),
                );
                algebras.insert(id.clone(), algebra);
            }
            Err(e) => {
                let e = math_failure(e)?;
                report.check(
                    format!("algebra '{id}': valid"),
                    false,
                    error_residual(&e),
                    e.to_string(),
                );
            }
        }
    }

    let mut modules: BTreeMap<String, ConcreteModule> = BTreeMap::new();
    for (id, spec) in &parsed.modules {
        if !parsed.algebras.contains_key(&spec.algebra) {
            return Err(Error::Instance(format!(
                "module '{id}' references unknown algebra '{}'",
                spec.algebra
            )));
        }
        let Some(algebra) = algebras.get(&spec.algebra) else {
            report.check(
                format!("module '{id}': acting algebra available"),
                false,
                None,
                format!("algebra '{}' failed validation", spec.algebra),
            );
            continue;
        };
        if spec.h0 == 0 || spec.h1 == 0 {
            return Err(Error::Instance(format!(
                "module '{id}' requires positive Hilbert-space dimensions"
            )));
        }
        let space = instance::build_space(spec, tol)?;
        report.check(
            format!("module '{id}': basis"),
            true,
            Some(space.gram_residual()),
            format!("dimension {}", space.dim()),
        );
        let check = ConcreteModule::check(&space, algebra, tol)?;
        if !check.domain_matches {
            report.check(
                format!("module '{id}': domain matches the algebra"),
                false,
                None,
                format!(
                    "H0 = {}, algebra acts on dimension {}",
                    spec.h0,
                    algebra.rep_space().dim
                ),
            );
            continue;
        }
        let (ri, rj, rres) = check.right_action_worst.unwrap_or((0, 0, 0.0));
        report.check(
            format!("module '{id}': right-action closure"),
            check.right_action_ok,
            Some(rres),
            format!("worst pair: basis {ri}, generator {rj}"),
        );
        let (ii, ij, ires) = check.inner_product_worst.unwrap_or((0, 0, 0.0));
        report.check(
            format!("module '{id}': inner-product closure"),
            check.inner_product_ok,
            Some(ires),
            format!("worst pair: basis {ii}, basis {ij}"),
        );
        if check.ok() {
            let module = ConcreteModule::validate(space, algebra.clone(), *tol)?;
            report.check(
                format!("module '{id}': range"),
                true,
                None,
                format!(
                    "X·H0 spans {} of {} dimensions",
                    module.range_rank(),
                    spec.h1
                ),
            );
            modules.insert(id.clone(), module);
        }
    }

    for (id, spec) in &parsed.correspondences {
        if !parsed.modules.contains_key(&spec.module) {
            return Err(Error::Instance(format!(
                "correspondence '{id}' references unknown module '{}'",
                spec.module
            )));
        }
        if !parsed.algebras.contains_key(&spec.left_algebra) {
            return Err(Error::Instance(format!(
                "correspondence '{id}' references unknown algebra '{}'",
                spec.left_algebra
            )));
        }
        let (Some(module), Some(left)) =
            (modules.get(&spec.module), algebras.get(&spec.left_algebra))
        else {
            report.check(
                format!("correspondence '{id}': prerequisites valid"),
                false,
                None,
                "a referenced section failed validation".to_string(),
            );
            continue;
        };
        let actions = spec
            .phi
            .iter()
            .map(|m| m.to_matrix())
            .collect::<Result<Vec<_>>>()?;
        match Correspondence::new(module.clone(), left.clone(), actions) {
            Ok(c) => {
                report.check(
                    format!("correspondence '{id}': left action"),
                    true,
                    None,
                    format!(
                        "adjointable *-homomorphism; nondegenerate action: {}",
                        c.left_action_nondegenerate()
                    ),
                );
            }
            Err(e) => {
                let e = math_failure(e)?;
                report.check(
                    format!("correspondence '{id}': left action"),
                    false,
                    error_residual(&e),
                    e.to_string(),
                );
            }
        }
    }

    for (id, spec) in &parsed.representations {
        if !parsed.algebras.contains_key(&spec.algebra) {
            return Err(Error::Instance(format!(
                "representation '{id}' references unknown algebra '{}'",
                spec.algebra
            )));
        }
        let Some(algebra) = algebras.get(&spec.algebra) else {
            report.check(
                format!("representation '{id}': algebra available"),
                false,
                None,
                format!("algebra '{}' failed validation", spec.algebra),
            );
            continue;
        };
        let mats = spec
            .rho
            .iter()
            .map(|m| m.to_matrix())
            .collect::<Result<Vec<_>>>()?;
        match algebra.representation_residual(&mats) {
            Ok(residual) => {
                report.check(
                    format!("representation '{id}': generator relations"),
                    residual <= tol.eq,
                    Some(residual),
                    format!(
                        "faithful: {}, nondegenerate: {}",
                        algebra.rep_faithful(&mats),
                        algebra.rep_nondegenerate(&mats, tol)
                    ),
                );
            }
            Err(e) => {
                let e = math_failure(e)?;
                report.check(
                    format!("representation '{id}': generator relations"),
                    false,
                    error_residual(&e),
                    e.to_string(),
                );
            }
        }
    }

    Ok(report)
}

/// Builds one module (and its algebra) from the file; mathematical failures
/// are reported through the `Report` and yield `None`.
fn resolve_module(
    parsed: &InstanceFile,
    module_id: &str,
    tol: &Tolerances,
    report: &mut Report,
) -> Result<Option<ConcreteModule>> {
    let spec = parsed
        .modules
        .get(module_id)
        .ok_or_else(|| Error::Instance(format!("unknown module '{module_id}'")))?;
    let algebra_spec = parsed.algebras.get(&spec.algebra).ok_or_else(|| {
        Error::Instance(format!(
            "module '{module_id}' references unknown algebra '{}'",
            spec.algebra
        ))
    })?;
    let algebra = match instance::build_algebra(&spec.algebra, algebra_spec, tol) {
        Ok(a) => a,
        Err(e) => {
            let e = math_failure(e)?;
            report.check(
                "precondition: module validates",
                false,
                error_residual(&e),
                e.to_string(),
            );
            return Ok(None);
        }
    };
    match instance::build_module(module_id, spec, &algebra, tol) {
        Ok(m) => Ok(Some(m)),
        Err(e) => {
            let e = math_failure(e)?;
            report.check(
                "precondition: module validates",
                false,
                error_residual(&e),
                e.to_string(),
            );
            Ok(None)
        }
    }
}

fn basis_listing(mats: &[ComplexMatrix]) -> String {
    let specs: Vec<MatrixSpec> = mats.iter().map(MatrixSpec::from_matrix).collect();
    serde_json::to_string(&specs).expect("matrices serialize")
}

pub fn compacts(
    parsed: &InstanceFile,
    module_id: &str,
    tol: &Tolerances,
    show_basis: bool,
    instance: &str,
) -> Result<Report> {
    let mut report = Report::new("compacts", instance);
    let Some(module) = resolve_module(parsed, module_id, tol, &mut report)? else {
        return Ok(report);
    };
    let rank = module.range_rank();
    let full = module.h1().dim;
    report.check(
        "precondition: X·H0 spans H1",
        rank == full,
        None,
        format!("rank {rank} of {full}"),
    );
    if rank != full {
        return Ok(report);
    }
    let k = match opspaces::compacts(&module) {
        Ok(k) => k,
        Err(e) => {
            let e = math_failure(e)?;
            report.check(
                "compacts computed",
                false,
                error_residual(&e),
                e.to_string(),
            );
            return Ok(report);
        }
    };
    report.check(
        "compacts dimension",
        true,
        None,
        format!("dim span{{x y*}} = {}", k.dim()),
    );

    let sample = k.space().basis().iter().take(6).collect::<Vec<_>>();
    let mut product_residual: f64 = 0.0;
    let mut adjoint_residual: f64 = 0.0;
    let mut norm_residual: f64 = 0.0;
    for a in &sample {
        let ta = k.to_module_map(&module, a)?;
        adjoint_residual = adjoint_residual.max(
            k.to_module_map(&module, &a.adjoint())?
                .action()
                .sub(&ta.action().adjoint())?
                .op_norm(),
        );
        norm_residual = norm_residual.max((a.op_norm() - ta.action().op_norm()).abs());
        for b in &sample {
            let tb = k.to_module_map(&module, b)?;
            let tab = k.to_module_map(&module, &a.mul(b)?)?;
            product_residual =
                product_residual.max(ta.action().mul(tb.action())?.sub(tab.action())?.op_norm());
        }
    }
    report.check(
        "isomorphism preserves products",
        product_residual <= tol.eq,
        Some(product_residual),
        String::new(),
    );
    report.check(
        "isomorphism preserves adjoints",
        adjoint_residual <= tol.eq,
        Some(adjoint_residual),
        String::new(),
    );
    report.check(
        "isomorphism preserves norms",
        norm_residual <= 10.0 * tol.eq,
        Some(norm_residual),
        String::new(),
    );
    if show_basis {
        report.check(
            "basis listing",
            true,
            None,
            basis_listing(k.space().basis()),
        );
    }
    Ok(report)
}

pub fn adjointables(
    parsed: &InstanceFile,
    module_id: &str,
    tol: &Tolerances,
    show_basis: bool,
    instance: &str,
) -> Result<Report> {
    let mut report = Report::new("adjointables", instance);
    let Some(module) = resolve_module(parsed, module_id, tol, &mut report)? else {
        return Ok(report);
    };
    let rank = module.range_rank();
    let full = module.h1().dim;
    report.check(
        "precondition: X·H0 spans H1",
        rank == full,
        None,
        format!("rank {rank} of {full}"),
    );
    if rank != full {
        return Ok(report);
    }
    let l = match opspaces::adjointables(&module) {
        Ok(l) => l,
        Err(e) => {
            let e = math_failure(e)?;
            report.check(
                "idealizer computed",
                false,
                error_residual(&e),
                e.to_string(),
            );
            return Ok(report);
        }
    };
    report.check(
        "idealizer dimension",
        true,
        None,
        format!("dim {{b : bX ⊆ X, b*X ⊆ X}} = {}", l.dim()),
    );

    let sample = l.idealizer().basis().iter().take(6).collect::<Vec<_>>();
    let mut hom_residual: f64 = 0.0;
    let mut round_trip: f64 = 0.0;
    let mut norm_bound: f64 = 0.0;
    for b in &sample {
        let t = l.tau(&module, b)?;
        let back = l.tau_inverse(&module, &t)?;
        round_trip = round_trip.max(back.sub(b)?.op_norm());
        norm_bound = norm_bound.max(back.op_norm() - module.map_norm(&t));
        for b2 in &sample {
            let t2 = l.tau(&module, b2)?;
            let direct = l.tau(&module, &b.mul(b2)?)?;
            hom_residual =
                hom_residual.max(t.action().mul(t2.action())?.sub(direct.action())?.op_norm());
        }
    }
    report.check(
        "tau is a *-homomorphism",
        hom_residual <= tol.eq,
        Some(hom_residual),
        String::new(),
    );
    report.check(
        "tau_inverse(tau(b)) = b",
        round_trip <= tol.eq,
        Some(round_trip),
        String::new(),
    );
    report.check(
        "‖b_t‖ ≤ ‖t‖",
        norm_bound <= tol.eq,
        Some(norm_bound.max(0.0)),
        String::new(),
    );

    match opspaces::compacts(&module) {
        Ok(k) => {
            let mut containment: f64 = 0.0;
            for b in k.space().basis() {
                containment = containment.max(l.idealizer().contains(b, tol)?.residual);
            }
            report.check(
                "compacts contained in adjointables",
                containment <= tol.eq,
                Some(containment),
                format!("dim K = {}, dim L = {}", k.dim(), l.dim()),
            );
        }
        Err(e) => {
            let e = math_failure(e)?;
            report.check(
                "compacts contained in adjointables",
                false,
                error_residual(&e),
                e.to_string(),
            );
        }
    }
    if show_basis {
        report.check(
            "basis listing",
            true,
            None,
            basis_listing(l.idealizer().basis()),
        );
    }
    Ok(report)
}

fn resolve_correspondence(
    parsed: &InstanceFile,
    id: &str,
    tol: &Tolerances,
) -> Result<Correspondence> {
    let spec = parsed
        .correspondences
        .get(id)
        .ok_or_else(|| Error::Instance(format!("unknown correspondence '{id}'")))?;
    let module_spec = parsed.modules.get(&spec.module).ok_or_else(|| {
        Error::Instance(format!(
            "correspondence '{id}' references unknown module '{}'",
            spec.module
        ))
    })?;
    let algebra_spec = parsed.algebras.get(&module_spec.algebra).ok_or_else(|| {
        Error::Instance(format!(
            "module '{}' references unknown algebra '{}'",
            spec.module, module_spec.algebra
        ))
    })?;
    let left_spec = parsed.algebras.get(&spec.left_algebra).ok_or_else(|| {
        Error::Instance(format!(
            "correspondence '{id}' references unknown algebra '{}'",
            spec.left_algebra
        ))
    })?;
    let algebra = instance::build_algebra(&module_spec.algebra, algebra_spec, tol)?;
    let module = instance::build_module(&spec.module, module_spec, &algebra, tol)?;
    let left = instance::build_algebra(&spec.left_algebra, left_spec, tol)?;
    let actions = spec
        .phi
        .iter()
        .map(|m| m.to_matrix())
        .collect::<Result<Vec<_>>>()?;
    Correspondence::new(module, left, actions)
}

pub fn represent(
    parsed: &InstanceFile,
    correspondence_id: &str,
    rho_id: &str,
    inject_noise: Option<f64>,
    tol: &Tolerances,
    instance: &str,
) -> Result<Report> {
    let mut report = Report::new("represent", instance);
    let c = resolve_correspondence(parsed, correspondence_id, tol)?;
    let b = c.module().algebra();
    let rho: Vec<ComplexMatrix> = if rho_id == "default" {
        b.identity_rep_matrices()
    } else {
        let spec = parsed
            .representations
            .get(rho_id)
            .ok_or_else(|| Error::Instance(format!("unknown representation '{rho_id}'")))?;
        let algebra_spec = parsed.algebras.get(&spec.algebra).ok_or_else(|| {
            Error::Instance(format!(
                "representation '{rho_id}' references unknown algebra '{}'",
                spec.algebra
            ))
        })?;
        let algebra = instance::build_algebra(&spec.algebra, algebra_spec, tol)?;
        if !algebra.same_presentation(b, tol) {
            return Err(Error::Instance(format!(
                "representation '{rho_id}' is not over the module's algebra"
            )));
        }
        spec.rho
            .iter()
            .map(|m| m.to_matrix())
            .collect::<Result<Vec<_>>>()?
    };

    let triple = match build_representation(&c, &rho) {
        Ok(t) => {
            report.check(
                "precondition: rho is a nondegenerate representation",
                true,
                None,
                String::new(),
            );
            t
        }
        Err(e) => {
            let e = math_failure(e)?;
            report.check(
                "precondition: rho is a nondegenerate representation",
                false,
                error_residual(&e),
                e.to_string(),
            );
            return Ok(report);
        }
    };
    report.check(
        "H1 dimension",
        true,
        None,
        format!("dim H1 = {} (H0 = {})", triple.h1(), triple.h0()),
    );

    let triple = match inject_noise {
        None => triple,
        Some(scale) => {
            let mut rng = sampling::seeded(0x6d6f_646b);
            let pi = triple
                .pi()
                .iter()
                .map(|m| {
                    m.add(
                        &sampling::random_matrix(&mut rng, triple.h1(), triple.h0())
                            .scale(modkit::C64::new(scale, 0.0)),
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            report.check(
                "noise injected",
                true,
                Some(scale),
                "pi perturbed before verification".to_string(),
            );
            RepresentationTriple::new(
                triple.lambda().to_vec(),
                triple.rho().to_vec(),
                pi,
                triple.h0(),
                triple.h1(),
            )?
        }
    };

    let verify = verify_representation(&c, &triple)?;
    report.check(
        "compatibility (1): pi(phi(a)x) = lambda(a)pi(x)",
        verify.cco1 <= tol.eq,
        Some(verify.cco1),
        String::new(),
    );
    report.check(
        "compatibility (2): pi(xb) = pi(x)rho(b)",
        verify.cco2 <= tol.eq,
        Some(verify.cco2),
        String::new(),
    );
    report.check(
        "compatibility (3): rho(<x,y>) = pi(x)*pi(y)",
        verify.cco3 <= tol.eq,
        Some(verify.cco3),
        String::new(),
    );
    if verify.rho_faithful {
        report.check(
            "isometry of pi (rho faithful)",
            verify.isometry_defect <= tol.eq,
            Some(verify.isometry_defect),
            String::new(),
        );
    } else {
        report.check(
            "isometry of pi",
            true,
            Some(verify.isometry_defect),
            "rho not faithful; defect informational".to_string(),
        );
    }
    report.check(
        "pi(X)·H0 spans H1",
        verify.pi_range_rank == triple.h1(),
        None,
        format!("rank {} of {}", verify.pi_range_rank, triple.h1()),
    );
    let left_nondeg = c.left_action_nondegenerate();
    report.check(
        "lambda nondegenerate when the left action is",
        !left_nondeg || verify.lambda_nondegenerate,
        None,
        format!(
            "phi(A)X full rank: {left_nondeg}, lambda nondegenerate: {}",
            verify.lambda_nondegenerate
        ),
    );
    if verify.rho_faithful {
        match faithfulness_check(&c, &triple, true) {
            Ok(f) => {
                report.check(
                    "lambda faithful iff phi injective",
                    true,
                    None,
                    format!(
                        "lambda faithful: {}, phi injective: {}",
                        f.lambda_faithful, f.phi_injective
                    ),
                );
            }
            Err(e) => {
                let e = math_failure(e)?;
                report.check(
                    "lambda faithful iff phi injective",
                    false,
                    None,
                    e.to_string(),
                );
            }
        }
    }
    Ok(report)
}

pub fn bimodule_check(
    parsed: &InstanceFile,
    correspondence_id: &str,
    tol: &Tolerances,
    instance: &str,
) -> Result<Report> {
    let mut report = Report::new("bimodule-check", instance);
    let c = resolve_correspondence(parsed, correspondence_id, tol)?;
    let decision = bimodule_criterion(&c)?;
    let verdict = if decision.holds {
        "bimodule structure exists".to_string()
    } else {
        let (i, j, r) = decision.witness.unwrap_or((0, 0, 0.0));
        format!("no bimodule structure; witness theta({i},{j}) escapes phi(A) by {r:.2e}")
    };
    report.check(
        "criterion: compacts contained in phi(A)",
        true,
        None,
        format!(
            "holds: {}; dim K_B(X) = {}, dim phi(A) = {}; kernel blocks {:?}",
            decision.holds, decision.compacts_dim, decision.phi_image_dim, decision.kernel_blocks
        ),
    );
    report.check("verdict", true, None, verdict);
    if decision.holds {
        let lip = decision.left_inner_product.as_ref().expect("holds");
        report.check(
            "left inner product recovered",
            decision.solve_residual.unwrap_or(f64::NAN) <= tol.eq,
            decision.solve_residual,
            format!(
                "valued in the quotient algebra with block sizes {:?}",
                lip.algebra().blocks()
            ),
        );
        report.check(
            "bimodule identity <x,y>z = x<y,z>",
            decision.bimod_residual.unwrap_or(f64::NAN) <= tol.eq,
            decision.bimod_residual,
            String::new(),
        );
        report.check(
            "norm identity ‖<x,x>‖ = ‖x‖²",
            decision.norm_residual.unwrap_or(f64::NAN) <= tol.eq,
            decision.norm_residual,
            String::new(),
        );
        report.check(
            "uniqueness: independent solves agree",
            decision.uniqueness_residual.unwrap_or(f64::NAN) <= tol.eq,
            decision.uniqueness_residual,
            String::new(),
        );
        let k = lip.dim();
        let mut table = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                table.push(format!(
                    "<x{i},x{j}> norm {:.4}",
                    lip.algebra().elem_norm(lip.entry(i, j))
                ));
            }
        }
        report.check(
            "inner product structure constants",
            true,
            None,
            table.join("; "),
        );
    }
    Ok(report)
}

pub fn ideal_check(
    parsed: &InstanceFile,
    correspondence_id: &str,
    tol: &Tolerances,
    instance: &str,
) -> Result<Report> {
    let mut report = Report::new("ideal-check", instance);
    let c = resolve_correspondence(parsed, correspondence_id, tol)?;
    let decision = ideal_criterion(&c)?;
    match &decision.ideal {
        Some(ideal) => {
            let blocks: Vec<usize> = ideal.members().iter().map(|b| b + 1).collect();
            report.check(
                "ideal search",
                true,
                None,
                format!(
                    "found J = blocks {:?} (1-based) after testing {} ideals; dim K_B(X) = {}",
                    blocks, decision.tested, decision.compacts_dim
                ),
            );
            report.check(
                "phi|J matches the compacts",
                decision.solve_residual.unwrap_or(f64::NAN) <= tol.eq,
                decision.solve_residual,
                String::new(),
            );
            report.check(
                "bimodule identity for the J-valued inner product",
                decision.bimod_residual.unwrap_or(f64::NAN) <= tol.eq,
                decision.bimod_residual,
                String::new(),
            );
        }
        None => {
            report.check(
                "ideal search",
                true,
                None,
                format!(
                    "none: no ideal is carried isomorphically onto the compacts ({} tested; dim K_B(X) = {})",
                    decision.tested, decision.compacts_dim
                ),
            );
        }
    }
    Ok(report)
}

pub fn tensor(
    parsed: &InstanceFile,
    x_id: &str,
    y_id: &str,
    tol: &Tolerances,
    instance: &str,
) -> Result<Report> {
    let mut report = Report::new("tensor", instance);
    let x = resolve_correspondence(parsed, x_id, tol)?;
    let y = resolve_correspondence(parsed, y_id, tol)?;

    let middle_ok = x
        .module()
        .algebra()
        .same_presentation(y.left_algebra(), tol);
    report.check(
        "precondition: middle algebras match",
        middle_ok,
        None,
        format!(
            "right algebra blocks {:?}, left action blocks {:?}",
            x.module().algebra().blocks(),
            y.left_algebra().blocks()
        ),
    );
    if !middle_ok {
        return Ok(report);
    }
    let middle_nondeg = y.left_action_nondegenerate();
    report.check(
        "precondition: middle action nondegenerate",
        middle_nondeg,
        None,
        String::new(),
    );
    if !middle_nondeg {
        return Ok(report);
    }

    let rep = match tensor_representation(&x, &y, &y.module().algebra().identity_rep_matrices()) {
        Ok(r) => r,
        Err(e) => {
            let e = math_failure(e)?;
            report.check(
                "tensor representation built",
                false,
                error_residual(&e),
                e.to_string(),
            );
            return Ok(report);
        }
    };
    report.check(
        "tensor dimension",
        true,
        None,
        format!(
            "dim X⊗Y = {} (pre-space {}x{})",
            rep.tensor.dim(),
            rep.tensor.left_dim(),
            rep.tensor.right_dim()
        ),
    );

    let mut balancing: f64 = 0.0;
    let b_algebra = x.module().algebra().clone();
    let kx = rep.tensor.left_dim().min(4);
    let ky = rep.tensor.right_dim().min(4);
    for u in 0..b_algebra.dim() {
        let (beta, i, j) = b_algebra.unit_position(u);
        let unit = b_algebra.matrix_unit(beta, i, j);
        for xi in 0..kx {
            let mut xc = vec![modkit::C64::new(0.0, 0.0); rep.tensor.left_dim()];
            xc[xi] = modkit::C64::new(1.0, 0.0);
            for yj in 0..ky {
                let mut yc = vec![modkit::C64::new(0.0, 0.0); rep.tensor.right_dim()];
                yc[yj] = modkit::C64::new(1.0, 0.0);
                balancing = balancing.max(rep.tensor.balancing_residual(&x, &y, &xc, &unit, &yc)?);
            }
        }
    }
    report.check(
        "balancing xb⊗y = x⊗phi(b)y",
        balancing <= tol.eq,
        Some(balancing),
        String::new(),
    );
    report.check(
        "compatibility (1) for the tensor triple",
        rep.cco1 <= tol.eq,
        Some(rep.cco1),
        String::new(),
    );
    report.check(
        "compatibility (2) for the tensor triple",
        rep.cco2 <= tol.eq,
        Some(rep.cco2),
        String::new(),
    );
    report.check(
        "compatibility (3) for the tensor triple",
        rep.cco3 <= tol.eq,
        Some(rep.cco3),
        String::new(),
    );
    report.check(
        "span of pi equals span of tau(x)pi(y)",
        rep.span_distance <= tol.eq,
        Some(rep.span_distance),
        String::new(),
    );
    report.check(
        "isometry of pi (rho faithful)",
        rep.isometry_defect <= tol.eq,
        Some(rep.isometry_defect),
        String::new(),
    );
    Ok(report)
}

pub fn dimension_gap(n: usize, tol: &Tolerances) -> Result<Report> {
    let gap = opspaces::adjointable_dimension_gap(n, tol)?;
    let mut report = Report::new("daws", format!("n={n}"));
    report.check(
        "row module over M_n: adjointables",
        gap.row_adjointables_dim == 1,
        None,
        format!(
            "dim L(C^n as row module over M_n) = {} (module dim {})",
            gap.row_adjointables_dim, gap.row_module_dim
        ),
    );
    report.check(
        "column module over the scalars: adjointables",
        gap.column_adjointables_dim == n * n,
        None,
        format!(
            "dim L(C^n as column module over C) = {}",
            gap.column_adjointables_dim
        ),
    );
    report.check(
        "dimension gap",
        true,
        None,
        format!(
            "{} ≠ {}: amplification changes the coefficient algebra, not the maps",
            gap.row_adjointables_dim, gap.column_adjointables_dim
        ),
    );
    Ok(report)
}
