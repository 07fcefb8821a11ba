//! Suite execution: builds the semigroup context for each configured
//! suite, dispatches to the library checks, and collects reports in
//! declared order. Randomness is driven by one global seed with per-suite
//! derived streams (seed XOR suite index), so results do not depend on the
//! execution order or the worker count.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use anyhow::{anyhow, bail, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use semiflow::integrate::{
    commutation_check, pettis_consistency_check, OperatorPath, PettisMode, QuadratureConfig,
    QuadratureRule,
};
use semiflow::maps::{lindblad_generator, markovian_completion, gks_form_check, KrausSet, LindbladForm};
use semiflow::matrix::{Complex64, ComplexMatrix};
use semiflow::resolvent::{
    closedness_harness, generator_difference_quotient, resolvent_agreement_check,
    resolvent_equation_check, ClosednessCase,
};
use semiflow::semigroup::{
    check_semigroup_law, check_wot_continuity_at_zero, estimate_exponential_bound,
    omega_invariance_check, ContractionSemigroupSpec, GridSpec, SemigroupSpec,
};
use semiflow::space::{FunctionalBasis, HilbertDim};
use semiflow::{Superoperator, VerificationReport};

use crate::config::{ContractionConfig, SpecConfig, Suite, SuiteConfig, SuiteKind};

/// Everything a suite might need, derived from its spec declaration.
struct SuiteContext {
    spec: SemigroupSpec,
    /// Present when the spec is declared through Lindblad data.
    lindblad: Option<LindbladForm>,
    rng: ChaCha8Rng,
    suite_seed: u64,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn build_context(suite: &Suite, seed: u64, index: usize) -> Result<SuiteContext> {
    let suite_seed = seed ^ index as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(suite_seed);
    let (spec, lindblad) = match &suite.spec {
        SpecConfig::Identity { dim } => {
            let d = HilbertDim::new(*dim)?;
            (SemigroupSpec::exponential(Superoperator::zero(d)), None)
        }
        SpecConfig::Lindblad { kraus, hamiltonian } => {
            let n = kraus
                .first()
                .map(|m| m.rows())
                .or(hamiltonian.as_ref().map(|m| m.rows()))
                .ok_or_else(|| anyhow!("lindblad spec needs at least one matrix"))?;
            let d = HilbertDim::new(n)?;
            let set = KrausSet::new(d, kraus.clone())?;
            let h = hamiltonian.clone().unwrap_or_else(|| ComplexMatrix::zeros(n, n));
            let lf = markovian_completion(set, &h)?;
            (SemigroupSpec::exponential(lindblad_generator(&lf)?), Some(lf))
        }
        SpecConfig::RandomLindblad { dim, kraus_terms } => {
            let d = HilbertDim::new(*dim)?;
            let scale = c(1.0 / ((kraus_terms * dim) as f64).sqrt(), 0.0);
            let set = KrausSet::new(
                d,
                (0..*kraus_terms)
                    .map(|_| ComplexMatrix::random_standard(*dim, *dim, &mut rng).scale(scale))
                    .collect(),
            )?;
            let h = ComplexMatrix::random_hermitian(*dim, &mut rng).scale(c(0.5, 0.0));
            let lf = markovian_completion(set, &h)?;
            (SemigroupSpec::exponential(lindblad_generator(&lf)?), Some(lf))
        }
        SpecConfig::GeneratorMatrix { matrix } => {
            let nn = matrix.rows();
            let n = (nn as f64).sqrt().round() as usize;
            if n * n != nn || !matrix.is_square() {
                bail!("generator matrix must be d²×d², got {}x{}", matrix.rows(), matrix.cols());
            }
            let d = HilbertDim::new(n)?;
            (SemigroupSpec::exponential(Superoperator::dense(d, matrix.clone())?), None)
        }
        SpecConfig::Conjugation { contraction } => {
            let spec = match contraction {
                ContractionConfig::MatrixGroup { k } => {
                    ContractionSemigroupSpec::matrix_group(k.clone())?
                }
                ContractionConfig::CyclicShift { dim, delta } => {
                    ContractionSemigroupSpec::cyclic_shift(*dim, *delta)?
                }
                ContractionConfig::TruncatedShift { dim, delta } => {
                    ContractionSemigroupSpec::truncated_shift(*dim, *delta)?
                }
            };
            (SemigroupSpec::conjugation(spec), None)
        }
        SpecConfig::ShiftExample { cells, delta } => {
            (SemigroupSpec::shift_example(GridSpec::new(*cells, *delta)?), None)
        }
    };
    Ok(SuiteContext { spec, lindblad, rng, suite_seed })
}

/// The observable a suite works on: configured matrix, or E_01 + E_10.
fn observable(suite: &Suite, ctx: &SuiteContext) -> Result<ComplexMatrix> {
    if let Some(a) = &suite.observable {
        let n = ctx.spec.dim().get();
        if a.shape() != (n, n) {
            bail!("observable is {}x{} but the spec has dimension {n}", a.rows(), a.cols());
        }
        return Ok(a.clone());
    }
    let n = ctx.spec.dim().get();
    let mut a = ComplexMatrix::matrix_unit(n, 0, 1.min(n - 1));
    a = a.add(&a.adjoint());
    Ok(a)
}

fn quadrature(suite: &Suite) -> Result<QuadratureConfig> {
    let nodes = suite.params.nodes.unwrap_or(8);
    let panels = suite.params.panels.unwrap_or(64);
    let t_max = suite.params.t_max.unwrap_or(6.0);
    Ok(QuadratureConfig::new(QuadratureRule::GaussLegendre { nodes_per_panel: nodes }, panels, t_max)?)
}

fn default_t_grid(spec: &SemigroupSpec) -> Vec<f64> {
    match spec.grid_step() {
        Some(delta) => vec![delta, 2.0 * delta, 4.0 * delta, 8.0 * delta],
        None => vec![0.1, 0.25, 0.5, 0.75, 1.0],
    }
}

fn default_t_seq(spec: &SemigroupSpec) -> Vec<f64> {
    match spec.grid_step() {
        Some(delta) => vec![8.0 * delta, 4.0 * delta, 2.0 * delta, delta],
        None => vec![0.1, 0.05, 0.02, 0.01, 0.005, 0.001],
    }
}

fn default_h_seq(spec: &SemigroupSpec) -> Vec<f64> {
    match spec.grid_step() {
        Some(delta) => vec![8.0 * delta, 4.0 * delta, 2.0 * delta, delta],
        None => vec![0.02, 0.01, 0.005, 0.0025],
    }
}

/// Exponential bound shared by the resolvent-flavored suites.
fn bound_for(suite: &Suite, spec: &SemigroupSpec) -> Result<semiflow::ExponentialBound> {
    let est_delta = suite.params.est_delta.unwrap_or(0.02);
    Ok(estimate_exponential_bound(spec, est_delta, 251)?)
}

fn lambda_for(suite: &Suite, omega: f64) -> Complex64 {
    match suite.params.lambda {
        Some([re, im]) => c(re, im),
        None => c(omega + 2.0, 0.0),
    }
}

fn run_suite(suite: &Suite, seed: u64, index: usize) -> Result<VerificationReport> {
    let mut ctx = build_context(suite, seed, index)?;
    let tol = suite.tol;
    let mut report = match suite.name {
        SuiteKind::SemigroupLaw => {
            let grid = suite.params.t_grid.clone().unwrap_or_else(|| default_t_grid(&ctx.spec));
            check_semigroup_law(&ctx.spec, &grid, tol)?
        }
        SuiteKind::ExpBound => {
            let bound = bound_for(suite, &ctx.spec)?;
            let mut worst = f64::NEG_INFINITY;
            for i in 0..101 {
                let t = ctx.spec.snap(5.0 * i as f64 / 100.0);
                worst = worst.max(ctx.spec.norm_at(t)? - bound.envelope(t));
            }
            let mut rep = VerificationReport::new("exp-bound");
            rep.record("max_domination_slack", worst.max(0.0), tol);
            rep.meta("m", bound.m);
            rep.meta("omega", bound.omega);
            rep
        }
        SuiteKind::WotZero => {
            let basis = FunctionalBasis::standard(ctx.spec.dim());
            let a = observable(suite, &ctx)?;
            let t_seq = suite.params.t_seq.clone().unwrap_or_else(|| default_t_seq(&ctx.spec));
            check_wot_continuity_at_zero(&ctx.spec, &basis, &a, &t_seq, tol)?
        }
        SuiteKind::Pettis => {
            let basis = FunctionalBasis::standard(ctx.spec.dim());
            let a = observable(suite, &ctx)?;
            let cfg = quadrature(suite)?;
            let spec = ctx.spec.clone();
            let path = OperatorPath::new(ctx.spec.dim(), move |t| {
                let snapped = spec.snap(t.max(0.0));
                spec.evaluate(snapped)?.apply(&a)
            });
            let interval = (0.0, cfg.t_max);
            let mut shared = pettis_consistency_check(
                &path,
                &basis,
                interval,
                &cfg,
                PettisMode::SharedNodes,
                1e-12,
            )?;
            let indep_cfg = QuadratureConfig::new(
                QuadratureRule::AdaptiveSimpson { abs_tol: 1e-11 },
                8,
                cfg.t_max,
            )?;
            let indep = pettis_consistency_check(
                &path,
                &basis,
                interval,
                &cfg,
                PettisMode::Independent(indep_cfg),
                tol,
            )?;
            shared.pass &= indep.pass;
            shared.record(
                "independent_quadrature_residual",
                indep.residual("max_pairing_residual").unwrap_or(f64::NAN),
                tol,
            );
            shared
        }
        SuiteKind::Commutation => {
            let a = observable(suite, &ctx)?;
            let cfg = quadrature(suite)?;
            let t0 = ctx.spec.snap(suite.params.t_grid.as_ref().and_then(|g| g.first().copied()).unwrap_or(0.5));
            let s = ctx.spec.evaluate(t0)?;
            let spec = ctx.spec.clone();
            let path = OperatorPath::new(ctx.spec.dim(), move |t| {
                spec.evaluate(spec.snap(t.max(0.0)))?.apply(&a)
            });
            commutation_check(&s, &path, (0.0, cfg.t_max), &cfg, tol)?
        }
        SuiteKind::ResolventAgreement => {
            let l = ctx.spec.generator()?;
            let bound = bound_for(suite, &ctx.spec)?;
            let lambda = lambda_for(suite, bound.omega);
            let eps = suite.params.eps.unwrap_or(1e-9);
            resolvent_agreement_check(&ctx.spec, &l, lambda, &bound, eps, &quadrature(suite)?, tol)?
        }
        SuiteKind::ResolventEquation => {
            let l = ctx.spec.generator()?;
            let bound = bound_for(suite, &ctx.spec)?;
            let lambda = lambda_for(suite, bound.omega);
            let eps = suite.params.eps.unwrap_or(1e-9);
            resolvent_equation_check(&ctx.spec, &l, lambda, &bound, eps, &quadrature(suite)?, tol)?
        }
        SuiteKind::DifferenceQuotient => {
            let basis = FunctionalBasis::standard(ctx.spec.dim());
            let a = observable(suite, &ctx)?;
            let h_seq = suite.params.h_seq.clone().unwrap_or_else(|| default_h_seq(&ctx.spec));
            let dq = generator_difference_quotient(&ctx.spec, &a, &h_seq, &basis)?;
            let l = ctx.spec.generator()?;
            let exact = l.apply(&a)?;
            let mut rep = VerificationReport::new("difference-quotient");
            rep.record("estimate_vs_generator", dq.estimate.sub(&exact).op_norm(), tol);
            if let Some(p) = dq.plain_order {
                rep.meta("plain_order", p);
            }
            if let Some(r) = &dq.richardson {
                rep.record("richardson_vs_generator", r.sub(&exact).op_norm(), tol);
            }
            if let Some(p) = dq.richardson_order {
                rep.meta("richardson_order", p);
            }
            rep.meta("smallest_h", h_seq.last().expect("validated nonempty"));
            rep
        }
        SuiteKind::Closedness => {
            let l = ctx.spec.generator()?;
            let bound = bound_for(suite, &ctx.spec)?;
            let lambda = lambda_for(suite, bound.omega);
            let eps = suite.params.eps.unwrap_or(1e-9);
            let cfg = quadrature(suite)?;
            let basis = FunctionalBasis::standard(ctx.spec.dim());
            let n = ctx.spec.dim().get();
            let cases = suite.params.cases.unwrap_or(3);
            let mut combined = VerificationReport::new("closedness");
            for case_idx in 0..cases {
                let b_limit = ComplexMatrix::random_standard(n, n, &mut ctx.rng);
                let dir = ComplexMatrix::random_standard(n, n, &mut ctx.rng);
                let seq: Vec<ComplexMatrix> = (1..=6)
                    .map(|k| b_limit.add(&dir.scale(c(1.0 / (k * k) as f64, 0.0))))
                    .collect();
                let case =
                    ClosednessCase::new(lambda, seq, b_limit, format!("case {case_idx}"))?;
                let rep =
                    closedness_harness(&ctx.spec, &l, &case, &bound, eps, &cfg, &basis, tol)?;
                combined.pass &= rep.pass;
                combined.record(
                    format!("case_{case_idx}_closedness_conclusion"),
                    rep.residual("closedness_conclusion").unwrap_or(f64::NAN),
                    tol,
                );
            }
            combined.meta("cases", cases);
            combined.meta("lambda", format!("{}+{}i", lambda.re, lambda.im));
            combined
        }
        SuiteKind::CpUnital => {
            let grid = suite.params.t_grid.clone().unwrap_or_else(|| default_t_grid(&ctx.spec));
            let mut rep = VerificationReport::new("cp-unital");
            let mut worst_eig = 0.0f64;
            let mut worst_unital = 0.0f64;
            for &t in &grid {
                let tt = ctx.spec.evaluate(t)?;
                let cp = tt.is_completely_positive(tol)?;
                worst_eig = worst_eig.max((-cp.min_eigenvalue).max(0.0));
                let un = tt.is_unital(tol)?;
                worst_unital = worst_unital.max(un.residual);
            }
            rep.record("max_negative_choi_eigenvalue", worst_eig, tol);
            rep.record("max_unitality_residual", worst_unital, tol);
            rep.meta("times", grid.len());
            rep
        }
        SuiteKind::GksForm => {
            let lf = ctx
                .lindblad
                .as_ref()
                .ok_or_else(|| anyhow!("gks-form needs a lindblad or random-lindblad spec"))?;
            gks_form_check(lf, tol)?
        }
        SuiteKind::OmegaInvariance => {
            let SemigroupSpec::ShiftExample { grid } = &ctx.spec else {
                bail!("omega-invariance needs a shift-example spec");
            };
            let delta = grid.delta();
            let s_grid = suite
                .params
                .s_grid
                .clone()
                .unwrap_or_else(|| (1..=8).map(|k| k as f64 * delta).collect());
            let samples = suite.params.samples.unwrap_or(10);
            omega_invariance_check(grid, &s_grid, samples, &mut ctx.rng, tol)?
        }
    };
    report.suite = suite.name.as_str().to_string();
    report.meta("suite_seed", ctx.suite_seed);
    Ok(report)
}

/// Run every suite, preserving declared order in the output, and keep
/// per-suite wall time for the text emitter (the JSON schema omits timing
/// so identical runs stay byte-identical). Suites run on a bounded worker
/// pool; failures of one suite never abort its siblings.
pub fn run_suites(
    cfg: &SuiteConfig,
    seed: u64,
    parallelism: usize,
) -> Vec<(VerificationReport, f64)> {
    let parallelism = parallelism.max(1).min(cfg.suites.len().max(1));
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<(VerificationReport, f64)>>> =
        Mutex::new(vec![None; cfg.suites.len()]);

    std::thread::scope(|scope| {
        for _ in 0..parallelism {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::SeqCst);
                if idx >= cfg.suites.len() {
                    break;
                }
                let suite = &cfg.suites[idx];
                let started = Instant::now();
                // contain both errors and panics so siblings keep running
                let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
                    run_suite(suite, seed, idx)
                }));
                let report = match outcome {
                    Ok(Ok(rep)) => rep,
                    Ok(Err(err)) => {
                        let mut rep = VerificationReport::new(suite.name.as_str());
                        rep.fail(err);
                        rep
                    }
                    Err(panic) => {
                        let msg = panic
                            .downcast_ref::<String>()
                            .cloned()
                            .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                            .unwrap_or_else(|| "suite panicked".into());
                        let mut rep = VerificationReport::new(suite.name.as_str());
                        rep.fail(format!("panic: {msg}"));
                        rep
                    }
                };
                let elapsed = started.elapsed().as_secs_f64();
                results.lock().expect("results poisoned")[idx] = Some((report, elapsed));
            });
        }
    });

    results
        .into_inner()
        .expect("results poisoned")
        .into_iter()
        .map(|slot| slot.expect("every index visited"))
        .collect()
}
