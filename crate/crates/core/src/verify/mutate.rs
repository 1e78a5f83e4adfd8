//! Negative control: replace `C` by a plane through a point of the Klein
//! quadric and report which suites notice.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use super::suites::{applies, Ctx};
use super::{default_bound, run_trials, with_workers, Suite, SuiteRun, VerifyOptions};
use crate::error::Result;
use crate::kleingeom::pluecker_inverse_vector;
use crate::kleingeom::sample::random_vector;
use crate::kleingeom::Bivector;
use crate::linalg::{unit, Subspace};
use crate::qalg::{Algebra, AlgebraConfig};
use crate::scalars::{Field, FieldKind, Gf2Rat, Rational};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteBreakage {
    pub suite: String,
    pub trials: usize,
    pub passed: usize,
    pub broken: bool,
    pub first_witness: Option<Value>,
}

impl SuiteBreakage {
    fn new(suite: Suite, run: SuiteRun) -> Self {
        SuiteBreakage {
            suite: suite.name().to_string(),
            trials: run.trials,
            passed: run.passed,
            broken: run.passed < run.trials,
            first_witness: run.witnesses.into_iter().next(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MutationReport {
    pub algebra: Value,
    pub seed: u64,
    pub bound: u32,
    pub trials: usize,
    /// The planted point `F·e01` of the Klein quadric.
    pub quadric_point: Value,
    /// Its preimage, the line `span(e0, e1)`.
    pub implicated_line: Value,
    pub mutated_plane: Value,
    pub breakage: Vec<SuiteBreakage>,
    pub broken_suites: Vec<String>,
    /// The same suites on the unmutated plane.
    pub control: Vec<SuiteBreakage>,
    pub control_passed: bool,
    pub wall_time_ms: u64,
}

/// Randomized suites that depend on the plane.
const MUTATION_SUITES: [Suite; 9] = [
    Suite::Equivalence,
    Suite::Axioms,
    Suite::RegularSpread,
    Suite::DoubleSpace,
    Suite::OppositeRegulus,
    Suite::UniqueComplex,
    Suite::CrossedPencils,
    Suite::TranslationInvariance,
    Suite::GeometricHyperplane,
];

/// A random plane of `P(V∧V)` through the quadric point `F·e01`.
fn mutated_plane<F: Field>(seed: u64, bound: u32) -> Subspace<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6d75_7461_7465);
    loop {
        let rows = vec![
            unit(6, 0),
            random_vector(&mut rng, 6, bound),
            random_vector(&mut rng, 6, bound),
        ];
        let plane = Subspace::span_owned(6, rows);
        if plane.dim() == 3 {
            return plane;
        }
    }
}

fn mutate_typed<F: Field>(config: &AlgebraConfig, opts: &VerifyOptions) -> Result<MutationReport> {
    let start = Instant::now();
    let alg: Algebra<F> = config.build()?;
    let bound = opts
        .bound
        .unwrap_or_else(|| default_bound(config.field_kind()));
    let plane = mutated_plane::<F>(opts.seed, bound);
    let point = Subspace::<F>::span_owned(6, vec![unit(6, 0)]);
    let line = pluecker_inverse_vector(&Bivector::from_vec(&unit::<F>(6, 0)))?;
    let field = alg.field().clone();
    let control_ctx = Ctx::new(alg.clone(), bound)?;
    let ctx = Ctx::mutated(alg, bound, plane.clone(), line.clone())?;
    let run_all = |ctx: &Ctx<F>| -> Vec<SuiteBreakage> {
        MUTATION_SUITES
            .iter()
            .filter(|&&s| applies(ctx, s))
            .map(|&s| {
                let run = with_workers(opts.workers, || run_trials(ctx, s, opts.seed, opts.trials));
                SuiteBreakage::new(s, run)
            })
            .collect()
    };
    let breakage = run_all(&ctx);
    let control = run_all(&control_ctx);
    let broken_suites = breakage
        .iter()
        .filter(|b| b.broken)
        .map(|b| b.suite.clone())
        .collect();
    Ok(MutationReport {
        algebra: config.to_json(),
        seed: opts.seed,
        bound,
        trials: opts.trials,
        quadric_point: point.to_json(&field),
        implicated_line: line.to_json(&field),
        mutated_plane: plane.to_json(&field),
        control_passed: control.iter().all(|b| !b.broken),
        breakage,
        broken_suites,
        control,
        wall_time_ms: if opts.timing {
            start.elapsed().as_millis() as u64
        } else {
            0
        },
    })
}

/// Runs the plane-dependent suites on a mutated plane and on the real one.
pub fn run_mutate(config: &AlgebraConfig, opts: &VerifyOptions) -> Result<MutationReport> {
    match config.field_kind() {
        FieldKind::Rationals => mutate_typed::<Rational>(config, opts),
        FieldKind::Gf2FunctionField => mutate_typed::<Gf2Rat>(config, opts),
    }
}
