//! Randomized and exact verification suites over a configured algebra.
//!
//! Every trial draws from its own ChaCha stream seeded by
//! `(seed, suite, trial index)`, so reports do not depend on the number of
//! worker threads or on scheduling.

mod mutate;
mod suites;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::clifford::{plane_C, plane_Cprime, table1};
use crate::error::{Error, Result};
use crate::qalg::{Algebra, AlgebraConfig};
use crate::scalars::{Field, FieldKind, Gf2Rat, Rational};

pub use mutate::{run_mutate, MutationReport, SuiteBreakage};

use suites::Ctx;

/// Named verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Table1,
    Polarity,
    Equivalence,
    Axioms,
    RegularSpread,
    DoubleSpace,
    OppositeRegulus,
    UniqueComplex,
    CrossedPencils,
    TranslationInvariance,
    CaseBIdentity,
    GeometricHyperplane,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Table1,
        Suite::Polarity,
        Suite::Equivalence,
        Suite::Axioms,
        Suite::RegularSpread,
        Suite::DoubleSpace,
        Suite::OppositeRegulus,
        Suite::UniqueComplex,
        Suite::CrossedPencils,
        Suite::TranslationInvariance,
        Suite::CaseBIdentity,
        Suite::GeometricHyperplane,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Table1 => "table1",
            Suite::Polarity => "polarity",
            Suite::Equivalence => "equivalence",
            Suite::Axioms => "axioms",
            Suite::RegularSpread => "regular-spread",
            Suite::DoubleSpace => "double-space",
            Suite::OppositeRegulus => "opposite-regulus",
            Suite::UniqueComplex => "unique-complex",
            Suite::CrossedPencils => "crossed-pencils",
            Suite::TranslationInvariance => "translation-invariance",
            Suite::CaseBIdentity => "case-b-identity",
            Suite::GeometricHyperplane => "geometric-hyperplane",
        }
    }

    /// Exact suites ignore the trial count.
    pub fn is_exact(self) -> bool {
        matches!(self, Suite::Table1 | Suite::Polarity)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A suite name from the command line, `all` included.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteSelection {
    One(Suite),
    All,
}

impl SuiteSelection {
    pub fn suites(self) -> Vec<Suite> {
        match self {
            SuiteSelection::One(s) => vec![s],
            SuiteSelection::All => Suite::ALL.to_vec(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SuiteSelection::One(s) => s.name(),
            SuiteSelection::All => "all",
        }
    }
}

impl FromStr for SuiteSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "all" {
            return Ok(SuiteSelection::All);
        }
        Suite::ALL
            .iter()
            .find(|x| x.name() == s)
            .map(|&x| SuiteSelection::One(x))
            .ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
    }
}

/// Knobs shared by `verify` and `mutate`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub trials: usize,
    /// Scalar size bound; `None` picks 10 over Q and 2 over function fields.
    pub bound: Option<u32>,
    /// Worker threads; `None` uses the rayon default.
    pub workers: Option<usize>,
    /// Record wall time. Off gives byte-identical reports across runs.
    pub timing: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            trials: 200,
            bound: None,
            workers: None,
            timing: true,
        }
    }
}

pub fn default_bound(kind: FieldKind) -> u32 {
    match kind {
        FieldKind::Rationals => 10,
        FieldKind::Gf2FunctionField => 2,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CertificateClaim {
    pub claim: String,
    pub level: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub trials: usize,
    pub passed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub algebra: Value,
    pub seed: u64,
    pub bound: u32,
    pub trials: usize,
    pub passed: usize,
    pub failed_witnesses: Vec<Value>,
    pub certificates: Vec<CertificateClaim>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<SuiteSummary>,
    pub wall_time_ms: u64,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.trials
    }

    pub fn summary_for(&self, suite: Suite) -> Option<&SuiteSummary> {
        self.suites.iter().find(|s| s.suite == suite.name())
    }
}

/// Result of one trial: `None` on success, otherwise a witness.
pub(crate) struct Outcome {
    failure: Option<Value>,
    certs: Vec<CertificateClaim>,
}

impl Outcome {
    pub(crate) fn pass() -> Self {
        Outcome {
            failure: None,
            certs: Vec::new(),
        }
    }

    pub(crate) fn fail(witness: Value) -> Self {
        Outcome {
            failure: Some(witness),
            certs: Vec::new(),
        }
    }

    pub(crate) fn check(ok: bool, witness: impl FnOnce() -> Value) -> Self {
        if ok {
            Outcome::pass()
        } else {
            Outcome::fail(witness())
        }
    }

    pub(crate) fn with_cert(mut self, claim: &str, level: String) -> Self {
        self.certs.push(CertificateClaim {
            claim: claim.to_string(),
            level,
        });
        self
    }
}

pub(crate) struct SuiteRun {
    pub trials: usize,
    pub passed: usize,
    pub witnesses: Vec<Value>,
    pub certs: BTreeSet<CertificateClaim>,
}

fn suite_tag(suite: Suite) -> u64 {
    // FNV-1a over the name
    suite.name().bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

/// Seed of trial `index` of `suite` under the run seed `seed`.
pub fn trial_seed(seed: u64, suite: Suite, index: usize) -> u64 {
    let mut z = seed
        ^ suite_tag(suite).rotate_left(17)
        ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    // splitmix64 finalizer
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Runs the randomized trials of `suite` in parallel and merges them by
/// index.
pub(crate) fn run_trials<F: Field>(
    ctx: &Ctx<F>,
    suite: Suite,
    seed: u64,
    trials: usize,
) -> SuiteRun {
    let outcomes: Vec<Outcome> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, suite, i));
            suites::trial(ctx, suite, i, &mut rng)
                .unwrap_or_else(|e| Outcome::fail(json!({ "error": e.to_string() })))
        })
        .collect();
    collect(suite, outcomes)
}

fn collect(suite: Suite, outcomes: Vec<Outcome>) -> SuiteRun {
    let mut run = SuiteRun {
        trials: outcomes.len(),
        passed: 0,
        witnesses: Vec::new(),
        certs: BTreeSet::new(),
    };
    for (i, o) in outcomes.into_iter().enumerate() {
        run.certs.extend(o.certs);
        match o.failure {
            None => run.passed += 1,
            Some(w) => run.witnesses.push(json!({
                "suite": suite.name(),
                "trial": i,
                "inputs": w,
            })),
        }
    }
    run
}

fn run_suite<F: Field>(ctx: &Ctx<F>, suite: Suite, seed: u64, trials: usize) -> SuiteRun {
    if suite.is_exact() {
        return collect(suite, suites::exact(ctx, suite));
    }
    if !suites::applies(ctx, suite) {
        return collect(suite, Vec::new());
    }
    run_trials(ctx, suite, seed, trials)
}

pub(crate) fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match workers {
        Some(n) if n > 0 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        _ => f(),
    }
}

fn verify_typed<F: Field>(
    config: &AlgebraConfig,
    selection: SuiteSelection,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let alg: Algebra<F> = config.build()?;
    let bound = opts
        .bound
        .unwrap_or_else(|| default_bound(config.field_kind()));
    let ctx = Ctx::new(alg, bound)?;
    let mut report = VerificationReport {
        suite: selection.name().to_string(),
        algebra: config.to_json(),
        seed: opts.seed,
        bound,
        trials: 0,
        passed: 0,
        failed_witnesses: Vec::new(),
        certificates: Vec::new(),
        suites: Vec::new(),
        wall_time_ms: 0,
    };
    let mut certs: BTreeSet<CertificateClaim> = ctx.base_certificates().into_iter().collect();
    for suite in selection.suites() {
        let run = with_workers(opts.workers, || {
            run_suite(&ctx, suite, opts.seed, opts.trials)
        });
        report.trials += run.trials;
        report.passed += run.passed;
        report.failed_witnesses.extend(run.witnesses);
        certs.extend(run.certs);
        if selection == SuiteSelection::All {
            report.suites.push(SuiteSummary {
                suite: suite.name().to_string(),
                trials: run.trials,
                passed: run.passed,
            });
        }
    }
    report.certificates = certs.into_iter().collect();
    if opts.timing {
        report.wall_time_ms = start.elapsed().as_millis() as u64;
    }
    Ok(report)
}

/// Runs `selection` on the algebra described by `config`.
pub fn run_verify(
    config: &AlgebraConfig,
    selection: SuiteSelection,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    match config.field_kind() {
        FieldKind::Rationals => verify_typed::<Rational>(config, selection, opts),
        FieldKind::Gf2FunctionField => verify_typed::<Gf2Rat>(config, selection, opts),
    }
}

fn describe_typed<F: Field>(config: &AlgebraConfig) -> Result<Value> {
    let alg: Algebra<F> = config.build()?;
    Ok(json!({
        "case": alg.case().name(),
        "field": alg.field().name(),
        "a": alg.a().render(alg.field()),
        "b": alg.b().render(alg.field()),
        "certificate": alg.certificate().label(),
        "table": alg.table_strings(alg.field()),
    }))
}

/// Summary of a validated algebra: case, field, certificate and
/// multiplication table.
pub fn describe_algebra(config: &AlgebraConfig) -> Result<Value> {
    match config.field_kind() {
        FieldKind::Rationals => describe_typed::<Rational>(config),
        FieldKind::Gf2FunctionField => describe_typed::<Gf2Rat>(config),
    }
}

/// Which of the two external planes to print.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlaneChoice {
    C,
    Cperp,
}

impl FromStr for PlaneChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "C" => Ok(PlaneChoice::C),
            "Cperp" => Ok(PlaneChoice::Cperp),
            other => Err(Error::Config(format!(
                "unknown plane {other:?}, expected C or Cperp"
            ))),
        }
    }
}

fn plane_typed<F: Field>(config: &AlgebraConfig, which: PlaneChoice) -> Result<Value> {
    let alg: Algebra<F> = config.build()?;
    let c = plane_C(&alg)?;
    let cp = plane_Cprime(&alg)?;
    if *cp.plane() != crate::kleingeom::perp(c.plane())? {
        return Err(Error::PreconditionFailed(
            "C' is not the polar plane of C".into(),
        ));
    }
    let (table_c, table_cp) = table1(&alg);
    let (chosen, closed_form) = match which {
        PlaneChoice::C => (c, table_c),
        PlaneChoice::Cperp => (cp, table_cp),
    };
    let mut out = chosen.to_json(alg.field());
    out["matches_closed_form"] = Value::Bool(*chosen.plane() == closed_form);
    Ok(out)
}

/// `C` or `C^⊥` of the configured algebra as canonical JSON.
pub fn plane_report(config: &AlgebraConfig, which: PlaneChoice) -> Result<Value> {
    match config.field_kind() {
        FieldKind::Rationals => plane_typed::<Rational>(config, which),
        FieldKind::Gf2FunctionField => plane_typed::<Gf2Rat>(config, which),
    }
}
