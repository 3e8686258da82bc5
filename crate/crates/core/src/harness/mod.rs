//! Seeded pass/fail suites over the exact procedures of this crate.
//!
//! Every random trial draws from its own ChaCha8 stream, keyed by the
//! suite seed and a stream number (`group index << 32 | trial`), so a
//! report does not depend on `jobs` and any failure can be replayed from
//! the `(seed, trial)` pair it records.

mod fixtures;
mod suites;

pub use fixtures::{builtin_fixtures, Fixture};
pub use suites::{
    classify_trial, ct_trial, oracle_trial, suite_classify, suite_ct, suite_gmnoccur, suite_gog, suite_oracle,
    suite_witnesses, suite_z2,
};

use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::britton::BsError;
use crate::exact::Ratio;
use crate::gog::GogError;
use crate::metabelian::{GmnElement, GmnError, GmnParams};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Gmn(#[from] GmnError),
    #[error(transparent)]
    Bs(#[from] BsError),
    #[error(transparent)]
    Gog(#[from] GogError),
    #[error("bad suite parameter: {0}")]
    Param(String),
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub seed: u64,
    /// Stream number of the trial (see the module docs).
    pub trial: u64,
    pub inputs: Value,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub parameters: Value,
    pub trials: u64,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
    pub verdict: Verdict,
}

impl SuiteReport {
    pub fn new(suite: &str, parameters: Value, trials: u64, failures: Vec<Failure>, notes: Vec<String>) -> Self {
        let verdict = if failures.is_empty() { Verdict::Pass } else { Verdict::Fail };
        SuiteReport { suite: suite.to_string(), parameters, trials, failures, notes, verdict }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite: {}", self.suite)?;
        writeln!(f, "parameters: {}", self.parameters)?;
        writeln!(f, "trials: {}", self.trials)?;
        writeln!(f, "failures: {}", self.failures.len())?;
        for x in &self.failures {
            writeln!(
                f,
                "  seed={} trial={} inputs={} expected={} got={}",
                x.seed, x.trial, x.inputs, x.expected, x.got
            )?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        write!(f, "verdict: {}", self.verdict)
    }
}

/// Element sampling: t-exponents uniform in `[-b, b]`, `H` components
/// `z / (m^i n^j)` with `z` uniform in `[-b_prime, b_prime]` and
/// `0 <= i, j <= max_ij`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sampling {
    pub b: i64,
    pub b_prime: i64,
    pub max_ij: u32,
    /// Attempts at a centralizer element before `h` is re-drawn.
    pub retry_budget: u32,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling { b: 5, b_prime: 100, max_ij: 4, retry_budget: 32 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    /// Worker threads; `0` or `1` runs serially.
    pub jobs: usize,
    pub sampling: Sampling,
}

impl Default for Options {
    fn default() -> Self {
        Options { jobs: 1, sampling: Sampling::default() }
    }
}

pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn stream_id(group: usize, trial: u64) -> u64 {
    ((group as u64) << 32) | trial
}

/// Runs `f` on every stream id, in parallel when `jobs > 1`, returning
/// failures in stream order either way.
pub(crate) fn run_streams<F>(streams: &[u64], jobs: usize, f: F) -> Result<Vec<Failure>, HarnessError>
where
    F: Fn(u64) -> Vec<Failure> + Sync + Send,
{
    if jobs <= 1 {
        return Ok(streams.iter().flat_map(|&s| f(s)).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))?;
    Ok(pool.install(|| streams.par_iter().flat_map_iter(|&s| f(s)).collect()))
}

pub fn sample_x<R: Rng>(rng: &mut R, params: &GmnParams, s: &Sampling) -> Ratio {
    let z = rng.gen_range(-s.b_prime..=s.b_prime);
    let i = rng.gen_range(0..=s.max_ij);
    let j = rng.gen_range(0..=s.max_ij);
    let den = params.m().pow_u(i as u64) * params.n().pow_u(j as u64);
    Ratio::new(BigInt::from(z), den).expect("m, n >= 1")
}

pub fn sample_element<R: Rng>(rng: &mut R, params: &GmnParams, s: &Sampling) -> GmnElement {
    let x = sample_x(rng, params, s);
    let p = rng.gen_range(-s.b..=s.b);
    params.element(x, p).expect("sampled components lie in Z[1/mn]")
}

pub fn sample_nonidentity<R: Rng>(rng: &mut R, params: &GmnParams, s: &Sampling) -> GmnElement {
    loop {
        let g = sample_element(rng, params, s);
        if !g.is_identity() {
            return g;
        }
    }
}
