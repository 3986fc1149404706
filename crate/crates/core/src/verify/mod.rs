//! Seeded property suites.
//!
//! Instance `i` of suite `name` draws from
//! `random::instance_rng(seed, name, i)`, so reports depend only on the seed,
//! the counts and the tolerances. Suites run in a fixed order and the report
//! carries no timings, which keeps its JSON byte-for-byte reproducible.

pub mod inputs;
mod suites;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::random;
use crate::tolerance::ToleranceConfig;
use suites::{Ctx, SuiteFn};

/// Dimension cap accepted for suite runs.
pub const MAX_DIM_CAP: usize = 64;

pub const DEFAULT_MAX_DIM: usize = 16;

/// Name, acceptance criterion, default instance count, whether the count
/// can be overridden, and the instance runner.
const SUITES: &[(&str, u8, usize, bool, SuiteFn)] = &[
    ("meet", 1, 500, true, suites::meet),
    ("identities", 2, 500, true, suites::identities),
    ("glb", 3, 500, true, suites::glb),
    ("glb-strict", 3, 100, true, suites::glb_strict),
    ("separativity", 4, 200, true, suites::separativity),
    ("equalizers", 5, 100, true, suites::equalizers),
    ("ee", 6, 300, true, suites::ee),
    ("ee-worked", 6, 1, false, suites::ee_worked),
    ("gap", 7, 200, true, suites::gap),
    ("gap-commuting", 7, 50, true, suites::gap_commuting),
    ("pullback", 8, 200, true, suites::pullback),
    ("interpolation", 8, 200, true, suites::interpolation),
    ("pushforward", 9, 200, true, suites::pushforward),
    ("calkin", 10, 1, false, suites::calkin),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.0).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Overrides the default instance count of every randomized suite.
    pub count: Option<usize>,
    pub max_dim: usize,
    pub tolerances: ToleranceConfig,
}

impl VerifyConfig {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            count: None,
            max_dim: DEFAULT_MAX_DIM,
            tolerances: ToleranceConfig::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if !(2..=MAX_DIM_CAP).contains(&self.max_dim) {
            return Err(Error::Config(format!(
                "max_dim must lie in 2..={MAX_DIM_CAP}, got {}",
                self.max_dim
            )));
        }
        if self.count == Some(0) {
            return Err(Error::Config("count must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub index: usize,
    /// The invariant that failed, or the error raised.
    pub violated: String,
    /// The instance in the input format of the matching subcommand.
    pub instance: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub criterion: u8,
    pub instances: usize,
    pub failures: usize,
    /// Largest value of the suite's error metric over instances that ran.
    pub worst_metric: Option<f64>,
    pub passed: bool,
    /// First failing instance.
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

pub fn run_suite(name: &str, config: &VerifyConfig) -> Result<SuiteReport> {
    config.validate()?;
    let &(name, criterion, default_count, scalable, run) = SUITES
        .iter()
        .find(|s| s.0 == name)
        .ok_or_else(|| Error::Config(format!("unknown suite {name:?}; known: {:?}", suite_names())))?;
    let count = match config.count {
        Some(c) if scalable => c,
        _ => default_count,
    };
    let ctx = Ctx {
        cfg: config.tolerances,
        max_dim: config.max_dim,
    };
    let mut failures = 0;
    let mut worst: Option<f64> = None;
    let mut counterexample = None;
    for i in 0..count {
        let mut rng = random::instance_rng(config.seed, name, i as u64);
        let t = run(&mut rng, &ctx);
        let violated = match t.check {
            Ok(c) => {
                worst = Some(worst.map_or(c.metric, |w| w.max(c.metric)));
                c.violated
            }
            Err(e) => Some(format!("error: {e}")),
        };
        if let Some(v) = violated {
            failures += 1;
            counterexample.get_or_insert(Counterexample {
                index: i,
                violated: v,
                instance: t.instance,
            });
        }
    }
    Ok(SuiteReport {
        name: name.to_string(),
        criterion,
        instances: count,
        failures,
        worst_metric: worst,
        passed: failures == 0,
        counterexample,
    })
}

pub fn verify(config: &VerifyConfig) -> Result<VerifyReport> {
    let suites = SUITES
        .iter()
        .map(|s| run_suite(s.0, config))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport {
        config: config.clone(),
        passed: suites.iter().all(|s| s.passed),
        suites,
    })
}
