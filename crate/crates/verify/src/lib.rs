//! Desk-scale verification of the bundle and classification results.
//!
//! Every suite returns [`VerificationReport`]s whose witness carries the
//! presentation and, for random instances, the `(seed, index)` it was drawn
//! from; [`instances`] rebuilds any instance from those two numbers. Suite
//! items run in parallel (feature `parallel`) and are reported in instance
//! order, so output depends only on the seed.

mod checks;
pub mod instances;
mod report;
mod suites;
mod theorem_d;

use std::str::FromStr;

pub use checks::{hilton_oracles, property_suite, verify_divisibility};
pub use report::{Instance, Status, SuiteReport, VerificationReport, Witness};
pub use suites::{stable_total_space, verify_rank2_example, verify_theorem_a, verify_theorem_b};
pub use theorem_d::{
    d_instances, run_sigma_achievability, run_theorem_d, verify_sigma_achievability, verify_theorem_d, DOptions,
};

use pdc_bundles::Result;

pub(crate) fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    A,
    B,
    D,
    Rank2,
    Sigma,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::A => "A",
            Suite::B => "B",
            Suite::D => "D",
            Suite::Rank2 => "rank2",
            Suite::Sigma => "sigma",
        }
    }

    /// Instances drawn when no sample count is given.
    pub fn default_samples(self) -> usize {
        match self {
            Suite::A => 100,
            Suite::B => 50,
            Suite::D | Suite::Sigma => 4,
            Suite::Rank2 => 0,
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "A" | "a" => Ok(Suite::A),
            "B" | "b" => Ok(Suite::B),
            "D" | "d" => Ok(Suite::D),
            "rank2" => Ok(Suite::Rank2),
            "sigma" => Ok(Suite::Sigma),
            _ => Err(format!("unknown suite {s:?}; expected A, B, D, rank2 or sigma")),
        }
    }
}

/// Runs one suite. `samples` defaults to [`Suite::default_samples`].
pub fn run_suite(suite: Suite, samples: Option<usize>, seed: u64, options: &DOptions) -> Result<SuiteReport> {
    let n = samples.unwrap_or(suite.default_samples());
    let limits = &options.limits;
    let reports = match suite {
        Suite::A => verify_theorem_a(n, seed, limits)?,
        Suite::B => verify_theorem_b(n, seed, limits)?,
        Suite::D => run_theorem_d(n, seed, options)?,
        Suite::Sigma => run_sigma_achievability(n, seed, options)?,
        Suite::Rank2 => verify_rank2_example(limits)?,
    };
    let (seed, samples) = if suite == Suite::Rank2 { (None, None) } else { (Some(seed), Some(n)) };
    Ok(SuiteReport::new(suite.name(), seed, samples, reports))
}
