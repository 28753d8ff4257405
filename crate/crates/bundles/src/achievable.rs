use std::collections::{BTreeMap, BTreeSet};

use pdc_algebra::Divisor24;
use pdc_manifold::{CohomologyClass4, ManifoldPresentation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exec::map_slice;
use crate::search::LocalForm;
use crate::{admissible_residues, lambda_of, primitive_lifts_in_box, BundleError, FactoredResidues, Limits, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AchievableOptions {
    pub lift_radius: i64,
    /// Extra residues, drawn with `seed`, whose lifts are also checked.
    pub samples: usize,
    /// Lifts checked per sampled residue.
    pub lifts_per_sample: usize,
    pub seed: u64,
}

impl Default for AchievableOptions {
    fn default() -> Self {
        Self { lift_radius: 24, samples: 32, lifts_per_sample: 8, seed: 0 }
    }
}

/// Lifts of one residue class and what they gave.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftCheck {
    pub residue: Vec<i64>,
    pub residue_lambda: Divisor24,
    pub lifts_checked: usize,
    pub lambdas: BTreeSet<Divisor24>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AchievableReport {
    /// `λ(ψ)` over the checked integer lifts.
    pub lambdas: BTreeSet<Divisor24>,
    /// Values of `gcd(24, τ(ψ^⊥))` over all admissible residues.
    pub residue_lambdas: BTreeSet<Divisor24>,
    /// One integer class per achieved value.
    pub witnesses: BTreeMap<Divisor24, Vec<i64>>,
    pub checks: Vec<LiftCheck>,
    /// Some lift had a `λ` different from the value of its residue class.
    pub mod24_dependence_observed: bool,
    /// Every residue-level value had a primitive lift inside the box.
    pub box_sufficient: bool,
    pub residues_mod8: usize,
    pub residues_mod3: usize,
    pub visited: u64,
    pub lift_radius: i64,
}

fn lexmin_by_value(residues: &[Vec<i64>], values: &[i64]) -> BTreeMap<i64, Vec<i64>> {
    let mut out = BTreeMap::new();
    for (r, &d) in residues.iter().zip(values) {
        out.entry(d).or_insert_with(|| r.clone());
    }
    out
}

/// `{λ(ψ)}` over admissible `ψ` with entries in `[−R, R]`.
///
/// The residue search gives every value of `λ` on residue classes mod 24.
/// For each value the lexicographically least witness residue is lifted to
/// every primitive integer vector in the box and `λ` is recomputed from an
/// adapted basis; a seeded sample of further residues is lifted as well.
pub fn achievable_lambdas(
    m: &ManifoldPresentation,
    options: &AchievableOptions,
    limits: &Limits,
) -> Result<AchievableReport> {
    if m.k() < 2 {
        return Err(BundleError::Precondition("λ(ψ) needs k ≥ 2".into()));
    }
    let f = admissible_residues(m, limits)?;
    let mut report = AchievableReport {
        lambdas: BTreeSet::new(),
        residue_lambdas: BTreeSet::new(),
        witnesses: BTreeMap::new(),
        checks: Vec::new(),
        mod24_dependence_observed: false,
        box_sufficient: true,
        residues_mod8: f.mod8.len(),
        residues_mod3: f.mod3.len(),
        visited: f.visited,
        lift_radius: options.lift_radius,
    };
    if f.is_empty() {
        return Ok(report);
    }
    let (form8, form3) = (LocalForm::new(m, 8), LocalForm::new(m, 3));
    let d8 = map_slice(&f.mod8, limits.exec, |r| form8.d_part(r));
    let d3 = map_slice(&f.mod3, limits.exec, |r| form3.d_part(r));
    let first8 = lexmin_by_value(&f.mod8, &d8);
    let first3 = lexmin_by_value(&f.mod3, &d3);

    let mut targets: Vec<(Vec<i64>, Divisor24, usize)> = Vec::new();
    for (&a, r8) in &first8 {
        for (&b, r3) in &first3 {
            let value = Divisor24::from_parts(a, b);
            report.residue_lambdas.insert(value);
            targets.push((FactoredResidues::combine(r8, r3), value, usize::MAX));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    for _ in 0..options.samples {
        let i = rng.gen_range(0..f.mod8.len());
        let j = rng.gen_range(0..f.mod3.len());
        let value = Divisor24::from_parts(d8[i], d3[j]);
        targets.push((FactoredResidues::combine(&f.mod8[i], &f.mod3[j]), value, options.lifts_per_sample));
    }

    for (residue, value, cap) in targets {
        let lifts: Vec<Vec<i64>> =
            primitive_lifts_in_box(&residue, options.lift_radius).into_iter().take(cap).collect();
        if lifts.is_empty() && cap == usize::MAX {
            report.box_sufficient = false;
        }
        let results = map_slice(&lifts, limits.exec, |n| {
            lambda_of(m, &CohomologyClass4::new(n.clone())).map(|r| r.lambda)
        });
        let mut check = LiftCheck {
            residue,
            residue_lambda: value,
            lifts_checked: lifts.len(),
            lambdas: BTreeSet::new(),
        };
        for (n, lambda) in lifts.iter().zip(results) {
            let lambda = lambda?;
            check.lambdas.insert(lambda);
            if lambda != value {
                report.mod24_dependence_observed = true;
            }
            report.lambdas.insert(lambda);
            report.witnesses.entry(lambda).or_insert_with(|| n.clone());
        }
        report.checks.push(check);
    }
    Ok(report)
}
