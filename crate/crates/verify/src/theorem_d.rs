use std::collections::BTreeSet;

use pdc_algebra::Divisor24;
use pdc_bundles::{
    achievable_lambdas, epsilon_of, hypothesis_h4, hypothesis_h8, AchievableOptions, AchievableReport, EpsilonS,
    Limits, Result,
};
use pdc_manifold::{parity, sigma, CohomologyClass4, ManifoldPresentation, Parity};
use serde_json::{json, Value};

use crate::instances::{even_instance, odd_instance, odd_sigma_one_instance};
use crate::par_map;
use crate::report::{Instance, Status, VerificationReport, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DOptions {
    pub achievable: AchievableOptions,
    pub limits: Limits,
}

fn show(set: &BTreeSet<Divisor24>) -> String {
    let parts: Vec<String> = set.iter().map(|d| d.residue().to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn values(set: &BTreeSet<Divisor24>) -> Vec<i64> {
    set.iter().map(|d| d.residue()).collect()
}

/// The achievable set of `M` with everything the checks read off it.
struct Achieved<'a> {
    m: &'a ManifoldPresentation,
    instance: Option<Instance>,
    label: String,
    sigma: Divisor24,
    parity: Parity,
    report: AchievableReport,
}

impl Achieved<'_> {
    fn witness(&self, data: Value) -> Witness {
        Witness::of(self.m, self.instance, data)
    }

    fn sets(&self) -> Value {
        json!({
            "residue_lambdas": values(&self.report.residue_lambdas),
            "lifted_lambdas": values(&self.report.lambdas),
            "lift_radius": self.report.lift_radius,
            "box_sufficient": self.report.box_sufficient,
        })
    }

    fn skipped(&self, theorem: &str, expected: &str, reason: String) -> VerificationReport {
        VerificationReport::new(theorem, self.label.clone(), expected, "", self.witness(Value::Null), Status::Skipped(reason))
    }

    /// Existence of `λ` with `pred`: complete at residue level, and realized by
    /// an integer lift in the box.
    fn exists(&self, pred: impl Fn(Divisor24) -> bool) -> (bool, Option<(Divisor24, Vec<i64>)>) {
        let res = self.report.residue_lambdas.iter().any(|&d| pred(d));
        let lift = self.report.witnesses.iter().find(|(d, _)| pred(**d)).map(|(d, n)| (*d, n.clone()));
        (res, lift)
    }

    /// `∃ λ with pred` must equal `expected`; a residue-level hit needs a lifted witness.
    fn existence(&self, theorem: &str, claim: &str, expected: bool, pred: impl Fn(Divisor24) -> bool) -> VerificationReport {
        let (res, lift) = self.exists(pred);
        let observed = match (res, &lift) {
            (false, _) => "no such λ".to_string(),
            (true, Some((d, n))) => format!("λ = {d} at ψ = {n:?}"),
            (true, None) => format!("a residue class has such λ, but no lift in [−{0},{0}]^k: box insufficient", self.report.lift_radius),
        };
        let ok = res == expected && (!res || lift.is_some());
        let mut data = self.sets();
        data["psi"] = json!(lift.map(|(_, n)| n));
        VerificationReport::new(
            theorem,
            self.label.clone(),
            if expected { format!("some ψ with {claim}") } else { format!("no ψ with {claim}") },
            observed,
            self.witness(data),
            Status::from_bool(ok),
        )
    }
}

fn achieved<'a>(m: &'a ManifoldPresentation, instance: Option<Instance>, label: &str, options: &DOptions) -> Result<Achieved<'a>> {
    Ok(Achieved {
        m,
        instance,
        label: label.to_string(),
        sigma: sigma(m),
        parity: parity(m),
        report: achievable_lambdas(m, &options.achievable, &options.limits)?,
    })
}

fn multiples(s: Divisor24) -> BTreeSet<Divisor24> {
    Divisor24::ALL.into_iter().filter(|d| d.is_multiple_of(s)).collect()
}

/// Checks every item of the `λ`-achievability theorem that applies to `M`.
pub fn verify_theorem_d(
    m: &ManifoldPresentation,
    instance: Option<Instance>,
    label: &str,
    options: &DOptions,
) -> Result<Vec<VerificationReport>> {
    let a = achieved(m, instance, label, options)?;
    let (k, s) = (m.k(), a.sigma);
    let mut out = Vec::new();

    let all: BTreeSet<Divisor24> = a.report.residue_lambdas.union(&a.report.lambdas).copied().collect();
    let bad: Vec<i64> = all.iter().filter(|d| !d.is_multiple_of(s)).map(|d| d.residue()).collect();
    out.push(VerificationReport::new(
        "D div",
        label,
        format!("every λ is a multiple of σ = {s}"),
        format!("λ ∈ {}", show(&all)),
        a.witness(json!({ "not_multiples": bad, "sets": a.sets() })),
        Status::from_bool(bad.is_empty()),
    ));

    let expected = format!("{{λ}} = multiples of σ = {}", show(&multiples(s)));
    if a.parity == Parity::Odd && k >= 7 {
        let target = multiples(s);
        let ok = a.report.residue_lambdas == target && a.report.lambdas == target;
        let observed = if a.report.residue_lambdas == target && a.report.lambdas != target {
            format!(
                "residue classes give {}, lifts in [−{r},{r}]^k only {}: box insufficient",
                show(&a.report.residue_lambdas),
                show(&a.report.lambdas),
                r = a.report.lift_radius,
            )
        } else {
            format!("{{λ}} = {}", show(&a.report.lambdas))
        };
        let mut data = a.sets();
        data["witnesses"] = json!(a.report.witnesses.iter().map(|(d, n)| (d.residue().to_string(), n)).collect::<std::collections::BTreeMap<_, _>>());
        out.push(VerificationReport::new("D(1)", label, expected, observed, a.witness(data), Status::from_bool(ok)));
    } else {
        out.push(a.skipped("D(1)", &expected, format!("needs an odd form with k ≥ 7 ({} form, k = {k})", a.parity)));
    }

    if a.parity == Parity::Even {
        let mut bad = Vec::new();
        for (d, n) in &a.report.witnesses {
            let eps = epsilon_of(m, &CohomologyClass4::new(n.clone()))?;
            if eps != EpsilonS::Zero || d.is_odd() {
                bad.push(json!({ "psi": n, "lambda": d.residue(), "epsilon_s": eps }));
            }
        }
        out.push(VerificationReport::new(
            "D(2)",
            label,
            "ε_s(ψ) = 0 and λ(ψ) even for every ψ",
            format!("{} witnesses, {} violations", a.report.witnesses.len(), bad.len()),
            a.witness(json!({ "violations": bad })),
            Status::from_bool(bad.is_empty()),
        ));
    } else {
        out.push(a.skipped("D(2)", "ε_s(ψ) = 0 for every ψ", "needs an even form".into()));
    }

    if k >= 7 {
        out.push(a.existence("D(3) σ", &format!("λ = σ = {s}"), true, |d| d == s));
        let three_s = Divisor24::of(3 * s.get());
        out.push(a.existence("D(3) 3σ", &format!("λ = 3σ = {three_s}"), true, |d| d == three_s));
    } else {
        out.push(a.skipped("D(3)", "λ = σ and λ = 3σ both occur", format!("needs k ≥ 7 (k = {k})")));
    }

    if k >= 5 && matches!(s.two_part(), 2 | 4) {
        let h8 = hypothesis_h8(m)?;
        let mut r = a.existence("D(4)", "λ ≡ 0 (mod 8)", h8.holds, |d| d.two_part() == 8);
        r.expected = format!("{} [(H₈) {}]", r.expected, if h8.holds { "holds" } else { "fails" });
        r.witness.data["h8"] = json!(h8);
        out.push(r);
    } else {
        out.push(a.skipped("D(4)", "λ ≡ 0 (mod 8) occurs iff (H₈)", format!("needs σ ≡ 2, 4 (mod 8) and k ≥ 5 (σ = {s}, k = {k})")));
    }

    if k >= 5 && s.two_part() == 2 {
        let h4 = hypothesis_h4(m)?;
        let mut r = a.existence("D(5)", "λ ≡ 4 (mod 8)", h4.holds, |d| d.two_part() == 4);
        r.expected = format!("{} [(H₄) {}]", r.expected, if h4.holds { "holds" } else { "fails" });
        r.witness.data["h4"] = json!(h4);
        out.push(r);
    } else {
        out.push(a.skipped("D(5)", "λ ≡ 4 (mod 8) occurs iff (H₄)", format!("needs σ ≡ 2 (mod 8) and k ≥ 5 (σ = {s}, k = {k})")));
    }
    Ok(out)
}

/// Membership of the predicted values in the achievable set, `k ≥ 5`.
pub fn verify_sigma_achievability(
    m: &ManifoldPresentation,
    instance: Option<Instance>,
    label: &str,
    options: &DOptions,
) -> Result<Vec<VerificationReport>> {
    let k = m.k();
    if k < 5 {
        let w = Witness::of(m, instance, Value::Null);
        return Ok(vec![VerificationReport::new(
            "sigma",
            label,
            "k ≥ 5",
            "",
            w,
            Status::Skipped(format!("needs k ≥ 5 (k = {k})")),
        )]);
    }
    let a = achieved(m, instance, label, options)?;
    let s = a.sigma;
    let mut out = vec![a.existence("sigma mod 3", &format!("λ ≡ σ = {s} (mod 3)"), true, |d| d.three_part() == s.three_part())];
    if k >= 7 {
        out.push(a.existence("sigma mod 8", &format!("λ ≡ σ = {s} (mod 8)"), true, |d| d.two_part() == s.two_part()));
        if s.three_part() == 1 {
            let t = Divisor24::of(3 * s.get());
            out.push(a.existence("sigma 3σ", &format!("λ = 3σ = {t}"), true, |d| d == t));
        } else {
            out.push(a.skipped("sigma 3σ", "λ = 3σ occurs", format!("needs 3 ∤ σ (σ = {s})")));
        }
    } else {
        out.push(a.skipped("sigma mod 8", "λ ≡ σ (mod 8) occurs", format!("needs k ≥ 7 (k = {k})")));
    }
    if s.is_odd() {
        for (j, two) in [(0, 8), (2, 2), (4, 4)] {
            out.push(a.existence(&format!("sigma odd j={j}"), &format!("λ ≡ {j} (mod 8)"), true, |d| d.two_part() == two));
        }
    } else {
        out.push(a.skipped("sigma odd", "λ ≡ 0, 2, 4 (mod 8) all occur", format!("needs σ odd (σ = {s})")));
    }
    Ok(out)
}

/// Instances for the theorem D and σ suites: first `diag(1,…,1)` at `k = 7`
/// (σ = 1), then random odd `k = 7`, even `k = 6` and odd `k = 5` forms in turn.
pub fn d_instances(samples: usize, seed: u64) -> Result<Vec<(ManifoldPresentation, Instance, String)>> {
    let mut out = Vec::new();
    for index in 0..samples as u64 {
        let instance = Instance { seed, index };
        let (m, label) = match index % 4 {
            0 if index == 0 => (odd_sigma_one_instance(7, instance)?, "diag(1^7), l=0".to_string()),
            0 | 1 => (odd_instance(7, instance)?, format!("odd k=7 #{index}")),
            2 => (even_instance(6, instance)?, format!("even k=6 #{index}")),
            _ => (odd_instance(5, instance)?, format!("odd k=5 #{index}")),
        };
        out.push((m, instance, label));
    }
    Ok(out)
}

fn suite(
    samples: usize,
    seed: u64,
    options: &DOptions,
    check: fn(&ManifoldPresentation, Option<Instance>, &str, &DOptions) -> Result<Vec<VerificationReport>>,
) -> Result<Vec<VerificationReport>> {
    let instances = d_instances(samples, seed)?;
    let per = par_map(&instances, |(m, instance, label)| check(m, Some(*instance), label, options));
    let mut out = Vec::new();
    for r in per {
        out.extend(r?);
    }
    Ok(out)
}

pub fn run_theorem_d(samples: usize, seed: u64, options: &DOptions) -> Result<Vec<VerificationReport>> {
    suite(samples, seed, options, verify_theorem_d)
}

pub fn run_sigma_achievability(samples: usize, seed: u64, options: &DOptions) -> Result<Vec<VerificationReport>> {
    suite(samples, seed, options, verify_sigma_achievability)
}
