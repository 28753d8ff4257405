//! The acceptance criteria, one PASS/FAIL line each. Exits non-zero when any
//! criterion fails.

use std::time::{Duration, Instant};

use pdc_algebra::Divisor24;
use pdc_bundles::{enumerate_admissible_residues_direct, is_admissible, lambda_of, Limits};
use pdc_eclass::{normal_form, table1, EPresentation, RankOneClass};
use pdc_manifold::{sigma, CohomologyClass4};
use pdc_verify::instances::{k2odd, odd_sigma_one_instance, s4xs4};
use pdc_verify::{
    hilton_oracles, property_suite, verify_divisibility, verify_theorem_a, verify_theorem_b, verify_theorem_d,
    DOptions, Instance, Status, VerificationReport,
};

const SEED: u64 = 20240611;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn within(limit: Duration, elapsed: Duration) -> bool {
    elapsed < limit
}

fn all_pass(reports: &[VerificationReport]) -> (bool, String) {
    let failed: Vec<&VerificationReport> = reports.iter().filter(|r| r.status != Status::Pass).collect();
    let detail = match failed.first() {
        None => format!("{} reports pass", reports.len()),
        Some(r) => format!("{} of {} reports not passing, first: {} {} ({})", failed.len(), reports.len(), r.theorem, r.instance, r.observed),
    };
    (failed.is_empty(), detail)
}

fn table1_criterion() -> Outcome {
    let start = Instant::now();
    let t = table1();
    let elapsed = start.elapsed();
    let counts: Vec<usize> = t.rows.iter().map(|r| r.count).collect();
    let singletons = t.rows[3].classes == vec![RankOneClass::new(3, 0, 0)] && t.rows[9].classes == vec![RankOneClass::new(9, 0, 0)];
    let ok = counts == [2, 3, 12, 1, 6, 3, 4, 3, 6, 1, 12, 3, 2] && singletons && within(Duration::from_secs(1), elapsed);
    outcome(ok, format!("counts {counts:?}, λ=3 and λ=9 singletons: {singletons}, {elapsed:.2?}"))
}

fn k2odd_criterion() -> Outcome {
    let start = Instant::now();
    let found = enumerate_admissible_residues_direct(&k2odd(), &Limits::default());
    let elapsed = start.elapsed();
    match found {
        Ok(list) => outcome(
            list.is_empty() && within(Duration::from_secs(1), elapsed),
            format!("{} admissible residues in (Z/24)², {elapsed:.2?}", list.len()),
        ),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn suite_criterion(limit: Duration, run: impl FnOnce() -> pdc_bundles::Result<Vec<VerificationReport>>) -> Outcome {
    let start = Instant::now();
    let reports = run();
    let elapsed = start.elapsed();
    match reports {
        Ok(reports) => {
            let (ok, detail) = all_pass(&reports);
            outcome(ok && within(limit, elapsed), format!("{detail}, {elapsed:.2?}"))
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn s4xs4_criterion() -> Outcome {
    let m = s4xs4();
    let psi = CohomologyClass4::new(vec![1, 0]);
    let admissible = is_admissible(&m, &psi);
    let lambda = lambda_of(&m, &psi).map(|r| r.lambda);
    let form = pdc_verify::stable_total_space(&m, &psi).map(|e| normal_form(&e));
    let target = normal_form(&EPresentation::trivial(1).expect("rank 1"));
    let ok = admissible && lambda == Ok(Divisor24::ZERO) && form.as_ref().is_ok_and(|f| *f == target);
    outcome(
        ok,
        format!(
            "ψ = (1,0) admissible: {admissible}, λ = {}, E = {}",
            lambda.map_or_else(|e| e.to_string(), |l| l.to_string()),
            form.map_or_else(|e| e.to_string(), |f| f.render().to_string())
        ),
    )
}

fn divisibility_criterion() -> Outcome {
    match verify_divisibility(10_000, SEED, &Limits::default()) {
        Ok(r) => outcome(r.passed(), r.observed),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn theorem_d1_criterion() -> Outcome {
    let start = Instant::now();
    let m = match odd_sigma_one_instance(7, Instance { seed: SEED, index: 0 }) {
        Ok(m) => m,
        Err(e) => return outcome(false, e.to_string()),
    };
    let reports = verify_theorem_d(&m, Some(Instance { seed: SEED, index: 0 }), "diag(1^7)", &DOptions::default());
    let elapsed = start.elapsed();
    let reports = match reports {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let d1 = reports.iter().find(|r| r.theorem == "D(1)").expect("D(1) report");
    let boxed = &d1.witness.data["box_sufficient"];
    outcome(
        sigma(&m) == Divisor24::ONE && d1.passed() && within(Duration::from_secs(600), elapsed),
        format!("σ = {}, {}, box sufficient: {boxed}, {elapsed:.2?}", sigma(&m), d1.observed),
    )
}

fn reports_criterion(reports: Vec<VerificationReport>, elapsed: Duration) -> Outcome {
    let (ok, detail) = all_pass(&reports);
    let lines: Vec<String> = reports.iter().map(|r| format!("{}: {}", r.theorem, r.observed)).collect();
    outcome(ok, format!("{}; {detail}, {elapsed:.2?}", lines.join("; ")))
}

fn main() {
    let criteria: Vec<(&str, Box<dyn FnOnce() -> Outcome>)> = vec![
        ("Table 1 reproduction", Box::new(table1_criterion)),
        ("k2odd has no admissible class", Box::new(k2odd_criterion)),
        (
            "existence: 100 odd k=3, 100 even k=4, blocker",
            Box::new(|| suite_criterion(Duration::from_secs(30), || verify_theorem_a(100, SEED, &Limits::default()))),
        ),
        (
            "stably trivial: 50 presentations, λ = 0",
            Box::new(|| suite_criterion(Duration::from_secs(60), || verify_theorem_b(50, SEED, &Limits::default()))),
        ),
        ("S⁴×S⁴", Box::new(s4xs4_criterion)),
        ("divisibility over 10⁴ pairs", Box::new(divisibility_criterion)),
        ("all divisors of 24 at k=7, σ=1", Box::new(theorem_d1_criterion)),
        (
            "composition calculus oracles",
            Box::new(|| {
                let start = Instant::now();
                let r = hilton_oracles(500, SEED);
                reports_criterion(r, start.elapsed())
            }),
        ),
        (
            "rewrite invariance, idempotence, basis changes",
            Box::new(|| {
                let start = Instant::now();
                let r = property_suite(1000, 500, SEED);
                reports_criterion(r, start.elapsed())
            }),
        ),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let o = run();
        if !o.ok {
            failures += 1;
        }
        println!("criterion {} {}: {name}: {}", i + 1, if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
