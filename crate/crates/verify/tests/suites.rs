use pdc_algebra::Divisor24;
use pdc_bundles::{achievable_lambdas, hypothesis_h8, is_admissible, lambda_of, AchievableOptions, Limits};
use pdc_manifold::{sigma, CohomologyClass4, ManifoldPresentation};
use pdc_verify::instances::{even_instance, hyperbolic_plane, odd_instance, stably_trivial_instance};
use pdc_verify::{
    run_suite, verify_rank2_example, verify_theorem_a, verify_theorem_b, verify_theorem_d, DOptions, Instance,
    Status, Suite, SuiteReport,
};

fn lambdas(m: &ManifoldPresentation) -> Vec<i64> {
    let r = achievable_lambdas(m, &AchievableOptions::default(), &Limits::default()).unwrap();
    r.residue_lambdas.iter().map(|d| d.residue()).collect()
}

#[test]
fn theorem_a_examples() {
    let reports = verify_theorem_a(10, 3, &Limits::default()).unwrap();
    assert_eq!(reports.len(), 21);
    assert!(reports.iter().all(|r| r.status == Status::Pass), "{reports:#?}");
    let blocker = reports.last().unwrap();
    assert!(blocker.observed.starts_with("no admissible class"));
}

#[test]
fn theorem_b_examples() {
    let reports = verify_theorem_b(6, 11, &Limits::default()).unwrap();
    assert_eq!(reports[0].instance, "S⁴×S⁴");
    assert!(reports.iter().all(|r| r.status == Status::Pass), "{reports:#?}");
    let m = stably_trivial_instance(4, Instance { seed: 5, index: 2 }).unwrap();
    assert_eq!(sigma(&m), Divisor24::ZERO);
    assert_eq!(lambdas(&m), vec![0]);
}

#[test]
fn rank_two_example() {
    // l = (1,1): both odd, no bundle
    assert!(lambdas(&hyperbolic_plane(1, 1)).is_empty());
    // l = (1,2): neither divisible by 3, every λ ≡ 0 (mod 3)
    let l12 = lambdas(&hyperbolic_plane(1, 2));
    assert!(!l12.is_empty() && l12.iter().all(|l| l % 3 == 0), "{l12:?}");
    // l = (3,1) has both entries odd, so it carries no bundle at all; with
    // l = (3,2) exactly one entry is divisible by 3 and some λ ≢ 0 (mod 3)
    assert!(lambdas(&hyperbolic_plane(3, 1)).is_empty());
    assert!(lambdas(&hyperbolic_plane(3, 2)).iter().any(|l| l % 3 != 0));

    let reports = verify_rank2_example(&Limits::default()).unwrap();
    let status: Vec<(&str, &Status)> = reports.iter().map(|r| (r.theorem.as_str(), &r.status)).collect();
    assert_eq!(
        status,
        vec![
            ("rank2 existence", &Status::Pass),
            ("rank2 (1)", &Status::Pass),
            ("rank2 (2)", &Status::Pass),
            ("rank2 (3)", &Status::Pass),
            ("rank2 (4)", &Status::Fail),
        ]
    );
    // the failure carries classes that reproduce it
    let data = &reports[4].witness.data;
    assert!(data["failing"].as_u64().unwrap() > 0);
    for ex in data["examples"].as_array().unwrap() {
        let l: Vec<i64> = serde_json::from_value(ex["l"].clone()).unwrap();
        let psi: Vec<i64> = serde_json::from_value(ex["psi"].clone()).unwrap();
        let m = hyperbolic_plane(l[0], l[1]);
        let psi = CohomologyClass4::new(psi);
        assert!(is_admissible(&m, &psi));
        assert_eq!(sigma(&m).two_part(), 2);
        assert_ne!(lambda_of(&m, &psi).unwrap().lambda.two_part(), 2);
    }
    // the smallest counterexample: l = (0,1), ψ = (1,0), λ = 0, σ = 2
    let m = hyperbolic_plane(0, 1);
    let psi = CohomologyClass4::new(vec![1, 0]);
    assert!(is_admissible(&m, &psi));
    assert_eq!((lambda_of(&m, &psi).unwrap().lambda, sigma(&m)), (Divisor24::ZERO, Divisor24::of(2)));
}

#[test]
fn theorem_d_examples() {
    let options = DOptions::default();
    // even forms of rank 6 with σ = 2, until one satisfies (H₈) and one does not
    let (mut with, mut without) = (None, None);
    for index in 0..200 {
        let m = even_instance(6, Instance { seed: 17, index }).unwrap();
        if sigma(&m).two_part() != 2 {
            continue;
        }
        match hypothesis_h8(&m).unwrap().holds {
            true if with.is_none() => with = Some((m, index)),
            false if without.is_none() => without = Some((m, index)),
            _ => {}
        }
        if with.is_some() && without.is_some() {
            break;
        }
    }
    for (case, h8) in [(with, true), (without, false)] {
        let (m, index) = case.expect("both cases occur among 200 draws");
        let reports = verify_theorem_d(&m, Some(Instance { seed: 17, index }), "even k=6", &options).unwrap();
        let d4 = reports.iter().find(|r| r.theorem == "D(4)").unwrap();
        assert_eq!(d4.status, Status::Pass, "{d4:#?}");
        assert_eq!(lambdas(&m).iter().any(|l| l % 8 == 0), h8);
        assert!(reports.iter().all(|r| r.status != Status::Fail), "{reports:#?}");
    }

    let m = odd_instance(5, Instance { seed: 1, index: 0 }).unwrap();
    let reports = verify_theorem_d(&m, None, "odd k=5", &options).unwrap();
    let d1 = reports.iter().find(|r| r.theorem == "D(1)").unwrap();
    assert!(matches!(d1.status, Status::Skipped(_)));
}

#[test]
fn resource_limits_surface_as_errors() {
    let options = DOptions { limits: Limits { max_rank: 4, ..Limits::default() }, ..DOptions::default() };
    let m = odd_instance(5, Instance { seed: 1, index: 0 }).unwrap();
    let err = verify_theorem_d(&m, None, "odd k=5", &options).unwrap_err();
    assert!(matches!(err, pdc_bundles::BundleError::ResourceLimit(_)));
}

#[test]
fn suites_are_deterministic_and_round_trip() {
    for suite in [Suite::A, Suite::B, Suite::D, Suite::Sigma] {
        let a = run_suite(suite, Some(3), 99, &DOptions::default()).unwrap();
        let b = run_suite(suite, Some(3), 99, &DOptions::default()).unwrap();
        let (ja, jb) = (serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(ja, jb);
        let back: SuiteReport = serde_json::from_str(&ja).unwrap();
        assert_eq!(back, a);
        assert_eq!(a.passed + a.failed + a.skipped, a.reports.len());
        assert!(a.to_table().lines().count() > a.reports.len());
    }
}

#[test]
fn random_failures_reproduce_from_seed_and_index() {
    let report = run_suite(Suite::A, Some(4), 5, &DOptions::default()).unwrap();
    for r in report.reports.iter().filter(|r| r.witness.index.is_some()) {
        let instance = Instance { seed: r.witness.seed.unwrap(), index: r.witness.index.unwrap() };
        let rebuilt = if r.instance.starts_with("odd") { odd_instance(3, instance) } else { even_instance(4, instance) };
        let file = pdc_manifold::PresentationFile::from_presentation(&rebuilt.unwrap());
        assert_eq!(r.witness.presentation.as_ref(), Some(&file));
    }
}
