use std::collections::BTreeSet;

use pdc_algebra::{Divisor24, Residue};
use pdc_bundles::{
    adapt_basis, admissible_residues, enumerate_admissible_residues_direct, epsilon_of, is_admissible, lambda_of,
    local_lambda_part, primitive_lift, BasisCase, BundleError, EpsilonS, FactoredResidues, Limits, Result,
};
use pdc_eclass::{normal_form, EPresentation, RankOneClass};
use pdc_manifold::{sigma, CohomologyClass4, ManifoldPresentation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::instances::{even_instance, hyperbolic_plane, k2odd, odd_instance, s4xs4, stably_trivial_instance};
use crate::par_map;
use crate::report::{Instance, Status, VerificationReport, Witness};

/// Stream offset separating the instance families of one suite.
const FAMILY: u64 = 1 << 32;

/// The lexicographically least admissible residue, lifted to a primitive
/// integer class.
fn first_admissible(f: &FactoredResidues) -> Option<Vec<i64>> {
    primitive_lift(&FactoredResidues::combine(f.mod8.first()?, f.mod3.first()?))
}

fn existence_report(m: &ManifoldPresentation, label: String, instance: Instance, limits: &Limits) -> Result<VerificationReport> {
    let f = admissible_residues(m, limits)?;
    let psi = first_admissible(&f);
    // the lift is re-checked against the congruence directly
    let ok = psi.as_ref().is_some_and(|n| is_admissible(m, &CohomologyClass4::new(n.clone())));
    let observed = match &psi {
        Some(n) => format!("ψ = {n:?} admissible ({} × {} residues mod 8 × mod 3)", f.mod8.len(), f.mod3.len()),
        None => "no admissible class".to_string(),
    };
    Ok(VerificationReport::new(
        "A",
        label,
        "an admissible class exists",
        observed,
        Witness::of(m, Some(instance), json!({ "psi": psi })),
        Status::from_bool(ok),
    ))
}

/// Odd forms of rank 3 and even forms of rank 4 carry admissible classes;
/// `diag(1,1)` with `l = (2,2)` carries none.
pub fn verify_theorem_a(samples: usize, seed: u64, limits: &Limits) -> Result<Vec<VerificationReport>> {
    let mut jobs: Vec<(bool, u64)> = (0..samples as u64).map(|i| (true, i)).collect();
    jobs.extend((0..samples as u64).map(|i| (false, FAMILY + i)));
    let mut out = par_map(&jobs, |&(odd, index)| {
        let instance = Instance { seed, index };
        let (m, label) = if odd {
            (odd_instance(3, instance)?, format!("odd k=3 #{index}"))
        } else {
            (even_instance(4, instance)?, format!("even k=4 #{}", index - FAMILY))
        };
        existence_report(&m, label, instance, limits)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let m = k2odd();
    let factored = admissible_residues(&m, limits)?;
    let direct = enumerate_admissible_residues_direct(&m, limits)?;
    let none = factored.is_empty() && direct.is_empty();
    out.push(VerificationReport::new(
        "A",
        "diag(1,1), l=(2,2)",
        "no admissible class",
        if none {
            "no admissible class (mod 8 × mod 3 and direct mod 24 searches)".to_string()
        } else {
            format!("{} admissible residues mod 24", direct.len())
        },
        Witness::of(&m, None, json!({ "admissible": direct.first() })),
        Status::from_bool(none),
    ));
    Ok(out)
}

/// The total space `E(ψ)` at the stable level, for even intersection forms:
/// one factor per generator of `ψ^⊥` in an adapted basis, `λᵢ` the stable
/// coefficient there, `s = r = 0`.
pub fn stable_total_space(m: &ManifoldPresentation, psi: &CohomologyClass4) -> Result<EPresentation> {
    if epsilon_of(m, psi)? != EpsilonS::Zero {
        return Err(BundleError::Precondition("the ν-parts of E(ψ) are only known for even forms".into()));
    }
    let k = m.k();
    let lambdas: Vec<Residue> = match adapt_basis(m, psi) {
        Ok(basis) => {
            let u = basis.transformed.stable_vector();
            let mut l = u[..k - 2].to_vec();
            l.push(match basis.case {
                BasisCase::Case1 => u[k - 2],
                BasisCase::Case2 => u[k - 1] - Residue::mod24(basis.transformed.gram().get(k - 1, k - 1)) * u[k - 2],
            });
            l
        }
        Err(BundleError::NoAdaptedBasis(_)) => vec![Residue::mod24(lambda_of(m, psi)?.lambda.residue())],
        Err(e) => return Err(e),
    };
    EPresentation::new(lambdas.iter().map(|l| RankOneClass::new(l.value(), 0, 0)).collect())
        .map_err(|e| BundleError::Precondition(e.to_string()))
}

/// Lifts checked per stably trivial instance.
const B_LIFTS: usize = 12;

fn stably_trivial_report(
    m: &ManifoldPresentation,
    label: String,
    instance: Option<Instance>,
    limits: &Limits,
) -> Result<VerificationReport> {
    let k = m.k();
    let f = admissible_residues(m, limits)?;
    let witness = |data| Witness::of(m, instance, data);
    if f.is_empty() {
        return Ok(VerificationReport::new(
            "B",
            label,
            "λ(ψ) = 0 for every admissible ψ",
            "no admissible class",
            witness(json!({})),
            Status::Skipped("no admissible class".into()),
        ));
    }
    // λ = (2-part)·(3-part), so every residue mod 24 is covered by the two factors
    let bad8: Vec<&Vec<i64>> =
        f.mod8.iter().filter(|r| local_lambda_part(m, r, 8).map_or(true, |d| d != 8)).collect();
    let bad3: Vec<&Vec<i64>> =
        f.mod3.iter().filter(|r| local_lambda_part(m, r, 3).map_or(true, |d| d != 3)).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(instance.map_or(0, |i| i.index));
    let trivial = normal_form(&EPresentation::trivial(k - 1).expect("k ≥ 2"));
    let mut bad_lifts = Vec::new();
    for _ in 0..B_LIFTS {
        let r8 = &f.mod8[rng.gen_range(0..f.mod8.len())];
        let r3 = &f.mod3[rng.gen_range(0..f.mod3.len())];
        let Some(n) = primitive_lift(&FactoredResidues::combine(r8, r3)) else { continue };
        let psi = CohomologyClass4::new(n.clone());
        let lambda = lambda_of(m, &psi)?.lambda;
        let eps = epsilon_of(m, &psi)?;
        let e = stable_total_space(m, &psi)?;
        if lambda != Divisor24::ZERO || eps != EpsilonS::Zero || normal_form(&e) != trivial {
            bad_lifts.push(json!({ "psi": n, "lambda": lambda.residue(), "epsilon_s": eps, "e": e.to_string() }));
        }
    }
    let ok = bad8.is_empty() && bad3.is_empty() && bad_lifts.is_empty();
    let observed = if ok {
        format!(
            "λ = 0 on all {} admissible residues; ε_s = 0; E ≃ #^{} E_{{0,0,0}}",
            f.count(),
            k - 1
        )
    } else {
        format!("{} residues mod 8, {} mod 3 and {} lifts violate it", bad8.len(), bad3.len(), bad_lifts.len())
    };
    Ok(VerificationReport::new(
        "B",
        label,
        format!("λ(ψ) = 0, ε_s = 0 and E(ψ) ≃ #^{} E_{{0,0,0}} for every admissible ψ", k - 1),
        observed,
        witness(json!({ "mod8": bad8.first(), "mod3": bad3.first(), "lifts": bad_lifts })),
        Status::from_bool(ok),
    ))
}

/// Stably trivial presentations: `S⁴ × S⁴`, then `samples` random ones of
/// rank 2, 4 or 6.
pub fn verify_theorem_b(samples: usize, seed: u64, limits: &Limits) -> Result<Vec<VerificationReport>> {
    let mut out = vec![stably_trivial_report(&s4xs4(), "S⁴×S⁴".into(), None, limits)?];
    let jobs: Vec<u64> = (0..samples as u64).collect();
    let random = par_map(&jobs, |&index| {
        let instance = Instance { seed, index };
        let k = [2, 4, 6][index as usize % 3];
        let m = stably_trivial_instance(k, instance)?;
        stably_trivial_report(&m, format!("stably trivial k={k} #{index}"), Some(instance), limits)
    });
    for r in random {
        out.push(r?);
    }
    Ok(out)
}

/// `λ` of every admissible residue of the hyperbolic plane with `l = (l₁, l₂)`.
fn rank2_lambdas(l1: i64, l2: i64, limits: &Limits) -> Result<BTreeSet<Divisor24>> {
    let m = hyperbolic_plane(l1, l2);
    let f = admissible_residues(&m, limits)?;
    let d8: BTreeSet<i64> = f.mod8.iter().map(|r| local_lambda_part(&m, r, 8)).collect::<Result<_>>()?;
    let d3: BTreeSet<i64> = f.mod3.iter().map(|r| local_lambda_part(&m, r, 3)).collect::<Result<_>>()?;
    Ok(d8.iter().flat_map(|&a| d3.iter().map(move |&b| Divisor24::from_parts(a, b))).collect())
}

/// A residue class of the hyperbolic plane with the given `λ`, as a witness.
fn rank2_class_with(l1: i64, l2: i64, lambda: Divisor24, limits: &Limits) -> Result<Option<Vec<i64>>> {
    let m = hyperbolic_plane(l1, l2);
    let f = admissible_residues(&m, limits)?;
    for r8 in &f.mod8 {
        for r3 in &f.mod3 {
            let d = Divisor24::from_parts(local_lambda_part(&m, r8, 8)?, local_lambda_part(&m, r3, 3)?);
            if d == lambda {
                return Ok(primitive_lift(&FactoredResidues::combine(r8, r3)));
            }
        }
    }
    Ok(None)
}

struct Rank2Row {
    l: (i64, i64),
    sigma: Divisor24,
    lambdas: BTreeSet<Divisor24>,
}

/// The rank-two even example, exhaustively over `l ∈ (Z/12)²`: existence
/// exactly when some `lᵢ` is even, and the four observations on `λ`.
pub fn verify_rank2_example(limits: &Limits) -> Result<Vec<VerificationReport>> {
    let pairs: Vec<(i64, i64)> = (0..12).flat_map(|a| (0..12).map(move |b| (a, b))).collect();
    let rows: Vec<Rank2Row> = par_map(&pairs, |&(l1, l2)| {
        Ok(Rank2Row { l: (l1, l2), sigma: sigma(&hyperbolic_plane(l1, l2)), lambdas: rank2_lambdas(l1, l2, limits)? })
    })
    .into_iter()
    .collect::<Result<_>>()?;

    let mut out = Vec::new();
    let mut report = |theorem: &str,
                      expected: &str,
                      applies: &dyn Fn(&Rank2Row) -> bool,
                      holds: &dyn Fn(&Rank2Row) -> bool,
                      bad_lambda: Option<&dyn Fn(Divisor24) -> bool>|
     -> Result<()> {
        let applicable: Vec<&Rank2Row> = rows.iter().filter(|r| applies(r)).collect();
        let failing: Vec<&Rank2Row> = applicable.iter().copied().filter(|r| !holds(r)).collect();
        let mut witnesses = Vec::new();
        for r in failing.iter().take(8) {
            let psi = match bad_lambda.and_then(|bad| r.lambdas.iter().copied().find(|&d| bad(d))) {
                Some(d) => rank2_class_with(r.l.0, r.l.1, d, limits)?,
                None => None,
            };
            witnesses.push(json!({
                "l": [r.l.0, r.l.1],
                "sigma": r.sigma.residue(),
                "lambdas": r.lambdas.iter().map(|d| d.residue()).collect::<Vec<_>>(),
                "psi": psi,
            }));
        }
        out.push(VerificationReport::new(
            theorem,
            "hyperbolic plane, l ∈ (Z/12)²",
            expected,
            format!("{} of {} applicable pairs hold", applicable.len() - failing.len(), applicable.len()),
            Witness { seed: None, index: None, presentation: None, data: json!({ "failing": failing.len(), "examples": witnesses }) },
            Status::from_bool(failing.is_empty()),
        ));
        Ok(())
    };
    let exists = |r: &Rank2Row| !r.lambdas.is_empty();
    let div3 = |l: i64| l % 3 == 0;

    report(
        "rank2 existence",
        "an admissible class exists iff l₁ or l₂ is even",
        &|_| true,
        &|r| exists(r) == (r.l.0 % 2 == 0 || r.l.1 % 2 == 0),
        None,
    )?;
    report(
        "rank2 (1)",
        "3 ∤ l₁, 3 ∤ l₂ ⟹ every λ ≡ 0 (mod 3)",
        &|r| exists(r) && !div3(r.l.0) && !div3(r.l.1),
        &|r| r.lambdas.iter().all(|d| d.three_part() == 3),
        Some(&|d: Divisor24| d.three_part() != 3),
    )?;
    report(
        "rank2 (2)",
        "exactly one of l₁, l₂ divisible by 3 ⟹ some λ ≢ 0 (mod 3)",
        &|r| exists(r) && div3(r.l.0) != div3(r.l.1),
        &|r| r.lambdas.iter().any(|d| d.three_part() == 1),
        None,
    )?;
    report(
        "rank2 (3)",
        "σ ≡ 4 (mod 8), l₁l₂ ≡ 0 (mod 8), 3 ∤ l₁, 3 ∤ l₂ ⟹ some λ ≡ 0 (mod 8)",
        &|r| exists(r) && r.sigma.two_part() == 4 && (r.l.0 * r.l.1) % 8 == 0 && !div3(r.l.0) && !div3(r.l.1),
        &|r| r.lambdas.iter().any(|d| d.two_part() == 8),
        None,
    )?;
    report(
        "rank2 (4)",
        "σ ≡ 2 (mod 8) ⟹ no λ ≡ 0, 4 (mod 8)",
        &|r| exists(r) && r.sigma.two_part() == 2,
        &|r| r.lambdas.iter().all(|d| d.two_part() == 2),
        Some(&|d: Divisor24| d.two_part() != 2),
    )?;
    Ok(out)
}
