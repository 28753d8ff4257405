use pdc_algebra::num::gcd_all;
use pdc_algebra::{complete_primitive_to_basis, random_unimodular, IntMatrix, Residue};
use pdc_bundles::{admissible_residues, lambda_of, primitive_lift, FactoredResidues, Limits, Result};
use pdc_eclass::{
    homotopy_equal, normal_form, ConnectCondition, EPresentation, Equality, Rank1Move, RankOneClass, Rewrite,
};
use pdc_manifold::{parity, sigma, tau, transport_class, CohomologyClass4, Parity};
use pdc_wedge::{compose_class, gram_of, pushforward, stable_vector, Pi7Wedge};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::instances::{even_instance, odd_instance, rebased};
use crate::par_map;
use crate::report::{Instance, Status, VerificationReport, Witness};

fn summary(theorem: &str, instance: String, expected: &str, checked: usize, failures: Vec<Value>, seed: u64) -> VerificationReport {
    VerificationReport::new(
        theorem,
        instance,
        expected,
        format!("{checked} checked, {} exceptions", failures.len()),
        Witness { seed: Some(seed), index: None, presentation: None, data: json!({ "exceptions": failures }) },
        Status::from_bool(failures.is_empty() && checked > 0),
    )
}

/// `σ(M) | λ(ψ)`, and `λ(ψ)` even for even forms, over at least `pairs`
/// pairs `(M, ψ)` with `M` of rank 2 to 6.
pub fn verify_divisibility(pairs: usize, seed: u64, limits: &Limits) -> Result<VerificationReport> {
    const PER_INSTANCE: usize = 200;
    let check_instance = |index: u64| -> Result<(usize, Vec<Value>)> {
        // rank 2..6, even forms on every other pass over the even ranks
        let instance = Instance { seed, index };
        let k = 2 + index as usize % 5;
        let m = if k % 2 == 0 && (index / 5) % 2 == 1 { even_instance(k, instance)? } else { odd_instance(k, instance)? };
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ index.rotate_left(17));
        let f = admissible_residues(&m, limits)?;
        if f.is_empty() {
            return Ok((0, vec![]));
        }
        let (s, even) = (sigma(&m), parity(&m) == Parity::Even);
        let (mut checked, mut bad) = (0, Vec::new());
        for _ in 0..4 * PER_INSTANCE {
            if checked == PER_INSTANCE {
                break;
            }
            let r8 = &f.mod8[rng.gen_range(0..f.mod8.len())];
            let r3 = &f.mod3[rng.gen_range(0..f.mod3.len())];
            let Some(mut n) = primitive_lift(&FactoredResidues::combine(r8, r3)) else { continue };
            // move to another lift of the same residue
            let i = rng.gen_range(0..k);
            n[i] += 24 * rng.gen_range(-2..=2);
            if gcd_all(&n) != 1 {
                continue;
            }
            let lambda = lambda_of(&m, &CohomologyClass4::new(n.clone()))?.lambda;
            checked += 1;
            if !lambda.is_multiple_of(s) || (even && lambda.is_odd()) {
                bad.push(json!({ "index": index, "psi": n, "lambda": lambda.residue(), "sigma": s.residue() }));
            }
        }
        Ok((checked, bad))
    };
    // batches of instances in index order until enough pairs are in
    let (mut checked, mut bad, mut instances) = (0, Vec::new(), 0u64);
    while checked < pairs && instances < 10 * (pairs / PER_INSTANCE + 1) as u64 {
        let batch = (pairs - checked).div_ceil(PER_INSTANCE) as u64 + 1;
        let jobs: Vec<u64> = (instances..instances + batch).collect();
        for r in par_map(&jobs, |&i| check_instance(i)) {
            let (c, b) = r?;
            checked += c;
            bad.extend(b);
        }
        instances += batch;
    }
    let mut report = summary(
        "divisibility",
        format!("{instances} random presentations, k = 2..6"),
        "σ(M) | λ(ψ); even form ⟹ λ(ψ) even",
        checked,
        bad,
        seed,
    );
    if checked < pairs {
        report.status = Status::Fail;
        report.observed = format!("only {checked} pairs checked, {pairs} requested");
    }
    Ok(report)
}

fn random_element(k: usize, rng: &mut ChaCha8Rng) -> Pi7Wedge {
    let mut l = Pi7Wedge::zero(k);
    for i in 0..k {
        l.set_s(i, rng.gen_range(-30..=30));
        l.set_t(i, rng.gen_range(0..12));
        for j in i + 1..k {
            l.set_w(i, j, rng.gen_range(-6..=6));
        }
    }
    l
}

fn random_matrix(rows: usize, cols: usize, bound: i64, rng: &mut ChaCha8Rng) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |_, _| rng.gen_range(-bound..=bound))
}

// Aᵀ G A by explicit index sums.
fn congruence(a: &IntMatrix, g: &IntMatrix) -> IntMatrix {
    let (k, kp) = (a.rows(), a.cols());
    IntMatrix::from_fn(kp, kp, |p, q| {
        (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).map(|(i, j)| a.get(i, p) * g.get(i, j) * a.get(j, q)).sum()
    })
}

fn element_json(l: &Pi7Wedge) -> Value {
    let k = l.k();
    json!({
        "w": (0..k).map(|i| (0..k).map(|j| if i == j { 0 } else { l.w(i.min(j), i.max(j)) }).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "s": l.nu(),
        "t": l.nu_prime().iter().map(|r| r.value()).collect::<Vec<_>>(),
    })
}

/// The composition calculus on `π₇(∨S⁴)` against independent recomputations:
/// Gram congruence, stable linearity and functoriality over `trials` random
/// cases each (`k ≤ 5`), and `compose_class` against the pushforward along a
/// completed basis for every primitive `n` with `k ≤ 3`, `|nᵢ| < 24`.
pub fn hilton_oracles(trials: usize, seed: u64) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut bad = Vec::new();
    for _ in 0..trials {
        let (k, kp) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let l = random_element(k, &mut rng);
        let a = random_matrix(k, kp, 4, &mut rng);
        match pushforward(&a, &l) {
            Ok(p) if *gram_of(&p) == congruence(&a, &gram_of(&l)) => {}
            other => bad.push(json!({ "l": element_json(&l), "a": a.to_rows(), "error": other.err().map(|e| e.to_string()) })),
        }
    }
    out.push(summary("gram congruence", format!("{trials} random (L, A), k ≤ 5"), "G(A_*L) = AᵀG(L)A", trials, bad, seed));

    let mut bad = Vec::new();
    for _ in 0..trials {
        let (k, kp) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let l = random_element(k, &mut rng);
        let a = random_matrix(k, kp, 4, &mut rng);
        let v: Vec<i64> = stable_vector(&l).iter().map(|r| r.value()).collect();
        let expected: Vec<Residue> =
            (0..kp).map(|p| Residue::mod24((0..k).map(|i| a.get(i, p) * v[i]).sum())).collect();
        if pushforward(&a, &l).map(|p| stable_vector(&p)) != Ok(expected) {
            bad.push(json!({ "l": element_json(&l), "a": a.to_rows() }));
        }
    }
    out.push(summary("stable linearity", format!("{trials} random (L, A), k ≤ 5"), "v(A_*L) = Aᵀv(L) mod 24", trials, bad, seed));

    let mut bad = Vec::new();
    for _ in 0..trials {
        let k = rng.gen_range(1..=5);
        let l = random_element(k, &mut rng);
        let (a, b) = if rng.gen_bool(0.5) {
            (random_matrix(k, k, 3, &mut rng), random_matrix(k, k, 3, &mut rng))
        } else {
            (random_unimodular(k, rng.gen(), 12), random_unimodular(k, rng.gen(), 12))
        };
        let lhs = a.mul(&b).and_then(|ab| pushforward(&ab, &l));
        let rhs = pushforward(&a, &l).and_then(|p| pushforward(&b, &p));
        if lhs.is_err() || lhs != rhs {
            bad.push(json!({ "l": element_json(&l), "a": a.to_rows(), "b": b.to_rows() }));
        }
    }
    out.push(summary("functoriality", format!("{trials} random (L, A, B), k ≤ 5"), "(AB)_* = B_*A_*", trials, bad, seed));

    let samples: Vec<Pi7Wedge> = (0..4).map(|_| random_element(3, &mut rng)).collect();
    let (mut checked, mut bad) = (0, Vec::new());
    for k in 1..=3usize {
        let restricted: Vec<Pi7Wedge> = samples.iter().map(|l| restrict(l, k)).collect();
        let mut n = vec![-23i64; k];
        loop {
            if gcd_all(&n) == 1 {
                let a = complete_primitive_to_basis(&n).expect("primitive").transpose();
                for l in &restricted {
                    let p = pushforward(&a, l).expect("bounded entries");
                    checked += 1;
                    if compose_class(&n, l) != Ok((p.s(k - 1), p.t(k - 1))) {
                        bad.push(json!({ "n": n, "l": element_json(l) }));
                    }
                }
            }
            if !next(&mut n, 23) {
                break;
            }
        }
    }
    out.push(summary(
        "compose_class",
        "every primitive n, k ≤ 3, |nᵢ| < 24".into(),
        "ψ∘L equals the last coordinate of the pushforward along a basis ending in n",
        checked,
        bad,
        seed,
    ));
    out
}

fn restrict(l: &Pi7Wedge, k: usize) -> Pi7Wedge {
    let mut out = Pi7Wedge::zero(k);
    for i in 0..k {
        out.set_s(i, l.s(i));
        out.set_t(i, l.t(i).value());
        for j in i + 1..k {
            out.set_w(i, j, l.w(i, j));
        }
    }
    out
}

fn next(n: &mut [i64], bound: i64) -> bool {
    for x in n.iter_mut() {
        if *x < bound {
            *x += 1;
            return true;
        }
        *x = -bound;
    }
    false
}

const UNITS: [i64; 8] = [1, 5, 7, 11, 13, 17, 19, 23];

fn random_presentation(rng: &mut ChaCha8Rng, max_rank: usize) -> EPresentation {
    let r = rng.gen_range(1..=max_rank);
    let factors = (0..r)
        .map(|_| {
            let l = if rng.gen_bool(0.5) { rng.gen_range(0..24) } else { [0, 1, 2, 3, 4, 6, 8, 12][rng.gen_range(0..8)] };
            RankOneClass::new(l, rng.gen_range(0..24), rng.gen_range(0..3))
        })
        .collect();
    EPresentation::new(factors).expect("rank ≥ 1")
}

fn random_rewrite(rng: &mut ChaCha8Rng, p: &EPresentation) -> Option<Rewrite> {
    let r = p.rank();
    let i = rng.gen_range(0..r);
    let j = (i + rng.gen_range(1..r.max(2))) % r;
    Some(match rng.gen_range(0..6) {
        0 => {
            let mv = match rng.gen_range(0..3) {
                0 => Rank1Move::Flip,
                1 => Rank1Move::ShiftNu(rng.gen_range(-30..30)),
                _ => Rank1Move::ShiftNuPrime(rng.gen_range(-30..30)),
            };
            Rewrite::Move { index: i, mv }
        }
        1 => Rewrite::Swap { i, j },
        2 | 3 => Rewrite::Connect { first: i, second: j, condition: ConnectCondition::LambdaEven },
        4 => {
            let spare = (0..r).find(|&s| s != i && p.factors()[s].is_trivial())?;
            Rewrite::Unit { index: i, spare, a: UNITS[rng.gen_range(0..8)] }
        }
        _ => {
            let e010 = (0..r).find(|&s| s != i && p.factors()[s].is_e010())?;
            Rewrite::WithE010 { index: i, e010 }
        }
    })
}

/// `homotopy_equal` under `rewrites` random identity applications (rank ≤ 5,
/// plus a spare `E_{0,0,0}` half of the time), idempotence of `normal_form`,
/// and `σ`, `τ`, parity under `basis_changes` random changes of basis.
pub fn property_suite(rewrites: usize, basis_changes: usize, seed: u64) -> Vec<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    let (mut applied, mut bad, mut idem_bad, mut forms) = (0, Vec::new(), Vec::new(), 0);
    while applied < rewrites {
        let mut p = random_presentation(&mut rng, 5);
        if rng.gen_bool(0.5) {
            p = pdc_eclass::connected_sum(&p, &EPresentation::trivial(1).expect("rank 1"));
        }
        let Some(rw) = random_rewrite(&mut rng, &p) else { continue };
        let Ok(q) = p.apply(&rw) else { continue };
        applied += 1;
        if homotopy_equal(&p, &q) != Equality::Equal {
            bad.push(json!({ "before": p.to_string(), "rewrite": rw, "after": q.to_string() }));
        }
        for e in [&p, &q] {
            forms += 1;
            let nf = normal_form(e);
            if normal_form(&nf.render()) != nf {
                idem_bad.push(json!({ "e": e.to_string(), "form": nf.render().to_string() }));
            }
        }
    }
    out.push(summary(
        "rewrite invariance",
        format!("{rewrites} random identity applications, rank ≤ 5"),
        "homotopy_equal(E, rewrite(E)) = Equal",
        applied,
        bad,
        seed,
    ));
    out.push(summary(
        "normal_form idempotent",
        format!("{forms} presentations"),
        "normal_form(render(normal_form(E))) = normal_form(E)",
        forms,
        idem_bad,
        seed,
    ));

    let mut bad = Vec::new();
    for index in 0..basis_changes as u64 {
        let instance = Instance { seed, index };
        let k = rng.gen_range(1..=5);
        let m = match odd_instance(k, instance) {
            Ok(m) => m,
            Err(e) => {
                bad.push(json!({ "index": index, "error": e.to_string() }));
                continue;
            }
        };
        let change = rng.gen::<u64>();
        let psi = CohomologyClass4::new((0..k).map(|_| rng.gen_range(-30..=30)).collect());
        let a = random_unimodular(k, change, 3 * k);
        let same = rebased(&m, change).ok().is_some_and(|m2| {
            sigma(&m2) == sigma(&m)
                && parity(&m2) == parity(&m)
                && transport_class(&a, &psi).ok().and_then(|p2| tau(&m2, &p2).ok()) == tau(&m, &psi).ok()
        });
        if !same {
            bad.push(json!({ "index": index, "change": change, "psi": psi.n }));
        }
    }
    out.push(summary(
        "basis invariance",
        format!("{basis_changes} random changes of basis, k ≤ 5"),
        "σ, parity and τ(ψ) unchanged",
        basis_changes,
        bad,
        seed,
    ));
    out
}
