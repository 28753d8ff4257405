mod common;

use std::collections::BTreeSet;

use common::*;
use pdc_algebra::num::gcd;
use pdc_algebra::{random_unimodular, Divisor24, IntMatrix};
use pdc_bundles::{
    achievable_lambdas, adapt_basis, epsilon_of, hypothesis_h4,
    hypothesis_h8, is_admissible, lambda_from_adapted, lambda_of, AchievableOptions,
    AdaptedBasis, BasisCase, BundleError, EpsilonS, LambdaRoute, Limits,
};
use pdc_manifold::{change_basis, is_stably_trivial, parity, sigma, CohomologyClass4, ManifoldPresentation, Parity};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn psi(n: &[i64]) -> CohomologyClass4 {
    CohomologyClass4::new(n.to_vec())
}

// gcd(24, τ(x)) over x ∈ (Z/24)^k with xᵀGψ ≡ 0 (mod 24).
fn lambda_brute(m: &ManifoldPresentation, n: &[i64]) -> Divisor24 {
    let k = m.k();
    let c = m.gram().mul_vec(n).unwrap();
    let v: Vec<i64> = m.stable_vector().iter().map(|r| r.value()).collect();
    let mut g = 24;
    for x in all_vectors(24, k) {
        let dot: i64 = x.iter().zip(&c).map(|(a, b)| a * b).sum();
        if dot.rem_euclid(24) == 0 {
            g = gcd(g, x.iter().zip(&v).map(|(a, b)| a * b).sum::<i64>());
        }
    }
    Divisor24::of(g)
}

// Up to 60 distinct admissible classes drawn from a small box.
fn admissible_lifts(m: &ManifoldPresentation) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(m.k() as u64);
    let mut out = BTreeSet::new();
    for _ in 0..6000 {
        let n: Vec<i64> = (0..m.k()).map(|_| rng.gen_range(-12..=12)).collect();
        if is_admissible(m, &psi(&n)) {
            out.insert(n);
            if out.len() == 60 {
                break;
            }
        }
    }
    out.into_iter().collect()
}

#[test]
fn s4xs4() {
    let m = pres(&hyp(), &[0, 0]);
    let r = lambda_of(&m, &psi(&[1, 0])).unwrap();
    assert_eq!(r.lambda, Divisor24::ZERO);
    assert_eq!(r.route, LambdaRoute::Adapted(BasisCase::Case2));
    let basis = adapt_basis(&m, &psi(&[1, 0])).unwrap();
    assert_eq!(basis.case, BasisCase::Case2);
    assert!(basis.satisfies_case());
    assert_eq!(basis.a.col(1), vec![1, 0]);
}

#[test]
fn identity_is_adapted_for_diagonal_forms() {
    let m = pres(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], &[0, 0, 0]);
    let basis = adapt_basis(&m, &psi(&[0, 0, 1])).unwrap();
    assert_eq!(basis.case, BasisCase::Case1);
    assert_eq!(basis.a, IntMatrix::identity(3));
}

#[test]
fn rank_two_case_two_can_lack_an_adapted_basis() {
    let m = pres(&hyp(), &[3, 0]);
    let p = psi(&[3, 5]);
    assert!(is_admissible(&m, &p));
    assert!(matches!(adapt_basis(&m, &p), Err(BundleError::NoAdaptedBasis(_))));
    let r = lambda_of(&m, &p).unwrap();
    assert_eq!(r.route, LambdaRoute::Perp);
    assert_eq!(r.lambda, lambda_brute(&m, &[3, 5]));
    assert!(adapt_basis(&pres(&[vec![1]], &[0]), &psi(&[1])).is_err());
}

#[test]
fn lambda_matches_brute_force() {
    let mut checked = 0;
    for seed in 0..40u64 {
        let k = 2 + (seed % 2) as usize;
        let m = random_presentation(k, seed);
        for n in admissible_lifts(&m).into_iter().step_by(5).take(12) {
            let r = lambda_of(&m, &psi(&n)).unwrap();
            assert_eq!(r.lambda, lambda_brute(&m, &n), "seed {seed}, ψ = {n:?}");
            checked += 1;
        }
    }
    assert!(checked > 100, "{checked}");
}

#[test]
fn adapted_bases_satisfy_their_case() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    while done < 200 {
        let k = rng.gen_range(3..=5);
        let m = random_presentation(k, rng.gen());
        if parity(&m) == Parity::Even {
            continue;
        }
        let lifts = admissible_lifts(&m);
        if lifts.is_empty() {
            continue;
        }
        let n = &lifts[rng.gen_range(0..lifts.len())];
        let b = adapt_basis(&m, &psi(n)).unwrap();
        assert!(b.a.is_unimodular().unwrap());
        assert_eq!(b.a.col(k - 1), *n);
        assert!(b.satisfies_case());
        assert_eq!(b.case == BasisCase::Case1, m.gram().bilinear(n, n).unwrap().abs() == 1);
        done += 1;
    }
}

// A second adaptation: compose with a change that keeps the case structure
// (unimodular on the first k−2 resp. k−1 vectors, shears into the second-to-last).
fn readapt(m: &ManifoldPresentation, b: &AdaptedBasis, seed: u64) -> AdaptedBasis {
    let k = m.k();
    let free = match b.case {
        BasisCase::Case1 => k - 1,
        BasisCase::Case2 => k - 2,
    };
    let mut c = IntMatrix::identity(k);
    if free > 0 {
        let r = random_unimodular(free, seed, 3 * free);
        for i in 0..free {
            for j in 0..free {
                c.set(i, j, r.get(i, j));
            }
        }
    }
    if b.case == BasisCase::Case2 {
        for j in 0..free {
            c.set(j, k - 2, (seed >> j) as i64 % 3 - 1);
        }
    }
    let a = b.a.mul(&c).unwrap();
    let transformed = change_basis(m, &a).unwrap();
    AdaptedBasis { a, case: b.case, transformed }
}

#[test]
fn lambda_is_independent_of_the_adapted_basis() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut done = 0;
    while done < 100 {
        let k = rng.gen_range(2..=6);
        let m = random_presentation(k, rng.gen());
        let lifts = admissible_lifts(&m);
        if lifts.is_empty() {
            continue;
        }
        let n = &lifts[rng.gen_range(0..lifts.len())];
        let Ok(b) = adapt_basis(&m, &psi(n)) else { continue };
        let other = readapt(&m, &b, rng.gen());
        assert!(other.satisfies_case());
        assert_eq!(other.a.col(k - 1), *n);
        assert_eq!(lambda_from_adapted(&other), lambda_from_adapted(&b));
        done += 1;
    }
}

#[test]
fn divisibility_and_parity() {
    let mut pairs = 0;
    for seed in 0..60u64 {
        let m = random_presentation(2 + (seed % 4) as usize, 1000 + seed);
        let s = sigma(&m);
        for n in admissible_lifts(&m).into_iter().take(60) {
            let l = lambda_of(&m, &psi(&n)).unwrap().lambda;
            assert!(l.is_multiple_of(s));
            if parity(&m) == Parity::Even {
                assert!(!l.is_odd());
                assert_eq!(epsilon_of(&m, &psi(&n)).unwrap(), EpsilonS::Zero);
            } else {
                assert_eq!(epsilon_of(&m, &psi(&n)).unwrap(), EpsilonS::Unknown);
            }
            pairs += 1;
        }
    }
    assert!(pairs > 1000, "{pairs}");
}

#[test]
fn stably_trivial_gives_zero() {
    let mut found = 0;
    for seed in 0..400u64 {
        let k = 2 + 2 * (seed % 3) as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // v = g_ii − 2l_i = 0 on a hyperbolic sum needs l ≡ 0 mod 12; conjugating keeps it trivial
        let base = pres(&IntMatrix::from_fn(k, k, |i, j| ((i ^ 1) == j) as i64).to_rows(), &vec![0; k]);
        let m = change_basis(&base, &random_unimodular(k, rng.gen(), 2 * k)).unwrap();
        assert!(is_stably_trivial(&m));
        for n in admissible_lifts(&m).into_iter().take(20) {
            assert_eq!(lambda_of(&m, &psi(&n)).unwrap().lambda, Divisor24::ZERO);
            assert_eq!(epsilon_of(&m, &psi(&n)).unwrap(), EpsilonS::Zero);
        }
        found += 1;
        if found == 10 {
            break;
        }
    }
    let r = achievable_lambdas(&pres(&hyp2(), &[0, 0, 0, 0]), &AchievableOptions::default(), &Limits::default())
        .unwrap();
    assert_eq!(r.lambdas, BTreeSet::from([Divisor24::ZERO]));
}

#[test]
fn achievable_examples() {
    let none = achievable_lambdas(
        &pres(&[vec![1, 0], vec![0, 1]], &[2, 2]),
        &AchievableOptions::default(),
        &Limits::default(),
    )
    .unwrap();
    assert!(none.lambdas.is_empty());
    for seed in 0..6u64 {
        let m = random_presentation(4, seed);
        let r = achievable_lambdas(&m, &AchievableOptions { seed, ..Default::default() }, &Limits::default()).unwrap();
        assert!(r.box_sufficient);
        assert!(!r.mod24_dependence_observed);
        assert_eq!(r.lambdas, r.residue_lambdas);
        let seq = achievable_lambdas(&m, &AchievableOptions { seed, ..Default::default() }, &Limits::default().sequential())
            .unwrap();
        assert_eq!(seq, r);
    }
}

// Brute force over (Z/8)^k: ker τ, its perpendicular, and the generator condition.
fn h8_brute(m: &ManifoldPresentation) -> bool {
    let k = m.k();
    let s2 = sigma(m).two_part();
    let g = m.gram();
    let v: Vec<i64> = m.stable_vector().iter().map(|r| r.value()).collect();
    let all = all_vectors(8, k);
    let ker: Vec<&Vec<i64>> =
        all.iter().filter(|x| x.iter().zip(&v).map(|(a, b)| a * b).sum::<i64>() % 8 == 0).collect();
    let perp: BTreeSet<Vec<i64>> = all
        .iter()
        .filter(|z| ker.iter().all(|x| g.bilinear(z, x).unwrap().rem_euclid(8) == 0))
        .cloned()
        .collect();
    let target = if s2 == 2 { 8 } else { 4 };
    all.iter().any(|p| {
        let gen: Vec<i64> = p.iter().map(|x| s2 * x % 8).collect();
        let span: BTreeSet<Vec<i64>> = (0..8).map(|u| gen.iter().map(|x| u * x % 8).collect()).collect();
        span == perp && g.bilinear(p, p).unwrap().rem_euclid(target) == 0
    })
}

fn h4_brute(m: &ManifoldPresentation) -> bool {
    let k = m.k();
    let g = m.gram();
    let v: Vec<i64> = m.stable_vector().iter().map(|r| r.value()).collect();
    let all4 = all_vectors(4, k);
    let ker: Vec<&Vec<i64>> =
        all4.iter().filter(|x| x.iter().zip(&v).map(|(a, b)| a * b).sum::<i64>() % 4 == 0).collect();
    let perp: BTreeSet<Vec<i64>> = all4
        .iter()
        .filter(|z| ker.iter().all(|x| g.bilinear(z, x).unwrap().rem_euclid(4) == 0))
        .cloned()
        .collect();
    all_vectors(8, k).iter().any(|p| {
        let gen: Vec<i64> = p.iter().map(|x| 2 * x % 4).collect();
        let span: BTreeSet<Vec<i64>> = (0..4).map(|u| gen.iter().map(|x| u * x % 4).collect()).collect();
        let sq = g.bilinear(p, p).unwrap().rem_euclid(8);
        let t = p.iter().zip(&v).map(|(a, b)| a * b).sum::<i64>().rem_euclid(8);
        span == perp && sq == t && (sq == 0 || sq == 4)
    })
}

#[test]
fn h8_example() {
    // v = (2, 0, 0, 0)
    let m = pres(&hyp2(), &[11, 0, 0, 0]);
    assert_eq!(sigma(&m).get(), 2);
    let r = hypothesis_h8(&m).unwrap();
    assert!(r.holds);
    assert!(h8_brute(&m));
    let w = r.witness.unwrap();
    assert_eq!(m.gram().bilinear(&w, &w).unwrap() % 8, 0);
    assert!(matches!(hypothesis_h8(&pres(&[vec![1, 0], vec![0, 1]], &[0, 0])), Err(BundleError::Precondition(_))));
    assert!(matches!(hypothesis_h4(&pres(&[vec![1, 0], vec![0, 1]], &[0, 0])), Err(BundleError::Precondition(_))));
}

#[test]
fn hypotheses_match_brute_force() {
    let (mut h8_false, mut h4_true, mut h4_false, mut tested) = (0, 0, 0, 0);
    for seed in 0..400u64 {
        let k = 2 + (seed % 3) as usize;
        let m = random_presentation(k, seed);
        let s2 = sigma(&m).two_part();
        if s2 != 2 && s2 != 4 {
            continue;
        }
        tested += 1;
        let h8 = hypothesis_h8(&m).unwrap().holds;
        assert_eq!(h8, h8_brute(&m), "seed {seed}");
        h8_false += (!h8) as u32;
        if s2 == 2 {
            let h4 = hypothesis_h4(&m).unwrap().holds;
            assert_eq!(h4, h4_brute(&m), "seed {seed}");
            h4_true += h4 as u32;
            h4_false += (!h4) as u32;
        }
    }
    assert!(tested > 40 && h8_false > 0 && h4_true > 0 && h4_false > 0, "{tested} {h8_false} {h4_true} {h4_false}");
}
