use std::collections::{BTreeMap, BTreeSet};

use pdc_algebra::Divisor24;
use pdc_eclass::{
    connected_sum, eps_hat_invariant, homotopy_equal, j_invariant, normal_form, normal_form_with_trace,
    stable_invariants, ConnectCondition, Derivation, EFile, ENormalForm, EPresentation, Equality, Rank1Move,
    RankOneClass, Rewrite,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn e(l: i64, eps: i64, d: i64) -> RankOneClass {
    RankOneClass::new(l, eps, d)
}

fn pres(f: &[(i64, i64, i64)]) -> EPresentation {
    EPresentation::new(f.iter().map(|&(l, eps, d)| e(l, eps, d)).collect()).unwrap()
}

const UNITS: [i64; 8] = [1, 5, 7, 11, 13, 17, 19, 23];

#[test]
fn stable_invariant_examples() {
    let s = stable_invariants(&pres(&[(4, 0, 0), (6, 0, 0)]));
    assert_eq!((s.lambda_s, s.eps_s), (Divisor24::of(2), 0));
    let s = stable_invariants(&pres(&[(1, 1, 0), (0, 0, 0)]));
    assert_eq!((s.lambda_s, s.eps_s), (Divisor24::ONE, 0));
    let s = stable_invariants(&pres(&[(0, 1, 0)]));
    assert_eq!((s.lambda_s, s.eps_s), (Divisor24::ZERO, 1));
}

#[test]
fn normal_form_examples() {
    let nf = normal_form(&pres(&[(0, 0, 0), (0, 0, 0), (12, 1, 0)]));
    assert_eq!((nf.rank, nf.lambda_s, nf.eps_hat), (3, Divisor24::of(12), 0));
    assert!([e(12, 0, 0), e(12, 1, 0)].contains(&nf.tail));

    let nf = normal_form(&EPresentation::trivial(4).unwrap());
    assert_eq!(nf, ENormalForm { rank: 4, lambda_s: Divisor24::ZERO, eps_hat: 0, tail: e(0, 0, 0) });
    assert_eq!(nf.render(), EPresentation::trivial(4).unwrap());

    // E_{0,1,0} # E_{2,0,0}: the E_{0,1,0} summand survives next to an even tail
    let nf = normal_form(&pres(&[(0, 1, 0), (2, 0, 0)]));
    assert_eq!((nf.eps_hat, nf.tail), (1, e(2, 0, 0)));
    assert_eq!(nf.case(), 2);
}

#[test]
fn homotopy_equal_examples() {
    let a = pres(&[(0, 0, 0), (0, 2, 0)]);
    assert_eq!(homotopy_equal(&a, &EPresentation::trivial(2).unwrap()), Equality::Equal);
    assert_eq!(homotopy_equal(&pres(&[(0, 0, 0)]), &pres(&[(0, 1, 0)])), Equality::NotEqual);
    assert_eq!(homotopy_equal(&a, &a), Equality::Equal);
    assert_eq!(homotopy_equal(&pres(&[(0, 0, 0)]), &a), Equality::NotEqual);
}

#[test]
fn connected_sum_adds_ranks() {
    let a = pres(&[(1, 0, 0)]);
    let b = pres(&[(2, 3, 1), (4, 0, 0)]);
    assert_eq!(connected_sum(&a, &b).rank(), 3);
    let folded = (0..4).fold(pres(&[(0, 0, 0)]), |acc, _| connected_sum(&acc, &pres(&[(0, 0, 0)])));
    assert_eq!(folded, EPresentation::trivial(5).unwrap());
    let c = pres(&[(3, 0, 0)]);
    assert_eq!(connected_sum(&connected_sum(&a, &b), &c), connected_sum(&a, &connected_sum(&b, &c)));
}

#[test]
fn eight_divides_lambda_merges_the_even_shapes() {
    for eps in (0..24).step_by(2) {
        for d in 0..3 {
            let lhs = pres(&[(0, 1, 0), (8, eps, d)]);
            let rhs = pres(&[(0, 0, 0), (8, 1 + 7 * eps, d)]);
            assert_eq!(homotopy_equal(&lhs, &rhs), Equality::Equal);
            assert_eq!(normal_form(&lhs).eps_hat, 0);
        }
    }
    assert_eq!(homotopy_equal(&pres(&[(0, 1, 0), (0, 0, 0)]), &pres(&[(0, 0, 0), (0, 1, 0)])), Equality::Equal);
}

// ---------------------------------------------------------------------------
// Exhaustive rank-two oracle: connected components of all 1728² presentations
// under every identity, compared with the normal form.

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] as usize != x {
            let p = self.0[x] as usize;
            self.0[x] = self.0[p];
            x = p;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b) as u32;
        }
    }
}

fn identity_images(p: &EPresentation) -> Vec<EPresentation> {
    let mut rules = vec![Rewrite::Swap { i: 0, j: 1 }];
    for index in 0..2 {
        for mv in [Rank1Move::Flip, Rank1Move::ShiftNu(1), Rank1Move::ShiftNuPrime(1)] {
            rules.push(Rewrite::Move { index, mv });
        }
        let other = 1 - index;
        rules.push(Rewrite::Connect { first: index, second: other, condition: ConnectCondition::ProductEven });
        for a in UNITS {
            rules.push(Rewrite::Unit { index, spare: other, a });
        }
    }
    rules.iter().filter_map(|rw| p.apply(rw).ok()).collect()
}

fn state(p: &EPresentation) -> usize {
    p.factors()[0].index() * 1728 + p.factors()[1].index()
}

fn from_state(s: usize) -> EPresentation {
    EPresentation::new(vec![RankOneClass::from_index(s / 1728), RankOneClass::from_index(s % 1728)]).unwrap()
}

#[test]
fn rank_two_exhaustive() {
    let n = 1728 * 1728;
    let mut uf = UnionFind((0..n as u32).collect());
    for s in 0..n {
        let p = from_state(s);
        for q in identity_images(&p) {
            uf.union(s, state(&q));
        }
    }
    // identity classes never straddle two normal forms
    let mut form_of_class: BTreeMap<usize, ENormalForm> = BTreeMap::new();
    let mut classes_of_form: BTreeMap<ENormalForm, BTreeSet<usize>> = BTreeMap::new();
    for s in 0..n {
        let p = from_state(s);
        let nf = normal_form(&p);
        let root = uf.find(s);
        let prev = *form_of_class.entry(root).or_insert(nf);
        assert_eq!(prev, nf, "{p} shares an identity class with a different normal form");
        classes_of_form.entry(nf).or_default().insert(root);
    }
    let mut per_lambda: BTreeMap<i64, usize> = BTreeMap::new();
    for (nf, roots) in &classes_of_form {
        *per_lambda.entry(nf.lambda_s.residue()).or_default() += 1;
        if !nf.lambda_s.is_odd() {
            // even λ_s: the identities reach the normal form
            assert_eq!(roots.len(), 1, "{nf:?} splits into {} identity classes", roots.len());
        }
    }
    let expected = BTreeMap::from([(0, 2), (1, 6), (2, 18), (3, 2), (4, 9), (6, 6), (8, 6), (12, 3)]);
    assert_eq!(per_lambda, expected);
}

// ---------------------------------------------------------------------------
// Random presentations and random identity applications.

fn random_presentation(rng: &mut ChaCha8Rng, max_rank: usize) -> EPresentation {
    let r = rng.gen_range(1..=max_rank);
    let factors = (0..r)
        .map(|_| {
            // bias towards small λ so that every λ_s shows up
            let l = if rng.gen_bool(0.5) { rng.gen_range(0..24) } else { [0, 1, 2, 3, 4, 6, 8, 12][rng.gen_range(0..8)] };
            e(l, rng.gen_range(0..24), rng.gen_range(0..3))
        })
        .collect();
    EPresentation::new(factors).unwrap()
}

fn random_rewrite(rng: &mut ChaCha8Rng, p: &EPresentation, condition: ConnectCondition) -> Option<Rewrite> {
    let r = p.rank();
    let i = rng.gen_range(0..r);
    let j = (i + rng.gen_range(1..r.max(2))) % r;
    let rw = match rng.gen_range(0..6) {
        0 => {
            let mv = match rng.gen_range(0..3) {
                0 => Rank1Move::Flip,
                1 => Rank1Move::ShiftNu(rng.gen_range(-30..30)),
                _ => Rank1Move::ShiftNuPrime(rng.gen_range(-30..30)),
            };
            Rewrite::Move { index: i, mv }
        }
        1 => Rewrite::Swap { i, j },
        2 | 3 => Rewrite::Connect { first: i, second: j, condition },
        4 => {
            let spare = (0..r).find(|&s| s != i && p.factors()[s].is_trivial())?;
            Rewrite::Unit { index: i, spare, a: UNITS[rng.gen_range(0..8)] }
        }
        _ => {
            let e010 = (0..r).find(|&s| s != i && p.factors()[s].is_e010())?;
            Rewrite::WithE010 { index: i, e010 }
        }
    };
    p.apply(&rw).is_ok().then_some(rw)
}

fn random_walk_preserves_normal_form(condition: ConnectCondition, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut applied = 0;
    let mut trials = 0;
    while applied < 1000 {
        trials += 1;
        assert!(trials < 100_000, "too few applicable rewrites");
        let mut p = random_presentation(&mut rng, 5);
        if p.rank() < 2 {
            continue;
        }
        // seed the walk with the special summands the unit and E_{0,1,0} rules need
        if rng.gen_bool(0.3) {
            p = connected_sum(&p, &EPresentation::single(e(0, rng.gen_range(0..2), 0)));
        }
        let start = normal_form(&p);
        let (eps_hat, j) = (eps_hat_invariant(&p), j_invariant(&p));
        for _ in 0..10 {
            let Some(rw) = random_rewrite(&mut rng, &p, condition) else { continue };
            p = p.apply(&rw).unwrap();
            applied += 1;
            assert_eq!(normal_form(&p), start, "after {rw:?}: {p}");
            if start.lambda_s.is_odd() {
                assert_eq!((eps_hat_invariant(&p), j_invariant(&p)), (eps_hat, j));
            }
        }
    }
}

#[test]
fn random_rewrites_literal_condition() {
    random_walk_preserves_normal_form(ConnectCondition::LambdaEven, 11);
}

#[test]
fn random_rewrites_product_condition() {
    random_walk_preserves_normal_form(ConnectCondition::ProductEven, 12);
}

#[test]
fn traces_replay_to_the_rendered_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut replayed = 0;
    for _ in 0..4000 {
        let p = random_presentation(&mut rng, 6);
        let report = normal_form_with_trace(&p);
        match &report.derivation {
            Derivation::Rewritten { steps } => {
                assert_eq!(p.apply_all(steps).unwrap(), report.form.render(), "{p}");
                replayed += 1;
            }
            Derivation::ByInvariants { eps_hat, j } => {
                assert!(report.form.lambda_s.is_odd());
                assert_eq!((eps_hat_invariant(&report.form.render()), j_invariant(&report.form.render())), (*eps_hat, *j));
            }
        }
        assert_eq!(report.stable, stable_invariants(&report.form.render()));
    }
    assert!(replayed > 1000, "{replayed}");
}

#[test]
fn theorem_shapes() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..2000 {
        let p = random_presentation(&mut rng, 6);
        let nf = normal_form(&p);
        if nf.rank == 1 {
            continue;
        }
        assert_eq!(nf.tail.l(), nf.lambda_s.residue());
        let s = stable_invariants(&p);
        match nf.case() {
            1 => assert!(!s.lambda_s.is_odd() && s.eps_s == 0 && nf.eps_hat == 0 && nf.tail.e() % 2 == 0),
            2 => {
                assert!(!s.lambda_s.is_odd() && s.eps_s == 1);
                // exactly one of the two shapes: E_{0,1,0} with even tail ε, or none with odd tail ε
                assert_eq!(nf.eps_hat == 1, nf.tail.e() % 2 == 0);
            }
            _ => assert_eq!(s.eps_s, 0),
        }
    }
}

fn arb_presentation() -> impl Strategy<Value = EPresentation> {
    prop::collection::vec((0i64..24, 0i64..24, 0i64..3), 1..=5)
        .prop_map(|f| EPresentation::new(f.into_iter().map(|(l, eps, d)| e(l, eps, d)).collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn normal_form_is_idempotent(p in arb_presentation()) {
        let nf = normal_form(&p);
        prop_assert_eq!(normal_form(&nf.render()), nf);
    }

    #[test]
    fn permutation_invariance(p in arb_presentation(), seed in any::<u64>()) {
        let mut f = p.factors().to_vec();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in (1..f.len()).rev() {
            f.swap(i, rng.gen_range(0..=i));
        }
        prop_assert_eq!(homotopy_equal(&p, &EPresentation::new(f).unwrap()), Equality::Equal);
    }

    #[test]
    fn rank_one_moves_on_any_summand(p in arb_presentation(), i in 0usize..5, a in -30i64..30, which in 0u8..3) {
        let index = i % p.rank();
        let mv = match which { 0 => Rank1Move::Flip, 1 => Rank1Move::ShiftNu(a), _ => Rank1Move::ShiftNuPrime(a) };
        prop_assert_eq!(homotopy_equal(&p, &p.apply(&Rewrite::Move { index, mv }).unwrap()), Equality::Equal);
    }

    #[test]
    fn equality_is_transitive(a in arb_presentation(), b in arb_presentation(), c in arb_presentation()) {
        if homotopy_equal(&a, &b) == Equality::Equal && homotopy_equal(&b, &c) == Equality::Equal {
            prop_assert_eq!(homotopy_equal(&a, &c), Equality::Equal);
        }
        prop_assert_eq!(homotopy_equal(&a, &b), homotopy_equal(&b, &a));
    }
}

#[test]
fn efile_roundtrip_and_errors() {
    let p = EFile::parse(r#"{"factors": [{"lambda": 26, "s": -1, "r": 4}, {"lambda": 0, "s": 1, "r": 0}]}"#)
        .unwrap()
        .build()
        .unwrap();
    assert_eq!(p, pres(&[(2, 23, 1), (0, 1, 0)]));
    let json = serde_json::to_string(&p).unwrap();
    assert_eq!(EFile::parse(&json).unwrap().build().unwrap(), p);

    assert!(EFile::parse(r#"{"factors": []}"#).unwrap().build().is_err());
    assert!(EFile::parse(r#"{"factors": [{"lambda": 1, "s": 0}]}"#).is_err());
    assert!(EFile::parse(r#"{"factors": [{"lambda": 1, "s": 0, "r": 0, "t": 1}]}"#).is_err());
    match EFile::parse("{\n  \"factors\": [\n    {\"lambda\": x}\n  ]\n}") {
        Err(pdc_eclass::EFileError::Syntax { line, .. }) => assert_eq!(line, 3),
        other => panic!("{other:?}"),
    }
}
