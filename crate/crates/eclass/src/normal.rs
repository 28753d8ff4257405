use pdc_algebra::Divisor24;
use serde::Serialize;

use crate::presentation::{stable_invariants, ConnectCondition, EPresentation, Rewrite, StableInvariants};
use crate::rank1::{rank1_canonical, Rank1Move, RankOneClass};

/// `#^{r−2} E_{0,0,0} # E_{0,ε̂,0} # E_{λ,ε,δ}` with the tail canonical.
/// Rank one has no `ε̂` (reported as 0) and its tail `λ` need not equal `λ_s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ENormalForm {
    pub rank: usize,
    pub lambda_s: Divisor24,
    pub eps_hat: u8,
    pub tail: RankOneClass,
}

impl ENormalForm {
    pub fn render(&self) -> EPresentation {
        let mut factors = Vec::with_capacity(self.rank);
        if self.rank >= 2 {
            factors.resize(self.rank - 2, RankOneClass::trivial());
            factors.push(RankOneClass::new(0, self.eps_hat as i64, 0));
        }
        factors.push(self.tail);
        EPresentation::new(factors).expect("rank is positive")
    }

    /// Which case of the classification the form falls in: 1 (`λ_s` even,
    /// `ε_s = 0`), 2 (`λ_s` even, `ε_s = 1`) or 3 (`λ_s` odd).
    pub fn case(&self) -> u8 {
        if self.lambda_s.is_odd() {
            3
        } else if self.eps_hat == 1 || self.tail.e() % 2 == 1 {
            2
        } else {
            1
        }
    }
}

/// How the normal form was reached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Derivation {
    /// A chain of identities turning the input into the rendered form.
    Rewritten { steps: Vec<Rewrite> },
    /// Odd `λ_s`: the shape is selected by the invariants `ε̂` and `J`, which
    /// every identity preserves.
    ByInvariants { eps_hat: u8, j: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalFormReport {
    pub form: ENormalForm,
    pub stable: StableInvariants,
    pub derivation: Derivation,
}

struct Rewriter {
    e: EPresentation,
    steps: Vec<Rewrite>,
}

impl Rewriter {
    fn step(&mut self, rw: Rewrite) {
        self.e = self.e.apply(&rw).unwrap_or_else(|err| panic!("normal-form step {rw:?} on {}: {err}", self.e));
        self.steps.push(rw);
    }

    fn at(&self, i: usize) -> RankOneClass {
        self.e.factors()[i]
    }

    fn connect(&mut self, first: usize, second: usize) {
        self.step(Rewrite::Connect { first, second, condition: ConnectCondition::LambdaEven });
    }

    fn orbit(&mut self, index: usize, to: RankOneClass) {
        if self.at(index) != to {
            self.step(Rewrite::Orbit { index, to });
        }
    }

    fn swap(&mut self, i: usize, j: usize) {
        if i != j {
            self.step(Rewrite::Swap { i, j });
        }
    }
}

/// `[some summand with even λ has odd ε]`.
pub fn eps_hat_invariant(e: &EPresentation) -> u8 {
    e.factors().iter().any(|c| c.l() % 2 == 0 && c.e() % 2 == 1) as u8
}

/// `J = Σ_{λᵢ≡1 (3)} (εᵢ − δᵢ) + Σ_{λᵢ≡2 (3)} δᵢ  (mod 3)`.
pub fn j_invariant(e: &EPresentation) -> i64 {
    e.factors()
        .iter()
        .map(|c| match c.l() % 3 {
            1 => c.e() - c.d(),
            2 => c.d(),
            _ => 0,
        })
        .sum::<i64>()
        .rem_euclid(3)
}

pub fn normal_form(e: &EPresentation) -> ENormalForm {
    normal_form_with_trace(e).form
}

pub fn normal_form_with_trace(e: &EPresentation) -> NormalFormReport {
    let stable = stable_invariants(e);
    let r = e.rank();
    if r == 1 {
        let c = e.factors()[0];
        let tail = rank1_canonical(c);
        let steps = if tail == c { vec![] } else { vec![Rewrite::Orbit { index: 0, to: tail }] };
        return NormalFormReport {
            form: ENormalForm { rank: 1, lambda_s: stable.lambda_s, eps_hat: 0, tail },
            stable,
            derivation: Derivation::Rewritten { steps },
        };
    }
    if stable.lambda_s.is_odd() {
        let eps_hat = eps_hat_invariant(e);
        let j = j_invariant(e);
        let tail = if stable.lambda_s.get() == 3 {
            RankOneClass::new(3, 0, 0)
        } else {
            // J(E_{1,0,−J}) = J
            rank1_canonical(RankOneClass::new(1, 0, -j))
        };
        return NormalFormReport {
            form: ENormalForm { rank: r, lambda_s: stable.lambda_s, eps_hat, tail },
            stable,
            derivation: Derivation::ByInvariants { eps_hat, j },
        };
    }

    let mut w = Rewriter { e: e.clone(), steps: Vec::new() };
    let lambda_s = stable.lambda_s;
    let last = r - 1;

    // Euclid on the λ-vector; every λ is even, so the connected-sum identity applies.
    let mut pivot = None;
    loop {
        let Some((j, m)) =
            (0..r).map(|i| (i, w.at(i).l())).filter(|&(_, l)| l != 0).min_by_key(|&(i, l)| (l, i))
        else {
            break;
        };
        pivot = Some(j);
        let mut reduced = false;
        for i in (0..r).filter(|&i| i != j) {
            for _ in 0..w.at(i).l() / m {
                w.connect(i, j);
                reduced = true;
            }
        }
        if reduced {
            continue;
        }
        if m == lambda_s.get() {
            break;
        }
        // λ_j alone but not yet gcd(λ_j, 24): a zero summand acts as 24
        let zero = (0..r).find(|&i| i != j).expect("rank ≥ 2");
        w.connect(zero, j);
    }
    if let Some(j) = pivot {
        w.swap(j, last);
    }

    for i in 0..last {
        let c = w.at(i);
        w.orbit(i, RankOneClass::new(0, c.e() % 2, 0));
    }
    let mut e010: Vec<usize> = (0..last).filter(|&i| w.at(i).is_e010()).collect();
    while e010.len() >= 2 {
        let b = e010.pop().expect("two entries");
        // E_{0,1,0} # E_{0,1,0} ≃ E_{0,1,0} # E_{0,0,0}
        w.connect(e010[0], b);
    }
    if let Some(&p) = e010.first() {
        if w.at(last).e() % 2 == 1 {
            w.step(Rewrite::WithE010 { index: last, e010: p });
            w.orbit(p, RankOneClass::trivial());
        } else {
            w.swap(p, last - 1);
            let p = last - 1;
            match lambda_s.get() {
                8 => {
                    // E_{0,1,0} # E_{8,ε,δ} ≃ E_{0,0,0} # E_{8,1+7ε,δ} for even ε
                    w.step(Rewrite::Move { index: last, mv: Rank1Move::ShiftNu(1) });
                    w.connect(p, last);
                    w.connect(p, last);
                    w.swap(p, last);
                    w.connect(p, last);
                    w.orbit(p, RankOneClass::trivial());
                }
                24 => {
                    w.orbit(last, RankOneClass::trivial());
                    w.swap(p, last);
                }
                _ => {}
            }
        }
    }
    let tail = rank1_canonical(w.at(last));
    w.orbit(last, tail);
    let eps_hat = w.at(last - 1).is_e010() as u8;
    NormalFormReport {
        form: ENormalForm { rank: r, lambda_s, eps_hat, tail },
        stable,
        derivation: Derivation::Rewritten { steps: w.steps },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Equality {
    Equal,
    NotEqual,
}

pub fn homotopy_equal(e1: &EPresentation, e2: &EPresentation) -> Equality {
    if normal_form(e1) == normal_form(e2) {
        Equality::Equal
    } else {
        Equality::NotEqual
    }
}
