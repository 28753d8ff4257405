use std::fmt;
use std::path::Path;

use pdc_algebra::num::{binom2, gcd};
use pdc_algebra::Divisor24;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rank1::{rank1_equivalent, Rank1Move, RankOneClass};

/// A connected sum `E_{λ₁,s₁,r₁} # … # E_{λ_r,s_r,r_r}` given by the reduced
/// attaching map `Σ[ι₄ⁱ,ι₇ⁱ] + Σλᵢ ι₇ⁱ∘ν + Σsᵢ νᵢ∘ν + Σrᵢ ν′ᵢ∘ν`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "EFile")]
pub struct EPresentation {
    factors: Vec<RankOneClass>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EclassError {
    #[error("an E-presentation needs at least one factor")]
    Empty,
    #[error("factor index {index} out of range for rank {rank}")]
    Index { index: usize, rank: usize },
    #[error("rewrite does not apply: {0}")]
    NotApplicable(String),
}

impl EPresentation {
    pub fn new(factors: Vec<RankOneClass>) -> Result<Self, EclassError> {
        if factors.is_empty() {
            return Err(EclassError::Empty);
        }
        Ok(Self { factors })
    }

    pub fn single(c: RankOneClass) -> Self {
        Self { factors: vec![c] }
    }

    /// `#^r E_{0,0,0}`, the connected sum of `r` copies of `S⁴ × S⁷`.
    pub fn trivial(rank: usize) -> Result<Self, EclassError> {
        Self::new(vec![RankOneClass::trivial(); rank])
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[RankOneClass] {
        &self.factors
    }

    fn check(&self, i: usize) -> Result<(), EclassError> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(EclassError::Index { index: i, rank: self.rank() })
        }
    }

    fn pair(&self, i: usize, j: usize) -> Result<(), EclassError> {
        self.check(i)?;
        self.check(j)?;
        if i == j {
            return Err(EclassError::NotApplicable("needs two distinct factors".into()));
        }
        Ok(())
    }

    /// Applies one rewrite, returning the rewritten presentation.
    pub fn apply(&self, rw: &Rewrite) -> Result<Self, EclassError> {
        let mut f = self.factors.clone();
        match *rw {
            Rewrite::Move { index, mv } => {
                self.check(index)?;
                f[index] = f[index].apply(mv);
            }
            Rewrite::Orbit { index, to } => {
                self.check(index)?;
                if !rank1_equivalent(f[index], to) {
                    return Err(EclassError::NotApplicable(format!("{} and {to} lie in different orbits", f[index])));
                }
                f[index] = to;
            }
            Rewrite::Swap { i, j } => {
                self.pair(i, j)?;
                f.swap(i, j);
            }
            Rewrite::Connect { first, second, condition } => {
                self.pair(first, second)?;
                (f[first], f[second]) = connect(f[first], f[second], condition)?;
            }
            Rewrite::Unit { index, spare, a } => {
                self.pair(index, spare)?;
                if !f[spare].is_trivial() {
                    return Err(EclassError::NotApplicable(format!("spare factor {} is not E_{{0,0,0}}", f[spare])));
                }
                (f[index], f[spare]) = multiply_by_unit(f[index], a)?;
            }
            Rewrite::WithE010 { index, e010 } => {
                self.pair(index, e010)?;
                if !f[e010].is_e010() {
                    return Err(EclassError::NotApplicable(format!("{} is not E_{{0,1,0}}", f[e010])));
                }
                let c = f[index];
                f[e010] = RankOneClass::new(0, 1 + c.e() * (-c.l() - 1), c.d());
            }
        }
        Ok(Self { factors: f })
    }

    pub fn apply_all<'a>(&self, steps: impl IntoIterator<Item = &'a Rewrite>) -> Result<Self, EclassError> {
        steps.into_iter().try_fold(self.clone(), |e, rw| e.apply(rw))
    }
}

impl fmt::Debug for EPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for EPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" # "))
    }
}

/// `E₁ # E₂`: factors concatenated.
pub fn connected_sum(e1: &EPresentation, e2: &EPresentation) -> EPresentation {
    EPresentation { factors: e1.factors.iter().chain(&e2.factors).copied().collect() }
}

/// When the connected-sum identity may be used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ConnectCondition {
    /// As stated: `λ₂` even.
    LambdaEven,
    /// What the change of basis actually needs: `λ₂ε₁` even, so that the
    /// correction `(λ₂ε₁/2) ν′` is defined.
    ProductEven,
}

impl ConnectCondition {
    pub fn holds(self, first: RankOneClass, second: RankOneClass) -> bool {
        match self {
            ConnectCondition::LambdaEven => second.l() % 2 == 0,
            ConnectCondition::ProductEven => second.l() * first.e() % 2 == 0,
        }
    }
}

/// `E_{λ₁,ε₁,δ₁} # E_{λ₂,ε₂,δ₂} ≃ E_{λ₁−λ₂,ε₁,δ₁} # E_{λ₂, ε₂+ε₁(2λ₂−λ₁−1), δ₁+δ₂+(1+λ₁)ε₁λ₂}`.
pub fn connect(
    first: RankOneClass,
    second: RankOneClass,
    condition: ConnectCondition,
) -> Result<(RankOneClass, RankOneClass), EclassError> {
    if !condition.holds(first, second) {
        return Err(EclassError::NotApplicable(format!("{condition:?} fails for {first} # {second}")));
    }
    let (l1, e1, d1) = (first.l(), first.e(), first.d());
    let (l2, e2, d2) = (second.l(), second.e(), second.d());
    Ok((
        RankOneClass::new(l1 - l2, e1, d1),
        RankOneClass::new(l2, e2 + e1 * (2 * l2 - l1 - 1), d1 + d2 + (1 + l1) * e1 * l2),
    ))
}

/// `E_{λ,ε,δ} # E_{0,0,0} ≃ E_{aλ, a²ε, aδ+C(a,2)ε} # E_{0, −b²ε−bλε, bδ+C(b,2)ε}`
/// for `a² − 24b = 1`.
pub fn multiply_by_unit(c: RankOneClass, a: i64) -> Result<(RankOneClass, RankOneClass), EclassError> {
    if gcd(a, 24) != 1 {
        return Err(EclassError::NotApplicable(format!("{a} is not a unit mod 24")));
    }
    let b = (a * a - 1) / 24;
    let (l, e, d) = (c.l(), c.e(), c.d());
    // both binomials fit easily: |a| is a small representative
    let ca = binom2(a).expect("small unit");
    let cb = binom2(b).expect("small unit");
    Ok((
        RankOneClass::new(a * l, a * a * e, a * d + ca * e),
        RankOneClass::new(0, -b * b * e - b * l * e, b * d + cb * e),
    ))
}

/// One homotopy equivalence between E-presentations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Rewrite {
    /// A self-equivalence of one summand.
    Move { index: usize, mv: Rank1Move },
    /// Replace a summand by any class in its rank-one orbit.
    Orbit { index: usize, to: RankOneClass },
    Swap { i: usize, j: usize },
    /// The connected-sum identity on the ordered pair (`first`, `second`).
    Connect { first: usize, second: usize, condition: ConnectCondition },
    /// Multiplication by a unit `a`, using a spare `E_{0,0,0}` summand.
    Unit { index: usize, spare: usize, a: i64 },
    /// `E_{λ,ε,δ} # E_{0,1,0} ≃ E_{λ,ε,δ} # E_{0,1+ε(−λ−1),δ}`.
    WithE010 { index: usize, e010: usize },
}

/// `λ_s = gcd(24, λᵢ)` and `ε_s ∈ Z/2` of the stable attaching map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct StableInvariants {
    pub lambda_s: Divisor24,
    pub eps_s: u8,
}

/// `ε_s` is 0 when `λ_s` is odd; otherwise it is the parity of any odd `sᵢ`.
/// The `rᵢ` never contribute: `ν′` is stably `−2ν`.
pub fn stable_invariants(e: &EPresentation) -> StableInvariants {
    let lambda_s = Divisor24::of(e.factors.iter().fold(24, |g, c| gcd(g, c.l())));
    let eps_s = if lambda_s.is_odd() { 0 } else { e.factors.iter().any(|c| c.e() % 2 == 1) as u8 };
    StableInvariants { lambda_s, eps_s }
}

/// On-disk form: `{"factors": [{"lambda": 2, "s": 3, "r": 1}, …]}`, reduced
/// mod 24, 24 and 3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EFile {
    pub factors: Vec<EFactor>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EFactor {
    pub lambda: i64,
    pub s: i64,
    pub r: i64,
}

#[derive(Debug, Error)]
pub enum EFileError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("field \"factors\": {0}")]
    Factors(EclassError),
}

impl EFile {
    pub fn parse(text: &str) -> Result<Self, EFileError> {
        serde_json::from_str(text).map_err(|e| EFileError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<EPresentation, EFileError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| EFileError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)?.build()
    }

    pub fn build(&self) -> Result<EPresentation, EFileError> {
        EPresentation::new(self.factors.iter().map(|f| RankOneClass::new(f.lambda, f.s, f.r)).collect())
            .map_err(EFileError::Factors)
    }

    pub fn from_presentation(e: &EPresentation) -> Self {
        Self { factors: e.factors.iter().map(|c| EFactor { lambda: c.l(), s: c.e(), r: c.d() }).collect() }
    }
}

impl From<EPresentation> for EFile {
    fn from(e: EPresentation) -> Self {
        EFile::from_presentation(&e)
    }
}
