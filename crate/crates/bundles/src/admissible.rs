use pdc_algebra::Residue;
use pdc_manifold::{tau, CohomologyClass4, ManifoldPresentation};
use pdc_wedge::compose_class;
use serde::Serialize;

use crate::{BundleError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Admissible,
    NotPrimitive,
    CongruenceFails,
}

/// Both admissibility tests with the quantities they compare.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Admissibility {
    pub verdict: Verdict,
    /// `ψᵀGψ`
    pub self_intersection: i64,
    pub tau: Residue,
    /// `ν′` coefficient of `ψ̃∘L`
    pub nu_prime: Residue,
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        self.verdict == Verdict::Admissible
    }
}

pub fn admissibility(m: &ManifoldPresentation, psi: &CohomologyClass4) -> Result<Admissibility> {
    let t = tau(m, psi)?;
    let self_intersection = m.gram().bilinear(&psi.n, &psi.n)?;
    let (nu, nu_prime) = compose_class(&psi.n, m.attaching_map())?;
    debug_assert_eq!(nu, self_intersection);
    let by_cup = Residue::mod24(self_intersection) == t;
    let by_composite = nu_prime.is_zero();
    if by_cup != by_composite {
        return Err(BundleError::Inconsistent(format!(
            "ψ = {:?}: ψ² ≡ τ(ψ) gives {by_cup}, ν′ coefficient gives {by_composite}",
            psi.n
        )));
    }
    let verdict = if !psi.is_primitive() {
        Verdict::NotPrimitive
    } else if by_cup {
        Verdict::Admissible
    } else {
        Verdict::CongruenceFails
    };
    Ok(Admissibility { verdict, self_intersection, tau: t, nu_prime })
}

/// Primitive and `ψ∪ψ ≡ τ(ψ)` (mod 24). Malformed input is not admissible.
pub fn is_admissible(m: &ManifoldPresentation, psi: &CohomologyClass4) -> bool {
    admissibility(m, psi).is_ok_and(|a| a.is_admissible())
}

/// A class known to be admissible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibleClass {
    pub psi: CohomologyClass4,
    pub tau_value: Residue,
    pub self_intersection: i64,
}

impl AdmissibleClass {
    pub fn new(m: &ManifoldPresentation, psi: CohomologyClass4) -> Result<Self> {
        let a = admissibility(m, &psi)?;
        if !a.is_admissible() {
            return Err(BundleError::Precondition(format!(
                "ψ = {:?} is not admissible ({:?})",
                psi.n, a.verdict
            )));
        }
        Ok(Self { psi, tau_value: a.tau, self_intersection: a.self_intersection })
    }
}
