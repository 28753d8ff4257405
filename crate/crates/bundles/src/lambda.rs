use std::fmt;

use pdc_algebra::{gcd_with_modulus, Divisor24, Residue};
use pdc_manifold::{parity, sigma, CohomologyClass4, ManifoldPresentation, Parity};
use serde::Serialize;

use crate::search::LocalForm;
use crate::{adapt_basis, AdaptedBasis, AdmissibleClass, BasisCase, BundleError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LambdaRoute {
    /// The adapted-basis formula, with the case used.
    Adapted(BasisCase),
    /// `gcd(24, τ(ψ^⊥))` only; no adapted basis exists.
    Perp,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LambdaResult {
    pub lambda: Divisor24,
    pub route: LambdaRoute,
    /// Value from the adapted basis, when one exists.
    pub adapted: Option<Divisor24>,
    /// Value from `ψ^⊥`.
    pub perp: Divisor24,
}

/// `gcd(24, τ(ψ^⊥))`, from the local parts mod 8 and mod 3.
pub fn lambda_via_perp(m: &ManifoldPresentation, psi: &CohomologyClass4) -> Result<Divisor24> {
    if !psi.is_primitive() || psi.n.len() != m.k() {
        return Err(BundleError::Precondition(format!("ψ = {:?} is not a primitive class", psi.n)));
    }
    let part = |modulus: i64| {
        let r: Vec<i64> = psi.n.iter().map(|x| x.rem_euclid(modulus)).collect();
        LocalForm::new(m, modulus).d_part(&r)
    };
    Ok(Divisor24::from_parts(part(8), part(3)))
}

/// The adapted-basis formula: with `u` the stable vector in the adapted basis,
/// Case 1 gives `gcd(24, u₁, …, u_{k−1})` and Case 2 gives
/// `gcd(24, u₁, …, u_{k−2}, u_k − g′_kk·u_{k−1})`.
pub fn lambda_from_adapted(basis: &AdaptedBasis) -> Divisor24 {
    let k = basis.transformed.k();
    let u = basis.transformed.stable_vector();
    let mut gens: Vec<Residue> = u[..k - 2].to_vec();
    match basis.case {
        BasisCase::Case1 => gens.push(u[k - 2]),
        BasisCase::Case2 => {
            let gkk = basis.transformed.gram().get(k - 1, k - 1);
            gens.push(u[k - 1] - Residue::mod24(gkk) * u[k - 2]);
        }
    }
    gcd_with_modulus(&gens)
}

/// `λ(ψ)` for admissible `ψ`, `k ≥ 2`.
///
/// Uses [`lambda_from_adapted`] when an adapted basis exists; the value is
/// checked against [`lambda_via_perp`] and against `σ(M) | λ`.
pub fn lambda_of(m: &ManifoldPresentation, psi: &CohomologyClass4) -> Result<LambdaResult> {
    let k = m.k();
    if k < 2 {
        return Err(BundleError::Precondition("λ(ψ) needs k ≥ 2".into()));
    }
    AdmissibleClass::new(m, psi.clone())?;
    let perp = lambda_via_perp(m, psi)?;
    let adapted = match adapt_basis(m, psi) {
        Ok(basis) => Some((lambda_from_adapted(&basis), basis.case)),
        Err(BundleError::NoAdaptedBasis(_)) => None,
        Err(e) => return Err(e),
    };
    if let Some((value, case)) = adapted {
        if value != perp {
            return Err(BundleError::Inconsistent(format!(
                "ψ = {:?}: adapted basis ({case:?}) gives λ = {value}, ψ^⊥ gives {perp}",
                psi.n
            )));
        }
    }
    let s = sigma(m);
    if !perp.is_multiple_of(s) {
        return Err(BundleError::Inconsistent(format!("λ = {perp} is not a multiple of σ = {s}")));
    }
    Ok(LambdaResult {
        lambda: perp,
        route: adapted.map_or(LambdaRoute::Perp, |(_, c)| LambdaRoute::Adapted(c)),
        adapted: adapted.map(|(v, _)| v),
        perp,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EpsilonS {
    Zero,
    One,
    /// Not determined for odd intersection forms.
    Unknown,
}

impl fmt::Display for EpsilonS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EpsilonS::Zero => "0",
            EpsilonS::One => "1",
            EpsilonS::Unknown => "unknown",
        })
    }
}

/// `ε_s(ψ)`: 0 for even forms, unknown for odd ones.
pub fn epsilon_of(m: &ManifoldPresentation, psi: &CohomologyClass4) -> Result<EpsilonS> {
    AdmissibleClass::new(m, psi.clone())?;
    Ok(match parity(m) {
        Parity::Even => EpsilonS::Zero,
        Parity::Odd => EpsilonS::Unknown,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BundleInvariants {
    pub lambda: Divisor24,
    pub epsilon_s: EpsilonS,
}

pub fn bundle_invariants(m: &ManifoldPresentation, psi: &CohomologyClass4) -> Result<BundleInvariants> {
    Ok(BundleInvariants { lambda: lambda_of(m, psi)?.lambda, epsilon_s: epsilon_of(m, psi)? })
}
