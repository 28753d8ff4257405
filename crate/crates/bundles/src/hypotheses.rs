use pdc_algebra::num::mod_inverse;
use pdc_algebra::{smith_normal_form, Divisor24, IntMatrix};
use pdc_manifold::{sigma, ManifoldPresentation};
use serde::Serialize;

use crate::search::digits;
use crate::{BundleError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub holds: bool,
    pub sigma: Divisor24,
    /// Generator of `(ker τ)^⊥` in `(Z/m)^k`.
    pub perp_generator: Vec<i64>,
    pub modulus: i64,
    /// Lexicographically least `ψ` meeting the condition, as a residue
    /// mod `8/σ₂` for (H₈) and mod 8 for (H₄).
    pub witness: Option<Vec<i64>>,
}

/// `ζ` with `(ker τ)^⊥ = ⟨g·ζ⟩` mod 8, `g = gcd(v, 8)`.
///
/// The Smith form of the row `vᵀ` gives `vᵀV = ±(d, 0, …, 0)`, so
/// `ker τ` mod 8 is spanned by `(8/gcd(d,8))·Ve₁` and `Ve_j` (`j ≥ 2`), and
/// `z ⟂ ker τ` iff `w = VᵀGz` has `w_j ≡ 0` for `j ≥ 2` and `gcd(d,8) | w₁`.
fn perp_direction(m: &ManifoldPresentation) -> Result<(i64, Vec<i64>)> {
    let k = m.k();
    let v: Vec<i64> = m.stable_vector().iter().map(|r| r.value()).collect();
    let snf = smith_normal_form(&IntMatrix::from_rows(&[v])?);
    let d = snf.invariant_factors()?[0];
    let vt = snf.v.to_int()?.transpose();
    let w_to_z = vt.mul(m.gram())?.inverse_unimodular()?;
    let zeta = (0..k).map(|i| w_to_z.get(i, 0).rem_euclid(8)).collect();
    Ok((pdc_algebra::num::gcd(d, 8), zeta))
}

fn square_mod(m: &ManifoldPresentation, x: &[i64], modulus: i64) -> Result<i64> {
    Ok(m.gram().bilinear(x, x)?.rem_euclid(modulus))
}

/// (H₈): `(ker τ)^⊥ = (σψ)` mod 8 with `ψ² ≡ 0` mod 8 (σ₂ = 2) or mod 4 (σ₂ = 4),
/// σ₂ the 2-part of σ.
pub fn hypothesis_h8(m: &ManifoldPresentation) -> Result<HypothesisReport> {
    let s = sigma(m);
    let s2 = s.two_part();
    if s2 != 2 && s2 != 4 {
        return Err(BundleError::Precondition(format!("(H8) needs σ ≡ 2 or 4 mod 8, σ = {s}")));
    }
    let (g8, zeta) = perp_direction(m)?;
    debug_assert_eq!(g8, s2);
    let target = if s2 == 2 { 8 } else { 4 };
    let holds = square_mod(m, &zeta, target)? == 0;
    // ψ is determined mod 8/σ₂ up to a unit
    let q = 8 / s2;
    let witness = holds.then(|| {
        (1..q)
            .filter(|&u| mod_inverse(u, q).is_some())
            .map(|u| zeta.iter().map(|z| (u * z).rem_euclid(q)).collect::<Vec<_>>())
            .min()
            .expect("1 is a unit")
    });
    Ok(HypothesisReport {
        holds,
        sigma: s,
        perp_generator: zeta.iter().map(|z| (g8 * z).rem_euclid(8)).collect(),
        modulus: 8,
        witness,
    })
}

/// (H₄): `(ker τ)^⊥ = (2ψ)` mod 4 for some `ψ` with `ψ² ≡ τ(ψ) ∈ {0, 4}` mod 8;
/// σ₂ = 2. `ψ` ranges over the lifts mod 8 of the class mod 2 the
/// perpendicular determines.
pub fn hypothesis_h4(m: &ManifoldPresentation) -> Result<HypothesisReport> {
    let s = sigma(m);
    if s.two_part() != 2 {
        return Err(BundleError::Precondition(format!("(H4) needs σ ≡ 2 mod 4, σ = {s}")));
    }
    let (_, zeta) = perp_direction(m)?;
    let k = m.k();
    let base: Vec<i64> = zeta.iter().map(|z| z % 2).collect();
    let v: Vec<i64> = m.stable_vector().iter().map(|r| r.value()).collect();
    let mut witness = None;
    for idx in 0..4u64.pow(k as u32) {
        let x = digits(idx, 4, k);
        let psi: Vec<i64> = base.iter().zip(&x).map(|(b, x)| b + 2 * x).collect();
        let sq = square_mod(m, &psi, 8)?;
        let t = psi.iter().zip(&v).map(|(a, b)| a * b).sum::<i64>().rem_euclid(8);
        if sq == t && (sq == 0 || sq == 4) {
            witness = Some(psi);
            break;
        }
    }
    Ok(HypothesisReport {
        holds: witness.is_some(),
        sigma: s,
        perp_generator: zeta.iter().map(|z| (2 * z).rem_euclid(4)).collect(),
        modulus: 4,
        witness,
    })
}
