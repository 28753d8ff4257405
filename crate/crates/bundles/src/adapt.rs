use pdc_algebra::num::{self, gcd_all};
use pdc_algebra::{complete_primitive_to_basis, IntMatrix};
use pdc_manifold::{change_basis, CohomologyClass4, ManifoldPresentation};
use serde::Serialize;

use crate::{AdmissibleClass, BundleError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BasisCase {
    /// `ψ² = ±1`: `g′_kk = ±1`, `g′_jk = 0` for `j < k`.
    Case1,
    /// `g′_{k−1,k} = 1`, `g′_jk = 0` for `j ≤ k−2`.
    Case2,
}

/// A basis in which `ψ` is the last dual basis vector and the last column of
/// the form is as simple as unimodularity allows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptedBasis {
    /// Columns are the new basis in old coordinates; the last column is `ψ`.
    pub a: IntMatrix,
    pub case: BasisCase,
    pub transformed: ManifoldPresentation,
}

impl AdaptedBasis {
    /// Checks the defining conditions of the case on `AᵀGA`.
    pub fn satisfies_case(&self) -> bool {
        let g = self.transformed.gram();
        let k = g.rows();
        match self.case {
            BasisCase::Case1 => g.get(k - 1, k - 1).abs() == 1 && (0..k - 1).all(|j| g.get(j, k - 1) == 0),
            BasisCase::Case2 => g.get(k - 2, k - 1) == 1 && (0..k - 2).all(|j| g.get(j, k - 1) == 0),
        }
    }
}

fn axpy(a: i64, x: &[i64], y: &[i64]) -> Result<Vec<i64>> {
    x.iter().zip(y).map(|(&xi, &yi)| num::mul_add(a, xi, yi).map_err(Into::into)).collect()
}

fn dot(x: &[i64], y: &[i64]) -> Result<i64> {
    x.iter().zip(y).try_fold(0i64, |acc, (&a, &b)| num::mul_add(a, b, acc)).map_err(Into::into)
}

/// Shifts `t` with `gcd(γ + g·t) = 1`, given `gcd(γ, g) = 1` and `len ≥ 2`.
fn coprime_shift(gamma: &[i64], g: i64) -> Option<Vec<i64>> {
    let mut t = vec![0i64; gamma.len()];
    let mut shifted = gamma.to_vec();
    if shifted[1..].iter().all(|&x| x == 0) {
        t[1] = 1;
        shifted[1] = gamma[1] + g;
    }
    let rest = gcd_all(&shifted[1..]);
    // primes of `rest` dividing g never divide γ₀; the others exclude one class of t₀ each
    for step in 0..10_000i64 {
        for t0 in [step, -step] {
            let first = gamma[0].checked_add(g.checked_mul(t0)?)?;
            if num::gcd(first, rest) == 1 {
                t[0] = t0;
                return Some(t);
            }
        }
    }
    None
}

/// Adapted basis for an admissible `ψ`, `k ≥ 2`.
///
/// Complete `ψ` to a basis `(e′₁, …, e′_{k−1}, ψ)` and let `γⱼ = e′ⱼ·Gψ`,
/// `g = ψ²`; `gcd(γ, g) = 1` because `Gψ` is primitive. Replacing `e′ⱼ` by
/// `e′ⱼ + tⱼψ` changes `γⱼ` by `g·tⱼ`. Case 1 (`g = ±1`) clears every `γⱼ`.
/// Case 2 makes `gcd(γ) = 1` and then reduces `γ` to `(0, …, 0, 1)` by a
/// unimodular change of the first `k−1` vectors. For `k ≥ 3` a suitable
/// shift always exists; for `k = 2` it needs `γ₁ ≡ ±1` (mod g) and may fail,
/// reported as [`BundleError::NoAdaptedBasis`].
pub fn adapt_basis(m: &ManifoldPresentation, psi: &CohomologyClass4) -> Result<AdaptedBasis> {
    let k = m.k();
    if k < 2 {
        return Err(BundleError::Precondition("an adapted basis needs k ≥ 2".into()));
    }
    let class = AdmissibleClass::new(m, psi.clone())?;
    let n = &psi.n;
    let g = class.self_intersection;
    let case = if g.abs() == 1 { BasisCase::Case1 } else { BasisCase::Case2 };

    if n.iter().enumerate().all(|(i, &x)| x == (i == k - 1) as i64) {
        let candidate = AdaptedBasis { a: IntMatrix::identity(k), case, transformed: m.clone() };
        if candidate.satisfies_case() {
            return Ok(candidate);
        }
    }

    let c = m.gram().mul_vec(n)?;
    let completion = complete_primitive_to_basis(n)?;
    let others: Vec<Vec<i64>> = (0..k - 1).map(|j| completion.row(j).to_vec()).collect();
    let gamma: Vec<i64> = others.iter().map(|e| dot(e, &c)).collect::<Result<_>>()?;

    let shift: Vec<i64> = match case {
        BasisCase::Case1 => gamma.iter().map(|&x| num::neg(num::mul(x, g)?)).collect::<pdc_algebra::Result<_>>()?,
        BasisCase::Case2 if k == 2 => {
            let found = [1i64, -1].into_iter().find_map(|s| {
                if g == 0 {
                    (gamma[0] == s).then_some(0)
                } else {
                    ((s - gamma[0]) % g == 0).then(|| (s - gamma[0]) / g)
                }
            });
            match found {
                Some(t) => vec![t],
                None => {
                    return Err(BundleError::NoAdaptedBasis(format!(
                        "ψ = {n:?}: ψ² = {g} and the complementary pairing {} is not ±1 mod {g}",
                        gamma[0]
                    )))
                }
            }
        }
        BasisCase::Case2 => coprime_shift(&gamma, g)
            .ok_or_else(|| BundleError::Inconsistent(format!("no coprime shift for ψ = {n:?}")))?,
    };
    let mut columns: Vec<Vec<i64>> =
        others.iter().zip(&shift).map(|(e, &t)| axpy(t, n, e)).collect::<Result<_>>()?;
    if case == BasisCase::Case2 {
        let shifted: Vec<i64> = columns.iter().map(|e| dot(e, &c)).collect::<Result<_>>()?;
        let mut flip = 1;
        if k == 2 {
            flip = shifted[0];
        } else {
            // γ′ᵀ·R⁻¹ = (0, …, 0, 1) when R has last row γ′
            let r_inv = complete_primitive_to_basis(&shifted)?.inverse_unimodular()?;
            let f = IntMatrix::from_cols(&columns)?;
            let reduced = f.mul(&r_inv)?;
            columns = (0..k - 1).map(|j| reduced.col(j)).collect();
        }
        if flip == -1 {
            columns[0] = columns[0].iter().map(|x| -x).collect();
        }
    }
    columns.push(n.clone());
    let a = IntMatrix::from_cols(&columns)?;
    let transformed = change_basis(m, &a)?;
    let out = AdaptedBasis { a, case, transformed };
    if !out.satisfies_case() {
        return Err(BundleError::Inconsistent(format!("adapted basis for ψ = {n:?} violates {case:?}")));
    }
    Ok(out)
}
