use pdc_algebra::num::{crt24, gcd, mod_inverse};
use pdc_manifold::ManifoldPresentation;

use crate::exec::filter_range;
use crate::{BundleError, Limits, Result};

/// The data of `M` reduced modulo `m ∈ {3, 8}`.
#[derive(Debug, Clone)]
pub(crate) struct LocalForm {
    pub m: i64,
    pub k: usize,
    // full symmetric Gram matrix, entries in [0, m)
    pub g: Vec<i64>,
    pub l: Vec<i64>,
    pub v: Vec<i64>,
}

impl LocalForm {
    pub fn new(x: &ManifoldPresentation, m: i64) -> Self {
        let k = x.k();
        let gram = x.gram();
        Self {
            m,
            k,
            g: (0..k * k).map(|i| gram.get(i / k, i % k).rem_euclid(m)).collect(),
            l: x.l().iter().map(|t| t.rem_euclid(m)).collect(),
            v: x.stable_vector().iter().map(|r| r.value() % m).collect(),
        }
    }

    /// `Q(n) = Σ_{i<j} g_ij nᵢnⱼ + Σ g_ii C(nᵢ,2) + Σ lᵢnᵢ`, reduced mod `m`.
    /// For `m = 8` only `Q mod 4` is meaningful on residues mod 8.
    pub fn q(&self, n: &[i64]) -> i64 {
        let k = self.k;
        let mut q = 0;
        for i in 0..k {
            let ni = n[i];
            if ni == 0 {
                continue;
            }
            q += self.g[i * k + i] * (ni * (ni - 1) / 2) + self.l[i] * ni;
            for j in i + 1..k {
                q += self.g[i * k + j] * ni * n[j];
            }
        }
        q.rem_euclid(self.m)
    }

    /// Not divisible by the prime of `m`, with `Q` vanishing (mod 4 resp. 3).
    pub fn admissible(&self, n: &[i64]) -> bool {
        let p = if self.m == 8 { 2 } else { 3 };
        n.iter().any(|&x| x % p != 0) && self.q(n) % (if self.m == 8 { 4 } else { 3 }) == 0
    }

    /// `gcd(m, τ(ψ^⊥))` for `ψ ≡ n` (mod `m`), `ψ` primitive at the prime of `m`.
    ///
    /// `c = Gψ` has a unit entry `c_j`; `ψ^⊥` mod `m` is spanned by
    /// `eᵢ − c_j⁻¹cᵢ e_j` for `i ≠ j`.
    pub fn d_part(&self, n: &[i64]) -> i64 {
        let (k, m) = (self.k, self.m);
        let c: Vec<i64> =
            (0..k).map(|i| (0..k).map(|j| self.g[i * k + j] * n[j]).sum::<i64>().rem_euclid(m)).collect();
        let j = (0..k).find(|&j| gcd(c[j], m) == 1).expect("Gψ is primitive when ψ is");
        let inv = mod_inverse(c[j], m).expect("unit");
        (0..k)
            .filter(|&i| i != j)
            .fold(m, |d, i| gcd(d, (self.v[i] - inv * c[i] * self.v[j]).rem_euclid(m)))
    }
}

/// Vector with index `idx` in the lexicographic order of `[0, m)^k`.
pub(crate) fn digits(mut idx: u64, m: i64, k: usize) -> Vec<i64> {
    let mut out = vec![0; k];
    for slot in out.iter_mut().rev() {
        *slot = (idx % m as u64) as i64;
        idx /= m as u64;
    }
    out
}

/// The admissible residues of `M`, factored as mod 8 × mod 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredResidues {
    pub k: usize,
    /// Residues mod 8, lexicographically sorted.
    pub mod8: Vec<Vec<i64>>,
    /// Residues mod 3, lexicographically sorted.
    pub mod3: Vec<Vec<i64>>,
    /// Residue vectors examined.
    pub visited: u64,
}

impl FactoredResidues {
    pub fn is_empty(&self) -> bool {
        self.mod8.is_empty() || self.mod3.is_empty()
    }

    /// Number of admissible residues mod 24.
    pub fn count(&self) -> u128 {
        self.mod8.len() as u128 * self.mod3.len() as u128
    }

    pub fn combine(r8: &[i64], r3: &[i64]) -> Vec<i64> {
        r8.iter().zip(r3).map(|(&a, &b)| crt24(a, b)).collect()
    }

    pub fn iter_mod24(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        self.mod8
            .iter()
            .flat_map(move |a| self.mod3.iter().map(move |b| Self::combine(a, b)))
    }
}

fn space(m: u64, k: usize) -> Option<u64> {
    m.checked_pow(k as u32)
}

fn check_rank(x: &ManifoldPresentation, limits: &Limits) -> Result<()> {
    if x.k() > limits.max_rank {
        return Err(BundleError::ResourceLimit(format!(
            "rank {} exceeds the configured limit {}",
            x.k(),
            limits.max_rank
        )));
    }
    Ok(())
}

fn check_budget(states: Option<u64>, limits: &Limits, what: &str) -> Result<u64> {
    match states {
        Some(s) if s <= limits.budget => Ok(s),
        _ => Err(BundleError::ResourceLimit(format!(
            "{what} needs {} states, budget is {}",
            states.map_or("more than 2^64".to_string(), |s| s.to_string()),
            limits.budget
        ))),
    }
}

pub(crate) fn local_solutions(form: &LocalForm, exec: crate::Exec) -> Vec<Vec<i64>> {
    let count = (form.m as u64).pow(form.k as u32);
    filter_range(count, exec, |i| form.admissible(&digits(i, form.m, form.k)))
        .into_iter()
        .map(|i| digits(i, form.m, form.k))
        .collect()
}

/// Admissible residues solved separately mod 8 and mod 3.
pub fn admissible_residues(x: &ManifoldPresentation, limits: &Limits) -> Result<FactoredResidues> {
    check_rank(x, limits)?;
    let k = x.k();
    let states = space(8, k).zip(space(3, k)).and_then(|(a, b)| a.checked_add(b));
    let visited = check_budget(states, limits, "the mod 8 × mod 3 search")?;
    let mod8 = local_solutions(&LocalForm::new(x, 8), limits.exec);
    let mod3 = local_solutions(&LocalForm::new(x, 3), limits.exec);
    Ok(FactoredResidues { k, mod8, mod3, visited })
}

/// All admissible residues mod 24, sorted, assembled from the factored search.
pub fn enumerate_admissible_residues(x: &ManifoldPresentation, limits: &Limits) -> Result<Vec<Vec<i64>>> {
    let f = admissible_residues(x, limits)?;
    check_budget(u64::try_from(f.count()).ok(), limits, "listing all residues mod 24")?;
    let mut out: Vec<Vec<i64>> = f.iter_mod24().collect();
    out.sort_unstable();
    Ok(out)
}

/// Cross-check oracle: the same set by a direct search over `(Z/24)^k`
/// testing `gcd(n, 24) = 1` and `nᵀGn ≡ n·v` (mod 24).
pub fn enumerate_admissible_residues_direct(
    x: &ManifoldPresentation,
    limits: &Limits,
) -> Result<Vec<Vec<i64>>> {
    check_rank(x, limits)?;
    let k = x.k();
    let count = check_budget(space(24, k), limits, "the direct mod 24 search")?;
    let gram = x.gram();
    let g: Vec<i64> = (0..k * k).map(|i| gram.get(i / k, i % k).rem_euclid(24)).collect();
    let v: Vec<i64> = x.stable_vector().iter().map(|r| r.value()).collect();
    let keep = |i: u64| {
        let n = digits(i, 24, k);
        if n.iter().fold(24, |a, &b| gcd(a, b)) != 1 {
            return false;
        }
        let mut q = 0i64;
        for a in 0..k {
            q -= n[a] * v[a];
            for b in 0..k {
                q += n[a] * g[a * k + b] * n[b];
            }
        }
        q.rem_euclid(24) == 0
    };
    Ok(filter_range(count, limits.exec, keep).into_iter().map(|i| digits(i, 24, k)).collect())
}

pub fn exists_bundle(x: &ManifoldPresentation, limits: &Limits) -> Result<bool> {
    Ok(!admissible_residues(x, limits)?.is_empty())
}

/// The `p`-part (`m = 8` or `m = 3`) of `λ` for a class with residue `n` mod `m`.
pub fn local_lambda_part(x: &ManifoldPresentation, n: &[i64], m: i64) -> Result<i64> {
    if m != 8 && m != 3 {
        return Err(BundleError::Precondition(format!("modulus {m} is not 8 or 3")));
    }
    if n.len() != x.k() {
        return Err(BundleError::Precondition("residue has the wrong length".into()));
    }
    let p = if m == 8 { 2 } else { 3 };
    let reduced: Vec<i64> = n.iter().map(|a| a.rem_euclid(m)).collect();
    if reduced.iter().all(|a| a % p == 0) {
        return Err(BundleError::Precondition(format!("class is divisible by {p}")));
    }
    Ok(LocalForm::new(x, m).d_part(&reduced))
}
