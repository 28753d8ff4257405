use std::fmt;

use pdc_algebra::num::{self, binom2};
use pdc_algebra::{Error, IntMatrix, Residue, Result};

/// `Σ w_ij[αᵢ,αⱼ] + Σ sᵢνᵢ + Σ tᵢν′ᵢ` in π₇ of a wedge of `k` four-spheres.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pi7Wedge {
    k: usize,
    // packed strictly-upper triangle, row by row
    whitehead: Vec<i64>,
    nu: Vec<i64>,
    nu_prime: Vec<Residue>,
}

fn packed(k: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < k);
    i * (2 * k - i - 1) / 2 + (j - i - 1)
}

impl Pi7Wedge {
    pub fn zero(k: usize) -> Self {
        Self {
            k,
            whitehead: vec![0; k * k.saturating_sub(1) / 2],
            nu: vec![0; k],
            nu_prime: vec![Residue::mod12(0); k],
        }
    }

    /// The element whose Gram matrix is `g` and whose `ν′` coefficients are `l` (mod 12).
    pub fn from_gram(g: &IntMatrix, l: &[i64]) -> Result<Self> {
        let k = g.rows();
        if !g.is_square() || l.len() != k {
            return Err(Error::Dimension(format!(
                "Gram matrix {}x{} with {} ν′ coefficients",
                g.rows(),
                g.cols(),
                l.len()
            )));
        }
        if !g.is_symmetric() {
            return Err(Error::Precondition("Gram matrix is not symmetric".into()));
        }
        let mut out = Self::zero(k);
        for i in 0..k {
            out.nu[i] = g.get(i, i);
            out.nu_prime[i] = Residue::mod12(l[i]);
            for j in i + 1..k {
                out.set_w(i, j, g.get(i, j));
            }
        }
        Ok(out)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Coefficient of `[αᵢ, αⱼ]`; symmetric in `i`, `j`, zero on the diagonal.
    pub fn w(&self, i: usize, j: usize) -> i64 {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.whitehead[packed(self.k, i, j)],
            std::cmp::Ordering::Greater => self.whitehead[packed(self.k, j, i)],
            std::cmp::Ordering::Equal => 0,
        }
    }

    pub fn s(&self, i: usize) -> i64 {
        self.nu[i]
    }

    pub fn t(&self, i: usize) -> Residue {
        self.nu_prime[i]
    }

    pub fn nu(&self) -> &[i64] {
        &self.nu
    }

    pub fn nu_prime(&self) -> &[Residue] {
        &self.nu_prime
    }

    pub fn set_w(&mut self, i: usize, j: usize, value: i64) {
        assert!(i != j, "no Whitehead coefficient on the diagonal");
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.whitehead[packed(self.k, a, b)] = value;
    }

    pub fn set_s(&mut self, i: usize, value: i64) {
        self.nu[i] = value;
    }

    pub fn set_t(&mut self, i: usize, value: i64) {
        self.nu_prime[i] = Residue::mod12(value);
    }
}

impl fmt::Debug for Pi7Wedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Pi7Wedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for i in 0..self.k {
            for j in i + 1..self.k {
                let w = self.w(i, j);
                if w != 0 {
                    terms.push(format!("{w}[a{},a{}]", i + 1, j + 1));
                }
            }
        }
        for i in 0..self.k {
            if self.nu[i] != 0 {
                terms.push(format!("{}nu{}", self.nu[i], i + 1));
            }
        }
        for i in 0..self.k {
            if !self.nu_prime[i].is_zero() {
                terms.push(format!("{}nu'{}", self.nu_prime[i], i + 1));
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

struct Accum {
    k: usize,
    w: Vec<i64>,
    s: Vec<i64>,
    // kept reduced mod 12
    t: Vec<i64>,
}

impl Accum {
    fn new(k: usize) -> Self {
        Self { k, w: vec![0; k * k.saturating_sub(1) / 2], s: vec![0; k], t: vec![0; k] }
    }

    fn add_t(&mut self, p: usize, c: i64, x: i64) {
        self.t[p] = (self.t[p] + c.rem_euclid(12) * x.rem_euclid(12)) % 12;
    }

    /// `x·[α′_p, α′_q]`.
    fn whitehead(&mut self, p: usize, q: usize, x: i64) -> Result<()> {
        if p == q {
            self.s[p] = num::add(self.s[p], num::mul(2, x)?)?;
            self.add_t(p, 1, x);
        } else {
            let idx = packed(self.k, p.min(q), p.max(q));
            self.w[idx] = num::add(self.w[idx], x)?;
        }
        Ok(())
    }

    fn finish(self) -> Pi7Wedge {
        Pi7Wedge {
            k: self.k,
            whitehead: self.w,
            nu: self.s,
            nu_prime: self.t.into_iter().map(Residue::mod12).collect(),
        }
    }
}

/// Rewrites `l` in the basis `α′` given by `αᵢ = Σⱼ A_ij α′ⱼ`.
///
/// `A` may be rectangular (`k × k′`); a single column `n` gives the composite
/// with `Σ nᵢqᵢ`, as in [`compose_class`].
pub fn pushforward(a: &IntMatrix, l: &Pi7Wedge) -> Result<Pi7Wedge> {
    if a.rows() != l.k {
        return Err(Error::Dimension(format!("matrix has {} rows, element has rank {}", a.rows(), l.k)));
    }
    let kp = a.cols();
    let mut acc = Accum::new(kp);

    for i in 0..l.k {
        for j in i + 1..l.k {
            let w = l.w(i, j);
            if w == 0 {
                continue;
            }
            for p in 0..kp {
                for q in 0..kp {
                    let c = num::mul(a.get(i, p), a.get(j, q))?;
                    if c != 0 {
                        acc.whitehead(p, q, num::mul(c, w)?)?;
                    }
                }
            }
        }
    }

    for i in 0..l.k {
        let s = l.nu[i];
        let t = l.nu_prime[i].value();
        let row = a.row(i);
        for p in 0..kp {
            let ap = row[p];
            if ap == 0 {
                continue;
            }
            if s != 0 {
                acc.s[p] = num::add(acc.s[p], num::mul(num::mul(ap, ap)?, s)?)?;
                acc.add_t(p, binom2(ap)?, s);
                for q in p + 1..kp {
                    let c = num::mul(ap, row[q])?;
                    if c != 0 {
                        acc.whitehead(p, q, num::mul(c, s)?)?;
                    }
                }
            }
            acc.add_t(p, ap, t);
        }
    }
    Ok(acc.finish())
}

/// Stable class `vᵢ = sᵢ − 2tᵢ` (mod 24).
pub fn stable_vector(l: &Pi7Wedge) -> Vec<Residue> {
    (0..l.k)
        .map(|i| Residue::mod24(l.nu[i].rem_euclid(24) - 2 * l.nu_prime[i].value()))
        .collect()
}

/// `(ν, ν′)` coefficients of `(Σ nᵢqᵢ)∘L`: `nᵀGn` and
/// `Σ_{i<j} w_ij nᵢnⱼ + Σ sᵢ C(nᵢ,2) + Σ tᵢnᵢ` (mod 12).
pub fn compose_class(n: &[i64], l: &Pi7Wedge) -> Result<(i64, Residue)> {
    if n.len() != l.k {
        return Err(Error::Dimension(format!("vector of length {} for rank {}", n.len(), l.k)));
    }
    let mut nu = 0i64;
    let mut nu_prime = 0i64;
    for i in 0..l.k {
        if n[i] == 0 {
            continue;
        }
        for j in i + 1..l.k {
            let c = num::mul(num::mul(l.w(i, j), n[i])?, n[j])?;
            nu = num::add(nu, num::mul(2, c)?)?;
            nu_prime += c.rem_euclid(12);
        }
        nu = num::add(nu, num::mul(num::mul(l.nu[i], n[i])?, n[i])?)?;
        nu_prime += l.nu[i].rem_euclid(12) * binom2(n[i])?.rem_euclid(12);
        nu_prime += l.nu_prime[i].value() * n[i].rem_euclid(12);
        nu_prime %= 12;
    }
    Ok((nu, Residue::mod12(nu_prime)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packing_is_a_bijection() {
        for k in 1..7 {
            let mut seen = vec![false; k * (k - 1) / 2];
            for i in 0..k {
                for j in i + 1..k {
                    let p = packed(k, i, j);
                    assert!(!seen[p]);
                    seen[p] = true;
                }
            }
            assert!(seen.into_iter().all(|b| b));
        }
    }

    #[test]
    fn display() {
        let l = Pi7Wedge::from_gram(&IntMatrix::from_rows(&[vec![0, 1], vec![1, 2]]).unwrap(), &[0, 13])
            .unwrap();
        assert_eq!(l.to_string(), "1[a1,a2] + 2nu2 + 1nu'2");
        assert_eq!(Pi7Wedge::zero(3).to_string(), "0");
    }
}
