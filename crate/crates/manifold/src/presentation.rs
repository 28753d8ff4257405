use std::fmt;

use pdc_algebra::num::gcd_all;
use pdc_algebra::{gcd_with_modulus, Divisor24, Error, IntMatrix, Residue, Result};
use pdc_wedge::{gram_of, pushforward, stable_vector, GramMatrix, Pi7Wedge};
use serde::{Deserialize, Serialize};

/// A complex `M_k`: attaching map plus its (unimodular) Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldPresentation {
    l: Pi7Wedge,
    g: GramMatrix,
    v: Vec<Residue>,
}

impl ManifoldPresentation {
    pub fn new(l: Pi7Wedge) -> Result<Self> {
        let g = gram_of(&l);
        let det = g.det()?;
        if det.abs() != 1 {
            return Err(Error::Precondition(format!(
                "intersection form has determinant {det}, expected ±1"
            )));
        }
        let v = stable_vector(&l);
        Ok(Self { l, g, v })
    }

    /// From the intersection form and the `ν′` coefficients (taken mod 12).
    pub fn from_gram(g: &IntMatrix, l: &[i64]) -> Result<Self> {
        Self::new(Pi7Wedge::from_gram(g, l)?)
    }

    pub fn k(&self) -> usize {
        self.l.k()
    }

    pub fn attaching_map(&self) -> &Pi7Wedge {
        &self.l
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.g
    }

    pub fn stable_vector(&self) -> &[Residue] {
        &self.v
    }

    /// `ν′` coefficients in `[0, 12)`.
    pub fn l(&self) -> Vec<i64> {
        self.l.nu_prime().iter().map(|t| t.value()).collect()
    }
}

impl fmt::Display for ManifoldPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G = {:?}, l = {:?}", self.g.to_rows(), self.l())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A class `ψ = Σ nᵢψᵢ ∈ H⁴(M)` in the dual basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CohomologyClass4 {
    pub n: Vec<i64>,
}

impl CohomologyClass4 {
    pub fn new(n: Vec<i64>) -> Self {
        Self { n }
    }

    pub fn is_primitive(&self) -> bool {
        gcd_all(&self.n) == 1
    }
}

impl From<Vec<i64>> for CohomologyClass4 {
    fn from(n: Vec<i64>) -> Self {
        Self { n }
    }
}

pub fn parity(m: &ManifoldPresentation) -> Parity {
    if (0..m.k()).all(|i| m.g.get(i, i) % 2 == 0) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

pub fn sigma(m: &ManifoldPresentation) -> Divisor24 {
    gcd_with_modulus(&m.v)
}

/// `τ(ψ) = Σ nᵢvᵢ` (mod 24).
pub fn tau(m: &ManifoldPresentation, psi: &CohomologyClass4) -> Result<Residue> {
    if psi.n.len() != m.k() {
        return Err(Error::Dimension(format!("ψ has {} entries, k = {}", psi.n.len(), m.k())));
    }
    let t: i64 = psi.n.iter().zip(&m.v).map(|(&n, v)| n.rem_euclid(24) * v.value()).sum();
    Ok(Residue::mod24(t))
}

pub fn is_stably_trivial(m: &ManifoldPresentation) -> bool {
    m.v.iter().all(|x| x.is_zero())
}

/// Rewrites `M` in the basis `αᵢ = Σⱼ A_ij α′ⱼ`; the new form is `AᵀGA`.
pub fn change_basis(m: &ManifoldPresentation, a: &IntMatrix) -> Result<ManifoldPresentation> {
    if !a.is_square() || a.rows() != m.k() || !a.is_unimodular()? {
        return Err(Error::Precondition("change of basis must be a unimodular k×k matrix".into()));
    }
    ManifoldPresentation::new(pushforward(a, &m.l)?)
}

/// Coordinates of `ψ` after [`change_basis`] by `A`: `n′ = A⁻¹n`, so that
/// `τ′(ψ′) = τ(ψ)` and `ψ′ᵀG′ψ′ = ψᵀGψ`.
pub fn transport_class(a: &IntMatrix, psi: &CohomologyClass4) -> Result<CohomologyClass4> {
    Ok(CohomologyClass4::new(a.inverse_unimodular()?.mul_vec(&psi.n)?))
}
