use std::fmt;

use serde::{Deserialize, Serialize};

use crate::num::gcd;

/// The moduli that occur as coefficient groups: Z/2, Z/3, Z/4, Z/8, Z/12, Z/24.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Modulus {
    M2,
    M3,
    M4,
    M8,
    M12,
    M24,
}

impl Modulus {
    pub const fn value(self) -> i64 {
        match self {
            Modulus::M2 => 2,
            Modulus::M3 => 3,
            Modulus::M4 => 4,
            Modulus::M8 => 8,
            Modulus::M12 => 12,
            Modulus::M24 => 24,
        }
    }

    pub fn from_value(m: i64) -> Option<Self> {
        Some(match m {
            2 => Modulus::M2,
            3 => Modulus::M3,
            4 => Modulus::M4,
            8 => Modulus::M8,
            12 => Modulus::M12,
            24 => Modulus::M24,
            _ => return None,
        })
    }
}

/// A residue class, always stored as its representative in `[0, modulus)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: u8,
    modulus: Modulus,
}

impl Residue {
    pub fn new(value: i64, modulus: Modulus) -> Self {
        Self { value: value.rem_euclid(modulus.value()) as u8, modulus }
    }

    pub fn mod24(value: i64) -> Self {
        Self::new(value, Modulus::M24)
    }

    pub fn mod12(value: i64) -> Self {
        Self::new(value, Modulus::M12)
    }

    pub fn mod3(value: i64) -> Self {
        Self::new(value, Modulus::M3)
    }

    pub fn value(self) -> i64 {
        self.value as i64
    }

    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Reduction to a modulus dividing this one.
    pub fn reduce(self, to: Modulus) -> Self {
        assert_eq!(self.modulus.value() % to.value(), 0, "reduction to non-divisor");
        Self::new(self.value(), to)
    }

    fn same(self, other: Self) -> Modulus {
        assert_eq!(self.modulus, other.modulus, "residues with different moduli");
        self.modulus
    }
}

impl std::ops::Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Self) -> Self {
        Residue::new(self.value() + rhs.value(), self.same(rhs))
    }
}

impl std::ops::Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Self) -> Self {
        Residue::new(self.value() - rhs.value(), self.same(rhs))
    }
}

impl std::ops::Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Self) -> Self {
        Residue::new(self.value() * rhs.value(), self.same(rhs))
    }
}

impl std::ops::Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Self {
        Residue::new(-self.value(), self.modulus)
    }
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus.value())
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Serialize for Residue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.value)
    }
}

/// A divisor of 24, used for σ, λ and λ_s.
///
/// The divisor 24 stands for the zero class of Z/24 and is displayed and
/// serialized as `0`, so the printed values are `{0,1,2,3,4,6,8,12}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor24(u8);

impl Divisor24 {
    pub const ALL: [Divisor24; 8] = [
        Divisor24(1),
        Divisor24(2),
        Divisor24(3),
        Divisor24(4),
        Divisor24(6),
        Divisor24(8),
        Divisor24(12),
        Divisor24(24),
    ];
    pub const ONE: Divisor24 = Divisor24(1);
    pub const ZERO: Divisor24 = Divisor24(24);

    /// `gcd(v, 24)`, with `0 ↦ 24`.
    pub fn of(v: i64) -> Self {
        Divisor24(gcd(v, 24) as u8)
    }

    /// Parses a printed residue (`0` means 24); rejects non-divisors.
    pub fn from_residue(v: i64) -> Option<Self> {
        let d = Self::of(v);
        (d.residue() == v.rem_euclid(24)).then_some(d)
    }

    /// The divisor in `{1,…,24}`.
    pub fn get(self) -> i64 {
        self.0 as i64
    }

    /// The residue in `[0, 24)`, i.e. 24 becomes 0.
    pub fn residue(self) -> i64 {
        self.0 as i64 % 24
    }

    pub fn two_part(self) -> i64 {
        gcd(self.get(), 8)
    }

    pub fn three_part(self) -> i64 {
        gcd(self.get(), 3)
    }

    pub fn is_odd(self) -> bool {
        self.0 % 2 == 1
    }

    /// Whether `other` divides `self`, i.e. `self` is a multiple of `other` in Z/24.
    pub fn is_multiple_of(self, other: Divisor24) -> bool {
        self.0 % other.0 == 0
    }

    pub fn gcd(self, other: Divisor24) -> Divisor24 {
        Divisor24(gcd(self.get(), other.get()) as u8)
    }

    /// Product of a 2-part and a 3-part.
    pub fn from_parts(two: i64, three: i64) -> Self {
        Self::of(two * three)
    }
}

impl fmt::Debug for Divisor24 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue())
    }
}

impl fmt::Display for Divisor24 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue())
    }
}

impl Serialize for Divisor24 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.residue() as u8)
    }
}

impl<'de> Deserialize<'de> for Divisor24 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Divisor24::from_residue(v)
            .ok_or_else(|| serde::de::Error::custom(format!("{v} is not a divisor of 24")))
    }
}

/// gcd of the values together with 24; the empty list gives the zero class.
pub fn gcd_with_modulus(values: &[Residue]) -> Divisor24 {
    Divisor24::of(values.iter().fold(24, |g, r| gcd(g, r.value())))
}
