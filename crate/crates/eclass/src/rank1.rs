use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use pdc_algebra::Residue;
use serde::Serialize;

pub(crate) const STATES: usize = 24 * 24 * 3;

/// `E_{λ,ε,δ}`: top cell attached by `[ι₄,ι₇] + λ ι₇∘ν + ε ι₄∘x + δ ι₄∘y`,
/// with `λ, ε ∈ Z/24` and `δ ∈ Z/3`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RankOneClass {
    pub lambda: Residue,
    pub epsilon: Residue,
    pub delta: Residue,
}

impl RankOneClass {
    pub fn new(lambda: i64, epsilon: i64, delta: i64) -> Self {
        Self { lambda: Residue::mod24(lambda), epsilon: Residue::mod24(epsilon), delta: Residue::mod3(delta) }
    }

    /// `E_{0,0,0} = S⁴ × S⁷`.
    pub fn trivial() -> Self {
        Self::new(0, 0, 0)
    }

    pub fn l(self) -> i64 {
        self.lambda.value()
    }

    pub fn e(self) -> i64 {
        self.epsilon.value()
    }

    pub fn d(self) -> i64 {
        self.delta.value()
    }

    /// Position in the lexicographic order on `(λ, ε, δ)`.
    pub fn index(self) -> usize {
        ((self.l() * 24 + self.e()) * 3 + self.d()) as usize
    }

    pub fn from_index(i: usize) -> Self {
        assert!(i < STATES, "rank-one index out of range");
        Self::new((i / 72) as i64, ((i / 3) % 24) as i64, (i % 3) as i64)
    }

    pub fn is_trivial(self) -> bool {
        self.index() == 0
    }

    /// `E_{0,1,0}`.
    pub fn is_e010(self) -> bool {
        self == Self::new(0, 1, 0)
    }

    pub fn apply(self, mv: Rank1Move) -> Self {
        let (l, e, d) = (self.l(), self.e(), self.d());
        match mv {
            Rank1Move::Flip => Self::new(-l, e, e - d),
            Rank1Move::ShiftNu(a) => Self::new(l, e + (l + 2) * a, d),
            Rank1Move::ShiftNuPrime(b) => Self::new(l, e - 4 * b, d + (l + 1) * b),
        }
    }
}

impl fmt::Debug for RankOneClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E({},{},{})", self.l(), self.e(), self.d())
    }
}

impl fmt::Display for RankOneClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E_{{{},{},{}}}", self.l(), self.e(), self.d())
    }
}

/// Self-equivalences of `S⁴ ∨ S⁷` acting on a rank-one class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Rank1Move {
    /// `ι₄ ↦ −ι₄, ι₇ ↦ −ι₇`: `(λ,ε,δ) ↦ (−λ, ε, ε−δ)`.
    Flip,
    /// `ι₇ ↦ ι₇ + a ι₄∘ν`: `ε ↦ ε + (λ+2)a`.
    ShiftNu(i64),
    /// `ι₇ ↦ ι₇ + b ι₄∘ν′`: `ε ↦ ε − 4b`, `δ ↦ δ + (λ+1)b`.
    ShiftNuPrime(i64),
}

pub fn rank1_neighbors(c: RankOneClass) -> BTreeSet<RankOneClass> {
    let mut out = BTreeSet::from([c.apply(Rank1Move::Flip)]);
    for a in 1..24 {
        out.insert(c.apply(Rank1Move::ShiftNu(a)));
        out.insert(c.apply(Rank1Move::ShiftNuPrime(a)));
    }
    out
}

fn canonical_table() -> &'static [u16] {
    static TABLE: OnceLock<Vec<u16>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rep = vec![u16::MAX; STATES];
        for start in 0..STATES {
            if rep[start] != u16::MAX {
                continue;
            }
            // states are visited in increasing order, so `start` is the least element of its orbit
            rep[start] = start as u16;
            let mut queue = VecDeque::from([RankOneClass::from_index(start)]);
            while let Some(c) = queue.pop_front() {
                for n in rank1_neighbors(c) {
                    if rep[n.index()] == u16::MAX {
                        rep[n.index()] = start as u16;
                        queue.push_back(n);
                    }
                }
            }
        }
        rep
    })
}

/// Lexicographically least class in the orbit of `c`; its `λ` lies in `[0,12]`.
pub fn rank1_canonical(c: RankOneClass) -> RankOneClass {
    RankOneClass::from_index(canonical_table()[c.index()] as usize)
}

pub fn rank1_equivalent(a: RankOneClass, b: RankOneClass) -> bool {
    rank1_canonical(a) == rank1_canonical(b)
}

/// The whole orbit of `c`, sorted.
pub fn rank1_orbit(c: RankOneClass) -> Vec<RankOneClass> {
    let target = canonical_table()[c.index()];
    (0..STATES).filter(|&i| canonical_table()[i] == target).map(RankOneClass::from_index).collect()
}

// Representatives as printed in the published table of rank-one classes.
const PRINTED: [(i64, &[(i64, i64)]); 13] = [
    (0, &[(0, 0), (1, 0)]),
    (1, &[(0, 0), (1, 0), (2, 0)]),
    (2, &[(0, 0), (1, 0), (2, 0), (3, 0), (0, 1), (1, 1), (2, 1), (3, 1), (0, 2), (1, 2), (2, 2), (3, 2)]),
    (3, &[(0, 0)]),
    (4, &[(0, 0), (1, 0), (2, 0), (3, 0), (4, 0), (5, 0)]),
    (5, &[(0, 0), (0, 1), (0, 2)]),
    (6, &[(0, 0), (1, 0), (2, 0), (3, 0)]),
    (7, &[(0, 0), (1, 0), (2, 0)]),
    (8, &[(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (1, 2)]),
    (9, &[(0, 0)]),
    (10, &[(0, 0), (1, 0), (2, 0), (3, 0), (4, 0), (5, 0), (6, 0), (7, 0), (8, 0), (9, 0), (10, 0), (11, 0)]),
    (11, &[(0, 0), (0, 1), (0, 2)]),
    (12, &[(0, 0), (1, 0)]),
];

/// The published representatives, row by row.
pub fn printed_representatives() -> Vec<RankOneClass> {
    PRINTED
        .iter()
        .flat_map(|&(l, row)| row.iter().map(move |&(e, d)| RankOneClass::new(l, e, d)))
        .collect()
}

fn display_map() -> &'static BTreeMap<RankOneClass, RankOneClass> {
    static MAP: OnceLock<BTreeMap<RankOneClass, RankOneClass>> = OnceLock::new();
    MAP.get_or_init(|| printed_representatives().into_iter().map(|p| (rank1_canonical(p), p)).collect())
}

/// The published representative of the orbit of `c` (falls back to the
/// canonical one if the orbit has no printed representative).
pub fn printed_representative(c: RankOneClass) -> RankOneClass {
    let canon = rank1_canonical(c);
    display_map().get(&canon).copied().unwrap_or(canon)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub lambda: i64,
    pub count: usize,
    /// Canonical representatives, sorted.
    pub classes: Vec<RankOneClass>,
    /// The same orbits, shown by their published representatives.
    pub printed: Vec<RankOneClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1 {
    pub rows: Vec<Table1Row>,
    pub total: usize,
}

/// Orbit decomposition of all `24·24·3` rank-one classes, by `λ ∈ [0,12]`.
pub fn table1() -> Table1 {
    let table = canonical_table();
    let mut by_lambda: BTreeMap<i64, Vec<RankOneClass>> = BTreeMap::new();
    for i in 0..STATES {
        if table[i] as usize == i {
            let c = RankOneClass::from_index(i);
            by_lambda.entry(c.l()).or_default().push(c);
        }
    }
    let rows: Vec<Table1Row> = by_lambda
        .into_iter()
        .map(|(lambda, classes)| {
            let order = printed_representatives();
            let mut printed: Vec<RankOneClass> = classes.iter().map(|&c| printed_representative(c)).collect();
            printed.sort_by_key(|p| order.iter().position(|q| q == p).unwrap_or(usize::MAX));
            Table1Row { lambda, count: classes.len(), classes, printed }
        })
        .collect();
    let total = rows.iter().map(|r| r.count).sum();
    Table1 { rows, total }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_roundtrip() {
        for i in 0..STATES {
            assert_eq!(RankOneClass::from_index(i).index(), i);
        }
    }

    #[test]
    fn flip_is_an_involution() {
        for i in 0..STATES {
            let c = RankOneClass::from_index(i);
            assert_eq!(c.apply(Rank1Move::Flip).apply(Rank1Move::Flip), c);
        }
    }
}
