use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::{Error, IntMatrix, Result};

/// Dense matrix of arbitrary-precision integers.
///
/// Only used for Smith normal form transforms, whose entries routinely leave
/// the 64-bit range even for small inputs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BigMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl BigMatrix {
    pub fn identity(k: usize) -> Self {
        let mut data = vec![BigInt::zero(); k * k];
        for i in 0..k {
            data[i * k + i] = BigInt::from(1);
        }
        Self { rows: k, cols: k, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn mul(&self, other: &BigMatrix) -> Result<BigMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                data.push(acc);
            }
        }
        Ok(BigMatrix { rows: self.rows, cols: other.cols, data })
    }

    /// Checked conversion to a 64-bit matrix.
    pub fn to_int(&self) -> Result<IntMatrix> {
        let mut vals = Vec::with_capacity(self.data.len());
        for x in &self.data {
            vals.push(x.to_i64().ok_or(Error::ArithmeticOverflow)?);
        }
        Ok(IntMatrix::from_fn(self.rows, self.cols, |i, j| vals[i * self.cols + j]))
    }

    /// Entries reduced into `[0, m)`.
    pub fn reduce_mod(&self, m: i64) -> IntMatrix {
        let bm = BigInt::from(m);
        IntMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).mod_floor(&bm).to_i64().expect("residue fits")
        })
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[BigInt]>::to_vec).collect()
    }

    pub fn max_bits(&self) -> u64 {
        self.data.iter().map(BigInt::bits).max().unwrap_or(0)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let t = &self.data[src * self.cols + j] * c;
            self.data[dst * self.cols + j] += t;
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        for i in 0..self.rows {
            let t = &self.data[i * self.cols + src] * c;
            self.data[i * self.cols + dst] += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = &mut self.data[i * self.cols + j];
            *x = -std::mem::take(x);
        }
    }
}

impl From<&IntMatrix> for BigMatrix {
    fn from(m: &IntMatrix) -> Self {
        let data = (0..m.rows())
            .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
            .map(|(i, j)| BigInt::from(m.get(i, j)))
            .collect();
        BigMatrix { rows: m.rows(), cols: m.cols(), data }
    }
}

impl fmt::Debug for BigMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// Smith normal form `U·M·V = D` with `U`, `V` unimodular and
/// `d₁ | d₂ | …` on the diagonal of `D`, all `dᵢ ≥ 0`.
///
/// The factors are arbitrary precision; use [`BigMatrix::to_int`] or
/// [`BigMatrix::reduce_mod`] to get back to `i64`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub u: BigMatrix,
    pub d: BigMatrix,
    pub v: BigMatrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Invariant factors as `i64`; overflow is an error.
    pub fn invariant_factors(&self) -> Result<Vec<i64>> {
        self.diagonal().iter().map(|x| x.to_i64().ok_or(Error::ArithmeticOverflow)).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smith normal form by repeated elimination around the entry of smallest
/// absolute value in the trailing block.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (r, c) = (m.rows(), m.cols());
    let mut d = BigMatrix::from(m);
    let mut u = BigMatrix::identity(r);
    let mut v = BigMatrix::identity(c);
    let one = BigInt::from(1);

    for t in 0..r.min(c) {
        loop {
            let Some((pi, pj)) = smallest_entry(&d, t) else {
                return Snf { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let p = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..r {
                let q = -(d.get(i, t) / &p);
                if !q.is_zero() {
                    d.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                }
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..c {
                let q = -(d.get(t, j) / &p);
                if !q.is_zero() {
                    d.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                }
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let bad_row =
                (t + 1..r).find(|&i| (t + 1..c).any(|j| !(d.get(i, j) % &p).is_zero()));
            match bad_row {
                Some(i) => {
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Snf { u, d, v }
}

fn smallest_entry(d: &BigMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(&BigInt, usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let a = d.get(i, j);
            if !a.is_zero() && best.map_or(true, |(b, _, _)| a.magnitude() < b.magnitude()) {
                best = Some((a, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> Snf {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(&BigMatrix::from(m)).unwrap().mul(&s.v).unwrap(), s.d);
        assert_eq!(s.u.to_int().unwrap().det().unwrap().abs(), 1);
        assert_eq!(s.v.to_int().unwrap().det().unwrap().abs(), 1);
        s
    }

    #[test]
    fn identity3() {
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.invariant_factors().unwrap(), vec![1, 1, 1]);
        assert_eq!(s.u.to_int().unwrap(), IntMatrix::identity(3));
        assert_eq!(s.v.to_int().unwrap(), IntMatrix::identity(3));
    }

    #[test]
    fn diag_2_3() {
        let s = check(&IntMatrix::diagonal(&[2, 3]));
        assert_eq!(s.invariant_factors().unwrap(), vec![1, 6]);
    }

    #[test]
    fn hyperbolic() {
        let s = check(&IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap());
        assert_eq!(s.invariant_factors().unwrap(), vec![1, 1]);
    }

    #[test]
    fn rectangular() {
        let s = check(&IntMatrix::from_rows(&[vec![6, 10, 15]]).unwrap());
        assert_eq!(s.invariant_factors().unwrap(), vec![1]);
        let s = check(&IntMatrix::from_rows(&[vec![4, 6], vec![8, 12], vec![2, 0]]).unwrap());
        assert_eq!(s.invariant_factors().unwrap(), vec![2, 6]);
    }

    #[test]
    fn zero_matrix() {
        let s = check(&IntMatrix::zeros(2, 3));
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn reduce_mod_is_nonnegative() {
        let s = smith_normal_form(&IntMatrix::from_rows(&[vec![3, 5], vec![7, 11]]).unwrap());
        let r = s.u.reduce_mod(8);
        assert!((0..2).all(|i| (0..2).all(|j| (0..8).contains(&r.get(i, j)))));
    }
}
