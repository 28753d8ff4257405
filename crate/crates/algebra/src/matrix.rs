use std::fmt;

use serde::{Deserialize, Serialize};

use crate::num;
use crate::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            m.data[i * k + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Self { rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn diagonal(d: &[i64]) -> Self {
        let k = d.len();
        Self::from_fn(k, k, |i, j| if i == j { d[i] } else { 0 })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<i64>]) -> Result<Self> {
        Ok(Self::from_rows(cols)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn max_abs(&self) -> u64 {
        self.data.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = num::mul_add(a, other.get(l, j), out.get(i, j))?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(Error::Dimension("matrix-vector length".into()));
        }
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).try_fold(0i64, |acc, (&a, &b)| num::mul_add(a, b, acc))
            })
            .collect()
    }

    /// `vᵀ M w`.
    pub fn bilinear(&self, v: &[i64], w: &[i64]) -> Result<i64> {
        let mw = self.mul_vec(w)?;
        v.iter().zip(&mw).try_fold(0i64, |acc, (&a, &b)| num::mul_add(a, b, acc))
    }

    /// `Aᵀ M A`.
    pub fn congruent(&self, a: &Self) -> Result<Self> {
        a.transpose().mul(self)?.mul(a)
    }

    /// Determinant by fraction-free Bareiss elimination in `i128`.
    pub fn det(&self) -> Result<i64> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut m: Vec<i128> = self.data.iter().map(|&v| v as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[k * n + k] == 0 {
                match (k + 1..n).find(|&i| m[i * n + k] != 0) {
                    Some(i) => {
                        for j in 0..n {
                            m.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            let pivot = m[k * n + k];
            for i in k + 1..n {
                for j in k + 1..n {
                    let a = pivot.checked_mul(m[i * n + j]).ok_or(Error::ArithmeticOverflow)?;
                    let b = m[i * n + k]
                        .checked_mul(m[k * n + j])
                        .ok_or(Error::ArithmeticOverflow)?;
                    let num = a.checked_sub(b).ok_or(Error::ArithmeticOverflow)?;
                    m[i * n + j] = num / prev;
                }
                m[i * n + k] = 0;
            }
            prev = pivot;
        }
        let d = sign * m[n * n - 1];
        i64::try_from(d).map_err(|_| Error::ArithmeticOverflow)
    }

    pub fn is_unimodular(&self) -> Result<bool> {
        Ok(self.is_square() && self.det()?.abs() == 1)
    }

    /// Inverse of a matrix with determinant ±1, via the adjugate.
    pub fn inverse_unimodular(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let det = self.det()?;
        if det.abs() != 1 {
            return Err(Error::Precondition(format!("determinant {det} is not ±1")));
        }
        let k = self.rows;
        let mut out = Self::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                let minor = Self::from_fn(k - 1, k - 1, |a, b| {
                    self.get(if a < j { a } else { a + 1 }, if b < i { b } else { b + 1 })
                });
                let c = minor.det()?;
                let c = if (i + j) % 2 == 0 { c } else { num::neg(c)? };
                out.set(i, j, num::mul(c, det)?);
            }
        }
        Ok(out)
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += c * row[src]`.
    pub(crate) fn add_row(&mut self, dst: usize, src: usize, c: i64) -> Result<()> {
        for j in 0..self.cols {
            let v = num::mul_add(c, self.get(src, j), self.get(dst, j))?;
            self.set(dst, j, v);
        }
        Ok(())
    }

    /// `col[dst] += c * col[src]`.
    pub(crate) fn add_col(&mut self, dst: usize, src: usize, c: i64) -> Result<()> {
        for i in 0..self.rows {
            let v = num::mul_add(c, self.get(i, src), self.get(i, dst))?;
            self.set(i, dst, v);
        }
        Ok(())
    }

    pub(crate) fn negate_row(&mut self, i: usize) -> Result<()> {
        for j in 0..self.cols {
            let v = num::neg(self.get(i, j))?;
            self.set(i, j, v);
        }
        Ok(())
    }

    pub(crate) fn negate_col(&mut self, j: usize) -> Result<()> {
        for i in 0..self.rows {
            let v = num::neg(self.get(i, j))?;
            self.set(i, j, v);
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(i64::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl TryFrom<Vec<Vec<i64>>> for IntMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::from_rows(&rows)
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        m.to_rows()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small() {
        let m = IntMatrix::from_rows(&[vec![2, 3], vec![1, 2]]).unwrap();
        assert_eq!(m.det().unwrap(), 1);
        let h = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(h.det().unwrap(), -1);
        let s = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 5]]).unwrap();
        assert_eq!(s.det().unwrap(), 0);
        let z = IntMatrix::from_rows(&[vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]).unwrap();
        assert_eq!(z.det().unwrap(), -1);
    }

    #[test]
    fn mul_overflow() {
        let m = IntMatrix::diagonal(&[i64::MAX / 2 + 1]);
        assert_eq!(m.mul(&IntMatrix::diagonal(&[2])), Err(Error::ArithmeticOverflow));
    }
}
