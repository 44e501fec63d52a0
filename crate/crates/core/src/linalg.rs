//! Exact dense linear algebra over the rationals.
//!
//! Work starts over `Ratio<i64>` with checked arithmetic. Callers that see
//! [`Overflow`] rerun the computation over `BigRational`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

pub type Checked<T> = std::result::Result<T, Overflow>;

pub trait Scalar: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;
    fn add(&self, b: &Self) -> Checked<Self>;
    fn mul(&self, b: &Self) -> Checked<Self>;
    /// `self - a * b`
    fn sub_mul(&self, a: &Self, b: &Self) -> Checked<Self>;
    fn div(&self, b: &Self) -> Checked<Self>;
    fn neg(&self) -> Self;
}

impl Scalar for Ratio<i64> {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v)
    }
    fn add(&self, b: &Self) -> Checked<Self> {
        num_traits::CheckedAdd::checked_add(self, b).ok_or(Overflow)
    }
    fn mul(&self, b: &Self) -> Checked<Self> {
        self.checked_mul(b).ok_or(Overflow)
    }
    fn sub_mul(&self, a: &Self, b: &Self) -> Checked<Self> {
        let p = a.checked_mul(b).ok_or(Overflow)?;
        self.checked_sub(&p).ok_or(Overflow)
    }
    fn div(&self, b: &Self) -> Checked<Self> {
        self.checked_div(b).ok_or(Overflow)
    }
    fn neg(&self) -> Self {
        -*self
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, b: &Self) -> Checked<Self> {
        Ok(self + b)
    }
    fn mul(&self, b: &Self) -> Checked<Self> {
        Ok(self * b)
    }
    fn sub_mul(&self, a: &Self, b: &Self) -> Checked<Self> {
        Ok(self - a * b)
    }
    fn div(&self, b: &Self) -> Checked<Self> {
        Ok(self / b)
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &Matrix<T>) -> Checked<Matrix<T>> {
        assert_eq!(self.cols, other.rows, "matrix shapes do not match");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b)?)?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn from_columns(rows: usize, cols: &[Vec<T>]) -> Matrix<T> {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Checked<Vec<usize>> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..self.cols {
                    self.data.swap(p * self.cols + c, row * self.cols + c);
                }
            }
            let inv = T::one().div(self.get(row, col))?;
            for c in col..self.cols {
                let v = self.get(row, c).mul(&inv)?;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let pv = self.get(row, c).clone();
                    if pv.is_zero() {
                        continue;
                    }
                    let v = self.get(r, c).sub_mul(&factor, &pv)?;
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Ok(pivots)
    }

    pub fn rank(&self) -> Checked<usize> {
        let mut m = self.clone();
        Ok(m.rref()?.len())
    }
}

/// A basis of the null space of `m`, one vector per free column. Vector `k`
/// has a 1 in free column `free[k]` and 0 in the other free columns, so the
/// coordinates of a kernel vector are its entries at the free columns.
pub struct NullSpace<T> {
    pub basis: Vec<Vec<T>>,
    pub free: Vec<usize>,
}

pub fn null_space<T: Scalar>(m: &Matrix<T>) -> Checked<NullSpace<T>> {
    let mut r = m.clone();
    let pivots = r.rref()?;
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![T::zero(); m.cols];
        v[f] = T::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = r.get(i, f).neg();
        }
        basis.push(v);
    }
    Ok(NullSpace { basis, free })
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Ratio<i64>;

    fn mat(rows: &[&[i64]]) -> Matrix<Q> {
        let mut m = Matrix::zeros(rows.len(), rows[0].len());
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, Q::from_integer(v));
            }
        }
        m
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(mat(&[&[1, 2], &[2, 4]]).rank().unwrap(), 1);
        assert_eq!(mat(&[&[1, 2], &[3, 4]]).rank().unwrap(), 2);
        assert_eq!(mat(&[&[0, 0, 0]]).rank().unwrap(), 0);
    }

    #[test]
    fn null_space_vectors_are_killed() {
        let m = mat(&[&[1, 1, 0, 2], &[0, 1, 1, 1]]);
        let ns = null_space(&m).unwrap();
        assert_eq!(ns.basis.len(), 2);
        for v in &ns.basis {
            let col = Matrix::from_columns(4, std::slice::from_ref(v));
            assert!(m.mul(&col).unwrap().is_zero());
        }
    }

    #[test]
    fn overflow_is_reported() {
        let big = Q::from_integer(i64::MAX / 2);
        assert_eq!(big.mul(&Q::from_integer(4)), Err(Overflow));
        let b = BigRational::from_i64(i64::MAX / 2);
        assert!(b.mul(&BigRational::from_i64(4)).is_ok());
    }
}
