//! Coefficient series truncated at degree `k`.
//!
//! A [`CoeffSeries`] stores `k + 1` coefficients in ascending order, so entry
//! `i` is the number of `i`-matchings. The same value is an element of the
//! ring of polynomials modulo `t^(k+1)`, and multiplication there is the
//! truncated convolution. An upper-triangular Toeplitz matrix acting on a
//! descending coefficient vector is the matrix form of that product; see
//! [`CoeffSeries::to_toeplitz`].

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Count;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoeffSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Count> CoeffSeries<T> {
    pub fn zero(k: usize) -> Self {
        CoeffSeries {
            coeffs: vec![T::zero(); k + 1],
        }
    }

    /// The multiplicative identity `1`.
    pub fn one(k: usize) -> Self {
        let mut s = Self::zero(k);
        s.coeffs[0] = T::one();
        s
    }

    /// Series with bound `k` whose leading coefficients are `prefix`;
    /// missing entries are zero and entries beyond `k` are dropped.
    pub fn from_prefix<I>(k: usize, prefix: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<T>,
    {
        let mut s = Self::zero(k);
        for (slot, c) in s.coeffs.iter_mut().zip(prefix) {
            *slot = c.into();
        }
        s
    }

    /// Takes ownership of `k + 1` ascending coefficients.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series holds at least the constant term"
        );
        CoeffSeries { coeffs }
    }

    pub fn k(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [T] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn get(&self, i: usize) -> Option<&T> {
        self.coeffs.get(i)
    }

    /// Coefficients from degree `k` down to 0, the order used when the
    /// series is written as a column of a k-matching vector.
    pub fn descending(&self) -> Vec<T> {
        self.coeffs.iter().rev().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(T::is_zero)
    }

    /// Sum of all coefficients (the series evaluated at `t = 1`).
    pub fn total(&self) -> T {
        let mut acc = T::zero();
        for c in &self.coeffs {
            acc.add_ref(c);
        }
        acc
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.k() == other.k() {
            Ok(())
        } else {
            Err(Error::Dimension(self.k(), other.k()))
        }
    }

    /// Product in the truncated ring: `r[m] = sum_{i <= m} p[i] * q[m - i]`.
    pub fn trunc_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.k());
        out.add_product_unchecked(self, other);
        Ok(out)
    }

    /// `self += p * q` in the truncated ring, assuming equal bounds.
    pub(crate) fn add_product_unchecked(&mut self, p: &Self, q: &Self) {
        let k = self.k();
        debug_assert!(p.k() == k && q.k() == k);
        for (i, pi) in p.coeffs.iter().enumerate() {
            if pi.is_zero() {
                continue;
            }
            for (j, qj) in q.coeffs[..=k - i].iter().enumerate() {
                self.coeffs[i + j].add_product(pi, qj);
            }
        }
    }

    /// Multiplication by `t^m`: `m` leading zeros, overflow dropped.
    pub fn shift(&self, m: usize) -> Self {
        let k = self.k();
        let mut out = Self::zero(k);
        for (i, c) in self
            .coeffs
            .iter()
            .enumerate()
            .take((k + 1).saturating_sub(m))
        {
            out.coeffs[i + m] = c.clone();
        }
        out
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        self.check_dim(other)?;
        self.add_assign_unchecked(other);
        Ok(())
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_ref(b);
        }
    }

    /// The `(k+1) x (k+1)` upper-triangular Toeplitz matrix whose first row
    /// is the ascending coefficient list.
    pub fn to_toeplitz(&self) -> Vec<Vec<T>> {
        let n = self.coeffs.len();
        (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        if c >= r {
                            self.coeffs[c - r].clone()
                        } else {
                            T::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

impl<T: fmt::Debug> fmt::Debug for CoeffSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

impl<T: fmt::Display> fmt::Display for CoeffSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(k: usize, c: &[u64]) -> CoeffSeries<u64> {
        CoeffSeries::from_prefix(k, c.iter().copied())
    }

    #[test]
    fn trunc_mul_examples() {
        assert_eq!(
            s(2, &[1, 1]).trunc_mul(&s(2, &[1, 1])).unwrap(),
            s(2, &[1, 2, 1])
        );
        let q = s(4, &[3, 1, 4, 1, 5]);
        assert_eq!(CoeffSeries::one(4).trunc_mul(&q).unwrap(), q);
        // (1+t)^3 truncated at t^2
        let sq = s(2, &[1, 1]).trunc_mul(&s(2, &[1, 2, 1])).unwrap();
        assert_eq!(sq, s(2, &[1, 3, 3]));
        assert!(matches!(
            s(2, &[1]).trunc_mul(&s(3, &[1])),
            Err(Error::Dimension(2, 3))
        ));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(s(2, &[1, 3, 0]).shift(1), s(2, &[0, 1, 3]));
        let p = s(4, &[5, 6, 7, 8, 9]);
        assert_eq!(p.shift(2), s(4, &[0, 0, 5, 6, 7]));
        assert_eq!(p.shift(1).shift(1), p.shift(2));
        assert!(s(0, &[1]).shift(1).is_zero());
        assert!(s(1, &[1, 1]).shift(2).is_zero());
    }

    #[test]
    fn toeplitz_layout() {
        let m = s(2, &[1, 4, 1]).to_toeplitz();
        assert_eq!(m, vec![vec![1, 4, 1], vec![0, 1, 4], vec![0, 0, 1]]);
    }

    #[test]
    fn descending_and_total() {
        let p = s(3, &[1, 6, 9, 2]);
        assert_eq!(p.descending(), vec![2, 9, 6, 1]);
        assert_eq!(p.total(), 18);
        assert_eq!(format!("{p}"), "1 6 9 2");
    }
}
