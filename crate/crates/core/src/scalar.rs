//! Coefficient scalar abstraction.
//!
//! Every counting routine in the crate is generic over [`Count`]. The
//! production choice is [`num_bigint::BigUint`] (see the aliases at the crate
//! root); fixed-width integers work as long as the counts fit, and
//! floating-point or rational types are accepted for experiments.

use std::fmt::Debug;
use std::ops::{AddAssign, Mul};

use num_traits::{One, Zero};

/// Semiring element usable as a matching-count coefficient.
///
/// Blanket-implemented for any type with by-reference multiplication and
/// in-place addition, which covers `BigUint`, `BigInt`, `Ratio<_>`, the
/// primitive integers and floats.
pub trait Count: Clone + Debug + PartialEq + Zero + One + Send + Sync {
    /// `self += a * b`
    fn add_product(&mut self, a: &Self, b: &Self);

    /// `self += other`
    fn add_ref(&mut self, other: &Self);
}

impl<T> Count for T
where
    T: Clone + Debug + PartialEq + Zero + One + Send + Sync + for<'a> AddAssign<&'a T>,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    #[inline]
    fn add_product(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self += &(a * b);
    }

    #[inline]
    fn add_ref(&mut self, other: &Self) {
        *self += other;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::{BigInt, BigUint};
    use num_rational::BigRational;

    fn fused<T: Count>(a: T, b: T, c: T) -> T {
        let mut acc = a;
        acc.add_product(&b, &c);
        acc
    }

    #[test]
    fn blanket_impl_covers_common_scalars() {
        assert_eq!(fused(1u64, 2, 3), 7);
        assert_eq!(fused(1.5f64, 2.0, 0.25), 2.0);
        assert_eq!(
            fused(BigUint::from(1u8), BigUint::from(2u8), BigUint::from(3u8)),
            BigUint::from(7u8)
        );
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(
            fused(BigRational::zero(), half.clone(), half),
            BigRational::new(BigInt::from(1), BigInt::from(4))
        );
    }
}
