//! The exact integer scalar every geometric routine is generic over.
//!
//! Predicates never touch floating point. [`num_bigint::BigInt`] is the
//! default instantiation (see the aliases at the crate root); fixed-width
//! types are available for throughput-bound searches where magnitudes are
//! known to stay small, and overflow is then the caller's responsibility.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

pub trait LatticeInt:
    Integer
    + Signed
    + Clone
    + Ord
    + Hash
    + Debug
    + Display
    + FromStr
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn int(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("i64 fits every lattice scalar")
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    /// Nonnegative gcd of the absolute values.
    fn gcd_abs(&self, other: &Self) -> Self {
        self.abs().gcd(&other.abs())
    }
}

impl LatticeInt for BigInt {}
impl LatticeInt for i64 {}
impl LatticeInt for i128 {}

/// Extended Euclid: returns `(g, x, y)` with `g = a*x + b*y` and `g >= 0`.
pub fn xgcd<T: LatticeInt>(a: &T, b: &T) -> (T, T, T) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (T::one(), T::zero());
    let (mut old_t, mut t) = (T::zero(), T::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = old_r - q.clone() * r.clone();
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = old_s - q.clone() * s.clone();
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = old_t - q * t.clone();
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn factorial(n: u32) -> u64 {
    (1..=n as u64).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xgcd_bezout_identity() {
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                let (g, x, y) = xgcd(&a, &b);
                assert_eq!(g, a.gcd_abs(&b));
                assert_eq!(a * x + b * y, g);
            }
        }
    }

    #[test]
    fn bigint_matches_i64() {
        let (g, x, y) = xgcd(&BigInt::from(240), &BigInt::from(46));
        assert_eq!(g, BigInt::from(2));
        assert_eq!(BigInt::from(240) * x + BigInt::from(46) * y, g);
    }
}
