use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::LatticeInt;

/// An exact point of `Z^d`. Ordering is lexicographic on coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IntegerPoint<T>(Vec<T>);

impl<T: LatticeInt> IntegerPoint<T> {
    pub fn new(coords: Vec<T>) -> Self {
        assert!(!coords.is_empty(), "points live in dimension d >= 1");
        IntegerPoint(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| T::int(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![T::zero(); dim])
    }

    /// The `i`-th standard basis vector (0-based).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut c = vec![T::zero(); dim];
        c[i] = T::one();
        Self::new(c)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<T> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        IntegerPoint(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() + b.clone()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        IntegerPoint(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() - b.clone()).collect())
    }

    pub fn neg(&self) -> Self {
        IntegerPoint(self.0.iter().map(|a| -a.clone()).collect())
    }

    pub fn scale(&self, k: &T) -> Self {
        IntegerPoint(self.0.iter().map(|a| a.clone() * k.clone()).collect())
    }

    pub fn dot(&self, other: &[T]) -> T {
        dot(&self.0, other)
    }

    /// Nonnegative gcd of the coordinates (0 for the zero vector).
    pub fn content(&self) -> T {
        self.0.iter().fold(T::zero(), |g, c| g.gcd_abs(c))
    }

    /// gcd of the absolute coordinates equals 1. The zero vector is not
    /// primitive.
    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn require_primitive(&self) -> Result<()> {
        if self.is_primitive() {
            Ok(())
        } else {
            Err(Error::NotPrimitive(self.to_string()))
        }
    }

    /// The representative of `{v, -v}` whose first nonzero coordinate is
    /// positive.
    pub fn canonical_sign(&self) -> Self {
        match self.0.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: dim, found: self.dim() })
        }
    }
}

pub(crate) fn dot<T: LatticeInt>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

impl<T> Index<usize> for IntegerPoint<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T: fmt::Display> fmt::Display for IntegerPoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl<T: LatticeInt> Serialize for IntegerPoint<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::json::serialize_ints(&self.0, s)
    }
}

impl<'de, T: LatticeInt> Deserialize<'de> for IntegerPoint<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<T> = crate::json::deserialize_ints(d)?;
        if v.is_empty() {
            return Err(serde::de::Error::custom("point must have at least one coordinate"));
        }
        Ok(IntegerPoint(v))
    }
}
