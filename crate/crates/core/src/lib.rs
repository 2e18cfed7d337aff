//! Exact geometry of convex lattice polytopes up to unimodular equivalence.

pub mod equivalence;
pub mod families;
pub mod census;
pub mod error;
pub mod json;
pub mod limits;
pub mod linalg;
pub mod polytope;
pub mod scalar;

pub use error::{Error, Result};
pub use linalg::{IntegerMatrix, IntegerPoint, UnimodularMap};
pub use polytope::{Facet, LatticePolytope};
pub use scalar::LatticeInt;

use num_bigint::BigInt;

pub type Point = IntegerPoint<BigInt>;
pub type Matrix = IntegerMatrix<BigInt>;
pub type Map = UnimodularMap<BigInt>;
pub type Polytope = LatticePolytope<BigInt>;
