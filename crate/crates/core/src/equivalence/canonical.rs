use std::fmt;

use itertools::Itertools;
use num_bigint::{BigInt, Sign};
use serde::{Serialize, Serializer};

use super::search::signatures;
use crate::linalg::{column_hnf, det, vec_mat};
use crate::polytope::LatticePolytope;
use crate::scalar::LatticeInt;

/// Class label: equal forms iff the polytopes are unimodularly equivalent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    bytes: Vec<u8>,
}

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn to_hex(&self) -> String {
        self.bytes.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

/// Minimum, over anchors in the smallest vertex-signature class and ordered
/// independent edge tuples `(w_1 - w_0, ..)` there, of the sorted vertex list
/// of `x -> (x - w_0) U`, where `D U` is the column Hermite form of the edge
/// matrix `D`. Equivalent polytopes produce identical candidate sets because
/// the Hermite form only sees the lattice spanned by the columns of `D`.
pub fn canonical_form<T: LatticeInt>(p: &LatticePolytope<T>) -> CanonicalForm {
    let sigs = signatures(p, false);
    let min = sigs.iter().min().expect("nonempty vertex list");
    let verts = p.vertices();
    let d = p.dim();
    let mut best: Option<Vec<Vec<T>>> = None;
    for (w0, _) in sigs.iter().enumerate().filter(|(_, s)| *s == min) {
        let base = &verts[w0];
        let shifted: Vec<Vec<T>> = verts.iter().map(|v| v.sub(base).into_coords()).collect();
        for tuple in p.adjacency()[w0].iter().permutations(d) {
            let rows: Vec<Vec<T>> = tuple.iter().map(|&&u| shifted[u].clone()).collect();
            if det(&rows).is_zero() {
                continue;
            }
            let (_, u) = column_hnf(&rows).expect("nonsingular");
            let mut image: Vec<Vec<T>> = shifted.iter().map(|x| vec_mat(x, &u)).collect();
            image.sort_unstable();
            if best.as_ref().is_none_or(|b| image < *b) {
                best = Some(image);
            }
        }
    }
    encode(d, &best.expect("every vertex has an independent edge tuple"))
}

fn encode<T: LatticeInt>(dim: usize, vertices: &[Vec<T>]) -> CanonicalForm {
    let mut bytes = Vec::new();
    bytes.extend_from_slice(&(dim as u32).to_be_bytes());
    bytes.extend_from_slice(&(vertices.len() as u32).to_be_bytes());
    for v in vertices {
        for c in v {
            let big: BigInt = c.to_string().parse().expect("integers print as decimal");
            let (sign, mag) = big.to_bytes_be();
            bytes.push(u8::from(sign == Sign::Minus));
            let mag = if big.sign() == Sign::NoSign { Vec::new() } else { mag };
            bytes.extend_from_slice(&(mag.len() as u32).to_be_bytes());
            bytes.extend_from_slice(&mag);
        }
    }
    CanonicalForm { bytes }
}
