//! JSON encodings. Integers are written as decimal strings so arbitrary
//! precision survives any JSON reader; on input both strings and plain JSON
//! integers are accepted.

use std::fmt;
use std::marker::PhantomData;

use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polytope::LatticePolytope;
use crate::linalg::{IntegerPoint, UnimodularMap};
use crate::scalar::LatticeInt;

pub(crate) fn serialize_ints<T: LatticeInt, S: Serializer>(v: &[T], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

pub(crate) struct IntRow<'a, T>(pub &'a [T]);

impl<T: LatticeInt> Serialize for IntRow<'_, T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_ints(self.0, s)
    }
}

pub(crate) struct OwnedIntRow<T>(pub Vec<T>);

impl<'de, T: LatticeInt> Deserialize<'de> for OwnedIntRow<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        deserialize_ints(d).map(OwnedIntRow)
    }
}

struct IntValue<T>(T);

impl<'de, T: LatticeInt> Deserialize<'de> for IntValue<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V<T>(PhantomData<T>);
        impl<T: LatticeInt> Visitor<'_> for V<T> {
            type Value = T;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<T, E> {
                s.trim().parse().map_err(|_| E::custom(format!("not an integer: {s:?}")))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<T, E> {
                Ok(T::int(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<T, E> {
                T::from_u64(v).ok_or_else(|| E::custom("integer out of range"))
            }
        }
        d.deserialize_any(V(PhantomData)).map(IntValue)
    }
}

pub(crate) fn deserialize_ints<'de, T: LatticeInt, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<T>, D::Error> {
    struct V<T>(PhantomData<T>);
    impl<'de, T: LatticeInt> Visitor<'de> for V<T> {
        type Value = Vec<T>;
        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("an array of integers")
        }
        fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Vec<T>, A::Error> {
            let mut out = Vec::new();
            while let Some(IntValue(x)) = seq.next_element::<IntValue<T>>()? {
                out.push(x);
            }
            Ok(out)
        }
    }
    d.deserialize_seq(V(PhantomData))
}

/// `{"dim": d, "vertices": [[..], ..]}`; vertices are written in canonical
/// (sorted) order and may be read in any order.
#[derive(Serialize, Deserialize)]
#[serde(bound = "T: LatticeInt")]
pub struct PolytopeJson<T> {
    pub dim: usize,
    pub vertices: Vec<IntegerPoint<T>>,
}

impl<T: LatticeInt> From<&LatticePolytope<T>> for PolytopeJson<T> {
    fn from(p: &LatticePolytope<T>) -> Self {
        PolytopeJson { dim: p.dim(), vertices: p.vertices().to_vec() }
    }
}

impl<T: LatticeInt> PolytopeJson<T> {
    pub fn into_polytope(self) -> Result<LatticePolytope<T>> {
        for v in &self.vertices {
            v.check_dim(self.dim)?;
        }
        LatticePolytope::convex_hull(&self.vertices, self.dim)
    }
}

pub fn polytope_to_json<T: LatticeInt>(p: &LatticePolytope<T>) -> serde_json::Value {
    serde_json::to_value(PolytopeJson::from(p)).expect("polytope JSON is always serializable")
}

pub fn polytope_from_json<T: LatticeInt>(text: &str) -> Result<LatticePolytope<T>> {
    let j: PolytopeJson<T> = serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
    j.into_polytope()
}

/// `{"U": [[..]], "v": [..]}`
pub fn map_to_json<T: LatticeInt>(m: &UnimodularMap<T>) -> serde_json::Value {
    serde_json::to_value(m).expect("map JSON is always serializable")
}

pub fn map_from_json<T: LatticeInt>(text: &str) -> Result<UnimodularMap<T>> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))
}
