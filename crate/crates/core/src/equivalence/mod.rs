//! Unimodular equivalence, canonical class labels and stabilizer groups.

mod canonical;
mod group;
mod search;

pub use canonical::{canonical_form, CanonicalForm};
pub use group::{conjugate_group, generate_o_d, SymmetryGroup};

use crate::error::{Error, Result};
use crate::limits::check_enumerable;
use crate::linalg::UnimodularMap;
use crate::polytope::LatticePolytope;
use crate::scalar::{factorial, LatticeInt};

/// Names of the invariants compared before any search, cheapest first.
pub const INVARIANTS: [&str; 7] = [
    "|P|",
    "normalized_volume",
    "vertex_count",
    "facet_count",
    "facet_point_counts",
    "central_symmetry",
    "lattice_diameter",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence<T> {
    /// `σ` with `σ(P) = Q`, verified on all lattice points.
    Equivalent(UnimodularMap<T>),
    /// `invariant` names the first differing prefilter invariant, or is
    /// `None` when the invariants agree and the exhaustive search failed.
    Inequivalent { invariant: Option<&'static str> },
}

impl<T> Equivalence<T> {
    pub fn witness(&self) -> Option<&UnimodularMap<T>> {
        match self {
            Equivalence::Equivalent(m) => Some(m),
            Equivalence::Inequivalent { .. } => None,
        }
    }
}

/// The first invariant (in [`INVARIANTS`] order) on which `p` and `q` differ.
pub fn distinguishing_invariant<T: LatticeInt>(p: &LatticePolytope<T>, q: &LatticePolytope<T>) -> Result<Option<&'static str>> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: q.dim() });
    }
    check_enumerable(p)?;
    check_enumerable(q)?;
    if p.num_lattice_points() != q.num_lattice_points() {
        return Ok(Some(INVARIANTS[0]));
    }
    if p.normalized_volume() != q.normalized_volume() {
        return Ok(Some(INVARIANTS[1]));
    }
    if p.vertices().len() != q.vertices().len() {
        return Ok(Some(INVARIANTS[2]));
    }
    if p.facets().len() != q.facets().len() {
        return Ok(Some(INVARIANTS[3]));
    }
    let mut a = p.facet_point_counts();
    let mut b = q.facet_point_counts();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return Ok(Some(INVARIANTS[4]));
    }
    match (p.lattice_diameter(), q.lattice_diameter()) {
        (Ok((lp, dp)), Ok((lq, dq))) => {
            if lp != lq || dp.len() != dq.len() {
                return Ok(Some(INVARIANTS[6]));
            }
        }
        (Err(_), Err(_)) => {}
        _ => return Ok(Some(INVARIANTS[5])),
    }
    Ok(None)
}

pub fn equivalence_test<T: LatticeInt>(p: &LatticePolytope<T>, q: &LatticePolytope<T>) -> Result<Equivalence<T>> {
    if let Some(name) = distinguishing_invariant(p, q)? {
        return Ok(Equivalence::Inequivalent { invariant: Some(name) });
    }
    Ok(match search::find_witness(p, q)? {
        Some(m) => Equivalence::Equivalent(m),
        None => Equivalence::Inequivalent { invariant: None },
    })
}

/// A witness `σ` with `σ(P) = Q`, if one exists.
pub fn are_equivalent<T: LatticeInt>(p: &LatticePolytope<T>, q: &LatticePolytope<T>) -> Result<Option<UnimodularMap<T>>> {
    Ok(match equivalence_test(p, q)? {
        Equivalence::Equivalent(m) => Some(m),
        Equivalence::Inequivalent { .. } => None,
    })
}

/// `G(P)`: every affine unimodular map fixing `P`.
pub fn unimodular_group<T: LatticeInt>(p: &LatticePolytope<T>) -> Result<SymmetryGroup<T>> {
    let elements = search::all_automorphisms(p)?;
    SymmetryGroup::new(p.dim(), elements)
}

/// `G'(P)`: the orthogonal elements of `G(P)`.
pub fn orthogonal_unimodular_group<T: LatticeInt>(p: &LatticePolytope<T>) -> Result<SymmetryGroup<T>> {
    Ok(unimodular_group(p)?.orthogonal_subgroup())
}

/// `|G'(P)|` divides `2^d d!` (the order of `O_d`) for centrally symmetric `P`.
pub fn divides_bound<T: LatticeInt>(p: &LatticePolytope<T>) -> Result<bool> {
    if !p.is_centrally_symmetric() {
        return Err(Error::NotCentrallySymmetric);
    }
    let order = orthogonal_unimodular_group(p)?.order() as u64;
    Ok(o_d_order(p.dim()).is_multiple_of(order))
}

pub fn o_d_order(d: usize) -> u64 {
    (1u64 << d) * factorial(d as u32)
}

#[cfg(test)]
mod tests;
