use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{IntegerMatrix, UnimodularMap};
use crate::scalar::LatticeInt;

/// A finite group of affine unimodular maps under composition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "T: LatticeInt")]
pub struct SymmetryGroup<T> {
    dim: usize,
    elements: BTreeSet<UnimodularMap<T>>,
}

impl<T: LatticeInt> SymmetryGroup<T> {
    /// Validates identity, inverses and closure exhaustively.
    pub fn new(dim: usize, elements: BTreeSet<UnimodularMap<T>>) -> Result<Self> {
        let g = SymmetryGroup { dim, elements };
        g.check_closure()?;
        Ok(g)
    }

    pub(crate) fn new_unchecked(dim: usize, elements: BTreeSet<UnimodularMap<T>>) -> Self {
        SymmetryGroup { dim, elements }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &BTreeSet<UnimodularMap<T>> {
        &self.elements
    }

    pub fn contains(&self, s: &UnimodularMap<T>) -> bool {
        self.elements.contains(s)
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.dim == other.dim && self.elements.is_subset(&other.elements)
    }

    /// Verifies that the element set is a group. Generators are picked
    /// greedily from the set and their closure is grown by right
    /// multiplication, failing as soon as a product leaves the set; each new
    /// generator at least doubles the closure, so the cost is
    /// `O(|G| log^2 |G|)` compositions instead of `|G|^2`.
    pub fn check_closure(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::InvalidInput(format!("not a group: {what}")));
        if let Some(s) = self.elements.iter().find(|s| s.dim() != self.dim) {
            return Err(Error::DimensionMismatch { expected: self.dim, found: s.dim() });
        }
        let id = UnimodularMap::identity(self.dim);
        if !self.elements.contains(&id) {
            return fail("identity missing");
        }
        let mut generators: Vec<&UnimodularMap<T>> = Vec::new();
        let mut closure: BTreeSet<UnimodularMap<T>> = BTreeSet::from([id.clone()]);
        for s in &self.elements {
            if closure.contains(s) {
                continue;
            }
            generators.push(s);
            // in a finite group the generated monoid is the generated subgroup
            closure = BTreeSet::from([id.clone()]);
            let mut queue = vec![id.clone()];
            while let Some(x) = queue.pop() {
                for g in &generators {
                    let y = x.compose(g)?;
                    if !self.elements.contains(&y) {
                        return fail("not closed under composition");
                    }
                    if closure.insert(y.clone()) {
                        queue.push(y);
                    }
                }
            }
        }
        Ok(())
    }

    /// Elements that are orthogonal (`U U' = I`).
    pub fn orthogonal_subgroup(&self) -> Self {
        let elements = self.elements.iter().filter(|s| s.is_orthogonal()).cloned().collect();
        SymmetryGroup { dim: self.dim, elements }
    }
}

/// All signed permutation matrices, fixing the origin: `2^d d!` maps.
pub fn generate_o_d<T: LatticeInt>(d: usize) -> Result<SymmetryGroup<T>> {
    if !(1..=6).contains(&d) {
        return Err(Error::OutOfRange(format!("O_d is generated for 1 <= d <= 6, got {d}")));
    }
    let mut elements = BTreeSet::new();
    for perm in (0..d).permutations(d) {
        for signs in 0u32..(1 << d) {
            let rows = (0..d)
                .map(|i| {
                    let mut row = vec![T::zero(); d];
                    row[perm[i]] = if signs >> i & 1 == 1 { -T::one() } else { T::one() };
                    row
                })
                .collect();
            let m = IntegerMatrix::from_rows(rows)?;
            elements.insert(UnimodularMap::linear(m)?);
        }
    }
    Ok(SymmetryGroup::new_unchecked(d, elements))
}

/// `s G s^{-1}` as maps: `x -> s(g(s^{-1}(x)))`, so that
/// `G(s(P)) = conjugate_group(s, G(P))`.
pub fn conjugate_group<T: LatticeInt>(s: &UnimodularMap<T>, g: &SymmetryGroup<T>) -> Result<SymmetryGroup<T>> {
    if s.dim() != g.dim {
        return Err(Error::DimensionMismatch { expected: g.dim, found: s.dim() });
    }
    let inv = s.inverse();
    let elements = g.elements.iter().map(|x| inv.compose(x)?.compose(s)).collect::<Result<_>>()?;
    Ok(SymmetryGroup::new_unchecked(g.dim, elements))
}
