use crate::error::{Error, Result};
use crate::limits::check_enumerable;
use crate::linalg::IntegerPoint;
use crate::polytope::LatticePolytope;
use crate::scalar::LatticeInt;

/// The full peeling sequence from `outer` down to `core`: `removed[i]` is the
/// vertex deleted at step `i`, always the lexicographically smallest vertex
/// outside `core`.
#[derive(Clone, Debug)]
pub struct PeelChain<T> {
    outer: LatticePolytope<T>,
    core_count: usize,
    removed: Vec<IntegerPoint<T>>,
}

/// `conv(points \ {v})` for a vertex `v` of `current`, whose lattice points
/// are `points`. Only lattice points outside the hull of the remaining
/// vertices can become new vertices.
fn delete_vertex<T: LatticeInt>(
    current: &LatticePolytope<T>,
    points: &[IntegerPoint<T>],
    v: &IntegerPoint<T>,
) -> Result<LatticePolytope<T>> {
    let d = current.dim();
    let rest: Vec<IntegerPoint<T>> = current.vertices().iter().filter(|x| *x != v).cloned().collect();
    let candidates: Vec<IntegerPoint<T>> = match LatticePolytope::convex_hull(&rest, d) {
        Ok(inner) => {
            let mut c = rest;
            c.extend(points.iter().filter(|p| *p != v && !inner.contains(p)).cloned());
            c
        }
        Err(_) => points.iter().filter(|p| *p != v).cloned().collect(),
    };
    LatticePolytope::convex_hull(&candidates, d)
}

pub fn peel_chain<T: LatticeInt>(outer: &LatticePolytope<T>, core: &LatticePolytope<T>) -> Result<PeelChain<T>> {
    check_enumerable(outer)?;
    if !core.is_subset_of(outer) {
        return Err(Error::construction("Eq36", "inner polytope is not contained in the outer one"));
    }
    let core_count = core.num_lattice_points();
    let mut current = outer.clone();
    let mut points = outer.lattice_points().to_vec();
    let mut removed = Vec::new();
    while points.len() > core_count {
        let Some(v) = current.vertices().iter().find(|x| !core.contains(x)).cloned() else {
            return Err(Error::construction("Lemma4", "no deletable vertex outside the core before reaching it"));
        };
        let next = delete_vertex(&current, &points, &v)?;
        let pos = points.binary_search(&v).expect("vertices are lattice points");
        points.remove(pos);
        if next.num_lattice_points() != points.len() {
            return Err(Error::construction("Lemma4", "a deletion removed more than one lattice point"));
        }
        removed.push(v);
        current = next;
    }
    Ok(PeelChain { outer: outer.clone(), core_count, removed })
}

impl<T: LatticeInt> PeelChain<T> {
    /// Largest admissible `k`: `|outer| - |core|`.
    pub fn max_k(&self) -> usize {
        self.removed.len()
    }

    pub fn removed(&self) -> &[IntegerPoint<T>] {
        &self.removed
    }

    pub fn core_count(&self) -> usize {
        self.core_count
    }

    /// The chain member with `|P| = |core| + k`.
    pub fn member(&self, k: usize) -> Result<LatticePolytope<T>> {
        if k > self.max_k() {
            return Err(Error::construction(
                "Eq36",
                format!("k = {k} exceeds |H| - |H'| = {}", self.max_k()),
            ));
        }
        let drop = &self.removed[..self.max_k() - k];
        if drop.is_empty() {
            return Ok(self.outer.clone());
        }
        let mut gone = drop.to_vec();
        gone.sort_unstable();
        let keep: Vec<IntegerPoint<T>> =
            self.outer.lattice_points().iter().filter(|p| gone.binary_search(p).is_err()).cloned().collect();
        LatticePolytope::convex_hull(&keep, self.outer.dim())
    }
}

/// A polytope `P` with `core ⊆ P ⊆ outer` and `|P| = |core| + k`, obtained by
/// deleting vertices outside `core` one at a time.
pub fn peel<T: LatticeInt>(outer: &LatticePolytope<T>, core: &LatticePolytope<T>, k: usize) -> Result<LatticePolytope<T>> {
    peel_chain(outer, core)?.member(k)
}
