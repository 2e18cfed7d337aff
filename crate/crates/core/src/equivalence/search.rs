//! Witness search: fix an anchor vertex of `P` with `d` independent edge
//! directions, and try every image tuple in `Q` that agrees on local
//! invariants. Any `σ` with `σ(P) = Q` maps the anchor to a vertex of `Q`
//! and its edges to edges, so the search is complete.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::limits::check_enumerable;
use crate::linalg::{adjugate, det, mat_mul, rank, vec_mat, IntegerMatrix, IntegerPoint, UnimodularMap};
use crate::polytope::LatticePolytope;
use crate::scalar::LatticeInt;

/// Local data at a vertex preserved by every unimodular map.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct VertexSignature<T> {
    degree: usize,
    edge_lengths: Vec<T>,
    facet_points: Vec<usize>,
}

/// With `facets` set, also records the lattice-point counts of incident
/// facets (requires lattice-point enumeration).
pub(crate) fn signatures<T: LatticeInt>(p: &LatticePolytope<T>, facets: bool) -> Vec<VertexSignature<T>> {
    let counts = if facets { p.facet_point_counts() } else { Vec::new() };
    let adj = p.adjacency();
    let inc = p.vertex_facets();
    let verts = p.vertices();
    (0..verts.len())
        .map(|v| {
            let mut edge_lengths: Vec<T> = adj[v].iter().map(|&u| verts[u].sub(&verts[v]).content()).collect();
            edge_lengths.sort_unstable();
            let mut facet_points: Vec<usize> = if facets { inc[v].iter().map(|&f| counts[f]).collect() } else { Vec::new() };
            facet_points.sort_unstable();
            VertexSignature { degree: adj[v].len(), edge_lengths, facet_points }
        })
        .collect()
}

/// Greedy choice of `dim` neighbours of `v` with independent edge vectors.
pub(crate) fn independent_neighbours<T: LatticeInt>(p: &LatticePolytope<T>, v: usize) -> Vec<usize> {
    let verts = p.vertices();
    let mut chosen = Vec::new();
    let mut rows: Vec<Vec<T>> = Vec::new();
    for &u in &p.adjacency()[v] {
        rows.push(verts[u].sub(&verts[v]).into_coords());
        if rank(&rows) == rows.len() {
            chosen.push(u);
            if chosen.len() == p.dim() {
                break;
            }
        } else {
            rows.pop();
        }
    }
    debug_assert_eq!(chosen.len(), p.dim(), "edges at a vertex span the space");
    chosen
}

struct Source<T> {
    anchor: IntegerPoint<T>,
    basis: Vec<usize>,
    adj: Vec<Vec<T>>,
    det: T,
}

struct Search<'a, T> {
    p: &'a LatticePolytope<T>,
    q: &'a LatticePolytope<T>,
    sp: Vec<VertexSignature<T>>,
    sq: Vec<VertexSignature<T>>,
    src: Source<T>,
    first_only: bool,
    found: Vec<UnimodularMap<T>>,
}

impl<T: LatticeInt> Search<'_, T> {
    fn extend(&mut self, w0: usize, tuple: &mut Vec<usize>) -> Result<()> {
        if self.first_only && !self.found.is_empty() {
            return Ok(());
        }
        let slot = tuple.len();
        if slot == self.p.dim() {
            if let Some(m) = self.candidate(w0, tuple)? {
                self.found.push(m);
            }
            return Ok(());
        }
        let target = self.src.basis[slot];
        let vp = self.p.vertices();
        let vq = self.q.vertices();
        let len = vp[target].sub(&self.src.anchor).content();
        for &w in &self.q.adjacency()[w0] {
            if tuple.contains(&w) || self.sq[w] != self.sp[target] || vq[w].sub(&vq[w0]).content() != len {
                continue;
            }
            tuple.push(w);
            self.extend(w0, tuple)?;
            tuple.pop();
        }
        Ok(())
    }

    fn candidate(&self, w0: usize, tuple: &[usize]) -> Result<Option<UnimodularMap<T>>> {
        let vq = self.q.vertices();
        let dq: Vec<Vec<T>> = tuple.iter().map(|&w| vq[w].sub(&vq[w0]).into_coords()).collect();
        if det(&dq).abs() != self.src.det.abs() {
            return Ok(None);
        }
        // D_P U = D_Q, so U = adj(D_P) D_Q / det(D_P)
        let num = mat_mul(&self.src.adj, &dq);
        let mut rows = Vec::with_capacity(num.len());
        for row in num {
            let mut out = Vec::with_capacity(row.len());
            for x in row {
                let (quot, rem) = x.div_rem(&self.src.det);
                if !rem.is_zero() {
                    return Ok(None);
                }
                out.push(quot);
            }
            rows.push(out);
        }
        let matrix = IntegerMatrix::from_rows(rows)?;
        let shift = vec_mat(self.src.anchor.coords(), matrix.rows());
        let translation = vq[w0].sub(&IntegerPoint::new(shift));
        let Ok(map) = UnimodularMap::new(matrix, translation) else { return Ok(None) };
        let mut image: Vec<IntegerPoint<T>> = self.p.vertices().iter().map(|v| map.apply_unchecked(v)).collect();
        image.sort_unstable();
        if image != vq {
            return Ok(None);
        }
        let mut full: Vec<IntegerPoint<T>> = self.p.lattice_points().iter().map(|v| map.apply_unchecked(v)).collect();
        full.sort_unstable();
        if full != self.q.lattice_points() {
            return Err(Error::InvalidInput("vertex-set witness failed the lattice-point recheck".into()));
        }
        Ok(Some(map))
    }
}

fn witnesses<T: LatticeInt>(p: &LatticePolytope<T>, q: &LatticePolytope<T>, first_only: bool) -> Result<Vec<UnimodularMap<T>>> {
    check_enumerable(p)?;
    check_enumerable(q)?;
    let sp = signatures(p, true);
    let sq = signatures(q, true);
    let mut a = sp.clone();
    let mut b = sq.clone();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return Ok(Vec::new());
    }
    // anchor in the rarest signature class keeps the branching small
    let v0 = (0..sp.len()).min_by_key(|&v| (sp.iter().filter(|s| **s == sp[v]).count(), v)).expect("nonempty");
    let basis = independent_neighbours(p, v0);
    let anchor = p.vertices()[v0].clone();
    let dp: Vec<Vec<T>> = basis.iter().map(|&u| p.vertices()[u].sub(&anchor).into_coords()).collect();
    let src = Source { det: det(&dp), adj: adjugate(&dp), anchor, basis };
    let mut search = Search { p, q, sp, sq, src, first_only, found: Vec::new() };
    for w0 in 0..q.vertices().len() {
        if search.sq[w0] != search.sp[v0] {
            continue;
        }
        search.extend(w0, &mut Vec::new())?;
        if first_only && !search.found.is_empty() {
            break;
        }
    }
    Ok(search.found)
}

pub(crate) fn find_witness<T: LatticeInt>(p: &LatticePolytope<T>, q: &LatticePolytope<T>) -> Result<Option<UnimodularMap<T>>> {
    Ok(witnesses(p, q, true)?.into_iter().next())
}

pub(crate) fn all_automorphisms<T: LatticeInt>(p: &LatticePolytope<T>) -> Result<BTreeSet<UnimodularMap<T>>> {
    Ok(witnesses(p, p, false)?.into_iter().collect())
}
