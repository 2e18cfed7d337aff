//! Exact beneath-beyond convex hull in any dimension.
//!
//! Facets carry primitive integer normals and the full list of vertices they
//! contain, so highly degenerate inputs (many coplanar lattice points) need
//! no perturbation: coplanar insertions extend an existing facet, and
//! vertices that stop being extreme are pruned after every step.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{affine_rank, affinely_independent_subset, cofactor_normal, dot, rank, IntegerPoint};
use crate::scalar::LatticeInt;

pub(crate) struct RawFacet<T> {
    pub normal: Vec<T>,
    pub offset: T,
    /// Sorted indices into the input point list.
    pub verts: Vec<usize>,
}

pub(crate) struct RawHull<T> {
    /// Sorted indices of the extreme points.
    pub vertices: Vec<usize>,
    pub facets: Vec<RawFacet<T>>,
}

struct Interior<T> {
    sum: Vec<T>,
    scale: T,
}

/// Oriented primitive hyperplane through `pts` (exactly `dim` affinely
/// independent points), with the interior reference on the negative side.
fn oriented_plane<T: LatticeInt>(pts: &[&IntegerPoint<T>], dim: usize, inside: &Interior<T>) -> (Vec<T>, T) {
    let base = pts[0];
    let diffs: Vec<Vec<T>> = pts[1..].iter().map(|p| p.sub(base).into_coords()).collect();
    let mut normal = cofactor_normal(&diffs, dim);
    let g = normal.iter().fold(T::zero(), |g, x| g.gcd_abs(x));
    debug_assert!(!g.is_zero(), "points must be affinely independent");
    for x in normal.iter_mut() {
        *x = x.clone() / g.clone();
    }
    let mut offset = dot(&normal, base.coords());
    let side = dot(&normal, &inside.sum) - inside.scale.clone() * offset.clone();
    debug_assert!(!side.is_zero(), "interior reference lies on a facet hyperplane");
    if side.is_positive() {
        for x in normal.iter_mut() {
            *x = -x.clone();
        }
        offset = -offset;
    }
    (normal, offset)
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// `points` must be sorted and free of duplicates.
pub(crate) fn beneath_beyond<T: LatticeInt>(points: &[IntegerPoint<T>], dim: usize) -> Result<RawHull<T>> {
    if points.is_empty() {
        return Err(Error::InvalidInput("convex hull of an empty point set".into()));
    }
    let refs: Vec<&IntegerPoint<T>> = points.iter().collect();
    let simplex = affinely_independent_subset(&refs);
    if simplex.len() < dim + 1 {
        return Err(Error::Degenerate { rank: simplex.len() as isize - 1, dim });
    }

    let mut sum = vec![T::zero(); dim];
    for &i in &simplex {
        for (s, c) in sum.iter_mut().zip(points[i].coords()) {
            *s = s.clone() + c.clone();
        }
    }
    let inside = Interior { sum, scale: T::int(dim as i64 + 1) };

    let mut facets: Vec<RawFacet<T>> = Vec::new();
    for skip in 0..simplex.len() {
        let mut verts: Vec<usize> = simplex.iter().copied().filter(|&i| i != simplex[skip]).collect();
        verts.sort_unstable();
        let pts: Vec<&IntegerPoint<T>> = verts.iter().map(|&i| &points[i]).collect();
        let (normal, offset) = oriented_plane(&pts, dim, &inside);
        facets.push(RawFacet { normal, offset, verts });
    }
    let mut is_vertex = vec![false; points.len()];
    for &i in &simplex {
        is_vertex[i] = true;
    }

    for p in 0..points.len() {
        if is_vertex[p] {
            continue;
        }
        let point = points[p].coords();
        let mut visible = Vec::new();
        let mut coplanar = Vec::new();
        let mut hidden = Vec::new();
        for (fi, f) in facets.iter().enumerate() {
            match dot(&f.normal, point).cmp(&f.offset) {
                std::cmp::Ordering::Greater => visible.push(fi),
                std::cmp::Ordering::Equal => coplanar.push(fi),
                std::cmp::Ordering::Less => hidden.push(fi),
            }
        }
        if visible.is_empty() {
            continue;
        }

        let mut fresh: HashMap<(Vec<T>, T), Vec<usize>> = HashMap::new();
        for &fv in &visible {
            for &g in hidden.iter().chain(&coplanar) {
                let ridge = intersect_sorted(&facets[fv].verts, &facets[g].verts);
                if ridge.len() + 1 < dim {
                    continue;
                }
                let ridge_pts: Vec<&IntegerPoint<T>> = ridge.iter().map(|&i| &points[i]).collect();
                if affine_rank(&ridge_pts) != dim as isize - 2 {
                    continue;
                }
                if coplanar.contains(&g) {
                    // the neighbour grows over p instead of a new facet appearing
                    continue;
                }
                let basis = affinely_independent_subset(&ridge_pts);
                let mut plane_pts: Vec<&IntegerPoint<T>> = basis.iter().map(|&k| ridge_pts[k]).collect();
                plane_pts.push(&points[p]);
                let key = oriented_plane(&plane_pts, dim, &inside);
                let entry = fresh.entry(key).or_default();
                entry.extend(ridge.iter().copied());
                entry.push(p);
            }
        }

        let mut touched: Vec<usize> = visible.iter().flat_map(|&f| facets[f].verts.iter().copied()).collect();
        touched.sort_unstable();
        touched.dedup();

        let mut next: Vec<RawFacet<T>> = Vec::with_capacity(facets.len() + fresh.len());
        for (fi, mut f) in facets.into_iter().enumerate() {
            if visible.binary_search(&fi).is_ok() {
                continue;
            }
            if coplanar.binary_search(&fi).is_ok() {
                let pos = f.verts.binary_search(&p).unwrap_err();
                f.verts.insert(pos, p);
            }
            next.push(f);
        }
        for ((normal, offset), mut verts) in fresh {
            verts.sort_unstable();
            verts.dedup();
            next.push(RawFacet { normal, offset, verts });
        }
        facets = next;
        is_vertex[p] = true;

        // A vertex stays extreme iff the normals of its facets span R^d.
        for q in touched {
            let normals: Vec<Vec<T>> = facets
                .iter()
                .filter(|f| f.verts.binary_search(&q).is_ok())
                .map(|f| f.normal.clone())
                .collect();
            if rank(&normals) < dim {
                is_vertex[q] = false;
                for f in facets.iter_mut() {
                    if let Ok(pos) = f.verts.binary_search(&q) {
                        f.verts.remove(pos);
                    }
                }
            }
        }
    }

    let vertices = (0..points.len()).filter(|&i| is_vertex[i]).collect();
    Ok(RawHull { vertices, facets })
}
