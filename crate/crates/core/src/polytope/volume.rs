use std::collections::BTreeSet;

use super::LatticePolytope;
use crate::linalg::{affine_rank, det, IntegerPoint};
use crate::scalar::LatticeInt;

/// Pulling triangulation from the lexicographically smallest vertex of each
/// face; the sum of `|det|` over the maximal simplices is `d! vol(P)`.
pub(super) fn normalized_volume<T: LatticeInt>(p: &LatticePolytope<T>) -> T {
    let all: Vec<usize> = (0..p.vertices().len()).collect();
    let mut simplices = Vec::new();
    triangulate(p, &all, p.dim(), &mut Vec::new(), &mut simplices);
    let mut total = T::zero();
    for s in simplices {
        let base = &p.vertices()[s[0]];
        let rows: Vec<Vec<T>> = s[1..].iter().map(|&i| p.vertices()[i].sub(base).into_coords()).collect();
        total = total + det(&rows).abs();
    }
    total
}

fn points<'a, T: LatticeInt>(p: &'a LatticePolytope<T>, face: &[usize]) -> Vec<&'a IntegerPoint<T>> {
    face.iter().map(|&i| &p.vertices()[i]).collect()
}

/// `face` is a sorted vertex set of affine dimension `k`; `apexes` collects
/// the cone points chosen on the way down.
fn triangulate<T: LatticeInt>(
    p: &LatticePolytope<T>,
    face: &[usize],
    k: usize,
    apexes: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if k == 0 {
        let mut s = apexes.clone();
        s.push(face[0]);
        out.push(s);
        return;
    }
    let apex = face[0];
    let mut subfaces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in p.facets() {
        let sub: Vec<usize> = face.iter().copied().filter(|v| f.vertices.binary_search(v).is_ok()).collect();
        if sub.len() < k || sub.binary_search(&apex).is_ok() {
            continue;
        }
        if affine_rank(&points(p, &sub)) == k as isize - 1 {
            subfaces.insert(sub);
        }
    }
    apexes.push(apex);
    for sub in subfaces {
        triangulate(p, &sub, k - 1, apexes, out);
    }
    apexes.pop();
}
