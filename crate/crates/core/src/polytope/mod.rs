//! Full-dimensional convex lattice polytopes with exact hulls, lattice-point
//! enumeration, normalized volume and the lattice-line functionals.

mod hull;
mod volume;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::{dot, rank, IntegerPoint, UnimodularMap};
use crate::scalar::LatticeInt;

/// One inequality `normal . x <= offset` of the irredundant halfspace
/// description. `vertices` indexes the polytope's (sorted) vertex list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet<T> {
    pub normal: IntegerPoint<T>,
    pub offset: T,
    pub vertices: Vec<usize>,
}

impl<T: LatticeInt> Facet<T> {
    pub fn slack(&self, p: &[T]) -> T {
        self.offset.clone() - dot(self.normal.coords(), p)
    }
}

#[derive(Clone, Debug)]
pub struct LatticePolytope<T> {
    dim: usize,
    vertices: Vec<IntegerPoint<T>>,
    facets: Vec<Facet<T>>,
    lattice_points: OnceLock<Vec<IntegerPoint<T>>>,
    normalized_volume: OnceLock<T>,
    vertex_facets: OnceLock<Vec<Vec<usize>>>,
    adjacency: OnceLock<Vec<Vec<usize>>>,
}

impl<T: LatticeInt> PartialEq for LatticePolytope<T> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl<T: LatticeInt> Eq for LatticePolytope<T> {}

impl<T: LatticeInt> LatticePolytope<T> {
    /// Exact convex hull. Fails with [`Error::Degenerate`] carrying the
    /// affine rank when the points do not span `R^dim`.
    pub fn convex_hull(points: &[IntegerPoint<T>], dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::OutOfRange("dimension must be >= 1".into()));
        }
        for p in points {
            p.check_dim(dim)?;
        }
        let mut pts = points.to_vec();
        pts.sort_unstable();
        pts.dedup();
        let raw = hull::beneath_beyond(&pts, dim)?;
        let position: std::collections::HashMap<usize, usize> =
            raw.vertices.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let vertices: Vec<IntegerPoint<T>> = raw.vertices.iter().map(|&i| pts[i].clone()).collect();
        let mut facets: Vec<Facet<T>> = raw
            .facets
            .into_iter()
            .map(|f| Facet {
                normal: IntegerPoint::new(f.normal),
                offset: f.offset,
                vertices: f.verts.iter().map(|i| position[i]).collect(),
            })
            .collect();
        facets.sort_by(|a, b| (&a.normal, &a.offset).cmp(&(&b.normal, &b.offset)));
        Ok(LatticePolytope {
            dim,
            vertices,
            facets,
            lattice_points: OnceLock::new(),
            normalized_volume: OnceLock::new(),
            vertex_facets: OnceLock::new(),
            adjacency: OnceLock::new(),
        })
    }

    pub fn from_i64_points(points: &[&[i64]]) -> Result<Self> {
        let dim = points.first().map_or(0, |p| p.len());
        let pts: Vec<IntegerPoint<T>> = points.iter().map(|c| IntegerPoint::from_i64s(c)).collect();
        Self::convex_hull(&pts, dim)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Extreme points in lexicographic order.
    pub fn vertices(&self) -> &[IntegerPoint<T>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet<T>] {
        &self.facets
    }

    pub fn contains(&self, p: &IntegerPoint<T>) -> bool {
        p.dim() == self.dim && self.facets.iter().all(|f| !f.slack(p.coords()).is_negative())
    }

    pub fn contains_strictly(&self, p: &IntegerPoint<T>) -> bool {
        p.dim() == self.dim && self.facets.iter().all(|f| f.slack(p.coords()).is_positive())
    }

    /// All of `P ∩ Z^d`, sorted.
    pub fn lattice_points(&self) -> &[IntegerPoint<T>] {
        self.lattice_points.get_or_init(|| self.enumerate_lattice_points())
    }

    pub fn num_lattice_points(&self) -> usize {
        self.lattice_points().len()
    }

    /// Number of integer points in the axis-aligned bounding box; an upper
    /// bound on the enumeration cost.
    pub fn bounding_box_size(&self) -> Option<usize> {
        let (lo, hi) = self.bounding_box();
        lo.iter().zip(&hi).try_fold(1usize, |acc, (a, b)| {
            let w = (b.clone() - a.clone() + T::one()).to_usize()?;
            acc.checked_mul(w)
        })
    }

    fn bounding_box(&self) -> (Vec<T>, Vec<T>) {
        let mut lo = self.vertices[0].coords().to_vec();
        let mut hi = lo.clone();
        for v in &self.vertices[1..] {
            for (i, c) in v.coords().iter().enumerate() {
                if *c < lo[i] {
                    lo[i] = c.clone();
                }
                if *c > hi[i] {
                    hi[i] = c.clone();
                }
            }
        }
        (lo, hi)
    }

    fn enumerate_lattice_points(&self) -> Vec<IntegerPoint<T>> {
        let (lo, hi) = self.bounding_box();
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(self.dim);
        let partial = vec![T::zero(); self.facets.len()];
        self.scan(0, &lo, &hi, &mut prefix, &partial, &mut out);
        out
    }

    /// Box scan over all but the last coordinate; the last coordinate's
    /// range is solved directly from the facet inequalities.
    fn scan(
        &self,
        axis: usize,
        lo: &[T],
        hi: &[T],
        prefix: &mut Vec<T>,
        partial: &[T],
        out: &mut Vec<IntegerPoint<T>>,
    ) {
        let last = self.dim - 1;
        if axis == last {
            let (mut zlo, mut zhi) = (lo[last].clone(), hi[last].clone());
            for (f, s) in self.facets.iter().zip(partial) {
                let a = &f.normal[last];
                let rhs = f.offset.clone() - s.clone();
                if a.is_zero() {
                    if rhs.is_negative() {
                        return;
                    }
                } else if a.is_positive() {
                    let b = rhs.div_floor(a);
                    if b < zhi {
                        zhi = b;
                    }
                } else {
                    let b = num_integer::Integer::div_ceil(&rhs, a);
                    if b > zlo {
                        zlo = b;
                    }
                }
            }
            let mut z = zlo;
            while z <= zhi {
                let mut c = prefix.clone();
                c.push(z.clone());
                out.push(IntegerPoint::new(c));
                z = z + T::one();
            }
            return;
        }
        let mut x = lo[axis].clone();
        while x <= hi[axis] {
            let next: Vec<T> = self
                .facets
                .iter()
                .zip(partial)
                .map(|(f, s)| s.clone() + f.normal[axis].clone() * x.clone())
                .collect();
            prefix.push(x.clone());
            self.scan(axis + 1, lo, hi, prefix, &next, out);
            prefix.pop();
            x = x + T::one();
        }
    }

    /// Lattice points satisfying every facet inequality strictly.
    pub fn interior_lattice_points(&self) -> Vec<IntegerPoint<T>> {
        self.lattice_points().iter().filter(|p| self.contains_strictly(p)).cloned().collect()
    }

    pub fn num_interior_lattice_points(&self) -> usize {
        self.lattice_points().iter().filter(|p| self.contains_strictly(p)).count()
    }

    /// `d! * vol(P)`, from a pulling triangulation of the boundary complex.
    pub fn normalized_volume(&self) -> &T {
        self.normalized_volume.get_or_init(|| volume::normalized_volume(self))
    }

    /// Lattice center `c` with `2c - V = V`, if it exists. A polytope whose
    /// symmetry center is not a lattice point (the unit cube) yields `None`.
    pub fn symmetry_center(&self) -> Option<IntegerPoint<T>> {
        let lo = self.vertices.first()?;
        let hi = self.vertices.last()?;
        let two = T::two();
        let s = lo.add(hi);
        if s.coords().iter().any(|c| !c.is_multiple_of(&two)) {
            return None;
        }
        let c = IntegerPoint::new(s.coords().iter().map(|x| x.clone() / two.clone()).collect());
        let twice = c.scale(&two);
        let symmetric = self.vertices.iter().all(|v| self.vertices.binary_search(&twice.sub(v)).is_ok());
        symmetric.then_some(c)
    }

    pub fn is_centrally_symmetric(&self) -> bool {
        self.symmetry_center().is_some()
    }

    /// `|{anchor + z v : z ∈ Z} ∩ P|` for primitive `v`, solved exactly from
    /// the facet inequalities.
    pub fn line_point_count(&self, v: &IntegerPoint<T>, anchor: &IntegerPoint<T>) -> Result<T> {
        v.check_dim(self.dim)?;
        anchor.check_dim(self.dim)?;
        v.require_primitive()?;
        let mut lo: Option<T> = None;
        let mut hi: Option<T> = None;
        for f in &self.facets {
            let av = dot(f.normal.coords(), v.coords());
            let rhs = f.slack(anchor.coords());
            if av.is_zero() {
                if rhs.is_negative() {
                    return Ok(T::zero());
                }
            } else if av.is_positive() {
                let b = rhs.div_floor(&av);
                if hi.as_ref().is_none_or(|h| b < *h) {
                    hi = Some(b);
                }
            } else {
                let b = num_integer::Integer::div_ceil(&rhs, &av);
                if lo.as_ref().is_none_or(|l| b > *l) {
                    lo = Some(b);
                }
            }
        }
        let (lo, hi) = (lo.expect("bounded polytope"), hi.expect("bounded polytope"));
        Ok(if hi < lo { T::zero() } else { hi - lo + T::one() })
    }

    /// The maximal number of collinear lattice points on a line through the
    /// center, with every maximizing primitive direction (one sign each, first
    /// nonzero coordinate positive). Only defined for centrally symmetric
    /// polytopes.
    ///
    /// A maximizing line carries at least three points (any vertex, the
    /// center and the reflected vertex are collinear), so its direction `v`
    /// has `center + v` in `P`; scanning primitive directions towards the
    /// lattice points of `P` is therefore exhaustive.
    pub fn lattice_diameter(&self) -> Result<(T, BTreeSet<IntegerPoint<T>>)> {
        let center = self.symmetry_center().ok_or(Error::NotCentrallySymmetric)?;
        let mut directions = BTreeSet::new();
        for p in self.lattice_points() {
            let diff = p.sub(&center);
            if diff.is_zero() {
                continue;
            }
            let g = diff.content();
            let prim = IntegerPoint::new(diff.coords().iter().map(|x| x.clone() / g.clone()).collect());
            directions.insert(prim.canonical_sign());
        }
        let mut best = T::zero();
        let mut argmax = BTreeSet::new();
        for v in directions {
            let n = self.line_point_count(&v, &center)?;
            match n.cmp(&best) {
                std::cmp::Ordering::Greater => {
                    best = n;
                    argmax.clear();
                    argmax.insert(v);
                }
                std::cmp::Ordering::Equal => {
                    argmax.insert(v);
                }
                std::cmp::Ordering::Less => {}
            }
        }
        Ok((best, argmax))
    }

    /// Lattice points of `P` on the hyperplane `normal . x = offset`.
    pub fn hyperplane_slice_count(&self, normal: &IntegerPoint<T>, offset: &T) -> Result<usize> {
        normal.check_dim(self.dim)?;
        normal.require_primitive()?;
        Ok(self.lattice_points().iter().filter(|p| &p.dot(normal.coords()) == offset).count())
    }

    pub fn negate(&self) -> Self {
        let pts: Vec<IntegerPoint<T>> = self.vertices.iter().map(IntegerPoint::neg).collect();
        Self::convex_hull(&pts, self.dim).expect("image of a full-dimensional polytope")
    }

    pub fn translate(&self, t: &IntegerPoint<T>) -> Result<Self> {
        t.check_dim(self.dim)?;
        let pts: Vec<IntegerPoint<T>> = self.vertices.iter().map(|v| v.add(t)).collect();
        Self::convex_hull(&pts, self.dim)
    }

    /// `σ(P)`.
    pub fn image(&self, map: &UnimodularMap<T>) -> Result<Self> {
        if map.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: map.dim() });
        }
        let pts: Vec<IntegerPoint<T>> = self.vertices.iter().map(|v| map.apply_unchecked(v)).collect();
        Self::convex_hull(&pts, self.dim)
    }

    /// `conv(P ∪ Q)`.
    pub fn union_hull(&self, other: &Self) -> Result<Self> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut pts = self.vertices.clone();
        pts.extend(other.vertices.iter().cloned());
        Self::convex_hull(&pts, self.dim)
    }

    /// Lattice-point inclusion `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices.iter().all(|v| other.contains(v))
    }

    /// For each vertex, the indices of the facets containing it.
    pub fn vertex_facets(&self) -> &[Vec<usize>] {
        self.vertex_facets.get_or_init(|| {
            let mut inc = vec![Vec::new(); self.vertices.len()];
            for (fi, f) in self.facets.iter().enumerate() {
                for &v in &f.vertices {
                    inc[v].push(fi);
                }
            }
            inc
        })
    }

    /// Edge graph: `u ~ v` iff the facets containing both cut out a face of
    /// dimension one.
    pub fn adjacency(&self) -> &[Vec<usize>] {
        self.adjacency.get_or_init(|| {
            let inc = self.vertex_facets();
            let n = self.vertices.len();
            let mut adj = vec![Vec::new(); n];
            let need = self.dim - 1;
            for u in 0..n {
                for v in u + 1..n {
                    let common: Vec<usize> = inc[u].iter().copied().filter(|f| inc[v].contains(f)).collect();
                    if common.len() < need {
                        continue;
                    }
                    let normals: Vec<Vec<T>> =
                        common.iter().map(|&f| self.facets[f].normal.coords().to_vec()).collect();
                    if rank(&normals) == need {
                        adj[u].push(v);
                        adj[v].push(u);
                    }
                }
            }
            adj
        })
    }

    /// Lattice points on each facet, in facet order.
    pub fn facet_point_counts(&self) -> Vec<usize> {
        let pts = self.lattice_points();
        self.facets
            .iter()
            .map(|f| pts.iter().filter(|p| f.slack(p.coords()).is_zero()).count())
            .collect()
    }
}

#[cfg(test)]
mod tests;
