use num_integer::Integer;
use rayon::prelude::*;

use super::{polygon, Constraint, Statistic};
use crate::error::Result;
use crate::polytope::LatticePolytope;

type V = [i64; 2];

/// A convex lattice polygon in `[0,N]^2` touching both axes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    /// Counterclockwise from the lexicographically smallest vertex.
    pub vertices: Vec<V>,
    /// `2 · area`, which is the normalized volume in the plane.
    pub twice_area: i64,
    /// Lattice points on the boundary.
    pub boundary: i64,
}

impl Candidate {
    pub fn cardinality(&self) -> i64 {
        (self.twice_area + self.boundary) / 2 + 1
    }

    pub fn interior(&self) -> i64 {
        (self.twice_area - self.boundary + 2) / 2
    }

    pub fn bbox(&self) -> i64 {
        self.vertices.iter().map(|v| v[0].max(v[1])).max().unwrap_or(0)
    }

    /// Symmetric about a lattice point.
    pub fn is_centrally_symmetric(&self) -> bool {
        let n = self.vertices.len();
        if n % 2 == 1 {
            return false;
        }
        let c = add(self.vertices[0], self.vertices[n / 2]);
        c[0].is_even() && c[1].is_even() && (0..n).all(|i| add(self.vertices[i], self.vertices[(i + n / 2) % n]) == c)
    }

    pub fn polytope(&self) -> Result<LatticePolytope<i64>> {
        polygon(&self.vertices)
    }
}

fn add(a: V, b: V) -> V {
    [a[0] + b[0], a[1] + b[1]]
}

fn sub(a: V, b: V) -> V {
    [a[0] - b[0], a[1] - b[1]]
}

fn cross(a: V, b: V) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

fn lattice_length(a: V, b: V) -> i64 {
    (a[0] - b[0]).gcd(&(a[1] - b[1]))
}

/// The eight symmetries of the square, each followed by the translation back
/// to the axes. Keeping only the smallest image per orbit is an exact
/// reduction: the maps are unimodular and preserve the box.
fn is_square_orbit_min(vertices: &[V]) -> bool {
    let mut own = vertices.to_vec();
    own.sort_unstable();
    for k in 1..8 {
        let mut img: Vec<V> = vertices
            .iter()
            .map(|&[x, y]| {
                let (x, y) = if k & 4 != 0 { (y, x) } else { (x, y) };
                [if k & 1 != 0 { -x } else { x }, if k & 2 != 0 { -y } else { y }]
            })
            .collect();
        let mx = img.iter().map(|v| v[0]).min().unwrap_or(0);
        let my = img.iter().map(|v| v[1]).min().unwrap_or(0);
        for v in &mut img {
            *v = [v[0] - mx, v[1] - my];
        }
        img.sort_unstable();
        if img < own {
            return false;
        }
    }
    true
}

struct Search {
    n: i64,
    statistic: Statistic,
    value: i64,
    out: Vec<Candidate>,
}

impl Search {
    /// Doubled area and Pick count of the star polygon over a prefix, both
    /// lower bounds for every completion.
    fn within(&self, twice_area: i64, boundary: i64) -> bool {
        match self.statistic {
            Statistic::NormalizedVolume => twice_area <= self.value,
            Statistic::Cardinality => (twice_area + boundary) / 2 + 1 <= self.value,
        }
    }

    /// `open` is the lattice length of the chain without its closing edge.
    fn extend(&mut self, chain: &mut Vec<V>, twice_area: i64, open: i64) {
        let v0 = chain[0];
        let last = *chain.last().expect("chain starts at v0");
        let k = chain.len();
        if k >= 3 && cross(sub(last, chain[k - 2]), sub(v0, last)) > 0 {
            let boundary = open + lattice_length(last, v0);
            let hit = match self.statistic {
                Statistic::NormalizedVolume => twice_area == self.value,
                Statistic::Cardinality => (twice_area + boundary) / 2 + 1 == self.value,
            };
            if hit && chain.iter().any(|v| v[1] == 0) {
                self.out.push(Candidate { vertices: chain.clone(), twice_area, boundary });
            }
        }
        for x in v0[0]..=self.n {
            for y in 0..=self.n {
                let p = [x, y];
                if p <= v0 {
                    continue;
                }
                let fan = cross(sub(last, v0), sub(p, v0));
                if fan <= 0 || cross(sub(last, chain[k - 2]), sub(p, last)) <= 0 {
                    continue;
                }
                let area = twice_area + fan;
                let step = lattice_length(last, p);
                if !self.within(area, open + step + lattice_length(p, v0)) {
                    continue;
                }
                chain.push(p);
                self.extend(chain, area, open + step);
                chain.pop();
            }
        }
    }
}

/// Every convex lattice polygon in `[0,N]^2` with minimum `x` and `y` both
/// zero, the given statistic value and constraint, one per orbit of the
/// square's symmetry group.
pub fn candidates(statistic: Statistic, value: i64, constraint: Constraint, n: i64) -> Vec<Candidate> {
    let side = n + 1;
    let starts: Vec<(V, V)> = (0..=n)
        .flat_map(|y0| (0..side * side).map(move |i| ([0, y0], [i / side, i % side])))
        .filter(|(v0, v1)| v1 > v0)
        .collect();
    let mut out: Vec<Candidate> = starts
        .into_par_iter()
        .flat_map_iter(|(v0, v1)| {
            let mut s = Search { n, statistic, value, out: Vec::new() };
            let open = lattice_length(v0, v1);
            if s.within(0, 2 * open) {
                s.extend(&mut vec![v0, v1], 0, open);
            }
            s.out
        })
        .filter(|c| match constraint {
            Constraint::None => true,
            Constraint::CentrallySymmetric => c.is_centrally_symmetric(),
            Constraint::NonemptyInterior => c.interior() > 0,
        })
        .filter(|c| is_square_orbit_min(&c.vertices))
        .collect();
    out.sort_unstable_by(|a, b| a.vertices.cmp(&b.vertices));
    out
}
