//! Explicit constructions: ρ-norm ball polytopes, the paraboloid cap `K`,
//! its base disk `B`, the pinched cylinder `C`, the region `Q`, the half
//! bodies `H ⊇ H'`, vertex peeling between them, and the symmetric family
//! of prescribed cardinality built from them.

mod continuous;
mod peel;
mod theorem1;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

pub use continuous::{c1, c2, c3, continuous_model, ContinuousModel};
pub use peel::{peel, peel_chain, PeelChain};
pub use theorem1::{
    choose_r, slack_u, theorem1_family, theorem1_polytope, Diagnostic, SubsetSelection, Theorem1Family,
    Theorem1Instance, Theorem1Setup,
};

use crate::error::{Error, Result};
use crate::limits::check_size;
use crate::linalg::IntegerPoint;
use crate::polytope::LatticePolytope;
use crate::scalar::LatticeInt;

/// Exponent of the ball norm: a positive integer or `∞` (the max norm).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rho {
    Finite(u32),
    Infinity,
}

impl Rho {
    pub fn finite(rho: u32) -> Result<Rho> {
        if rho == 0 {
            return Err(Error::OutOfRange("rho must be >= 1".into()));
        }
        Ok(Rho::Finite(rho))
    }
}

impl fmt::Display for Rho {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rho::Finite(r) => write!(f, "{r}"),
            Rho::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Rho {
    type Err = Error;
    fn from_str(s: &str) -> Result<Rho> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Rho::Infinity),
            t => t.parse::<u32>().map_err(|_| Error::InvalidInput(format!("rho must be a positive integer or inf, got {s:?}"))).and_then(Rho::finite),
        }
    }
}

impl Serialize for Rho {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn check_dims(d: usize, min_d: usize, r: i64, min_r: i64) -> Result<()> {
    if d < min_d {
        return Err(Error::OutOfRange(format!("dimension must be >= {min_d}, got {d}")));
    }
    if r < min_r {
        return Err(Error::OutOfRange(format!("radius must be >= {min_r}, got {r}")));
    }
    Ok(())
}

/// All `x ∈ [-m, m]^d` (as `i64` rows) accepted by `keep`, lexicographic.
fn box_points(d: usize, lo: &[i64], hi: &[i64], keep: &mut dyn FnMut(&[i64]) -> bool) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = lo.to_vec();
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return out;
    }
    loop {
        if keep(&cur) {
            out.push(cur.clone());
        }
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i];
        }
    }
}

fn to_points<T: LatticeInt>(rows: Vec<Vec<i64>>) -> Vec<IntegerPoint<T>> {
    rows.into_iter().map(|r| IntegerPoint::from_i64s(&r)).collect()
}

fn guard_box(d: usize, side: i64) -> Result<()> {
    let size = (side as f64).powi(d as i32);
    check_size("construction box", if size > usize::MAX as f64 { usize::MAX } else { size as usize })
}

/// Integer points `z` with `Σ|z_i|^ρ <= m^ρ` (`max |z_i| <= m` for `ρ = ∞`).
pub fn ball_points<T: LatticeInt>(d: usize, m: i64, rho: Rho) -> Result<Vec<IntegerPoint<T>>> {
    check_dims(d, 1, m, 1)?;
    guard_box(d, 2 * m + 1)?;
    let lo = vec![-m; d];
    let hi = vec![m; d];
    let rows = match rho {
        Rho::Infinity => box_points(d, &lo, &hi, &mut |_| true),
        Rho::Finite(p) => {
            let bound = (m as i128).pow(p);
            box_points(d, &lo, &hi, &mut |x| x.iter().map(|c| (c.unsigned_abs() as i128).pow(p)).sum::<i128>() <= bound)
        }
    };
    Ok(to_points(rows))
}

/// `P_{d,m,ρ} = conv{z ∈ Z^d : ||z||_ρ <= m}`.
pub fn ball_polytope<T: LatticeInt>(d: usize, m: i64, rho: Rho) -> Result<LatticePolytope<T>> {
    LatticePolytope::convex_hull(&ball_points(d, m, rho)?, d)
}

fn sq_prefix(x: &[i64]) -> i64 {
    x.iter().map(|c| c * c).sum()
}

/// Lattice points of `K_{d,r} = {x_d >= 0, x_d + Σ_{i<d} x_i^2 <= r^2}`.
pub fn paraboloid_cap_points<T: LatticeInt>(d: usize, r: i64) -> Result<Vec<IntegerPoint<T>>> {
    check_dims(d, 2, r, 1)?;
    guard_box(d, 2 * r + 1)?;
    let r2 = r * r;
    let mut lo = vec![-r; d];
    let mut hi = vec![r; d];
    lo[d - 1] = 0;
    hi[d - 1] = r2;
    Ok(to_points(box_points(d, &lo, &hi, &mut |x| x[d - 1] + sq_prefix(&x[..d - 1]) <= r2)))
}

/// `|K_{d,r} ∩ Z^d|`, counted column by column.
pub fn paraboloid_cap_count(d: usize, r: i64) -> Result<u64> {
    check_dims(d, 2, r, 1)?;
    guard_box(d - 1, 2 * r + 1)?;
    let r2 = r * r;
    let mut total = 0u64;
    box_points(d - 1, &vec![-r; d - 1], &vec![r; d - 1], &mut |x| {
        let s = sq_prefix(x);
        if s <= r2 {
            total += (r2 - s + 1) as u64;
        }
        false
    });
    Ok(total)
}

/// `P_{d,r} = conv(K_{d,r} ∩ Z^d)`: the hull of the top and bottom of every
/// lattice column of `K`.
pub fn k_polytope<T: LatticeInt>(d: usize, r: i64) -> Result<LatticePolytope<T>> {
    check_dims(d, 2, r, 1)?;
    guard_box(d - 1, 2 * r + 1)?;
    let r2 = r * r;
    let mut ends = Vec::new();
    box_points(d - 1, &vec![-r; d - 1], &vec![r; d - 1], &mut |x| {
        let s = sq_prefix(x);
        if s <= r2 {
            let mut bottom = x.to_vec();
            bottom.push(0);
            let mut top = x.to_vec();
            top.push(r2 - s);
            ends.push(bottom);
            ends.push(top);
        }
        false
    });
    LatticePolytope::convex_hull(&to_points(ends), d)
}

/// Lattice points of `B_{d,r} = {x_d = 0, Σ_{i<d} x_i^2 <= r^2}`.
pub fn base_disk_points<T: LatticeInt>(d: usize, r: i64) -> Result<Vec<IntegerPoint<T>>> {
    check_dims(d, 2, r, 1)?;
    guard_box(d - 1, 2 * r + 1)?;
    let mut lo = vec![-r; d];
    let mut hi = vec![r; d];
    lo[d - 1] = 0;
    hi[d - 1] = 0;
    Ok(to_points(box_points(d, &lo, &hi, &mut |x| sq_prefix(&x[..d - 1]) <= r * r)))
}

/// `|B_{d,r} ∩ Z^d|`.
pub fn base_disk_count(d: usize, r: i64) -> Result<usize> {
    check_dims(d, 2, r, 1)?;
    guard_box(d - 1, 2 * r + 1)?;
    let mut n = 0;
    box_points(d - 1, &vec![-r; d - 1], &vec![r; d - 1], &mut |x| {
        if sq_prefix(x) <= r * r {
            n += 1;
        }
        false
    });
    Ok(n)
}

/// `x_d + Σ_{i=2}^{d-1} x_i^2` (1-based indices), the `C^2` constraint.
fn c2_height(x: &[i64]) -> i64 {
    let d = x.len();
    x[d - 1] + sq_prefix(&x[1..d - 1])
}

/// Lattice points of `C_{d,r} = C^1 ∩ C^2` with `C^1 = {0 <= x_d <= r^2,
/// Σ_{i<d} x_i^2 <= r^2}` and `C^2 = {0 <= x_d, x_d + Σ_{i=2}^{d-1} x_i^2 <=
/// r^2}`. `C^2` places no bound on `x_1`: a bound `|x_1| <= 1` would
/// contradict `K_{d,r} ⊂ C_{d,r}` and `v(C_{d,r}) ~ c_2(d) r^{d+1}`.
pub fn cylinder_points<T: LatticeInt>(d: usize, r: i64) -> Result<Vec<IntegerPoint<T>>> {
    check_dims(d, 2, r, 1)?;
    guard_box(d, 2 * r + 1)?;
    let r2 = r * r;
    let mut lo = vec![-r; d];
    let mut hi = vec![r; d];
    lo[d - 1] = 0;
    hi[d - 1] = r2;
    Ok(to_points(box_points(d, &lo, &hi, &mut |x| sq_prefix(&x[..d - 1]) <= r2 && c2_height(x) <= r2)))
}

/// `Q_{d,r} = (int C^1 ∩ C^2) ∪ B_{d,r}`, where the interior of `C^1` is
/// taken laterally (`Σ_{i<d} x_i^2 < r^2`, heights `0..=r^2` kept). With
/// the fully open interior the apex `(0, .., 0, r^2)` of `K` would drop out
/// and `H' ⊆ H` would fail.
pub fn q_points<T: LatticeInt>(d: usize, r: i64) -> Result<Vec<IntegerPoint<T>>> {
    check_dims(d, 2, r, 1)?;
    guard_box(d, 2 * r + 1)?;
    let r2 = r * r;
    let mut lo = vec![-r; d];
    let mut hi = vec![r; d];
    lo[d - 1] = 0;
    hi[d - 1] = r2;
    Ok(to_points(box_points(d, &lo, &hi, &mut |x| {
        let s = sq_prefix(&x[..d - 1]);
        (s < r2 && c2_height(x) <= r2) || (x[d - 1] == 0 && s <= r2)
    })))
}

fn nonpositive_first<T: LatticeInt>(pts: Vec<IntegerPoint<T>>) -> Vec<IntegerPoint<T>> {
    pts.into_iter().filter(|p| !p[0].is_positive()).collect()
}

/// `H_{d,r} = conv{z ∈ Q_{d,r} ∩ Z^d : z_1 <= 0}`.
pub fn h_polytope<T: LatticeInt>(d: usize, r: i64) -> Result<LatticePolytope<T>> {
    check_dims(d, 2, r, 1)?;
    LatticePolytope::convex_hull(&nonpositive_first(q_points(d, r)?), d)
}

/// `H'_{d,r} = conv{z ∈ K_{d,r} ∩ Z^d : z_1 <= 0}`.
pub fn h_prime_polytope<T: LatticeInt>(d: usize, r: i64) -> Result<LatticePolytope<T>> {
    check_dims(d, 2, r, 1)?;
    LatticePolytope::convex_hull(&nonpositive_first(paraboloid_cap_points(d, r)?), d)
}

/// `V'_{d,r}`: vertices `v` of `P_{d,r}` with `v_d != 0` and `v_1 >= 1`.
pub fn prime_vertices<T: LatticeInt>(d: usize, r: i64) -> Result<Vec<IntegerPoint<T>>> {
    check_dims(d, 2, r, 1)?;
    Ok(prime_vertices_of(&k_polytope(d, r)?))
}

fn prime_vertices_of<T: LatticeInt>(p: &LatticePolytope<T>) -> Vec<IntegerPoint<T>> {
    let d = p.dim();
    p.vertices().iter().filter(|v| !v[d - 1].is_zero() && v[0] >= T::one()).cloned().collect()
}
