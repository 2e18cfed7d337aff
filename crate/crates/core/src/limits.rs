//! Resource caps shared by every enumeration.

use crate::error::{Error, Result};
use crate::polytope::LatticePolytope;
use crate::scalar::LatticeInt;

pub const MAX_POINTS_VAR: &str = "LATPOLY_MAX_POINTS";
pub const DEFAULT_MAX_POINTS: usize = 200_000;

/// Cap on the number of candidate lattice points any single enumeration may
/// scan, read from `LATPOLY_MAX_POINTS`.
pub fn max_points() -> usize {
    std::env::var(MAX_POINTS_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_POINTS)
}

pub fn check_size(what: &str, size: usize) -> Result<()> {
    let cap = max_points();
    if size > cap {
        return Err(Error::ResourceCap { what: what.to_string(), size, cap });
    }
    Ok(())
}

/// Fails before enumerating the lattice points of `p` if its bounding box
/// exceeds the cap.
pub fn check_enumerable<T: LatticeInt>(p: &LatticePolytope<T>) -> Result<()> {
    check_size("bounding box of lattice-point scan", p.bounding_box_size().unwrap_or(usize::MAX))
}
