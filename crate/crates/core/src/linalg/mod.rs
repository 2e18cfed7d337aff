//! Exact integer vectors, square matrices and affine unimodular maps.

mod matrix;
mod point;
mod unimodular;

pub use matrix::{column_hnf, det, rank, IntegerMatrix};
pub(crate) use matrix::{adjugate, cofactor_normal, mat_mul, vec_mat};
pub(crate) use point::dot;
pub use point::IntegerPoint;
pub use unimodular::{random_unimodular, UnimodularMap};

use crate::scalar::LatticeInt;

/// Dimension of the affine hull; `-1` for the empty set.
pub fn affine_rank<T: LatticeInt>(points: &[&IntegerPoint<T>]) -> isize {
    match points.split_first() {
        None => -1,
        Some((first, rest)) => {
            let diffs: Vec<Vec<T>> = rest.iter().map(|p| p.sub(first).into_coords()).collect();
            rank(&diffs) as isize
        }
    }
}

/// Greedily picks indices of an affinely independent subset of maximal size.
pub(crate) fn affinely_independent_subset<T: LatticeInt>(points: &[&IntegerPoint<T>]) -> Vec<usize> {
    let Some(first) = points.first() else { return Vec::new() };
    let mut chosen = vec![0usize];
    let mut diffs: Vec<Vec<T>> = Vec::new();
    let dim = first.dim();
    for (i, p) in points.iter().enumerate().skip(1) {
        if diffs.len() == dim {
            break;
        }
        let d = p.sub(first).into_coords();
        if d.iter().all(|x| x.is_zero()) {
            continue;
        }
        diffs.push(d);
        if rank(&diffs) == diffs.len() {
            chosen.push(i);
        } else {
            diffs.pop();
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_rank_examples() {
        let pts: Vec<IntegerPoint<i64>> =
            [[0, 0], [1, 1], [2, 2], [3, 3]].iter().map(|c| IntegerPoint::from_i64s(c)).collect();
        let refs: Vec<&IntegerPoint<i64>> = pts.iter().collect();
        assert_eq!(affine_rank(&refs), 1);
        assert_eq!(affine_rank::<i64>(&[]), -1);
        assert_eq!(affine_rank(&refs[..1]), 0);
        assert_eq!(affinely_independent_subset(&refs), vec![0, 1]);
    }
}
