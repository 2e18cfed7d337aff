use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{xgcd, LatticeInt};

/// Square integer matrix, row-major. Under the row-vector convention
/// `x -> xU`, row `i` is the image of the `i`-th basis vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IntegerMatrix<T> {
    rows: Vec<Vec<T>>,
}

impl<T: LatticeInt> IntegerMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidInput("matrix must have dimension >= 1".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.len() });
        }
        Ok(IntegerMatrix { rows })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| T::int(x)).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
            .collect();
        IntegerMatrix { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.rows[i][j]
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim();
        let rows = (0..n).map(|j| (0..n).map(|i| self.rows[i][j].clone()).collect()).collect();
        IntegerMatrix { rows }
    }

    pub fn mul(&self, other: &Self) -> Self {
        IntegerMatrix { rows: mat_mul(&self.rows, &other.rows) }
    }

    pub fn det(&self) -> T {
        det(&self.rows)
    }

    /// Adjugate (transposed cofactor matrix): `M * adj(M) = det(M) * I`.
    pub fn adjugate(&self) -> Self {
        IntegerMatrix { rows: adjugate(&self.rows) }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim())
    }
}

pub(crate) fn mat_mul<T: LatticeInt>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(T::zero(), |acc, k| acc + row[k].clone() * b[k][j].clone()))
                .collect()
        })
        .collect()
}

/// Row vector times matrix.
pub(crate) fn vec_mat<T: LatticeInt>(x: &[T], m: &[Vec<T>]) -> Vec<T> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| x.iter().zip(m).fold(T::zero(), |acc, (xi, row)| acc + xi.clone() * row[j].clone()))
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination. Every intermediate
/// value is itself a minor of the input, so nothing leaves the integers.
pub fn det<T: LatticeInt>(m: &[Vec<T>]) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut sign_flip = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign_flip = !sign_flip;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign_flip {
        -d
    } else {
        d
    }
}

/// Rank of an arbitrary rectangular integer matrix, by fraction-free
/// elimination.
pub fn rank<T: LatticeInt>(rows: &[Vec<T>]) -> usize {
    let mut a: Vec<Vec<T>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    if a.is_empty() {
        return 0;
    }
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let (pivot, lead) = (a[r][c].clone(), a[i][c].clone());
            let g = pivot.gcd_abs(&lead);
            let (fp, fl) = (pivot / g.clone(), lead / g);
            for j in c..cols {
                let v = a[i][j].clone() * fp.clone() - a[r][j].clone() * fl.clone();
                a[i][j] = v;
            }
            let content = a[i][c..].iter().fold(T::zero(), |g, x| g.gcd_abs(x));
            if !content.is_zero() && !content.is_one() {
                for x in a[i][c..].iter_mut() {
                    *x = x.clone() / content.clone();
                }
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

pub(crate) fn adjugate<T: LatticeInt>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![T::one()]];
    }
    let mut adj = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<T>> = m
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != i)
                .map(|(_, row)| {
                    row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()
                })
                .collect();
            let cof = det(&minor);
            // adj[j][i] = (-1)^{i+j} M_{ij}
            adj[j][i] = if (i + j) % 2 == 0 { cof } else { -cof };
        }
    }
    adj
}

/// Vector orthogonal to the `d-1` rows of `diffs` (each of length `d`), given
/// by the signed maximal minors. Zero iff the rows are dependent.
pub(crate) fn cofactor_normal<T: LatticeInt>(diffs: &[Vec<T>], dim: usize) -> Vec<T> {
    (0..dim)
        .map(|j| {
            let minor: Vec<Vec<T>> = diffs
                .iter()
                .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let m = det(&minor);
            if j % 2 == 0 {
                m
            } else {
                -m
            }
        })
        .collect()
}

/// Column-style Hermite normal form of a nonsingular matrix: returns
/// `(H, U)` with `U` unimodular, `H = M U` lower triangular, positive
/// diagonal, and `0 <= H[i][j] < H[i][i]` for `j < i`. `H` depends only on
/// the lattice spanned by the columns of `M`.
pub fn column_hnf<T: LatticeInt>(m: &[Vec<T>]) -> Option<(Vec<Vec<T>>, Vec<Vec<T>>)> {
    let n = m.len();
    let mut h: Vec<Vec<T>> = m.to_vec();
    let mut u: Vec<Vec<T>> = IntegerMatrix::<T>::identity(n).rows;
    // Column operations act on both h and u.
    fn col_combine<T: LatticeInt>(a: &mut [Vec<T>], i: usize, j: usize, c: [&T; 4]) {
        // (col_i, col_j) <- (c0*col_i + c1*col_j, c2*col_i + c3*col_j)
        for row in a.iter_mut() {
            let (x, y) = (row[i].clone(), row[j].clone());
            row[i] = c[0].clone() * x.clone() + c[1].clone() * y.clone();
            row[j] = c[2].clone() * x + c[3].clone() * y;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if h[i][j].is_zero() {
                continue;
            }
            let (a, b) = (h[i][i].clone(), h[i][j].clone());
            let (g, x, y) = xgcd(&a, &b);
            let (ag, bg) = (a / g.clone(), b / g);
            let nbg = -bg;
            // [[x, -b/g], [y, a/g]] has determinant 1.
            col_combine(&mut h, i, j, [&x, &y, &nbg, &ag]);
            col_combine(&mut u, i, j, [&x, &y, &nbg, &ag]);
        }
        if h[i][i].is_zero() {
            return None;
        }
        if h[i][i].is_negative() {
            for a in [&mut h, &mut u] {
                for row in a.iter_mut() {
                    row[i] = -row[i].clone();
                }
            }
        }
        for j in 0..i {
            let q = h[i][j].div_floor(&h[i][i]);
            if q.is_zero() {
                continue;
            }
            for a in [&mut h, &mut u] {
                for row in a.iter_mut() {
                    let v = row[j].clone() - q.clone() * row[i].clone();
                    row[j] = v;
                }
            }
        }
    }
    Some((h, u))
}

impl<T: LatticeInt> Serialize for IntegerMatrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.rows.len()))?;
        for row in &self.rows {
            seq.serialize_element(&crate::json::IntRow(row))?;
        }
        seq.end()
    }
}

impl<'de, T: LatticeInt> Deserialize<'de> for IntegerMatrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<crate::json::OwnedIntRow<T>> = Vec::deserialize(d)?;
        IntegerMatrix::from_rows(rows.into_iter().map(|r| r.0).collect()).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn m(rows: &[&[i64]]) -> IntegerMatrix<i64> {
        IntegerMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn det_examples() {
        assert_eq!(IntegerMatrix::<BigInt>::identity(3).det(), BigInt::from(1));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), -1);
        // 2*1 - 1*1
        assert_eq!(m(&[&[2, 1], &[1, 1]]).det(), 1);
        assert_eq!(m(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]).det(), -1);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det(), 0);
    }

    #[test]
    fn det_matches_cofactor_expansion_3x3() {
        let a = m(&[&[2, -1, 3], &[0, 4, 5], &[-2, 1, 1]]);
        // 2*(4*1-5*1) - (-1)*(0*1-5*(-2)) + 3*(0*1-4*(-2))
        let expected = 2 * (4 - 5) + (10) + 3 * 8;
        assert_eq!(a.det(), expected);
    }

    #[test]
    fn adjugate_times_matrix_is_det_identity() {
        let a = m(&[&[2, -1, 3], &[0, 4, 5], &[-2, 1, 1]]);
        let d = a.det();
        let prod = a.mul(&a.adjugate());
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(*prod.get(i, j), if i == j { d } else { 0 });
            }
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank::<i64>(&[vec![1, 2, 3], vec![2, 4, 6]]), 1);
        assert_eq!(rank::<i64>(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]), 2);
        assert_eq!(rank::<i64>(&[vec![0, 0]]), 0);
        assert_eq!(rank::<i64>(&[vec![2, 3], vec![3, 5]]), 2);
    }

    #[test]
    fn hnf_is_lower_triangular_and_reduced() {
        let a = vec![vec![3i64, 1, 4], vec![1, 5, 9], vec![2, 6, 5]];
        let (h, u) = column_hnf(&a).unwrap();
        assert_eq!(mat_mul(&a, &u), h);
        assert_eq!(det(&u).abs(), 1);
        for i in 0..3 {
            assert!(h[i][i] > 0);
            for j in 0..3 {
                if j > i {
                    assert_eq!(h[i][j], 0);
                } else if j < i {
                    assert!(h[i][j] >= 0 && h[i][j] < h[i][i]);
                }
            }
        }
    }

    #[test]
    fn hnf_invariant_under_right_unimodular_factor() {
        let a = vec![vec![3i64, 1], vec![1, 5]];
        let shear = vec![vec![1i64, 2], vec![0, 1]];
        let (h1, _) = column_hnf(&a).unwrap();
        let (h2, _) = column_hnf(&mat_mul(&a, &shear)).unwrap();
        assert_eq!(h1, h2);
    }
}
