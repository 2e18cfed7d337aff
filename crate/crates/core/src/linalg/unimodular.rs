use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize};

use super::matrix::{mat_mul, vec_mat, IntegerMatrix};
use super::point::IntegerPoint;
use crate::error::{Error, Result};
use crate::scalar::LatticeInt;

/// Affine lattice automorphism `x -> xU + v` with `|det U| = 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(bound = "T: LatticeInt")]
pub struct UnimodularMap<T> {
    #[serde(rename = "U")]
    matrix: IntegerMatrix<T>,
    #[serde(rename = "v")]
    translation: IntegerPoint<T>,
}

impl<T: LatticeInt> UnimodularMap<T> {
    pub fn new(matrix: IntegerMatrix<T>, translation: IntegerPoint<T>) -> Result<Self> {
        translation.check_dim(matrix.dim())?;
        let det = matrix.det();
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular { det: det.to_string() });
        }
        Ok(UnimodularMap { matrix, translation })
    }

    pub fn linear(matrix: IntegerMatrix<T>) -> Result<Self> {
        let d = matrix.dim();
        Self::new(matrix, IntegerPoint::zero(d))
    }

    pub fn identity(dim: usize) -> Self {
        UnimodularMap { matrix: IntegerMatrix::identity(dim), translation: IntegerPoint::zero(dim) }
    }

    pub fn translation_by(v: IntegerPoint<T>) -> Self {
        UnimodularMap { matrix: IntegerMatrix::identity(v.dim()), translation: v }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &IntegerMatrix<T> {
        &self.matrix
    }

    pub fn translation(&self) -> &IntegerPoint<T> {
        &self.translation
    }

    pub fn apply(&self, p: &IntegerPoint<T>) -> Result<IntegerPoint<T>> {
        p.check_dim(self.dim())?;
        Ok(self.apply_unchecked(p))
    }

    pub(crate) fn apply_unchecked(&self, p: &IntegerPoint<T>) -> IntegerPoint<T> {
        let img = vec_mat(p.coords(), self.matrix.rows());
        IntegerPoint::new(img).add(&self.translation)
    }

    /// `self` first, then `then`: `compose(a, b)(x) = b(a(x))`.
    pub fn compose(&self, then: &Self) -> Result<Self> {
        if self.dim() != then.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: then.dim() });
        }
        let matrix = IntegerMatrix::from_rows(mat_mul(self.matrix.rows(), then.matrix.rows()))?;
        let translation =
            IntegerPoint::new(vec_mat(self.translation.coords(), then.matrix.rows())).add(&then.translation);
        // (xU1 + v1)U2 + v2; det(U1 U2) = det U1 det U2 is still a unit.
        Ok(UnimodularMap { matrix, translation })
    }

    pub fn inverse(&self) -> Self {
        let det = self.matrix.det();
        let adj = self.matrix.adjugate();
        // U^{-1} = adj(U) / det(U) with det = +-1
        let inv_rows: Vec<Vec<T>> =
            adj.rows().iter().map(|r| r.iter().map(|x| x.clone() * det.clone()).collect()).collect();
        let matrix = IntegerMatrix::from_rows(inv_rows).expect("adjugate is square");
        let translation = IntegerPoint::new(vec_mat(self.translation.coords(), matrix.rows())).neg();
        UnimodularMap { matrix, translation }
    }

    /// `U U' = I`; the translation plays no role.
    pub fn is_orthogonal(&self) -> bool {
        self.matrix.mul(&self.matrix.transpose()).is_identity()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity() && self.translation.is_zero()
    }

    pub fn fixes_origin(&self) -> bool {
        self.translation.is_zero()
    }
}

impl<'de, T: LatticeInt> Deserialize<'de> for UnimodularMap<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(bound = "T: LatticeInt")]
        struct Raw<T> {
            #[serde(rename = "U")]
            matrix: IntegerMatrix<T>,
            #[serde(rename = "v")]
            translation: IntegerPoint<T>,
        }
        let raw = Raw::<T>::deserialize(d)?;
        UnimodularMap::new(raw.matrix, raw.translation).map_err(serde::de::Error::custom)
    }
}

/// Random unimodular map: a product of elementary row operations (shears
/// by small multiples, swaps, sign flips) plus a small translation.
pub fn random_unimodular<T: LatticeInt, R: Rng + ?Sized>(dim: usize, rng: &mut R, max_shift: i64) -> UnimodularMap<T> {
    let mut rows: Vec<Vec<T>> = IntegerMatrix::<T>::identity(dim).rows().to_vec();
    let steps = 2 * dim + 2;
    for _ in 0..steps {
        let i = rng.gen_range(0..dim);
        match rng.gen_range(0..4) {
            0 | 1 if dim > 1 => {
                let mut j = rng.gen_range(0..dim - 1);
                if j >= i {
                    j += 1;
                }
                let k = T::int(*[-2i64, -1, 1, 2].get(rng.gen_range(0..4)).unwrap());
                let src = rows[j].clone();
                for (a, b) in rows[i].iter_mut().zip(src) {
                    *a = a.clone() + k.clone() * b;
                }
            }
            2 if dim > 1 => {
                let j = rng.gen_range(0..dim);
                rows.swap(i, j);
            }
            _ => {
                for a in rows[i].iter_mut() {
                    *a = -a.clone();
                }
            }
        }
    }
    let t = (0..dim).map(|_| T::int(rng.gen_range(-max_shift..=max_shift))).collect();
    UnimodularMap::new(IntegerMatrix::from_rows(rows).expect("square"), IntegerPoint::new(t))
        .expect("elementary products are unimodular")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type Map = UnimodularMap<i64>;
    type P = IntegerPoint<i64>;

    fn lin(rows: &[&[i64]]) -> Map {
        Map::linear(IntegerMatrix::from_i64_rows(rows).unwrap()).unwrap()
    }

    #[test]
    fn rejects_non_unimodular() {
        let m = IntegerMatrix::<BigInt>::from_i64_rows(&[&[2, 0], &[0, 1]]).unwrap();
        assert!(matches!(UnimodularMap::linear(m), Err(Error::NotUnimodular { .. })));
    }

    #[test]
    fn apply_examples() {
        let id = Map::identity(2);
        assert_eq!(id.apply(&P::from_i64s(&[3, -1])).unwrap(), P::from_i64s(&[3, -1]));
        let t = Map::translation_by(P::from_i64s(&[1, 0]));
        assert_eq!(t.apply(&P::from_i64s(&[0, 0])).unwrap(), P::from_i64s(&[1, 0]));
        let swap = lin(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.apply(&P::from_i64s(&[2, 5])).unwrap(), P::from_i64s(&[5, 2]));
        assert!(swap.apply(&P::from_i64s(&[1, 2, 3])).is_err());
    }

    #[test]
    fn compose_examples() {
        let s = lin(&[&[1, 1], &[0, 1]]);
        assert_eq!(s.compose(&Map::identity(2)).unwrap(), s);
        let a = Map::translation_by(P::from_i64s(&[1, 0]));
        let b = Map::translation_by(P::from_i64s(&[0, 1]));
        assert_eq!(a.compose(&b).unwrap(), Map::translation_by(P::from_i64s(&[1, 1])));
        let swap = lin(&[&[0, 1], &[1, 0]]);
        assert!(swap.compose(&swap).unwrap().is_identity());
        assert!(s.compose(&Map::identity(3)).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Map::identity(3).inverse(), Map::identity(3));
        let t = Map::translation_by(P::from_i64s(&[2, -5]));
        assert_eq!(t.inverse(), Map::translation_by(P::from_i64s(&[-2, 5])));
        assert_eq!(lin(&[&[1, 1], &[0, 1]]).inverse(), lin(&[&[1, -1], &[0, 1]]));
    }

    #[test]
    fn orthogonality() {
        assert!(Map::identity(2).is_orthogonal());
        assert!(!lin(&[&[1, 1], &[0, 1]]).is_orthogonal());
        // rows are -e3, e1, e2; U U' = I
        assert!(lin(&[&[0, 0, -1], &[1, 0, 0], &[0, 1, 0]]).is_orthogonal());
    }

    proptest! {
        #[test]
        fn inverse_round_trip(seed in any::<u64>(), x in prop::collection::vec(-20i64..20, 3)) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s: Map = random_unimodular(3, &mut rng, 5);
            let p = P::new(x);
            let back = s.inverse().apply(&s.apply(&p).unwrap()).unwrap();
            prop_assert_eq!(back, p);
            prop_assert!(s.compose(&s.inverse()).unwrap().is_identity());
        }

        #[test]
        fn apply_distributes_over_compose(seed in any::<u64>(), x in prop::collection::vec(-20i64..20, 3)) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a: Map = random_unimodular(3, &mut rng, 5);
            let b: Map = random_unimodular(3, &mut rng, 5);
            let p = P::new(x);
            let c = a.compose(&b).unwrap();
            prop_assert_eq!(c.apply(&p).unwrap(), b.apply(&a.apply(&p).unwrap()).unwrap());
            prop_assert!(c.matrix().det().abs() == 1);
        }

        #[test]
        fn det_is_multiplicative(a in prop::collection::vec(-6i64..6, 9), b in prop::collection::vec(-6i64..6, 9)) {
            let ma = IntegerMatrix::from_rows(a.chunks(3).map(<[i64]>::to_vec).collect()).unwrap();
            let mb = IntegerMatrix::from_rows(b.chunks(3).map(<[i64]>::to_vec).collect()).unwrap();
            prop_assert_eq!(ma.mul(&mb).det(), ma.det() * mb.det());
        }
    }
}
