use super::*;
use crate::linalg::{random_unimodular, IntegerMatrix, IntegerPoint};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Poly = LatticePolytope<i64>;
type P = IntegerPoint<i64>;
type Map = UnimodularMap<i64>;

fn poly(pts: &[&[i64]]) -> Poly {
    Poly::from_i64_points(pts).unwrap()
}

fn simplex(d: usize) -> Poly {
    let mut pts = vec![P::zero(d)];
    pts.extend((0..d).map(|i| P::unit(d, i)));
    Poly::convex_hull(&pts, d).unwrap()
}

#[test]
fn o_d_orders() {
    for (d, n) in [(1, 2), (2, 8), (3, 48)] {
        let g = generate_o_d::<i64>(d).unwrap();
        assert_eq!(g.order(), n);
        g.check_closure().unwrap();
        assert!(g.elements().iter().all(|s| s.is_orthogonal() && s.fixes_origin()));
    }
    assert!(generate_o_d::<i64>(0).is_err());
    assert!(generate_o_d::<i64>(7).is_err());
}

#[test]
fn closure_rejects_partial_groups() {
    let id = UnimodularMap::<i64>::identity(2);
    let quarter = UnimodularMap::linear(IntegerMatrix::from_i64_rows(&[&[0, 1], &[-1, 0]]).unwrap()).unwrap();
    let half = quarter.compose(&quarter).unwrap();
    let three = half.compose(&quarter).unwrap();
    let partial = [id.clone(), quarter.clone(), three.clone()].into_iter().collect();
    assert!(SymmetryGroup::new(2, partial).is_err());
    let no_id = [quarter.clone(), half.clone(), three.clone()].into_iter().collect();
    assert!(SymmetryGroup::new(2, no_id).is_err());
    let full = [id, quarter, half, three].into_iter().collect();
    assert_eq!(SymmetryGroup::new(2, full).unwrap().order(), 4);
}

#[test]
fn translation_witness() {
    let p = poly(&[&[0, 0], &[3, 1], &[1, 2]]);
    let q = p.translate(&P::from_i64s(&[5, -2])).unwrap();
    let w = are_equivalent(&p, &q).unwrap().unwrap();
    assert_eq!(w, Map::translation_by(P::from_i64s(&[5, -2])));
}

#[test]
fn shear_witness() {
    let p = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
    let q = poly(&[&[0, 0], &[1, 0], &[1, 1]]);
    let w = are_equivalent(&p, &q).unwrap().unwrap();
    assert_eq!(p.image(&w).unwrap(), q);
    let shear = Map::linear(IntegerMatrix::from_i64_rows(&[&[1, 0], &[1, 1]]).unwrap()).unwrap();
    assert_eq!(p.image(&shear).unwrap(), q);
}

#[test]
fn prefilter_names_first_invariant() {
    let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
    let tri = simplex(2);
    assert_eq!(equivalence_test(&sq, &tri).unwrap(), Equivalence::Inequivalent { invariant: Some("|P|") });
    // |P| = 4 for both, normalized volumes 3 and 2
    let a = poly(&[&[-1, -1], &[1, 0], &[0, 1]]);
    assert_eq!(distinguishing_invariant(&a, &sq).unwrap(), Some("normalized_volume"));
    assert!(distinguishing_invariant(&sq, &simplex(3)).is_err());
}

#[test]
fn canonical_examples() {
    let tri = simplex(2);
    let c = canonical_form(&tri);
    for s in generate_o_d::<i64>(2).unwrap().elements() {
        for t in [[0, 0], [4, -1], [-3, 7]] {
            let img = tri.image(s).unwrap().translate(&P::from_i64s(&t)).unwrap();
            assert_eq!(canonical_form(&img), c);
        }
    }
    assert_eq!(canonical_form(&poly(&[&[0, 0], &[1, 0], &[1, 1]])), c);
    assert_ne!(canonical_form(&poly(&[&[0, 0], &[1, 0], &[0, 2]])), c);
    assert_eq!(c.to_hex().len(), 2 * c.as_bytes().len());
}

#[test]
fn simplex_groups() {
    for (d, g, go) in [(2, 6, 2), (3, 24, 6)] {
        let s = simplex(d);
        assert_eq!(unimodular_group(&s).unwrap().order(), g);
        assert_eq!(orthogonal_unimodular_group(&s).unwrap().order(), go);
    }
}

/// Every affine map is fixed by the images of `0, e_1, e_2`; try all vertex
/// triples.
fn brute_force_square_group(sq: &Poly) -> usize {
    let v = sq.vertices();
    let mut count = 0;
    for a in v {
        for b in v {
            for c in v {
                let rows = vec![b.sub(a).into_coords(), c.sub(a).into_coords()];
                let Ok(m) = IntegerMatrix::from_rows(rows) else { continue };
                let Ok(map) = Map::new(m, a.clone()) else { continue };
                let mut img: Vec<P> = v.iter().map(|x| map.apply(x).unwrap()).collect();
                img.sort();
                if img == v {
                    count += 1;
                }
            }
        }
    }
    count
}

#[test]
fn unit_square_group() {
    let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
    let g = unimodular_group(&sq).unwrap();
    assert_eq!(g.order(), brute_force_square_group(&sq));
    assert_eq!(g.order(), 8);
    assert!(g.elements().iter().all(|s| sq.image(s).unwrap() == sq));
}

#[test]
fn divides_bound_examples() {
    let cross = poly(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
    assert!(divides_bound(&cross).unwrap());
    let stretched = poly(&[&[1, 0], &[-1, 0], &[0, 2], &[0, -2]]);
    assert_eq!(orthogonal_unimodular_group(&stretched).unwrap().order(), 4);
    assert!(divides_bound(&stretched).unwrap());
    let square = poly(&[&[1, 1], &[-1, 1], &[1, -1], &[-1, -1]]);
    assert_eq!(orthogonal_unimodular_group(&square).unwrap().order(), 8);
    assert!(divides_bound(&simplex(2)).is_err());
}

#[test]
fn conjugation_examples() {
    let o2 = generate_o_d::<i64>(2).unwrap();
    assert_eq!(conjugate_group(&Map::identity(2), &o2).unwrap(), o2);
    let t = Map::translation_by(P::from_i64s(&[2, -1]));
    let c = conjugate_group(&t, &o2).unwrap();
    assert_eq!(c.order(), 8);
    for s in c.elements() {
        assert_eq!(s.apply(&P::from_i64s(&[2, -1])).unwrap(), P::from_i64s(&[2, -1]));
    }
    c.check_closure().unwrap();
}

fn small_poly(dim: usize, n: usize, r: i64) -> impl Strategy<Value = Option<Poly>> {
    prop::collection::vec(prop::collection::vec(-r..=r, dim), n)
        .prop_map(move |v| Poly::convex_hull(&v.into_iter().map(P::new).collect::<Vec<_>>(), dim).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn canonical_form_is_invariant(p in small_poly(2, 6, 4), seed in any::<u64>()) {
        if let Some(p) = p {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = canonical_form(&p);
            for _ in 0..10 {
                let s: Map = random_unimodular(2, &mut rng, 6);
                let q = p.image(&s).unwrap();
                prop_assert_eq!(canonical_form(&q), c.clone());
                let w = are_equivalent(&p, &q).unwrap();
                prop_assert!(w.is_some());
                prop_assert_eq!(p.image(&w.unwrap()).unwrap(), q);
            }
        }
    }

    #[test]
    fn canonical_form_decides_equivalence(p in small_poly(2, 5, 3), q in small_poly(2, 5, 3)) {
        if let (Some(p), Some(q)) = (p, q) {
            let same = canonical_form(&p) == canonical_form(&q);
            prop_assert_eq!(same, are_equivalent(&p, &q).unwrap().is_some());
        }
    }

    #[test]
    fn stabilizer_conjugation_in_3d(p in small_poly(3, 7, 2), seed in any::<u64>()) {
        if let Some(p) = p {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s: Map = random_unimodular(3, &mut rng, 3);
            let g = unimodular_group(&p).unwrap();
            let lhs = unimodular_group(&p.image(&s).unwrap()).unwrap();
            prop_assert_eq!(lhs, conjugate_group(&s, &g).unwrap());
            let go = orthogonal_unimodular_group(&p).unwrap();
            prop_assert!(go.is_subgroup_of(&g));
            prop_assert_eq!(g.order() % go.order(), 0);
        }
    }
}
