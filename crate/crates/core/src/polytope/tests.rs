use super::*;
use crate::linalg::random_unimodular;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Poly = LatticePolytope<i64>;
type P = IntegerPoint<i64>;

fn poly(pts: &[&[i64]]) -> Poly {
    Poly::from_i64_points(pts).unwrap()
}

fn pts(v: &[&[i64]]) -> Vec<P> {
    v.iter().map(|c| P::from_i64s(c)).collect()
}

/// Brute force over the bounding box using the facet list only through
/// `contains`, which is checked separately against the hull vertices.
fn brute_count(p: &Poly) -> usize {
    let (lo, hi) = p.bounding_box();
    let mut count = 0;
    let mut cur = lo.clone();
    loop {
        if p.contains(&P::new(cur.clone())) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == cur.len() {
                return count;
            }
            if cur[i] < hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i];
            i += 1;
        }
    }
}

/// Twice the shoelace area of a polygon given in any order.
fn twice_area(vertices: &[P]) -> i64 {
    let cx: f64 = vertices.iter().map(|v| v[0] as f64).sum::<f64>() / vertices.len() as f64;
    let cy: f64 = vertices.iter().map(|v| v[1] as f64).sum::<f64>() / vertices.len() as f64;
    let mut vs = vertices.to_vec();
    vs.sort_by(|a, b| {
        let ta = (a[1] as f64 - cy).atan2(a[0] as f64 - cx);
        let tb = (b[1] as f64 - cy).atan2(b[0] as f64 - cx);
        ta.partial_cmp(&tb).unwrap()
    });
    let n = vs.len();
    let s: i64 = (0..n).map(|i| vs[i][0] * vs[(i + 1) % n][1] - vs[(i + 1) % n][0] * vs[i][1]).sum();
    s.abs()
}

fn boundary_points(vertices: &[P], hull: &Poly) -> i64 {
    hull.facets()
        .iter()
        .map(|f| {
            let a = &vertices[f.vertices[0]];
            let b = &vertices[f.vertices[f.vertices.len() - 1]];
            num_integer::gcd(a[0] - b[0], a[1] - b[1])
        })
        .sum()
}

#[test]
fn triangle() {
    let t = poly(&[&[0, 0], &[2, 0], &[0, 2]]);
    assert_eq!(t.num_lattice_points(), 6);
    assert_eq!(*t.normalized_volume(), 4);
    assert_eq!(t.facets().len(), 3);
    assert_eq!(t.num_interior_lattice_points(), 0);
}

#[test]
fn collinear_and_interior_points_are_dropped() {
    let sq = poly(&[&[0, 0], &[1, 0], &[2, 0], &[2, 1], &[2, 2], &[1, 2], &[0, 2], &[0, 1], &[1, 1]]);
    assert_eq!(sq.vertices(), pts(&[&[0, 0], &[0, 2], &[2, 0], &[2, 2]]).as_slice());
    assert_eq!(sq.facets().len(), 4);
    for f in sq.facets() {
        assert_eq!(f.vertices.len(), 2);
    }
    assert_eq!(sq.facet_point_counts(), vec![3, 3, 3, 3]);
}

#[test]
fn degenerate_input_reports_rank() {
    let r = LatticePolytope::<i64>::from_i64_points(&[&[0, 0], &[1, 1], &[2, 2]]);
    assert!(matches!(r, Err(Error::Degenerate { rank: 1, dim: 2 })));
    let r = LatticePolytope::<i64>::from_i64_points(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]);
    assert!(matches!(r, Err(Error::Degenerate { rank: 2, dim: 3 })));
}

#[test]
fn segment() {
    let s = poly(&[&[-2], &[3], &[0]]);
    assert_eq!(s.vertices(), pts(&[&[-2], &[3]]).as_slice());
    assert_eq!(s.num_lattice_points(), 6);
    assert_eq!(*s.normalized_volume(), 5);
}

#[test]
fn cube_and_cross_polytope() {
    let cube = poly(&[
        &[0, 0, 0],
        &[1, 0, 0],
        &[0, 1, 0],
        &[0, 0, 1],
        &[1, 1, 0],
        &[1, 0, 1],
        &[0, 1, 1],
        &[1, 1, 1],
    ]);
    assert_eq!(cube.vertices().len(), 8);
    assert_eq!(cube.facets().len(), 6);
    assert_eq!(*cube.normalized_volume(), 6);
    assert!(cube.symmetry_center().is_none());
    for adj in cube.adjacency() {
        assert_eq!(adj.len(), 3);
    }

    let oct = poly(&[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1]]);
    assert_eq!(oct.facets().len(), 8);
    assert_eq!(*oct.normalized_volume(), 8);
    assert_eq!(oct.num_lattice_points(), 7);
    assert_eq!(oct.symmetry_center(), Some(P::zero(3)));
    for adj in oct.adjacency() {
        assert_eq!(adj.len(), 4);
    }
}

#[test]
fn big_integer_scalar() {
    let t = LatticePolytope::<BigInt>::from_i64_points(&[&[0, 0], &[3, 0], &[0, 3]]).unwrap();
    assert_eq!(t.num_lattice_points(), 10);
    assert_eq!(*t.normalized_volume(), BigInt::from(9));
}

#[test]
fn diamond_diameter() {
    let d = poly(&[&[2, 0], &[-2, 0], &[0, 2], &[0, -2]]);
    assert_eq!(*d.normalized_volume(), 16);
    assert_eq!(d.num_interior_lattice_points(), 5);
    assert_eq!(d.num_lattice_points(), 13);
    let (ell, dirs) = d.lattice_diameter().unwrap();
    assert_eq!(ell, 5);
    assert_eq!(dirs.into_iter().collect::<Vec<_>>(), pts(&[&[0, 1], &[1, 0]]));
    assert_eq!(d.line_point_count(&P::from_i64s(&[1, 1]), &P::zero(2)).unwrap(), 3);
    assert!(d.line_point_count(&P::from_i64s(&[2, 0]), &P::zero(2)).is_err());
    assert_eq!(d.hyperplane_slice_count(&P::from_i64s(&[1, 1]), &0).unwrap(), 3);
    assert_eq!(d.hyperplane_slice_count(&P::from_i64s(&[0, 1]), &1).unwrap(), 3);
}

#[test]
fn diameter_needs_symmetry() {
    let t = poly(&[&[0, 0], &[2, 0], &[0, 2]]);
    assert!(matches!(t.lattice_diameter(), Err(Error::NotCentrallySymmetric)));
    let shifted = poly(&[&[3, 1], &[5, 1], &[3, 3], &[5, 3]]);
    assert_eq!(shifted.symmetry_center(), Some(P::from_i64s(&[4, 2])));
    assert_eq!(shifted.lattice_diameter().unwrap().0, 3);
}

#[test]
fn line_count_off_center() {
    let sq = poly(&[&[0, 0], &[4, 0], &[0, 4], &[4, 4]]);
    assert_eq!(sq.line_point_count(&P::from_i64s(&[1, 2]), &P::from_i64s(&[1, 0])).unwrap(), 3);
    assert_eq!(sq.line_point_count(&P::from_i64s(&[0, 1]), &P::from_i64s(&[7, 0])).unwrap(), 0);
}

#[test]
fn operations() {
    let t = poly(&[&[0, 0], &[2, 0], &[0, 1]]);
    let n = t.negate();
    assert_eq!(n.vertices(), pts(&[&[-2, 0], &[0, -1], &[0, 0]]).as_slice());
    let u = t.union_hull(&n).unwrap();
    assert!(u.is_centrally_symmetric());
    assert!(t.is_subset_of(&u));
    assert!(!u.is_subset_of(&t));
    let moved = t.translate(&P::from_i64s(&[1, 1])).unwrap();
    assert!(moved.contains(&P::from_i64s(&[3, 1])));
    assert!(moved.contains_strictly(&P::from_i64s(&[2, 1])) == false);
}

#[test]
fn pick_agrees_on_a_fixed_polygon() {
    let v = pts(&[&[0, 0], &[5, 1], &[7, 4], &[3, 6], &[-1, 3]]);
    let p = Poly::convex_hull(&v, 2).unwrap();
    let a2 = twice_area(p.vertices());
    let b = boundary_points(p.vertices(), &p);
    assert_eq!(*p.normalized_volume(), a2);
    assert_eq!(p.num_lattice_points() as i64, (a2 + b) / 2 + 1);
}

fn small_points(dim: usize, n: usize, r: i64) -> impl Strategy<Value = Vec<P>> {
    prop::collection::vec(prop::collection::vec(-r..=r, dim), n).prop_map(|v| v.into_iter().map(P::new).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pick_formula(v in small_points(2, 9, 5)) {
        if let Ok(p) = Poly::convex_hull(&v, 2) {
            let a2 = twice_area(p.vertices());
            let b = boundary_points(p.vertices(), &p);
            prop_assert_eq!(*p.normalized_volume(), a2);
            prop_assert_eq!(p.num_lattice_points() as i64, (a2 + b) / 2 + 1);
            let interior = p.num_interior_lattice_points() as i64;
            prop_assert_eq!(interior, (a2 - b) / 2 + 1);
        }
    }

    #[test]
    fn hull_is_idempotent_and_covers_input(v in small_points(3, 12, 3)) {
        if let Ok(p) = Poly::convex_hull(&v, 3) {
            for x in &v {
                prop_assert!(p.contains(x));
            }
            let again = Poly::convex_hull(p.vertices(), 3).unwrap();
            prop_assert_eq!(&again, &p);
            let from_points = Poly::convex_hull(p.lattice_points(), 3).unwrap();
            prop_assert_eq!(&from_points, &p);
            prop_assert_eq!(p.num_lattice_points(), brute_count(&p));
            // every vertex is supported by facets spanning R^3
            for inc in p.vertex_facets() {
                let normals: Vec<Vec<i64>> = inc.iter().map(|&f| p.facets()[f].normal.coords().to_vec()).collect();
                prop_assert_eq!(rank(&normals), 3);
            }
        }
    }

    #[test]
    fn unimodular_images(v in small_points(3, 8, 2), seed in any::<u64>()) {
        if let Ok(p) = Poly::convex_hull(&v, 3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = random_unimodular::<i64, _>(3, &mut rng, 4);
            let q = p.image(&s).unwrap();
            prop_assert_eq!(q.num_lattice_points(), p.num_lattice_points());
            prop_assert_eq!(q.normalized_volume(), p.normalized_volume());
            prop_assert_eq!(q.vertices().len(), p.vertices().len());
            prop_assert_eq!(q.facets().len(), p.facets().len());
            let mut a = p.facet_point_counts();
            let mut b = q.facet_point_counts();
            a.sort_unstable();
            b.sort_unstable();
            prop_assert_eq!(a, b);
            let back = q.image(&s.inverse()).unwrap();
            prop_assert_eq!(back, p);
        }
    }

    #[test]
    fn volume_of_simplices(v in small_points(4, 5, 3)) {
        if let Ok(p) = Poly::convex_hull(&v, 4) {
            if p.vertices().len() == 5 {
                let base = &p.vertices()[0];
                let rows: Vec<Vec<i64>> = p.vertices()[1..].iter().map(|x| x.sub(base).into_coords()).collect();
                prop_assert_eq!(*p.normalized_volume(), crate::linalg::det(&rows).abs());
            }
        }
    }
}
