mod common;

use common::*;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use expcond::exactnum::rat::Rat;
use expcond::polytope::{minkowski_sum, mixed_volume, rank, support_function, volume, Polytope};

fn points(k: std::ops::RangeInclusive<usize>, m: usize) -> impl Strategy<Value = Vec<Vec<Rat>>> {
    proptest::collection::vec(proptest::collection::vec((-6i64..=6, 1i64..=2), m), k)
        .prop_map(|v| v.into_iter().map(|p| p.into_iter().map(|(n, d)| qf(n, d)).collect()).collect())
}

fn polygon() -> impl Strategy<Value = Vec<Vec<Rat>>> {
    points(3..=7, 2).prop_filter("full-dimensional", |p| hull2(p).len() >= 3)
}

fn mixed_area(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Rat {
    let sum: Vec<Vec<Rat>> = a.iter().flat_map(|x| b.iter().map(move |y| vec![&x[0] + &y[0], &x[1] + &y[1]])).collect();
    (shoelace(&hull2(&sum)) - shoelace(&hull2(a)) - shoelace(&hull2(b))) / q(2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn planar_hull_matches_monotone_chain(pts in points(1..=9, 2)) {
        let p = Polytope::hull(&pts).unwrap();
        let mut expected = hull2(&pts);
        expected.sort();
        prop_assert_eq!(p.vertices(), &expected[..]);
        let area = shoelace(&hull2(&pts)).abs();
        if p.dim() == 2 {
            prop_assert_eq!(volume(&p).as_rational(), Some(area));
        }
    }

    #[test]
    fn volume_in_r3_matches_facet_pyramids(pts in points(4..=8, 3)) {
        let p = Polytope::hull(&pts).unwrap();
        prop_assume!(p.dim() == 3);
        prop_assert_eq!(volume(&p).as_rational(), Some(volume3(&pts)));
        // Euler's relation for 3-polytopes
        let f = p.f_vector();
        prop_assert_eq!(f[0] as i64 - f[1] as i64 + f[2] as i64, 2);
    }

    #[test]
    fn mixed_area_matches_inclusion_exclusion(a in polygon(), b in polygon()) {
        let (p, qq) = (Polytope::hull(&a).unwrap(), Polytope::hull(&b).unwrap());
        let mv = mixed_volume(&[p.clone(), qq.clone()]).unwrap();
        prop_assert_eq!(mv.as_rational(), Some(mixed_area(&a, &b)));
        prop_assert_eq!(mixed_volume(&[qq, p]).unwrap().as_rational(), Some(mixed_area(&a, &b)));
    }

    #[test]
    fn mixed_area_is_additive_in_each_argument(a in polygon(), b in polygon(), c in polygon()) {
        let (pa, pb, pc) = (Polytope::hull(&a).unwrap(), Polytope::hull(&b).unwrap(), Polytope::hull(&c).unwrap());
        let ab = minkowski_sum(&[pa.clone(), pb.clone()]).unwrap();
        let lhs = mixed_volume(&[ab, pc.clone()]).unwrap().as_rational().unwrap();
        let rhs = mixed_volume(&[pa, pc.clone()]).unwrap().as_rational().unwrap()
            + mixed_volume(&[pb, pc]).unwrap().as_rational().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn support_function_is_additive(a in points(1..=5, 3), b in points(1..=5, 3), v in proptest::collection::vec(-4i64..=4, 3)) {
        let (pa, pb) = (Polytope::hull(&a).unwrap(), Polytope::hull(&b).unwrap());
        let s = minkowski_sum(&[pa.clone(), pb.clone()]).unwrap();
        let v: Vec<Rat> = v.into_iter().map(q).collect();
        prop_assert_eq!(support_function(&s, &v), support_function(&pa, &v) + support_function(&pb, &v));
        // brute force over the input points
        let brute = a.iter().map(|x| x.iter().zip(&v).map(|(p, w)| p * w).sum::<Rat>()).max().unwrap();
        prop_assert_eq!(support_function(&pa, &v), brute);
    }

    #[test]
    fn minkowski_vertices_are_sums_of_vertices(a in points(1..=5, 3), b in points(1..=5, 3)) {
        let (pa, pb) = (Polytope::hull(&a).unwrap(), Polytope::hull(&b).unwrap());
        let s = minkowski_sum(&[pa.clone(), pb.clone()]).unwrap();
        for v in s.vertices() {
            let found = pa.vertices().iter().any(|x| pb.vertices().iter().any(|y| {
                x.iter().zip(y).zip(v).all(|((p, q), r)| p + q == *r)
            }));
            prop_assert!(found);
        }
    }

    #[test]
    fn translation_and_scaling_of_volume(pts in points(4..=7, 3), t in proptest::collection::vec(-3i64..=3, 3), k in 1i64..=3) {
        let p = Polytope::hull(&pts).unwrap();
        prop_assume!(p.dim() == 3);
        let t: Vec<Rat> = t.into_iter().map(q).collect();
        prop_assert_eq!(volume(&p.translate(&t)).as_rational(), volume(&p).as_rational());
        let scaled = volume(&p.scale(&q(k))).as_rational().unwrap();
        prop_assert_eq!(scaled, volume(&p).as_rational().unwrap() * q(k * k * k));
    }
}

#[test]
fn cube_face_lattice() {
    let mut pts = Vec::new();
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                pts.push(vec![q(x), q(y), q(z)]);
            }
        }
    }
    let cube = Polytope::hull(&pts).unwrap();
    assert_eq!(cube.f_vector(), vec![8, 12, 6, 1]);
    // every dual cone of a vertex is an octant
    for f in cube.faces(0).unwrap() {
        assert_eq!(f.dual_cone.dim(), 3);
        assert_eq!(f.dual_cone.rays().len(), 3);
    }
    assert_eq!(volume(&cube).as_rational(), Some(q(1)));
}

#[test]
fn lower_dimensional_volume_is_euclidean() {
    // segment from 0 to (1, 1) in ℝ²: length √2
    let s = Polytope::hull(&[vec![q(0), q(0)], vec![q(1), q(1)]]).unwrap();
    let v = volume(&s);
    assert!((v.to_f64() - 2f64.sqrt()).abs() < 1e-15);
    assert_eq!(v.square(), q(2));
    // triangle in the plane z = x + y
    let t = Polytope::hull(&[vec![q(0), q(0), q(0)], vec![q(1), q(0), q(1)], vec![q(0), q(1), q(1)]]).unwrap();
    assert_eq!(volume(&t).square(), qf(3, 4));
}

#[test]
fn rank_detects_dependent_families() {
    let seg = |v: [i64; 3]| Polytope::hull(&[vec![q(0), q(0), q(0)], v.iter().map(|&x| q(x)).collect()]).unwrap();
    assert_eq!(rank(&[seg([1, 0, 0]), seg([0, 1, 0]), seg([0, 0, 1])]).unwrap(), 0);
    assert_eq!(rank(&[seg([1, 0, 0]), seg([0, 1, 0]), seg([1, 1, 0])]).unwrap(), -1);
    assert!(mixed_volume(&[seg([1, 0, 0]), seg([0, 1, 0]), seg([1, 1, 0])]).unwrap().is_zero());
    assert!(mixed_volume(&[seg([1, 0, 0]), seg([0, 2, 0]), seg([0, 0, 3])]).unwrap().coeff().is_positive());
    let _ = Rat::zero();
}
