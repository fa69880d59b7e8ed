mod common;

use common::*;
use num_traits::{One, Zero};
use proptest::prelude::*;

use expcond::exactnum::linalg::{det, gram_det};
use expcond::exactnum::rat::{fmt_rat, parse_rat, Rat};
use expcond::exactnum::subspace::{complex_rotate, subspace_cosine_squared, GaussianVector, Subspace};

fn small_vec(m: usize) -> impl Strategy<Value = Vec<Rat>> {
    proptest::collection::vec((-5i64..=5, 1i64..=3), m).prop_map(|v| v.into_iter().map(|(n, d)| qf(n, d)).collect())
}

fn vectors(k: usize, m: usize) -> impl Strategy<Value = Vec<Vec<Rat>>> {
    proptest::collection::vec(small_vec(m), k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rationals_round_trip(n in -10_000i64..10_000, d in 1i64..500) {
        let r = qf(n, d);
        prop_assert_eq!(parse_rat(&fmt_rat(&r)).unwrap(), r);
    }

    #[test]
    fn complement_dimensions_add_up(vs in vectors(3, 5)) {
        let s = Subspace::span(5, &vs);
        let c = s.orthogonal_complement();
        prop_assert_eq!(s.dim() + c.dim(), 5);
        for b in c.basis() {
            for v in &vs {
                prop_assert!(b.iter().zip(v).map(|(x, y)| x * y).sum::<Rat>().is_zero());
            }
        }
        prop_assert_eq!(c.orthogonal_complement(), s);
    }

    #[test]
    fn canonical_basis_is_span_invariant(vs in vectors(2, 4), a in -3i64..=3, b in 1i64..=3) {
        // replacing a generator by a combination does not change the subspace
        let mut ws = vs.clone();
        ws[0] = vs[0].iter().zip(&vs[1]).map(|(x, y)| x * q(b) + y * q(a)).collect();
        prop_assert_eq!(Subspace::span(4, &vs), Subspace::span(4, &ws));
    }

    #[test]
    fn gram_det_of_square_matrix_is_det_squared(vs in vectors(3, 3)) {
        let d = det(&vs);
        prop_assert_eq!(gram_det(&vs), &d * &d);
    }

    #[test]
    fn cosine_is_symmetric_and_bounded(a in vectors(2, 4), b in vectors(2, 4)) {
        let (sa, sb) = (Subspace::span(4, &a), Subspace::span(4, &b));
        prop_assume!(sa.dim() == 2 && sb.dim() == 2);
        let c = subspace_cosine_squared(&sa, &sb).unwrap();
        prop_assert_eq!(subspace_cosine_squared(&sb, &sa).unwrap(), c.clone());
        prop_assert!(c >= Rat::zero() && c <= Rat::one());
    }

    #[test]
    fn multiplication_by_i_twice_is_negation(v in small_vec(6)) {
        let twice = complex_rotate(&complex_rotate(&v));
        prop_assert_eq!(twice, v.iter().map(|x| -x).collect::<Vec<_>>());
    }

    #[test]
    fn complex_hull_dimension_matches_span_with_rotation(vs in vectors(2, 4)) {
        let s = Subspace::span(4, &vs);
        let hull = s.sum(&s.complex_rotate());
        prop_assert_eq!(s.complex_hull_dim() * 2, hull.dim());
    }
}

#[test]
fn cosine_oracle_for_planes_in_r4() {
    // angle between the x1x2-plane and a plane tilted by θ with cos θ = 3/5 in both directions
    let a = Subspace::span(4, &[vec![q(1), q(0), q(0), q(0)], vec![q(0), q(1), q(0), q(0)]]);
    let b = Subspace::span(4, &[vec![q(3), q(0), q(4), q(0)], vec![q(0), q(3), q(0), q(4)]]);
    assert_eq!(subspace_cosine_squared(&a, &b).unwrap(), qf(81, 625));
    let real = Subspace::span(4, &[vec![q(1), q(0), q(0), q(0)], vec![q(0), q(0), q(1), q(0)]]);
    assert_eq!(subspace_cosine_squared(&real.orthogonal_complement(), &real.complex_rotate()).unwrap(), q(1));
    assert_eq!(real.complex_hull_dim(), 2);
}

#[test]
fn gaussian_vectors_use_interleaved_coordinates() {
    let v = GaussianVector::from_parts(&[q(1), q(2)], &[q(3), q(4)]);
    assert_eq!(v.coords(), &[q(1), q(3), q(2), q(4)]);
    assert_eq!(v.complex_rotate().coords(), &[q(-3), q(1), q(-4), q(2)]);
    assert!(!v.is_real());
    assert!(GaussianVector::new(vec![q(1)]).is_err());
}
