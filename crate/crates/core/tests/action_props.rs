use proptest::prelude::*;

use ternforms::gl3::{act_v22, act_vn, adjugate3, cofactor_delta, det3, Mat3};
use ternforms::poly::{parse_poly, VarSet};
use ternforms::rep22::{sigma, Class22};
use ternforms::sample;
use ternforms::scalar::{Domain, Scalar};
use ternforms::Error;

fn rank_deficient(m: &Mat3) -> Mat3 {
    let e: [Scalar; 9] = std::array::from_fn(|k| {
        let (i, j) = (k / 3, k % 3);
        if i == 2 {
            m.get(0, j) + m.get(1, j)
        } else {
            m.get(i, j).clone()
        }
    });
    Mat3::new(m.domain(), e).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn adjugate_identity(seed in any::<u64>(), over_field in any::<bool>(), singular in any::<bool>()) {
        let domain = if over_field { Domain::Prime(101) } else { Domain::Integer };
        let mut rng = sample::rng(seed);
        let mut m = sample::mat3(&mut rng, domain, 20);
        if singular {
            m = rank_deficient(&m);
            prop_assert!(det3(&m).is_zero());
        }
        let scaled = Mat3::scalar(det3(&m));
        prop_assert_eq!(m.mul(&adjugate3(&m)).unwrap(), scaled.clone());
        prop_assert_eq!(adjugate3(&m).mul(&m).unwrap(), scaled);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn delta_is_multiplicative(seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let a = sample::invertible_mat3(&mut rng, Domain::Integer, 9);
        let b = sample::invertible_mat3(&mut rng, Domain::Integer, 9);
        prop_assert_eq!(cofactor_delta(&a.mul(&b).unwrap()), cofactor_delta(&a).mul(&cofactor_delta(&b)).unwrap());
    }

    #[test]
    fn act_vn_composition(seed in any::<u64>(), over_field in any::<bool>()) {
        let domain = if over_field { Domain::Prime(10007) } else { Domain::Rational };
        let mut rng = sample::rng(seed);
        let f = sample::ternary_form(&mut rng, 4, domain, 9);
        let g1 = sample::mat3(&mut rng, domain, 5);
        let g2 = sample::mat3(&mut rng, domain, 5);
        let nested = act_vn(&g1, &act_vn(&g2, &f).unwrap()).unwrap();
        prop_assert_eq!(nested, act_vn(&g1.mul(&g2).unwrap(), &f).unwrap());
    }

    #[test]
    fn act_v22_is_invertible(seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let f = Class22::canonicalize(&sample::form22(&mut rng, Domain::Rational, 9)).unwrap();
        let g = sample::invertible_mat3(&mut rng, Domain::Rational, 4);
        let back = act_v22(&g.inverse().unwrap(), &act_v22(&g, &f).unwrap()).unwrap();
        prop_assert_eq!(back, f);
        prop_assert!(act_v22(&g, &Class22::zero(Domain::Rational)).unwrap().is_zero());
    }

    #[test]
    fn ideal_maps_to_zero(seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let d = Domain::Prime(7);
        let v = VarSet::xz();
        let s = sigma(&v, d);
        let x1z1 = parse_poly("x1*z1", Some(&v), Some(d)).unwrap();
        let ideal = Class22::canonicalize(&(&s * &x1z1)).unwrap();
        prop_assert!(ideal.is_zero());
        let g = sample::invertible_mat3(&mut rng, d, 7);
        let moved = ternforms::gl3::substitute_v22(&g, &(&s * &x1z1)).unwrap();
        prop_assert!(Class22::canonicalize(&moved).unwrap().is_zero());
    }
}

#[test]
fn center_acts_by_powers() {
    let mut rng = sample::rng(5);
    for u in [-2i64, 3, 5] {
        let us = Scalar::from_i64(Domain::Integer, u);
        let c = sample::ternary_form(&mut rng, 3, Domain::Integer, 9);
        assert_eq!(act_vn(&Mat3::scalar(us.clone()), &c).unwrap(), c.scale(&us.pow(3)).unwrap());
        let f = Class22::canonicalize(&sample::form22(&mut rng, Domain::Integer, 9)).unwrap();
        let moved = act_v22(&Mat3::scalar(us.clone()), &f).unwrap();
        assert_eq!(moved.representative(), &f.representative().scale(&us.pow(6)).unwrap());
    }
}

#[test]
fn identity_and_singular_actions() {
    let f = Class22::parse("x1^2*z2^2 + x2*x3*z1*z3", None).unwrap();
    assert_eq!(act_v22(&Mat3::identity(Domain::Integer), &f).unwrap(), f);
    let sing = Mat3::from_i64(Domain::Integer, [1, 2, 3, 2, 4, 6, 0, 0, 1]);
    assert_eq!(act_v22(&sing, &f), Err(Error::Singular));
    let q = parse_poly("x^2 + y*z", None, Some(Domain::Rational)).unwrap();
    let g = Mat3::identity(Domain::Integer);
    assert!(matches!(act_vn(&g, &q), Err(Error::DomainMismatch { .. })));
}
