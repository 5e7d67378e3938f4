use proptest::prelude::*;

use ternforms::ffield::singular_points;
use ternforms::linalg::Matrix;
use ternforms::poly::{Poly, VarSet};
use ternforms::rep22::{
    bidegree22_monomials, covariant_ix, covariant_ix_raw, covariant_iz, covariant_iz_raw, genericity_mod_p, gram_pair,
    is_generic_mod_p, sigma, try_integral, Class22,
};
use ternforms::sample;
use ternforms::scalar::{Domain, Scalar};
use ternforms::Error;

/// Whether `h` lies in the span of the nine `sigma * x_i * z_j`, by rank.
fn in_ideal(h: &Poly) -> bool {
    let q = Domain::Rational;
    let vars = VarSet::xz();
    let basis = bidegree22_monomials();
    let s = sigma(&vars, q);
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            let xz = &Poly::var(&vars, q, i) * &Poly::var(&vars, q, 3 + j);
            cols.push((&s * &xz).coefficient_vector(&basis));
        }
    }
    let build = |cols: &[Vec<Scalar>]| {
        let mut m = Matrix::zeros(36, cols.len(), q);
        for (c, col) in cols.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m.rank().unwrap()
    };
    let base = build(&cols);
    cols.push(h.to_domain(q).unwrap().coefficient_vector(&basis));
    build(&cols) == base
}

fn contract(q: &[[Poly; 3]; 3], block: usize) -> Poly {
    let vars = q[0][0].vars().clone();
    let d = q[0][0].domain();
    let mut out = Poly::zero(&vars, d);
    for i in 0..3 {
        for j in 0..3 {
            let vi = Poly::var(&vars, d, block + i);
            let vj = Poly::var(&vars, d, block + j);
            out = &out + &(&(&vi * &vj) * &q[i][j]);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn coset_soundness(seed in any::<u64>(), same_coset in any::<bool>()) {
        let d = Domain::Rational;
        let mut rng = sample::rng(seed);
        let f = sample::form22(&mut rng, d, 9);
        let g = if same_coset {
            &f + &(&sample::form11(&mut rng, d, 9) * &sigma(&VarSet::xz(), d))
        } else {
            sample::form22(&mut rng, d, 9)
        };
        let equal = Class22::canonicalize(&f).unwrap() == Class22::canonicalize(&g).unwrap();
        prop_assert_eq!(equal, in_ideal(&(&f - &g)));
        if same_coset {
            prop_assert!(equal);
        }
    }

    #[test]
    fn canonicalize_is_idempotent(seed in any::<u64>(), k in 0usize..3) {
        let d = [Domain::Integer, Domain::Rational, Domain::Prime(7)][k];
        let mut rng = sample::rng(seed);
        let c = Class22::canonicalize(&sample::form22(&mut rng, d, 9)).unwrap();
        prop_assert_eq!(Class22::canonicalize(c.representative()).unwrap(), c);
    }

    #[test]
    fn gram_contractions_round_trip(seed in any::<u64>(), over_field in any::<bool>()) {
        let d = if over_field { Domain::Prime(101) } else { Domain::Rational };
        let mut rng = sample::rng(seed);
        let c = Class22::canonicalize(&sample::form22(&mut rng, d, 9)).unwrap();
        let g = gram_pair(&c).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                prop_assert_eq!(&g.qx[i][j], &g.qx[j][i]);
                prop_assert_eq!(&g.qz[i][j], &g.qz[j][i]);
            }
        }
        prop_assert_eq!(&contract(&g.qx, 3), c.representative());
        prop_assert_eq!(&contract(&g.qz, 0), c.representative());
    }

    #[test]
    fn covariants_ignore_the_representative(seed in any::<u64>()) {
        let d = Domain::Rational;
        let mut rng = sample::rng(seed);
        let raw = sample::form22(&mut rng, d, 9);
        let c = Class22::canonicalize(&raw).unwrap();
        prop_assert_eq!(covariant_ix(&c).unwrap(), covariant_ix_raw(&raw).unwrap());
        prop_assert_eq!(covariant_iz(&c).unwrap(), covariant_iz_raw(&raw).unwrap());
    }
}

#[test]
fn integrality_probe() {
    let mut rng = sample::rng(9);
    let four = Scalar::from_i64(Domain::Rational, 4);
    let mut non_integral = 0;
    for _ in 0..200 {
        let c = Class22::canonicalize(&sample::form22(&mut rng, Domain::Integer, 9)).unwrap();
        for cov in [covariant_ix(&c).unwrap(), covariant_iz(&c).unwrap()] {
            assert!(try_integral(&cov.scale(&four).unwrap()).is_some());
            non_integral += try_integral(&cov).is_none() as usize;
        }
    }
    // random classes do leave the integers; the smallest witness:
    let c = Class22::parse("x1^2*z2*z3", None).unwrap();
    let ix = covariant_ix(&c).unwrap();
    assert_eq!(ix.to_string(), "-1/4*x1^6");
    assert!(try_integral(&ix).is_none());
    assert!(covariant_iz(&c).unwrap().is_zero());
    assert!(non_integral > 0);
}

#[test]
fn singular_covariant_is_not_generic() {
    let p = 11;
    let mut rng = sample::rng(10);
    for _ in 0..2000 {
        let c = Class22::canonicalize(&sample::form22(&mut rng, Domain::Integer, 5)).unwrap();
        let cbar = c.reduce_mod_p(p).unwrap();
        let ix = covariant_ix(&cbar).unwrap();
        if ix.is_zero() || singular_points(&ix, false).unwrap().is_empty() {
            continue;
        }
        let report = genericity_mod_p(&c, p).unwrap();
        assert!(!report.generic);
        return;
    }
    panic!("no class with a singular I_x point found");
}

#[test]
fn genericity_preconditions() {
    let c = Class22::parse("x1^2*z2^2 + x2^2*z3^2 + x3^2*z1^2", None).unwrap();
    assert_eq!(is_generic_mod_p(&c, 2), Err(Error::NoHalving));
    assert!(matches!(is_generic_mod_p(&c, 9), Err(Error::NotPrime(9))));
    let mut rng = sample::rng(12);
    let f = Class22::canonicalize(&sample::form22(&mut rng, Domain::Integer, 9)).unwrap();
    assert!(matches!(is_generic_mod_p(&f, 3), Err(Error::NormalizationPrime { p: 3, .. })));
}
