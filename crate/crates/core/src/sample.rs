//! Seeded pseudorandom inputs for property checks and verification suites.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::gl3::{det3, Mat3};
use crate::poly::{monomials_of_degree, Monomial, Poly, VarSet};
use crate::rep22::bidegree22_monomials;
use crate::scalar::{Domain, Scalar};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> SampleRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index);
    r
}

/// Integers in `[-bound, bound]`; rationals with numerator in that range
/// and denominator in `1..=4`; uniform residues mod p.
pub fn scalar<R: Rng>(rng: &mut R, domain: Domain, bound: i64) -> Scalar {
    match domain {
        Domain::Integer => Scalar::from_i64(domain, rng.gen_range(-bound..=bound)),
        Domain::Rational => {
            let n = Scalar::from_i64(domain, rng.gen_range(-bound..=bound));
            let d = Scalar::from_i64(domain, rng.gen_range(1..=4));
            n.try_div(&d).expect("nonzero denominator")
        }
        Domain::Prime(p) => Scalar::modular(rng.gen_range(0..p), p),
    }
}

pub fn nonzero_scalar<R: Rng>(rng: &mut R, domain: Domain, bound: i64) -> Scalar {
    loop {
        let s = scalar(rng, domain, bound);
        if !s.is_zero() {
            return s;
        }
    }
}

fn form_on<R: Rng>(rng: &mut R, vars: &VarSet, monos: Vec<Monomial>, domain: Domain, bound: i64) -> Poly {
    let terms: Vec<(Monomial, Scalar)> = monos.into_iter().map(|m| (m, scalar(rng, domain, bound))).collect();
    Poly::from_terms(vars, domain, terms).expect("one domain")
}

/// Dense random form of the given degree in `x, y, z`, never zero.
pub fn ternary_form<R: Rng>(rng: &mut R, degree: u32, domain: Domain, bound: i64) -> Poly {
    loop {
        let f = form_on(rng, &VarSet::xyz(), monomials_of_degree(3, degree), domain, bound);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Dense random bidegree-(2,2) form in `x1..x3, z1..z3`.
pub fn form22<R: Rng>(rng: &mut R, domain: Domain, bound: i64) -> Poly {
    form_on(rng, &VarSet::xz(), bidegree22_monomials(), domain, bound)
}

/// Random bidegree-(1,1) form `sum t_ij x_i z_j`.
pub fn form11<R: Rng>(rng: &mut R, domain: Domain, bound: i64) -> Poly {
    let monos = (0..3)
        .flat_map(|i| {
            (0..3).map(move |j| {
                let mut e = vec![0; 6];
                e[i] = 1;
                e[3 + j] = 1;
                Monomial(e)
            })
        })
        .collect();
    form_on(rng, &VarSet::xz(), monos, domain, bound)
}

pub fn mat3<R: Rng>(rng: &mut R, domain: Domain, bound: i64) -> Mat3 {
    let e: [Scalar; 9] = std::array::from_fn(|_| scalar(rng, domain, bound));
    Mat3::new(domain, e).expect("one domain")
}

pub fn invertible_mat3<R: Rng>(rng: &mut R, domain: Domain, bound: i64) -> Mat3 {
    loop {
        let m = mat3(rng, domain, bound);
        if !det3(&m).is_zero() {
            return m;
        }
    }
}

/// Determinant-one matrix as a product of random elementary shears.
pub fn sl3<R: Rng>(rng: &mut R, domain: Domain, bound: i64) -> Mat3 {
    let mut m = Mat3::identity(domain);
    for _ in 0..6 {
        let i = rng.gen_range(0..3);
        let j = (i + rng.gen_range(1..3)) % 3;
        let mut e: [Scalar; 9] = std::array::from_fn(|k| {
            if k % 4 == 0 {
                Scalar::one(domain)
            } else {
                Scalar::zero(domain)
            }
        });
        e[3 * i + j] = scalar(rng, domain, bound);
        m = m.mul(&Mat3::new(domain, e).expect("one domain")).expect("3x3");
    }
    m
}
