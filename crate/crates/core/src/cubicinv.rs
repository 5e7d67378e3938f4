//! Invariants of ternary cubics and the weighted scaling action on
//! invariant tuples.
//!
//! `I` (degree 4) and `J` (degree 6) are stored as coefficient tables over
//! the ten cubic coefficients in the order
//! `x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3`. They are
//! normalized so that on `y^2 z - x^3 - a x z^2 - b z^3` one has `I = -3a`
//! and `J = 27b`. The tables are regenerated by the `cubic_invariant_tables`
//! example.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{exact_rational_root, strip_prime, trial_factor};
use crate::error::{Error, Result};
use crate::poly::{monomials_of_degree, Poly};
use crate::scalar::{Domain, Scalar};

/// `4 I^3 - J^2 = KAPPA * R` where `R` is the raw resultant of the partials.
pub const KAPPA: (i64, i64) = (-1, 16);

pub fn kappa() -> BigRational {
    BigRational::new(KAPPA.0.into(), KAPPA.1.into())
}

/// The ten coefficients of a ternary cubic in table order.
pub fn cubic_coefficients(f: &Poly) -> Result<Vec<Scalar>> {
    if f.vars().len() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: f.vars().len() });
    }
    if f.homogeneous_degree() != Some(3) {
        return Err(Error::Degree("expected a homogeneous ternary cubic".into()));
    }
    Ok(f.coefficient_vector(&monomials_of_degree(3, 3)))
}

fn eval_table(table: &[(i64, i64, [u8; 10])], f: &Poly) -> Result<Scalar> {
    let coeffs = cubic_coefficients(f)?;
    let d = match f.domain() {
        Domain::Integer => Domain::Rational,
        Domain::Prime(2) => return Err(Error::NoHalving),
        d => d,
    };
    let coeffs: Vec<Scalar> = coeffs.iter().map(|c| c.convert(d)).collect::<Result<_>>()?;
    let mut acc = Scalar::zero(d);
    for (num, den, exps) in table {
        let mut t = Scalar::from_i64(d, *num).try_div(&Scalar::from_i64(d, *den))?;
        for (c, &e) in coeffs.iter().zip(exps) {
            if e > 0 {
                t = &t * &c.pow(e as u32);
            }
        }
        acc = &acc + &t;
    }
    Ok(acc)
}

/// Degree-4 invariant. Integer input yields a rational value.
pub fn cubic_i(f: &Poly) -> Result<Scalar> {
    eval_table(I_TERMS, f)
}

/// Degree-6 invariant. Integer input yields a rational value.
pub fn cubic_j(f: &Poly) -> Result<Scalar> {
    eval_table(J_TERMS, f)
}

fn table_poly(table: &[(i64, i64, [u8; 10])]) -> Poly {
    let vars = crate::poly::VarSet::new((0..10).map(|k| format!("c{k}")));
    let terms = table.iter().map(|(n, d, e)| {
        (crate::poly::Monomial(e.iter().map(|&x| x as u32).collect()), Scalar::Rat(BigRational::new((*n).into(), (*d).into())))
    });
    Poly::from_terms(&vars, Domain::Rational, terms).expect("rational table")
}

/// `I` and `J` as polynomials over Q in the coefficient variables
/// `c0..c9` (table order).
pub fn invariant_polynomials() -> (Poly, Poly) {
    (table_poly(I_TERMS), table_poly(J_TERMS))
}

/// `(4 I^3 - J^2) / 27`.
pub fn delta_from_ij(i: &Scalar, j: &Scalar) -> Result<Scalar> {
    let d = match i.domain() {
        Domain::Integer => Domain::Rational,
        d => d,
    };
    let (i, j) = (i.convert(d)?, j.convert(d)?);
    let four = Scalar::from_i64(d, 4);
    let num = (&(&four * &i.pow(3)) - &j.pow(2)).clone();
    num.try_div(&Scalar::from_i64(d, 27))
}

/// Values with positive weights under `lambda . (I_i) = (lambda^{n_i} I_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantTuple {
    #[serde(serialize_with = "ser_rats")]
    values: Vec<BigRational>,
    weights: Vec<u32>,
}

fn ser_rats<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(show_rat))
}

pub fn show_rat(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        q.to_string()
    }
}

impl InvariantTuple {
    pub fn new(values: Vec<BigRational>, weights: Vec<u32>) -> Result<InvariantTuple> {
        if values.is_empty() || values.len() != weights.len() {
            return Err(Error::InvalidWeights(format!("{} values for {} weights", values.len(), weights.len())));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidWeights("weights must be positive".into()));
        }
        Ok(InvariantTuple { values, weights })
    }

    pub fn from_i64(values: &[i64], weights: &[u32]) -> Result<InvariantTuple> {
        InvariantTuple::new(values.iter().map(|&v| BigRational::from_integer(v.into())).collect(), weights.to_vec())
    }

    /// `((I(f), J(f)), (4, 6))` for a cubic over the integers or rationals.
    pub fn of_cubic(f: &Poly) -> Result<InvariantTuple> {
        if !matches!(f.domain(), Domain::Integer | Domain::Rational) {
            return Err(Error::DomainMismatch { left: Domain::Rational, right: f.domain() });
        }
        let i = cubic_i(f)?.to_rational().expect("rational value");
        let j = cubic_j(f)?.to_rational().expect("rational value");
        InvariantTuple::new(vec![i, j], vec![4, 6])
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// gcd of the weights.
    pub fn d(&self) -> u32 {
        self.weights.iter().fold(0, |g, &w| g.gcd(&w))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }
}

/// `I_i -> lambda^{n_i} I_i`.
pub fn scale_tuple(lambda: &BigRational, t: &InvariantTuple) -> Result<InvariantTuple> {
    if lambda.is_zero() {
        return Err(Error::ZeroScale);
    }
    let values = t.values.iter().zip(&t.weights).map(|(v, &w)| v * lambda.pow(w as i32)).collect();
    Ok(InvariantTuple { values, weights: t.weights.clone() })
}

/// Bound for the trial division used when clearing denominators.
const DENOMINATOR_TRIAL_BOUND: u64 = 100_000;

/// Smallest positive integer `lambda` with `lambda^{n_i} I_i` integral for
/// all i. A denominator cofactor left over by trial division is used as a
/// single base, which keeps the result valid though possibly not minimal.
pub fn clearing_scale(t: &InvariantTuple) -> BigInt {
    let mut lambda = BigInt::one();
    let dens: Vec<(&BigInt, u32)> =
        t.values.iter().zip(&t.weights).filter(|(v, _)| !v.is_zero()).map(|(v, &w)| (v.denom(), w)).collect();
    let all = dens.iter().fold(BigInt::one(), |acc, (d, _)| acc.lcm(d));
    if all.is_one() {
        return lambda;
    }
    let (primes, rest) = trial_factor(&all, DENOMINATOR_TRIAL_BOUND, &[]);
    let mut bases: Vec<BigInt> = primes.into_iter().map(BigInt::from).collect();
    if !rest.is_one() {
        bases.push(rest);
    }
    for base in bases {
        let mut need = 0u32;
        for (den, w) in &dens {
            let mut v = 0u32;
            let mut n = (*den).clone();
            while (&n % &base).is_zero() {
                n /= &base;
                v += 1;
            }
            need = need.max(v.div_ceil(*w));
        }
        lambda *= num_traits::pow(base, need as usize);
    }
    lambda
}

/// True iff, after clearing denominators by the weighted action, every
/// prime outside `s_set` fails to divide some entry, i.e. every prime factor
/// of the gcd of the entries lies in `s_set`.
pub fn tuple_in_i_prime(t: &InvariantTuple, s_set: &[u64]) -> Result<bool> {
    if t.is_zero() {
        return Err(Error::ZeroTuple);
    }
    let lambda = BigRational::from_integer(clearing_scale(t));
    let cleared = scale_tuple(&lambda, t)?;
    let mut g = cleared.values.iter().fold(BigInt::zero(), |g, v| g.gcd(v.numer()));
    for &p in s_set {
        g = strip_prime(&g, p);
    }
    Ok(g.is_one())
}

/// Witness of `alpha . t1 = t2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    /// One candidate, or the pair `{a, -a}` when the sign is not determined.
    #[serde(serialize_with = "ser_rats")]
    pub alphas: Vec<BigRational>,
    /// `alpha^d` for the candidates, deduplicated.
    #[serde(serialize_with = "ser_rats")]
    pub alpha_d: Vec<BigRational>,
    /// Every prime in the numerator and denominator of alpha lies in S.
    pub s_unit: bool,
}

/// `(g, u)` with `sum u_i a_i = g = gcd(a)`.
fn bezout(a: &[u32]) -> (i64, Vec<i64>) {
    let mut g = 0i64;
    let mut u: Vec<i64> = vec![0; a.len()];
    for (k, &ak) in a.iter().enumerate() {
        let e = (g).extended_gcd(&(ak as i64));
        // new g = e.x * g + e.y * a_k
        for c in u.iter_mut().take(k) {
            *c *= e.x;
        }
        u[k] = e.y;
        g = e.gcd;
    }
    (g, u)
}

fn is_s_unit(q: &BigRational, s_set: &[u64]) -> bool {
    let strip = |n: &BigInt| s_set.iter().fold(n.abs(), |acc, &p| strip_prime(&acc, p));
    strip(q.numer()).is_one() && strip(q.denom()).is_one()
}

/// Decides whether some `alpha` in Q^x maps `t1` to `t2`; `None` if not.
pub fn tuples_equivalent(t1: &InvariantTuple, t2: &InvariantTuple, s_set: &[u64]) -> Result<Option<Equivalence>> {
    if t1.weights != t2.weights {
        return Err(Error::WeightMismatch);
    }
    if t1.is_zero() {
        return Err(Error::ZeroTuple);
    }
    let mut ratios = Vec::new();
    let mut weights = Vec::new();
    for ((a, b), &w) in t1.values.iter().zip(&t2.values).zip(&t1.weights) {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => {}
            (false, false) => {
                ratios.push(b / a);
                weights.push(w);
            }
            _ => return Ok(None),
        }
    }
    let (g, u) = bezout(&weights);
    let mut alpha_g = BigRational::one();
    for (r, &e) in ratios.iter().zip(&u) {
        alpha_g *= r.pow(e as i32);
    }
    for (r, &w) in ratios.iter().zip(&weights) {
        if alpha_g.pow((w as i64 / g) as i32) != *r {
            return Ok(None);
        }
    }
    let Some(root) = exact_rational_root(&alpha_g, g as u32) else {
        return Ok(None);
    };
    let alphas = if g % 2 == 0 { vec![root.clone(), -root.clone()] } else { vec![root.clone()] };
    let d = t1.d() as i32;
    let mut alpha_d: Vec<BigRational> = alphas.iter().map(|a| a.pow(d)).collect();
    alpha_d.dedup();
    Ok(Some(Equivalence { s_unit: is_s_unit(&root, s_set), alphas, alpha_d }))
}

// Generated by examples/cubic_invariant_tables.rs: (numerator, denominator, exponents).
const I_TERMS: &[(i64, i64, [u8; 10])] = &[
    (9, 1, [1, 0, 0, 1, 0, 0, 0, 1, 0, 1]),
    (-3, 1, [1, 0, 0, 1, 0, 0, 0, 0, 2, 0]),
    (-27, 2, [1, 0, 0, 0, 1, 0, 1, 0, 0, 1]),
    (3, 2, [1, 0, 0, 0, 1, 0, 0, 1, 1, 0]),
    (9, 1, [1, 0, 0, 0, 0, 1, 1, 0, 1, 0]),
    (-3, 1, [1, 0, 0, 0, 0, 1, 0, 2, 0, 0]),
    (-3, 1, [0, 2, 0, 0, 0, 0, 0, 1, 0, 1]),
    (1, 1, [0, 2, 0, 0, 0, 0, 0, 0, 2, 0]),
    (9, 1, [0, 1, 1, 0, 0, 0, 1, 0, 0, 1]),
    (-1, 1, [0, 1, 1, 0, 0, 0, 0, 1, 1, 0]),
    (3, 2, [0, 1, 0, 1, 1, 0, 0, 0, 0, 1]),
    (-1, 1, [0, 1, 0, 1, 0, 1, 0, 0, 1, 0]),
    (-1, 2, [0, 1, 0, 0, 2, 0, 0, 0, 1, 0]),
    (3, 2, [0, 1, 0, 0, 1, 1, 0, 1, 0, 0]),
    (-3, 1, [0, 1, 0, 0, 0, 2, 1, 0, 0, 0]),
    (-3, 1, [0, 0, 2, 0, 0, 0, 1, 0, 1, 0]),
    (1, 1, [0, 0, 2, 0, 0, 0, 0, 2, 0, 0]),
    (-3, 1, [0, 0, 1, 2, 0, 0, 0, 0, 0, 1]),
    (3, 2, [0, 0, 1, 1, 1, 0, 0, 0, 1, 0]),
    (-1, 1, [0, 0, 1, 1, 0, 1, 0, 1, 0, 0]),
    (-1, 2, [0, 0, 1, 0, 2, 0, 0, 1, 0, 0]),
    (3, 2, [0, 0, 1, 0, 1, 1, 1, 0, 0, 0]),
    (1, 1, [0, 0, 0, 2, 0, 2, 0, 0, 0, 0]),
    (-1, 2, [0, 0, 0, 1, 2, 1, 0, 0, 0, 0]),
    (1, 16, [0, 0, 0, 0, 4, 0, 0, 0, 0, 0]),
];

const J_TERMS: &[(i64, i64, [u8; 10])] = &[
    (-729, 4, [2, 0, 0, 0, 0, 0, 2, 0, 0, 2]),
    (243, 2, [2, 0, 0, 0, 0, 0, 1, 1, 1, 1]),
    (-27, 1, [2, 0, 0, 0, 0, 0, 1, 0, 3, 0]),
    (-27, 1, [2, 0, 0, 0, 0, 0, 0, 3, 0, 1]),
    (27, 4, [2, 0, 0, 0, 0, 0, 0, 2, 2, 0]),
    (243, 2, [1, 1, 0, 1, 0, 0, 1, 0, 0, 2]),
    (-81, 2, [1, 1, 0, 1, 0, 0, 0, 1, 1, 1]),
    (9, 1, [1, 1, 0, 1, 0, 0, 0, 0, 3, 0]),
    (-81, 2, [1, 1, 0, 0, 1, 0, 1, 0, 1, 1]),
    (27, 1, [1, 1, 0, 0, 1, 0, 0, 2, 0, 1]),
    (-9, 2, [1, 1, 0, 0, 1, 0, 0, 1, 2, 0]),
    (-81, 2, [1, 1, 0, 0, 0, 1, 1, 1, 0, 1]),
    (27, 1, [1, 1, 0, 0, 0, 1, 1, 0, 2, 0]),
    (-9, 2, [1, 1, 0, 0, 0, 1, 0, 2, 1, 0]),
    (-81, 2, [1, 0, 1, 1, 0, 0, 1, 0, 1, 1]),
    (27, 1, [1, 0, 1, 1, 0, 0, 0, 2, 0, 1]),
    (-9, 2, [1, 0, 1, 1, 0, 0, 0, 1, 2, 0]),
    (-81, 2, [1, 0, 1, 0, 1, 0, 1, 1, 0, 1]),
    (27, 1, [1, 0, 1, 0, 1, 0, 1, 0, 2, 0]),
    (-9, 2, [1, 0, 1, 0, 1, 0, 0, 2, 1, 0]),
    (243, 2, [1, 0, 1, 0, 0, 1, 2, 0, 0, 1]),
    (-81, 2, [1, 0, 1, 0, 0, 1, 1, 1, 1, 0]),
    (9, 1, [1, 0, 1, 0, 0, 1, 0, 3, 0, 0]),
    (-27, 1, [1, 0, 0, 3, 0, 0, 0, 0, 0, 2]),
    (27, 1, [1, 0, 0, 2, 1, 0, 0, 0, 1, 1]),
    (27, 1, [1, 0, 0, 2, 0, 1, 0, 1, 0, 1]),
    (-18, 1, [1, 0, 0, 2, 0, 1, 0, 0, 2, 0]),
    (-81, 4, [1, 0, 0, 1, 2, 0, 0, 1, 0, 1]),
    (-9, 4, [1, 0, 0, 1, 2, 0, 0, 0, 2, 0]),
    (-81, 2, [1, 0, 0, 1, 1, 1, 1, 0, 0, 1]),
    (45, 2, [1, 0, 0, 1, 1, 1, 0, 1, 1, 0]),
    (27, 1, [1, 0, 0, 1, 0, 2, 1, 0, 1, 0]),
    (-18, 1, [1, 0, 0, 1, 0, 2, 0, 2, 0, 0]),
    (135, 8, [1, 0, 0, 0, 3, 0, 1, 0, 0, 1]),
    (9, 8, [1, 0, 0, 0, 3, 0, 0, 1, 1, 0]),
    (-81, 4, [1, 0, 0, 0, 2, 1, 1, 0, 1, 0]),
    (-9, 4, [1, 0, 0, 0, 2, 1, 0, 2, 0, 0]),
    (27, 1, [1, 0, 0, 0, 1, 2, 1, 1, 0, 0]),
    (-27, 1, [1, 0, 0, 0, 0, 3, 2, 0, 0, 0]),
    (-27, 1, [0, 3, 0, 0, 0, 0, 1, 0, 0, 2]),
    (9, 1, [0, 3, 0, 0, 0, 0, 0, 1, 1, 1]),
    (-2, 1, [0, 3, 0, 0, 0, 0, 0, 0, 3, 0]),
    (27, 1, [0, 2, 1, 0, 0, 0, 1, 0, 1, 1]),
    (-18, 1, [0, 2, 1, 0, 0, 0, 0, 2, 0, 1]),
    (3, 1, [0, 2, 1, 0, 0, 0, 0, 1, 2, 0]),
    (27, 4, [0, 2, 0, 2, 0, 0, 0, 0, 0, 2]),
    (-9, 2, [0, 2, 0, 1, 1, 0, 0, 0, 1, 1]),
    (-9, 2, [0, 2, 0, 1, 0, 1, 0, 1, 0, 1]),
    (3, 1, [0, 2, 0, 1, 0, 1, 0, 0, 2, 0]),
    (-9, 4, [0, 2, 0, 0, 2, 0, 0, 1, 0, 1]),
    (3, 2, [0, 2, 0, 0, 2, 0, 0, 0, 2, 0]),
    (27, 1, [0, 2, 0, 0, 1, 1, 1, 0, 0, 1]),
    (-9, 2, [0, 2, 0, 0, 1, 1, 0, 1, 1, 0]),
    (-18, 1, [0, 2, 0, 0, 0, 2, 1, 0, 1, 0]),
    (27, 4, [0, 2, 0, 0, 0, 2, 0, 2, 0, 0]),
    (27, 1, [0, 1, 2, 0, 0, 0, 1, 1, 0, 1]),
    (-18, 1, [0, 1, 2, 0, 0, 0, 1, 0, 2, 0]),
    (3, 1, [0, 1, 2, 0, 0, 0, 0, 2, 1, 0]),
    (-9, 2, [0, 1, 1, 2, 0, 0, 0, 0, 1, 1]),
    (45, 2, [0, 1, 1, 1, 1, 0, 0, 1, 0, 1]),
    (-9, 2, [0, 1, 1, 1, 1, 0, 0, 0, 2, 0]),
    (-81, 2, [0, 1, 1, 1, 0, 1, 1, 0, 0, 1]),
    (3, 2, [0, 1, 1, 1, 0, 1, 0, 1, 1, 0]),
    (-81, 4, [0, 1, 1, 0, 2, 0, 1, 0, 0, 1]),
    (3, 4, [0, 1, 1, 0, 2, 0, 0, 1, 1, 0]),
    (45, 2, [0, 1, 1, 0, 1, 1, 1, 0, 1, 0]),
    (-9, 2, [0, 1, 1, 0, 1, 1, 0, 2, 0, 0]),
    (-9, 2, [0, 1, 1, 0, 0, 2, 1, 1, 0, 0]),
    (-9, 2, [0, 1, 0, 2, 1, 1, 0, 0, 0, 1]),
    (3, 1, [0, 1, 0, 2, 0, 2, 0, 0, 1, 0]),
    (9, 8, [0, 1, 0, 1, 3, 0, 0, 0, 0, 1]),
    (3, 4, [0, 1, 0, 1, 2, 1, 0, 0, 1, 0]),
    (-9, 2, [0, 1, 0, 1, 1, 2, 0, 1, 0, 0]),
    (9, 1, [0, 1, 0, 1, 0, 3, 1, 0, 0, 0]),
    (-3, 8, [0, 1, 0, 0, 4, 0, 0, 0, 1, 0]),
    (9, 8, [0, 1, 0, 0, 3, 1, 0, 1, 0, 0]),
    (-9, 4, [0, 1, 0, 0, 2, 2, 1, 0, 0, 0]),
    (-27, 1, [0, 0, 3, 0, 0, 0, 2, 0, 0, 1]),
    (9, 1, [0, 0, 3, 0, 0, 0, 1, 1, 1, 0]),
    (-2, 1, [0, 0, 3, 0, 0, 0, 0, 3, 0, 0]),
    (-18, 1, [0, 0, 2, 2, 0, 0, 0, 1, 0, 1]),
    (27, 4, [0, 0, 2, 2, 0, 0, 0, 0, 2, 0]),
    (27, 1, [0, 0, 2, 1, 1, 0, 1, 0, 0, 1]),
    (-9, 2, [0, 0, 2, 1, 1, 0, 0, 1, 1, 0]),
    (-9, 2, [0, 0, 2, 1, 0, 1, 1, 0, 1, 0]),
    (3, 1, [0, 0, 2, 1, 0, 1, 0, 2, 0, 0]),
    (-9, 4, [0, 0, 2, 0, 2, 0, 1, 0, 1, 0]),
    (3, 2, [0, 0, 2, 0, 2, 0, 0, 2, 0, 0]),
    (-9, 2, [0, 0, 2, 0, 1, 1, 1, 1, 0, 0]),
    (27, 4, [0, 0, 2, 0, 0, 2, 2, 0, 0, 0]),
    (9, 1, [0, 0, 1, 3, 0, 1, 0, 0, 0, 1]),
    (-9, 4, [0, 0, 1, 2, 2, 0, 0, 0, 0, 1]),
    (-9, 2, [0, 0, 1, 2, 1, 1, 0, 0, 1, 0]),
    (3, 1, [0, 0, 1, 2, 0, 2, 0, 1, 0, 0]),
    (9, 8, [0, 0, 1, 1, 3, 0, 0, 0, 1, 0]),
    (3, 4, [0, 0, 1, 1, 2, 1, 0, 1, 0, 0]),
    (-9, 2, [0, 0, 1, 1, 1, 2, 1, 0, 0, 0]),
    (-3, 8, [0, 0, 1, 0, 4, 0, 0, 1, 0, 0]),
    (9, 8, [0, 0, 1, 0, 3, 1, 1, 0, 0, 0]),
    (-2, 1, [0, 0, 0, 3, 0, 3, 0, 0, 0, 0]),
    (3, 2, [0, 0, 0, 2, 2, 2, 0, 0, 0, 0]),
    (-3, 8, [0, 0, 0, 1, 4, 1, 0, 0, 0, 0]),
    (1, 32, [0, 0, 0, 0, 6, 0, 0, 0, 0, 0]),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn tup(v: &[i64]) -> InvariantTuple {
        InvariantTuple::from_i64(v, &[4, 6]).unwrap()
    }

    #[test]
    fn fermat_cubic_fixture() {
        let f = parse_poly("x^3 + y^3 + z^3", None, None).unwrap();
        assert!(cubic_i(&f).unwrap().is_zero());
        assert_eq!(cubic_j(&f).unwrap(), Scalar::Rat(q(-729, 4)));
    }

    #[test]
    fn weierstrass_normalization() {
        let f = parse_poly("y^2*z - x^3 - 2*x*z^2 - 5*z^3", None, None).unwrap();
        assert_eq!(cubic_i(&f).unwrap(), Scalar::Rat(q(-6, 1)));
        assert_eq!(cubic_j(&f).unwrap(), Scalar::Rat(q(135, 1)));
    }

    #[test]
    fn degree_errors() {
        let f = parse_poly("x^2*y + z^4", None, None).unwrap();
        assert!(matches!(cubic_i(&f), Err(Error::Degree(_))));
        let g = parse_poly("x^3", None, None).unwrap().reduce_mod_p(2).unwrap();
        assert_eq!(cubic_j(&g), Err(Error::NoHalving));
    }

    #[test]
    fn delta_examples() {
        let z = Scalar::zero(Domain::Rational);
        assert!(delta_from_ij(&z, &z).unwrap().is_zero());
        let r = delta_from_ij(&Scalar::from_i64(Domain::Integer, 3), &Scalar::from_i64(Domain::Integer, 6)).unwrap();
        assert_eq!(r, Scalar::Rat(q(8, 3)));
    }

    #[test]
    fn scaling() {
        let t = tup(&[1, 1]);
        assert_eq!(scale_tuple(&q(1, 1), &t).unwrap(), t);
        assert_eq!(scale_tuple(&q(2, 1), &t).unwrap(), tup(&[16, 64]));
        assert_eq!(scale_tuple(&q(0, 1), &t), Err(Error::ZeroScale));
    }

    #[test]
    fn membership() {
        assert!(tuple_in_i_prime(&tup(&[3, 5]), &[]).unwrap());
        assert!(tuple_in_i_prime(&tup(&[4, 8]), &[2]).unwrap());
        assert!(!tuple_in_i_prime(&tup(&[4, 8]), &[]).unwrap());
        // v_7 is 1 on the only nonzero entry
        assert!(!tuple_in_i_prime(&tup(&[0, 7]), &[]).unwrap());
        assert!(tuple_in_i_prime(&tup(&[0, 7]), &[7]).unwrap());
        assert_eq!(tuple_in_i_prime(&tup(&[0, 0]), &[]), Err(Error::ZeroTuple));
    }

    #[test]
    fn clearing_denominators() {
        let t = InvariantTuple::new(vec![q(1, 16), q(-729, 4)], vec![4, 6]).unwrap();
        // 2^4 clears 1/16 and 2^6 clears 1/4
        assert_eq!(clearing_scale(&t), BigInt::from(2));
        let t = InvariantTuple::new(vec![q(1, 2), q(1, 9)], vec![4, 6]).unwrap();
        assert_eq!(clearing_scale(&t), BigInt::from(6));
    }

    #[test]
    fn equivalence_examples() {
        let t = tup(&[1, 1]);
        let same = tuples_equivalent(&t, &t, &[]).unwrap().unwrap();
        assert!(same.s_unit);
        assert!(same.alphas.contains(&q(1, 1)));
        let w = tuples_equivalent(&t, &tup(&[16, 64]), &[2]).unwrap().unwrap();
        assert_eq!(w.alphas, vec![q(2, 1), q(-2, 1)]);
        assert_eq!(w.alpha_d, vec![q(4, 1)]);
        assert!(w.s_unit);
        assert!(!tuples_equivalent(&t, &tup(&[16, 64]), &[3]).unwrap().unwrap().s_unit);
        assert_eq!(tuples_equivalent(&t, &tup(&[16, 32]), &[2]).unwrap(), None);
        let other = InvariantTuple::from_i64(&[1, 1], &[2, 6]).unwrap();
        assert_eq!(tuples_equivalent(&t, &other, &[]), Err(Error::WeightMismatch));
        assert_eq!(tuples_equivalent(&tup(&[0, 0]), &t, &[]), Err(Error::ZeroTuple));
    }

    #[test]
    fn odd_gcd_fixes_the_sign() {
        let a = InvariantTuple::from_i64(&[1, 1], &[2, 3]).unwrap();
        let b = InvariantTuple::from_i64(&[4, -8], &[2, 3]).unwrap();
        let w = tuples_equivalent(&a, &b, &[2]).unwrap().unwrap();
        assert_eq!(w.alphas, vec![q(-2, 1)]);
    }

    #[test]
    fn bezout_identity() {
        let (g, u) = bezout(&[4, 6, 9]);
        assert_eq!(g, 1);
        assert_eq!(4 * u[0] + 6 * u[1] + 9 * u[2], 1);
    }
}
