//! Macaulay resultants of three ternary forms and the discriminant of a
//! plane curve as the resultant of its three partial derivatives.
//!
//! The resultant is `det(M) / det(M')`, where `M` is the Macaulay matrix at
//! the critical degree `3(d - 1) + 1` (rows: multiples of `x^d`, then `y^d`,
//! then `z^d`) and `M'` is its minor on the monomials divisible by at least
//! two of `x^d, y^d, z^d`. When `det(M')` vanishes the three forms are moved
//! by a pseudorandom unimodular substitution, which leaves the resultant
//! unchanged, and the construction is retried.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{monomials_of_degree, Monomial, Poly, VarSet};
use crate::scalar::{Domain, Scalar};

/// Attempts (including the untransformed one) before giving up on a
/// vanishing `det(M')`.
pub const MAX_ATTEMPTS: usize = 8;

/// Three ternary forms of common degree, with the Macaulay monomial layout.
#[derive(Clone, Debug)]
pub struct MacaulayProblem {
    forms: [Poly; 3],
    degree: u32,
    basis: Vec<Monomial>,
}

impl MacaulayProblem {
    pub fn new(g1: &Poly, g2: &Poly, g3: &Poly) -> Result<MacaulayProblem> {
        let forms = [g1.clone(), g2.clone(), g3.clone()];
        let mut degree = None;
        for g in &forms {
            if g.vars().len() != 3 {
                return Err(Error::DimensionMismatch { expected: 3, got: g.vars().len() });
            }
            if g.vars() != g1.vars() {
                return Err(Error::VarSetMismatch { left: g1.vars().to_string(), right: g.vars().to_string() });
            }
            if g.domain() != g1.domain() {
                return Err(Error::DomainMismatch { left: g1.domain(), right: g.domain() });
            }
            if g.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            let d = g.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
            if d == 0 {
                return Err(Error::Degree("forms must have degree at least 1".into()));
            }
            match degree {
                None => degree = Some(d),
                Some(e) if e != d => return Err(Error::Degree(format!("unequal degrees {e} and {d}"))),
                _ => {}
            }
        }
        let degree = u32::try_from(degree.expect("three forms")).map_err(|_| Error::ExponentOverflow)?;
        let basis = monomials_of_degree(3, Self::critical_degree_for(degree));
        Ok(MacaulayProblem { forms, degree, basis })
    }

    fn critical_degree_for(d: u32) -> u32 {
        3 * (d - 1) + 1
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn critical_degree(&self) -> u32 {
        Self::critical_degree_for(self.degree)
    }

    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn domain(&self) -> Domain {
        self.forms[0].domain()
    }

    /// Which form's row a critical-degree monomial belongs to: the first
    /// variable whose exponent reaches `d`.
    fn owner(&self, m: &Monomial) -> usize {
        (0..3).find(|&i| m.0[i] >= self.degree).expect("critical degree forces a large exponent")
    }

    /// Monomials divisible by at least two of `x^d, y^d, z^d`.
    fn non_reduced(&self) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|&k| self.basis[k].0.iter().filter(|&&e| e >= self.degree).count() >= 2)
            .collect()
    }

    /// The square Macaulay matrix, row k being `(basis[k] / x_i^d) * g_i`.
    pub fn matrix(&self) -> Matrix {
        let n = self.basis.len();
        let col: HashMap<&Monomial, usize> = self.basis.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let mut out = Matrix::zeros(n, n, self.domain());
        for (k, m) in self.basis.iter().enumerate() {
            let i = self.owner(m);
            let mut shift = m.clone();
            shift.0[i] -= self.degree;
            for (t, c) in self.forms[i].terms() {
                let target = shift.checked_mul(t).expect("small exponents");
                out.set(k, col[&target], c.clone());
            }
        }
        out
    }

    fn minor(&self, full: &Matrix) -> Matrix {
        let idx = self.non_reduced();
        let mut out = Matrix::zeros(idx.len(), idx.len(), self.domain());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out.set(a, b, full.get(i, j).clone());
            }
        }
        out
    }

    /// `(det M, det M')` for the current forms.
    fn determinants(&self) -> (Scalar, Scalar) {
        let m = self.matrix();
        let mp = self.minor(&m);
        (m.det().expect("square"), mp.det().expect("square"))
    }

    fn transformed(&self, change: &Matrix) -> Result<MacaulayProblem> {
        let change = change.to_domain(self.domain())?;
        let moved = self
            .forms
            .iter()
            .map(|g| g.substitute_linear(&change))
            .collect::<Result<Vec<_>>>()?;
        MacaulayProblem::new(&moved[0], &moved[1], &moved[2])
    }
}

/// Deterministic unimodular matrix `L * U` (unit triangular factors with
/// small entries) for retry `attempt`.
pub fn unimodular_change(attempt: usize) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d61_6361_756c_6179 ^ attempt as u64);
    let mut l = [[0i64; 3]; 3];
    let mut u = [[0i64; 3]; 3];
    for i in 0..3 {
        l[i][i] = 1;
        u[i][i] = 1;
        for j in 0..i {
            l[i][j] = rng.gen_range(-3..=3);
            u[j][i] = rng.gen_range(-3..=3);
        }
    }
    let mut entries = [0i64; 9];
    for i in 0..3 {
        for j in 0..3 {
            entries[i * 3 + j] = (0..3).map(|k| l[i][k] * u[k][j]).sum();
        }
    }
    Matrix::from_i64(3, 3, Domain::Integer, &entries)
}

fn resultant_attempts(problem: &MacaulayProblem) -> Result<Option<Scalar>> {
    for attempt in 0..MAX_ATTEMPTS {
        let current = if attempt == 0 {
            problem.clone()
        } else {
            problem.transformed(&unimodular_change(attempt))?
        };
        let (dm, dmp) = current.determinants();
        if dmp.is_zero() {
            continue;
        }
        return dm.try_div(&dmp).map(Some);
    }
    Ok(None)
}

fn integer_resultant(problem: &MacaulayProblem) -> Result<BigInt> {
    match resultant_attempts(problem)? {
        Some(v) => Ok(v.to_integer().expect("integer resultant")),
        None => Err(Error::DegenerateMacaulay { attempts: MAX_ATTEMPTS }),
    }
}

/// The classical resultant of three ternary forms of equal degree `d >= 1`,
/// normalized by `Res(x^d, y^d, z^d) = 1`.
pub fn macaulay_resultant(g1: &Poly, g2: &Poly, g3: &Poly) -> Result<Scalar> {
    let problem = MacaulayProblem::new(g1, g2, g3)?;
    let d = problem.degree();
    match problem.domain() {
        Domain::Integer => Ok(Scalar::Int(integer_resultant(&problem)?)),
        Domain::Rational => {
            // Res is multihomogeneous of degree d^2 in each form.
            let mut forms = Vec::with_capacity(3);
            let mut scale = BigInt::one();
            for g in [g1, g2, g3] {
                let l = g.terms().fold(BigInt::one(), |acc, (_, c)| {
                    acc.lcm(c.to_rational().expect("rational").denom())
                });
                let scaled = g.scale(&Scalar::from_bigint(Domain::Rational, &l))?.to_domain(Domain::Integer)?;
                forms.push(scaled);
                scale *= num_traits::pow(l, (d * d) as usize);
            }
            let int_problem = MacaulayProblem::new(&forms[0], &forms[1], &forms[2])?;
            let r = integer_resultant(&int_problem)?;
            Ok(Scalar::Rat(num_rational::BigRational::new(r, scale)))
        }
        Domain::Prime(p) => {
            if let Some(v) = resultant_attempts(&problem)? {
                return Ok(v);
            }
            // Small fields run out of good substitutions; the resultant is an
            // integer polynomial in the coefficients, so lift and reduce.
            let lifted = [g1, g2, g3]
                .iter()
                .map(|g| lift_to_integers(g))
                .collect::<Result<Vec<_>>>()?;
            let int_problem = MacaulayProblem::new(&lifted[0], &lifted[1], &lifted[2])?;
            let r = integer_resultant(&int_problem)?;
            Ok(Scalar::Mod { value: arith::bigint_mod(&r, p), p })
        }
    }
}

/// Canonical-residue lift of a GF(p) polynomial to the integers.
pub fn lift_to_integers(g: &Poly) -> Result<Poly> {
    let terms = g
        .terms()
        .map(|(m, c)| match c.residue() {
            Some(v) => Ok((m.clone(), Scalar::from_bigint(Domain::Integer, &BigInt::from(v)))),
            None => Err(Error::DomainMismatch { left: Domain::Prime(0), right: c.domain() }),
        })
        .collect::<Result<Vec<_>>>()?;
    Poly::from_terms(g.vars(), Domain::Integer, terms)
}

fn check_ternary_form(f: &Poly) -> Result<u32> {
    if f.vars().len() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: f.vars().len() });
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if n < 2 {
        return Err(Error::Degree(format!("discriminant needs degree >= 2, got {n}")));
    }
    u32::try_from(n).map_err(|_| Error::ExponentOverflow)
}

/// `Res(df/dx, df/dy, df/dz)`. A vanishing partial means the partials share
/// a common zero, so the value is 0.
pub fn raw_discriminant(f: &Poly) -> Result<Scalar> {
    check_ternary_form(f)?;
    let partials: Vec<Poly> = (0..3).map(|i| f.derivative_index(i)).collect();
    if partials.iter().any(Poly::is_zero) {
        return Ok(Scalar::zero(f.domain()));
    }
    macaulay_resultant(&partials[0], &partials[1], &partials[2])
}

/// Probabilistic normalization constant for degree-n discriminants: the
/// positive gcd of raw discriminants of pseudorandom integer forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationConstant {
    pub degree: u32,
    #[serde(with = "bigint_string")]
    pub value: BigInt,
    pub samples: usize,
    pub seed: u64,
    pub coefficient_bound: i64,
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub const NORMALIZATION_SAMPLES: usize = 64;
pub const NORMALIZATION_SEED: u64 = 0x00c0_ffee;
pub const NORMALIZATION_BOUND: i64 = 10;

/// A random homogeneous integer form of degree `n` in x, y, z with
/// coefficients in `[-bound, bound]`.
pub fn random_integer_form<R: Rng>(rng: &mut R, n: u32, bound: i64) -> Poly {
    let vars = VarSet::xyz();
    let terms = monomials_of_degree(3, n)
        .into_iter()
        .map(|m| (m, Scalar::from_i64(Domain::Integer, rng.gen_range(-bound..=bound))));
    Poly::from_terms(&vars, Domain::Integer, terms).expect("integer terms")
}

pub fn derive_normalization_constant(n: u32, samples: usize, seed: u64, bound: i64) -> Result<NormalizationConstant> {
    if n < 2 {
        return Err(Error::Degree(format!("discriminant needs degree >= 2, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
    let forms: Vec<Poly> = (0..samples).map(|_| random_integer_form(&mut rng, n, bound)).collect();
    let mut g = BigInt::zero();
    for f in &forms {
        if f.is_zero() {
            continue;
        }
        let raw = raw_discriminant(f)?.to_integer().expect("integer");
        g = g.gcd(&raw);
    }
    if g.is_zero() {
        return Err(Error::Config(format!("all {samples} sampled degree-{n} forms were singular")));
    }
    Ok(NormalizationConstant { degree: n, value: g.abs(), samples, seed, coefficient_bound: bound })
}

fn constant_cache() -> &'static Mutex<HashMap<u32, NormalizationConstant>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, NormalizationConstant>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The cached constant for degree n, derived on first use with the default
/// sampling parameters.
pub fn normalization_constant(n: u32) -> Result<NormalizationConstant> {
    if let Some(c) = constant_cache().lock().expect("cache lock").get(&n) {
        return Ok(c.clone());
    }
    let c = derive_normalization_constant(n, NORMALIZATION_SAMPLES, NORMALIZATION_SEED, NORMALIZATION_BOUND)?;
    constant_cache().lock().expect("cache lock").insert(n, c.clone());
    Ok(c)
}

/// Installs a previously derived constant (e.g. from a config file) after a
/// spot check that it divides the raw discriminants of a few fresh samples.
pub fn install_normalization_constant(c: NormalizationConstant) -> Result<()> {
    if c.value <= BigInt::zero() {
        return Err(Error::Config(format!("constant for degree {} must be positive", c.degree)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed.wrapping_add(1));
    for _ in 0..4 {
        let f = random_integer_form(&mut rng, c.degree, c.coefficient_bound);
        let raw = raw_discriminant(&f)?.to_integer().expect("integer");
        if !raw.is_multiple_of(&c.value) {
            return Err(Error::Config(format!(
                "constant {} does not divide a sampled degree-{} discriminant",
                c.value, c.degree
            )));
        }
    }
    constant_cache().lock().expect("cache lock").insert(c.degree, c);
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantReport {
    pub raw: Scalar,
    pub constant: BigInt,
    pub normalized: Scalar,
    /// `3(n - 1)^2`, the degree of the discriminant in the coefficients.
    pub degree_check: u64,
}

/// Raw and (optionally) normalized discriminant of a ternary n-ic form.
pub fn discriminant_n(f: &Poly, normalize: bool) -> Result<DiscriminantReport> {
    let n = check_ternary_form(f)?;
    let raw = raw_discriminant(f)?;
    let degree_check = 3 * (n as u64 - 1).pow(2);
    if !normalize {
        return Ok(DiscriminantReport { normalized: raw.clone(), raw, constant: BigInt::one(), degree_check });
    }
    let constant = normalization_constant(n)?.value;
    if let Domain::Prime(p) = f.domain() {
        if arith::bigint_mod(&constant, p) == 0 {
            return Err(Error::NormalizationPrime { p, constant: constant.to_string() });
        }
    }
    let normalized = raw.try_div(&Scalar::from_bigint(f.domain(), &constant))?;
    Ok(DiscriminantReport { raw, constant, normalized, degree_check })
}

/// Whether the reduction of the integer form `f` mod p is a smooth curve.
///
/// For p not dividing the normalization constant this is the nonvanishing of
/// the raw resultant over GF(p). Otherwise the normalized integer
/// discriminant is reduced mod p, since the raw resultant vanishes
/// identically there.
pub fn is_smooth_mod_p(f: &Poly, p: u64) -> Result<bool> {
    if f.domain() != Domain::Integer {
        return Err(Error::DomainMismatch { left: Domain::Integer, right: f.domain() });
    }
    let n = check_ternary_form(f)?;
    let fbar = f.reduce_mod_p(p)?;
    if fbar.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let constant = normalization_constant(n)?.value;
    if arith::bigint_mod(&constant, p) != 0 {
        return Ok(!raw_discriminant(&fbar)?.is_zero());
    }
    let raw = raw_discriminant(f)?.to_integer().expect("integer");
    let (normalized, rem) = raw.div_rem(&constant);
    if !rem.is_zero() {
        return Err(Error::NotIntegral(format!("{raw}/{constant}")));
    }
    Ok(arith::bigint_mod(&normalized, p) != 0)
}

/// Smoothness of a form already over GF(p), from the raw resultant; refused
/// when p divides the normalization constant.
pub fn is_smooth_over_prime_field(fbar: &Poly) -> Result<bool> {
    let Domain::Prime(p) = fbar.domain() else {
        return Err(Error::DomainMismatch { left: Domain::Prime(0), right: fbar.domain() });
    };
    let n = check_ternary_form(fbar)?;
    let constant = normalization_constant(n)?.value;
    if arith::bigint_mod(&constant, p) == 0 {
        return Err(Error::NormalizationPrime { p, constant: constant.to_string() });
    }
    Ok(!raw_discriminant(fbar)?.is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadPrimes {
    /// Primes outside S dividing the normalized discriminant, ascending.
    pub primes: Vec<u64>,
    /// What is left after trial division; 1 when fully factored.
    pub cofactor: BigInt,
    pub discriminant: BigInt,
}

pub const DEFAULT_TRIAL_BOUND: u64 = 10_000;

/// Primes of bad reduction outside `s_set`, by trial division of the
/// normalized discriminant up to `trial_bound` (and by the primes of S).
pub fn bad_primes(f: &Poly, s_set: &[u64], trial_bound: u64) -> Result<BadPrimes> {
    if f.domain() != Domain::Integer {
        return Err(Error::DomainMismatch { left: Domain::Integer, right: f.domain() });
    }
    for &p in s_set {
        Domain::prime(p)?;
    }
    let report = discriminant_n(f, true)?;
    let disc = report.normalized.to_integer().expect("integer");
    if disc.is_zero() {
        return Err(Error::SingularCurve);
    }
    let (found, cofactor) = arith::trial_factor(&disc, trial_bound, s_set);
    let primes = found.into_iter().filter(|p| !s_set.contains(p)).collect();
    Ok(BadPrimes { primes, cofactor, discriminant: disc })
}
