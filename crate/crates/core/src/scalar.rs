//! Exact coefficients: big integers, big rationals and prime-field residues.
//!
//! Every [`Scalar`] carries its [`Domain`]. Arithmetic between two different
//! domains is an error; conversions are always explicit.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};

/// Coefficient ring tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Integer,
    Rational,
    /// The prime field of the given characteristic.
    Prime(u64),
}

impl Domain {
    /// Validates the modulus and builds a prime-field tag.
    pub fn prime(p: u64) -> Result<Domain> {
        if arith::is_prime(p) {
            Ok(Domain::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Domain::Integer)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Domain::Prime(p) => p,
            _ => 0,
        }
    }

    /// Whether 2 is invertible, i.e. Gram matrices with halved
    /// off-diagonal entries can be formed.
    pub fn admits_halving(self) -> bool {
        match self {
            Domain::Integer => false,
            Domain::Rational => true,
            Domain::Prime(p) => p != 2,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Integer => write!(f, "ZZ"),
            Domain::Rational => write!(f, "QQ"),
            Domain::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// An exact scalar.
///
/// Rationals are kept in lowest terms with positive denominator (guaranteed
/// by `BigRational`); residues are kept in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Mod { value: u64, p: u64 },
}

impl Scalar {
    pub fn zero(domain: Domain) -> Scalar {
        Scalar::from_i64(domain, 0)
    }

    pub fn one(domain: Domain) -> Scalar {
        Scalar::from_i64(domain, 1)
    }

    pub fn from_i64(domain: Domain, v: i64) -> Scalar {
        Scalar::from_bigint(domain, &BigInt::from(v))
    }

    pub fn from_bigint(domain: Domain, v: &BigInt) -> Scalar {
        match domain {
            Domain::Integer => Scalar::Int(v.clone()),
            Domain::Rational => Scalar::Rat(BigRational::from_integer(v.clone())),
            Domain::Prime(p) => Scalar::Mod { value: arith::bigint_mod(v, p), p },
        }
    }

    /// Builds a residue, reducing `value` into `[0, p)`.
    pub fn modular(value: u64, p: u64) -> Scalar {
        Scalar::Mod { value: value % p, p }
    }

    /// Converts a rational into `domain`. Fails when the value is not
    /// integral (for `Integer`) or its denominator vanishes mod p.
    pub fn from_rational(domain: Domain, q: &BigRational) -> Result<Scalar> {
        match domain {
            Domain::Integer => {
                if q.is_integer() {
                    Ok(Scalar::Int(q.to_integer()))
                } else {
                    Err(Error::NotIntegral(q.to_string()))
                }
            }
            Domain::Rational => Ok(Scalar::Rat(q.clone())),
            Domain::Prime(p) => {
                let num = arith::bigint_mod(q.numer(), p);
                let den = arith::bigint_mod(q.denom(), p);
                if den == 0 {
                    return Err(Error::NotInvertible(format!("{q} mod {p}")));
                }
                Ok(Scalar::Mod { value: arith::mul_mod(num, arith::inv_mod(den, p), p), p })
            }
        }
    }

    pub fn domain(&self) -> Domain {
        match self {
            Scalar::Int(_) => Domain::Integer,
            Scalar::Rat(_) => Domain::Rational,
            Scalar::Mod { p, .. } => Domain::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_zero(),
            Scalar::Rat(v) => v.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_one(),
            Scalar::Rat(v) => v.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    /// Sign used for printing and content normalization. Residues are
    /// never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_negative(),
            Scalar::Rat(v) => v.is_negative(),
            Scalar::Mod { .. } => false,
        }
    }

    /// Value as a rational, for integer and rational scalars.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Int(v) => Some(BigRational::from_integer(v.clone())),
            Scalar::Rat(v) => Some(v.clone()),
            Scalar::Mod { .. } => None,
        }
    }

    /// Integer value, when the scalar is an integer or an integral rational.
    pub fn to_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Int(v) => Some(v.clone()),
            Scalar::Rat(v) if v.is_integer() => Some(v.to_integer()),
            _ => None,
        }
    }

    /// Converts into another domain: `Int -> Rat`, `Int/Rat -> GF(p)`,
    /// `Rat -> Int` when integral, identity otherwise.
    pub fn convert(&self, target: Domain) -> Result<Scalar> {
        if self.domain() == target {
            return Ok(self.clone());
        }
        match self {
            Scalar::Int(v) => Ok(Scalar::from_bigint(target, v)),
            Scalar::Rat(v) => Scalar::from_rational(target, v),
            Scalar::Mod { p, .. } => Err(Error::DomainMismatch {
                left: Domain::Prime(*p),
                right: target,
            }),
        }
    }

    fn check(&self, other: &Scalar) -> Result<()> {
        if self.domain() == other.domain() {
            Ok(())
        } else {
            Err(Error::DomainMismatch { left: self.domain(), right: other.domain() })
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self * other)
    }

    /// Multiplicative inverse. Integers only invert to `±1`.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::NotInvertible(self.to_string()));
        }
        match self {
            Scalar::Int(v) => {
                if v.abs().is_one() {
                    Ok(self.clone())
                } else {
                    Err(Error::NotInvertible(format!("{v} in ZZ")))
                }
            }
            Scalar::Rat(v) => Ok(Scalar::Rat(v.recip())),
            Scalar::Mod { value, p } => Ok(Scalar::Mod { value: arith::inv_mod(*value, *p), p: *p }),
        }
    }

    /// Exact division; over the integers the quotient must be exact.
    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => {
                if b.is_zero() {
                    return Err(Error::NotInvertible("0".into()));
                }
                let (q, r) = a.div_rem(b);
                if r.is_zero() {
                    Ok(Scalar::Int(q))
                } else {
                    Err(Error::NotIntegral(format!("{a}/{b}")))
                }
            }
            _ => Ok(self * &other.inv()?),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        match self {
            Scalar::Int(v) => Scalar::Int(num_traits::pow(v.clone(), e as usize)),
            Scalar::Rat(v) => Scalar::Rat(num_traits::pow(v.clone(), e as usize)),
            Scalar::Mod { value, p } => Scalar::Mod { value: arith::pow_mod(*value, e as u64, *p), p: *p },
        }
    }

    /// Signed power; negative exponents need an invertible base.
    pub fn powi(&self, e: i64) -> Result<Scalar> {
        if e >= 0 {
            Ok(self.pow(u32::try_from(e).map_err(|_| Error::ExponentOverflow)?))
        } else {
            Ok(self.inv()?.pow(u32::try_from(-e).map_err(|_| Error::ExponentOverflow)?))
        }
    }

    /// Parses `"a"` or `"a/b"` into `domain`.
    pub fn parse(text: &str, domain: Domain) -> Result<Scalar> {
        let q = arith::parse_rational(text)?;
        Scalar::from_rational(domain, &q)
    }

    /// Residue for prime-field scalars.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Mod { value, .. } => Some(*value),
            _ => None,
        }
    }

    /// Small-integer view, handy in tests.
    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|v| v.to_i64())
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar domain mismatch: {} vs {}", a.domain(), b.domain())
}

// The operator impls assume both operands are in one domain; containers
// validate that before combining coefficients, so a mismatch here is a bug.
impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a + b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                Scalar::Mod { value: arith::add_mod(*a, *b, *p), p: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a - b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                Scalar::Mod { value: arith::sub_mod(*a, *b, *p), p: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a * b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                Scalar::Mod { value: arith::mul_mod(*a, *b, *p), p: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(-a),
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, p } => Scalar::Mod { value: arith::sub_mod(0, *value, *p), p: *p },
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Rat(v) => {
                if v.denom().is_one() {
                    write!(f, "{}", v.numer())
                } else {
                    write!(f, "{}/{}", v.numer(), v.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Absolute value for integer/rational scalars; residues are returned as is.
pub fn abs(s: &Scalar) -> Scalar {
    match s {
        Scalar::Int(v) => Scalar::Int(v.abs()),
        Scalar::Rat(v) => Scalar::Rat(v.abs()),
        m => m.clone(),
    }
}
