//! Sparse multivariate polynomials with exact coefficients.
//!
//! A [`Poly`] is a map from exponent vectors to nonzero [`Scalar`]s over a
//! named, ordered [`VarSet`]. Monomials are ordered graded-lexicographically
//! (first variable largest); terms print in descending order. Two polynomials
//! are equal iff their variable sets, domains and term maps agree.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Domain, Scalar};

/// Ordered list of variable names.
#[derive(Clone, Debug)]
pub struct VarSet(Arc<[String]>);

impl VarSet {
    pub fn new<I, S>(names: I) -> VarSet
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        VarSet(names.into_iter().map(Into::into).collect::<Vec<_>>().into())
    }

    /// `x, y, z`.
    pub fn xyz() -> VarSet {
        VarSet::new(["x", "y", "z"])
    }

    /// `x1, x2, x3, z1, z2, z3`.
    pub fn xz() -> VarSet {
        VarSet::new(["x1", "x2", "x3", "z1", "z2", "z3"])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    /// The variable set extended by further names.
    pub fn extend<I, S>(&self, more: I) -> VarSet
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        VarSet::new(self.0.iter().cloned().chain(more.into_iter().map(Into::into)))
    }
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for VarSet {}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join(","))
    }
}

/// Exponent vector under graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }

    /// `self / other` when `other` divides `self`.
    pub fn divide(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `degree` in `nvars` variables, in
/// descending graded-lex order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == nvars {
            prefix.push(left);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(nvars, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    rec(nvars, degree, &mut Vec::with_capacity(nvars), &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    vars: VarSet,
    domain: Domain,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(vars: &VarSet, domain: Domain) -> Poly {
        Poly { vars: vars.clone(), domain, terms: BTreeMap::new() }
    }

    pub fn constant(vars: &VarSet, c: Scalar) -> Poly {
        let mut p = Poly::zero(vars, c.domain());
        p.push_term(Monomial::one(vars.len()), c);
        p
    }

    pub fn var(vars: &VarSet, domain: Domain, i: usize) -> Poly {
        Poly::monomial(vars, Monomial::var(vars.len(), i), Scalar::one(domain))
    }

    pub fn var_named(vars: &VarSet, domain: Domain, name: &str) -> Result<Poly> {
        let i = vars.index_of(name).ok_or_else(|| Error::UnknownVariable(name.into()))?;
        Ok(Poly::var(vars, domain, i))
    }

    pub fn monomial(vars: &VarSet, m: Monomial, c: Scalar) -> Poly {
        assert_eq!(m.0.len(), vars.len(), "exponent vector length");
        let mut p = Poly::zero(vars, c.domain());
        p.push_term(m, c);
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated monomials. All coefficients must lie in `domain`.
    pub fn from_terms<I>(vars: &VarSet, domain: Domain, terms: I) -> Result<Poly>
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Poly::zero(vars, domain);
        for (m, c) in terms {
            if m.0.len() != vars.len() {
                return Err(Error::DimensionMismatch { expected: vars.len(), got: m.0.len() });
            }
            if c.domain() != domain {
                return Err(Error::DomainMismatch { left: domain, right: c.domain() });
            }
            p.push_term(m, c);
        }
        Ok(p)
    }

    /// Adds `c * m` in place, dropping the term when it cancels.
    fn push_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = &*o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| Scalar::zero(self.domain))
    }

    /// Largest term under graded-lex.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The common degree of all terms, if the polynomial is homogeneous and
    /// nonzero.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    fn compatible(&self, other: &Poly) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VarSetMismatch {
                left: self.vars.to_string(),
                right: other.vars.to_string(),
            });
        }
        if self.domain != other.domain {
            return Err(Error::DomainMismatch { left: self.domain, right: other.domain });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.push_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.push_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.compatible(other)?;
        let mut out = Poly::zero(&self.vars, self.domain);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.push_term(ma.checked_mul(mb)?, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Result<Poly> {
        if c.domain() != self.domain {
            return Err(Error::DomainMismatch { left: self.domain, right: c.domain() });
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), a * c))
            .filter(|(_, a)| !a.is_zero())
            .collect();
        Ok(Poly { vars: self.vars.clone(), domain: self.domain, terms })
    }

    pub fn pow(&self, e: u32) -> Result<Poly> {
        let mut acc = Poly::constant(&self.vars, Scalar::one(self.domain));
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Substitutes `images[i]` for the i-th variable. Images must share a
    /// variable set and this polynomial's domain.
    pub fn compose(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.vars.len() {
            return Err(Error::DimensionMismatch { expected: self.vars.len(), got: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.vars.clone(),
            None => self.vars.clone(),
        };
        for img in images {
            if img.vars != target {
                return Err(Error::VarSetMismatch { left: target.to_string(), right: img.vars.to_string() });
            }
            if img.domain != self.domain {
                return Err(Error::DomainMismatch { left: self.domain, right: img.domain });
            }
        }
        // powers[i][k] = images[i]^k, built lazily up to the largest exponent used
        let mut max_exp = vec![0u32; self.vars.len()];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                max_exp[i] = max_exp[i].max(e);
            }
        }
        let one = Poly::constant(&target, Scalar::one(self.domain));
        let mut powers: Vec<Vec<Poly>> = Vec::with_capacity(images.len());
        for (img, &top) in images.iter().zip(&max_exp) {
            let mut row = vec![one.clone()];
            for k in 1..=top as usize {
                let next = row[k - 1].checked_mul(img)?;
                row.push(next);
            }
            powers.push(row);
        }
        let mut out = Poly::zero(&target, self.domain);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.checked_mul(&powers[i][e as usize])?;
                }
            }
            for (tm, tc) in t.terms {
                out.push_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// `f((v_1, ..., v_k) * m)`: variable `v_j` is replaced by
    /// `sum_i v_i * m[i][j]` (row-vector convention).
    pub fn substitute_linear(&self, m: &Matrix) -> Result<Poly> {
        let k = self.vars.len();
        if m.rows() != k || m.cols() != k {
            return Err(Error::DimensionMismatch { expected: k, got: m.rows().max(m.cols()) });
        }
        if m.domain() != self.domain {
            return Err(Error::DomainMismatch { left: self.domain, right: m.domain() });
        }
        let images: Vec<Poly> = (0..k)
            .map(|j| {
                let mut img = Poly::zero(&self.vars, self.domain);
                for i in 0..k {
                    img.push_term(Monomial::var(k, i), m.get(i, j).clone());
                }
                img
            })
            .collect();
        self.compose(&images)
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Poly> {
        let i = self.vars.index_of(var).ok_or_else(|| Error::UnknownVariable(var.into()))?;
        Ok(self.derivative_index(i))
    }

    pub fn derivative_index(&self, i: usize) -> Poly {
        let mut out = Poly::zero(&self.vars, self.domain);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[i] -= 1;
            out.push_term(dm, c * &Scalar::from_i64(self.domain, e as i64));
        }
        out
    }

    /// Splits an integer polynomial as `content * primitive`, where the
    /// primitive part has coprime coefficients and a positive leading
    /// coefficient.
    pub fn content_and_primitive(&self) -> Result<(Scalar, Poly)> {
        if self.domain != Domain::Integer {
            return Err(Error::DomainMismatch { left: Domain::Integer, right: self.domain });
        }
        let (_, lead) = self.leading_term().ok_or(Error::ZeroPolynomial)?;
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            if let Scalar::Int(v) = c {
                g = g.gcd(v);
            }
        }
        if lead.is_negative() {
            g = -g;
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| match c {
                Scalar::Int(v) => (m.clone(), Scalar::Int(v / &g)),
                _ => unreachable!(),
            })
            .collect();
        Ok((Scalar::Int(g), Poly { vars: self.vars.clone(), domain: self.domain, terms }))
    }

    /// Coefficientwise reduction into `GF(p)`. Reducing a polynomial that is
    /// already over `GF(p)` returns it unchanged.
    pub fn reduce_mod_p(&self, p: u64) -> Result<Poly> {
        let target = Domain::prime(p)?;
        self.to_domain(target)
    }

    /// Coefficientwise conversion (`ZZ -> QQ`, `ZZ/QQ -> GF(p)`, `QQ -> ZZ`
    /// when integral).
    pub fn to_domain(&self, target: Domain) -> Result<Poly> {
        if target == self.domain {
            return Ok(self.clone());
        }
        let mut out = Poly::zero(&self.vars, target);
        for (m, c) in &self.terms {
            out.push_term(m.clone(), c.convert(target)?);
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over a larger variable set containing all
    /// of its variables.
    pub fn embed(&self, target: &VarSet) -> Result<Poly> {
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| target.index_of(n).ok_or_else(|| Error::UnknownVariable(n.clone())))
            .collect::<Result<_>>()?;
        let mut out = Poly::zero(target, self.domain);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] = x;
            }
            out.push_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Evaluates at a point given in the polynomial's domain.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.vars.len() {
            return Err(Error::DimensionMismatch { expected: self.vars.len(), got: point.len() });
        }
        if let Some(bad) = point.iter().find(|s| s.domain() != self.domain) {
            return Err(Error::DomainMismatch { left: self.domain, right: bad.domain() });
        }
        let mut acc = Scalar::zero(self.domain);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Coefficients on the given monomial list (zeros where absent).
    pub fn coefficient_vector(&self, basis: &[Monomial]) -> Vec<Scalar> {
        basis.iter().map(|m| self.coeff(m)).collect()
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.vars.names().to_vec(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermJson { e: m.0.clone(), c: c.to_string() })
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson, domain: Option<Domain>) -> Result<Poly> {
        let vars = VarSet::new(json.vars.iter().cloned());
        let domain = domain.unwrap_or(if json.terms.iter().any(|t| t.c.contains('/')) {
            Domain::Rational
        } else {
            Domain::Integer
        });
        let terms = json
            .terms
            .iter()
            .map(|t| Ok((Monomial(t.e.clone()), Scalar::parse(&t.c, domain)?)))
            .collect::<Result<Vec<_>>>()?;
        Poly::from_terms(&vars, domain, terms)
    }
}

/// `poly_arith` as a single entry point.
pub fn poly_arith(a: &Poly, b: &Poly, op: ArithOp) -> Result<Poly> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
    }
}

// Operator forms panic on incompatible operands; the `checked_*` methods
// are the fallible API.
impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("incompatible polynomials")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("incompatible polynomials")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("incompatible polynomials")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Poly { vars: self.vars.clone(), domain: self.domain, terms }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = crate::scalar::abs(c);
            let mut factors: Vec<String> = Vec::new();
            let is_const = m.0.iter().all(|&e| e == 0);
            if is_const || !mag.is_one() {
                factors.push(mag.to_string());
            }
            for (name, &e) in self.vars.names().iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub e: Vec<u32>,
    pub c: String,
}

/// JSON form `{"vars": [...], "terms": [{"e": [...], "c": "num/den"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token::Num(s.parse().expect("digits")));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

/// Picks `x,y,z` or `x1..x3,z1..z3` from the identifiers used.
fn detect_varset(tokens: &[Token]) -> Result<VarSet> {
    let idents: Vec<&str> = tokens
        .iter()
        .filter_map(|t| match t {
            Token::Ident(s) => Some(s.as_str()),
            _ => None,
        })
        .collect();
    for vs in [VarSet::xyz(), VarSet::xz()] {
        if idents.iter().all(|s| vs.index_of(s).is_some()) {
            return Ok(vs);
        }
    }
    Err(Error::Parse(format!(
        "variables {:?} do not fit the x,y,z or x1..x3,z1..z3 alphabets",
        idents
    )))
}

/// Parses the text syntax, e.g. `3*x1^2*z2^2 - 1/2*x1*x2*z1*z3`.
///
/// Without an explicit variable set, the alphabet is detected. Without an
/// explicit domain, coefficients are rational if any fraction appears and
/// integer otherwise.
pub fn parse_poly(text: &str, vars: Option<&VarSet>, domain: Option<Domain>) -> Result<Poly> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let vars = match vars {
        Some(v) => v.clone(),
        None => detect_varset(&tokens)?,
    };
    let domain = domain.unwrap_or(if tokens.contains(&Token::Slash) {
        Domain::Rational
    } else {
        Domain::Integer
    });
    let n = vars.len();
    let mut pos = 0;
    let mut out = Poly::zero(&vars, domain);
    let mut first = true;
    while pos < tokens.len() {
        let mut negative = false;
        match tokens[pos] {
            Token::Plus => pos += 1,
            Token::Minus => {
                negative = true;
                pos += 1;
            }
            _ if first => {}
            _ => return Err(Error::Parse("expected '+' or '-' between terms".into())),
        }
        first = false;
        let mut coeff = num_rational::BigRational::one();
        let mut exps = vec![0u32; n];
        let mut expect_factor = true;
        while pos < tokens.len() {
            if !expect_factor {
                if tokens[pos] == Token::Star {
                    pos += 1;
                    expect_factor = true;
                    continue;
                }
                break;
            }
            match &tokens[pos] {
                Token::Num(a) => {
                    pos += 1;
                    let mut q = num_rational::BigRational::from_integer(a.clone());
                    if tokens.get(pos) == Some(&Token::Slash) {
                        match tokens.get(pos + 1) {
                            Some(Token::Num(b)) if !b.is_zero() => {
                                q /= num_rational::BigRational::from_integer(b.clone());
                                pos += 2;
                            }
                            _ => return Err(Error::Parse("bad denominator".into())),
                        }
                    }
                    coeff *= q;
                }
                Token::Ident(name) => {
                    pos += 1;
                    let i = vars.index_of(name).ok_or_else(|| Error::UnknownVariable(name.clone()))?;
                    let mut e = 1u32;
                    if tokens.get(pos) == Some(&Token::Caret) {
                        match tokens.get(pos + 1) {
                            Some(Token::Num(k)) => {
                                e = u32::try_from(k).map_err(|_| Error::ExponentOverflow)?;
                                pos += 2;
                            }
                            _ => return Err(Error::Parse("bad exponent".into())),
                        }
                    }
                    exps[i] = exps[i].checked_add(e).ok_or(Error::ExponentOverflow)?;
                }
                other => return Err(Error::Parse(format!("unexpected token {other:?}"))),
            }
            expect_factor = false;
        }
        if expect_factor {
            return Err(Error::Parse("dangling operator".into()));
        }
        if negative {
            coeff = -coeff;
        }
        out.push_term(Monomial(exps), Scalar::from_rational(domain, &coeff)?);
    }
    Ok(out)
}

impl std::str::FromStr for Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Poly> {
        parse_poly(s, None, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn cancellation_and_products() {
        assert_eq!(&p("x + y") + &p("-x"), p("y"));
        assert_eq!(&p("x + y") * &p("x - y"), p("x^2 - y^2"));
        let zero = Poly::zero(&VarSet::xyz(), Domain::Integer);
        assert!((&zero * &p("x^3 + 7*y*z")).is_zero());
    }

    #[test]
    fn mismatches_are_errors() {
        let a = p("x");
        let b = parse_poly("x", None, Some(Domain::Rational)).unwrap();
        assert!(matches!(poly_arith(&a, &b, ArithOp::Add), Err(Error::DomainMismatch { .. })));
        let c = p("x1*z1");
        assert!(matches!(poly_arith(&a, &c, ArithOp::Mul), Err(Error::VarSetMismatch { .. })));
    }

    #[test]
    fn linear_substitutions() {
        let d = Domain::Integer;
        assert_eq!(p("x").substitute_linear(&Matrix::identity(3, d)).unwrap(), p("x"));
        let swap = Matrix::from_i64(3, 3, d, &[0, 1, 0, 1, 0, 0, 0, 0, 1]);
        assert_eq!(p("x").substitute_linear(&swap).unwrap(), p("y"));
        let ones = Matrix::from_i64(3, 3, d, &[1; 9]);
        assert_eq!(p("x + y + z").substitute_linear(&ones).unwrap(), p("3*x + 3*y + 3*z"));
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("x^2").partial_derivative("x").unwrap(), p("2*x"));
        assert!(p("y^3").partial_derivative("x").unwrap().is_zero());
        let f = p("x^3 + y^3 + z^3");
        let euler = ["x", "y", "z"].iter().fold(Poly::zero(f.vars(), f.domain()), |acc, v| {
            let dv = f.partial_derivative(v).unwrap();
            &acc + &(&p(v) * &dv)
        });
        assert_eq!(euler, f.scale(&Scalar::from_i64(Domain::Integer, 3)).unwrap());
        assert!(matches!(f.partial_derivative("w"), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn content() {
        let (c, g) = p("6*x + 9*y").content_and_primitive().unwrap();
        assert_eq!((c.to_i64(), g), (Some(3), p("2*x + 3*y")));
        let (c, g) = p("-2*x").content_and_primitive().unwrap();
        assert_eq!((c.to_i64(), g), (Some(-2), p("x")));
        let f = p("x^2 + 2*y*z - 5*z^2");
        let (c, g) = f.content_and_primitive().unwrap();
        assert_eq!((c.to_i64(), g), (Some(1), f));
        let zero = Poly::zero(&VarSet::xyz(), Domain::Integer);
        assert_eq!(zero.content_and_primitive(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn reduction_mod_p() {
        let r = p("5*x + 3*y").reduce_mod_p(5).unwrap();
        assert_eq!(r, parse_poly("3*y", None, Some(Domain::Prime(5))).unwrap());
        assert_eq!(r.reduce_mod_p(5).unwrap(), r);
        assert_eq!(p("x").reduce_mod_p(9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn fermat_quartic_is_a_fourth_power_mod_2() {
        let f = p("x^4 + y^4 + z^4").reduce_mod_p(2).unwrap();
        let l = p("x + y + z").reduce_mod_p(2).unwrap();
        assert_eq!(l.pow(4).unwrap(), f);
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn text_round_trip() {
        let f = p("3*x1^2*z2^2 - 1/2*x1*x2*z1*z3");
        assert_eq!(f.domain(), Domain::Rational);
        assert_eq!(f.to_string(), "3*x1^2*z2^2 - 1/2*x1*x2*z1*z3");
        let g = parse_poly(&f.to_string(), Some(f.vars()), Some(f.domain())).unwrap();
        assert_eq!(f, g);
        assert_eq!(p("-x^2 + 4 - y").to_string(), "-x^2 - y + 4");
    }

    #[test]
    fn json_round_trip() {
        let f = p("2/3*x*y - z^2 + 5");
        let js = serde_json::to_string(&f.to_json()).unwrap();
        let back: PolyJson = serde_json::from_str(&js).unwrap();
        assert_eq!(Poly::from_json(&back, None).unwrap(), f);
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "x +", "x ** y", "3/0*x", "w + x", "x $ y", "x^"] {
            assert!(bad.parse::<Poly>().is_err(), "{bad}");
        }
    }

    #[test]
    fn monomial_listing() {
        let ms = monomials_of_degree(3, 2);
        let shown: Vec<_> = ms.iter().map(|m| m.0.clone()).collect();
        assert_eq!(
            shown,
            vec![vec![2, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![0, 2, 0], vec![0, 1, 1], vec![0, 0, 2]]
        );
        assert_eq!(monomials_of_degree(3, 7).len(), 36);
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
    }
}
