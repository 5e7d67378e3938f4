//! The 27-dimensional representation V(2,2): bidegree-(2,2) forms in
//! `x1..x3, z1..z3` modulo multiples of `sigma = x1*z1 + x2*z2 + x3*z3`.
//!
//! Canonical representatives are reduced against the nine generators
//! `sigma * x_i * z_j`, whose graded-lex leading monomials `x1*x_i*z1*z_j`
//! are distinct with unit coefficient; a reduced form is one with no
//! monomial divisible by `x1*z1`. The reduction is exact over every domain.
//!
//! The sextic covariants are `I_x = x Adj(Q_x) x^t` and
//! `I_z = z Adj(Q_z) z^t`, where `f = z Q_x z^t = x Q_z x^t` with symmetric
//! Gram matrices (off-diagonal entries halved).

use std::fmt;

use serde::Serialize;

use crate::elimination;
use crate::error::{Error, Result};
use crate::ffield::{projective_points, projective_points_ext, Fp2, Fp2Field};
use crate::poly::{monomials_of_degree, Monomial, Poly, VarSet};
use crate::scalar::{Domain, Scalar};

const X: [usize; 3] = [0, 1, 2];
const Z: [usize; 3] = [3, 4, 5];

/// `sigma = x1*z1 + x2*z2 + x3*z3` over the given variables (whose first six
/// entries must be `x1..x3, z1..z3`).
pub fn sigma(vars: &VarSet, domain: Domain) -> Poly {
    let n = vars.len();
    let terms = (0..3).map(|i| {
        let mut e = vec![0; n];
        e[X[i]] = 1;
        e[Z[i]] = 1;
        (Monomial(e), Scalar::one(domain))
    });
    Poly::from_terms(vars, domain, terms).expect("unit coefficients")
}

fn block_degree(m: &Monomial, block: [usize; 3]) -> u32 {
    block.iter().map(|&i| m.0[i]).sum()
}

fn check_bidegree(f: &Poly) -> Result<()> {
    let names = f.vars().names();
    if names.len() < 6 || names[..6] != VarSet::xz().names()[..] {
        return Err(Error::VarSetMismatch { left: VarSet::xz().to_string(), right: f.vars().to_string() });
    }
    for (m, _) in f.terms() {
        if block_degree(m, X) != 2 || block_degree(m, Z) != 2 {
            return Err(Error::Degree("expected bidegree (2,2) in (x, z)".into()));
        }
    }
    Ok(())
}

/// Generator `sigma * x_i * z_j` and its leading monomial `x1*x_i*z1*z_j`.
fn generator(i: usize, j: usize, vars: &VarSet, domain: Domain) -> (Monomial, Poly) {
    let n = vars.len();
    let mut e = vec![0; n];
    e[X[i]] += 1;
    e[Z[j]] += 1;
    let xz = Poly::monomial(vars, Monomial(e.clone()), Scalar::one(domain));
    e[X[0]] += 1;
    e[Z[0]] += 1;
    (Monomial(e), &sigma(vars, domain) * &xz)
}

/// A V(2,2) element held as its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Class22 {
    rep: Poly,
}

impl Class22 {
    /// Reduces a bidegree-(2,2) form in `x1..x3, z1..z3` modulo the ideal
    /// of `sigma`. Congruent inputs give identical classes.
    pub fn canonicalize(f: &Poly) -> Result<Class22> {
        if f.vars().len() != 6 {
            return Err(Error::DimensionMismatch { expected: 6, got: f.vars().len() });
        }
        check_bidegree(f)?;
        let vars = f.vars().clone();
        let mut gens: Vec<(Monomial, Poly)> =
            (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| generator(i, j, &vars, f.domain())).collect();
        // descending leads: subtracting a generator only touches smaller monomials
        gens.sort_by(|a, b| b.0.cmp(&a.0));
        let mut rep = f.clone();
        for (lead, g) in &gens {
            let c = rep.coeff(lead);
            if !c.is_zero() {
                rep = &rep - &g.scale(&c)?;
            }
        }
        Ok(Class22 { rep })
    }

    /// Parses text in the `x1..x3, z1..z3` alphabet and canonicalizes.
    pub fn parse(text: &str, domain: Option<Domain>) -> Result<Class22> {
        let f = crate::poly::parse_poly(text, Some(&VarSet::xz()), domain)?;
        Class22::canonicalize(&f)
    }

    pub fn zero(domain: Domain) -> Class22 {
        Class22 { rep: Poly::zero(&VarSet::xz(), domain) }
    }

    pub fn representative(&self) -> &Poly {
        &self.rep
    }

    pub fn domain(&self) -> Domain {
        self.rep.domain()
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn reduce_mod_p(&self, p: u64) -> Result<Class22> {
        Class22::canonicalize(&self.rep.reduce_mod_p(p)?)
    }

    pub fn to_domain(&self, d: Domain) -> Result<Class22> {
        Class22::canonicalize(&self.rep.to_domain(d)?)
    }

    /// The 27 monomials a canonical representative may use.
    pub fn reduced_basis() -> Vec<Monomial> {
        bidegree22_monomials().into_iter().filter(|m| !(m.0[X[0]] >= 1 && m.0[Z[0]] >= 1)).collect()
    }
}

impl fmt::Display for Class22 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

/// The 36 monomials of bidegree (2,2), x-part major.
pub fn bidegree22_monomials() -> Vec<Monomial> {
    let quad = monomials_of_degree(3, 2);
    let mut out = Vec::with_capacity(36);
    for a in &quad {
        for b in &quad {
            let mut e = a.0.clone();
            e.extend_from_slice(&b.0);
            out.push(Monomial(e));
        }
    }
    out
}

/// Symmetric Gram matrices of a (2,2) form: `f = z Q_x z^t = x Q_z x^t`.
/// `qx` has x-quadratic entries, `qz` z-quadratic entries (plus any
/// parameter variables beyond the first six).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramPair {
    pub qx: [[Poly; 3]; 3],
    pub qz: [[Poly; 3]; 3],
}

fn halving_domain(d: Domain) -> Result<Domain> {
    match d {
        Domain::Integer => Ok(Domain::Rational),
        d if d.admits_halving() => Ok(d),
        _ => Err(Error::NoHalving),
    }
}

/// Gram matrix of `f` viewed as a quadratic form in `block`; entries are
/// the coefficient polynomials (in the remaining variables).
fn gram_in(f: &Poly, block: [usize; 3]) -> [[Poly; 3]; 3] {
    let vars = f.vars();
    let d = f.domain();
    let half = Scalar::one(d).try_div(&Scalar::from_i64(d, 2)).expect("halving domain");
    let mut q: [[Poly; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| Poly::zero(vars, d)));
    for (m, c) in f.terms() {
        let idx: Vec<usize> =
            (0..3).flat_map(|k| std::iter::repeat(k).take(m.0[block[k]] as usize)).collect();
        debug_assert_eq!(idx.len(), 2);
        let mut rest = m.clone();
        for &b in &block {
            rest.0[b] = 0;
        }
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            q[i][i] = &q[i][i] + &Poly::monomial(vars, rest, c.clone());
        } else {
            let t = Poly::monomial(vars, rest, c * &half);
            q[i][j] = &q[i][j] + &t;
            q[j][i] = &q[j][i] + &t;
        }
    }
    q
}

/// Gram pair of a raw bidegree-(2,2) form. Integer input is promoted to the
/// rationals; characteristic 2 is refused.
pub fn gram_pair_raw(f: &Poly) -> Result<GramPair> {
    check_bidegree(f)?;
    let f = f.to_domain(halving_domain(f.domain())?)?;
    Ok(GramPair { qx: gram_in(&f, Z), qz: gram_in(&f, X) })
}

pub fn gram_pair(class: &Class22) -> Result<GramPair> {
    gram_pair_raw(class.representative())
}

fn adjugate_poly(q: &[[Poly; 3]; 3]) -> [[Poly; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
            let minor = &(&q[rows[0]][cols[0]] * &q[rows[1]][cols[1]]) - &(&q[rows[0]][cols[1]] * &q[rows[1]][cols[0]]);
            if (i + j) % 2 == 0 {
                minor
            } else {
                -&minor
            }
        })
    })
}

/// `v Adj(Q) v^t` with `v` the variables of `block`.
fn sandwich(q: &[[Poly; 3]; 3], block: [usize; 3]) -> Poly {
    let adj = adjugate_poly(q);
    let vars = q[0][0].vars().clone();
    let d = q[0][0].domain();
    let v: Vec<Poly> = block.iter().map(|&k| Poly::var(&vars, d, k)).collect();
    let mut out = Poly::zero(&vars, d);
    for i in 0..3 {
        for j in 0..3 {
            out = &out + &(&(&v[i] * &v[j]) * &adj[i][j]);
        }
    }
    out
}

/// Drops the variables of `drop` (which must not occur) from `f`.
fn project_out(f: &Poly, drop: [usize; 3]) -> Poly {
    let names: Vec<String> = f
        .vars()
        .names()
        .iter()
        .enumerate()
        .filter(|(k, _)| !drop.contains(k))
        .map(|(_, n)| n.clone())
        .collect();
    let keep: Vec<usize> = (0..f.vars().len()).filter(|k| !drop.contains(k)).collect();
    let target = VarSet::new(names);
    let terms = f.terms().map(|(m, c)| {
        debug_assert!(drop.iter().all(|&k| m.0[k] == 0));
        (Monomial(keep.iter().map(|&k| m.0[k]).collect()), c.clone())
    });
    Poly::from_terms(&target, f.domain(), terms).expect("same domain")
}

/// `I_x` of a raw representative, as a form in `x1, x2, x3` (followed by any
/// parameter variables). No canonicalization is applied.
pub fn covariant_ix_raw(f: &Poly) -> Result<Poly> {
    let g = gram_pair_raw(f)?;
    Ok(project_out(&sandwich(&g.qx, X), Z))
}

/// `I_z` of a raw representative, as a form in `z1, z2, z3` (plus
/// parameters).
pub fn covariant_iz_raw(f: &Poly) -> Result<Poly> {
    let g = gram_pair_raw(f)?;
    Ok(project_out(&sandwich(&g.qz, Z), X))
}

/// The x-sextic covariant `x Adj(Q_x) x^t`.
pub fn covariant_ix(class: &Class22) -> Result<Poly> {
    covariant_ix_raw(class.representative())
}

/// The z-sextic covariant `z Adj(Q_z) z^t`.
pub fn covariant_iz(class: &Class22) -> Result<Poly> {
    covariant_iz_raw(class.representative())
}

/// The polynomial with integer coefficients equal to `f`, if there is one.
pub fn try_integral(f: &Poly) -> Option<Poly> {
    f.to_domain(Domain::Integer).ok()
}

/// Checks `I_x(f) == I_x(f + L*sigma)` and the same for `I_z`, on raw
/// representatives. `f` and `L` may carry parameter variables after
/// `x1..x3, z1..z3` (e.g. indeterminate coefficients of `L`).
pub fn verify_well_defined(f: &Poly, l: &Poly) -> Result<bool> {
    if f.vars() != l.vars() {
        return Err(Error::VarSetMismatch { left: f.vars().to_string(), right: l.vars().to_string() });
    }
    for (m, _) in l.terms() {
        if block_degree(m, X) != 1 || block_degree(m, Z) != 1 {
            return Err(Error::Degree("L must have bidegree (1,1)".into()));
        }
    }
    let shifted = &f.clone() + &(l * &sigma(f.vars(), f.domain()));
    Ok(covariant_ix_raw(f)? == covariant_ix_raw(&shifted)? && covariant_iz_raw(f)? == covariant_iz_raw(&shifted)?)
}

/// Which projection of the surface in the flag variety to look at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Projection {
    /// Points `a` in the x-plane; the fibre is the line `sum a_i z_i = 0`
    /// meeting the conic `z Q_x(a) z^t = 0`.
    X,
    /// Points `b` in the z-plane; the fibre is the line `sum b_i x_i = 0`
    /// meeting the conic `x Q_z(b) x^t = 0`.
    Z,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tangency {
    /// Discriminant of the conic restricted to the line, as a binary
    /// quadratic `A u^2 + B u v + C v^2`: `B^2 - 4AC`.
    pub restricted_disc: Scalar,
    /// The restricted quadratic vanishes identically (the line lies in the
    /// conic).
    pub degenerate: bool,
}

/// 3x2 parametrization of the line `sum a_i w_i = 0`: the coordinate of the
/// largest-index nonzero `a_k` is solved for, the other two are free.
fn line_parametrization<T: Clone>(
    a: &[T; 3],
    is_zero: impl Fn(&T) -> bool,
    div: impl Fn(&T, &T) -> T,
    neg: impl Fn(&T) -> T,
    zero: T,
    one: T,
) -> [[T; 2]; 3] {
    let k = (0..3).rev().find(|&i| !is_zero(&a[i])).expect("nonzero point");
    let free: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let mut p: [[T; 2]; 3] = std::array::from_fn(|_| [zero.clone(), zero.clone()]);
    for (col, &i) in free.iter().enumerate() {
        p[i][col] = one.clone();
        p[k][col] = neg(&div(&a[i], &a[k]));
    }
    p
}

fn gram_at(q: &[[Poly; 3]; 3], block: [usize; 3], a: &[Scalar; 3]) -> Result<[[Scalar; 3]; 3]> {
    let n = q[0][0].vars().len();
    let d = q[0][0].domain();
    let mut point = vec![Scalar::zero(d); n];
    for (k, &b) in block.iter().enumerate() {
        point[b] = a[k].clone();
    }
    let mut out: [[Scalar; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| Scalar::zero(d)));
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = q[i][j].eval(&point)?;
        }
    }
    Ok(out)
}

/// Restricts the fibre conic over `a` to the fibre line and returns the
/// discriminant of the resulting binary quadratic.
pub fn tangency_test(class: &Class22, projection: Projection, a: &[Scalar; 3]) -> Result<Tangency> {
    let d = class.domain();
    if !d.admits_halving() {
        return Err(Error::NoHalving);
    }
    if a.iter().all(Scalar::is_zero) {
        return Err(Error::ZeroPolynomial);
    }
    if let Some(bad) = a.iter().find(|s| s.domain() != d) {
        return Err(Error::DomainMismatch { left: d, right: bad.domain() });
    }
    let g = gram_pair(class)?;
    let (q, block) = match projection {
        Projection::X => (&g.qx, X),
        Projection::Z => (&g.qz, Z),
    };
    let qa = gram_at(q, block, a)?;
    let pm = line_parametrization(
        a,
        Scalar::is_zero,
        |x, y| x.try_div(y).expect("nonzero pivot"),
        |x| -x,
        Scalar::zero(d),
        Scalar::one(d),
    );
    // restricted Gram B = P^t Q P
    let mut b: [[Scalar; 2]; 2] = std::array::from_fn(|_| std::array::from_fn(|_| Scalar::zero(d)));
    for r in 0..2 {
        for s in 0..2 {
            let mut acc = Scalar::zero(d);
            for i in 0..3 {
                for j in 0..3 {
                    acc = &acc + &(&(&pm[i][r] * &qa[i][j]) * &pm[j][s]);
                }
            }
            b[r][s] = acc;
        }
    }
    let degenerate = b.iter().flatten().all(Scalar::is_zero);
    let four = Scalar::from_i64(d, 4);
    let restricted_disc = &four * &(&(&b[0][1] * &b[0][1]) - &(&b[0][0] * &b[1][1]));
    Ok(Tangency { restricted_disc, degenerate })
}

/// Gram entries of one projection, as coefficient vectors over the six
/// quadratic monomials of the base plane, for fast evaluation over GF(p^2).
struct FastGram {
    monos: Vec<Monomial>,
    coeffs: [[Vec<u64>; 3]; 3],
}

impl FastGram {
    fn new(q: &[[Poly; 3]; 3], block: [usize; 3]) -> FastGram {
        let monos = monomials_of_degree(3, 2);
        let coeffs = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                monos
                    .iter()
                    .map(|m| {
                        let mut e = vec![0; q[i][j].vars().len()];
                        for (k, &b) in block.iter().enumerate() {
                            e[b] = m.0[k];
                        }
                        q[i][j].coeff(&Monomial(e)).residue().expect("GF(p) entry")
                    })
                    .collect()
            })
        });
        FastGram { monos, coeffs }
    }

    fn degenerate_at(&self, field: &Fp2Field, a: &[Fp2; 3]) -> bool {
        let vals: Vec<Fp2> = self
            .monos
            .iter()
            .map(|m| {
                let mut t = field.one();
                for k in 0..3 {
                    for _ in 0..m.0[k] {
                        t = field.mul(t, a[k]);
                    }
                }
                t
            })
            .collect();
        let mut qa = [[field.zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = field.zero();
                for (c, v) in self.coeffs[i][j].iter().zip(&vals) {
                    if *c != 0 {
                        acc = field.add(acc, field.mul(field.embed(*c), *v));
                    }
                }
                qa[i][j] = acc;
            }
        }
        let zero = field.zero();
        let pm = line_parametrization(
            a,
            |x| *x == zero,
            |x, y| field.mul(*x, field.inv(*y)),
            |x| field.neg(*x),
            zero,
            field.one(),
        );
        for r in 0..2 {
            for s in r..2 {
                let mut acc = zero;
                for i in 0..3 {
                    for j in 0..3 {
                        acc = field.add(acc, field.mul(field.mul(pm[i][r], qa[i][j]), pm[j][s]));
                    }
                }
                if acc != zero {
                    return false;
                }
            }
        }
        true
    }
}

fn show_point(a: &[Scalar; 3]) -> String {
    format!("({}:{}:{})", a[0], a[1], a[2])
}

fn prime_of(d: Domain) -> Result<u64> {
    match d {
        Domain::Prime(2) => Err(Error::NoHalving),
        Domain::Prime(p) => Ok(p),
        other => Err(Error::DomainMismatch { left: Domain::Prime(0), right: other }),
    }
}

/// Which covariant cuts out a branch curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Covariant {
    #[serde(rename = "I_x")]
    Ix,
    #[serde(rename = "I_z")]
    Iz,
}

impl fmt::Display for Covariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Covariant::Ix => "I_x",
            Covariant::Iz => "I_z",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ProjectionTally {
    /// Points whose fibre line is tangent to the fibre conic.
    pub tangent_points: usize,
    pub mismatches_vs_ix: usize,
    pub mismatches_vs_iz: usize,
}

impl ProjectionTally {
    fn resolved(&self) -> Option<Covariant> {
        match (self.mismatches_vs_ix == 0, self.mismatches_vs_iz == 0) {
            (true, false) => Some(Covariant::Ix),
            (false, true) => Some(Covariant::Iz),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchReport {
    pub p: u64,
    pub points: usize,
    pub x_projection: ProjectionTally,
    pub z_projection: ProjectionTally,
    /// The covariant whose zero set matched tangency at every point, if
    /// exactly one did.
    pub x_branch_covariant: Option<Covariant>,
    pub z_branch_covariant: Option<Covariant>,
    /// Points contradicting the resolved (or, if unresolved, the best)
    /// pairing, tagged by projection.
    pub counterexamples: Vec<String>,
}

/// Exhaustive scan over `P^2(GF(p))`: for each point and each projection,
/// compares tangency of the fibre with the vanishing of `I_x` and `I_z`.
pub fn branch_locus_check(class: &Class22) -> Result<BranchReport> {
    let p = prime_of(class.domain())?;
    if class.is_zero() {
        return Err(Error::DegeneratePoint { point: "every point (zero class)".into() });
    }
    let ix = covariant_ix(class)?;
    let iz = covariant_iz(class)?;
    let mut report = BranchReport {
        p,
        points: 0,
        x_projection: ProjectionTally::default(),
        z_projection: ProjectionTally::default(),
        x_branch_covariant: None,
        z_branch_covariant: None,
        counterexamples: Vec::new(),
    };
    let mut disagreements: Vec<(Projection, String, bool, bool)> = Vec::new();
    for pt in projective_points(p) {
        let a = pt.map(|v| Scalar::modular(v, p));
        let ix_zero = ix.eval(&a)?.is_zero();
        let iz_zero = iz.eval(&a)?.is_zero();
        for proj in [Projection::X, Projection::Z] {
            let t = tangency_test(class, proj, &a)?;
            if t.degenerate {
                return Err(Error::DegeneratePoint { point: format!("{} ({:?}-projection)", show_point(&a), proj) });
            }
            let tangent = t.restricted_disc.is_zero();
            let tally = match proj {
                Projection::X => &mut report.x_projection,
                Projection::Z => &mut report.z_projection,
            };
            tally.tangent_points += tangent as usize;
            let bad_x = tangent != ix_zero;
            let bad_z = tangent != iz_zero;
            tally.mismatches_vs_ix += bad_x as usize;
            tally.mismatches_vs_iz += bad_z as usize;
            if bad_x || bad_z {
                disagreements.push((proj, show_point(&a), bad_x, bad_z));
            }
        }
        report.points += 1;
    }
    report.x_branch_covariant = report.x_projection.resolved();
    report.z_branch_covariant = report.z_projection.resolved();
    let pick = |t: &ProjectionTally, r: Option<Covariant>| {
        r.unwrap_or(if t.mismatches_vs_ix <= t.mismatches_vs_iz { Covariant::Ix } else { Covariant::Iz })
    };
    let x_pick = pick(&report.x_projection, report.x_branch_covariant);
    let z_pick = pick(&report.z_projection, report.z_branch_covariant);
    for (proj, pt, bad_x, bad_z) in disagreements {
        let chosen = if proj == Projection::X { x_pick } else { z_pick };
        let bad = match chosen {
            Covariant::Ix => bad_x,
            Covariant::Iz => bad_z,
        };
        if bad {
            report.counterexamples.push(format!("{proj:?}:{pt}"));
        }
    }
    Ok(report)
}

/// Outcome of the good-reduction proxy, with the first failing condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericityReport {
    pub p: u64,
    pub generic: bool,
    pub reason: Option<String>,
}

/// Documented proxy for "the reduction mod p is generic": both covariant
/// sextics of the reduction are nonzero and smooth over GF(p), and neither
/// projection has a degenerate fibre over `P^2(GF(p))` or `P^2(GF(p^2))`.
pub fn genericity_mod_p(class: &Class22, p: u64) -> Result<GenericityReport> {
    Domain::prime(p)?;
    if p == 2 {
        return Err(Error::NoHalving);
    }
    let fbar = class.reduce_mod_p(p)?;
    let fail = |reason: String| Ok(GenericityReport { p, generic: false, reason: Some(reason) });
    if fbar.is_zero() {
        return fail("class reduces to zero".into());
    }
    let g = gram_pair(&fbar)?;
    for (name, cov) in [("I_x", covariant_ix(&fbar)?), ("I_z", covariant_iz(&fbar)?)] {
        if cov.is_zero() {
            return fail(format!("{name} vanishes mod {p}"));
        }
        if !elimination::is_smooth_over_prime_field(&cov)? {
            return fail(format!("{name} is singular mod {p}"));
        }
    }
    let field = Fp2Field::new(p)?;
    for (proj, q, block) in [(Projection::X, &g.qx, X), (Projection::Z, &g.qz, Z)] {
        let fast = FastGram::new(q, block);
        for pt in projective_points_ext(&field) {
            if fast.degenerate_at(&field, &pt) {
                let show: Vec<String> = pt
                    .iter()
                    .map(|c| if c.b == 0 { c.a.to_string() } else { format!("{}+{}t", c.a, c.b) })
                    .collect();
                return fail(format!("degenerate {proj:?}-fibre over ({})", show.join(":")));
            }
        }
    }
    Ok(GenericityReport { p, generic: true, reason: None })
}

/// Integer (or rational) class with generic reduction mod an odd prime p.
pub fn is_generic_mod_p(class: &Class22, p: u64) -> Result<bool> {
    Ok(genericity_mod_p(class, p)?.generic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn cls(s: &str) -> Class22 {
        Class22::parse(s, None).unwrap()
    }

    fn x3(s: &str, d: Domain) -> Poly {
        parse_poly(s, Some(&VarSet::new(["x1", "x2", "x3"])), Some(d)).unwrap()
    }

    #[test]
    fn sigma_squared_is_zero() {
        let s = sigma(&VarSet::xz(), Domain::Integer);
        assert!(Class22::canonicalize(&(&s * &s)).unwrap().is_zero());
    }

    #[test]
    fn canonical_forms_are_fixed() {
        let c = cls("x2^2*z3^2 + 3*x1*x2*z2*z3 - x3^2*z1^2");
        assert_eq!(Class22::canonicalize(c.representative()).unwrap(), c);
        let c2 = cls("x1^2*z1^2");
        // x1^2 z1^2 = sigma*x1*z1 - x1 x2 z1 z2 - x1 x3 z1 z3 and so on down
        assert!(!c2.is_zero());
        for (m, _) in c2.representative().terms() {
            assert!(!(m.0[0] >= 1 && m.0[3] >= 1));
        }
        assert_eq!(Class22::reduced_basis().len(), 27);
    }

    #[test]
    fn wrong_bidegree_rejected() {
        let f = parse_poly("x1^3*z1", Some(&VarSet::xz()), None).unwrap();
        assert!(matches!(Class22::canonicalize(&f), Err(Error::Degree(_))));
    }

    #[test]
    fn gram_examples() {
        let q = Domain::Rational;
        let g = gram_pair(&cls("x1^2*z2^2")).unwrap();
        let v6 = VarSet::xz();
        let z22 = parse_poly("z2^2", Some(&v6), Some(q)).unwrap();
        let x12 = parse_poly("x1^2", Some(&v6), Some(q)).unwrap();
        assert_eq!(g.qz[0][0], z22);
        assert_eq!(g.qx[1][1], x12);
        let nonzero = g.qz.iter().flatten().filter(|e| !e.is_zero()).count();
        assert_eq!(nonzero, 1);
        let g = gram_pair(&cls("x1*x2*z3^2")).unwrap();
        let half = parse_poly("1/2*z3^2", Some(&v6), Some(q)).unwrap();
        assert_eq!(g.qz[0][1], half);
        assert_eq!(g.qz[1][0], half);
    }

    #[test]
    fn gram_refuses_characteristic_two() {
        let c = cls("x1^2*z2^2").reduce_mod_p(2).unwrap();
        assert_eq!(gram_pair(&c), Err(Error::NoHalving));
    }

    #[test]
    fn diagonal_covariants() {
        let q = Domain::Rational;
        let f = cls("x1^2*z1^2 + x2^2*z2^2 + x3^2*z3^2");
        assert_eq!(covariant_ix(&f).unwrap(), x3("3*x1^2*x2^2*x3^2", q));
        let iz = covariant_iz(&f).unwrap();
        assert_eq!(iz.to_string(), "3*z1^2*z2^2*z3^2");
        let g = cls("x1^2*z2^2 + x2^2*z3^2 + x3^2*z1^2");
        assert_eq!(covariant_ix(&g).unwrap(), x3("x1^4*x2^2 + x2^4*x3^2 + x3^4*x1^2", q));
        let zero = Class22::zero(Domain::Integer);
        assert!(covariant_ix(&zero).unwrap().is_zero());
        assert!(covariant_iz(&zero).unwrap().is_zero());
    }

    #[test]
    fn tangency_examples() {
        let p = 11;
        let a = [Scalar::modular(1, p), Scalar::modular(0, p), Scalar::modular(0, p)];
        let g = cls("x1^2*z2^2 + x2^2*z3^2 + x3^2*z1^2").reduce_mod_p(p).unwrap();
        let t = tangency_test(&g, Projection::X, &a).unwrap();
        assert!(t.restricted_disc.is_zero());
        assert!(!t.degenerate);
        assert!(covariant_ix(&g).unwrap().eval(&a).unwrap().is_zero());

        let f = cls("x1^2*z1^2 + x2^2*z2^2 + x3^2*z3^2").reduce_mod_p(p).unwrap();
        let t = tangency_test(&f, Projection::X, &a).unwrap();
        assert!(t.degenerate);
        assert!(matches!(branch_locus_check(&f), Err(Error::DegeneratePoint { .. })));
        assert!(matches!(branch_locus_check(&Class22::zero(Domain::Prime(p))), Err(Error::DegeneratePoint { .. })));
    }

    #[test]
    fn everywhere_degenerate_class_is_not_generic() {
        let f = cls("11*x1^2*z2^2 + 22*x2*x3*z3^2");
        assert!(!is_generic_mod_p(&f, 11).unwrap());
        assert_eq!(genericity_mod_p(&f, 2), Err(Error::NoHalving));
    }
}
