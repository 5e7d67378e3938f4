//! Isometry candidates of the rank-2 lattice with Gram matrix
//! `G = [[2, 4], [4, 2]]`.
//!
//! A candidate is a 2x2 rational matrix `A` with `A G A^t = G`, entries in
//! `(1/4)Z`, and lower-right entry in `+-{1/4, 1/2, 1, 2, 4}`. The second row
//! is found first from the entry constraint, then the first row from the
//! conic `q = 2` meeting the line of pairing 4 with the second row.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::exact_rational_root;
use crate::cubicinv::show_rat;
use crate::error::{Error, Result};

pub type Q = BigRational;
pub type Row = [Q; 2];
pub type Mat2 = [[Q; 2]; 2];

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn gram() -> Mat2 {
    [[q(2, 1), q(4, 1)], [q(4, 1), q(2, 1)]]
}

/// The admissible lower-right entries, ascending.
pub fn a22_values() -> Vec<Q> {
    let mut v: Vec<Q> = [(1, 4), (1, 2), (1, 1), (2, 1), (4, 1)]
        .iter()
        .flat_map(|&(n, d)| [q(n, d), q(-n, d)])
        .collect();
    v.sort();
    v
}

/// `2 (x^2 + 4xy + y^2)`, the norm under `G`.
pub fn qform(x: &Q, y: &Q) -> Q {
    let two = q(2, 1);
    two * (x * x + q(4, 1) * x * y + y * y)
}

/// `u G v^t`.
pub fn pairing(u: &Row, v: &Row) -> Q {
    let g = gram();
    let mut acc = Q::zero();
    for i in 0..2 {
        for j in 0..2 {
            acc += &u[i] * &g[i][j] * &v[j];
        }
    }
    acc
}

pub fn is_quarter_integral(x: &Q) -> bool {
    (x * q(4, 1)).is_integer()
}

/// Rational roots of `a t^2 + b t + c` (with `a != 0`), ascending.
fn rational_roots(a: &Q, b: &Q, c: &Q) -> Vec<Q> {
    let disc = b * b - q(4, 1) * a * c;
    if disc.is_negative() {
        return Vec::new();
    }
    let Some(s) = exact_rational_root(&disc, 2) else {
        return Vec::new();
    };
    let two_a = q(2, 1) * a;
    let mut roots = vec![(-b - &s) / &two_a, (-b + &s) / &two_a];
    roots.sort();
    roots.dedup();
    roots
}

/// All `a21` in `(1/4)Z` with `qform(a21, a22) = 2`.
pub fn solve_second_row(a22: &Q) -> Result<Vec<Q>> {
    if !a22_values().contains(a22) {
        return Err(Error::NotAdmissible(format!("a22 = {} is outside +-{{1/4, 1/2, 1, 2, 4}}", show_rat(a22))));
    }
    // t^2 + 4 a22 t + (a22^2 - 1) = 0
    let roots = rational_roots(&Q::one(), &(q(4, 1) * a22), &(a22 * a22 - Q::one()));
    Ok(roots.into_iter().filter(is_quarter_integral).collect())
}

/// All first rows in `(1/4)Z` with `qform = 2` and pairing 4 against `row2`.
pub fn solve_first_row(row2: &Row) -> Result<Vec<Row>> {
    if row2[0].is_zero() && row2[1].is_zero() {
        return Err(Error::ZeroTuple);
    }
    // alpha x + beta y = 4
    let alpha = q(2, 1) * &row2[0] + q(4, 1) * &row2[1];
    let beta = q(4, 1) * &row2[0] + q(2, 1) * &row2[1];
    let four = q(4, 1);
    let mut sols: Vec<Row> = if !beta.is_zero() {
        // y = (4 - alpha x) / beta; x^2 + 4xy + y^2 = 1 times beta^2
        let (k, m) = (&four / &beta, -(&alpha / &beta));
        let a = Q::one() + q(4, 1) * &m + &m * &m;
        let b = q(4, 1) * &k + q(2, 1) * &k * &m;
        let c = &k * &k - Q::one();
        let xs = if a.is_zero() {
            if b.is_zero() {
                Vec::new()
            } else {
                vec![-&c / &b]
            }
        } else {
            rational_roots(&a, &b, &c)
        };
        xs.into_iter().map(|x| [x.clone(), &k + &m * &x]).collect()
    } else {
        let x = &four / &alpha;
        rational_roots(&Q::one(), &(q(4, 1) * &x), &(&x * &x - Q::one()))
            .into_iter()
            .map(|y| [x.clone(), y])
            .collect()
    };
    sols.retain(|r| r.iter().all(is_quarter_integral));
    sols.sort_by(cmp_rows);
    sols.dedup();
    Ok(sols)
}

fn cmp_rows(a: &Row, b: &Row) -> Ordering {
    a[0].cmp(&b[0]).then_with(|| a[1].cmp(&b[1]))
}

fn cmp_mats(a: &Mat2, b: &Mat2) -> Ordering {
    cmp_rows(&a[0], &b[0]).then_with(|| cmp_rows(&a[1], &b[1]))
}

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j]))
}

fn transpose(a: &Mat2) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

pub fn det2(a: &Mat2) -> Q {
    &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0]
}

/// `A G A^t - G`.
pub fn orthogonality_residual(a: &Mat2) -> Mat2 {
    let g = gram();
    let agat = mat_mul(&mat_mul(a, &g), &transpose(a));
    std::array::from_fn(|i| std::array::from_fn(|j| &agat[i][j] - &g[i][j]))
}

pub fn inverse2(a: &Mat2) -> Option<Mat2> {
    let d = det2(a);
    if d.is_zero() {
        return None;
    }
    Some([[&a[1][1] / &d, -(&a[0][1] / &d)], [-(&a[1][0] / &d), &a[0][0] / &d]])
}

/// Full constraint set: quarter-integral entries, admissible `a22`, and
/// `A G A^t = G`.
pub fn is_admissible(a: &Mat2) -> bool {
    a.iter().flatten().all(is_quarter_integral)
        && a22_values().contains(&a[1][1])
        && orthogonality_residual(a).iter().flatten().all(Zero::is_zero)
}

fn ser_mat<S: serde::Serializer>(m: &Mat2, s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(show_rat).collect()).collect();
    serde::Serialize::serialize(&rows, s)
}

fn ser_q<S: serde::Serializer>(v: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&show_rat(v))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsometryCandidate {
    #[serde(serialize_with = "ser_mat")]
    pub a: Mat2,
    pub quarter_integral: bool,
    #[serde(serialize_with = "ser_q")]
    pub a22: Q,
    #[serde(serialize_with = "ser_q")]
    pub det: Q,
    #[serde(serialize_with = "ser_mat")]
    pub residual: Mat2,
}

impl IsometryCandidate {
    pub fn certify(a: Mat2) -> IsometryCandidate {
        IsometryCandidate {
            quarter_integral: a.iter().flatten().all(is_quarter_integral),
            a22: a[1][1].clone(),
            det: det2(&a),
            residual: orthogonality_residual(&a),
            a,
        }
    }

    pub fn residual_is_zero(&self) -> bool {
        self.residual.iter().flatten().all(Zero::is_zero)
    }
}

/// All candidates, sorted lexicographically by entries.
pub fn enumerate_tau_candidates() -> Vec<IsometryCandidate> {
    let mut found: Vec<Mat2> = Vec::new();
    for a22 in a22_values() {
        for a21 in solve_second_row(&a22).expect("admissible a22") {
            let row2 = [a21, a22.clone()];
            for row1 in solve_first_row(&row2).expect("nonzero row") {
                let a = [row1, row2.clone()];
                if is_admissible(&a) {
                    found.push(a);
                }
            }
        }
    }
    found.sort_by(cmp_mats);
    found.dedup();
    found.into_iter().map(IsometryCandidate::certify).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InverseClosure {
    /// Inverses that satisfy the constraints and are in the set.
    pub closed: usize,
    /// Inverses whose lower-right entry is not admissible.
    pub excluded_by_constraint: usize,
    /// Admissible inverses missing from the set.
    pub violations: Vec<String>,
}

pub fn inverse_closure(cands: &[IsometryCandidate]) -> InverseClosure {
    let mut out = InverseClosure::default();
    for c in cands {
        let inv = inverse2(&c.a).expect("isometries are invertible");
        if !is_admissible(&inv) {
            out.excluded_by_constraint += 1;
        } else if cands.iter().any(|d| d.a == inv) {
            out.closed += 1;
        } else {
            out.violations.push(format!("{:?}", inv.map(|r| r.map(|x| show_rat(&x)))));
        }
    }
    out
}

/// Independent scan of every matrix with entries in `(1/4)Z` and absolute
/// value at most `bound`: rows of norm 2 are listed first, then all pairs
/// are tested against the full constraint set.
pub fn brute_force_box(bound: u32) -> Vec<Mat2> {
    let b = 4 * bound as i64;
    // 4-scaled rows (X, Y) with X^2 + 4XY + Y^2 = 16
    let mut rows: Vec<Row> = Vec::new();
    for x in -b..=b {
        for y in -b..=b {
            if x * x + 4 * x * y + y * y == 16 {
                rows.push([q(x, 4), q(y, 4)]);
            }
        }
    }
    let mut out = Vec::new();
    for r1 in &rows {
        for r2 in &rows {
            let a = [r1.clone(), r2.clone()];
            if is_admissible(&a) {
                out.push(a);
            }
        }
    }
    out.sort_by(cmp_mats);
    out
}

/// The enumerated matrices whose entries all lie within `bound`.
pub fn restrict_to_box(cands: &[IsometryCandidate], bound: u32) -> Vec<Mat2> {
    let lim = Q::from_integer(BigInt::from(bound));
    cands.iter().filter(|c| c.a.iter().flatten().all(|x| x.abs() <= lim)).map(|c| c.a.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: [(i64, i64); 4]) -> Mat2 {
        [[q(e[0].0, e[0].1), q(e[1].0, e[1].1)], [q(e[2].0, e[2].1), q(e[3].0, e[3].1)]]
    }

    fn int_m(e: [i64; 4]) -> Mat2 {
        m(e.map(|v| (v, 1)))
    }

    #[test]
    fn qform_values() {
        assert_eq!(qform(&q(1, 1), &q(0, 1)), q(2, 1));
        assert_eq!(qform(&q(0, 1), &q(1, 1)), q(2, 1));
        assert_eq!(qform(&q(1, 1), &q(1, 1)), q(12, 1));
        assert_eq!(det2(&gram()), q(-12, 1));
    }

    #[test]
    fn second_rows() {
        assert_eq!(solve_second_row(&q(1, 1)).unwrap(), vec![q(-4, 1), q(0, 1)]);
        assert_eq!(solve_second_row(&q(4, 1)).unwrap(), vec![q(-15, 1), q(-1, 1)]);
        assert!(solve_second_row(&q(2, 1)).unwrap().is_empty());
        assert!(matches!(solve_second_row(&q(3, 1)), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn first_rows() {
        let r = solve_first_row(&[q(0, 1), q(1, 1)]).unwrap();
        assert_eq!(r, vec![[q(-1, 1), q(4, 1)], [q(1, 1), q(0, 1)]]);
        let r = solve_first_row(&[q(1, 1), q(0, 1)]).unwrap();
        assert_eq!(r, vec![[q(0, 1), q(1, 1)], [q(4, 1), q(-1, 1)]]);
        assert_eq!(solve_first_row(&[q(0, 1), q(0, 1)]), Err(Error::ZeroTuple));
        // the line through a row of norm 1/8 meets the conic off the quarter lattice
        assert!(solve_first_row(&[q(1, 4), q(0, 1)]).unwrap().is_empty());
    }

    #[test]
    fn enumeration_contents() {
        let all = enumerate_tau_candidates();
        let mats: Vec<&Mat2> = all.iter().map(|c| &c.a).collect();
        assert!(mats.contains(&&int_m([1, 0, 0, 1])));
        assert!(mats.contains(&&int_m([-1, 4, 0, 1])));
        assert!(!mats.contains(&&int_m([0, 1, 1, 0])));
        assert!(is_admissible(&int_m([-1, 4, 0, 1])));
        assert!(orthogonality_residual(&int_m([0, 1, 1, 0])).iter().flatten().all(Zero::is_zero));
        for c in &all {
            assert!(c.residual_is_zero() && c.quarter_integral);
            assert_eq!(c.det.abs(), q(1, 1));
        }
    }
}
