//! 3x3 matrices, the cofactor matrix, and the GL3 actions on ternary forms
//! and on V(2,2).
//!
//! Everything uses the row-vector convention: a matrix `g` acts on a form by
//! `f(v) -> f(v * g)`. With this convention `act_vn(g1, act_vn(g2, f)) ==
//! act_vn(g1 * g2, f)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{Monomial, Poly, VarSet};
use crate::rep22::Class22;
use crate::scalar::{Domain, Scalar};

/// A 3x3 matrix over one exact domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat3(Matrix);

impl Mat3 {
    /// Row-major entries.
    pub fn new(domain: Domain, entries: [Scalar; 9]) -> Result<Mat3> {
        Matrix::from_scalars(3, 3, domain, entries.to_vec()).map(Mat3)
    }

    pub fn from_i64(domain: Domain, entries: [i64; 9]) -> Mat3 {
        Mat3(Matrix::from_i64(3, 3, domain, &entries))
    }

    pub fn from_matrix(m: Matrix) -> Result<Mat3> {
        if m.rows() != 3 || m.cols() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, got: m.rows() });
        }
        Ok(Mat3(m))
    }

    pub fn identity(domain: Domain) -> Mat3 {
        Mat3(Matrix::identity(3, domain))
    }

    /// `u * Id`.
    pub fn scalar(u: Scalar) -> Mat3 {
        let d = u.domain();
        Mat3(Matrix::identity(3, d).scale(&u).expect("same domain"))
    }

    pub fn diag(a: Scalar, b: Scalar, c: Scalar) -> Result<Mat3> {
        let z = Scalar::zero(a.domain());
        Mat3::new(a.domain(), [a, z.clone(), z.clone(), z.clone(), b, z.clone(), z.clone(), z, c])
    }

    pub fn domain(&self) -> Domain {
        self.0.domain()
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        self.0.get(i, j)
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn mul(&self, other: &Mat3) -> Result<Mat3> {
        self.0.mul(&other.0).map(Mat3)
    }

    pub fn transpose(&self) -> Mat3 {
        Mat3(self.0.transpose())
    }

    pub fn scale(&self, c: &Scalar) -> Result<Mat3> {
        self.0.scale(c).map(Mat3)
    }

    pub fn inverse(&self) -> Result<Mat3> {
        self.0.inverse().map(Mat3)
    }

    pub fn to_domain(&self, d: Domain) -> Result<Mat3> {
        self.0.to_domain(d).map(Mat3)
    }

    pub fn det(&self) -> Scalar {
        det3(self)
    }

    /// Row-major entries as strings.
    pub fn to_json(&self) -> Vec<String> {
        self.0.entries().iter().map(ToString::to_string).collect()
    }

    /// Parses a row-major 9-array of exact scalars given as strings. The
    /// domain defaults to rational if any entry is a fraction.
    pub fn from_json_str(text: &str, domain: Option<Domain>) -> Result<Mat3> {
        let raw: Vec<serde_json::Value> =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix JSON: {e}")))?;
        if raw.len() != 9 {
            return Err(Error::Parse(format!("matrix JSON needs 9 entries, got {}", raw.len())));
        }
        let strs = raw
            .iter()
            .map(|v| match v {
                serde_json::Value::String(s) => Ok(s.clone()),
                serde_json::Value::Number(n) => Ok(n.to_string()),
                other => Err(Error::Parse(format!("bad matrix entry {other}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let domain = domain.unwrap_or(if strs.iter().any(|s| s.contains('/')) {
            Domain::Rational
        } else {
            Domain::Integer
        });
        let entries = strs.iter().map(|s| Scalar::parse(s, domain)).collect::<Result<Vec<_>>>()?;
        Matrix::from_scalars(3, 3, domain, entries).map(Mat3)
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..3)
            .map(|i| {
                let r: Vec<String> = (0..3).map(|j| self.get(i, j).to_string()).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Exact determinant by cofactor expansion along the first row.
pub fn det3(m: &Mat3) -> Scalar {
    let e = |i, j| m.get(i, j);
    let t0 = e(0, 0) * &(&(e(1, 1) * e(2, 2)) - &(e(1, 2) * e(2, 1)));
    let t1 = e(0, 1) * &(&(e(1, 0) * e(2, 2)) - &(e(1, 2) * e(2, 0)));
    let t2 = e(0, 2) * &(&(e(1, 0) * e(2, 1)) - &(e(1, 1) * e(2, 0)));
    &(&t0 - &t1) + &t2
}

/// Classical adjoint: `M * Adj(M) = Adj(M) * M = det(M) * Id`, defined for
/// singular `M` too.
pub fn adjugate3(m: &Mat3) -> Mat3 {
    let d = m.domain();
    let mut out = Matrix::zeros(3, 3, d);
    for i in 0..3 {
        for j in 0..3 {
            // Adj[i][j] = (-1)^(i+j) * minor(j, i)
            let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
            let minor = &(m.get(rows[0], cols[0]) * m.get(rows[1], cols[1]))
                - &(m.get(rows[0], cols[1]) * m.get(rows[1], cols[0]));
            out.set(i, j, if (i + j) % 2 == 0 { minor } else { -minor });
        }
    }
    Mat3(out)
}

/// `delta(M) = Adj(M)^t`, which equals `det(M) * (M^-1)^t` when `M` is
/// invertible.
pub fn cofactor_delta(m: &Mat3) -> Mat3 {
    adjugate3(m).transpose()
}

/// Images of the variables `v_j -> sum_i v_i g[i][j]` as linear forms in
/// `vars[offset..offset + 3]`.
fn linear_images(g: &Mat3, vars: &VarSet, offset: usize) -> Vec<Poly> {
    let n = vars.len();
    (0..3)
        .map(|j| {
            let terms = (0..3).map(|i| (Monomial::var(n, offset + i), g.get(i, j).clone()));
            Poly::from_terms(vars, g.domain(), terms).expect("domains agree")
        })
        .collect()
}

/// `g . f (x, y, z) = f((x, y, z) * g)` for a ternary form `f`.
pub fn act_vn(g: &Mat3, f: &Poly) -> Result<Poly> {
    if f.vars().len() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: f.vars().len() });
    }
    if g.domain() != f.domain() {
        return Err(Error::DomainMismatch { left: f.domain(), right: g.domain() });
    }
    f.substitute_linear(g.as_matrix())
}

/// Raw twisted substitution `f((x) * g, (z) * delta(g))` on a bihomogeneous
/// polynomial in `x1..x3, z1..z3` (possibly with extra parameter variables
/// after them), without re-canonicalizing.
pub fn substitute_v22(g: &Mat3, f: &Poly) -> Result<Poly> {
    if g.domain() != f.domain() {
        return Err(Error::DomainMismatch { left: f.domain(), right: g.domain() });
    }
    let vars = f.vars();
    if vars.len() < 6 {
        return Err(Error::DimensionMismatch { expected: 6, got: vars.len() });
    }
    let delta = cofactor_delta(g);
    let mut images = linear_images(g, vars, 0);
    images.extend(linear_images(&delta, vars, 3));
    for k in 6..vars.len() {
        images.push(Poly::var(vars, f.domain(), k));
    }
    f.compose(&images)
}

/// The twisted action on V(2,2): the x-block is moved by `g`, the z-block by
/// `delta(g)`, and the result is re-canonicalized.
pub fn act_v22(g: &Mat3, class: &Class22) -> Result<Class22> {
    if det3(g).is_zero() {
        return Err(Error::Singular);
    }
    let moved = substitute_v22(g, class.representative())?;
    Class22::canonicalize(&moved)
}
