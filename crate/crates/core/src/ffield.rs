//! GF(p^2) arithmetic and projective-plane point enumeration, used by the
//! brute-force oracles (singular points, degenerate fibres).

use crate::arith::{add_mod, inv_mod, mul_mod, pow_mod, sub_mod};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{Domain, Scalar};

/// `a + b*t` with `t^2 = r`, a fixed quadratic non-residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp2 {
    pub a: u64,
    pub b: u64,
}

/// The field GF(p^2) for an odd prime p.
#[derive(Clone, Copy, Debug)]
pub struct Fp2Field {
    p: u64,
    r: u64,
}

impl Fp2Field {
    pub fn new(p: u64) -> Result<Fp2Field> {
        Domain::prime(p)?;
        if p == 2 {
            return Err(Error::NoHalving);
        }
        let r = (2..p).find(|&c| pow_mod(c, (p - 1) / 2, p) == p - 1).expect("non-residue exists");
        Ok(Fp2Field { p, r })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn zero(&self) -> Fp2 {
        Fp2 { a: 0, b: 0 }
    }

    pub fn one(&self) -> Fp2 {
        Fp2 { a: 1, b: 0 }
    }

    pub fn embed(&self, a: u64) -> Fp2 {
        Fp2 { a: a % self.p, b: 0 }
    }

    pub fn add(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2 { a: add_mod(x.a, y.a, self.p), b: add_mod(x.b, y.b, self.p) }
    }

    pub fn sub(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2 { a: sub_mod(x.a, y.a, self.p), b: sub_mod(x.b, y.b, self.p) }
    }

    pub fn neg(&self, x: Fp2) -> Fp2 {
        self.sub(self.zero(), x)
    }

    pub fn mul(&self, x: Fp2, y: Fp2) -> Fp2 {
        let p = self.p;
        let aa = mul_mod(x.a, y.a, p);
        let bb = mul_mod(mul_mod(x.b, y.b, p), self.r, p);
        let ab = add_mod(mul_mod(x.a, y.b, p), mul_mod(x.b, y.a, p), p);
        Fp2 { a: add_mod(aa, bb, p), b: ab }
    }

    pub fn pow(&self, mut x: Fp2, mut e: u64) -> Fp2 {
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, x);
            }
            x = self.mul(x, x);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: Fp2) -> Fp2 {
        // (a + bt)^-1 = (a - bt) / (a^2 - r b^2)
        let p = self.p;
        let norm = sub_mod(mul_mod(x.a, x.a, p), mul_mod(self.r, mul_mod(x.b, x.b, p), p), p);
        let ni = inv_mod(norm, p);
        Fp2 { a: mul_mod(x.a, ni, p), b: mul_mod(sub_mod(0, x.b, p), ni, p) }
    }

    /// All field elements, base field first.
    pub fn elements(&self) -> Vec<Fp2> {
        let p = self.p;
        (0..p).flat_map(|b| (0..p).map(move |a| Fp2 { a, b })).collect()
    }

    /// Evaluates a polynomial over GF(p) at a point with GF(p^2) coordinates.
    pub fn eval(&self, f: &Poly, point: &[Fp2]) -> Fp2 {
        let mut acc = self.zero();
        for (m, c) in f.terms() {
            let mut t = self.embed(c.residue().expect("polynomial over GF(p)"));
            for (x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    t = self.mul(t, self.pow(*x, e as u64));
                }
            }
            acc = self.add(acc, t);
        }
        acc
    }
}

/// Normalized representatives of P^2(GF(p)): `(1:y:z)`, `(0:1:z)`, `(0:0:1)`.
pub fn projective_points(p: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::with_capacity((p * p + p + 1) as usize);
    for y in 0..p {
        for z in 0..p {
            out.push([1, y, z]);
        }
    }
    for z in 0..p {
        out.push([0, 1, z]);
    }
    out.push([0, 0, 1]);
    out
}

/// Normalized representatives of P^2(GF(p^2)).
pub fn projective_points_ext(field: &Fp2Field) -> Vec<[Fp2; 3]> {
    let els = field.elements();
    let (zero, one) = (field.zero(), field.one());
    let mut out = Vec::with_capacity(els.len() * els.len() + els.len() + 1);
    for &y in &els {
        for &z in &els {
            out.push([one, y, z]);
        }
    }
    for &z in &els {
        out.push([zero, one, z]);
    }
    out.push([zero, zero, one]);
    out
}

pub fn point_scalars(p: u64, pt: &[u64; 3]) -> [Scalar; 3] {
    pt.map(|v| Scalar::modular(v, p))
}

/// Singular points of the plane curve `f = 0` over GF(p) (and GF(p^2) when
/// `extension` is set): points where `f` and all partials vanish.
pub fn singular_points(f: &Poly, extension: bool) -> Result<Vec<String>> {
    let Domain::Prime(p) = f.domain() else {
        return Err(Error::DomainMismatch { left: Domain::Prime(0), right: f.domain() });
    };
    if f.vars().len() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: f.vars().len() });
    }
    let mut polys = vec![f.clone()];
    polys.extend((0..3).map(|i| f.derivative_index(i)));
    let mut found = Vec::new();
    for pt in projective_points(p) {
        let sc = point_scalars(p, &pt);
        if polys.iter().all(|g| g.eval(&sc).map(|v| v.is_zero()).unwrap_or(false)) {
            found.push(format!("({}:{}:{})", pt[0], pt[1], pt[2]));
        }
    }
    if extension && p != 2 {
        let field = Fp2Field::new(p)?;
        for pt in projective_points_ext(&field) {
            if pt.iter().all(|c| c.b == 0) {
                continue;
            }
            if polys.iter().all(|g| field.eval(g, &pt) == field.zero()) {
                let show: Vec<String> = pt.iter().map(|c| format!("{}+{}t", c.a, c.b)).collect();
                found.push(format!("({})", show.join(":")));
            }
        }
    }
    Ok(found)
}
