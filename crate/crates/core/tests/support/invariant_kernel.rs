//! Derives the degree-k SL3 invariants of ternary cubics as the common
//! kernel of the six root derivations acting on torus-weight-zero
//! polynomials in the ten cubic coefficients.

use std::collections::BTreeMap;

use ternforms::linalg::Matrix;
use ternforms::poly::{monomials_of_degree, Monomial, Poly, VarSet};
use ternforms::scalar::{Domain, Scalar};

pub fn coefficient_vars() -> VarSet {
    VarSet::new((0..10).map(|k| format!("c{k}")))
}

/// Cubic monomials in coefficient order: x^3, x^2y, x^2z, ..., z^3.
pub fn cubic_monomials() -> Vec<Monomial> {
    monomials_of_degree(3, 3)
}

/// Monomials in the coefficients of degree k and weight (k, k, k).
pub fn weight_zero_monomials(k: u32) -> Vec<Monomial> {
    let cm = cubic_monomials();
    monomials_of_degree(10, k)
        .into_iter()
        .filter(|e| {
            let mut w = [0u32; 3];
            for (idx, &mult) in e.0.iter().enumerate() {
                for v in 0..3 {
                    w[v] += mult * cm[idx].0[v];
                }
            }
            w == [k, k, k]
        })
        .collect()
}

/// The derivation induced by `x_j -> x_j + t x_i`:
/// `c_m -> c_m + t (m_j + 1) c_{m + e_j - e_i}`.
pub fn root_derivation(p: &Poly, i: usize, j: usize) -> Poly {
    let cm = cubic_monomials();
    let d = p.domain();
    let mut out = Poly::zero(p.vars(), d);
    for (idx, m) in cm.iter().enumerate() {
        if m.0[i] == 0 {
            continue;
        }
        let mut src = m.0.clone();
        src[j] += 1;
        src[i] -= 1;
        let sidx = cm.iter().position(|x| x.0 == src).expect("cubic monomial");
        let factor = Scalar::from_i64(d, (m.0[j] + 1) as i64);
        let term = &p.derivative_index(idx) * &Poly::var(p.vars(), d, sidx);
        out = &out + &term.scale(&factor).expect("same domain");
    }
    out
}

/// Basis of the invariants of degree k, each as a polynomial over Q.
pub fn invariant_kernel(k: u32) -> Vec<Poly> {
    let vars = coefficient_vars();
    let q = Domain::Rational;
    let cands = weight_zero_monomials(k);
    let mut rows: BTreeMap<(usize, Monomial), Vec<(usize, Scalar)>> = BTreeMap::new();
    let mut pair = 0;
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            for (col, m) in cands.iter().enumerate() {
                let image = root_derivation(&Poly::monomial(&vars, m.clone(), Scalar::one(q)), i, j);
                for (mm, c) in image.terms() {
                    rows.entry((pair, mm.clone())).or_default().push((col, c.clone()));
                }
            }
            pair += 1;
        }
    }
    let mut mat = Matrix::zeros(rows.len(), cands.len(), q);
    for (r, entries) in rows.values().enumerate() {
        for (col, c) in entries {
            mat.set(r, *col, c.clone());
        }
    }
    mat.nullspace()
        .expect("field")
        .into_iter()
        .map(|v| {
            Poly::from_terms(&vars, q, cands.iter().cloned().zip(v)).expect("same domain")
        })
        .collect()
}

/// Value of a coefficient polynomial on `y^2 z - x^3 - a x z^2 - b z^3`.
pub fn on_weierstrass(p: &Poly, a: &Scalar, b: &Scalar) -> Scalar {
    let cm = cubic_monomials();
    let d = p.domain();
    let mut coeffs = vec![Scalar::zero(d); 10];
    let at = |e: [u32; 3]| cm.iter().position(|m| m.0 == e).unwrap();
    coeffs[at([3, 0, 0])] = Scalar::from_i64(d, -1);
    coeffs[at([0, 2, 1])] = Scalar::one(d);
    coeffs[at([1, 0, 2])] = -a;
    coeffs[at([0, 0, 3])] = -b;
    p.eval(&coeffs).expect("ten coefficients")
}

/// The one-dimensional kernel in degree k, scaled so that on the Weierstrass
/// cubic with (a, b) = (1, 1) it takes the value `target`.
pub fn normalized_invariant(k: u32, target: i64) -> Poly {
    let basis = invariant_kernel(k);
    assert_eq!(basis.len(), 1, "degree {k} invariants should be one-dimensional");
    let q = Domain::Rational;
    let one = Scalar::one(q);
    let v = on_weierstrass(&basis[0], &one, &one);
    let s = Scalar::from_i64(q, target).try_div(&v).expect("nonzero on Weierstrass");
    basis[0].scale(&s).unwrap()
}
