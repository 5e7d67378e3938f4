//! Dense exact matrices and determinant kernels.
//!
//! Integer determinants use fraction-free Bareiss elimination for small
//! matrices and a multimodular CRT reconstruction (bounded by Hadamard's
//! inequality) for large ones; both are exposed so they can be checked
//! against each other. Prime-field determinants use plain Gaussian
//! elimination on machine words.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith;
use crate::error::{Error, Result};
use crate::scalar::{Domain, Scalar};

/// Above this size integer determinants switch from Bareiss to CRT.
pub const BAREISS_CUTOFF: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    domain: Domain,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, domain: Domain) -> Matrix {
        Matrix { rows, cols, domain, data: vec![Scalar::zero(domain); rows * cols] }
    }

    pub fn identity(n: usize, domain: Domain) -> Matrix {
        let mut m = Matrix::zeros(n, n, domain);
        for i in 0..n {
            m.set(i, i, Scalar::one(domain));
        }
        m
    }

    /// Row-major small-integer constructor.
    pub fn from_i64(rows: usize, cols: usize, domain: Domain, entries: &[i64]) -> Matrix {
        assert_eq!(entries.len(), rows * cols);
        Matrix { rows, cols, domain, data: entries.iter().map(|&v| Scalar::from_i64(domain, v)).collect() }
    }

    /// Row-major constructor; every entry must be in `domain`.
    pub fn from_scalars(rows: usize, cols: usize, domain: Domain, entries: Vec<Scalar>) -> Result<Matrix> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: entries.len() });
        }
        if let Some(bad) = entries.iter().find(|s| s.domain() != domain) {
            return Err(Error::DomainMismatch { left: domain, right: bad.domain() });
        }
        Ok(Matrix { rows, cols, domain, data: entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.domain(), self.domain, "matrix entry domain");
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows, self.domain);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        if self.domain != other.domain {
            return Err(Error::DomainMismatch { left: self.domain, right: other.domain });
        }
        let mut out = Matrix::zeros(self.rows, other.cols, self.domain);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Scalar::zero(self.domain);
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Result<Matrix> {
        if c.domain() != self.domain {
            return Err(Error::DomainMismatch { left: self.domain, right: c.domain() });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            domain: self.domain,
            data: self.data.iter().map(|v| v * c).collect(),
        })
    }

    pub fn to_domain(&self, target: Domain) -> Result<Matrix> {
        let data = self.data.iter().map(|v| v.convert(target)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, domain: target, data })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        Ok(match self.domain {
            Domain::Integer => {
                let a: Vec<BigInt> = self.data.iter().map(|v| v.to_integer().expect("integer entry")).collect();
                Scalar::Int(det_integer(&a, n))
            }
            Domain::Rational => {
                let a: Vec<BigRational> = self.data.iter().map(|v| v.to_rational().expect("rational entry")).collect();
                Scalar::Rat(det_rational(&a, n))
            }
            Domain::Prime(p) => {
                let a: Vec<u64> = self.data.iter().map(|v| v.residue().expect("residue entry")).collect();
                Scalar::Mod { value: det_mod_p(a, n, p), p }
            }
        })
    }

    /// Reduced row echelon form over a field, with pivot columns.
    pub fn rref(&self) -> Result<(Matrix, Vec<usize>)> {
        if !self.domain.is_field() {
            return Err(Error::DomainMismatch { left: Domain::Rational, right: self.domain });
        }
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, piv);
            let inv = m.get(r, c).inv()?;
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in c..m.cols {
                        let v = m.get(i, j) - &(&f * m.get(r, j));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok((m, pivots))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.1.len())
    }

    /// Basis of the right kernel `{v : self * v = 0}` over a field.
    pub fn nullspace(&self) -> Result<Vec<Vec<Scalar>>> {
        let (r, pivots) = self.rref()?;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        Ok(free
            .iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(self.domain); self.cols];
                v[f] = Scalar::one(self.domain);
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f);
                }
                v
            })
            .collect())
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.rows;
        if n != self.cols {
            return Err(Error::DimensionMismatch { expected: n, got: self.cols });
        }
        let mut aug = Matrix::zeros(n, 2 * n, self.domain);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one(self.domain));
        }
        let (r, pivots) = aug.rref()?;
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(n, n, self.domain);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Determinant over GF(p) by Gaussian elimination. `a` is row-major n x n
/// with entries already reduced into `[0, p)`.
pub fn det_mod_p(mut a: Vec<u64>, n: usize, p: u64) -> u64 {
    let mut det = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| a[i * n + c] != 0) else {
            return 0;
        };
        if piv != c {
            for j in 0..n {
                a.swap(c * n + j, piv * n + j);
            }
            det = arith::sub_mod(0, det, p);
        }
        let pv = a[c * n + c];
        det = arith::mul_mod(det, pv, p);
        let inv = arith::inv_mod(pv, p);
        for i in c + 1..n {
            let f = a[i * n + c];
            if f == 0 {
                continue;
            }
            let f = arith::mul_mod(f, inv, p);
            for j in c..n {
                let v = arith::mul_mod(f, a[c * n + j], p);
                a[i * n + j] = arith::sub_mod(a[i * n + j], v, p);
            }
        }
    }
    det
}

/// Fraction-free (Bareiss) determinant over the integers.
pub fn det_bareiss(a: &[BigInt], n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.to_vec();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k * n + k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&i| !m[i * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                m.swap(k * n + j, piv * n + j);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                // exact by Sylvester's identity
                m[i * n + j] = v / &prev;
            }
        }
        prev = m[k * n + k].clone();
    }
    let d = m[n * n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Bits needed to bound `|det|` by Hadamard's inequality.
fn hadamard_bits(a: &[BigInt], n: usize) -> u64 {
    let log_n = (n.max(1) as f64).log2() / 2.0;
    let mut bits = 0.0f64;
    for i in 0..n {
        let row = &a[i * n..(i + 1) * n];
        let max = row.iter().map(|v| v.bits()).max().unwrap_or(0);
        if max == 0 {
            return 0;
        }
        bits += max as f64 + log_n;
    }
    bits.ceil() as u64 + 2
}

/// Integer determinant by CRT over word-size primes, with enough primes to
/// exceed twice the Hadamard bound.
pub fn det_multimodular(a: &[BigInt], n: usize) -> BigInt {
    let need = hadamard_bits(a, n);
    if need == 0 {
        return if n == 0 { BigInt::one() } else { BigInt::zero() };
    }
    // each prime contributes 61+ bits
    let count = (need / 61 + 1) as usize;
    let primes = arith::large_primes(count);
    let residues: Vec<u64> = primes
        .par_iter()
        .map(|&p| {
            let red: Vec<u64> = a.iter().map(|v| arith::bigint_mod(v, p)).collect();
            det_mod_p(red, n, p)
        })
        .collect();
    crt_symmetric(&residues, &primes)
}

/// Combines residues into the unique value of least absolute size.
pub fn crt_symmetric(residues: &[u64], primes: &[u64]) -> BigInt {
    let mut x = BigInt::zero();
    let mut modulus = BigInt::one();
    for (&r, &p) in residues.iter().zip(primes) {
        let xm = arith::bigint_mod(&x, p);
        let mm = arith::bigint_mod(&modulus, p);
        let t = arith::mul_mod(arith::sub_mod(r, xm, p), arith::inv_mod(mm, p), p);
        x += &modulus * BigInt::from(t);
        modulus *= BigInt::from(p);
    }
    let half = &modulus >> 1;
    if x > half {
        x - modulus
    } else {
        x
    }
}

/// Integer determinant, choosing the kernel by size.
pub fn det_integer(a: &[BigInt], n: usize) -> BigInt {
    if n <= BAREISS_CUTOFF {
        det_bareiss(a, n)
    } else {
        det_multimodular(a, n)
    }
}

/// Rational determinant: clear each row's denominators, take the integer
/// determinant and divide back.
pub fn det_rational(a: &[BigRational], n: usize) -> BigRational {
    let mut ints = Vec::with_capacity(n * n);
    let mut scale = BigInt::one();
    for i in 0..n {
        let row = &a[i * n..(i + 1) * n];
        let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        for q in row {
            ints.push(q.numer() * (&l / q.denom()));
        }
        scale *= l;
    }
    BigRational::new(det_integer(&ints, n), scale)
}

/// Absolute-value helper used when sizing determinants in reports.
pub fn abs_bits(v: &BigInt) -> u64 {
    v.abs().bits()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Laplace expansion, independent of every elimination kernel.
    fn det_laplace(a: &[BigInt], n: usize) -> BigInt {
        if n == 1 {
            return a[0].clone();
        }
        let mut acc = BigInt::zero();
        for j in 0..n {
            let minor: Vec<BigInt> = (1..n)
                .flat_map(|i| (0..n).filter(move |&c| c != j).map(move |c| (i, c)))
                .map(|(i, c)| a[i * n + c].clone())
                .collect();
            let term = &a[j] * det_laplace(&minor, n - 1);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize, range: i64) -> Vec<BigInt> {
        (0..n * n).map(|_| BigInt::from(rng.gen_range(-range..=range))).collect()
    }

    #[test]
    fn kernels_agree_with_laplace() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=6 {
            for _ in 0..10 {
                let a = random_matrix(&mut rng, n, 9);
                let expect = det_laplace(&a, n);
                assert_eq!(det_bareiss(&a, n), expect);
                assert_eq!(det_multimodular(&a, n), expect);
                let p = 10007;
                let red: Vec<u64> = a.iter().map(|v| arith::bigint_mod(v, p)).collect();
                assert_eq!(det_mod_p(red, n, p), arith::bigint_mod(&expect, p));
            }
        }
    }

    #[test]
    fn bareiss_and_crt_agree_on_large_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [30, 45] {
            let a = random_matrix(&mut rng, n, 1000);
            assert_eq!(det_bareiss(&a, n), det_multimodular(&a, n));
        }
        // singular: duplicate a row
        let mut a = random_matrix(&mut rng, 30, 50);
        for j in 0..30 {
            a[30 + j] = a[j].clone();
        }
        assert!(det_multimodular(&a, 30).is_zero());
        assert!(det_bareiss(&a, 30).is_zero());
    }

    #[test]
    fn rational_det_and_inverse() {
        let q = |n: i64, d: i64| Scalar::Rat(BigRational::new(n.into(), d.into()));
        let m = Matrix::from_scalars(2, 2, Domain::Rational, vec![q(1, 2), q(1, 3), q(1, 4), q(1, 5)]).unwrap();
        assert_eq!(m.det().unwrap(), q(1, 60));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2, Domain::Rational));
        let sing = Matrix::from_i64(2, 2, Domain::Rational, &[1, 2, 2, 4]);
        assert_eq!(sing.inverse(), Err(Error::Singular));
    }

    #[test]
    fn nullspace_is_annihilated() {
        let m = Matrix::from_i64(2, 4, Domain::Rational, &[1, 2, 3, 4, 2, 4, 6, 9]);
        let ns = m.nullspace().unwrap();
        assert_eq!(ns.len(), 2);
        for v in ns {
            let col = Matrix::from_scalars(4, 1, Domain::Rational, v).unwrap();
            assert!(m.mul(&col).unwrap().is_zero());
        }
    }
}
