//! Word-size modular arithmetic, primality, exact roots and small
//! factorization helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let (s, overflow) = a.overflowing_add(b);
    if overflow || s >= p {
        s.wrapping_sub(p)
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a.wrapping_sub(b).wrapping_add(p)
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Inverse modulo a prime via Fermat. `a` must be nonzero mod p.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

pub fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Deterministic Miller-Rabin for all 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes `p` with `lo <= p <= hi`, ascending.
pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// `count` distinct primes just below 2^62, descending. Used as CRT moduli.
pub fn large_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = (1u64 << 62) - 1;
    while out.len() < count {
        if is_prime(n) {
            out.push(n);
        }
        n -= 2;
    }
    out
}

/// Exact k-th root of an integer, if one exists. Negative inputs have a
/// root only for odd k.
pub fn exact_root(v: &BigInt, k: u32) -> Option<BigInt> {
    if k == 0 {
        return None;
    }
    if v.is_negative() {
        if k % 2 == 0 {
            return None;
        }
        return exact_root(&-v, k).map(|r| -r);
    }
    let r = v.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *v {
        Some(r)
    } else {
        None
    }
}

/// Exact k-th root of a rational through its reduced numerator and
/// denominator.
pub fn exact_rational_root(q: &BigRational, k: u32) -> Option<BigRational> {
    let n = exact_root(q.numer(), k)?;
    let d = exact_root(q.denom(), k)?;
    Some(BigRational::new(n, d))
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("invalid number '{t}'"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in '{t}'")));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(v: &BigInt, p: u64) -> u32 {
    debug_assert!(!v.is_zero());
    let p = BigInt::from(p);
    let mut n = v.abs();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

/// Divides every factor of `p` out of `n`, returning the remaining cofactor.
pub fn strip_prime(n: &BigInt, p: u64) -> BigInt {
    if n.is_zero() {
        return n.clone();
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return n;
        }
        n = q;
    }
}

/// Trial division by all primes up to `bound` and by the extra primes given.
/// Returns the primes found (ascending) and the unfactored cofactor.
pub fn trial_factor(n: &BigInt, bound: u64, extra: &[u64]) -> (Vec<u64>, BigInt) {
    let mut rest = n.abs();
    let mut found = Vec::new();
    let mut candidates: Vec<u64> = primes_between(2, bound);
    candidates.extend(extra.iter().copied());
    candidates.sort_unstable();
    candidates.dedup();
    for p in candidates {
        if rest.is_one() {
            break;
        }
        let stripped = strip_prime(&rest, p);
        if stripped != rest {
            found.push(p);
            rest = stripped;
        }
    }
    (found, rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn miller_rabin_agrees_with_sieve() {
        let sieve: Vec<u64> = (0..2000u64)
            .filter(|&n| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .collect();
        assert_eq!(primes_between(0, 1999), sieve);
        assert!(is_prime(10007));
        assert!(!is_prime(1007));
        assert!(is_prime((1u64 << 61) - 1));
    }

    #[test]
    fn roots() {
        assert_eq!(exact_root(&BigInt::from(-27), 3), Some(BigInt::from(-3)));
        assert_eq!(exact_root(&BigInt::from(-4), 2), None);
        assert_eq!(exact_root(&BigInt::from(13), 2), None);
        let q = BigRational::new(49.into(), 16.into());
        assert_eq!(exact_rational_root(&q, 2), Some(BigRational::new(7.into(), 4.into())));
    }

    #[test]
    fn trial_division() {
        let n = BigInt::from(2u64.pow(10) * 3 * 1_000_003);
        let (ps, rest) = trial_factor(&n, 100, &[]);
        assert_eq!(ps, vec![2, 3]);
        assert_eq!(rest, BigInt::from(1_000_003));
        assert_eq!(valuation(&BigInt::from(-48), 2), 4);
    }
}
