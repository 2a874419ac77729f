//! Primality for word-sized and big integers, and factorization of
//! discriminants by trial division with a primality check on the cofactor.

use super::modular::{mul_mod, pow_mod};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin on big integers with fixed bases; deterministic below 3.3e24,
/// a strong probable-prime test above.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    if n.is_negative() || n.is_even() {
        return false;
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x).mod_floor(n);
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (0..=n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}

const TRIAL_BOUND: u64 = 1 << 20;

fn trial_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(TRIAL_BOUND))
}

/// Prime factorization of a nonzero integer as (prime, exponent) pairs in increasing order.
///
/// Trial division up to 2^20, stopping early once the cofactor is prime; a
/// remaining cofactor must be a word-sized prime, otherwise `Factorization` is returned.
pub fn factor(n: &BigInt) -> Result<Vec<(u64, u32)>> {
    if n.is_zero() {
        return Err(Error::Factorization("0".into()));
    }
    let mut m = n.abs();
    let mut out = Vec::new();
    let mut cofactor_prime = is_probable_prime(&m);
    for &q in trial_primes() {
        if m.is_one() || cofactor_prime {
            break;
        }
        if let Some(small) = m.to_u64() {
            if q.saturating_mul(q) > small {
                cofactor_prime = true;
                break;
            }
        }
        let qb = BigInt::from(q);
        let mut e = 0;
        loop {
            let (quo, r) = m.div_rem(&qb);
            if !r.is_zero() {
                break;
            }
            m = quo;
            e += 1;
        }
        if e > 0 {
            out.push((q, e));
            cofactor_prime = is_probable_prime(&m);
        }
    }
    if !m.is_one() {
        match m.to_u64() {
            Some(c) if cofactor_prime || is_prime(c) => {
                let idx = out.partition_point(|&(q, _)| q < c);
                out.insert(idx, (c, 1));
            }
            _ => return Err(Error::Factorization(n.to_string())),
        }
    }
    Ok(out)
}
