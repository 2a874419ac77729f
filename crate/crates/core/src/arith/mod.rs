//! Exact arithmetic: rationals and valuations, small-prime modular helpers,
//! polynomials over Q and over F_l, Sturm sequences, unit groups mod M.

pub mod modular;
pub mod poly_f;
pub mod poly_q;
pub mod primes;
pub mod sturm;
pub mod units;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

pub use poly_f::PolyF;
pub use poly_q::PolyQ;

pub type Integer = BigInt;
/// Always kept in lowest terms with positive denominator by `num-rational`.
pub type Rational = BigRational;

/// l-adic valuation; `Infinite` is the valuation of zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_at_least(self, bound: i64) -> bool {
        match self {
            Valuation::Finite(v) => v >= bound,
            Valuation::Infinite => true,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Exponent of `l` in a nonzero integer (0 for zero is never returned; see `int_valuation`).
fn strip(n: &BigInt, l: u64) -> i64 {
    let lb = BigInt::from(l);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&lb);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub fn int_valuation(n: &BigInt, l: u64) -> Valuation {
    if n.is_zero() {
        Valuation::Infinite
    } else {
        Valuation::Finite(strip(n, l))
    }
}

pub fn valuation(x: &Rational, l: u64) -> Valuation {
    if x.is_zero() {
        Valuation::Infinite
    } else {
        Valuation::Finite(strip(x.numer(), l) - strip(x.denom(), l))
    }
}

/// Finite valuation of a value known to be nonzero.
pub fn vf(x: &Rational, l: u64) -> i64 {
    valuation(x, l).finite().expect("valuation of zero")
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// `l^e` as a rational, `e` may be negative.
pub fn rat_pow(base: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

pub fn prime_power(l: u64, e: i64) -> Rational {
    rat_pow(&Rational::from_integer(BigInt::from(l)), e)
}

pub fn is_l_integral(x: &Rational, l: u64) -> bool {
    valuation(x, l).is_at_least(0)
}

/// Residue of an l-integral rational modulo `m` (any modulus coprime to the denominator).
pub fn rat_mod(x: &Rational, m: u64) -> Option<u64> {
    let mb = BigInt::from(m);
    let den = x.denom().mod_floor(&mb).to_u64()?;
    let inv = modular::inv_mod(den, m)?;
    let num = x.numer().mod_floor(&mb).to_u64()?;
    Some(modular::mul_mod(num, inv, m))
}

pub fn int_mod(n: &BigInt, m: u64) -> u64 {
    n.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits u64")
}

/// Parses `"p/q"` or `"n"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Exact integer `k`-th root if `n` is a perfect `k`-th power.
pub fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        if k.is_multiple_of(2) {
            return None;
        }
        return exact_root(&-n, k).map(|r| -r);
    }
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

pub fn is_rational_square(x: &Rational) -> bool {
    !x.is_negative() && exact_root(x.numer(), 2).is_some() && exact_root(x.denom(), 2).is_some()
}
