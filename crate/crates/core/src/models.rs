//! Weierstrass models over Q: invariants, coordinate changes, global minimal
//! models and quadratic twists.

use crate::arith::primes::factor;
use crate::arith::{exact_root, format_rational, int_valuation, rat, rat_pow, valuation, Integer, Rational, Valuation};
use crate::error::{Error, Result};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeierstrassModel {
    pub a1: Rational,
    pub a2: Rational,
    pub a3: Rational,
    pub a4: Rational,
    pub a6: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub b2: Rational,
    pub b4: Rational,
    pub b6: Rational,
    pub b8: Rational,
    pub c4: Rational,
    pub c6: Rational,
    pub disc: Rational,
    pub j: Rational,
}

/// Change of variables `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transformation {
    pub u: Rational,
    pub r: Rational,
    pub s: Rational,
    pub t: Rational,
}

impl WeierstrassModel {
    /// Builds a model, rejecting singular ones.
    pub fn new(a: [Rational; 5]) -> Result<WeierstrassModel> {
        let [a1, a2, a3, a4, a6] = a;
        let m = WeierstrassModel { a1, a2, a3, a4, a6 };
        invariants(&m)?;
        Ok(m)
    }

    pub fn from_ints(a: [i64; 5]) -> Result<WeierstrassModel> {
        WeierstrassModel::new(a.map(rat))
    }

    pub fn a_invariants(&self) -> [Rational; 5] {
        [self.a1.clone(), self.a2.clone(), self.a3.clone(), self.a4.clone(), self.a6.clone()]
    }

    pub fn is_integral(&self) -> bool {
        self.a_invariants().iter().all(|a| a.is_integer())
    }

    pub fn is_short(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero() && self.a3.is_zero()
    }

    pub fn invariants(&self) -> Invariants {
        invariants(self).expect("models are nonsingular by construction")
    }

    pub fn disc(&self) -> Rational {
        self.invariants().disc
    }
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.a_invariants().iter().map(format_rational).collect();
        write!(f, "[{}]", a.join(","))
    }
}

pub fn invariants(m: &WeierstrassModel) -> Result<Invariants> {
    let WeierstrassModel { a1, a2, a3, a4, a6 } = m;
    let b2 = a1 * a1 + rat(4) * a2;
    let b4 = rat(2) * a4 + a1 * a3;
    let b6 = a3 * a3 + rat(4) * a6;
    let b8 = a1 * a1 * a6 + rat(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    let c4 = &b2 * &b2 - rat(24) * &b4;
    let c6 = -(&b2 * &b2 * &b2) + rat(36) * &b2 * &b4 - rat(216) * &b6;
    let disc = -(&b2 * &b2 * &b8) - rat(8) * &b4 * &b4 * &b4 - rat(27) * &b6 * &b6 + rat(9) * &b2 * &b4 * &b6;
    if disc.is_zero() {
        return Err(Error::SingularModel);
    }
    assert_eq!(rat(1728) * &disc, &c4 * &c4 * &c4 - &c6 * &c6);
    let j = &c4 * &c4 * &c4 / &disc;
    Ok(Invariants { b2, b4, b6, b8, c4, c6, disc, j })
}

impl Transformation {
    pub fn new(u: Rational, r: Rational, s: Rational, t: Rational) -> Transformation {
        assert!(!u.is_zero(), "u must be nonzero");
        Transformation { u, r, s, t }
    }

    pub fn identity() -> Transformation {
        Transformation::new(rat(1), rat(0), rat(0), rat(0))
    }

    pub fn scaling(u: Rational) -> Transformation {
        Transformation::new(u, rat(0), rat(0), rat(0))
    }

    pub fn is_identity(&self) -> bool {
        *self == Transformation::identity()
    }

    /// Applying `self` and then `next` equals applying the result once.
    pub fn then(&self, next: &Transformation) -> Transformation {
        let u2 = &self.u * &self.u;
        Transformation {
            u: &self.u * &next.u,
            r: &self.r + &u2 * &next.r,
            s: &self.s + &self.u * &next.s,
            t: &self.t + &u2 * &self.s * &next.r + &u2 * &self.u * &next.t,
        }
    }

    pub fn inverse(&self) -> Transformation {
        let u = &self.u;
        Transformation {
            u: u.recip(),
            r: -&self.r / (u * u),
            s: -&self.s / u,
            t: (&self.r * &self.s - &self.t) / (u * u * u),
        }
    }

    /// New x-coordinate of a point with old x-coordinate `x`.
    pub fn map_x(&self, x: &Rational) -> Rational {
        (x - &self.r) / (&self.u * &self.u)
    }
}

pub fn transform(m: &WeierstrassModel, tr: &Transformation) -> WeierstrassModel {
    let WeierstrassModel { a1, a2, a3, a4, a6 } = m;
    let Transformation { u, r, s, t } = tr;
    let a1n = (a1 + rat(2) * s) / u;
    let a2n = (a2 - s * a1 + rat(3) * r - s * s) / rat_pow(u, 2);
    let a3n = (a3 + r * a1 + rat(2) * t) / rat_pow(u, 3);
    let a4n = (a4 - s * a3 + rat(2) * r * a2 - (t + r * s) * a1 + rat(3) * r * r - rat(2) * s * t) / rat_pow(u, 4);
    let a6n = (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / rat_pow(u, 6);
    WeierstrassModel { a1: a1n, a2: a2n, a3: a3n, a4: a4n, a6: a6n }
}

/// Integral model with the given c4, c6 and reduced a1, a3 in {0,1}, a2 in {-1,0,1},
/// if one exists. Only the 2- and 3-adic behaviour of (c4, c6) matters.
pub fn model_from_c4_c6(c4: &Integer, c6: &Integer) -> Option<[Integer; 5]> {
    let two = Integer::from(2);
    let four = Integer::from(4);
    for b2 in [0i64, 1, -4, -3, 4, 5] {
        let b2 = Integer::from(b2);
        let (b4, r4) = (&b2 * &b2 - c4).div_rem(&Integer::from(24));
        if !r4.is_zero() {
            continue;
        }
        let (b6, r6) = (-(&b2 * &b2 * &b2) + Integer::from(36) * &b2 * &b4 - c6).div_rem(&Integer::from(216));
        if !r6.is_zero() {
            continue;
        }
        let a1 = b2.mod_floor(&two);
        let a2 = (&b2 - &a1) / &four;
        let a3 = b6.mod_floor(&two);
        let (a4, r) = (&b4 - &a1 * &a3).div_rem(&two);
        if !r.is_zero() {
            continue;
        }
        let (a6, r) = (&b6 - &a3).div_rem(&four);
        if !r.is_zero() {
            continue;
        }
        return Some([a1, a2, a3, a4, a6]);
    }
    None
}

fn as_integer(x: &Rational) -> Integer {
    assert!(x.is_integer(), "expected an integer, got {x}");
    x.numer().clone()
}

fn ipow(l: u64, e: u32) -> Integer {
    num_traits::pow(Integer::from(l), e as usize)
}

/// Largest k >= 0 with c4/l^{4k}, c6/l^{6k} still the invariants of an l-integral model.
fn minimal_scaling_exponent(l: u64, disc_val: i64, c4: &Integer, c6: &Integer) -> u32 {
    let cap = |v: Valuation, w: i64| v.finite().map_or(i64::MAX, |v| v / w);
    let mut k = (disc_val / 12).min(cap(int_valuation(c4, l), 4)).min(cap(int_valuation(c6, l), 6));
    while k > 0 {
        let ku = k as u32;
        let (c4k, c6k) = (c4 / ipow(l, 4 * ku), c6 / ipow(l, 6 * ku));
        if l > 3 || model_from_c4_c6(&c4k, &c6k).is_some() {
            break;
        }
        k -= 1;
    }
    k.max(0) as u32
}

/// Globally minimal reduced model and the transformation from `m` to it.
pub fn global_minimal_model(m: &WeierstrassModel) -> Result<(WeierstrassModel, Transformation)> {
    let inv = invariants(m)?;
    let den = m
        .a_invariants()
        .iter()
        .fold(Integer::one(), |acc, a| acc.lcm(a.denom()));
    // Scaling by u = 1/den makes the model integral.
    let den_r = Rational::from_integer(den.clone());
    let mut u = den_r.recip();
    let mut c4 = as_integer(&(&inv.c4 * rat_pow(&den_r, 4)));
    let mut c6 = as_integer(&(&inv.c6 * rat_pow(&den_r, 6)));
    let disc = as_integer(&(&inv.disc * rat_pow(&den_r, 12)));
    for (l, e) in factor(&disc)? {
        let k = minimal_scaling_exponent(l, e as i64, &c4, &c6);
        if k > 0 {
            c4 /= ipow(l, 4 * k);
            c6 /= ipow(l, 6 * k);
            u *= Rational::from_integer(ipow(l, k));
        }
    }
    let [b1, b2, b3, b4, b6] = model_from_c4_c6(&c4, &c6)
        .expect("scaled invariants admit an integral model")
        .map(Rational::from_integer);
    let s = (&u * &b1 - &m.a1) / rat(2);
    let r = (&u * &u * &b2 - &m.a2 + &s * &m.a1 + &s * &s) / rat(3);
    let t = (&u * &u * &u * &b3 - &m.a3 - &r * &m.a1) / rat(2);
    let tr = Transformation::new(u, r, s, t);
    let out = transform(m, &tr);
    assert_eq!(out, WeierstrassModel { a1: b1, a2: b2, a3: b3, a4: b4, a6: b6 });
    Ok((out, tr))
}

/// No prime admits a further integral rescaling.
pub fn is_globally_minimal(m: &WeierstrassModel) -> Result<bool> {
    if !m.is_integral() {
        return Ok(false);
    }
    let inv = invariants(m)?;
    let (c4, c6) = (as_integer(&inv.c4), as_integer(&inv.c6));
    for (l, e) in factor(inv.disc.numer())? {
        if minimal_scaling_exponent(l, e as i64, &c4, &c6) > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Transformation to `y^2 = x^3 - c4/48 x - c6/864` (u = 1, x' = x + b2/12).
pub fn to_short_form(m: &WeierstrassModel) -> (WeierstrassModel, Transformation) {
    let inv = m.invariants();
    let s = -&m.a1 / rat(2);
    let r = -&inv.b2 / rat(12);
    let t = -(&m.a3 + &r * &m.a1) / rat(2);
    let tr = Transformation::new(rat(1), r, s, t);
    (transform(m, &tr), tr)
}

pub fn is_squarefree_integer(d: i64) -> bool {
    if d == 0 {
        return false;
    }
    let n = d.unsigned_abs();
    let mut q = 2u64;
    while q * q <= n {
        if n.is_multiple_of(q * q) {
            return false;
        }
        q += 1;
    }
    true
}

/// `y^2 = x^3 + A d^2 x + B d^3` for `m: y^2 = x^3 + A x + B`; long models are
/// put in short form first.
pub fn quadratic_twist(m: &WeierstrassModel, d: i64) -> Result<WeierstrassModel> {
    if !is_squarefree_integer(d) {
        return Err(Error::BadTwistParameter(d.to_string()));
    }
    let short = if m.is_short() { m.clone() } else { to_short_form(m).0 };
    let dr = rat(d);
    WeierstrassModel::new([rat(0), rat(0), rat(0), &short.a4 * &dr * &dr, &short.a6 * &dr * &dr * &dr])
}

/// `x` is a twelfth power in Q^x: positive with every valuation divisible by 12.
pub fn is_twelfth_power(x: &Rational) -> bool {
    x.is_positive() && exact_root(x.numer(), 12).is_some() && exact_root(x.denom(), 12).is_some()
}

/// Valuation of the minimal discriminant at `l`; the model must be minimal at `l`.
pub fn disc_valuation(m: &WeierstrassModel, l: u64) -> i64 {
    valuation(&m.disc(), l).finite().expect("nonzero discriminant")
}

/// Primes dividing the discriminant of an integral model.
pub fn bad_primes(m: &WeierstrassModel) -> Result<Vec<u64>> {
    let d = m.disc();
    let mut ps: Vec<u64> = factor(d.numer())?.into_iter().map(|(q, _)| q).collect();
    ps.extend(factor(d.denom())?.into_iter().map(|(q, _)| q));
    ps.sort();
    ps.dedup();
    Ok(ps)
}

pub fn j_valuation(m: &WeierstrassModel, l: u64) -> Valuation {
    valuation(&m.invariants().j, l)
}

pub fn to_u64(x: &Integer) -> Option<u64> {
    x.to_u64()
}
