//! Real roots of rational polynomials by Sturm sequences, exact throughout.

use super::{poly_q::PolyQ, rat, Rational};
use crate::error::{Error, Result};
use num_traits::{Signed, Zero};

pub struct Sturm {
    seq: Vec<PolyQ>,
}

/// An isolating interval: exactly one root lies in `(lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Sturm {
    pub fn new(f: &PolyQ) -> Sturm {
        let mut seq = vec![f.clone(), f.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(-&r);
        }
        Sturm { seq }
    }

    fn variations<I: Iterator<Item = i8>>(signs: I) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.seq.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.seq.iter().map(|p| {
            let s: i8 = if p.lead().is_positive() { 1 } else { -1 };
            let odd = p.degree().unwrap_or(0) % 2 == 1;
            if !positive && odd {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots.
    pub fn total(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    /// Number of distinct roots in `(a, b]`.
    pub fn count_between(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }
}

pub fn real_root_count(f: &PolyQ) -> Result<usize> {
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    Ok(Sturm::new(f).total())
}

/// Cauchy bound: every root has absolute value below it.
fn root_bound(f: &PolyQ) -> Rational {
    let lead = f.lead().abs();
    let m = f
        .coeffs()
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    m + rat(1)
}

pub fn real_root_isolate(f: &PolyQ) -> Result<Vec<RootInterval>> {
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let sturm = Sturm::new(f);
    let b = root_bound(f);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match sturm.count_between(&lo, &hi) {
            0 => {}
            1 => out.push(RootInterval { lo, hi }),
            _ => {
                let mid = (&lo + &hi) / rat(2);
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// Halve an isolating interval of `f`, keeping the root.
pub fn bisect(sturm: &Sturm, iv: &RootInterval) -> RootInterval {
    let mid = (&iv.lo + &iv.hi) / rat(2);
    if sturm.count_between(&iv.lo, &mid) == 1 {
        RootInterval { lo: iv.lo.clone(), hi: mid }
    } else {
        RootInterval { lo: mid, hi: iv.hi.clone() }
    }
}

/// Sign of `g` at the root of `f` isolated by `iv`; `g` must not vanish there.
pub fn sign_at_root(f: &PolyQ, iv: &RootInterval, g: &PolyQ) -> i8 {
    let sf = Sturm::new(f);
    let sg = Sturm::new(g);
    let mut iv = iv.clone();
    loop {
        let lo_sign = g.sign_at(&iv.lo);
        if lo_sign != 0 && sg.count_between(&iv.lo, &iv.hi) == 0 {
            return lo_sign;
        }
        iv = bisect(&sf, &iv);
    }
}
