//! Dense univariate polynomials over Q, coefficients stored low degree first.

use super::{poly_f::PolyF, rat, rat_mod, Rational};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyQ {
    coeffs: Vec<Rational>,
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<Rational>) -> PolyQ {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> PolyQ {
        PolyQ::new(cs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> PolyQ {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> PolyQ {
        PolyQ::new(vec![c])
    }

    pub fn x() -> PolyQ {
        PolyQ::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> PolyQ {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        PolyQ::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn scale(&self, k: &Rational) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> PolyQ {
        PolyQ::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> PolyQ {
        let mut r = PolyQ::constant(rat(1));
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// `self(a*x + b)`.
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> PolyQ {
        let lin = PolyQ::new(vec![b.clone(), a.clone()]);
        self.coeffs
            .iter()
            .rev()
            .fold(PolyQ::zero(), |acc, c| &(&acc * &lin) + &PolyQ::constant(c.clone()))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &PolyQ) -> (PolyQ, PolyQ) {
        let dd = d.degree().expect("division by zero polynomial");
        let dl = d.lead();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (PolyQ::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (PolyQ::new(q), PolyQ::new(r))
    }

    pub fn rem(&self, d: &PolyQ) -> PolyQ {
        self.div_rem(d).1
    }

    pub fn divides(&self, f: &PolyQ) -> bool {
        f.rem(self).is_zero()
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &PolyQ) -> PolyQ {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Sign of the value at `x`: -1, 0 or 1.
    pub fn sign_at(&self, x: &Rational) -> i8 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Reduction modulo `l`; `None` if some coefficient is not l-integral.
    pub fn reduce(&self, l: u64) -> Option<PolyF> {
        let cs = self
            .coeffs
            .iter()
            .map(|c| rat_mod(c, l))
            .collect::<Option<Vec<u64>>>()?;
        Some(PolyF::new(l, cs))
    }
}

impl Add for &PolyQ {
    type Output = PolyQ;
    fn add(self, o: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyQ::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &PolyQ {
    type Output = PolyQ;
    fn sub(self, o: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyQ::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &PolyQ {
    type Output = PolyQ;
    fn mul(self, o: &PolyQ) -> PolyQ {
        if self.is_zero() || o.is_zero() {
            return PolyQ::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyQ::new(out)
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let cs = super::format_rational(&a);
            match (i, a.is_one()) {
                (0, _) => f.write_str(&cs)?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{cs}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{cs}*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_frac;
    use proptest::prelude::*;

    #[test]
    fn arithmetic() {
        let f = PolyQ::from_ints(&[-1, 0, 1]);
        let g = PolyQ::from_ints(&[1, 1]);
        let (q, r) = f.div_rem(&g);
        assert_eq!(q, PolyQ::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(f.gcd(&PolyQ::from_ints(&[-1, 1])), PolyQ::from_ints(&[-1, 1]));
        assert!(f.is_squarefree());
        assert!(!PolyQ::from_ints(&[1, 2, 1]).is_squarefree());
        assert_eq!(f.compose_linear(&rat(2), &rat(1)), PolyQ::from_ints(&[0, 4, 4]));
        assert_eq!(format!("{}", PolyQ::new(vec![rat_frac(-29, 5), rat(1), rat(1)])), "x^2 + x - 29/5");
        assert_eq!(PolyQ::from_ints(&[1, 0, 3]).reduce(3).unwrap().coeffs(), &[1]);
    }

    proptest! {
        #[test]
        fn division_identity(a in prop::collection::vec(-20i64..20, 0..8), b in prop::collection::vec(-20i64..20, 1..5)) {
            let f = PolyQ::from_ints(&a);
            let g = PolyQ::from_ints(&b);
            prop_assume!(!g.is_zero());
            let (q, r) = f.div_rem(&g);
            prop_assert_eq!(&(&q * &g) + &r, f);
            prop_assert!(r.degree() < g.degree() || r.is_zero());
        }
    }
}
