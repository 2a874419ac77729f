//! Local invariants at a prime by Tate's algorithm.

use crate::arith::modular::{inv_mod, legendre, mul_mod};
use crate::arith::poly_f::PolyF;
use crate::arith::{rat, rat_mod, valuation, Rational};
use crate::error::{Error, Result};
use crate::models::{invariants, transform, Transformation, WeierstrassModel};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KodairaType {
    I0,
    I(u32),
    II,
    III,
    IV,
    I0Star,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionClass {
    Good,
    MultiplicativeSplit,
    MultiplicativeNonsplit,
    AdditivePotentiallyMultiplicative,
    AdditivePotentiallyGood,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalData {
    pub prime: u64,
    pub disc_valuation: u32,
    pub kodaira: KodairaType,
    pub tamagawa: u32,
    pub class: ReductionClass,
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I0 => f.write_str("I0"),
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::II => f.write_str("II"),
            KodairaType::III => f.write_str("III"),
            KodairaType::IV => f.write_str("IV"),
            KodairaType::I0Star => f.write_str("I0*"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::IVStar => f.write_str("IV*"),
            KodairaType::IIIStar => f.write_str("III*"),
            KodairaType::IIStar => f.write_str("II*"),
        }
    }
}

impl fmt::Display for ReductionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReductionClass::Good => "good",
            ReductionClass::MultiplicativeSplit => "split multiplicative",
            ReductionClass::MultiplicativeNonsplit => "nonsplit multiplicative",
            ReductionClass::AdditivePotentiallyMultiplicative => "additive, potentially multiplicative",
            ReductionClass::AdditivePotentiallyGood => "additive, potentially good",
        })
    }
}

impl ReductionClass {
    /// Short machine-friendly name.
    pub fn code(&self) -> &'static str {
        match self {
            ReductionClass::Good => "good",
            ReductionClass::MultiplicativeSplit => "split",
            ReductionClass::MultiplicativeNonsplit => "nonsplit",
            ReductionClass::AdditivePotentiallyMultiplicative => "add-pot-mult",
            ReductionClass::AdditivePotentiallyGood => "add-pot-good",
        }
    }
}

impl KodairaType {
    /// Largest Tamagawa number the type allows.
    pub fn max_tamagawa(&self) -> u32 {
        match self {
            KodairaType::I0 | KodairaType::II | KodairaType::IIStar => 1,
            KodairaType::I(n) => *n,
            KodairaType::III | KodairaType::IIIStar => 2,
            KodairaType::IV | KodairaType::IVStar => 3,
            KodairaType::I0Star | KodairaType::IStar(_) => 4,
        }
    }

    /// Number of irreducible components of the special fiber.
    pub fn component_count(&self) -> u32 {
        match self {
            KodairaType::I0 | KodairaType::II => 1,
            KodairaType::I(n) => *n,
            KodairaType::III => 2,
            KodairaType::IV => 3,
            KodairaType::I0Star => 5,
            KodairaType::IStar(n) => n + 5,
            KodairaType::IVStar => 7,
            KodairaType::IIIStar => 8,
            KodairaType::IIStar => 9,
        }
    }

    /// Type of additive potentially good reduction with the given minimal
    /// discriminant valuation, valid for residue characteristic above 3.
    pub fn from_potentially_good_valuation(v: u32) -> Option<KodairaType> {
        Some(match v {
            2 => KodairaType::II,
            3 => KodairaType::III,
            4 => KodairaType::IV,
            6 => KodairaType::I0Star,
            8 => KodairaType::IVStar,
            9 => KodairaType::IIIStar,
            10 => KodairaType::IIStar,
            _ => return None,
        })
    }
}

/// Number of distinct roots in F_p.
fn count_roots(f: &PolyF) -> usize {
    let p = f.modulus();
    if f.is_zero() {
        return p as usize;
    }
    let x = PolyF::x(p);
    let frob = x.pow_mod(&BigUint::from(p), f);
    f.gcd(&frob.sub(&x)).degree().unwrap_or(0)
}

fn has_root(f: &PolyF) -> bool {
    count_roots(f) > 0
}

/// The multiple root of a monic cubic over F_p known to have one.
fn multiple_root(cubic: &PolyF) -> u64 {
    let p = cubic.modulus();
    if p <= 3 {
        return (0..p)
            .find(|&r| cubic.eval(r) == 0 && cubic.derivative().eval(r) == 0)
            .expect("cubic has a multiple root");
    }
    // gcd with the derivative is (T - r) or (T - r)^2.
    let g = cubic.gcd(&cubic.derivative());
    let c = g.coeffs();
    match g.degree() {
        Some(1) => (p - c[0]) % p,
        Some(2) => mul_mod(p - c[1], inv_mod(2, p).unwrap(), p),
        _ => unreachable!("cubic has a multiple root"),
    }
}

fn is_triple_root(cubic: &PolyF, r: u64) -> bool {
    let p = cubic.modulus();
    let lin = PolyF::new(p, vec![(p - r) % p, 1]);
    cubic.rem(&lin.mul(&lin).mul(&lin)).is_zero()
}

struct Tate {
    p: u64,
    m: WeierstrassModel,
}

impl Tate {
    fn v(&self, x: &Rational) -> i64 {
        valuation(x, self.p).finite().unwrap_or(i64::MAX / 4)
    }

    fn residue(&self, x: &Rational) -> u64 {
        rat_mod(x, self.p).expect("p-integral coefficient")
    }

    /// Residue of `x / p^k`.
    fn res_div(&self, x: &Rational, k: u32) -> u64 {
        self.residue(&(x / crate::arith::prime_power(self.p, k as i64)))
    }

    fn poly(&self, cs: &[u64]) -> PolyF {
        PolyF::new(self.p, cs.to_vec())
    }

    fn shift(&mut self, r: Rational, s: Rational, t: Rational) {
        self.m = transform(&self.m, &Transformation::new(rat(1), r, s, t));
    }

    fn run(mut self) -> (KodairaType, u32, u32, bool) {
        let p = self.p;
        let pr = rat(p as i64);
        let half = if p == 2 { 0 } else { inv_mod(2, p).unwrap() };
        let mut rescalings = 0u32;
        loop {
            let inv = invariants(&self.m).expect("nonsingular");
            let vd = self.v(&inv.disc) as u32;
            if vd == 0 {
                return (KodairaType::I0, 1, vd, false);
            }
            // Move the singular point of the reduction to (0, 0).
            let (r, t) = if p == 2 {
                if self.residue(&inv.b2) == 0 {
                    let r = self.residue(&self.m.a4);
                    let rr = rat(r as i64);
                    let t = self.residue(&(&rr * (&rr * (&rr + &self.m.a2) + &self.m.a4) + &self.m.a6));
                    (r, t)
                } else {
                    let a1 = self.residue(&self.m.a1);
                    let r = self.residue(&self.m.a3) * a1 % 2;
                    let t = self.residue(&(rat((r * r) as i64) + &self.m.a4)) * a1 % 2;
                    (r, t)
                }
            } else if p == 3 {
                let r = if self.residue(&inv.b2) == 0 {
                    self.residue(&-&inv.b6)
                } else {
                    self.residue(&(-&inv.b2 * &inv.b4))
                };
                let t = self.residue(&(&self.m.a1 * rat(r as i64) + &self.m.a3));
                (r, t)
            } else {
                let r = if self.residue(&inv.c4) == 0 {
                    self.residue(&(-&inv.b2 / rat(12)))
                } else {
                    self.residue(&(-(&inv.c6 + &inv.b2 * &inv.c4) / (rat(12) * &inv.c4)))
                };
                let t = self.residue(&(-(&self.m.a1 * rat(r as i64) + &self.m.a3) / rat(2)));
                (r, t)
            };
            self.shift(rat(r as i64), rat(0), rat(t as i64));

            if self.v(&inv.c4) == 0 {
                let split = has_root(&PolyF::new(p, vec![
                    self.residue(&-&self.m.a2),
                    self.residue(&self.m.a1),
                    1,
                ]));
                let c = if split { vd } else if vd.is_multiple_of(2) { 2 } else { 1 };
                return (KodairaType::I(vd), c, vd, split);
            }
            let m = &self.m;
            if self.v(&m.a6) < 2 {
                return (KodairaType::II, 1, vd, false);
            }
            let b8 = invariants(m).unwrap().b8;
            if self.v(&b8) < 3 {
                return (KodairaType::III, 2, vd, false);
            }
            let b6 = invariants(m).unwrap().b6;
            if self.v(&b6) < 3 {
                let q = self.poly(&[self.res_div(&-&m.a6, 2), self.res_div(&m.a3, 1), 1]);
                let c = if has_root(&q) { 3 } else { 1 };
                return (KodairaType::IV, c, vd, false);
            }
            // Arrange p | a1, a2; p^2 | a3, a4; p^3 | a6.
            let (s, t) = if p == 2 {
                let s = self.residue(&m.a2);
                let t = 2 * self.res_div(&m.a6, 2);
                (rat(s as i64), rat(t as i64))
            } else {
                let h = rat(p.div_ceil(2) as i64);
                (-&m.a1 * &h, -&m.a3 * &h)
            };
            self.shift(rat(0), s, t);
            let m = &self.m;
            let (a2c, a4c, a6c) = (self.res_div(&m.a2, 1), self.res_div(&m.a4, 2), self.res_div(&m.a6, 3));
            let cubic = self.poly(&[a6c, a4c, a2c, 1]);
            let distinct = cubic.is_squarefree();
            if distinct {
                let c = 1 + count_roots(&cubic) as u32;
                return (KodairaType::I0Star, c, vd, false);
            }
            let r = multiple_root(&cubic);
            let double = !is_triple_root(&cubic, r);
            if double {
                self.shift(rat((r * p) as i64), rat(0), rat(0));
                let (mut ix, mut iy) = (3u32, 3u32);
                let (mut mx, mut my) = (pr.clone() * &pr, pr.clone() * &pr);
                let c;
                loop {
                    let m = &self.m;
                    let xa2 = &m.a2 / &pr;
                    let xa3 = &m.a3 / &my;
                    let xa6 = &m.a6 / (&mx * &my);
                    let (r3, r6) = (self.residue(&xa3), self.residue(&xa6));
                    let q = self.poly(&[self.residue(&-&xa6), r3, 1]);
                    if q.is_squarefree() {
                        c = if has_root(&q) { 4 } else { 2 };
                        break;
                    }
                    let t = if p == 2 { r6 } else { mul_mod(p - r3, half, p) };
                    self.shift(rat(0), rat(0), &my * rat(t as i64));
                    my *= &pr;
                    iy += 1;
                    let m = &self.m;
                    let xa4 = &m.a4 / (&pr * &mx);
                    let xa6 = &m.a6 / (&mx * &my);
                    let (r2, r4, r6) = (self.residue(&xa2), self.residue(&xa4), self.residue(&xa6));
                    let q = self.poly(&[r6, r4, r2]);
                    if q.is_squarefree() {
                        c = if has_root(&q) { 4 } else { 2 };
                        break;
                    }
                    let r = if p == 2 {
                        r6 * r2 % 2
                    } else {
                        mul_mod(p - r4, inv_mod(2 * r2 % p, p).unwrap(), p)
                    };
                    self.shift(&mx * rat(r as i64), rat(0), rat(0));
                    mx *= &pr;
                    ix += 1;
                }
                return (KodairaType::IStar(ix + iy - 5), c, vd, false);
            }
            // Triple root.
            self.shift(rat((r * p) as i64), rat(0), rat(0));
            let m = &self.m;
            let p2 = &pr * &pr;
            let x3 = self.residue(&(&m.a3 / &p2));
            let x6 = self.residue(&(&m.a6 / (&p2 * &p2)));
            let q = self.poly(&[(p - x6) % p, x3, 1]);
            if q.is_squarefree() {
                let c = if has_root(&q) { 3 } else { 1 };
                return (KodairaType::IVStar, c, vd, false);
            }
            let t = if p == 2 { x6 } else { mul_mod(p - x3, half, p) };
            self.shift(rat(0), rat(0), &p2 * rat(t as i64));
            let m = &self.m;
            if self.v(&m.a4) < 4 {
                return (KodairaType::IIIStar, 2, vd, false);
            }
            if self.v(&m.a6) < 6 {
                return (KodairaType::IIStar, 1, vd, false);
            }
            // Not minimal at p: scale down and start over.
            self.m = transform(&self.m, &Transformation::scaling(pr.clone()));
            rescalings += 1;
            assert!(rescalings < 64, "runaway rescaling in Tate's algorithm");
        }
    }
}

/// Kodaira type, Tamagawa number, minimal discriminant valuation and reduction class at `l`.
pub fn tate_algorithm(m: &WeierstrassModel, l: u64) -> Result<LocalData> {
    if !m.a_invariants().iter().all(|a| crate::arith::is_l_integral(a, l)) {
        return Err(Error::NonIntegralModel(l));
    }
    let (kodaira, tamagawa, vmin, split) = Tate { p: l, m: m.clone() }.run();
    let class = match kodaira {
        KodairaType::I0 => ReductionClass::Good,
        KodairaType::I(_) if split => ReductionClass::MultiplicativeSplit,
        KodairaType::I(_) => ReductionClass::MultiplicativeNonsplit,
        _ => {
            if valuation(&m.invariants().j, l) < crate::arith::Valuation::Finite(0) {
                ReductionClass::AdditivePotentiallyMultiplicative
            } else {
                ReductionClass::AdditivePotentiallyGood
            }
        }
    };
    Ok(LocalData { prime: l, disc_valuation: vmin, kodaira, tamagawa, class })
}

/// Classification from a model minimal at `l`.
pub fn reduction_class(m: &WeierstrassModel, l: u64) -> Result<ReductionClass> {
    Ok(tate_algorithm(m, l)?.class)
}

/// Split test for multiplicative reduction at `l > 3`: `-c6` is a square mod `l`.
pub fn split_by_c6(m: &WeierstrassModel, l: u64) -> Option<bool> {
    let r = rat_mod(&-m.invariants().c6, l)?;
    match legendre(r, l) {
        0 => None,
        s => Some(s == 1),
    }
}

/// Exponent of the conductor at the prime, by Ogg's formula.
pub fn conductor_exponent(d: &LocalData) -> u32 {
    d.disc_valuation + 1 - d.kodaira.component_count()
}

/// Whether the local root number formula covers this reduction class at `l`.
pub fn supports_root_number(d: &LocalData, l: u64) -> bool {
    match d.class {
        ReductionClass::Good | ReductionClass::MultiplicativeSplit | ReductionClass::MultiplicativeNonsplit => true,
        ReductionClass::AdditivePotentiallyMultiplicative => l > 2,
        ReductionClass::AdditivePotentiallyGood => l > 3,
    }
}
