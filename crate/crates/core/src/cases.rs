//! Symbolic local-field engine: tracks discriminant valuations and the sign
//! sigma through base change and twisting at a prime p > 3 of additive
//! potentially good reduction, and checks the resulting sign laws over a grid
//! of residue data.

use crate::arith::modular::{gcd, pow_mod};
use crate::arith::primes::primes_up_to;
use crate::error::{Error, Result};
use crate::sign::Sign;
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Minimal discriminant valuations of additive potentially good reduction above 3.
pub const ADDITIVE_VALUATIONS: [u32; 7] = [2, 3, 4, 6, 8, 9, 10];

/// Residues mod 24 of prime powers p^f with p > 3.
pub const ADMISSIBLE_Q24: [u64; 8] = [1, 5, 7, 11, 13, 17, 19, 23];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: u64) -> Parity {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Residue data of a local field over Q_p together with the discriminant
/// valuations of E and E' and the sign sigma relative to the starting field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseState {
    pub p: u64,
    pub f_parity: Parity,
    pub q24: u64,
    /// Ramification index accumulated over the applied base changes.
    pub e: u64,
    pub v_disc: u32,
    pub v_disc_prime: u32,
    pub sigma_sign: Sign,
}

impl CaseState {
    /// State for E over an unramified extension of Q_p of residue degree of the given parity.
    pub fn new(p: u64, f_parity: Parity, v_disc: u32) -> Result<CaseState> {
        check_valuation(v_disc)?;
        let q24 = match f_parity {
            Parity::Odd => p % 24,
            Parity::Even => 1,
        };
        check_residue(q24)?;
        Ok(CaseState { p, f_parity, q24, e: 1, v_disc, v_disc_prime: disc_partner(p, v_disc), sigma_sign: Sign::Plus })
    }

    pub fn is_good(&self) -> bool {
        self.v_disc == 0
    }

    /// Invariants: the valuations pair up by gcd with 12 and v' = p v mod 12.
    pub fn is_consistent(&self) -> bool {
        gcd(self.v_disc as u64, 12) == gcd(self.v_disc_prime as u64, 12)
            && (self.p * self.v_disc as u64) % 12 == self.v_disc_prime as u64 % 12
    }

    /// Root number of E over the current field.
    pub fn root_number(&self) -> Result<Sign> {
        if self.is_good() {
            return Ok(Sign::Plus);
        }
        rn_potentially_good(self.v_disc, self.q24)
    }
}

fn check_valuation(v: u32) -> Result<()> {
    if ADDITIVE_VALUATIONS.contains(&v) {
        Ok(())
    } else {
        Err(Error::InvalidValuation(v))
    }
}

fn check_residue(q24: u64) -> Result<()> {
    if ADMISSIBLE_Q24.contains(&q24) {
        Ok(())
    } else {
        Err(Error::InvalidResidue(q24))
    }
}

/// `(-1)^{floor(v q / 12)}`, which depends only on q mod 24 for v < 12.
pub fn rn_potentially_good(v_disc: u32, q24: u64) -> Result<Sign> {
    check_valuation(v_disc)?;
    check_residue(q24)?;
    Ok(Sign::from_parity((v_disc as u64 * q24 / 12) as i64))
}

/// `(-1)^{f (p - 1) / e}`.
pub fn jnt_symbol(p: u64, f: u64, e: u64) -> Result<Sign> {
    if e == 0 || !(p - 1).is_multiple_of(e) {
        return Err(Error::EDoesNotDivide { e, m: p - 1 });
    }
    Ok(Sign::from_parity((f * ((p - 1) / e)) as i64))
}

/// Passes to an extension with ramification index `e` and odd residue degree `f_ext`.
pub fn base_change(s: &CaseState, e: u64, f_ext: u64) -> Result<CaseState> {
    if f_ext.is_multiple_of(2) {
        return Err(Error::EvenResidueDegree(f_ext));
    }
    let split = |v: u32| {
        let t = e * v as u64;
        ((t % 12) as u32, t / 12)
    };
    let (a, b) = split(s.v_disc);
    let (a_prime, b_prime) = split(s.v_disc_prime);
    Ok(CaseState {
        p: s.p,
        f_parity: s.f_parity,
        q24: pow_mod(s.q24, f_ext, 24),
        e: s.e * e,
        v_disc: a,
        v_disc_prime: a_prime,
        sigma_sign: s.sigma_sign.pow(e) * Sign::from_parity((b + b_prime) as i64),
    })
}

/// Discriminant valuation of the ramified quadratic twist, with 0 meaning good reduction.
pub fn twist_shift(v_disc: u32) -> u32 {
    (v_disc + 6) % 12
}

/// Discriminant valuation of the p-isogenous curve: `p v mod 12`.
pub fn disc_partner(p: u64, v_disc: u32) -> u32 {
    ((p * v_disc as u64) % 12) as u32
}

/// `(-1)^k` for `p = 4k + 3`.
pub fn sigma_type_iii(p: u64) -> Result<Sign> {
    if p % 4 != 3 {
        return Err(Error::WrongResidue(p));
    }
    Ok(Sign::from_parity(((p - 3) / 4) as i64))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub check: String,
    pub p: u64,
    pub f_parity: Parity,
    pub q24: u64,
    pub v_disc: u32,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridReport {
    pub p_max: u64,
    pub primes: usize,
    pub grid_points: usize,
    pub checks: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl fmt::Display for GridReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "primes 3 < p <= {}: {}", self.p_max, self.primes)?;
        writeln!(f, "grid points: {}", self.grid_points)?;
        writeln!(f, "checks: {}", self.checks)?;
        for c in &self.counterexamples {
            writeln!(f, "counterexample [{}] p={} f={} q24={} v={}: {}", c.check, c.p, c.f_parity, c.q24, c.v_disc, c.detail)?;
        }
        write!(f, "{} counterexamples", self.counterexamples.len())
    }
}

/// Collects check outcomes for one grid point.
struct PointChecks<'a> {
    s: &'a CaseState,
    checks: usize,
    failures: Vec<Counterexample>,
}

impl PointChecks<'_> {
    fn check(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(Counterexample {
                check: name.to_string(),
                p: self.s.p,
                f_parity: self.s.f_parity,
                q24: self.s.q24,
                v_disc: self.s.v_disc,
                detail: detail(),
            });
        }
    }
}

/// `floor(3x/12)` and `floor(9x/12)` have the same parity.
fn three_nine_parity_agrees(x: u64) -> bool {
    (3 * x / 12) % 2 == (9 * x / 12) % 2
}

fn verify_point(s: &CaseState) -> Result<PointChecks<'_>> {
    let mut pc = PointChecks { s, checks: 0, failures: Vec::new() };
    let (p, v, q) = (s.p, s.v_disc, s.q24);
    let w = s.root_number()?;

    // Residue granularity: the formula on q mod 24 agrees with the actual #F = p^f.
    let fs: &[u32] = match s.f_parity {
        Parity::Odd => &[1, 3, 5],
        Parity::Even => &[2, 4],
    };
    for &f in fs {
        let size = BigUint::from(p).pow(f);
        let direct = Sign::from_bool(((&size * v) / 12u32 % 2u32) == BigUint::from(0u32));
        pc.check("residue-granularity", direct == w, || format!("f = {f}: exact {direct}, mod 24 {w}"));
    }

    pc.check("pairing", s.is_consistent(), || format!("v' = {}", s.v_disc_prime));
    pc.check("partner-involution", disc_partner(p, s.v_disc_prime) == v, || "partner of partner differs".into());
    let shifted = twist_shift(v);
    pc.check("twist-commutes-with-partner", disc_partner(p, shifted) == twist_shift(s.v_disc_prime), || {
        format!("partner of twist {}, twist of partner {}", disc_partner(p, shifted), twist_shift(s.v_disc_prime))
    });
    let e_good = 12 / gcd(v as u64, 12);
    let good = base_change(s, e_good, 1)?;
    pc.check("good-after-minimal-ramification", good.is_good() && good.v_disc_prime == 0, || {
        format!("e = {e_good} gives ({}, {})", good.v_disc, good.v_disc_prime)
    });

    if s.f_parity == Parity::Even {
        // Square residue field: the root number is trivial.
        pc.check("square-residue-field", w == Sign::Plus, || format!("w = {w}"));
        return Ok(pc);
    }

    // Odd base change preserves every term for types III and III*.
    if v == 3 || v == 9 {
        for e in (1..24).step_by(2) {
            pc.check("odd-ramification-parity", (e / 4) % 2 == (3 * e / 4) % 2, || format!("e = {e}"));
            for f_ext in [1, 3] {
                let t = base_change(s, e, f_ext)?;
                pc.check("odd-base-change-sigma", t.sigma_sign == s.sigma_sign, || format!("e = {e}, f = {f_ext}"));
                let wl = t.root_number()?;
                pc.check("odd-base-change-w", wl == w, || format!("e = {e}, f = {f_ext}: {wl} vs {w}"));
            }
        }
        pc.check("residue-parity", three_nine_parity_agrees(q), || format!("q = {q}"));
        // Type III with #F = 3 mod 4 and rational kernel: w equals sigma = (-1)^k.
        if p % 4 == 3 {
            let sigma = jnt_symbol(p, 1, 1)? * sigma_type_iii(p)?;
            pc.check("type-iii-sign-law", w == sigma, || format!("w = {w}, sigma = {sigma}"));
            let expected = Sign::from_bool(p % 8 == 3);
            pc.check("type-iii-root-number", w == expected, || format!("w = {w}, p mod 8 = {}", p % 8));
        }
    }

    // Types IV and IV*: cubic base change flips sigma and w together, exactly when q = 5 mod 6.
    if v == 4 || v == 8 {
        let t = base_change(s, 3, 1)?;
        pc.check("cubic-base-change-good", t.is_good() && t.v_disc_prime == 0, || "not good after e = 3".into());
        let sigma_flips = t.sigma_sign != s.sigma_sign;
        let w_flips = t.root_number()? != w;
        let q_five = q % 6 == 5;
        pc.check("cubic-base-change-sigma", sigma_flips == q_five, || format!("sigma flips: {sigma_flips}"));
        pc.check("cubic-base-change-w", w_flips == q_five, || format!("w flips: {w_flips}"));
        pc.check("partner-equal-iff-q-one-mod-six", (s.v_disc_prime == v) == (q % 6 == 1), || {
            format!("v' = {}", s.v_disc_prime)
        });
    }

    // Types II and II*: quadratic base change and the ramified twist both land in {4, 8}.
    if v == 2 || v == 10 {
        let t = base_change(s, 2, 1)?;
        pc.check("quadratic-base-change-lands", [4, 8].contains(&t.v_disc) && t.is_consistent(), || {
            format!("a = {}, a' = {}", t.v_disc, t.v_disc_prime)
        });
        pc.check("twist-lands", [4, 8].contains(&shifted), || format!("twist valuation {shifted}"));
        let twisted = CaseState::new(p, s.f_parity, shifted)?;
        pc.check("twist-then-base-change", base_change(&twisted, 3, 1)?.is_good(), || "twist not good after e = 3".into());
    }

    // Type I0*: the ramified twist has good reduction.
    if v == 6 {
        pc.check("twist-good", shifted == 0 && twist_shift(s.v_disc_prime) == 0, || format!("twist valuation {shifted}"));
    }
    Ok(pc)
}

/// Runs every check over primes 3 < p <= p_max, both residue-degree parities
/// and all additive discriminant valuations.
pub fn grid_verify(p_max: u64) -> Result<GridReport> {
    if p_max < 5 {
        return Err(Error::Input(format!("p_max must be at least 5, got {p_max}")));
    }
    let primes: Vec<u64> = primes_up_to(p_max).into_iter().filter(|&p| p > 3).collect();
    let mut global = PointChecks {
        s: &CaseState::new(5, Parity::Odd, 3)?,
        checks: 0,
        failures: Vec::new(),
    };
    for e in [1u64, 3, 5, 7] {
        global.check("lemma-table", (e / 4) % 2 == (3 * e / 4) % 2, || format!("e = {e}"));
    }
    for q in ADMISSIBLE_Q24 {
        global.check("lemma-table", three_nine_parity_agrees(q), || format!("q = {q}"));
    }
    let per_prime: Vec<Result<(usize, usize, Vec<Counterexample>)>> = primes
        .par_iter()
        .map(|&p| {
            let mut points = 0;
            let mut checks = 0;
            let mut failures = Vec::new();
            for v in ADDITIVE_VALUATIONS {
                for parity in [Parity::Even, Parity::Odd] {
                    let s = CaseState::new(p, parity, v)?;
                    let pc = verify_point(&s)?;
                    points += 1;
                    checks += pc.checks;
                    failures.extend(pc.failures);
                }
            }
            Ok((points, checks, failures))
        })
        .collect();
    let mut report = GridReport {
        p_max,
        primes: primes.len(),
        grid_points: 0,
        checks: global.checks,
        counterexamples: global.failures,
    };
    for r in per_prime {
        let (points, checks, failures) = r?;
        report.grid_points += points;
        report.checks += checks;
        report.counterexamples.extend(failures);
    }
    report.counterexamples.sort_by_key(|c| (c.p, c.v_disc, c.q24));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn root_number_formula() {
        for v in ADDITIVE_VALUATIONS {
            assert_eq!(rn_potentially_good(v, 1), Ok(Sign::Plus));
        }
        assert_eq!(rn_potentially_good(3, 7), Ok(Sign::Minus));
        assert_eq!(rn_potentially_good(3, 23), Ok(Sign::Minus));
        assert_eq!(rn_potentially_good(6, 5), Ok(Sign::Plus));
        assert_eq!(rn_potentially_good(6, 17), Ok(Sign::Plus));
        assert_eq!(rn_potentially_good(3, 9), Err(Error::InvalidResidue(9)));
        assert_eq!(rn_potentially_good(5, 1), Err(Error::InvalidValuation(5)));
    }

    #[test]
    fn formula_is_constant_on_residue_classes() {
        for v in ADDITIVE_VALUATIONS {
            for q in ADMISSIBLE_Q24 {
                let base = rn_potentially_good(v, q).unwrap();
                for k in 1..40u64 {
                    let n = q + 24 * k;
                    assert_eq!(Sign::from_parity((v as u64 * n / 12) as i64), base, "v = {v}, n = {n}");
                }
            }
        }
    }

    #[test]
    fn jnt_and_type_iii_signs() {
        assert_eq!(jnt_symbol(7, 2, 3), Ok(Sign::Plus));
        assert_eq!(jnt_symbol(7, 1, 6), Ok(Sign::Minus));
        assert_eq!(jnt_symbol(11, 1, 1), Ok(Sign::Plus));
        assert_eq!(jnt_symbol(11, 1, 3), Err(Error::EDoesNotDivide { e: 3, m: 10 }));
        assert_eq!(sigma_type_iii(7), Ok(Sign::Minus));
        assert_eq!(sigma_type_iii(11), Ok(Sign::Plus));
        assert_eq!(sigma_type_iii(19), Ok(Sign::Plus));
        assert_eq!(sigma_type_iii(13), Err(Error::WrongResidue(13)));
    }

    #[test]
    fn valuation_maps() {
        let table: Vec<(u32, u32)> = ADDITIVE_VALUATIONS.iter().map(|&v| (v, twist_shift(v))).collect();
        assert_eq!(table, vec![(2, 8), (3, 9), (4, 10), (6, 0), (8, 2), (9, 3), (10, 4)]);
        assert_eq!(disc_partner(13, 4), 4);
        assert_eq!(disc_partner(11, 4), 8);
        assert_eq!(disc_partner(5, 3), 3);
        assert_eq!(disc_partner(7, 3), 9);
        for p in [5, 7, 11, 13, 17, 19, 23] {
            assert_eq!(disc_partner(p, 6), 6);
        }
    }

    #[test]
    fn base_change_examples() {
        let s = CaseState::new(7, Parity::Odd, 4).unwrap();
        assert_eq!(base_change(&s, 1, 1).unwrap(), s);
        let t = base_change(&s, 3, 1).unwrap();
        assert_eq!((t.v_disc, t.e), (0, 3));
        let s = CaseState::new(7, Parity::Odd, 3).unwrap();
        let t = base_change(&s, 2, 1).unwrap();
        assert_eq!(t.v_disc, 6);
        assert_eq!(base_change(&s, 2, 2), Err(Error::EvenResidueDegree(2)));
        let t = base_change(&CaseState::new(5, Parity::Odd, 4).unwrap(), 1, 3).unwrap();
        assert_eq!(t.q24, 5);
    }

    #[test]
    fn type_iii_example_at_seven() {
        let s = CaseState::new(7, Parity::Odd, 3).unwrap();
        assert_eq!(s.q24, 7);
        assert_eq!(s.root_number(), Ok(Sign::Minus));
        assert_eq!(sigma_type_iii(7), Ok(Sign::Minus));
        assert!(verify_point(&s).unwrap().failures.is_empty());
    }

    #[test]
    fn grid_to_one_hundred() {
        let r = grid_verify(100).unwrap();
        assert_eq!(r.primes, 23);
        assert_eq!(r.grid_points, 23 * 14);
        assert!(r.counterexamples.is_empty(), "{r}");
        assert!(r.to_string().ends_with("0 counterexamples"));
        assert!(grid_verify(4).is_err());
    }

    proptest! {
        #[test]
        fn base_change_keeps_pairing(pi in 0usize..20, vi in 0usize..7, e in 1u64..30, f in 0u64..3) {
            let p = primes_up_to(100).into_iter().filter(|&p| p > 3).nth(pi).unwrap();
            let s = CaseState::new(p, Parity::Odd, ADDITIVE_VALUATIONS[vi]).unwrap();
            let t = base_change(&s, e, 2 * f + 1).unwrap();
            prop_assert!(t.is_good() == (t.v_disc_prime == 0));
            prop_assert!(t.is_good() || t.is_consistent());
            let composed = base_change(&base_change(&s, e, 1).unwrap(), 2, 1).unwrap();
            let direct = base_change(&s, 2 * e, 1).unwrap();
            prop_assert_eq!((composed.v_disc, composed.v_disc_prime, composed.sigma_sign), (direct.v_disc, direct.v_disc_prime, direct.sigma_sign));
        }
    }
}
