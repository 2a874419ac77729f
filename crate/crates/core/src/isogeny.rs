//! Prime-degree isogenies given by kernel polynomials: validation, Velu's
//! formulas, the differential scalar at p, and point counts.

use crate::arith::modular::{add_mod, mul_mod};
use crate::arith::primes::is_prime;
use crate::arith::sturm::real_root_count;
use crate::arith::{rat, rat_mod, valuation, PolyQ, Rational, Valuation};
use crate::error::{Error, Result};
use crate::models::{global_minimal_model, Transformation, WeierstrassModel};
use std::collections::BTreeMap;

/// Monic `h` of degree `(p - 1) / 2` whose roots are the x-coordinates of the
/// nonzero kernel points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelPolynomial {
    pub p: u64,
    pub h: PolyQ,
}

impl KernelPolynomial {
    pub fn new(p: u64, h: PolyQ) -> Result<KernelPolynomial> {
        if p < 5 || !is_prime(p) {
            return Err(Error::InvalidKernel(format!("degree {p} is not a prime >= 5")));
        }
        if h.degree() != Some(((p - 1) / 2) as usize) {
            return Err(Error::InvalidKernel(format!("degree of h must be {}", (p - 1) / 2)));
        }
        if !h.is_monic() {
            return Err(Error::InvalidKernel("h is not monic".into()));
        }
        Ok(KernelPolynomial { p, h })
    }

    pub fn degree(&self) -> usize {
        ((self.p - 1) / 2) as usize
    }

    /// The same kernel in the coordinates of `transform(m, tr)`.
    pub fn transformed(&self, tr: &Transformation) -> KernelPolynomial {
        let h = self.h.compose_linear(&(&tr.u * &tr.u), &tr.r).monic();
        KernelPolynomial { p: self.p, h }
    }
}

/// `4x^3 + b2 x^2 + 2 b4 x + b6`, the square of the 2-division polynomial.
pub fn two_torsion_cubic(m: &WeierstrassModel) -> PolyQ {
    let inv = m.invariants();
    PolyQ::new(vec![inv.b6, rat(2) * inv.b4, inv.b2, rat(4)])
}

/// Odd-index division polynomials as polynomials in x (even indices carry an
/// extra factor of the 2-division polynomial, omitted here).
fn reduced_division_polynomials(m: &WeierstrassModel, n: usize) -> Vec<PolyQ> {
    let inv = m.invariants();
    let (b2, b4, b6, b8) = (inv.b2, inv.b4, inv.b6, inv.b8);
    let f = two_torsion_cubic(m);
    let f2 = &f * &f;
    let mut fs = vec![
        PolyQ::zero(),
        PolyQ::from_ints(&[1]),
        PolyQ::from_ints(&[1]),
        PolyQ::new(vec![b8.clone(), rat(3) * &b6, rat(3) * &b4, b2.clone(), rat(3)]),
        PolyQ::new(vec![
            &b4 * &b8 - &b6 * &b6,
            &b2 * &b8 - &b4 * &b6,
            rat(10) * &b8,
            rat(10) * &b6,
            rat(5) * &b4,
            b2.clone(),
            rat(2),
        ]),
    ];
    let cube = |p: &PolyQ| &(p * p) * p;
    let sq = |p: &PolyQ| p * p;
    for k in 5..=n.max(4) {
        let mm = k / 2;
        let next = if k % 2 == 1 {
            let a = &fs[mm + 2] * &cube(&fs[mm]);
            let b = &fs[mm - 1] * &cube(&fs[mm + 1]);
            if mm % 2 == 0 {
                &(&a * &f2) - &b
            } else {
                &a - &(&b * &f2)
            }
        } else {
            let a = &fs[mm + 2] * &sq(&fs[mm - 1]);
            let b = &fs[mm - 2] * &sq(&fs[mm + 1]);
            &fs[mm] * &(&a - &b)
        };
        fs.push(next);
    }
    fs
}

/// The `p`-division polynomial for odd `p`, of degree `(p^2 - 1) / 2`.
pub fn division_polynomial(m: &WeierstrassModel, p: u64) -> PolyQ {
    assert!(p % 2 == 1, "odd index only");
    reduced_division_polynomials(m, p as usize).swap_remove(p as usize)
}

/// Codomain of the isogeny with kernel `k`, normalized so the invariant
/// differential pulls back to the domain's.
pub fn velu(m: &WeierstrassModel, k: &KernelPolynomial) -> Result<WeierstrassModel> {
    if !k.h.is_squarefree() {
        return Err(Error::InvalidKernel("h is not squarefree".into()));
    }
    let n = k.degree();
    let inv = m.invariants();
    let c = |i: usize| k.h.coeff(i);
    // Power sums of the roots from the elementary symmetric functions.
    let s1 = -c(n - 1);
    let s2 = if n >= 2 { c(n - 2) } else { rat(0) };
    let s3 = if n >= 3 { -c(n - 3) } else { rat(0) };
    let nn = rat(n as i64);
    let p2 = &s1 * &s1 - rat(2) * &s2;
    let p3 = &s1 * &s1 * &s1 - rat(3) * &s1 * &s2 + rat(3) * &s3;
    let t = rat(6) * &p2 + &inv.b2 * &s1 + &nn * &inv.b4;
    let w = rat(10) * &p3 + rat(2) * &inv.b2 * &p2 + rat(3) * &inv.b4 * &s1 + &nn * &inv.b6;
    WeierstrassModel::new([
        m.a1.clone(),
        m.a2.clone(),
        m.a3.clone(),
        &m.a4 - rat(5) * &t,
        &m.a6 - &inv.b2 * &t - rat(7) * &w,
    ])
    .map_err(|_| Error::InvalidKernel("Velu codomain is singular".into()))
}

/// Trace of Frobenius at a prime of good reduction, by counting points.
pub fn a_ell(m: &WeierstrassModel, l: u64, bound: u64) -> Result<i64> {
    if l > bound {
        return Err(Error::BoundExceeded(l, bound));
    }
    let a = m
        .a_invariants()
        .iter()
        .map(|x| rat_mod(x, l))
        .collect::<Option<Vec<u64>>>()
        .ok_or(Error::NonIntegralModel(l))?;
    if valuation(&m.disc(), l) != Valuation::Finite(0) {
        return Err(Error::BadReduction(l));
    }
    let affine: u64 = if l == 2 {
        let mut count = 0;
        for x in 0..2u64 {
            for y in 0..2u64 {
                let lhs = (y * y + a[0] * x * y + a[2] * y) % 2;
                let rhs = (x * x * x + a[1] * x * x + a[3] * x + a[4]) % 2;
                count += (lhs == rhs) as u64;
            }
        }
        count
    } else {
        let inv = m.invariants();
        let b = [rat_mod(&inv.b2, l), rat_mod(&inv.b4, l), rat_mod(&inv.b6, l)].map(|v| v.unwrap());
        let mut is_square = vec![false; l as usize];
        for y in 0..l {
            is_square[mul_mod(y, y, l) as usize] = true;
        }
        let mut count = 0;
        for x in 0..l {
            // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
            let x2 = mul_mod(x, x, l);
            let mut v = mul_mod(4 % l, mul_mod(x2, x, l), l);
            v = add_mod(v, mul_mod(b[0], x2, l), l);
            v = add_mod(v, mul_mod(mul_mod(2, b[1], l), x, l), l);
            v = add_mod(v, b[2], l);
            count += if v == 0 { 1 } else if is_square[v as usize] { 2 } else { 0 };
        }
        count
    };
    Ok(l as i64 + 1 - (affine as i64 + 1))
}

/// Everything about one isogeny needed downstream.
#[derive(Clone, Debug)]
pub struct IsogenyData {
    pub p: u64,
    pub kernel: KernelPolynomial,
    pub domain: WeierstrassModel,
    pub codomain_raw: WeierstrassModel,
    pub codomain_min: WeierstrassModel,
    /// Raw-to-minimal transformation on the codomain; its `u` is the scalar alpha.
    pub codomain_to_min: Transformation,
}

impl IsogenyData {
    /// `domain` must be globally minimal and `kernel` given in its coordinates.
    pub fn new(domain: &WeierstrassModel, kernel: &KernelPolynomial) -> Result<IsogenyData> {
        let codomain_raw = velu(domain, kernel)?;
        let (codomain_min, codomain_to_min) = global_minimal_model(&codomain_raw)?;
        Ok(IsogenyData {
            p: kernel.p,
            kernel: kernel.clone(),
            domain: domain.clone(),
            codomain_raw,
            codomain_min,
            codomain_to_min,
        })
    }

    /// The differential scalar alpha with phi^* omega' = alpha omega on minimal models.
    pub fn alpha(&self) -> &Rational {
        &self.codomain_to_min.u
    }
}

/// `v_p(alpha)`, which must be 0 or 1 on minimal models.
pub fn alpha_valuation_at_p(d: &IsogenyData) -> Result<i64> {
    let v = valuation(d.alpha(), d.p).finite().expect("alpha is nonzero");
    if v == 0 || v == 1 {
        Ok(v)
    } else {
        Err(Error::AlphaOutOfRange(v))
    }
}

/// Small primes used to reject kernel polynomials that divide the division
/// polynomial without cutting out a subgroup.
const CHECK_PRIMES_BELOW: u64 = 60;

/// Whether `k` is the kernel of a p-isogeny on `m`: h divides the p-division
/// polynomial, is squarefree with only real roots, and the Velu codomain has the
/// same point counts as `m` at small good primes.
pub fn validate_kernel(m: &WeierstrassModel, k: &KernelPolynomial) -> bool {
    let Ok(k) = KernelPolynomial::new(k.p, k.h.clone()) else {
        return false;
    };
    if !k.h.is_squarefree() || !k.h.divides(&division_polynomial(m, k.p)) {
        return false;
    }
    if real_root_count(&k.h).ok() != Some(k.degree()) {
        return false;
    }
    let Ok(codomain) = velu(m, &k) else {
        return false;
    };
    let Ok((c_min, _)) = global_minimal_model(&codomain) else {
        return false;
    };
    let Ok((d_min, _)) = global_minimal_model(m) else {
        return false;
    };
    crate::arith::primes::primes_up_to(CHECK_PRIMES_BELOW).into_iter().all(|l| {
        match (a_ell(&d_min, l, u64::MAX), a_ell(&c_min, l, u64::MAX)) {
            (Ok(x), Ok(y)) => x == y,
            (Err(_), Err(_)) => true,
            _ => false,
        }
    })
}

/// Traces of Frobenius at the good primes up to `bound`.
pub fn a_ell_table(m: &WeierstrassModel, bound: u64) -> BTreeMap<u64, i64> {
    crate::arith::primes::primes_up_to(bound)
        .into_iter()
        .filter_map(|l| a_ell(m, l, bound).ok().map(|a| (l, a)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_frac;
    use crate::models::is_twelfth_power;

    fn wm(a: [i64; 5]) -> WeierstrassModel {
        WeierstrassModel::from_ints(a).unwrap()
    }

    fn kernel_11a1() -> KernelPolynomial {
        KernelPolynomial::new(5, PolyQ::new(vec![rat_frac(-29, 5), rat(1), rat(1)])).unwrap()
    }

    #[test]
    fn division_polynomials() {
        // p = 3 on y^2 = x^3 + A x + B.
        let (a, b) = (3i64, -7i64);
        let m = wm([0, 0, 0, a, b]);
        assert_eq!(division_polynomial(&m, 3), PolyQ::from_ints(&[-a * a, 12 * b, 6 * a, 0, 3]));
        assert_eq!(division_polynomial(&m, 5).degree(), Some(12));
        assert_eq!(division_polynomial(&m, 7).degree(), Some(24));
        // (0, 1) has order 3 on y^2 = x^3 + 1, while (2, 3) has order 6.
        let m = wm([0, 0, 0, 0, 1]);
        assert_eq!(division_polynomial(&m, 3).eval(&rat(0)), rat(0));
        assert_ne!(division_polynomial(&m, 3).eval(&rat(2)), rat(0));
    }

    /// Brute-force 5-torsion x-coordinates mod a prime and check they are roots.
    #[test]
    fn division_polynomial_vanishes_on_torsion_mod_l() {
        let m = wm([0, -1, 1, -10, -20]);
        let l = 101u64;
        let psi5 = division_polynomial(&m, 5).reduce(l).unwrap();
        let a: Vec<i64> = vec![0, -1, 1, -10, -20];
        let md = |v: i64| v.rem_euclid(l as i64) as u64;
        let on_curve = |x: u64, y: u64| {
            let lhs = (y * y + md(a[0]) * x * y + md(a[2]) * y) % l;
            let rhs = (x * x % l * x + md(a[1]) * x % l * x + md(a[3]) * x + md(a[4])) % l;
            lhs == rhs
        };
        // Affine points; add them with the chord-tangent law to find 5-torsion.
        let pts: Vec<(u64, u64)> = (0..l).flat_map(|x| (0..l).map(move |y| (x, y))).filter(|&(x, y)| on_curve(x, y)).collect();
        let inv = |v: u64| crate::arith::modular::inv_mod(v, l).unwrap();
        let add = |p: Option<(u64, u64)>, q: Option<(u64, u64)>| -> Option<(u64, u64)> {
            let (Some((x1, y1)), Some((x2, y2))) = (p, q) else { return p.or(q) };
            let (a1, a2, a3) = (md(a[0]), md(a[1]), md(a[2]));
            let lam = if x1 == x2 {
                let den = (2 * y1 + a1 * x1 + a3) % l;
                if (y1 + y2 + a1 * x2 + a3) % l == 0 {
                    return None;
                }
                let num = (3 * x1 % l * x1 + 2 * a2 * x1 + md(a[3]) + l * l - a1 * y1 % l) % l;
                num * inv(den) % l
            } else {
                (y2 + l - y1) % l * inv((x2 + l - x1) % l) % l
            };
            let x3 = (lam * lam + a1 * lam + 2 * l * l - a2 - x1 - x2) % l;
            let nu = (y1 + l * l - lam * x1 % l) % l;
            let y3 = (2 * l * l - (lam + a1) % l * x3 % l - nu - a3) % l;
            Some((x3, y3))
        };
        let mut found = 0;
        for &pt in &pts {
            let mut q = Some(pt);
            for _ in 0..4 {
                q = add(q, Some(pt));
            }
            if q.is_none() {
                assert_eq!(psi5.eval(pt.0), 0);
                found += 1;
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn velu_on_conductor_11() {
        let m = wm([0, -1, 1, -10, -20]);
        let k = kernel_11a1();
        assert!(validate_kernel(&m, &k));
        let c = velu(&m, &k).unwrap();
        assert_eq!(c, wm([0, -1, 1, -208, 2818]));
        let data = IsogenyData::new(&m, &k).unwrap();
        assert_eq!(data.codomain_min, wm([0, -1, 1, 0, 0]));
        assert_eq!(c.invariants().j, rat_frac(-4096, 11));
        assert_eq!(alpha_valuation_at_p(&data), Ok(1));
        let ratio = c.disc() / num_traits::pow(m.disc(), 5);
        assert!(is_twelfth_power(&ratio));
        // x^2 + x - 29/5 shifted by one is not a kernel; wrong degree is rejected.
        let bad = KernelPolynomial { p: 5, h: PolyQ::new(vec![rat_frac(-24, 5), rat(1), rat(1)]) };
        assert!(!validate_kernel(&m, &bad));
        let wrong_degree = KernelPolynomial { p: 5, h: PolyQ::from_ints(&[1, 1]) };
        assert!(!validate_kernel(&m, &wrong_degree));
    }

    #[test]
    fn rational_torsion_kernel() {
        // 11a3 = [0,-1,1,0,0] has the rational 5-torsion point (0,0): kernel x^2 - x.
        let m = wm([0, -1, 1, 0, 0]);
        let k = KernelPolynomial::new(5, PolyQ::from_ints(&[0, -1, 1])).unwrap();
        assert!(validate_kernel(&m, &k));
        let data = IsogenyData::new(&m, &k).unwrap();
        assert_eq!(data.codomain_min, wm([0, -1, 1, -10, -20]));
        assert_eq!(alpha_valuation_at_p(&data), Ok(0));
    }

    #[test]
    fn point_counts() {
        let m = wm([0, 0, 0, 0, 1]);
        assert_eq!(a_ell(&m, 5, 10_000), Ok(0));
        assert_eq!(a_ell(&m, 3, 10_000), Err(Error::BadReduction(3)));
        assert_eq!(a_ell(&m, 20_011, 10_000), Err(Error::BoundExceeded(20_011, 10_000)));
        let e = wm([0, -1, 1, -10, -20]);
        // a_2 = -2, a_3 = -1, a_5 = 1, a_7 = -2 for the conductor-11 curve.
        let t = a_ell_table(&e, 7);
        assert_eq!(t.into_iter().collect::<Vec<_>>(), vec![(2, -2), (3, -1), (5, 1), (7, -2)]);
    }

    #[test]
    fn hasse_bound() {
        let mut checked = 0;
        for a4 in -5i64..5 {
            for a6 in -5i64..5 {
                let Ok(m) = WeierstrassModel::from_ints([1, 0, 1, a4, a6]) else { continue };
                for (l, a) in a_ell_table(&m, 47) {
                    assert!((a * a) as u64 <= 4 * l, "Hasse fails at {l}");
                    checked += 1;
                }
            }
        }
        assert!(checked >= 100);
    }
}
