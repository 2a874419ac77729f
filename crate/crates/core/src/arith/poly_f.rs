//! Dense polynomials over F_l for word-sized primes l, coefficients low degree first.

use super::modular::{add_mod, inv_mod, mul_mod, sub_mod};
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyF {
    modulus: u64,
    coeffs: Vec<u64>,
}

impl PolyF {
    pub fn new(modulus: u64, coeffs: Vec<u64>) -> PolyF {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % modulus).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyF { modulus, coeffs }
    }

    pub fn from_i64(modulus: u64, cs: &[i64]) -> PolyF {
        PolyF::new(modulus, cs.iter().map(|&c| super::modular::from_i64(c, modulus)).collect())
    }

    pub fn zero(modulus: u64) -> PolyF {
        PolyF { modulus, coeffs: Vec::new() }
    }

    pub fn constant(modulus: u64, c: u64) -> PolyF {
        PolyF::new(modulus, vec![c])
    }

    pub fn x(modulus: u64) -> PolyF {
        PolyF::new(modulus, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> PolyF {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lead(), self.modulus).expect("prime modulus");
        self.scale(inv)
    }

    pub fn scale(&self, k: u64) -> PolyF {
        PolyF::new(self.modulus, self.coeffs.iter().map(|&c| mul_mod(c, k, self.modulus)).collect())
    }

    pub fn add(&self, o: &PolyF) -> PolyF {
        let n = self.coeffs.len().max(o.coeffs.len());
        let m = self.modulus;
        PolyF::new(m, (0..n).map(|i| add_mod(self.c(i), o.c(i), m)).collect())
    }

    pub fn sub(&self, o: &PolyF) -> PolyF {
        let n = self.coeffs.len().max(o.coeffs.len());
        let m = self.modulus;
        PolyF::new(m, (0..n).map(|i| sub_mod(self.c(i), o.c(i), m)).collect())
    }

    fn c(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn mul(&self, o: &PolyF) -> PolyF {
        if self.is_zero() || o.is_zero() {
            return PolyF::zero(self.modulus);
        }
        let m = self.modulus;
        let mut out = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(a, b, m), m);
            }
        }
        PolyF::new(m, out)
    }

    pub fn div_rem(&self, d: &PolyF) -> (PolyF, PolyF) {
        let m = self.modulus;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = inv_mod(d.lead(), m).expect("prime modulus");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (PolyF::zero(m), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = mul_mod(r[i + dd], inv, m);
            if c != 0 {
                for (j, &dc) in d.coeffs.iter().enumerate() {
                    r[i + j] = sub_mod(r[i + j], mul_mod(c, dc, m), m);
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (PolyF::new(m, q), PolyF::new(m, r))
    }

    pub fn rem(&self, d: &PolyF) -> PolyF {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &PolyF) -> PolyF {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> PolyF {
        let m = self.modulus;
        PolyF::new(
            m,
            self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % m, m)).collect(),
        )
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).deg() == 0
    }

    /// `self^e mod g`.
    pub fn pow_mod(&self, e: &BigUint, g: &PolyF) -> PolyF {
        let mut result = PolyF::constant(self.modulus, 1).rem(g);
        let base = self.rem(g);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(g);
            if e.bit(i) {
                result = result.mul(&base).rem(g);
            }
        }
        result
    }

    pub fn eval(&self, x: u64) -> u64 {
        let m = self.modulus;
        self.coeffs.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, m), c, m))
    }
}

impl fmt::Display for PolyF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".into(),
                (1, c) => format!("{c}*x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}*x^{i}"),
            })
            .collect();
        write!(f, "{} (mod {})", terms.join(" + "), self.modulus)
    }
}

fn frobenius_exponent(l: u64, d: usize) -> BigUint {
    num_traits::pow(BigUint::from(l), d)
}

/// Distinct-degree factorization: degree -> number of irreducible factors of that degree.
pub fn factor_degree_pattern(f: &PolyF) -> Result<BTreeMap<usize, usize>> {
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let l = f.modulus();
    let lb = BigUint::from(l);
    let x = PolyF::x(l);
    let mut out = BTreeMap::new();
    let mut rest = f.monic();
    let mut h = x.clone();
    let mut i = 0;
    while rest.deg() >= 2 * (i + 1) {
        i += 1;
        h = h.pow_mod(&lb, &rest);
        let g = rest.gcd(&h.sub(&x));
        if g.deg() > 0 {
            out.insert(i, g.deg() / i);
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
        }
    }
    if rest.deg() > 0 {
        *out.entry(rest.deg()).or_insert(0) += 1;
    }
    Ok(out)
}

fn split_once(f: &PolyF, d: usize, rng: &mut ChaCha8Rng) -> PolyF {
    let l = f.modulus();
    let n = f.deg();
    loop {
        let a = PolyF::new(l, (0..n).map(|_| rng.gen_range(0..l)).collect());
        if a.deg() == 0 {
            continue;
        }
        let b = if l == 2 {
            // Absolute trace to F_2 of the element a of F_{2^d}.
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (frobenius_exponent(l, d) - BigUint::one()) >> 1;
            a.pow_mod(&e, f).sub(&PolyF::constant(l, 1))
        };
        let g = f.gcd(&b);
        if g.deg() > 0 && g.deg() < n {
            return g;
        }
    }
}

/// All monic irreducible factors of `f`, given that each has degree `d`, sorted.
pub fn equal_degree_factors(f: &PolyF, d: usize, seed: u64) -> Result<Vec<PolyF>> {
    let pattern = factor_degree_pattern(f)?;
    if d == 0 || pattern.len() != 1 || !pattern.contains_key(&d) {
        return Err(Error::DegreeMismatch(d));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut todo = vec![f.monic()];
    let mut out = Vec::new();
    while let Some(g) = todo.pop() {
        if g.deg() == d {
            out.push(g);
            continue;
        }
        let a = split_once(&g, d, &mut rng);
        let b = g.div_rem(&a).0.monic();
        todo.push(a);
        todo.push(b);
    }
    out.sort();
    Ok(out)
}

/// One monic irreducible factor of degree `d` (the smallest in coefficient order,
/// so the choice does not depend on the seed).
pub fn irreducible_factor(f: &PolyF, d: usize, seed: u64) -> Result<PolyF> {
    Ok(equal_degree_factors(f, d, seed)?.swap_remove(0))
}

/// Euler's criterion in F_l[x]/(g) for irreducible `g`.
pub fn is_square_in_extension(a: &PolyF, g: &PolyF) -> Result<bool> {
    let r = a.rem(g);
    if r.is_zero() {
        return Err(Error::ZeroElement);
    }
    let l = g.modulus();
    if l == 2 {
        return Ok(true);
    }
    let e = (frobenius_exponent(l, g.deg()) - BigUint::one()) >> 1;
    Ok(r.pow_mod(&e, g) == PolyF::constant(l, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pf(l: u64, cs: &[i64]) -> PolyF {
        PolyF::from_i64(l, cs)
    }

    /// All monic polynomials of degree `d` over F_l.
    fn monics(l: u64, d: usize) -> Vec<PolyF> {
        let count = l.pow(d as u32);
        (0..count)
            .map(|mut k| {
                let mut cs = Vec::with_capacity(d + 1);
                for _ in 0..d {
                    cs.push(k % l);
                    k /= l;
                }
                cs.push(1);
                PolyF::new(l, cs)
            })
            .collect()
    }

    fn is_irreducible_brute(f: &PolyF) -> bool {
        let n = f.degree().unwrap();
        (1..=n / 2).all(|d| monics(f.modulus(), d).iter().all(|g| !f.rem(g).is_zero()))
    }

    #[test]
    fn degree_patterns() {
        let p = factor_degree_pattern(&pf(3, &[1, 0, 1])).unwrap();
        assert_eq!(p.into_iter().collect::<Vec<_>>(), vec![(2, 1)]);
        let p = factor_degree_pattern(&pf(3, &[-1, 0, 1])).unwrap();
        assert_eq!(p.into_iter().collect::<Vec<_>>(), vec![(1, 2)]);
        let f = pf(2, &[1, 1, 0, 0, 1]);
        assert!(is_irreducible_brute(&f));
        let p = factor_degree_pattern(&f).unwrap();
        assert_eq!(p.into_iter().collect::<Vec<_>>(), vec![(4, 1)]);
        assert_eq!(factor_degree_pattern(&pf(5, &[1, 2, 1])), Err(Error::NotSquarefree));
    }

    #[test]
    fn equal_degree_examples() {
        let g = irreducible_factor(&pf(3, &[-1, 0, 1]), 1, 7).unwrap();
        assert!(g == pf(3, &[1, 1]) || g == pf(3, &[-1, 1]));
        let f = pf(2, &[1, 1, 0, 0, 1]);
        assert_eq!(irreducible_factor(&f, 4, 1).unwrap(), f);
        let q1 = pf(3, &[1, 0, 1]);
        let q2 = pf(3, &[2, 1, 1]);
        let fs = equal_degree_factors(&q1.mul(&q2), 2, 0).unwrap();
        let mut want = vec![q1, q2];
        want.sort();
        assert_eq!(fs, want);
        assert_eq!(irreducible_factor(&pf(5, &[2, 0, 1]).mul(&pf(5, &[-1, 1])), 1, 0), Err(Error::DegreeMismatch(1)));
        // F_2 splitting path: product of the two irreducible cubics.
        let fs = equal_degree_factors(&pf(2, &[1, 1, 0, 1]).mul(&pf(2, &[1, 0, 1, 1])), 3, 5).unwrap();
        assert_eq!(fs.len(), 2);
    }

    #[test]
    fn squares_in_extensions() {
        let g = pf(3, &[1, 0, 1]);
        assert!(is_square_in_extension(&pf(3, &[1]), &g).unwrap());
        assert!(is_square_in_extension(&pf(3, &[0, 1]), &g).unwrap());
        assert!(!is_square_in_extension(&pf(5, &[2]), &pf(5, &[0, 1])).unwrap());
        assert!(!is_square_in_extension(&pf(5, &[2]), &pf(5, &[1, 1, 0, 1])).unwrap());
        assert_eq!(is_square_in_extension(&g, &g), Err(Error::ZeroElement));
    }

    /// Brute force against all elements of F_{l^d} for l^d <= 81.
    #[test]
    fn euler_criterion_matches_brute_force() {
        for (l, d) in [(3u64, 1usize), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (7, 1), (7, 2)] {
            let g = monics(l, d).into_iter().find(is_irreducible_brute).unwrap();
            let elements: Vec<PolyF> = (0..l.pow(d as u32))
                .map(|mut k| {
                    let mut cs = Vec::new();
                    for _ in 0..d {
                        cs.push(k % l);
                        k /= l;
                    }
                    PolyF::new(l, cs)
                })
                .collect();
            let squares: std::collections::HashSet<PolyF> =
                elements.iter().map(|e| e.mul(e).rem(&g)).collect();
            for e in elements.iter().filter(|e| !e.is_zero()) {
                assert_eq!(is_square_in_extension(e, &g).unwrap(), squares.contains(e), "{e} mod {g}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn factors_multiply_back(
            l in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 31, 97]),
            cs in prop::collection::vec(0u64..97, 2..13),
            seed in 0u64..1000,
        ) {
            let mut cs = cs;
            cs.push(1);
            let f = PolyF::new(l, cs);
            prop_assume!(f.degree().unwrap_or(0) >= 1 && f.is_squarefree());
            let pattern = factor_degree_pattern(&f).unwrap();
            let total: usize = pattern.iter().map(|(d, c)| d * c).sum();
            prop_assert_eq!(total, f.degree().unwrap());
            // Split the distinct-degree parts and check the product.
            let x = PolyF::x(l);
            let mut product = PolyF::constant(l, 1);
            for (&d, &count) in &pattern {
                let e = frobenius_exponent(l, d);
                let part = f.gcd(&x.pow_mod(&e, &f).sub(&x));
                // part contains all factors of degree dividing d; strip lower degrees.
                let mut part = part;
                for (&d2, _) in pattern.range(..d) {
                    if d % d2 == 0 {
                        let lower = part.gcd(&x.pow_mod(&frobenius_exponent(l, d2), &part).sub(&x));
                        part = part.div_rem(&lower).0.monic();
                    }
                }
                let fs = equal_degree_factors(&part, d, seed).unwrap();
                prop_assert_eq!(fs.len(), count);
                for g in &fs {
                    prop_assert_eq!(g.degree(), Some(d));
                    product = product.mul(g);
                }
            }
            prop_assert_eq!(product, f.monic());
        }
    }
}
