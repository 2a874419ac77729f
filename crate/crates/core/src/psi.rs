//! The Galois character on the isogeny kernel, realized as a Dirichlet
//! character with values in F_p^x, and its local symbols at -1.
//!
//! Values in F_p^x are stored as exponents of the smallest primitive root of p,
//! so all character algebra is arithmetic mod p - 1.

use crate::arith::modular::{gcd, inv_mod, kronecker, lcm, mul_mod, mult_order, pow_mod, primitive_root};
use crate::arith::poly_f::{factor_degree_pattern, irreducible_factor, is_square_in_extension};
use crate::arith::sturm::{real_root_isolate, sign_at_root};
use crate::arith::units::{crt_lift, euler_phi, factor_small, unit_group_generators, UnitGenerator};
use crate::arith::int_valuation;
use crate::error::{Error, Result};
use crate::isogeny::{a_ell, two_torsion_cubic, KernelPolynomial};
use crate::models::WeierstrassModel;
use crate::sign::Sign;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusSample {
    pub prime: u64,
    /// Residue in [1, p).
    pub eigenvalue: u64,
}

/// Restriction of a character to (Z/q^a)^x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalComponent {
    pub prime: u64,
    pub modulus: u64,
    /// Exponent at each residue; `NONE` at non-units.
    table: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterData {
    pub p: u64,
    pub modulus: u64,
    /// Fixed primitive root of p; values are exponents of it.
    pub root: u64,
    pub generators: Vec<UnitGenerator>,
    /// Exponent mod p - 1 at each generator.
    pub values: Vec<u64>,
    pub components: BTreeMap<u64, LocalComponent>,
}

impl LocalComponent {
    pub fn value(&self, n: u64) -> Option<u64> {
        match self.table[(n % self.modulus) as usize] {
            NONE => None,
            v => Some(v as u64),
        }
    }

    fn values(&self) -> impl Iterator<Item = u64> + '_ {
        self.table.iter().filter(|&&v| v != NONE).map(|&v| v as u64)
    }

    pub fn order(&self, p: u64) -> u64 {
        self.values().fold(1, |acc, v| lcm(acc, (p - 1) / gcd(v, p - 1)))
    }

    pub fn is_trivial(&self) -> bool {
        self.values().all(|v| v == 0)
    }

    /// Smallest `c` such that the component is trivial on units that are 1 mod q^c.
    pub fn conductor_exponent(&self) -> u32 {
        let mut c = 0u32;
        let mut qc = 1u64;
        while qc < self.modulus {
            let trivial_on_kernel = (0..self.modulus / qc)
                .map(|k| (1 + k * qc) % self.modulus)
                .all(|x| self.value(x).is_none_or(|v| v == 0));
            if trivial_on_kernel {
                return c;
            }
            c += 1;
            qc *= self.prime;
        }
        c
    }
}

impl CharacterData {
    /// Builds the character from its exponent at every residue mod `modulus`.
    fn from_table(p: u64, modulus: u64, table: &[u32]) -> CharacterData {
        let generators = unit_group_generators(modulus);
        let values = generators.iter().map(|g| table[g.residue as usize] as u64).collect();
        let mut components = BTreeMap::new();
        for (q, a) in factor_small(modulus) {
            let qa = q.pow(a);
            let local: Vec<u32> = (0..qa)
                .map(|x| if x % q == 0 { NONE } else { table[crt_lift(x, qa, modulus) as usize] })
                .collect();
            components.insert(q, LocalComponent { prime: q, modulus: qa, table: local });
        }
        CharacterData { p, modulus, root: primitive_root(p), generators, values, components }
    }

    fn from_fn(p: u64, modulus: u64, f: impl Fn(u64) -> u64) -> CharacterData {
        let table: Vec<u32> = (0..modulus)
            .map(|x| if gcd(x, modulus) == 1 { (f(x) % (p - 1)) as u32 } else { NONE })
            .collect();
        CharacterData::from_table(p, modulus, &table)
    }

    pub fn principal(p: u64, modulus: u64) -> CharacterData {
        CharacterData::from_fn(p, modulus, |_| 0)
    }

    /// Reduction mod p composed with the identity of F_p^x.
    pub fn cyclotomic(p: u64) -> CharacterData {
        let logs = discrete_logs(p);
        CharacterData::from_fn(p, p, |x| logs[x as usize])
    }

    /// Quadratic character of Q(sqrt d) for squarefree `d`, with values in F_p^x.
    pub fn quadratic(d: i64, p: u64) -> CharacterData {
        let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d };
        let modulus = disc.unsigned_abs();
        if modulus == 1 {
            return CharacterData::principal(p, 1);
        }
        CharacterData::from_fn(p, modulus, |x| if kronecker(disc, x) == 1 { 0 } else { (p - 1) / 2 })
    }

    /// Exponent at `n`, or `None` when `n` is not a unit mod the modulus.
    pub fn eval(&self, n: u64) -> Option<u64> {
        let mut total = 0;
        for c in self.components.values() {
            total += c.value(n)?;
        }
        Some(total % (self.p - 1))
    }

    /// Value at `n` as an element of F_p.
    pub fn eval_residue(&self, n: u64) -> Option<u64> {
        self.eval(n).map(|e| pow_mod(self.root, e, self.p))
    }

    pub fn order(&self) -> u64 {
        self.components.values().fold(1, |acc, c| lcm(acc, c.order(self.p)))
    }

    /// Primes at which the character is ramified.
    pub fn conductor_primes(&self) -> Vec<u64> {
        self.components.values().filter(|c| !c.is_trivial()).map(|c| c.prime).collect()
    }

    pub fn conductor(&self) -> u64 {
        self.components.values().map(|c| c.prime.pow(c.conductor_exponent())).product()
    }

    /// Pointwise product, on the lcm of the moduli.
    pub fn mul(&self, other: &CharacterData) -> CharacterData {
        assert_eq!(self.p, other.p);
        let m = lcm(self.modulus, other.modulus);
        CharacterData::from_fn(self.p, m, |x| self.eval(x).unwrap() + other.eval(x).unwrap())
    }

    /// Same character, compared on generators of the common unit group.
    pub fn same_as(&self, other: &CharacterData) -> bool {
        self.p == other.p && {
            let m = lcm(self.modulus, other.modulus);
            unit_group_generators(m).iter().all(|g| self.eval(g.residue) == other.eval(g.residue))
        }
    }

    fn sign_of_exponent(&self, e: u64) -> Sign {
        let half = (self.p - 1) / 2;
        assert!(e == 0 || e == half, "value at -1 must have order at most 2");
        Sign::from_bool(e == 0)
    }
}

/// Discrete logarithms to the smallest primitive root, indexed by residue.
fn discrete_logs(p: u64) -> Vec<u64> {
    let g = primitive_root(p);
    let mut logs = vec![0u64; p as usize];
    let mut x = 1;
    for k in 0..p - 1 {
        logs[x as usize] = k;
        x = mul_mod(x, g, p);
    }
    logs
}

/// `(psi, -1)` at a finite prime.
pub fn local_symbol(chi: &CharacterData, l: u64) -> Sign {
    match chi.components.get(&l) {
        None => Sign::Plus,
        Some(c) => chi.sign_of_exponent(c.value(c.modulus - 1).expect("-1 is a unit")),
    }
}

/// `(psi, -1)` at the real place: the value at -1.
pub fn infinite_symbol(chi: &CharacterData) -> Sign {
    chi.sign_of_exponent(chi.eval(chi.modulus - 1).expect("-1 is a unit"))
}

/// Order of the component at p.
pub fn ramification_index_at_p(chi: &CharacterData) -> u64 {
    chi.components.get(&chi.p).map_or(1, |c| c.order(chi.p))
}

/// Whether the kernel points are real: the cubic `4x^3 + b2 x^2 + 2 b4 x + b6`
/// is positive at the (real) roots of h.
pub fn kernel_is_real(e: &WeierstrassModel, k: &KernelPolynomial) -> Result<bool> {
    let f = two_torsion_cubic(e);
    let roots = real_root_isolate(&k.h)?;
    let signs: Vec<i8> = roots.iter().map(|iv| sign_at_root(&k.h, iv, &f)).collect();
    if signs.len() != k.degree() {
        return Err(Error::InvalidKernel("kernel polynomial has non-real roots".into()));
    }
    assert!(signs.iter().all(|&s| s == signs[0]), "kernel points split between real and imaginary");
    Ok(signs[0] > 0)
}

/// Frobenius eigenvalue on the kernel at a good odd prime `l != p`.
pub fn frobenius_eigenvalue(e: &WeierstrassModel, k: &KernelPolynomial, l: u64, bound: u64, seed: u64) -> Result<u64> {
    let p = k.p;
    if l == 2 || l == p {
        return Err(Error::Input(format!("Frobenius eigenvalue is computed only at odd primes other than {p}")));
    }
    let a = a_ell(e, l, bound)?;
    let h = k.h.reduce(l).ok_or(Error::NonIntegralModel(l))?;
    let pattern = factor_degree_pattern(&h)?;
    if pattern.len() != 1 {
        return Err(Error::MixedDegrees(l));
    }
    let d = *pattern.keys().next().unwrap();
    let g = irreducible_factor(&h, d, seed ^ l)?;
    let f = two_torsion_cubic(e).reduce(l).ok_or(Error::NonIntegralModel(l))?;
    let order = if is_square_in_extension(&f, &g)? { d as u64 } else { 2 * d as u64 };
    let a_mod = a.rem_euclid(p as i64) as u64;
    let l_mod = l % p;
    let survivors: Vec<u64> = (1..p)
        .filter(|&x| mult_order(x, p, p - 1) == order)
        .filter(|&x| (x + mul_mod(l_mod, inv_mod(x, p).unwrap(), p)) % p == a_mod)
        .collect();
    match survivors.as_slice() {
        [x] => Ok(*x),
        [] => Err(Error::NoEigenvalue(l)),
        _ => Err(Error::Ambiguous(l)),
    }
}

/// `p * prod l^{e_l}` over bad primes `l != p`, with `e_l = 1 + v_l(p-1) + [l = 2]`.
pub fn character_modulus(p: u64, bad_primes: &[u64]) -> u64 {
    let mut m = p;
    for &l in bad_primes.iter().filter(|&&l| l != p) {
        let v = int_valuation(&BigInt::from(p - 1), l).finite().unwrap() as u32;
        let e = 1 + v + (l == 2) as u32;
        m *= l.pow(e);
    }
    m
}

/// Incremental solver: grows the subgroup generated by the sampled residues,
/// recording the forced exponent at each of its elements.
struct CharacterSolver {
    p: u64,
    modulus: u64,
    table: Vec<u32>,
    members: Vec<u64>,
    phi: usize,
}

impl CharacterSolver {
    fn new(p: u64, modulus: u64) -> CharacterSolver {
        let mut table = vec![NONE; modulus as usize];
        table[(1 % modulus) as usize] = 0;
        CharacterSolver { p, modulus, table, members: vec![1 % modulus], phi: euler_phi(modulus) as usize }
    }

    fn is_complete(&self) -> bool {
        self.members.len() == self.phi
    }

    fn add(&mut self, residue: u64, exponent: u64) -> Result<()> {
        let m = self.modulus;
        let n = self.p - 1;
        let r = residue % m;
        if gcd(r, m) != 1 {
            return Err(Error::Input(format!("sample residue {residue} is not a unit mod {m}")));
        }
        // Smallest k with r^k already in the subgroup.
        let mut k = 1u64;
        let mut pw = r;
        while self.table[pw as usize] == NONE {
            pw = mul_mod(pw, r, m);
            k += 1;
        }
        if (exponent * k) % n != self.table[pw as usize] as u64 {
            return Err(Error::NoMatch(format!("sample at residue {r} mod {m} contradicts earlier samples")));
        }
        let old = self.members.clone();
        let mut gk = 1u64;
        for j in 1..k {
            gk = mul_mod(gk, r, m);
            for &h in &old {
                let x = mul_mod(h, gk, m);
                self.table[x as usize] = ((self.table[h as usize] as u64 + j * exponent) % n) as u32;
                self.members.push(x);
            }
        }
        Ok(())
    }

    fn finish(self) -> CharacterData {
        CharacterData::from_table(self.p, self.modulus, &self.table)
    }
}

/// The character mod `character_modulus(p, bad_primes)` taking the sampled values.
pub fn reconstruct_character(samples: &[FrobeniusSample], p: u64, bad_primes: &[u64]) -> Result<CharacterData> {
    let modulus = character_modulus(p, bad_primes);
    let logs = discrete_logs(p);
    let mut solver = CharacterSolver::new(p, modulus);
    for s in samples {
        solver.add(s.prime, logs[s.eigenvalue as usize])?;
    }
    if !solver.is_complete() {
        return Err(Error::Underdetermined(format!(
            "{} samples generate {} of {} units mod {modulus}",
            samples.len(),
            solver.members.len(),
            solver.phi
        )));
    }
    Ok(solver.finish())
}

/// Samples used for a reconstruction plus the validated hold-out prime.
#[derive(Clone, Debug)]
pub struct CharacterReconstruction {
    pub character: CharacterData,
    pub samples: Vec<FrobeniusSample>,
    pub holdout: FrobeniusSample,
    pub skipped: Vec<u64>,
}

/// Samples Frobenius at increasing good primes until they generate the unit
/// group, reconstructs the character, and checks it on the next usable prime.
pub fn sample_character(
    e: &WeierstrassModel,
    k: &KernelPolynomial,
    bad_primes: &[u64],
    bound: u64,
    seed: u64,
) -> Result<CharacterReconstruction> {
    let p = k.p;
    let modulus = character_modulus(p, bad_primes);
    let logs = discrete_logs(p);
    let mut solver = CharacterSolver::new(p, modulus);
    let mut samples = Vec::new();
    let mut skipped = Vec::new();
    for l in crate::arith::primes::primes_up_to(bound) {
        if l == 2 || modulus.is_multiple_of(l) {
            continue;
        }
        let lambda = match frobenius_eigenvalue(e, k, l, bound, seed) {
            Ok(x) => x,
            Err(Error::Ambiguous(_)) | Err(Error::NonIntegralModel(_)) => {
                skipped.push(l);
                continue;
            }
            Err(err) => return Err(err),
        };
        let sample = FrobeniusSample { prime: l, eigenvalue: lambda };
        if solver.is_complete() {
            let character = solver.finish();
            if character.eval(l) != Some(logs[lambda as usize]) {
                return Err(Error::NoMatch(format!("hold-out prime {l} disagrees with the reconstruction")));
            }
            return Ok(CharacterReconstruction { character, samples, holdout: sample, skipped });
        }
        solver.add(l, logs[lambda as usize])?;
        samples.push(sample);
    }
    Err(Error::Underdetermined(format!("primes up to {bound} did not generate the units mod {modulus}")))
}
