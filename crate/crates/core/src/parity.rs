//! Local root numbers, local isogeny signs, and the per-place and global
//! checks of `w = (psi, -1) * sigma`.

use crate::arith::{int_valuation, primes::primes_up_to, rat};
use crate::arith::modular::kronecker;
use crate::error::{Error, Result};
use crate::isogeny::{alpha_valuation_at_p, validate_kernel, IsogenyData, KernelPolynomial};
use crate::localdata::{conductor_exponent, supports_root_number, tate_algorithm, LocalData, ReductionClass};
use crate::models::{bad_primes, global_minimal_model, quadratic_twist, to_short_form, WeierstrassModel};
use crate::psi::{infinite_symbol, kernel_is_real, local_symbol, sample_character, CharacterData, CharacterReconstruction};
use crate::sign::Sign;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Place {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(l) => write!(f, "{l}"),
            Place::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;
    fn from_str(s: &str) -> Result<Place> {
        match s.trim() {
            "inf" | "oo" | "infinity" => Ok(Place::Infinite),
            t => t.parse().map(Place::Finite).map_err(|_| Error::Input(format!("bad place '{s}'"))),
        }
    }
}

impl From<Place> for String {
    fn from(p: Place) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for Place {
    type Error = Error;
    fn try_from(s: String) -> Result<Place> {
        s.parse()
    }
}

/// A local root number, or the marker for reduction types outside the formula's range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Value", try_from = "Value")]
pub enum RootNumber {
    Known(Sign),
    Unsupported,
}

impl From<RootNumber> for Value {
    fn from(w: RootNumber) -> Value {
        match w {
            RootNumber::Known(s) => Value::from(s.to_i8()),
            RootNumber::Unsupported => Value::from("unsupported"),
        }
    }
}

impl TryFrom<Value> for RootNumber {
    type Error = String;
    fn try_from(v: Value) -> std::result::Result<RootNumber, String> {
        match v.as_i64() {
            Some(1) => Ok(RootNumber::Known(Sign::Plus)),
            Some(-1) => Ok(RootNumber::Known(Sign::Minus)),
            _ if v == "unsupported" => Ok(RootNumber::Unsupported),
            _ => Err(format!("bad root number {v}")),
        }
    }
}

impl fmt::Display for RootNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootNumber::Known(s) => s.fmt(f),
            RootNumber::Unsupported => f.write_str("unsupported"),
        }
    }
}

impl RootNumber {
    pub fn known(self) -> Option<Sign> {
        match self {
            RootNumber::Known(s) => Some(s),
            RootNumber::Unsupported => None,
        }
    }
}

/// Outcome of an identity check: true, false, or "skipped" in serialized form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Value", try_from = "Value")]
pub enum Verdict {
    Holds,
    Fails,
    Skipped,
}

impl From<Verdict> for Value {
    fn from(v: Verdict) -> Value {
        match v {
            Verdict::Holds => Value::Bool(true),
            Verdict::Fails => Value::Bool(false),
            Verdict::Skipped => Value::from("skipped"),
        }
    }
}

impl TryFrom<Value> for Verdict {
    type Error = String;
    fn try_from(v: Value) -> std::result::Result<Verdict, String> {
        match v {
            Value::Bool(true) => Ok(Verdict::Holds),
            Value::Bool(false) => Ok(Verdict::Fails),
            Value::String(s) if s == "skipped" => Ok(Verdict::Skipped),
            other => Err(format!("bad verdict {other}")),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "FAILS",
            Verdict::Skipped => "skipped",
        })
    }
}

impl Verdict {
    fn of(b: bool) -> Verdict {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaceRole {
    Bad,
    IsogenyPrime,
    Infinite,
    GoodSample,
}

impl fmt::Display for PlaceRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PlaceRole::Bad => "bad",
            PlaceRole::IsogenyPrime => "isogeny",
            PlaceRole::Infinite => "real",
            PlaceRole::GoodSample => "good",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceVerdict {
    pub place: Place,
    pub role: PlaceRole,
    pub reduction: Option<ReductionClass>,
    /// Tamagawa numbers of domain and codomain.
    pub tamagawa: Option<[u32; 2]>,
    pub w: RootNumber,
    pub symbol: Sign,
    pub sigma: Sign,
    pub holds: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalReport {
    pub label: String,
    pub p: u64,
    pub places: Vec<PlaceVerdict>,
    pub w_global: RootNumber,
    pub sigma_product: Sign,
    pub symbol_product: Sign,
    pub global_holds: Verdict,
}

impl GlobalReport {
    pub fn has_unsupported(&self) -> bool {
        self.w_global == RootNumber::Unsupported
    }

    /// A place where the identity fails, or a failing global identity.
    pub fn first_failure(&self) -> Option<String> {
        if let Some(v) = self.places.iter().find(|v| v.holds == Verdict::Fails) {
            return Some(format!(
                "{} at place {}: w = {}, symbol = {}, sigma = {}",
                self.label, v.place, v.w, v.symbol, v.sigma
            ));
        }
        if self.symbol_product != Sign::Plus {
            return Some(format!("{}: product of local symbols is {}", self.label, self.symbol_product));
        }
        if self.global_holds == Verdict::Fails {
            return Some(format!(
                "{}: global root number {} but product of sigma is {}",
                self.label, self.w_global, self.sigma_product
            ));
        }
        None
    }

    pub fn all_hold(&self) -> bool {
        self.first_failure().is_none()
    }

    /// The report, or `GlobalUnsupported` when some root number is outside the formula's range.
    pub fn require_supported(&self) -> Result<&GlobalReport> {
        if self.has_unsupported() {
            Err(Error::GlobalUnsupported)
        } else {
            Ok(self)
        }
    }
}

/// Local root number from the reduction data of a minimal model.
pub fn root_number(d: &LocalData) -> RootNumber {
    let l = d.prime;
    if !supports_root_number(d, l) {
        return RootNumber::Unsupported;
    }
    RootNumber::Known(match d.class {
        ReductionClass::Good | ReductionClass::MultiplicativeNonsplit => Sign::Plus,
        ReductionClass::MultiplicativeSplit => Sign::Minus,
        ReductionClass::AdditivePotentiallyMultiplicative => Sign::from_bool(l % 4 == 1),
        ReductionClass::AdditivePotentiallyGood => Sign::from_parity((d.disc_valuation as u64 * l / 12) as i64),
    })
}

pub fn root_number_infinite() -> Sign {
    Sign::Minus
}

/// `(-1)^{ord_p(c'/c)}`, times `(-1)^{v_p(alpha)}` at `l = p`; at the real
/// place, `-1` exactly when the kernel points are real.
pub fn sigma_place(
    p: u64,
    alpha_valuation: i64,
    kernel_real: bool,
    domain: Option<&LocalData>,
    codomain: Option<&LocalData>,
    place: Place,
) -> Sign {
    match place {
        Place::Infinite => Sign::from_bool(!kernel_real),
        Place::Finite(l) => {
            let (d, c) = (domain.expect("domain data"), codomain.expect("codomain data"));
            let mut e = tamagawa_ratio_valuation(p, d.tamagawa, c.tamagawa);
            if l == p {
                e += alpha_valuation;
            }
            Sign::from_parity(e)
        }
    }
}

/// `ord_p(c'/c)`.
pub fn tamagawa_ratio_valuation(p: u64, c: u32, c_prime: u32) -> i64 {
    let v = |n: u32| int_valuation(&BigInt::from(n), p).finite().expect("Tamagawa numbers are nonzero");
    v(c_prime) - v(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaultKind {
    /// Multiplies the codomain Tamagawa number by p.
    Tamagawa,
    /// Flips the local symbol.
    Symbol,
}

/// A deliberate corruption used as a negative control.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fault {
    pub place: Place,
    pub kind: FaultKind,
}

#[derive(Clone, Copy, Debug)]
pub struct PairOptions {
    pub frobenius_bound: u64,
    pub seed: u64,
}

impl Default for PairOptions {
    fn default() -> Self {
        PairOptions { frobenius_bound: 10_000, seed: 0 }
    }
}

/// Everything needed to evaluate both sides of the identity for one isogeny.
#[derive(Clone, Debug)]
pub struct IsogenyPair {
    pub label: String,
    pub iso: IsogenyData,
    pub bad_primes: Vec<u64>,
    pub alpha_valuation: i64,
    pub kernel_real: bool,
    pub reconstruction: CharacterReconstruction,
    pub local_domain: BTreeMap<u64, LocalData>,
    pub local_codomain: BTreeMap<u64, LocalData>,
    pub faults: Vec<Fault>,
}

impl IsogenyPair {
    /// Minimalizes the domain, moves the kernel along, and computes the local
    /// data and the character. The kernel is assumed valid.
    pub fn new(label: &str, model: &WeierstrassModel, kernel: &KernelPolynomial, opts: &PairOptions) -> Result<IsogenyPair> {
        let (domain, tr) = global_minimal_model(model)?;
        let kernel = kernel.transformed(&tr);
        let iso = IsogenyData::new(&domain, &kernel)?;
        let alpha_valuation = alpha_valuation_at_p(&iso)?;
        let mut bad: BTreeSet<u64> = bad_primes(&domain)?.into_iter().collect();
        bad.extend(bad_primes(&iso.codomain_min)?);
        let bad_primes: Vec<u64> = bad.into_iter().collect();
        let mut local_domain = BTreeMap::new();
        let mut local_codomain = BTreeMap::new();
        for &l in bad_primes.iter().chain(std::iter::once(&kernel.p)) {
            local_domain.insert(l, tate_algorithm(&domain, l)?);
            local_codomain.insert(l, tate_algorithm(&iso.codomain_min, l)?);
        }
        let reconstruction = sample_character(&domain, &kernel, &bad_primes, opts.frobenius_bound, opts.seed)?;
        let kernel_real = kernel_is_real(&domain, &kernel)?;
        Ok(IsogenyPair {
            label: label.to_string(),
            iso,
            bad_primes,
            alpha_valuation,
            kernel_real,
            reconstruction,
            local_domain,
            local_codomain,
            faults: Vec::new(),
        })
    }

    pub fn p(&self) -> u64 {
        self.iso.p
    }

    pub fn character(&self) -> &CharacterData {
        &self.reconstruction.character
    }

    /// Bad primes, p, and the real place.
    pub fn enumerated_places(&self) -> Vec<Place> {
        let mut ls: BTreeSet<u64> = self.bad_primes.iter().copied().collect();
        ls.insert(self.p());
        ls.into_iter().map(Place::Finite).chain(std::iter::once(Place::Infinite)).collect()
    }

    fn local_pair(&self, l: u64) -> Result<(LocalData, LocalData)> {
        match (self.local_domain.get(&l), self.local_codomain.get(&l)) {
            (Some(d), Some(c)) => Ok((d.clone(), c.clone())),
            _ => Ok((tate_algorithm(&self.iso.domain, l)?, tate_algorithm(&self.iso.codomain_min, l)?)),
        }
    }

    fn fault_at(&self, place: Place, kind: FaultKind) -> bool {
        self.faults.iter().any(|f| f.place == place && f.kind == kind)
    }

    /// Good primes below 200 other than p, chosen deterministically from `seed`.
    pub fn good_place_sample(&self, n: usize, seed: u64) -> Vec<u64> {
        let mut candidates: Vec<u64> = primes_up_to(200)
            .into_iter()
            .filter(|l| *l != self.p() && !self.bad_primes.contains(l))
            .collect();
        candidates.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        candidates.truncate(n);
        candidates.sort_unstable();
        candidates
    }
}

/// Evaluates `w`, the local symbol and `sigma` independently at one place.
pub fn verify_place(pair: &IsogenyPair, place: Place) -> Result<PlaceVerdict> {
    let chi = pair.character();
    let p = pair.p();
    let (role, reduction, tamagawa, w, mut symbol, sigma) = match place {
        Place::Infinite => (
            PlaceRole::Infinite,
            None,
            None,
            RootNumber::Known(root_number_infinite()),
            infinite_symbol(chi),
            sigma_place(p, pair.alpha_valuation, pair.kernel_real, None, None, place),
        ),
        Place::Finite(l) => {
            let (d, mut c) = pair.local_pair(l)?;
            if pair.fault_at(place, FaultKind::Tamagawa) {
                c.tamagawa *= p as u32;
            }
            let role = if l == p {
                PlaceRole::IsogenyPrime
            } else if pair.bad_primes.contains(&l) {
                PlaceRole::Bad
            } else {
                PlaceRole::GoodSample
            };
            let sigma = sigma_place(p, pair.alpha_valuation, pair.kernel_real, Some(&d), Some(&c), place);
            (role, Some(d.class), Some([d.tamagawa, c.tamagawa]), root_number(&d), local_symbol(chi, l), sigma)
        }
    };
    if pair.fault_at(place, FaultKind::Symbol) {
        symbol = -symbol;
    }
    let holds = match w {
        RootNumber::Known(w) => Verdict::of(w == symbol * sigma),
        RootNumber::Unsupported => Verdict::Skipped,
    };
    Ok(PlaceVerdict { place, role, reduction, tamagawa, w, symbol, sigma, holds })
}

/// Checks every enumerated place plus the given good primes, and the global
/// identities over the enumerated places.
pub fn verify_global(pair: &IsogenyPair, good_sample: &[u64]) -> Result<GlobalReport> {
    let enumerated = pair.enumerated_places();
    let mut places = Vec::new();
    for &place in &enumerated {
        places.push(verify_place(pair, place)?);
    }
    let mut w_global = RootNumber::Known(Sign::Plus);
    for v in &places {
        w_global = match (w_global, v.w) {
            (RootNumber::Known(a), RootNumber::Known(b)) => RootNumber::Known(a * b),
            _ => RootNumber::Unsupported,
        };
    }
    let sigma_product = Sign::product(places.iter().map(|v| v.sigma));
    let symbol_product = Sign::product(places.iter().map(|v| v.symbol));
    let global_holds = match w_global {
        RootNumber::Known(w) => Verdict::of(w == sigma_product),
        RootNumber::Unsupported => Verdict::Skipped,
    };
    for &l in good_sample {
        if !enumerated.contains(&Place::Finite(l)) {
            places.push(verify_place(pair, Place::Finite(l))?);
        }
    }
    places.sort_by_key(|v| v.place);
    Ok(GlobalReport { label: pair.label.clone(), p: pair.p(), places, w_global, sigma_product, symbol_product, global_holds })
}

/// Conductor of the domain, from the local data at the bad primes.
pub fn conductor(pair: &IsogenyPair) -> BigInt {
    pair.bad_primes
        .iter()
        .map(|l| BigInt::from(*l).pow(conductor_exponent(&pair.local_domain[l])))
        .product()
}

/// The kernel polynomial of the twisted isogeny, on the short twisted model.
pub fn twisted_kernel(domain: &WeierstrassModel, kernel: &KernelPolynomial, d: i64) -> KernelPolynomial {
    let (_, tr) = to_short_form(domain);
    let short = kernel.transformed(&tr);
    let h = short.h.compose_linear(&crate::arith::rat_frac(1, d), &rat(0)).monic();
    KernelPolynomial { p: kernel.p, h }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistReport {
    pub label: String,
    pub d: i64,
    pub twisted_model: String,
    pub twisted_kernel: String,
    pub kernel_valid: bool,
    /// The twisted character equals the original times the quadratic character of Q(sqrt d).
    pub character_matches: bool,
    /// The short twisted model has discriminant `d^6` times that of the short model.
    pub discriminant_scales: bool,
    /// Global root number of the twist from `w(E) * chi_D(-N)` when `gcd(D, N) = 1`.
    pub inferred_w_global: Option<Sign>,
    pub report: GlobalReport,
}

impl TwistReport {
    /// The global identity, using the inferred root number when some local one is unsupported.
    pub fn global_holds(&self) -> Verdict {
        match (self.report.global_holds, self.inferred_w_global) {
            (Verdict::Skipped, Some(w)) => Verdict::of(w == self.report.sigma_product),
            (v, _) => v,
        }
    }

    pub fn all_hold(&self) -> bool {
        self.kernel_valid
            && self.character_matches
            && self.discriminant_scales
            && self.report.all_hold()
            && self.global_holds() != Verdict::Fails
    }
}

/// Twists the isogeny by `d` and re-runs the checks on the twisted pair,
/// including `good_sample` randomly chosen good places.
pub fn twist_report(pair: &IsogenyPair, d: i64, opts: &PairOptions, good_sample: usize) -> Result<TwistReport> {
    let domain = &pair.iso.domain;
    if d == 1 {
        let report = verify_global(pair, &pair.good_place_sample(good_sample, opts.seed))?;
        return Ok(TwistReport {
            label: pair.label.clone(),
            d,
            twisted_model: domain.to_string(),
            twisted_kernel: pair.iso.kernel.h.to_string(),
            kernel_valid: true,
            character_matches: true,
            discriminant_scales: true,
            inferred_w_global: pair_global_root_number(pair),
            report,
        });
    }
    let label = format!("{}^({d})", pair.label);
    let twisted = quadratic_twist(domain, d)?;
    let kernel = twisted_kernel(domain, &pair.iso.kernel, d);
    let kernel_valid = validate_kernel(&twisted, &kernel);
    if !kernel_valid {
        return Err(Error::InvalidKernel(format!("twist of {} by {d} has an invalid kernel", pair.label)));
    }
    let short = to_short_form(domain).0;
    let d6 = rat(d).pow(6);
    let discriminant_scales = twisted.disc() == &short.disc() * &d6;
    let mut tp = IsogenyPair::new(&label, &twisted, &kernel, opts)?;
    tp.faults = pair.faults.clone();
    let tau = CharacterData::quadratic(d, pair.p());
    let character_matches = tp.character().same_as(&pair.character().mul(&tau));
    let report = verify_global(&tp, &tp.good_place_sample(good_sample, opts.seed))?;
    let inferred_w_global = pair_global_root_number(pair).and_then(|w| {
        let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d };
        let n = conductor(pair);
        let n = u64::try_from(&n).ok()?;
        if crate::arith::modular::gcd(disc.unsigned_abs(), n) != 1 {
            return None;
        }
        let chi_minus_n = Sign::from_bool(disc > 0) * Sign::from_bool(kronecker(disc, n) == 1);
        Some(w * chi_minus_n)
    });
    Ok(TwistReport {
        label,
        d,
        twisted_model: twisted.to_string(),
        twisted_kernel: kernel.h.to_string(),
        kernel_valid,
        character_matches,
        discriminant_scales,
        inferred_w_global,
        report,
    })
}

/// Product of the local root numbers, when all are supported.
fn pair_global_root_number(pair: &IsogenyPair) -> Option<Sign> {
    let mut w = root_number_infinite();
    for l in &pair.bad_primes {
        w = w * root_number(&pair.local_domain[l]).known()?;
    }
    Some(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat_frac, PolyQ};
    use crate::localdata::KodairaType;

    fn local(l: u64, v: u32, kodaira: KodairaType, class: ReductionClass) -> LocalData {
        LocalData { prime: l, disc_valuation: v, kodaira, tamagawa: 1, class }
    }

    fn pair_11a1() -> IsogenyPair {
        let e = WeierstrassModel::from_ints([0, -1, 1, -10, -20]).unwrap();
        let k = KernelPolynomial::new(5, PolyQ::new(vec![rat_frac(-29, 5), rat(1), rat(1)])).unwrap();
        IsogenyPair::new("11a1", &e, &k, &PairOptions::default()).unwrap()
    }

    #[test]
    fn root_number_table() {
        use ReductionClass::*;
        assert_eq!(root_number(&local(7, 0, KodairaType::I0, Good)), RootNumber::Known(Sign::Plus));
        assert_eq!(root_number(&local(11, 5, KodairaType::I(5), MultiplicativeSplit)), RootNumber::Known(Sign::Minus));
        assert_eq!(root_number(&local(11, 5, KodairaType::I(5), MultiplicativeNonsplit)), RootNumber::Known(Sign::Plus));
        assert_eq!(root_number(&local(13, 7, KodairaType::IStar(1), AdditivePotentiallyMultiplicative)), RootNumber::Known(Sign::Plus));
        assert_eq!(root_number(&local(7, 7, KodairaType::IStar(1), AdditivePotentiallyMultiplicative)), RootNumber::Known(Sign::Minus));
        // v = 3 at l = 23 (7 mod 8): floor(69/12) = 5.
        assert_eq!(root_number(&local(23, 3, KodairaType::III, AdditivePotentiallyGood)), RootNumber::Known(Sign::Minus));
        assert_eq!(root_number(&local(19, 3, KodairaType::III, AdditivePotentiallyGood)), RootNumber::Known(Sign::Plus));
        assert_eq!(root_number(&local(3, 3, KodairaType::III, AdditivePotentiallyGood)), RootNumber::Unsupported);
        assert_eq!(root_number(&local(2, 6, KodairaType::IStar(1), AdditivePotentiallyMultiplicative)), RootNumber::Unsupported);
        assert_eq!(root_number(&local(3, 7, KodairaType::IStar(1), AdditivePotentiallyMultiplicative)), RootNumber::Known(Sign::Minus));
        assert_eq!(root_number_infinite(), Sign::Minus);
    }

    #[test]
    fn sigma_from_tamagawa_ratio() {
        use ReductionClass::*;
        let good = local(7, 0, KodairaType::I0, Good);
        assert_eq!(sigma_place(5, 0, true, Some(&good), Some(&good), Place::Finite(7)), Sign::Plus);
        let mut c = local(11, 5, KodairaType::I(5), MultiplicativeSplit);
        c.tamagawa = 5;
        let c1 = local(11, 1, KodairaType::I(1), MultiplicativeSplit);
        assert_eq!(sigma_place(5, 0, true, Some(&c), Some(&c1), Place::Finite(11)), Sign::Minus);
        assert_eq!(tamagawa_ratio_valuation(5, 5, 1), -1);
        // At p, the differential scalar enters.
        assert_eq!(sigma_place(5, 1, true, Some(&good), Some(&good), Place::Finite(5)), Sign::Minus);
        assert_eq!(sigma_place(5, 0, true, None, None, Place::Infinite), Sign::Minus);
        assert_eq!(sigma_place(5, 0, false, None, None, Place::Infinite), Sign::Plus);
    }

    #[test]
    fn serde_of_markers() {
        let v = serde_json::to_string(&(Place::Infinite, Place::Finite(11), RootNumber::Unsupported, Verdict::Skipped)).unwrap();
        assert_eq!(v, r#"["inf","11","unsupported","skipped"]"#);
        let back: (Place, Place, RootNumber, Verdict) = serde_json::from_str(&v).unwrap();
        assert_eq!(back, (Place::Infinite, Place::Finite(11), RootNumber::Unsupported, Verdict::Skipped));
        assert_eq!(serde_json::to_string(&RootNumber::Known(Sign::Minus)).unwrap(), "-1");
    }

    #[test]
    fn eleven_a1_places() {
        let pair = pair_11a1();
        let report = verify_global(&pair, &pair.good_place_sample(5, 1)).unwrap();
        assert!(report.all_hold(), "{report:?}");
        assert_eq!(report.places.len(), 3 + 5);
        let at11 = report.places.iter().find(|v| v.place == Place::Finite(11)).unwrap();
        assert_eq!((at11.w, at11.symbol, at11.sigma), (RootNumber::Known(Sign::Minus), Sign::Plus, Sign::Minus));
        assert_eq!(at11.tamagawa, Some([5, 1]));
        let at5 = report.places.iter().find(|v| v.place == Place::Finite(5)).unwrap();
        assert_eq!((at5.w, at5.symbol, at5.sigma), (RootNumber::Known(Sign::Plus), Sign::Minus, Sign::Minus));
        assert_eq!(report.w_global, RootNumber::Known(Sign::Plus));
        assert_eq!(report.symbol_product, Sign::Plus);
        assert_eq!(conductor(&pair), BigInt::from(11));
    }

    #[test]
    fn injected_faults_are_detected() {
        let mut pair = pair_11a1();
        pair.faults = vec![Fault { place: Place::Finite(11), kind: FaultKind::Tamagawa }];
        let report = verify_global(&pair, &[]).unwrap();
        assert!(report.first_failure().unwrap().contains("place 11"));
        pair.faults = vec![Fault { place: Place::Infinite, kind: FaultKind::Symbol }];
        let report = verify_global(&pair, &[]).unwrap();
        assert!(report.first_failure().unwrap().contains("place inf"));
    }

    #[test]
    fn twist_by_five_and_minus_one() {
        let pair = pair_11a1();
        let opts = PairOptions::default();
        let same = twist_report(&pair, 1, &opts, 3).unwrap();
        assert!(same.all_hold());
        assert_eq!(same.report, verify_global(&pair, &pair.good_place_sample(3, opts.seed)).unwrap());
        let t5 = twist_report(&pair, 5, &opts, 3).unwrap();
        assert!(t5.all_hold(), "{t5:?}");
        assert_eq!(t5.report.global_holds, Verdict::Holds);
        let tm1 = twist_report(&pair, -1, &opts, 0).unwrap();
        assert!(tm1.character_matches && tm1.discriminant_scales);
        assert_eq!(tm1.report.global_holds, Verdict::Skipped);
        assert_eq!(tm1.global_holds(), Verdict::Holds);
    }
}
