//! JSON Lines corpus of isogenies: one curve, prime and kernel polynomial per line.

use crate::arith::primes::is_prime;
use crate::arith::{parse_rational, Rational, PolyQ};
use crate::error::{Error, Result};
use crate::isogeny::{validate_kernel, KernelPolynomial};
use crate::models::WeierstrassModel;
use crate::parity::Fault;
use serde::Deserialize;
use serde_json::Value;
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub label: String,
    pub model: WeierstrassModel,
    pub kernel: KernelPolynomial,
    pub meta: BTreeMap<String, Value>,
    /// 1-based line number in the source file.
    pub line: usize,
}

impl CorpusEntry {
    pub fn p(&self) -> u64 {
        self.kernel.p
    }

    /// Deliberate corruptions requested through `meta.inject_fault`.
    pub fn faults(&self) -> Result<Vec<Fault>> {
        let Some(v) = self.meta.get("inject_fault") else {
            return Ok(Vec::new());
        };
        let parsed = if v.is_array() {
            serde_json::from_value::<Vec<Fault>>(v.clone())
        } else {
            serde_json::from_value::<Fault>(v.clone()).map(|f| vec![f])
        };
        parsed.map_err(|e| Error::InvalidEntry { line: self.line, reason: format!("inject_fault: {e}") })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    label: String,
    a: Vec<Value>,
    p: u64,
    kernel: Vec<Value>,
    #[serde(default)]
    meta: BTreeMap<String, Value>,
}

fn rational_field(v: &Value) -> std::result::Result<Rational, String> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| format!("\"{s}\" is not a rational number")),
        Value::Number(n) if n.is_i64() => Ok(crate::arith::rat(n.as_i64().unwrap())),
        other => Err(format!("expected an integer or a \"p/q\" string, got {other}")),
    }
}

fn parse_line(text: &str, line: usize) -> Result<CorpusEntry> {
    let raw: RawEntry = serde_json::from_str(text).map_err(|e| Error::Parse { line, message: e.to_string() })?;
    let invalid = |reason: String| Error::InvalidEntry { line, reason };
    if raw.p < 5 || !is_prime(raw.p) {
        return Err(invalid(format!("p = {} is not a prime >= 5", raw.p)));
    }
    if raw.a.len() != 5 {
        return Err(invalid(format!("a must have five coefficients, got {}", raw.a.len())));
    }
    let mut a = Vec::with_capacity(5);
    for v in &raw.a {
        a.push(rational_field(v).map_err(|e| invalid(format!("a: {e}")))?);
    }
    let model = WeierstrassModel::new(a.try_into().expect("five coefficients")).map_err(|e| invalid(e.to_string()))?;
    let expected = (raw.p - 1) / 2 + 1;
    if raw.kernel.len() as u64 != expected {
        return Err(invalid(format!(
            "kernel degree: expected {expected} coefficients for p = {}, got {}",
            raw.p,
            raw.kernel.len()
        )));
    }
    let mut coeffs = Vec::with_capacity(raw.kernel.len());
    for v in &raw.kernel {
        coeffs.push(rational_field(v).map_err(|e| invalid(format!("kernel: {e}")))?);
    }
    let kernel = KernelPolynomial::new(raw.p, PolyQ::new(coeffs)).map_err(|e| invalid(e.to_string()))?;
    if !validate_kernel(&model, &kernel) {
        return Err(invalid("kernel polynomial does not define a p-isogeny of this curve".into()));
    }
    Ok(CorpusEntry { label: raw.label, model, kernel, meta: raw.meta, line })
}

/// Parses and validates every non-blank line.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut entries = Vec::new();
    let mut labels = BTreeSet::new();
    for (i, l) in text.lines().enumerate() {
        if l.trim().is_empty() {
            continue;
        }
        let entry = parse_line(l, i + 1)?;
        if !labels.insert(entry.label.clone()) {
            return Err(Error::InvalidEntry { line: i + 1, reason: format!("duplicate label {}", entry.label) });
        }
        entry.faults()?;
        entries.push(entry);
    }
    Ok(entries)
}

pub fn load_corpus(path: &Path) -> Result<Vec<CorpusEntry>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    parse_corpus(&text)
}
