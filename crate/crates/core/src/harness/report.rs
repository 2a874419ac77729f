//! Rendering of verification reports as aligned text, JSON or CSV.

use crate::parity::{GlobalReport, PlaceVerdict, Verdict};
use serde::{Deserialize, Serialize};
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryError {
    pub label: String,
    pub line: usize,
    pub error: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub entries: usize,
    pub places: usize,
    pub failures: usize,
    pub skipped: usize,
    pub errors: usize,
    pub first_counterexample: Option<String>,
}

/// Full output of `verify`, serialized as is for `--format json`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub reports: Vec<GlobalReport>,
    pub errors: Vec<EntryError>,
    pub summary: Summary,
}

impl VerifyReport {
    pub fn new(reports: Vec<GlobalReport>, errors: Vec<EntryError>) -> VerifyReport {
        let summary = Summary {
            entries: reports.len() + errors.len(),
            places: reports.iter().map(|r| r.places.len()).sum(),
            failures: reports.iter().filter(|r| !r.all_hold()).count(),
            skipped: reports.iter().flat_map(|r| &r.places).filter(|v| v.holds == Verdict::Skipped).count(),
            errors: errors.len(),
            first_counterexample: reports.iter().find_map(|r| r.first_failure()),
        };
        VerifyReport { reports, errors, summary }
    }

    pub fn has_unsupported(&self) -> bool {
        self.reports.iter().any(|r| r.has_unsupported())
    }
}

const COLUMNS: [&str; 10] = ["label", "place", "role", "reduction", "c", "c'", "w", "symbol", "sigma", "holds"];

fn place_row(label: &str, v: &PlaceVerdict) -> [String; 10] {
    let (c, c_prime) = match v.tamagawa {
        Some([c, c2]) => (c.to_string(), c2.to_string()),
        None => ("-".into(), "-".into()),
    };
    [
        label.to_string(),
        v.place.to_string(),
        v.role.to_string(),
        v.reduction.map_or("-".to_string(), |r| r.code().to_string()),
        c,
        c_prime,
        v.w.to_string(),
        v.symbol.to_string(),
        v.sigma.to_string(),
        v.holds.to_string(),
    ]
}

fn global_row(r: &GlobalReport) -> [String; 10] {
    [
        r.label.clone(),
        "global".into(),
        format!("p={}", r.p),
        "-".into(),
        "-".into(),
        "-".into(),
        r.w_global.to_string(),
        r.symbol_product.to_string(),
        r.sigma_product.to_string(),
        r.global_holds.to_string(),
    ]
}

fn rows(reports: &[GlobalReport]) -> Vec<[String; 10]> {
    let mut out = Vec::new();
    for r in reports {
        out.extend(r.places.iter().map(|v| place_row(&r.label, v)));
        out.push(global_row(r));
    }
    out
}

/// Left-aligned columns separated by two spaces.
pub fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec(), &mut out);
    for row in rows {
        line(row.iter().map(String::as_str).collect(), &mut out);
    }
    out
}

pub fn format_table(v: &VerifyReport) -> String {
    let body: Vec<Vec<String>> = rows(&v.reports).into_iter().map(Vec::from).collect();
    let mut out = render_table(&COLUMNS, &body);
    for e in &v.errors {
        writeln!(out, "error: {} (line {}): {}", e.label, e.line, e.error).unwrap();
    }
    let s = &v.summary;
    writeln!(
        out,
        "entries: {}, places: {}, entries failing: {}, skipped places: {}, errors: {}",
        s.entries, s.places, s.failures, s.skipped, s.errors
    )
    .unwrap();
    if let Some(c) = &s.first_counterexample {
        writeln!(out, "first counterexample: {c}").unwrap();
    }
    out
}

pub fn format_json(v: &VerifyReport) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

pub fn format_csv(v: &VerifyReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(COLUMNS).expect("in-memory write");
    for row in rows(&v.reports) {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}
