//! Command implementations behind the `isoparity` binary. Every command
//! returns its output and exit code instead of printing, so it can be tested.

pub mod corpus;
pub mod report;

use crate::arith::{parse_rational, primes::is_prime};
use crate::cases::grid_verify;
use crate::error::{Error, Result};
use crate::localdata::{conductor_exponent, tate_algorithm};
use crate::models::{global_minimal_model, WeierstrassModel};
use crate::parity::{root_number, twist_report, verify_global, GlobalReport, IsogenyPair, PairOptions, Verdict};
use crate::psi::{infinite_symbol, local_symbol, ramification_index_at_p};
use crate::sign::Sign;
use corpus::CorpusEntry;
use rayon::prelude::*;
use report::{render_table, EntryError, VerifyReport};
use serde::{Deserialize, Serialize};
use std::fmt::Write;

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub frobenius_bound: u64,
    pub good_place_sample: usize,
    pub seed: u64,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { frobenius_bound: 10_000, good_place_sample: 5, seed: 0, output_format: OutputFormat::Table }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.frobenius_bound < 100 {
            return Err(Error::Input(format!("Frobenius bound {} is below 100", self.frobenius_bound)));
        }
        Ok(())
    }

    fn pair_options(&self) -> PairOptions {
        PairOptions { frobenius_bound: self.frobenius_bound, seed: self.seed }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommandOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl CommandOutput {
    pub fn input_error(e: &Error) -> CommandOutput {
        CommandOutput { stdout: String::new(), stderr: format!("error: {e}\n"), code: EXIT_INPUT }
    }
}

/// Builds the isogeny pair for a corpus entry, with any requested faults.
pub fn build_pair(entry: &CorpusEntry, config: &RunConfig) -> Result<IsogenyPair> {
    let mut pair = IsogenyPair::new(&entry.label, &entry.model, &entry.kernel, &config.pair_options())?;
    pair.faults = entry.faults()?;
    Ok(pair)
}

/// Verification report for one entry, including the sampled good places.
pub fn run_entry(entry: &CorpusEntry, config: &RunConfig) -> Result<GlobalReport> {
    let pair = build_pair(entry, config)?;
    verify_global(&pair, &pair.good_place_sample(config.good_place_sample, config.seed))
}

/// Runs every entry in parallel; results stay in input order.
pub fn verify_entries(entries: &[CorpusEntry], config: &RunConfig) -> VerifyReport {
    let results: Vec<Result<GlobalReport>> = entries.par_iter().map(|e| run_entry(e, config)).collect();
    let mut reports = Vec::new();
    let mut errors = Vec::new();
    for (e, r) in entries.iter().zip(results) {
        match r {
            Ok(r) => reports.push(r),
            Err(err) => errors.push(EntryError { label: e.label.clone(), line: e.line, error: err.to_string() }),
        }
    }
    VerifyReport::new(reports, errors)
}

pub fn cmd_verify(entries: &[CorpusEntry], config: &RunConfig) -> CommandOutput {
    if let Err(e) = config.validate() {
        return CommandOutput::input_error(&e);
    }
    let v = verify_entries(entries, config);
    let stdout = match config.output_format {
        OutputFormat::Table => report::format_table(&v),
        OutputFormat::Json => report::format_json(&v),
        OutputFormat::Csv => report::format_csv(&v),
    };
    let mut stderr = String::new();
    for e in &v.errors {
        writeln!(stderr, "error: {} (line {}): {}", e.label, e.line, e.error).unwrap();
    }
    let code = if !v.errors.is_empty() {
        EXIT_INPUT
    } else if let Some(c) = &v.summary.first_counterexample {
        writeln!(stderr, "counterexample: {c}").unwrap();
        EXIT_COUNTEREXAMPLE
    } else if v.has_unsupported() {
        writeln!(stderr, "unsupported local root numbers encountered").unwrap();
        EXIT_UNSUPPORTED
    } else {
        EXIT_OK
    };
    CommandOutput { stdout, stderr, code }
}

/// Parses `"a1,a2,a3,a4,a6"` with integer or `p/q` entries.
pub fn parse_curve(s: &str) -> Result<WeierstrassModel> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 5 {
        return Err(Error::Input(format!("expected five comma-separated coefficients, got {}", parts.len())));
    }
    let mut a = Vec::new();
    for p in parts {
        a.push(parse_rational(p).ok_or_else(|| Error::Input(format!("'{p}' is not a rational number")))?);
    }
    WeierstrassModel::new(a.try_into().expect("five coefficients"))
}

pub fn cmd_local(curve: &str, l: u64) -> CommandOutput {
    let run = || -> Result<String> {
        let m = parse_curve(curve)?;
        if !is_prime(l) {
            return Err(Error::Input(format!("{l} is not prime")));
        }
        let (minimal, _) = global_minimal_model(&m)?;
        let d = tate_algorithm(&minimal, l)?;
        let rows = vec![
            vec!["model".to_string(), m.to_string()],
            vec!["minimal model".to_string(), minimal.to_string()],
            vec!["prime".to_string(), l.to_string()],
            vec!["kodaira".to_string(), d.kodaira.to_string()],
            vec!["tamagawa".to_string(), d.tamagawa.to_string()],
            vec!["v(disc)".to_string(), d.disc_valuation.to_string()],
            vec!["conductor exponent".to_string(), conductor_exponent(&d).to_string()],
            vec!["reduction".to_string(), d.class.to_string()],
            vec!["root number".to_string(), root_number(&d).to_string()],
        ];
        Ok(render_table(&["field", "value"], &rows))
    };
    match run() {
        Ok(stdout) => CommandOutput { stdout, stderr: String::new(), code: EXIT_OK },
        Err(e) => CommandOutput::input_error(&e),
    }
}

fn find_entry<'a>(entries: &'a [CorpusEntry], label: &str) -> Result<&'a CorpusEntry> {
    entries.iter().find(|e| e.label == label).ok_or_else(|| Error::Input(format!("no entry labelled '{label}'")))
}

pub fn cmd_character(entries: &[CorpusEntry], label: &str, config: &RunConfig) -> CommandOutput {
    let run = || -> Result<(String, bool)> {
        let pair = build_pair(find_entry(entries, label)?, config)?;
        let chi = pair.character();
        let p = pair.p();
        let mut out = String::new();
        let e = ramification_index_at_p(chi);
        let jnt = Sign::from_parity(((p - 1) / e) as i64);
        let at_p = local_symbol(chi, p);
        let at_inf = infinite_symbol(chi);
        let product = Sign::product(chi.components.keys().map(|&q| local_symbol(chi, q))) * at_inf;
        let rec = &pair.reconstruction;
        let info = vec![
            vec!["label".to_string(), pair.label.clone()],
            vec!["p".to_string(), p.to_string()],
            vec!["bad primes".to_string(), format!("{:?}", pair.bad_primes)],
            vec!["modulus".to_string(), chi.modulus.to_string()],
            vec!["conductor".to_string(), chi.conductor().to_string()],
            vec!["order".to_string(), chi.order().to_string()],
            vec!["primitive root of p".to_string(), chi.root.to_string()],
            vec!["ramification index at p".to_string(), e.to_string()],
            vec!["symbol at p".to_string(), at_p.to_string()],
            vec!["(-1)^((p-1)/e)".to_string(), jnt.to_string()],
            vec!["kernel real".to_string(), pair.kernel_real.to_string()],
            vec!["value at -1".to_string(), at_inf.to_string()],
            vec!["product of symbols".to_string(), product.to_string()],
            vec!["Frobenius samples".to_string(), rec.samples.len().to_string()],
            vec!["hold-out prime".to_string(), format!("{} -> {}", rec.holdout.prime, rec.holdout.eigenvalue)],
        ];
        out.push_str(&render_table(&["field", "value"], &info));
        out.push('\n');
        let gens: Vec<Vec<String>> = chi
            .generators
            .iter()
            .zip(&chi.values)
            .map(|(g, v)| {
                vec![
                    g.residue.to_string(),
                    g.prime_power.to_string(),
                    g.order.to_string(),
                    v.to_string(),
                    chi.eval_residue(g.residue).expect("unit").to_string(),
                ]
            })
            .collect();
        out.push_str(&render_table(&["generator", "part", "order", "exponent", "value mod p"], &gens));
        out.push('\n');
        let comps: Vec<Vec<String>> = chi
            .components
            .values()
            .map(|c| {
                vec![
                    c.prime.to_string(),
                    c.modulus.to_string(),
                    c.conductor_exponent().to_string(),
                    c.order(p).to_string(),
                    local_symbol(chi, c.prime).to_string(),
                ]
            })
            .collect();
        out.push_str(&render_table(&["prime", "modulus", "conductor exp", "order", "symbol"], &comps));
        let consistent = jnt == at_p && product == Sign::Plus && pair.kernel_real == (at_inf == Sign::Plus);
        Ok((out, consistent))
    };
    match run() {
        Ok((stdout, true)) => CommandOutput { stdout, stderr: String::new(), code: EXIT_OK },
        Ok((stdout, false)) => {
            CommandOutput { stdout, stderr: "character cross-checks disagree\n".into(), code: EXIT_COUNTEREXAMPLE }
        }
        Err(e) => CommandOutput::input_error(&e),
    }
}

pub fn cmd_twist(entries: &[CorpusEntry], label: &str, d: i64, config: &RunConfig) -> CommandOutput {
    let run = || -> Result<CommandOutput> {
        config.validate()?;
        let pair = build_pair(find_entry(entries, label)?, config)?;
        let t = twist_report(&pair, d, &config.pair_options(), config.good_place_sample)?;
        let mut stdout = match config.output_format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&t).expect("serializes");
                s.push('\n');
                s
            }
            OutputFormat::Csv => report::format_csv(&VerifyReport::new(vec![t.report.clone()], vec![])),
            OutputFormat::Table => {
                let mut s = report::format_table(&VerifyReport::new(vec![t.report.clone()], vec![]));
                let info = vec![
                    vec!["twisted model".to_string(), t.twisted_model.clone()],
                    vec!["twisted kernel".to_string(), t.twisted_kernel.clone()],
                    vec!["character matches".to_string(), t.character_matches.to_string()],
                    vec!["discriminant scales by d^6".to_string(), t.discriminant_scales.to_string()],
                    vec![
                        "global root number via twist formula".to_string(),
                        t.inferred_w_global.map_or("n/a".to_string(), |w| w.to_string()),
                    ],
                    vec!["global identity".to_string(), t.global_holds().to_string()],
                ];
                s.push('\n');
                s.push_str(&render_table(&["field", "value"], &info));
                s
            }
        };
        if !stdout.ends_with('\n') {
            stdout.push('\n');
        }
        let (code, stderr) = if !t.all_hold() {
            let why = t.report.first_failure().unwrap_or_else(|| format!("{}: twist checks disagree", t.label));
            (EXIT_COUNTEREXAMPLE, format!("counterexample: {why}\n"))
        } else if t.global_holds() == Verdict::Skipped {
            (EXIT_UNSUPPORTED, "unsupported local root numbers encountered\n".to_string())
        } else {
            (EXIT_OK, String::new())
        };
        Ok(CommandOutput { stdout, stderr, code })
    };
    run().unwrap_or_else(|e| CommandOutput::input_error(&e))
}

pub fn cmd_case_grid(p_max: u64) -> CommandOutput {
    match grid_verify(p_max) {
        Ok(r) => CommandOutput {
            stdout: format!("{r}\n"),
            stderr: String::new(),
            code: if r.counterexamples.is_empty() { EXIT_OK } else { EXIT_COUNTEREXAMPLE },
        },
        Err(e) => CommandOutput::input_error(&e),
    }
}
