//! Acceptance suite: one PASS/FAIL line per criterion. All comparisons are exact.

use isoparity::arith::{primes::primes_up_to, valuation};
use isoparity::cases::grid_verify;
use isoparity::harness::corpus::{load_corpus, parse_corpus, CorpusEntry};
use isoparity::harness::{cmd_verify, verify_entries, RunConfig, EXIT_COUNTEREXAMPLE};
use isoparity::isogeny::a_ell;
use isoparity::localdata::ReductionClass;
use isoparity::models::is_twelfth_power;
use isoparity::parity::{
    tamagawa_ratio_valuation, twist_report, verify_global, IsogenyPair, PairOptions, RootNumber, Verdict,
};
use isoparity::psi::{frobenius_eigenvalue, infinite_symbol, local_symbol, ramification_index_at_p};
use isoparity::Sign;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

const TWISTS: [i64; 6] = [-1, 2, -2, 3, -3, 5];

fn corpus() -> Vec<CorpusEntry> {
    parse_corpus(include_str!("../data/corpus.jsonl")).expect("bundled corpus parses")
}

fn pairs(entries: &[CorpusEntry]) -> Vec<IsogenyPair> {
    entries
        .par_iter()
        .map(|e| IsogenyPair::new(&e.label, &e.model, &e.kernel, &PairOptions::default()).expect("pair"))
        .collect()
}

fn oracle_root_numbers() -> BTreeMap<String, i8> {
    include_str!("data/oracle.jsonl")
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            (v["label"].as_str().unwrap().to_string(), v["w_global"].as_i64().unwrap() as i8)
        })
        .collect()
}

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1(entries: &[CorpusEntry]) -> Outcome {
    let start = Instant::now();
    let v = verify_entries(entries, &RunConfig::default());
    ensure(v.errors.is_empty(), || format!("entry errors: {:?}", v.errors))?;
    let mut checked = 0;
    for r in &v.reports {
        for p in &r.places {
            match p.w {
                RootNumber::Known(w) => {
                    ensure(w == p.symbol * p.sigma && p.holds == Verdict::Holds, || {
                        format!("{} at {}: w {} symbol {} sigma {}", r.label, p.place, w, p.symbol, p.sigma)
                    })?;
                    checked += 1;
                }
                RootNumber::Unsupported => ensure(p.holds == Verdict::Skipped, || format!("{} at {}", r.label, p.place))?,
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 120.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{checked} places across {} entries satisfy w = symbol * sigma ({secs:.1}s)", v.reports.len()))
}

fn criterion_2(pairs: &[IsogenyPair]) -> Outcome {
    let oracle = oracle_root_numbers();
    let mut supported = 0;
    for pair in pairs {
        let r = verify_global(pair, &[]).map_err(|e| e.to_string())?;
        ensure(r.symbol_product == Sign::Plus, || format!("{}: symbol product {}", r.label, r.symbol_product))?;
        if let RootNumber::Known(w) = r.w_global {
            ensure(w == r.sigma_product, || format!("{}: w {} but product of sigma {}", r.label, w, r.sigma_product))?;
            ensure(w.to_i8() == oracle[&r.label], || format!("{}: global root number differs from oracle", r.label))?;
            supported += 1;
        }
    }
    ensure(supported == pairs.len(), || format!("only {supported} of {} entries fully supported", pairs.len()))?;
    Ok(format!("w(E) = product of sigma for all {supported} entries; root numbers agree with the oracle"))
}

fn criterion_3(pairs: &[IsogenyPair]) -> Outcome {
    let mut fresh = 0;
    for pair in pairs {
        let chi = pair.character();
        let p = pair.p();
        let label = &pair.label;
        for q in chi.conductor_primes() {
            ensure(q == p || pair.bad_primes.contains(&q), || format!("{label}: ramified at good prime {q}"))?;
        }
        let product = Sign::product(chi.components.keys().map(|&q| local_symbol(chi, q))) * infinite_symbol(chi);
        ensure(product == Sign::Plus, || format!("{label}: product of local symbols is -1"))?;
        let e = ramification_index_at_p(chi);
        ensure((p - 1) % e == 0, || format!("{label}: e = {e} does not divide p - 1"))?;
        let closed = Sign::from_parity(((p - 1) / e) as i64);
        ensure(local_symbol(chi, p) == closed, || format!("{label}: symbol at p differs from (-1)^((p-1)/e)"))?;
        ensure(pair.kernel_real == (infinite_symbol(chi) == Sign::Plus), || format!("{label}: real place paths disagree"))?;
        let h = pair.reconstruction.holdout;
        let again = frobenius_eigenvalue(&pair.iso.domain, &pair.iso.kernel, h.prime, 10_000, 99).map_err(|e| e.to_string())?;
        ensure(chi.eval_residue(h.prime) == Some(again), || format!("{label}: hold-out prime {} disagrees", h.prime))?;
        // Further fresh primes beyond the hold-out.
        let used: Vec<u64> = pair.reconstruction.samples.iter().map(|s| s.prime).collect();
        for l in primes_up_to(400) {
            if l <= h.prime || l == p || used.contains(&l) || chi.modulus % l == 0 {
                continue;
            }
            match frobenius_eigenvalue(&pair.iso.domain, &pair.iso.kernel, l, 10_000, 7) {
                Ok(lambda) => {
                    ensure(chi.eval_residue(l) == Some(lambda), || format!("{label}: fresh prime {l} disagrees"))?;
                    fresh += 1;
                }
                Err(isoparity::Error::Ambiguous(_)) => {}
                Err(e) => return Err(format!("{label}: {e}")),
            }
        }
    }
    Ok(format!("(a) to (e) hold for {} characters; {fresh} further fresh primes agree", pairs.len()))
}

fn criterion_4(pairs: &[IsogenyPair]) -> Outcome {
    let mut compared = 0;
    for pair in pairs {
        let label = &pair.label;
        for l in primes_up_to(100) {
            if pair.bad_primes.contains(&l) {
                continue;
            }
            let a = a_ell(&pair.iso.domain, l, 10_000).map_err(|e| e.to_string())?;
            let b = a_ell(&pair.iso.codomain_min, l, 10_000).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("{label}: a_{l} {a} vs {b}"))?;
            compared += 1;
        }
        ensure(matches!(pair.alpha_valuation, 0 | 1), || format!("{label}: v_p(alpha) = {}", pair.alpha_valuation))?;
        let d = pair.iso.domain.disc();
        let d2 = pair.iso.codomain_min.disc();
        let ratio = &d2 / d.pow(pair.p() as i32);
        for &q in &pair.bad_primes {
            let v = valuation(&ratio, q).finite().unwrap();
            ensure(v % 12 == 0, || format!("{label}: v_{q}(disc'/disc^p) = {v}"))?;
        }
        ensure(is_twelfth_power(&ratio), || format!("{label}: disc'/disc^p is not a twelfth power"))?;
    }
    Ok(format!("{compared} good-prime traces agree, v_p(alpha) in {{0,1}}, disc'/disc^p twelfth powers"))
}

fn criterion_5(pairs: &[IsogenyPair]) -> Outcome {
    let jobs: Vec<(usize, i64)> = (0..pairs.len()).flat_map(|i| TWISTS.map(|d| (i, d))).collect();
    let reports: Vec<Result<_, String>> = jobs
        .par_iter()
        .map(|&(i, d)| twist_report(&pairs[i], d, &PairOptions::default(), 0).map_err(|e| format!("{} by {d}: {e}", pairs[i].label)))
        .collect();
    let (mut places, mut full, mut inferred, mut partial) = (0, 0, 0, 0);
    for r in reports {
        let t = r?;
        let label = &t.label;
        ensure(t.kernel_valid, || format!("{label}: twisted kernel invalid"))?;
        ensure(t.character_matches, || format!("{label}: twisted character is not psi * tau_d"))?;
        ensure(t.discriminant_scales, || format!("{label}: discriminant does not scale by d^6"))?;
        for p in &t.report.places {
            if let RootNumber::Known(w) = p.w {
                ensure(w == p.symbol * p.sigma, || format!("{label} at {}", p.place))?;
                places += 1;
            }
        }
        ensure(t.report.symbol_product == Sign::Plus, || format!("{label}: symbol product"))?;
        match (t.report.global_holds, t.global_holds()) {
            (Verdict::Holds, _) => full += 1,
            (Verdict::Skipped, Verdict::Holds) => inferred += 1,
            (Verdict::Skipped, Verdict::Skipped) => partial += 1,
            _ => return Err(format!("{label}: global identity fails")),
        }
    }
    Ok(format!(
        "{} twists: characters, discriminants and {places} places agree; global identity holds for {full} fully supported, \
         {inferred} more via the twist root number formula, {partial} with a place at 2 or 3 outside the formula",
        jobs.len()
    ))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let r = grid_verify(500).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    ensure(r.counterexamples.is_empty(), || r.to_string())?;
    ensure(secs < 30.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{} primes, {} grid points, {} checks, 0 counterexamples ({secs:.2}s)", r.primes, r.grid_points, r.checks))
}

fn criterion_7() -> Outcome {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/negative_control.jsonl");
    let entries = load_corpus(&path).map_err(|e| e.to_string())?;
    let out = cmd_verify(&entries, &RunConfig::default());
    ensure(out.code == EXIT_COUNTEREXAMPLE, || format!("exit code {}", out.code))?;
    ensure(out.stderr.contains("11a1-5.a-corrupted at place 11"), || format!("stderr: {}", out.stderr))?;
    ensure(out.stdout.contains("first counterexample: 11a1-5.a-corrupted at place 11"), || "table lacks the counterexample".into())?;
    // A flipped symbol at the real place is caught the same way.
    let mut flipped = entries[0].clone();
    flipped.meta.insert("inject_fault".into(), serde_json::json!({"place": "inf", "kind": "symbol"}));
    let out2 = cmd_verify(&[flipped], &RunConfig::default());
    ensure(out2.code == EXIT_COUNTEREXAMPLE && out2.stderr.contains("11a1-5.a at place inf"), || out2.stderr.clone())?;
    Ok("corrupted Tamagawa number and flipped symbol both exit 1 naming (entry, place)".into())
}

fn criterion_8(pairs: &[IsogenyPair]) -> Outcome {
    let mut n = 0;
    for pair in pairs {
        for (l, d) in &pair.local_domain {
            if *l == pair.p() || d.class != ReductionClass::MultiplicativeSplit {
                continue;
            }
            let c2 = pair.local_codomain[l].tamagawa;
            let v = tamagawa_ratio_valuation(pair.p(), d.tamagawa, c2);
            ensure(v == 1 || v == -1, || format!("{} at {l}: ord_p(c'/c) = {v} (c = {}, c' = {c2})", pair.label, d.tamagawa))?;
            n += 1;
        }
    }
    ensure(n > 0, || "no split multiplicative places in the corpus".into())?;
    Ok(format!("ord_p(c'/c) is +1 or -1 at all {n} split multiplicative places away from p"))
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let entries = corpus();
    let pairs = pairs(&entries);
    let criteria: Vec<Criterion> = vec![
        ("per-place identity", Box::new(|| criterion_1(&entries))),
        ("global identity", Box::new(|| criterion_2(&pairs))),
        ("character suite", Box::new(|| criterion_3(&pairs))),
        ("isogeny suite", Box::new(|| criterion_4(&pairs))),
        ("twist suite", Box::new(|| criterion_5(&pairs))),
        ("case grid", Box::new(criterion_6)),
        ("negative control", Box::new(criterion_7)),
        ("Tate-curve consistency", Box::new(|| criterion_8(&pairs))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(msg) => println!("criterion {} ({name}): PASS: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL: {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
