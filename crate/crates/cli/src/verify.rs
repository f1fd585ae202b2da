//! The verification harness: evaluate S_χ(n, k) by pairs of independent
//! modes over a whole range of moduli and report any disagreement.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use menon_core::{evaluate_with_mode, CharacterGroup, Error, EvalMode};

/// One failed comparison, with everything needed to reproduce it.
#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    pub n: u64,
    pub char_index: u64,
    pub k: u32,
    pub mode_a: String,
    pub value_a: String,
    pub mode_b: String,
    pub value_b: String,
}

/// Outcome of a verification run. `cases_run` always equals
/// Σ_{n ≤ max_n} φ(n)·|k_list|·|mode_pairs|, and the run succeeds iff
/// `mismatches` is empty.
#[derive(Debug, Serialize)]
pub struct VerificationReport {
    pub max_n: u64,
    pub k_list: Vec<u32>,
    pub mode_pairs: Vec<String>,
    pub cases_run: u64,
    pub mismatches: Vec<Mismatch>,
    pub elapsed_seconds: f64,
}

struct ModulusOutcome {
    cases: u64,
    mismatches: Vec<Mismatch>,
}

/// Compares every mode pair on every (character, k) for one modulus.
/// Each required mode is evaluated once per (character, k) and reused
/// across pairs.
fn check_modulus(
    n: u64,
    k_list: &[u32],
    pairs: &[(EvalMode, EvalMode)],
    work_cap: Option<u128>,
) -> Result<ModulusOutcome, Error> {
    let group = CharacterGroup::new(n)?;
    let characters = group.characters()?;
    let mut outcome = ModulusOutcome {
        cases: 0,
        mismatches: Vec::new(),
    };
    for chi in &characters {
        for &k in k_list {
            let mut values: HashMap<EvalMode, BigInt> = HashMap::new();
            for mode in pairs.iter().flat_map(|&(a, b)| [a, b]) {
                if let Entry::Vacant(slot) = values.entry(mode) {
                    slot.insert(evaluate_with_mode(chi, k, mode, work_cap)?.value);
                }
            }
            for &(a, b) in pairs {
                let va = &values[&a];
                let vb = &values[&b];
                if va != vb {
                    outcome.mismatches.push(Mismatch {
                        n,
                        char_index: chi.index(),
                        k,
                        mode_a: a.to_string(),
                        value_a: va.to_string(),
                        mode_b: b.to_string(),
                        value_b: vb.to_string(),
                    });
                }
                outcome.cases += 1;
            }
        }
    }
    Ok(outcome)
}

/// Runs the harness over all n ≤ max_n. With `parallel` the moduli fan out
/// across threads; the merge is in ascending-n order either way, so the
/// report is identical apart from `elapsed_seconds` (which is also why
/// the flag itself is not echoed into the report).
pub fn run_verification(
    max_n: u64,
    k_list: &[u32],
    pairs: &[(EvalMode, EvalMode)],
    parallel: bool,
    work_cap: Option<u128>,
) -> Result<VerificationReport, Error> {
    let started = Instant::now();
    let worker = |n: u64| check_modulus(n, k_list, pairs, work_cap);
    let outcomes: Result<Vec<ModulusOutcome>, Error> = if parallel {
        (1..=max_n).into_par_iter().map(worker).collect()
    } else {
        (1..=max_n).map(worker).collect()
    };
    let outcomes = outcomes?;
    let mut report = VerificationReport {
        max_n,
        k_list: k_list.to_vec(),
        mode_pairs: pairs.iter().map(|(a, b)| format!("{a}:{b}")).collect(),
        cases_run: 0,
        mismatches: Vec::new(),
        elapsed_seconds: 0.0,
    };
    for outcome in outcomes {
        report.cases_run += outcome.cases;
        report.mismatches.extend(outcome.mismatches);
    }
    report.elapsed_seconds = started.elapsed().as_secs_f64();
    Ok(report)
}

/// Human rendering; every field except elapsed is deterministic.
pub fn render_report(report: &VerificationReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("verification over n <= {}\n", report.max_n));
    out.push_str(&format!(
        "k values: {}\n",
        report
            .k_list
            .iter()
            .map(|k| k.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    ));
    out.push_str(&format!("mode pairs: {}\n", report.mode_pairs.join(", ")));
    out.push_str(&format!("cases run: {}\n", report.cases_run));
    out.push_str(&format!("mismatches: {}\n", report.mismatches.len()));
    for m in &report.mismatches {
        out.push_str(&format!(
            "  n={} char_index={} k={}: {}={} vs {}={}\n",
            m.n, m.char_index, m.k, m.mode_a, m.value_a, m.mode_b, m.value_b
        ));
    }
    out.push_str(&format!("elapsed: {:.3} s\n", report.elapsed_seconds));
    out
}
