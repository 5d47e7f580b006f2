//! Single-shot decoding with a JSON report.

use serde::Serialize;

use grandlab::elim::filter_partition;
use grandlab::orbgrand::DecodeOutcome;

use crate::args::DecodeArgs;
use crate::common::{build_ep_set, resolve_code, AppError, AppResult};
use grandlab::elim::DecodeConfig;

#[derive(Serialize)]
struct DecodeReport {
    codeword: Option<String>,
    guesses: u64,
    ep_index: Option<usize>,
    m: Option<usize>,
    n: Option<usize>,
    t_star: Option<usize>,
    xor_total: u64,
    xor_total_checker_model: u64,
    skipped_by_filter: Vec<usize>,
    verified: Vec<usize>,
    via_ge_fallback: bool,
}

pub fn run(args: DecodeArgs) -> AppResult<()> {
    let resolved = resolve_code(&args.source)?;
    let code = resolved.code;

    let llrs = read_llrs(&args)?;
    if llrs.len() != code.n() {
        return Err(AppError::Data(format!(
            "LLR length {} does not match code length {}",
            llrs.len(),
            code.n()
        )));
    }
    let (eps, _) = build_ep_set(code.n(), args.budget, args.ep_order.as_deref())?;
    let config = DecodeConfig {
        emit_ge_solution_on_abandon: args.emit_ge_solution_on_abandon,
        ..DecodeConfig::default()
    };
    let out = args
        .decoder
        .to_core()
        .decode(&code, &llrs, &eps, &config)?;

    let (skipped, verified) = match &out.ge_stats {
        Some(ge) if ge.consistency_col > 0 => {
            let stop = scan_stop(&out, eps.len());
            filter_partition(&eps, ge.consistency_col, stop)
        }
        _ => {
            // the plain scan verifies every priority it reaches
            let tested = (1..=out.guesses as usize).collect();
            (Vec::new(), tested)
        }
    };

    let report = DecodeReport {
        codeword: out.codeword.as_ref().map(|w| w.to_string01()),
        guesses: out.guesses,
        ep_index: out.ep_index,
        m: out.ge_stats.map(|g| g.pivots),
        n: out.ge_stats.map(|g| g.consistency_col),
        t_star: out.ge_stats.and_then(|g| g.t_star),
        xor_total: out.cost.normalized_engine(),
        xor_total_checker_model: out.cost.normalized_checker_model(),
        skipped_by_filter: skipped,
        verified,
        via_ge_fallback: out.via_ge_fallback,
    };
    let json =
        serde_json::to_string_pretty(&report).map_err(|e| AppError::Internal(e.to_string()))?;
    println!("{json}");
    Ok(())
}

/// Highest priority the filtered scan looked at.
fn scan_stop(out: &DecodeOutcome, budget: usize) -> usize {
    let ge = out.ge_stats.expect("elimination decoder");
    match (out.ep_index, ge.t_star) {
        // emitted the elimination-found pattern: the scan stopped short
        (Some(t), Some(ts)) if t == ts && !out.via_ge_fallback => ts - 1,
        // succeeded inside the scan
        (Some(t), _) => t,
        // abandonment (or fallback emission): the scan ran to its ceiling
        (None, Some(ts)) => ts - 1,
        (None, None) => budget,
    }
}

fn read_llrs(args: &DecodeArgs) -> AppResult<Vec<f64>> {
    let text = match (&args.llrs, &args.llr_file) {
        (Some(inline), None) => inline.replace(',', " "),
        (None, Some(path)) => std::fs::read_to_string(path)?,
        (None, None) => {
            return Err(AppError::Usage(
                "LLRs are required: pass --llrs or --llr-file".into(),
            ))
        }
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<f64>()
                .map_err(|_| AppError::Data(format!("bad LLR value {tok:?}")))
        })
        .collect()
}
