//! WebAssembly bindings for the browser page in `www/`.
//!
//! Every export returns a JSON string. Failures come back as
//! `{"error": "..."}` so the page has a single code path, and so the same
//! functions run unchanged in native tests.

use logconcave::logop::{check_k_fold, detect_stationary, iterate_source};
use logconcave::lucas::{classify, LucasParams, VerdictKind};
use logconcave::seqcore::{Mode, SeqSource};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

/// Largest side of the (P, Q) map.
pub const MAX_GRID_SIDE: i32 = 61;
pub const MAX_DEPTH: usize = 8;
pub const MAX_HORIZON: usize = 100;

fn mode(extended: bool) -> Mode {
    if extended {
        Mode::Extended
    } else {
        Mode::Strict
    }
}

fn error(message: impl Into<String>) -> String {
    json!({ "error": message.into() }).to_string()
}

fn verdict_json(p: i32, q: i32, extended: bool) -> Value {
    let verdict = classify(&LucasParams::new(p, q), mode(extended));
    let tag = match &verdict.kind {
        VerdictKind::InfinitelyLogConcave { .. } => "ilc",
        VerdictKind::NotOneFold { .. } => "fail",
        VerdictKind::OutsideScope { .. } => "scope",
    };
    json!({
        "p": p,
        "q": q,
        "tag": tag,
        "label": verdict.short_label(),
        "text": verdict.to_string(),
    })
}

/// Verdict for a single `U_n(P, Q)`.
#[wasm_bindgen]
pub fn classify_pair(p: i32, q: i32, extended: bool) -> String {
    verdict_json(p, q, extended).to_string()
}

/// Verdicts for every `(P, Q)` in the rectangle, row-major with `Q`
/// descending so rows can be drawn top to bottom.
#[wasm_bindgen]
pub fn classify_grid(p_lo: i32, p_hi: i32, q_lo: i32, q_hi: i32, extended: bool) -> String {
    if p_lo > p_hi || q_lo > q_hi {
        return error("empty range");
    }
    if i64::from(p_hi) - i64::from(p_lo) >= i64::from(MAX_GRID_SIDE)
        || i64::from(q_hi) - i64::from(q_lo) >= i64::from(MAX_GRID_SIDE)
    {
        return error(format!("at most {MAX_GRID_SIDE} values per axis"));
    }
    let cells: Vec<Value> = (q_lo..=q_hi)
        .rev()
        .flat_map(|q| (p_lo..=p_hi).map(move |p| verdict_json(p, q, extended)))
        .collect();
    json!({
        "p": [p_lo, p_hi],
        "q": [q_lo, q_hi],
        "cells": cells,
    })
    .to_string()
}

/// `L^0 … L^depth` of a generator (`lucas:1,-1`, `const:3`, `rec:1,1/0,1`, …)
/// on `0..=horizon`, with the first negative value and a certificate when the
/// first image is already stationary.
#[wasm_bindgen]
pub fn log_iterates(spec: &str, depth: usize, horizon: usize, extended: bool) -> String {
    if depth == 0 || depth > MAX_DEPTH {
        return error(format!("depth must be in 1..={MAX_DEPTH}"));
    }
    if horizon == 0 || horizon > MAX_HORIZON {
        return error(format!("horizon must be in 1..={MAX_HORIZON}"));
    }
    let src = match SeqSource::parse_spec(spec.trim(), mode(extended)) {
        Ok(src) => src,
        Err(e) => return error(e),
    };
    let levels: Vec<Vec<String>> = iterate_source(&src, depth, horizon)
        .iter()
        .map(|level| level.iter().map(ToString::to_string).collect())
        .collect();
    let verdict = match check_k_fold(&src, depth, horizon) {
        Ok(v) => v,
        Err(e) => return error(e.to_string()),
    };
    let failure = match &verdict.kind {
        logconcave::FoldKind::Failure { depth, index, value, .. } => {
            json!({ "depth": depth, "index": index, "value": value.to_string() })
        }
        logconcave::FoldKind::NonnegativeUpTo { .. } => Value::Null,
    };
    let certificate = detect_stationary(&src, horizon).map(|c| c.to_string());
    json!({
        "source": src.to_string(),
        "levels": levels,
        "verdict": verdict.to_string(),
        "failure": failure,
        "certificate": certificate,
    })
    .to_string()
}
