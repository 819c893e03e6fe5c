//! Browser bindings for the interactive demo page: presentation data,
//! step-by-step reduction traces, and growth series, all returned as JSON
//! strings for the plain-JS front end in `www/`.
//!
//! The `*_impl` functions carry the logic and are ordinary Rust (testable on
//! any target); the `#[wasm_bindgen]` wrappers only translate errors, since
//! `JsError` exists on wasm targets alone.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use dihedral::lang;
use dihedral::presentation::{Presentation, Word};
use dihedral::rewrite;

fn presentation(n: i64, k: i64) -> Result<Presentation, String> {
    Presentation::new(n, k).map_err(|e| e.to_string())
}

fn parse_word(p: &Presentation, text: &str) -> Result<Word, String> {
    let mut letters = Vec::new();
    for token in text.split_whitespace() {
        let digits = token.strip_prefix('a').unwrap_or(token);
        let value: i64 = digits
            .parse()
            .map_err(|_| format!("malformed token {token:?}"))?;
        if value < 1 || value > p.n() as i64 {
            return Err(format!("letter {value} out of range 1..={}", p.n()));
        }
        letters.push(value as u8);
    }
    Ok(Word::from(letters))
}

#[derive(Serialize)]
struct PresentationInfo {
    n: usize,
    k: usize,
    relations: Vec<String>,
    group_order: usize,
    blocks_b: Vec<String>,
    blocks_c: Vec<String>,
}

fn presentation_info_impl(n: i64, k: i64) -> Result<String, String> {
    let p = presentation(n, k)?;
    let info = PresentationInfo {
        n: p.n(),
        k: p.k(),
        relations: p.relation_words().iter().map(|w| w.to_string()).collect(),
        group_order: p.group_h().map_err(|e| e.to_string())?.len(),
        blocks_b: (1..=p.n() as u8)
            .map(|i| p.block_b(p.residue(i as i64)).to_string())
            .collect(),
        blocks_c: (1..=p.n() as u8)
            .map(|i| p.block_c(p.residue(i as i64)).to_string())
            .collect(),
    };
    Ok(serde_json::to_string(&info).expect("serialization cannot fail"))
}

#[derive(Serialize)]
struct TraceStep {
    rule: String,
    word: String,
}

#[derive(Serialize)]
struct Trace {
    input: String,
    steps: Vec<TraceStep>,
    normal_form: String,
    i: usize,
    j: usize,
    b: String,
}

fn reduce_trace_impl(n: i64, k: i64, word: &str) -> Result<String, String> {
    let p = presentation(n, k)?;
    let w = parse_word(&p, word)?;
    let (nf, steps) = rewrite::reduce_with_trace(&p, &w).map_err(|e| e.to_string())?;
    let d = rewrite::decompose(&p, &nf).map_err(|e| e.to_string())?;
    let trace = Trace {
        input: w.to_string(),
        steps: steps
            .iter()
            .map(|s| TraceStep {
                rule: format!("{:?}(i={}, q={})", s.rule.kind, s.rule.i, s.rule.q),
                word: s.result.to_string(),
            })
            .collect(),
        normal_form: nf.to_string(),
        i: d.i,
        j: d.j,
        b: d.b.to_string(),
    };
    Ok(serde_json::to_string(&trace).expect("serialization cannot fail"))
}

#[derive(Serialize)]
struct Growth {
    states: usize,
    coefficients: Vec<String>,
    numerator: Vec<String>,
    denominator: Vec<String>,
}

fn growth_impl(n: i64, k: i64, max_len: usize) -> Result<String, String> {
    if max_len > 200 {
        return Err("max_len is limited to 200 in the demo".to_string());
    }
    let p = presentation(n, k)?;
    let dfa = lang::irreducible_dfa(&p).map_err(|e| e.to_string())?;
    let g = lang::growth_series(&dfa, max_len);
    let out = Growth {
        states: dfa.state_count(),
        coefficients: g.coefficients.iter().map(|c| c.to_string()).collect(),
        numerator: g.numerator.iter().map(|c| c.to_string()).collect(),
        denominator: g.denominator.iter().map(|c| c.to_string()).collect(),
    };
    Ok(serde_json::to_string(&out).expect("serialization cannot fail"))
}

/// Relation words, group order and blocks for a validated `(n, k)`.
#[wasm_bindgen]
pub fn presentation_info(n: i64, k: i64) -> Result<String, JsError> {
    presentation_info_impl(n, k).map_err(|e| JsError::new(&e))
}

/// Deterministic reduction of `word` with the full step trace and the
/// `a_1^i (a_2⋯a_n)^j b` decomposition of the result.
#[wasm_bindgen]
pub fn reduce_trace(n: i64, k: i64, word: &str) -> Result<String, JsError> {
    reduce_trace_impl(n, k, word).map_err(|e| JsError::new(&e))
}

/// Exact normal-word counts by length plus the rational generating function.
#[wasm_bindgen]
pub fn growth(n: i64, k: i64, max_len: usize) -> Result<String, JsError> {
    growth_impl(n, k, max_len).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bindings_return_well_formed_json() {
        let info: serde_json::Value =
            serde_json::from_str(&presentation_info_impl(4, 3).unwrap()).unwrap();
        assert_eq!(info["group_order"], 8);
        let trace: serde_json::Value =
            serde_json::from_str(&reduce_trace_impl(4, 3, "1 2 3 4 3 4 1").unwrap()).unwrap();
        assert_eq!(trace["normal_form"], "1 1 2 3 4 4 3");
        assert_eq!(trace["steps"].as_array().unwrap().len(), 2);
        let g: serde_json::Value = serde_json::from_str(&growth_impl(4, 3, 5).unwrap()).unwrap();
        assert_eq!(g["coefficients"][4], "249");
    }

    #[test]
    fn invalid_parameters_are_reported() {
        assert!(presentation_info_impl(4, 2).is_err());
        assert!(reduce_trace_impl(4, 3, "1 9").is_err());
    }
}
