//! Three library operations exposed to a static page.

use serde_json::json;
use wasm_bindgen::prelude::*;

use modseries::linear_ode::search_ode;
use modseries::modular::reduce;
use modseries::reduce::{calabi_yau_4f3, findings_json, truncation_polynomial};
use modseries::series::coeff::parse_rational;
use modseries::series::{normalized_series, tutte_integer, tutte_series, TutteParam, TutteSeries};

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Coefficients of H(w) for rational q, as a JSON array of strings.
pub fn tutte_json(q: &str, n: usize) -> Result<String, String> {
    let q = parse_rational(q).map_err(err)?;
    let coeffs: Vec<String> = match tutte_series(&TutteParam::Rational(q), n).map_err(err)? {
        TutteSeries::Integer(s) => s.coeffs().iter().map(|c| c.to_string()).collect(),
        TutteSeries::Rational(s) => s.coeffs().iter().map(|c| c.to_string()).collect(),
        TutteSeries::Poly(_) => unreachable!("numeric q"),
    };
    Ok(json!(coeffs).to_string())
}

/// Guesses the operator annihilating S = H/(12w²) mod p from n coefficients.
pub fn guess_operator_json(p: u64, n: usize, max_order: usize, max_degree: usize) -> Result<String, String> {
    let h = tutte_integer(4, n + 2).map_err(err)?;
    let s = normalized_series(&h).map_err(err)?;
    let sp = reduce(&s, p).map_err(err)?;
    let guard = (n / 10).max(20);
    match search_ode(&sp, max_order, max_degree, guard).map_err(err)? {
        Some(g) => Ok(g.to_json().to_string()),
        None => Ok(json!({"found": false}).to_string()),
    }
}

/// s^(-e) mod p for the Calabi-Yau 4F3 series: the smallest e giving a polynomial.
pub fn truncation_json(p: u64, n: usize) -> Result<String, String> {
    let s = calabi_yau_4f3().series_mod(n, p).map_err(err)?;
    let t = truncation_polynomial(&s, p.saturating_pow(3)).map_err(err)?;
    Ok(findings_json("4F3", p, &t).to_string())
}

#[wasm_bindgen]
pub fn tutte(q: &str, n: usize) -> Result<String, JsValue> {
    tutte_json(q, n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn guess_operator(p: u32, n: usize, max_order: usize, max_degree: usize) -> Result<String, JsValue> {
    guess_operator_json(p as u64, n, max_order, max_degree).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn truncation(p: u32, n: usize) -> Result<String, JsValue> {
    truncation_json(p as u64, n).map_err(|e| JsValue::from_str(&e))
}
