//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export takes plain numbers or decimal strings and returns a JSON
//! string; the logic lives in [`api`] so it can be tested natively.

pub mod api;

use wasm_bindgen::prelude::*;

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

/// `G(c)`, `H(c)`, `κ` and the main-term coefficient.
#[wasm_bindgen]
pub fn constants(c: u32) -> Result<String, JsError> {
    js(api::constants(c as u64))
}

/// Tally of `a(c)_n` for `n ≤ x` with primes, histogram and predicted mass.
#[wasm_bindgen]
pub fn explore(c: u32, x: u32) -> Result<String, JsError> {
    js(api::explore(c as u64, x as u64))
}

/// `a_p` for the good primes `p ≤ pmax` of `y² = x³ + a2 x² + a4 x + a6`.
#[wasm_bindgen]
pub fn traces(a2: &str, a4: &str, a6: &str, pmax: u32) -> Result<String, JsError> {
    js(api::traces(a2, a4, a6, pmax as u64))
}
