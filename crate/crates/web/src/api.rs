use quartic_core::arith::primes_up_to;
use quartic_core::congruence::{trace_of_frobenius, CurveQ};
use quartic_core::sequence::{tally_with, EnumerationConfig};
use quartic_core::series::{big_h, main_term_coefficient};
use quartic_core::{LabError, VERSION};
use serde_json::{json, Value};

/// Lattice budget `c · x` for a single browser call.
pub const WEB_ENUMERATION_BOUND: u64 = 5_000_000;
/// Largest prime accepted by [`traces`]; each trace is an `O(p)` character sum.
pub const WEB_MAX_TRACE_PRIME: u64 = 20_000;
/// Number of primes listed explicitly by [`explore`].
pub const PRIME_LIST_LIMIT: usize = 200;

fn err(e: LabError) -> String {
    e.to_string()
}

fn finish(command: &str, result: Value) -> Result<String, String> {
    let v = json!({ "command": command, "version": VERSION, "result": result });
    serde_json::to_string(&v).map_err(|e| e.to_string())
}

pub fn constants(c: u64) -> Result<String, String> {
    let model = main_term_coefficient(c).map_err(err)?;
    let h = big_h(c).map_err(err)?;
    finish(
        "constants",
        json!({
            "c": c,
            "G": model.g_c.to_string(),
            "G_float": model.g_c.to_f64(),
            "H": h.value,
            "kappa": model.kappa,
            "coefficient": model.coefficient,
        }),
    )
}

pub fn explore(c: u64, x: u64) -> Result<String, String> {
    let config = EnumerationConfig {
        budget: WEB_ENUMERATION_BOUND,
        ..EnumerationConfig::default()
    };
    let t = tally_with(c, x, &config).map_err(err)?;
    let model = main_term_coefficient(c).map_err(err)?;

    let mut histogram = std::collections::BTreeMap::<u32, u64>::new();
    let mut primes = Vec::new();
    let mut prime_count = 0u64;
    let mut prime_mass = 0u64;
    for (n, a) in t.rows() {
        *histogram.entry(a).or_default() += 1;
        if a > 0 && quartic_core::arith::is_prime(n) {
            prime_count += 1;
            prime_mass += a as u64;
            if primes.len() < PRIME_LIST_LIMIT {
                primes.push(n);
            }
        }
    }
    let predicted = model.sequence_mass(x as f64);
    let histogram: Vec<Value> = histogram
        .into_iter()
        .map(|(value, count)| json!({ "a_n": value, "count": count }))
        .collect();
    finish(
        "explore",
        json!({
            "c": c,
            "x": x,
            "total": t.total(),
            "predicted_total": predicted,
            "ratio": if predicted > 0.0 { Value::from(t.total() as f64 / predicted) } else { Value::Null },
            "prime_count": prime_count,
            "prime_mass": prime_mass,
            "primes": primes,
            "histogram": histogram,
        }),
    )
}

fn parse_coefficient(name: &str, s: &str) -> Result<i128, String> {
    s.trim().parse::<i128>().map_err(|_| format!("{name} must be an integer, got {s:?}"))
}

pub fn traces(a2: &str, a4: &str, a6: &str, pmax: u64) -> Result<String, String> {
    if pmax > WEB_MAX_TRACE_PRIME {
        return Err(format!("pmax {pmax} exceeds the demo limit {WEB_MAX_TRACE_PRIME}"));
    }
    let curve = CurveQ::new(
        parse_coefficient("a2", a2)?,
        parse_coefficient("a4", a4)?,
        parse_coefficient("a6", a6)?,
    )
    .map_err(err)?;
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for p in primes_up_to(pmax) {
        match trace_of_frobenius(&curve, p) {
            Ok(a_p) => rows.push(json!({
                "p": p,
                "a_p": a_p,
                "points": p as i64 + 1 - a_p,
                "hasse": (a_p as f64).abs() / (p as f64).sqrt(),
            })),
            Err(LabError::BadReduction { .. }) => bad.push(p),
            Err(e) => return Err(err(e)),
        }
    }
    finish(
        "traces",
        json!({
            "curve": curve,
            "discriminant": curve.discriminant().to_string(),
            "bad_primes": bad,
            "traces": rows,
        }),
    )
}
