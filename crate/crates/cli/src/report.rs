use serde::Serialize;
use serde_json::{json, Map, Number, Value};

use crate::args::Format;

/// Significant digits of every float in a report.
pub const FLOAT_DIGITS: usize = 12;

/// Wraps a result with the command, its parameters and the crate version.
/// `serde_json::Map` is ordered, so the key order is stable.
pub fn envelope(command: &str, params: Value, result: impl Serialize) -> Value {
    let result = serde_json::to_value(result).expect("reports are plain data");
    round_floats(json!({
        "command": command,
        "version": quartic_core::VERSION,
        "params": params,
        "result": result,
    }))
}

fn round_float(v: f64) -> Value {
    if !v.is_finite() {
        return Value::Null;
    }
    let r: f64 = format!("{:.*e}", FLOAT_DIGITS - 1, v).parse().unwrap();
    Number::from_f64(r).map(Value::Number).unwrap_or(Value::Null)
}

pub fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => round_float(n.as_f64().unwrap()),
        Value::Array(a) => Value::Array(a.into_iter().map(round_floats).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, round_floats(v))).collect()),
        other => other,
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, v)| flatten(&key(k), v, out)),
        Value::Array(a) => a
            .iter()
            .enumerate()
            .for_each(|(i, v)| flatten(&key(&i.to_string()), v, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).unwrap();
            s.push('\n');
            s
        }
        Format::Table | Format::Csv => {
            let mut rows = Vec::new();
            flatten("", v, &mut rows);
            let mut s = String::new();
            if format == Format::Csv {
                s.push_str("key,value\n");
                for (k, v) in rows {
                    s.push_str(&format!("{},{}\n", csv_field(&k), csv_field(&v)));
                }
            } else {
                let w = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in rows {
                    s.push_str(&format!("{k:<w$}  {v}\n"));
                }
            }
            s
        }
    }
}

pub fn params(pairs: &[(&str, Value)]) -> Value {
    Value::Object(pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect::<Map<_, _>>())
}
