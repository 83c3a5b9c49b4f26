//! Deterministic rendering of reports: sorted keys and every non-integer number
//! printed with 17 significant digits, so equal inputs give byte-identical output.

use num_complex::Complex64;
use serde_json::{Number, Value};

fn canonical_number(n: &Number) -> Number {
    if n.is_i64() || n.is_u64() {
        return n.clone();
    }
    match n.as_f64() {
        Some(f) if f.is_finite() => serde_json::from_str(&format!("{f:.16e}")).unwrap_or_else(|_| n.clone()),
        _ => n.clone(),
    }
}

/// Rewrites floats to 17 significant digits; object keys are already sorted.
pub fn canonical(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::Number(canonical_number(&n)),
        Value::Array(a) => Value::Array(a.into_iter().map(canonical).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, canonical(v))).collect()),
        other => other,
    }
}

/// Pretty canonical JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&canonical(v.clone())).expect("JSON values render");
    s.push('\n');
    s
}

/// `{re, im}`, with non-finite parts as `null`.
pub fn complex(z: Complex64) -> Value {
    serde_json::json!({ "re": z.re, "im": z.im })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn floats_get_seventeen_digits() {
        let v = json!({ "b": 0.1, "a": [1, 2.5, null], "n": -3 });
        assert_eq!(
            serde_json::to_string(&canonical(v)).unwrap(),
            r#"{"a":[1,2.5000000000000000e+0,null],"b":1.0000000000000001e-1,"n":-3}"#
        );
    }

    #[test]
    fn rendering_is_stable() {
        let v = json!({ "z": complex(Complex64::new(1.0 / 3.0, f64::NAN)), "x": 1e-300 });
        assert_eq!(render(&v), render(&v.clone()));
        assert!(render(&v).contains("3.3333333333333331e-1"));
        assert!(render(&v).contains("null"));
    }
}
