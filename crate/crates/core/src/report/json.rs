use serde_json::{Number, Value};

use super::AnalysabilityReport;

pub const JSON_FRACTION_DIGITS: i32 = 6;

/// Rounds to the fixed number of fractional digits used in reports.
pub fn round_fraction(x: f64) -> f64 {
    let scale = 10f64.powi(JSON_FRACTION_DIGITS);
    // `+ 0.0` folds -0.0 into 0.0
    (x * scale).round() / scale + 0.0
}

fn canonicalize(value: &mut Value) {
    match value {
        Value::Number(n) if n.is_f64() => {
            let rounded = round_fraction(n.as_f64().unwrap_or_default());
            if let Some(num) = Number::from_f64(rounded) {
                *n = num;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(canonicalize),
        Value::Object(map) => map.values_mut().for_each(canonicalize),
        _ => {}
    }
}

/// Canonical JSON: lexicographically sorted keys, floats rounded to six
/// fractional digits, two-space indentation, trailing newline.
pub fn render_json(report: &AnalysabilityReport) -> Vec<u8> {
    // serde_json's default map is ordered, so keys come out sorted.
    let mut value = serde_json::to_value(report).expect("report serializes");
    canonicalize(&mut value);
    let mut out = serde_json::to_vec_pretty(&value).expect("value serializes");
    out.push(b'\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_rule() {
        assert_eq!(round_fraction(66.0 + 34.0 * 2.0 / 3.0), 88.666667);
        assert_eq!(round_fraction(-1e-9), 0.0);
        assert!(round_fraction(-1e-9).is_sign_positive());
        assert_eq!(
            serde_json::to_string(&Value::from(round_fraction(88.66666666666667))).unwrap(),
            "88.666667"
        );
    }

    #[test]
    fn canonicalize_nested() {
        let mut v = serde_json::json!({"b": [1.23456789, 2], "a": {"x": 0.1234564}});
        canonicalize(&mut v);
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"a":{"x":0.123456},"b":[1.234568,2]}"#
        );
    }
}
