//! Output shaping: every float is rounded to 12 significant digits before
//! emission so repeated invocations are byte-identical and diff-friendly.

use serde_json::Value;

pub const SIGNIFICANT_DIGITS: i32 = 12;

/// Round to `SIGNIFICANT_DIGITS` significant decimal digits.
pub fn round_sig(value: f64) -> f64 {
    if value == 0.0 || !value.is_finite() {
        return value;
    }
    let magnitude = value.abs().log10().floor() as i32;
    let factor = 10f64.powi(SIGNIFICANT_DIGITS - 1 - magnitude);
    (value * factor).round() / factor
}

/// Walk a JSON value rounding every float in place; integers are untouched.
pub fn round_json_floats(value: &mut Value) {
    match value {
        Value::Number(number) => {
            if number.is_f64() {
                let rounded = round_sig(number.as_f64().expect("checked is_f64"));
                if let Some(replacement) = serde_json::Number::from_f64(rounded) {
                    *number = replacement;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json_floats),
        Value::Object(map) => map.values_mut().for_each(round_json_floats),
        _ => {}
    }
}

/// Pretty JSON with rounded floats and a trailing newline.
pub fn to_json_bytes(mut value: Value) -> String {
    round_json_floats(&mut value);
    let mut text = serde_json::to_string_pretty(&value).expect("JSON serialization is infallible");
    text.push('\n');
    text
}

/// Shortest decimal form of the rounded value, for CSV cells.
pub fn format_float(value: f64) -> String {
    format!("{}", round_sig(value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounds_to_twelve_significant_digits() {
        assert_eq!(round_sig(1.2309594173407747), 1.23095941734);
        assert_eq!(round_sig(0.84375), 0.84375);
        assert_eq!(round_sig(0.0), 0.0);
        assert_eq!(round_sig(-1.2309594173407747), -1.23095941734);
        assert_eq!(round_sig(784.8981633974483), 784.898163397);
    }

    #[test]
    fn walker_rounds_floats_but_not_integers() {
        let mut value = serde_json::json!({
            "k": 0.6916980306789194,
            "k_prime": 1,
            "nested": [{"phi": 1.2309594173407747}]
        });
        round_json_floats(&mut value);
        assert_eq!(value["k"], serde_json::json!(0.691698030679));
        assert_eq!(value["k_prime"], serde_json::json!(1));
        assert_eq!(value["nested"][0]["phi"], serde_json::json!(1.23095941734));
    }

    #[test]
    fn csv_floats_use_shortest_decimal_form() {
        assert_eq!(format_float(0.84375), "0.84375");
        assert_eq!(format_float(1.2309594173407747), "1.23095941734");
        assert_eq!(format_float(1.0), "1");
    }
}
