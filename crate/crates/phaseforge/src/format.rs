//! Locale-free number formatting for CSV output.

/// Rounds to 10 significant digits and prints the shortest decimal form
/// (`0.6256`, not `6.256000000e-1`). Negative zero prints as `0`.
pub fn csv_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let rounded: f64 = format!("{x:.9e}").parse().expect("formatted float parses");
    format!("{rounded}")
}
