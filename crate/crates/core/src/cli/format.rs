//! Number formatting shared by the CSV writers.

/// Shortest representation that parses back to the same value, with at
/// least three decimals. `None` and non-finite values give an empty cell.
pub fn float_cell(v: Option<f64>) -> String {
    match v {
        Some(x) if x.is_finite() => {
            // Avoid "-0.000".
            let x = if x == 0.0 { 0.0 } else { x };
            let mut s = x.to_string();
            match s.find('.') {
                None => s.push_str(".000"),
                Some(dot) => {
                    let decimals = s.len() - dot - 1;
                    for _ in decimals..3 {
                        s.push('0');
                    }
                }
            }
            s
        }
        _ => String::new(),
    }
}

pub fn int_cell(v: Option<u64>) -> String {
    v.map(|n| n.to_string()).unwrap_or_default()
}

/// Inverse of [`float_cell`].
pub fn parse_cell(s: &str) -> Result<Option<f64>, std::num::ParseFloatError> {
    let s = s.trim();
    if s.is_empty() {
        Ok(None)
    } else {
        s.parse().map(Some)
    }
}
