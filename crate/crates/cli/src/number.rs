//! Numeric arguments and number formatting.

use std::fmt;
use std::str::FromStr;

use umbral::oracle::Rational;

/// A numeric command-line argument.
///
/// Integers and fractions (`3`, `-1/3`) are exact and route through the
/// rational oracle; anything with a decimal point or exponent is a float.
#[derive(Debug, Clone, PartialEq)]
pub struct NumArg {
    pub text: String,
    pub exact: Option<Rational>,
    pub value: f64,
}

impl NumArg {
    pub fn from_rational(r: Rational) -> Self {
        NumArg { text: r.to_string(), value: r.to_f64(), exact: Some(r) }
    }

    pub fn from_f64(v: f64) -> Self {
        NumArg { text: format_full(v), value: v, exact: None }
    }
}

impl FromStr for NumArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim();
        let integer_like = |p: &str| {
            let p = p.strip_prefix(['-', '+']).unwrap_or(p);
            !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit())
        };
        let is_fraction = match t.split_once('/') {
            Some((a, b)) => integer_like(a) && integer_like(b),
            None => integer_like(t),
        };
        if is_fraction {
            let r: Rational = t.parse().map_err(|e| format!("invalid number '{t}': {e}"))?;
            return Ok(NumArg { text: t.to_string(), value: r.to_f64(), exact: Some(r) });
        }
        match t.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(NumArg { text: t.to_string(), value: v, exact: None }),
            _ => Err(format!("invalid number '{t}': expected an integer, a fraction a/b or a finite decimal")),
        }
    }
}

impl fmt::Display for NumArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// `digits` significant digits; plain notation for moderate magnitudes with
/// trailing zeros dropped, scientific otherwise.
pub fn format_sig(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let e = v.abs().log10().floor() as i32;
    if (-4..7).contains(&e) {
        let decimals = (digits as i32 - 1 - e).max(0) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        format!("{:.*e}", digits.saturating_sub(1), v)
    }
}

/// Fixed number of decimals.
pub fn format_fixed(v: f64, decimals: usize) -> String {
    let s = format!("{v:.decimals$}");
    if s.trim_start_matches('-').bytes().all(|b| b == b'0' || b == b'.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

/// Two significant digits in scientific notation, as error columns are printed.
pub fn format_err(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else {
        format!("{v:.1e}")
    }
}

/// Shortest representation that round-trips.
pub fn format_full(v: f64) -> String {
    format!("{v:?}")
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// `printed` equals `value` rounded or truncated to two significant digits.
pub fn two_digit_match(value: f64, printed: f64) -> bool {
    if value == 0.0 || printed == 0.0 {
        return value == printed;
    }
    let e = value.abs().log10().floor() as i32;
    let mantissa = (value.abs() / 10f64.powi(e) * 10.0 + 1e-9).floor() / 10.0;
    let truncated = format!("{:.1e}", mantissa.copysign(value) * 10f64.powi(e));
    let want = format!("{printed:.1e}");
    format!("{value:.1e}") == want || truncated == want
}
