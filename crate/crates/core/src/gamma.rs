//! Gamma function and its reciprocal on the real line.
//!
//! Non-negative integer arguments up to 171 use an exact running product,
//! everything else goes through a Lanczos approximation (g = 7, nine
//! coefficients) with the reflection formula below one half.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

/// `n!` as a float. Exceeds `f64::MAX` (returns infinity) past 170.
pub fn factorial(n: u32) -> f64 {
    (2..=n).fold(1.0, |acc, k| acc * f64::from(k))
}

fn lanczos(x: f64) -> f64 {
    // Gamma(x) for x >= 0.5
    let z = x - 1.0;
    let mut sum = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    // split the power to delay overflow for large x
    let half = t.powf(0.5 * (z + 0.5));
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * sum
}

/// Gamma(x). Errors at the poles `0, -1, -2, ...`.
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("gamma of NaN".into()));
    }
    if is_pole(x) {
        return Err(Error::GammaPole(x));
    }
    if x.fract() == 0.0 && x <= 171.0 {
        return Ok(factorial(x as u32 - 1));
    }
    if x < 0.5 {
        let s = (PI * x).sin();
        return Ok(PI / (s * lanczos(1.0 - x)));
    }
    Ok(lanczos(x))
}

/// 1 / Gamma(x). Errors at the poles even though the reciprocal is entire,
/// so that callers see where a formula degenerates.
pub fn recip_gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("reciprocal gamma of NaN".into()));
    }
    if is_pole(x) {
        return Err(Error::GammaPole(x));
    }
    if x.fract() == 0.0 && x <= 171.0 {
        return Ok(1.0 / factorial(x as u32 - 1));
    }
    if x < 0.5 {
        // 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
        return Ok((PI * x).sin() * lanczos(1.0 - x) / PI);
    }
    Ok(1.0 / lanczos(x))
}
