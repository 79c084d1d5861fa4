//! Power-series Bessel-type functions: `J_n`, `I_n`, Tricomi `C_alpha`,
//! the Hermite-based Bessel function, and the even-index Hermite generating
//! function.
//!
//! All series are summed left to right with each term obtained from the
//! previous one by a ratio, so no factorial is ever formed.

use crate::error::{domain, Error, Result};
use crate::gamma::recip_gamma;
use crate::polynomials::hermite_m_normalized;
pub use crate::series::SeriesValue;
use crate::series::{sum_series, SeriesControl};

/// Above this `|x|` the alternating `J` series loses more digits to
/// cancellation than double precision can spare.
pub const SERIES_ARG_LIMIT: f64 = 30.0;

fn bessel_series(n: u32, x: f64, sign: f64, ctl: &SeriesControl) -> Result<SeriesValue> {
    if !x.is_finite() || x.abs() > SERIES_ARG_LIMIT {
        return Err(domain(format!("|x| = {} exceeds the series limit {SERIES_ARG_LIMIT}", x.abs())));
    }
    let half = 0.5 * x;
    let q = sign * half * half;
    let first = (1..=n).fold(1.0, |acc, k| acc * half / f64::from(k));
    let terms = (0u64..).scan(first, move |t, r| {
        let cur = *t;
        *t *= q / ((r + 1) as f64 * (u64::from(n) + r + 1) as f64);
        Some(Ok(cur))
    });
    sum_series(terms, ctl)
}

/// `J_n(x) = sum_r (-1)^r (x/2)^(n+2r) / (r! (n+r)!)` for `|x| <= 30`.
pub fn bessel_j(n: u32, x: f64, ctl: &SeriesControl) -> Result<SeriesValue> {
    bessel_series(n, x, -1.0, ctl)
}

/// `I_n(x) = sum_r (x/2)^(n+2r) / (r! (n+r)!)` for `|x| <= 30`.
pub fn bessel_i(n: u32, x: f64, ctl: &SeriesControl) -> Result<SeriesValue> {
    bessel_series(n, x, 1.0, ctl)
}

/// Tricomi function `C_alpha(x) = sum_r (-x)^r / (r! Gamma(alpha+r+1))`.
///
/// Entire in `x`; for `x > 0` it equals `x^(-alpha/2) J_alpha(2 sqrt x)`.
pub fn tricomi(alpha: f64, x: f64, ctl: &SeriesControl) -> Result<SeriesValue> {
    let first = recip_gamma(alpha + 1.0)?;
    let terms = (0u64..).scan(first, move |t, r| {
        let cur = *t;
        *t *= -x / ((r + 1) as f64 * (alpha + r as f64 + 1.0));
        Some(Ok(cur))
    });
    sum_series(terms, ctl)
}

/// Hermite-based Bessel function
/// `_H C_nu(x_1..x_m) = sum_r H_r^(m)(x_1..x_m) / (r! Gamma(nu+r+1))`.
///
/// With one argument this is `C_nu(-x)`; with two and integer `nu` it is the
/// classical two-variable `_H C_n(x, y)`.
pub fn hermite_bessel(nu: f64, xs: &[f64], ctl: &SeriesControl) -> Result<SeriesValue> {
    if xs.is_empty() {
        return Err(domain("hermite-based Bessel needs at least one argument"));
    }
    ctl.validate()?;
    let first = recip_gamma(nu + 1.0)?;
    // one extra coefficient feeds the tail bound
    let coeffs = hermite_m_normalized(ctl.max_terms + 1, xs);
    let terms = coeffs.into_iter().enumerate().scan(first, move |rg, (r, h)| {
        let cur = h * *rg;
        *rg /= nu + r as f64 + 1.0;
        Some(Ok(cur))
    });
    sum_series(terms, ctl)
}

/// Closed form `sum_n t^n H_{2n}(x, y) / n! = exp(t x^2 / (1 - 4yt)) / sqrt(1 - 4yt)`.
pub fn even_hermite_gf(x: f64, y: f64, t: f64) -> Result<f64> {
    let d = 1.0 - 4.0 * y * t;
    if !(d > 0.0) {
        return Err(Error::Domain(format!("1 - 4yt = {d} must be positive")));
    }
    Ok((t * x * x / d).exp() / d.sqrt())
}
