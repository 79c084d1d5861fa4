//! Large-index approximations of order `m`.
//!
//! Every family is a binomial power under a vacuum, e.g.
//! `L_n(x, y) = y^n (1 - c u/n)^n` with `u = n x / y`, or
//! `H_n(x, y) = x^n (1 + h_Y / (x n))^n` with `Y = n^2 y`. Writing the power
//! as `exp(n ln(1 + ...))` and keeping the first `m` terms of the logarithm
//! gives an exponential of a degree-`m` polynomial in one umbral symbol,
//! whose Taylor coefficients are m-variable Hermite polynomials:
//!
//! | family | symbol | `a_s` | vacuum weight of `X^r` |
//! |---|---|---|---|
//! | Laguerre | `c` | `-n (x/y)^s / s` | `1/r!` |
//! | associated Laguerre | `c` (times `c^alpha`) | same | `1/Gamma(alpha+r+1)` |
//! | Hermite | `h_Y` | `(-1)^(s-1) / (s n^(s-1) x^s)` | `Y^k (2k)!/k!` at `r = 2k` |
//! | hybrid | `sqrt(c) h_Y` | same as Hermite | `Y^k (2k)!/(k!)^2` at `r = 2k` |
//!
//! All operations take the true evaluation point of the polynomial and
//! perform the rescaling internally.
//!
//! For Hermite and hybrid families with `m >= 3` the resulting series is
//! asymptotic rather than convergent; the stop rule of [`SeriesControl`]
//! truncates it while terms are still decreasing.

use crate::bessel::{bessel_j, hermite_bessel, SeriesValue};
use crate::error::{domain, Error, Result};
use crate::gamma::{factorial, gamma};
use crate::oracle::{exact_assoc_laguerre, exact_hermite, exact_hybrid, exact_laguerre, Rational};
use crate::polynomials::{
    assoc_laguerre, hermite2, hermite_m_normalized, hybrid_hl, laguerre2, PolyFamily,
};
use crate::series::{sum_series, SeriesControl};

/// Smallest `|x|` accepted by the Hermite and hybrid expansions, which
/// divide by `x`.
pub const MIN_HERMITE_X: f64 = 1e-8;

fn check_common(n: u32, m: usize) -> Result<()> {
    if n < 1 {
        return Err(domain("asymptotic formulas need n >= 1"));
    }
    if m < 1 {
        return Err(domain("order m must be >= 1"));
    }
    Ok(())
}

/// `a_s = -n (x/y)^s / s`, `s = 1..=m`: the truncated logarithm of
/// `(1 - c x/y)^n`.
pub fn laguerre_log_coefficients(n: u32, x: f64, y: f64, m: usize) -> Vec<f64> {
    let ratio = x / y;
    (1..=m)
        .map(|s| -f64::from(n) * ratio.powi(s as i32) / s as f64)
        .collect()
}

/// `a_s = (-1)^(s-1) / (s n^(s-1) x^s)`, `s = 1..=m`: the truncated logarithm
/// of `(1 + X/(x n))^n`.
pub fn hermite_log_coefficients(n: u32, x: f64, m: usize) -> Vec<f64> {
    let n = f64::from(n);
    (1..=m)
        .map(|s| {
            let sign = if s % 2 == 1 { 1.0 } else { -1.0 };
            sign / (s as f64 * n.powi(s as i32 - 1) * x.powi(s as i32))
        })
        .collect()
}

/// Order-`m` approximation of `L_n(x, y)`:
/// `y^n _H C_0(a_1..a_m)` with `a_s = -n (x/y)^s / s`.
///
/// `m = 1` is `y^n J_0(2 sqrt(n x / y))`; `m = 2` is the Hermite-based Bessel
/// form `y^n _H C_0(-u, -u^2/(2n))`.
pub fn approx_laguerre(n: u32, x: f64, y: f64, m: usize, ctl: &SeriesControl) -> Result<SeriesValue> {
    approx_assoc_laguerre(n, 0.0, x, y, m, ctl)
}

/// Second-order variant built from two ordinary Bessel functions,
/// `y^n (J_0(2 sqrt u) - u/(2n) J_2(2 sqrt u))`, `u = n x / y`.
pub fn approx_laguerre_j2(n: u32, x: f64, y: f64, ctl: &SeriesControl) -> Result<SeriesValue> {
    check_common(n, 2)?;
    if y == 0.0 {
        return Err(domain("y must be nonzero"));
    }
    let u = f64::from(n) * x / y;
    if u < 0.0 {
        return Err(domain(format!("u = n x / y = {u} must be >= 0 for the J-form")));
    }
    let arg = 2.0 * u.sqrt();
    let j0 = bessel_j(0, arg, ctl)?;
    let j2 = bessel_j(2, arg, ctl)?;
    let w = u / (2.0 * f64::from(n));
    let combined = SeriesValue {
        value: j0.value - w * j2.value,
        terms_used: j0.terms_used.max(j2.terms_used),
        tail_bound: j0.tail_bound + w.abs() * j2.tail_bound,
    };
    Ok(combined.scaled(y.powi(n as i32)))
}

/// Order-`m` approximation of `L_n^(alpha)(x, y)`:
/// `Gamma(n+alpha+1)/n! y^n _H C_alpha(a_1..a_m)`.
pub fn approx_assoc_laguerre(
    n: u32,
    alpha: f64,
    x: f64,
    y: f64,
    m: usize,
    ctl: &SeriesControl,
) -> Result<SeriesValue> {
    check_common(n, m)?;
    if y == 0.0 {
        return Err(domain("y must be nonzero"));
    }
    if alpha <= -1.0 && alpha.fract() == 0.0 {
        return Err(Error::GammaPole(alpha));
    }
    let coeffs = laguerre_log_coefficients(n, x, y, m);
    let series = hermite_bessel(alpha, &coeffs, ctl)?;
    let prefactor = if alpha == 0.0 {
        1.0
    } else {
        gamma(f64::from(n) + alpha + 1.0)? / factorial(n)
    };
    Ok(series.scaled(prefactor * y.powi(n as i32)))
}

/// `x^n sum_k h_{2k} w_k` where `h` are the normalized m-variable Hermite
/// coefficients of the Hermite log expansion and `w_k` the vacuum weight.
fn hermite_vacuum_series(
    n: u32,
    x: f64,
    y: f64,
    m: usize,
    ctl: &SeriesControl,
    weight_step: impl Fn(u64, f64) -> f64,
) -> Result<SeriesValue> {
    check_common(n, m)?;
    ctl.validate()?;
    if !(x.abs() >= MIN_HERMITE_X) {
        return Err(domain(format!("|x| = {} is below {MIN_HERMITE_X}", x.abs())));
    }
    let big_y = f64::from(n) * f64::from(n) * y;
    let coeffs = hermite_log_coefficients(n, x, m);
    let h = hermite_m_normalized(2 * ctl.max_terms + 2, &coeffs);
    let terms = (0u64..).map_while(|k| h.get(2 * k as usize).map(|hk| (k, *hk))).scan(
        1.0f64,
        move |w, (k, hk)| {
            let cur = hk * *w;
            *w = weight_step(k, *w * big_y);
            Some(Ok(cur))
        },
    );
    let series = sum_series(terms, ctl)?;
    Ok(series.scaled(x.powi(n as i32)))
}

/// Order-`m` approximation of `H_n(x, y)`:
/// `x^n sum_k H_{2k}^(m)(a_1..a_m) Y^k / k!`, `Y = n^2 y`.
///
/// `m = 1` collapses to `x^n exp(Y / x^2)`; `m = 2` keeps the difference
/// `h/x - h^2/(2 x^2 n)` in the exponent.
pub fn approx_hermite(n: u32, x: f64, y: f64, m: usize, ctl: &SeriesControl) -> Result<SeriesValue> {
    // (2k+2)!/(k+1)! = (2k)!/k! * 2(2k+1)
    hermite_vacuum_series(n, x, y, m, ctl, |k, w| w * 2.0 * (2 * k + 1) as f64)
}

/// Closed Gaussian form of the second-order Hermite approximation,
/// `sqrt(n) x^(n+1) exp(n Y / (n x^2 + 2Y)) / sqrt(n x^2 + 2Y)`.
///
/// Negative `x` goes through the parity `H_n(-x, y) = (-1)^n H_n(x, y)`.
pub fn approx_hermite_closed(n: u32, x: f64, y: f64) -> Result<f64> {
    check_common(n, 2)?;
    if !(x.abs() >= MIN_HERMITE_X) {
        return Err(domain(format!("|x| = {} is below {MIN_HERMITE_X}", x.abs())));
    }
    let nf = f64::from(n);
    let big_y = nf * nf * y;
    let ax = x.abs();
    let d = nf * ax * ax + 2.0 * big_y;
    if !(d > 0.0) {
        return Err(domain(format!("n x^2 + 2Y = {d} must be positive")));
    }
    let value = nf.sqrt() * ax.powi(n as i32 + 1) * (nf * big_y / d).exp() / d.sqrt();
    Ok(if x < 0.0 && n % 2 == 1 { -value } else { value })
}

/// Order-`m` approximation of `HL_n(x, y)`:
/// `x^n sum_k H_{2k}^(m)(a_1..a_m) Y^k / (k!)^2`, `Y = n^2 y`.
///
/// `m = 1` collapses to `x^n I_0(2 sqrt(Y) / x)`.
pub fn approx_hybrid(n: u32, x: f64, y: f64, m: usize, ctl: &SeriesControl) -> Result<SeriesValue> {
    // (2k+2)!/((k+1)!)^2 = (2k)!/(k!)^2 * 2(2k+1)/(k+1)
    hermite_vacuum_series(n, x, y, m, ctl, |k, w| w * 2.0 * (2 * k + 1) as f64 / (k + 1) as f64)
}

/// Which approximation formula a report uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Truncated logarithm of order `m`.
    Order(usize),
    /// Laguerre only: the `J_0 / J_2` second-order variant.
    BesselJ2,
    /// Hermite only: the closed Gaussian second-order form.
    GaussianClosed,
}

impl Method {
    pub fn order(&self) -> usize {
        match self {
            Method::Order(m) => *m,
            Method::BesselJ2 | Method::GaussianClosed => 2,
        }
    }
}

/// One row of an accuracy table: exact value, approximation and error.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxReport {
    pub family: PolyFamily,
    pub method: Method,
    pub n: u32,
    pub x: f64,
    pub y: f64,
    pub order_m: usize,
    pub exact: f64,
    pub approx: f64,
    /// `|approx - exact| / |exact|`; `0` when both vanish, infinite when only
    /// the exact value does.
    pub relative_error: f64,
    pub terms_used: usize,
}

impl ApproxReport {
    /// `|approx - exact| / |approx|`, the error measured against the
    /// approximation instead of the exact value.
    pub fn error_relative_to_approx(&self) -> f64 {
        relative(self.exact, self.approx)
    }
}

fn relative(actual: f64, reference: f64) -> f64 {
    let diff = (actual - reference).abs();
    if diff == 0.0 {
        0.0
    } else {
        diff / reference.abs()
    }
}

/// Exact value of `family` at a rational point, from the rational oracle.
pub fn exact_value(family: &PolyFamily, n: u32, x: &Rational, y: &Rational) -> Result<f64> {
    Ok(match family {
        PolyFamily::Laguerre2 => exact_laguerre(n, x, y).to_f64(),
        PolyFamily::Hermite2 => exact_hermite(n, x, y).to_f64(),
        PolyFamily::HybridHL => exact_hybrid(n, x, y).to_f64(),
        PolyFamily::AssocLaguerre { alpha } => {
            let alpha = Rational::from_f64(*alpha)
                .ok_or_else(|| domain("alpha must be finite"))?;
            exact_assoc_laguerre(n, &alpha, x, y)?.to_f64()
        }
        PolyFamily::HermiteM { .. } => {
            return Err(Error::Unsupported("no approximation for m-variable Hermite".into()))
        }
    })
}

/// The selected approximation of `family` at `(n, x, y)`.
pub fn approximate(
    family: PolyFamily,
    n: u32,
    x: f64,
    y: f64,
    method: Method,
    ctl: &SeriesControl,
) -> Result<SeriesValue> {
    Ok(match (family, method) {
        (PolyFamily::Laguerre2, Method::Order(m)) => approx_laguerre(n, x, y, m, ctl)?,
        (PolyFamily::Laguerre2, Method::BesselJ2) => approx_laguerre_j2(n, x, y, ctl)?,
        (PolyFamily::AssocLaguerre { alpha }, Method::Order(m)) => {
            approx_assoc_laguerre(n, alpha, x, y, m, ctl)?
        }
        (PolyFamily::Hermite2, Method::Order(m)) => approx_hermite(n, x, y, m, ctl)?,
        (PolyFamily::Hermite2, Method::GaussianClosed) => {
            SeriesValue::exact(approx_hermite_closed(n, x, y)?)
        }
        (PolyFamily::HybridHL, Method::Order(m)) => approx_hybrid(n, x, y, m, ctl)?,
        _ => {
            return Err(Error::Unsupported(format!(
                "{method:?} is not defined for {}",
                family.name()
            )))
        }
    })
}

fn report(
    family: PolyFamily,
    n: u32,
    x: f64,
    y: f64,
    method: Method,
    exact: f64,
    ctl: &SeriesControl,
) -> Result<ApproxReport> {
    let series = approximate(family, n, x, y, method, ctl)?;
    Ok(ApproxReport {
        family,
        method,
        n,
        x,
        y,
        order_m: method.order(),
        exact,
        approx: series.value,
        relative_error: relative(series.value, exact),
        terms_used: series.terms_used,
    })
}

/// Pairs the oracle's exact value with the selected approximation.
pub fn make_report(
    family: PolyFamily,
    n: u32,
    x: &Rational,
    y: &Rational,
    method: Method,
    ctl: &SeriesControl,
) -> Result<ApproxReport> {
    let exact = exact_value(&family, n, x, y)?;
    report(family, n, x.to_f64(), y.to_f64(), method, exact, ctl)
}

/// Like [`make_report`], with the reference value from the float evaluators.
pub fn make_report_float(
    family: PolyFamily,
    n: u32,
    x: f64,
    y: f64,
    method: Method,
    ctl: &SeriesControl,
) -> Result<ApproxReport> {
    let exact = match family {
        PolyFamily::Laguerre2 => laguerre2(n, &x, &y),
        PolyFamily::Hermite2 => hermite2(n, &x, &y),
        PolyFamily::HybridHL => hybrid_hl(n, &x, &y),
        PolyFamily::AssocLaguerre { alpha } => assoc_laguerre(n, alpha, x, y)?,
        PolyFamily::HermiteM { .. } => {
            return Err(Error::Unsupported("no approximation for m-variable Hermite".into()))
        }
    };
    report(family, n, x, y, method, exact, ctl)
}
