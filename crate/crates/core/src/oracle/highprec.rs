use crate::error::{Error, Result};
use crate::polynomials::hermite_m_normalized;

use super::Rational;

const MAX_TERMS: usize = 2000;
// slack on bounds that are computed in floating point
const BOUND_SLACK: f64 = 1.01;

/// Which transcendental series to sum. Orders are integers so every term is
/// rational at rational arguments.
#[derive(Debug, Clone, PartialEq)]
pub enum SeriesId {
    /// `J_n(x) = sum_r (-1)^r (x/2)^(n+2r) / (r! (n+r)!)`
    BesselJ { n: u32, x: Rational },
    /// `I_n(x) = sum_r (x/2)^(n+2r) / (r! (n+r)!)`
    BesselI { n: u32, x: Rational },
    /// `C_alpha(x) = sum_r (-x)^r / (r! (alpha+r)!)`
    Tricomi { alpha: u32, x: Rational },
    /// `sum_r H_r^(m)(xs) / (r! (nu+r)!)`
    HermiteBessel { nu: u32, xs: Vec<Rational> },
}

/// Exact partial sum with a rigorous bound on everything left out.
#[derive(Debug, Clone, PartialEq)]
pub struct CertifiedSum {
    pub sum: Rational,
    pub terms: usize,
    /// Upper bound on `|true value - sum|`.
    pub tail_bound: f64,
}

impl CertifiedSum {
    pub fn to_f64(&self) -> f64 {
        self.sum.to_f64()
    }
}

/// Sums `series` until the certified tail is at most `target_rel * |sum|`.
///
/// `target_rel` must lie in `[1e-25, 1)`.
pub fn highprec_series(series: &SeriesId, target_rel: f64) -> Result<CertifiedSum> {
    if !(1e-25..1.0).contains(&target_rel) {
        return Err(Error::Domain(format!(
            "target_rel {target_rel:e} outside [1e-25, 1)"
        )));
    }
    match series {
        SeriesId::BesselJ { n, x } => bessel_like(*n, x, true, target_rel),
        SeriesId::BesselI { n, x } => bessel_like(*n, x, false, target_rel),
        SeriesId::Tricomi { alpha, x } => tricomi(*alpha, x, target_rel),
        SeriesId::HermiteBessel { nu, xs } => hermite_bessel(*nu, xs, target_rel),
    }
}

fn done(sum: &Rational, tail: f64, target_rel: f64) -> bool {
    tail <= target_rel * sum.to_f64().abs() || tail == 0.0
}

/// Geometric bound on `sum_{r >= k} |t_r|` given `|t_k|` and a ratio bound
/// `q >= |t_{r+1}/t_r|` valid for all `r >= k`.
fn geometric_tail(next_abs: f64, ratio: f64) -> Option<f64> {
    (ratio < 1.0).then(|| BOUND_SLACK * next_abs / (1.0 - ratio))
}

fn bessel_like(n: u32, x: &Rational, alternating: bool, target_rel: f64) -> Result<CertifiedSum> {
    let half = x.clone() / Rational::from_integer(2);
    let half_sq = half.clone() * half.clone();
    let half_sq_f = half_sq.to_f64();
    // t_0 = (x/2)^n / n!
    let mut term = (1..=n).fold(Rational::one(), |acc, k| {
        acc * half.clone() / Rational::from_integer(k as i64)
    });
    let mut sum = Rational::zero();
    for r in 0..MAX_TERMS {
        sum = sum + term.clone();
        let denom = Rational::from_integer(((r + 1) * (n as usize + r + 1)) as i64);
        term = term * half_sq.clone() / denom;
        if alternating {
            term = -term;
        }
        let ratio = half_sq_f.abs() / ((r + 2) as f64 * (n as usize + r + 2) as f64);
        if let Some(tail) = geometric_tail(term.to_f64().abs(), ratio) {
            if done(&sum, tail, target_rel) {
                return Ok(CertifiedSum { sum, terms: r + 1, tail_bound: tail });
            }
        }
    }
    Err(Error::NoConvergence { max_terms: MAX_TERMS })
}

fn tricomi(alpha: u32, x: &Rational, target_rel: f64) -> Result<CertifiedSum> {
    let neg_x = -x.clone();
    let x_abs = x.to_f64().abs();
    let mut term = (1..=alpha).fold(Rational::one(), |acc, k| acc / Rational::from_integer(k as i64));
    let mut sum = Rational::zero();
    for r in 0..MAX_TERMS {
        sum = sum + term.clone();
        let denom = Rational::from_integer(((r + 1) * (alpha as usize + r + 1)) as i64);
        term = term * neg_x.clone() / denom;
        let ratio = x_abs / ((r + 2) as f64 * (alpha as usize + r + 2) as f64);
        if let Some(tail) = geometric_tail(term.to_f64().abs(), ratio) {
            if done(&sum, tail, target_rel) {
                return Ok(CertifiedSum { sum, terms: r + 1, tail_bound: tail });
            }
        }
    }
    Err(Error::NoConvergence { max_terms: MAX_TERMS })
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Bound on `sum_{r >= k} |H_r^(m)(xs)| / (r! (nu+r)!)`.
///
/// `|H_r^(m)(xs)| / r!` is at most the `t^r` coefficient of
/// `exp(sum |x_s| t^s)`, which by Cauchy's estimate is at most
/// `exp(P(rho)) / rho^r` for every `rho > 0`. The remaining factor
/// `1/(nu+r)!` makes the tail geometric with ratio `1/(rho (nu+k+1))`.
fn hermite_bessel_tail(abs_xs: &[f64], nu: u32, k: usize) -> f64 {
    let ln_fact = ln_factorial(nu as usize + k);
    let mut best = f64::INFINITY;
    let mut rho = 1e-3;
    while rho < 1e4 {
        let ratio = 1.0 / (rho * (nu as usize + k + 1) as f64);
        if ratio < 1.0 {
            let p: f64 = abs_xs
                .iter()
                .enumerate()
                .map(|(s, a)| a * rho.powi(s as i32 + 1))
                .sum();
            let ln_bound = p - k as f64 * rho.ln() - ln_fact - (1.0 - ratio).ln();
            best = best.min(ln_bound);
        }
        rho *= 1.05;
    }
    BOUND_SLACK * best.exp()
}

fn hermite_bessel(nu: u32, xs: &[Rational], target_rel: f64) -> Result<CertifiedSum> {
    if xs.is_empty() {
        return Err(Error::Domain("hermite-based Bessel needs at least one argument".into()));
    }
    let abs_xs: Vec<f64> = xs.iter().map(|v| v.to_f64().abs()).collect();
    let mut sum = Rational::zero();
    let mut coeffs: Vec<Rational> = Vec::new();
    // 1/(nu + r)!
    let mut recip_fact = (1..=nu).fold(Rational::one(), |acc, k| acc / Rational::from_integer(k as i64));
    let mut r = 0;
    while r < MAX_TERMS {
        if r >= coeffs.len() {
            let len = (coeffs.len() * 2).clamp(32, MAX_TERMS);
            coeffs = hermite_m_normalized(len, xs);
        }
        sum = sum + coeffs[r].clone() * recip_fact.clone();
        recip_fact = recip_fact / Rational::from_integer((nu as usize + r + 1) as i64);
        r += 1;
        let tail = hermite_bessel_tail(&abs_xs, nu, r);
        if done(&sum, tail, target_rel) {
            return Ok(CertifiedSum { sum, terms: r, tail_bound: tail });
        }
    }
    Err(Error::NoConvergence { max_terms: MAX_TERMS })
}
