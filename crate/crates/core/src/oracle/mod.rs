//! Ground truth in exact arithmetic.
//!
//! The polynomial families all have rational coefficients, so at rational
//! points their values are rationals and can be computed with no rounding at
//! all. Everything here evaluates the *defining factorial sums* directly,
//! which keeps the oracle independent of the recurrences used by the float
//! evaluators in [`crate::polynomials`].
//!
//! The transcendental series (Bessel, Tricomi, Hermite-based Bessel) get
//! exact rational partial sums plus a certified bound on the omitted tail,
//! see [`highprec_series`].

mod highprec;
mod rational;

pub use highprec::{highprec_series, CertifiedSum, SeriesId};
pub use rational::{ParseRationalError, Rational};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

/// `0!, 1!, ..., n!` as rationals.
fn factorials(n: u32) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut acc = BigInt::one();
    out.push(Rational::one());
    for k in 1..=n {
        acc *= BigInt::from(k);
        out.push(Rational::from_bigints(acc.clone(), BigInt::one()));
    }
    out
}

/// `x^0, ..., x^n`.
fn powers(x: &Rational, n: u32) -> Vec<Rational> {
    let mut out = vec![Rational::one()];
    for k in 0..n as usize {
        let next = &out[k] * x;
        out.push(next);
    }
    out
}

/// `L_n(x, y) = sum_s C(n, s) (-1)^s y^(n-s) x^s / s!`
pub fn exact_laguerre(n: u32, x: &Rational, y: &Rational) -> Rational {
    let f = factorials(n);
    let (xp, yp) = (powers(x, n), powers(y, n));
    (0..=n as usize)
        .map(|s| {
            let binomial = &f[n as usize] / &(&f[s] * &f[n as usize - s]);
            let term = binomial * &yp[n as usize - s] * &xp[s] / &f[s];
            if s % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .sum()
}

/// `H_n(x, y) = n! sum_r x^(n-2r) y^r / ((n-2r)! r!)`
pub fn exact_hermite(n: u32, x: &Rational, y: &Rational) -> Rational {
    let f = factorials(n);
    let (xp, yp) = (powers(x, n), powers(y, n / 2));
    let n = n as usize;
    (0..=n / 2)
        .map(|r| &f[n] * &xp[n - 2 * r] * &yp[r] / &(&f[n - 2 * r] * &f[r]))
        .sum()
}

/// `HL_n(x, y) = n! sum_r x^(n-2r) y^r / ((n-2r)! (r!)^2)`
pub fn exact_hybrid(n: u32, x: &Rational, y: &Rational) -> Rational {
    let f = factorials(n);
    let (xp, yp) = (powers(x, n), powers(y, n / 2));
    let n = n as usize;
    (0..=n / 2)
        .map(|r| &f[n] * &xp[n - 2 * r] * &yp[r] / &(&f[n - 2 * r] * &f[r] * &f[r]))
        .sum()
}

/// `L_n^(alpha)(x, y)` at rational `alpha`.
///
/// `Gamma(n+alpha+1) / (n! Gamma(s+alpha+1))` collapses to the rational
/// `(s+alpha+1)_(n-s) / n!`, so no gamma evaluation is needed.
pub fn exact_assoc_laguerre(
    n: u32,
    alpha: &Rational,
    x: &Rational,
    y: &Rational,
) -> Result<Rational> {
    if alpha.is_integer() && alpha.signum() < 0 {
        return Err(Error::GammaPole(alpha.to_f64()));
    }
    let f = factorials(n);
    let (xp, yp) = (powers(x, n), powers(y, n));
    let n = n as usize;
    let mut total = Rational::zero();
    // (s+alpha+1)_(n-s), built from s = n downwards
    let mut rising = Rational::one();
    for s in (0..=n).rev() {
        if s < n {
            rising = rising * (alpha.clone() + Rational::from_integer(s as i64 + 1));
        }
        let binomial = &f[n] / &(&f[s] * &f[n - s]);
        let term = binomial * &yp[n - s] * &xp[s] * &rising / &f[n];
        total = if s % 2 == 1 { total - term } else { total + term };
    }
    Ok(total)
}
