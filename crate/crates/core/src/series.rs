//! Truncation policy for the infinite series used throughout the crate.

use crate::error::{domain, Error, Result};

/// When to stop summing an infinite series.
///
/// A sum stops after `consecutive_small` successive terms each satisfy
/// `|term| <= rel_tol * |partial sum|`. Requiring a run of small terms keeps
/// series whose odd terms vanish identically (every Hermite-vacuum series)
/// from stopping on the first zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub consecutive_small: usize,
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl { rel_tol: 1e-15, consecutive_small: 3, max_terms: 200 }
    }
}

impl SeriesControl {
    pub fn new(rel_tol: f64, consecutive_small: usize, max_terms: usize) -> Result<Self> {
        let ctl = SeriesControl { rel_tol, consecutive_small, max_terms };
        ctl.validate()?;
        Ok(ctl)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(domain(format!("rel_tol must be positive, got {}", self.rel_tol)));
        }
        if self.max_terms == 0 {
            return Err(domain("max_terms must be at least 1"));
        }
        Ok(())
    }
}

/// Result of summing a truncated series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub terms_used: usize,
    /// Magnitude of the first omitted term (zero for a series that ran out).
    pub tail_bound: f64,
}

impl SeriesValue {
    pub fn exact(value: f64) -> Self {
        SeriesValue { value, terms_used: 1, tail_bound: 0.0 }
    }

    /// Multiplies value and tail bound by a constant prefactor.
    pub fn scaled(self, factor: f64) -> Self {
        SeriesValue {
            value: self.value * factor,
            terms_used: self.terms_used,
            tail_bound: self.tail_bound * factor.abs(),
        }
    }
}

/// Sums `terms` under `ctl` with Neumaier compensation. One extra term is
/// drawn after the stop rule fires to report the tail bound.
pub fn sum_series<I>(terms: I, ctl: &SeriesControl) -> Result<SeriesValue>
where
    I: IntoIterator<Item = Result<f64>>,
{
    ctl.validate()?;
    let mut iter = terms.into_iter();
    let mut sum = Neumaier::default();
    let mut small_run = 0;
    let mut used = 0;
    while used < ctl.max_terms {
        let Some(term) = iter.next() else {
            return Ok(SeriesValue { value: sum.value(), terms_used: used, tail_bound: 0.0 });
        };
        let term = term?;
        if !term.is_finite() {
            return Err(Error::NoConvergence { max_terms: ctl.max_terms });
        }
        sum.add(term);
        used += 1;
        if term.abs() <= ctl.rel_tol * sum.value().abs() {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if small_run >= ctl.consecutive_small {
            let tail_bound = match iter.next() {
                Some(next) => next?.abs(),
                None => 0.0,
            };
            return Ok(SeriesValue { value: sum.value(), terms_used: used, tail_bound });
        }
    }
    Err(Error::NoConvergence { max_terms: ctl.max_terms })
}

#[derive(Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        self.comp += if self.sum.abs() >= v.abs() {
            (self.sum - t) + v
        } else {
            (v - t) + self.sum
        };
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}
