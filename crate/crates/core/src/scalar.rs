//! Arithmetic shared by the float evaluators and the exact oracle.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::oracle::Rational;

/// A field the polynomial evaluators can run over: `f64` for speed,
/// [`Rational`] for exact ground truth.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    fn zero() -> Self {
        Self::from_i64(0)
    }

    fn one() -> Self {
        Self::from_i64(1)
    }

    fn powu(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    /// `[1, v, v^2, ..., v^n]`
    fn powers(&self, n: u32) -> Vec<Self> {
        let mut out = Vec::with_capacity(n as usize + 1);
        out.push(Self::one());
        for k in 0..n as usize {
            out.push(out[k].clone() * self.clone());
        }
        out
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn powu(&self, exp: u32) -> Self {
        self.powi(exp as i32)
    }
}

impl Scalar for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v)
    }
}
