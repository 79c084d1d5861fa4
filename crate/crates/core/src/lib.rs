//! Umbral evaluation of two-variable Laguerre, Hermite and hybrid
//! Laguerre-Hermite polynomials, their Bessel-type generating functions, and
//! order-`m` large-index approximations.
//!
//! ```
//! use umbral::asymptotics::approx_laguerre;
//! use umbral::polynomials::laguerre2;
//! use umbral::series::SeriesControl;
//!
//! let exact = laguerre2(10, &0.1, &1.0);
//! let approx = approx_laguerre(10, 0.1, 1.0, 4, &SeriesControl::default()).unwrap();
//! assert!((approx.value - exact).abs() / exact < 1e-6);
//! ```

#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod bessel;
mod error;
pub mod gamma;
pub mod oracle;
pub mod polynomials;
pub mod scalar;
pub mod series;
pub mod umbral;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/umbral.md")]
    mod umbral {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/bessel.md")]
    mod bessel {}
    #[doc = include_str!("../../../book/src/asymptotics.md")]
    mod asymptotics {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
