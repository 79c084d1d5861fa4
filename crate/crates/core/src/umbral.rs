//! Umbral polynomials in the symbols `c` and `h` and their evaluation
//! against the two vacua.
//!
//! * the c-vacuum sends `c^mu` to `1 / Gamma(mu + 1)`;
//! * the h-vacuum with parameter `y` sends `h^r` to
//!   `y^(r/2) r! / Gamma(r/2 + 1) |cos(r pi / 2)|`, which is `0` for odd `r`
//!   and `y^k (2k)! / k!` for `r = 2k`.
//!
//! Exponents add under multiplication *before* the vacuum acts, which is the
//! whole trick: `(y - c x)^n` is expanded as an ordinary binomial and only
//! then turned into numbers.
//!
//! ```
//! use umbral::umbral::{eval_poly, MomentRule, UmbralPolynomial};
//!
//! // L_2(1, 1) = (1 - c)^2 = 1 - 2/1! + 1/2!
//! let p = (UmbralPolynomial::constant(1.0) - UmbralPolynomial::c(1.0, 1)).pow(2);
//! assert_eq!(eval_poly(&p, &MomentRule::Laguerre).unwrap(), -0.5);
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;
use num_traits::{CheckedAdd, ToPrimitive, Zero};

use crate::error::{domain, Result};
use crate::gamma::recip_gamma;
use crate::series::{sum_series, SeriesControl, SeriesValue};

const EXPONENT_TOL: f64 = 1e-12;

/// Exponent of `c`. Kept as an exact fraction when possible (integers,
/// halves, `alpha + k` with rational `alpha`); arbitrary reals fall back to
/// floats and are merged with an absolute tolerance of `1e-12`.
#[derive(Debug, Clone, Copy)]
pub enum Exponent {
    Exact(Rational64),
    Real(f64),
}

impl Exponent {
    pub fn int(v: i64) -> Self {
        Exponent::Exact(Rational64::from_integer(v))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Exponent::Exact(Rational64::new(num, den))
    }

    /// Exact if `v` is a small dyadic fraction, otherwise a float exponent.
    pub fn from_f64(v: f64) -> Self {
        if v.fract() == 0.0 && v.abs() < 1e15 {
            return Exponent::int(v as i64);
        }
        for den in [2i64, 4, 8] {
            let scaled = v * den as f64;
            if scaled.fract() == 0.0 && scaled.abs() < 1e15 {
                return Exponent::ratio(scaled as i64, den);
            }
        }
        Exponent::Real(v)
    }

    pub fn value(&self) -> f64 {
        match self {
            Exponent::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Exponent::Real(v) => *v,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Exponent::Exact(r) => r.is_zero(),
            Exponent::Real(v) => *v == 0.0,
        }
    }

    fn same(&self, other: &Exponent) -> bool {
        match (self, other) {
            (Exponent::Exact(a), Exponent::Exact(b)) => a == b,
            _ => (self.value() - other.value()).abs() <= EXPONENT_TOL,
        }
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Exponent) -> Exponent {
        match (self, rhs) {
            (Exponent::Exact(a), Exponent::Exact(b)) => a
                .checked_add(&b)
                .map(Exponent::Exact)
                .unwrap_or_else(|| Exponent::Real(self.value() + rhs.value())),
            _ => Exponent::Real(self.value() + rhs.value()),
        }
    }
}

impl PartialEq for Exponent {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl From<i64> for Exponent {
    fn from(v: i64) -> Self {
        Exponent::int(v)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Exact(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Exponent::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Exponent::Real(v) => write!(f, "{v}"),
        }
    }
}

/// `coefficient * c^c_exp * h^h_exp`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UmbralMonomial {
    pub coefficient: f64,
    pub c_exp: Exponent,
    pub h_exp: u32,
}

impl UmbralMonomial {
    pub fn new(coefficient: f64, c_exp: Exponent, h_exp: u32) -> Result<Self> {
        if c_exp.value() < 0.0 || c_exp.value().is_nan() {
            return Err(domain(format!("c exponent must be >= 0, got {c_exp}")));
        }
        Ok(UmbralMonomial { coefficient, c_exp, h_exp })
    }

    /// Additive grade `c_exp + h_exp` used to order exponential series.
    pub fn grade(&self) -> f64 {
        self.c_exp.value() + f64::from(self.h_exp)
    }
}

impl Mul for UmbralMonomial {
    type Output = UmbralMonomial;
    fn mul(self, rhs: UmbralMonomial) -> UmbralMonomial {
        UmbralMonomial {
            coefficient: self.coefficient * rhs.coefficient,
            c_exp: self.c_exp + rhs.c_exp,
            h_exp: self.h_exp + rhs.h_exp,
        }
    }
}

/// Finite sum of [`UmbralMonomial`]s in canonical form: sorted, no repeated
/// exponent pair, no zero coefficients.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct UmbralPolynomial {
    terms: Vec<UmbralMonomial>,
}

impl UmbralPolynomial {
    pub fn zero() -> Self {
        UmbralPolynomial { terms: Vec::new() }
    }

    pub fn constant(a: f64) -> Self {
        Self::from_terms([UmbralMonomial { coefficient: a, c_exp: Exponent::int(0), h_exp: 0 }])
    }

    /// `a * c^k` for an integer power `k`.
    pub fn c(a: f64, k: u32) -> Self {
        Self::from_terms([UmbralMonomial { coefficient: a, c_exp: Exponent::int(k.into()), h_exp: 0 }])
    }

    /// `a * h^k`.
    pub fn h(a: f64, k: u32) -> Self {
        Self::from_terms([UmbralMonomial { coefficient: a, c_exp: Exponent::int(0), h_exp: k }])
    }

    /// `a * c^c_exp * h^h_exp`; fails on a negative `c` exponent.
    pub fn monomial(a: f64, c_exp: Exponent, h_exp: u32) -> Result<Self> {
        Ok(Self::from_terms([UmbralMonomial::new(a, c_exp, h_exp)?]))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = UmbralMonomial>) -> Self {
        let mut terms: Vec<UmbralMonomial> = terms.into_iter().collect();
        terms.sort_by(|a, b| {
            a.h_exp
                .cmp(&b.h_exp)
                .then(a.c_exp.value().total_cmp(&b.c_exp.value()))
        });
        let mut merged: Vec<UmbralMonomial> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if last.h_exp == t.h_exp && last.c_exp.same(&t.c_exp) => {
                    last.coefficient += t.coefficient;
                }
                _ => merged.push(t),
            }
        }
        merged.retain(|t| t.coefficient != 0.0);
        UmbralPolynomial { terms: merged }
    }

    pub fn terms(&self) -> &[UmbralMonomial] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `c^0 h^0`.
    pub fn constant_term(&self) -> f64 {
        self.terms
            .iter()
            .find(|t| t.h_exp == 0 && t.c_exp.is_zero())
            .map_or(0.0, |t| t.coefficient)
    }

    pub fn scale(&self, a: f64) -> Self {
        Self::from_terms(self.terms.iter().map(|t| UmbralMonomial { coefficient: t.coefficient * a, ..*t }))
    }

    /// Divides every coefficient by `d` (one rounding, unlike `scale(1/d)`).
    pub fn div_scalar(&self, d: f64) -> Self {
        Self::from_terms(self.terms.iter().map(|t| UmbralMonomial { coefficient: t.coefficient / d, ..*t }))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(1.0), |acc, _| &acc * self)
    }
}

impl Add for &UmbralPolynomial {
    type Output = UmbralPolynomial;
    fn add(self, rhs: &UmbralPolynomial) -> UmbralPolynomial {
        UmbralPolynomial::from_terms(self.terms.iter().chain(rhs.terms.iter()).copied())
    }
}

impl Sub for &UmbralPolynomial {
    type Output = UmbralPolynomial;
    fn sub(self, rhs: &UmbralPolynomial) -> UmbralPolynomial {
        self + &rhs.scale(-1.0)
    }
}

impl Mul for &UmbralPolynomial {
    type Output = UmbralPolynomial;
    fn mul(self, rhs: &UmbralPolynomial) -> UmbralPolynomial {
        UmbralPolynomial::from_terms(
            self.terms.iter().flat_map(|a| rhs.terms.iter().map(move |b| *a * *b)),
        )
    }
}

impl Neg for &UmbralPolynomial {
    type Output = UmbralPolynomial;
    fn neg(self) -> UmbralPolynomial {
        self.scale(-1.0)
    }
}

macro_rules! owned_binop {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait for UmbralPolynomial {
            type Output = UmbralPolynomial;
            fn $method(self, rhs: UmbralPolynomial) -> UmbralPolynomial {
                $trait::$method(&self, &rhs)
            }
        }
    )*};
}

owned_binop!(Add add, Sub sub, Mul mul);

impl Neg for UmbralPolynomial {
    type Output = UmbralPolynomial;
    fn neg(self) -> UmbralPolynomial {
        self.scale(-1.0)
    }
}

impl fmt::Display for UmbralPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", t.coefficient)?;
            if !t.c_exp.is_zero() {
                write!(f, "*c^{}", t.c_exp)?;
            }
            if t.h_exp > 0 {
                write!(f, "*h^{}", t.h_exp)?;
            }
        }
        Ok(())
    }
}

/// Which vacuum the symbols are evaluated against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MomentRule {
    /// c-vacuum only; any `h` power is an error.
    Laguerre,
    /// h-vacuum with parameter `y`; any `c` power is an error.
    Hermite { y: f64 },
    /// Both vacua, acting separately on their own symbol.
    Tensor { y: f64 },
}

/// `c^mu -> 1 / Gamma(mu + 1)`.
pub fn c_moment(mu: f64) -> Result<f64> {
    recip_gamma(mu + 1.0)
}

/// `h_y^r -> y^(r/2) r! / Gamma(r/2 + 1) |cos(r pi/2)|`: zero for odd `r`,
/// `y^k (2k)!/k!` for `r = 2k`.
pub fn h_moment(r: u32, y: f64) -> f64 {
    if r % 2 == 1 {
        return 0.0;
    }
    let k = r / 2;
    // (2k)!/k! = (k+1)(k+2)...(2k)
    let ratio = (k + 1..=r).fold(1.0, |acc, j| acc * f64::from(j));
    ratio * y.powi(k as i32)
}

fn monomial_moment(t: &UmbralMonomial, rule: &MomentRule) -> Result<f64> {
    let (c_part, h_part) = match *rule {
        MomentRule::Laguerre => {
            if t.h_exp != 0 {
                return Err(domain("h power under the c-vacuum"));
            }
            (c_moment(t.c_exp.value())?, 1.0)
        }
        MomentRule::Hermite { y } => {
            if !t.c_exp.is_zero() {
                return Err(domain("c power under the h-vacuum"));
            }
            (1.0, h_moment(t.h_exp, y))
        }
        MomentRule::Tensor { y } => (c_moment(t.c_exp.value())?, h_moment(t.h_exp, y)),
    };
    Ok(t.coefficient * c_part * h_part)
}

/// Linear extension of the vacuum to a polynomial.
pub fn eval_poly(p: &UmbralPolynomial, rule: &MomentRule) -> Result<f64> {
    p.terms.iter().map(|t| monomial_moment(t, rule)).sum()
}

/// `exp(p)` against the vacuum; see [`eval_exp_with`].
pub fn eval_exp(p: &UmbralPolynomial, rule: &MomentRule, ctl: &SeriesControl) -> Result<SeriesValue> {
    eval_exp_with(&UmbralPolynomial::constant(1.0), p, rule, ctl)
}

/// `prefactor * exp(p)` against the vacuum.
///
/// `exp(p)` is expanded by grade (`c_exp + h_exp`, additive under
/// multiplication) rather than by powers of `p`. Writing `p = sum_j p_j`
/// with `p_j` homogeneous of grade `g_j`, the grade-`d` part of `exp(p)`
/// satisfies `d E_d = sum_j g_j p_j E_{d - g_j}` (apply the grading
/// derivation to `E' = p' E`). When `p` is a polynomial in one symbol this
/// is exactly the m-variable Hermite expansion
/// `exp(sum_s a_s X^s) = sum_r H_r^(m)(a) X^r / r!`.
///
/// Each `E_d` contributes one series term; the sum is truncated by `ctl`.
/// Under an h-vacuum, components made only of odd `h` powers are skipped.
/// `p` must have no constant term.
pub fn eval_exp_with(
    prefactor: &UmbralPolynomial,
    p: &UmbralPolynomial,
    rule: &MomentRule,
    ctl: &SeriesControl,
) -> Result<SeriesValue> {
    ctl.validate()?;
    if p.constant_term() != 0.0 {
        return Err(domain("exponent has a constant term; factor it out first"));
    }
    // homogeneous components of p by grade
    let mut parts: Vec<(f64, UmbralPolynomial)> = Vec::new();
    for t in p.terms() {
        let g = t.grade();
        match parts.iter_mut().find(|(pg, _)| (pg - g).abs() <= EXPONENT_TOL) {
            Some((_, poly)) => *poly = &*poly + &UmbralPolynomial::from_terms([*t]),
            None => parts.push((g, UmbralPolynomial::from_terms([*t]))),
        }
    }
    let mut engine = GradedExp { parts, done: Vec::new(), pending: BTreeMap::new() };
    engine.pending.insert(GradeKey::new(0.0), 0.0);
    let h_vacuum = !matches!(rule, MomentRule::Laguerre);
    let terms = std::iter::from_fn(|| loop {
        let e = prefactor * &engine.next_component()?;
        // odd h powers vanish by parity; they are not terms of the series
        // and must not feed the stop rule
        if h_vacuum && !e.is_zero() && e.terms().iter().all(|t| t.h_exp % 2 == 1) {
            continue;
        }
        return Some(eval_poly(&e, rule));
    });
    sum_series(terms, ctl)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct GradeKey(i64);

impl GradeKey {
    // grades are compared on a 1e-9 lattice
    fn new(g: f64) -> Self {
        GradeKey((g * 1e9).round() as i64)
    }
}

struct GradedExp {
    parts: Vec<(f64, UmbralPolynomial)>,
    done: Vec<(GradeKey, UmbralPolynomial)>,
    pending: BTreeMap<GradeKey, f64>,
}

impl GradedExp {
    fn lookup(&self, key: GradeKey) -> Option<&UmbralPolynomial> {
        self.done
            .binary_search_by(|(k, _)| k.cmp(&key))
            .ok()
            .map(|i| &self.done[i].1)
    }

    fn next_component(&mut self) -> Option<UmbralPolynomial> {
        let (key, grade) = self.pending.pop_first()?;
        let component = if self.done.is_empty() {
            UmbralPolynomial::constant(1.0)
        } else {
            let mut acc = UmbralPolynomial::zero();
            for (g, part) in &self.parts {
                if let Some(prev) = self.lookup(GradeKey::new(grade - g)) {
                    acc = &acc + &(part * prev).scale(*g);
                }
            }
            acc.div_scalar(grade)
        };
        for (g, _) in &self.parts {
            let next = grade + g;
            self.pending.entry(GradeKey::new(next)).or_insert(next);
        }
        self.done.push((key, component.clone()));
        Some(component)
    }
}
