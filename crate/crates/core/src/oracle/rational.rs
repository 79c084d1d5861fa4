use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact fraction. Stays in machine words while numerator and denominator
/// fit an `i64` and escalates to big integers on overflow. Always reduced,
/// denominator always positive, and demoted back to machine words whenever
/// the reduced value fits again, so the representation is unique.
#[derive(Clone)]
pub struct Rational(Repr);

#[derive(Clone)]
enum Repr {
    Small(i64, i64),
    Big(BigRational),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("empty number")]
    Empty,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("invalid number `{0}`")]
    Invalid(String),
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    /// `num / den`; panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_integer(v: i64) -> Self {
        Rational(Repr::Small(v, 1))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let g = gcd_i128(num, den);
        let (mut n, mut d) = if g > 1 { (num / g, den / g) } else { (num, den) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational arithmetic keeps values reduced with a positive denominator
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(r)),
        }
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::from_big(BigRational::new(num, den))
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
    }

    /// Exact value of a finite float (every finite `f64` is a dyadic rational).
    pub fn from_f64(v: f64) -> Option<Self> {
        BigRational::from_float(v).map(Self::from_big)
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    /// True while the value is held in machine words.
    pub fn is_small(&self) -> bool {
        matches!(self.0, Repr::Small(..))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_integer(&self) -> bool {
        matches!(self.0, Repr::Small(_, 1))
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(r) => match r.numer().sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            },
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Self {
        Rational::one() / self.clone()
    }

    /// Nearest float (correctly rounded for machine-word values up to one
    /// extra rounding of the quotient).
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(n, d) => *n as f64 / *d as f64,
            Repr::Big(r) => big_to_f64(r),
        }
    }

    /// Decimal expansion truncated toward zero after `digits` fractional
    /// digits, e.g. `0.22389077914123566805`.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10), digits);
        let scaled = (self.numer().abs() * scale) / self.denom();
        let mut s = scaled.to_string();
        if s.len() <= digits {
            s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
        }
        let split = s.len() - digits;
        let (int_part, frac_part) = s.split_at(split);
        let sign = if self.signum() < 0 { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }
}

fn big_to_f64(r: &BigRational) -> f64 {
    // scale into a 64-bit window so the quotient keeps full precision
    let n = r.numer();
    let d = r.denom();
    let shift = n.bits() as i64 - d.bits() as i64 - 64;
    let q = if shift >= 0 {
        n / (d << shift as usize)
    } else {
        (n << (-shift) as usize) / d
    };
    let mantissa = q.to_f64().unwrap_or(f64::NAN);
    let exp = shift.clamp(i32::MIN as i64, i32::MAX as i64) as i32;
    // multiply in two steps so intermediate powers of two do not overflow
    let half = exp / 2;
    mantissa * 2f64.powi(half) * 2f64.powi(exp - half)
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_integer(v)
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts integers (`-3`), fractions (`1/3`, `-2/7`) and plain or
    /// scientific decimals (`0.25`, `1e-3`), all converted exactly.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        if let Some((num, den)) = s.split_once('/') {
            let num = parse_decimal(num.trim()).ok_or_else(|| ParseRationalError::Invalid(s.into()))?;
            let den = parse_decimal(den.trim()).ok_or_else(|| ParseRationalError::Invalid(s.into()))?;
            if den.is_zero() {
                return Err(ParseRationalError::ZeroDenominator);
            }
            return Ok(num / den);
        }
        parse_decimal(s).ok_or_else(|| ParseRationalError::Invalid(s.into()))
    }
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exponent as i64 - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let (num, den) = if scale >= 0 {
        (all * num_traits::pow(ten, scale as usize), BigInt::one())
    } else {
        (all, num_traits::pow(ten, (-scale) as usize))
    };
    let r = Rational::from_bigints(num, den);
    Some(if negative { -r } else { r })
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(n) => Rational(Repr::Small(n, d)),
                None => Rational::from_i128(-(n as i128), d as i128),
            },
            Repr::Big(r) => Rational::from_big(-r),
        }
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Rational::from_i128(a + c, b)
                } else {
                    Rational::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Rational::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        self + (-rhs)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                Rational::from_i128(*a as i128 * *d as i128, *b as i128 * *c as i128)
            }
            _ => Rational::from_big(self.to_big() / rhs.to_big()),
        }
    }
}

macro_rules! ref_binop {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                $trait::$method(self.clone(), rhs.clone())
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                $trait::$method(self, rhs.clone())
            }
        }
    )*};
}

ref_binop!(Add add, Sub sub, Mul mul, Div div);

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduces_and_normalizes_sign() {
        let r = Rational::new(6, -8);
        assert_eq!(r, Rational::new(-3, 4));
        assert_eq!(r.to_string(), "-3/4");
        assert_eq!(Rational::new(0, -5), Rational::zero());
    }

    #[test]
    fn escalates_on_overflow_and_demotes_back() {
        let big = Rational::from_integer(i64::MAX) * Rational::from_integer(4);
        assert!(!big.is_small());
        let back = big / Rational::from_integer(4);
        assert!(back.is_small());
        assert_eq!(back, Rational::from_integer(i64::MAX));
        let min = -Rational::from_integer(i64::MIN);
        assert!(!min.is_small());
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!("1/3".parse::<Rational>().unwrap(), Rational::new(1, 3));
        assert_eq!("-2/6".parse::<Rational>().unwrap(), Rational::new(-1, 3));
        assert_eq!("0.25".parse::<Rational>().unwrap(), Rational::new(1, 4));
        assert_eq!("1e-3".parse::<Rational>().unwrap(), Rational::new(1, 1000));
        assert_eq!("3/4900".parse::<Rational>().unwrap(), Rational::new(3, 4900));
        assert_eq!(".5".parse::<Rational>().unwrap(), Rational::new(1, 2));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
    }

    #[test]
    fn float_conversion_both_ways() {
        assert_eq!(Rational::from_f64(0.5).unwrap(), Rational::new(1, 2));
        assert_eq!(Rational::new(1, 3).to_f64(), 1.0 / 3.0);
        let f = 0.1_f64;
        assert_eq!(Rational::from_f64(f).unwrap().to_f64(), f);
        let huge = Rational::from_integer(3).recip() * Rational::from_bigints(num_traits::pow(BigInt::from(10), 40), BigInt::one());
        assert!((huge.to_f64() / (1e40 / 3.0) - 1.0).abs() < 1e-15);
        let tiny = huge.recip();
        assert!((tiny.to_f64() / (3e-40) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn decimal_expansion() {
        assert_eq!(Rational::new(1, 3).to_decimal_string(5), "0.33333");
        assert_eq!(Rational::new(-7, 4).to_decimal_string(3), "-1.750");
        assert_eq!(Rational::new(1, 200).to_decimal_string(2), "0.00");
        assert_eq!(Rational::from_integer(12).to_decimal_string(0), "12");
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| Rational::new(n, d))
    }

    proptest! {
        #[test]
        fn add_then_subtract_round_trips(a in rational(), b in rational()) {
            prop_assert_eq!((a.clone() + b.clone()) - b, a);
        }

        #[test]
        fn multiply_then_divide_round_trips(a in rational(), b in rational()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((a.clone() * b.clone()) / b, a);
        }

        #[test]
        fn ordering_agrees_with_floats(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let x = Rational::new(a, b);
            let y = Rational::new(c, d);
            let fx = a as f64 / b as f64;
            let fy = c as f64 / d as f64;
            if fx < fy - 1e-9 { prop_assert!(x < y); }
            if fx > fy + 1e-9 { prop_assert!(x > y); }
        }
    }
}
