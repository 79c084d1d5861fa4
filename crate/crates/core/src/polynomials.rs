//! Float (or exact, via [`Scalar`]) evaluators for the polynomial families.
//!
//! Three-term recurrences are used wherever one exists; the factorial sums
//! live in [`crate::oracle`] and serve as the cross-check.

use crate::error::{domain, Error, Result};
use crate::scalar::Scalar;

/// The polynomial families with their non-degree parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolyFamily {
    /// Two-variable Hermite `H_n(x, y)`.
    Hermite2,
    /// m-variable Hermite `H_n^(m)(x_1, ..., x_m)`.
    HermiteM { m: usize },
    /// Two-variable Laguerre `L_n(x, y)`.
    Laguerre2,
    /// Associated Laguerre `L_n^(alpha)(x, y)`.
    AssocLaguerre { alpha: f64 },
    /// Hybrid Laguerre-Hermite `HL_n(x, y)`.
    HybridHL,
}

impl PolyFamily {
    pub fn name(&self) -> &'static str {
        match self {
            PolyFamily::Hermite2 => "hermite2",
            PolyFamily::HermiteM { .. } => "hermitem",
            PolyFamily::Laguerre2 => "laguerre2",
            PolyFamily::AssocLaguerre { .. } => "assoclaguerre",
            PolyFamily::HybridHL => "hybrid",
        }
    }
}

/// `H_n(x, y)` by `H_{k+1} = x H_k + 2 y k H_{k-1}`, `H_0 = 1`, `H_1 = x`.
pub fn hermite2<T: Scalar>(n: u32, x: &T, y: &T) -> T {
    let mut prev = T::one();
    if n == 0 {
        return prev;
    }
    let mut cur = x.clone();
    let two_y = y.clone() + y.clone();
    for k in 1..n {
        let next = x.clone() * cur.clone() + two_y.clone() * T::from_i64(k as i64) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Normalized m-variable Hermite coefficients `H_k^(m)(xs) / k!` for
/// `k = 0..count`, i.e. the Taylor coefficients of `exp(sum_s x_s t^s)`.
///
/// Built level by level from `H_k^(1)(x_1) = x_1^k`, each level adding one
/// variable:
/// `h_k^(j) = sum_r (x_j^r / r!) h_{k - j r}^(j-1)`.
pub fn hermite_m_normalized<T: Scalar>(count: usize, xs: &[T]) -> Vec<T> {
    if count == 0 {
        return Vec::new();
    }
    let Some(first) = xs.first() else {
        let mut out = vec![T::zero(); count];
        out[0] = T::one();
        return out;
    };
    let mut level = Vec::with_capacity(count);
    level.push(T::one());
    for k in 1..count {
        let next = level[k - 1].clone() * first.clone() / T::from_i64(k as i64);
        level.push(next);
    }
    for (j, xj) in xs.iter().enumerate().skip(1) {
        let step = j + 1;
        // x_j^r / r!
        let mut weights = vec![T::one()];
        for r in 1..=(count - 1) / step {
            let w = weights[r - 1].clone() * xj.clone() / T::from_i64(r as i64);
            weights.push(w);
        }
        let next: Vec<T> = (0..count)
            .map(|k| {
                let mut acc = T::zero();
                for (r, w) in weights.iter().enumerate().take(k / step + 1) {
                    acc = acc + w.clone() * level[k - step * r].clone();
                }
                acc
            })
            .collect();
        level = next;
    }
    level
}

/// `H_n^(m)(x_1, ..., x_m)` with `m = xs.len() >= 1`.
pub fn hermite_m<T: Scalar>(n: u32, xs: &[T]) -> Result<T> {
    if xs.is_empty() {
        return Err(domain("m-variable Hermite needs m >= 1 arguments"));
    }
    let h = hermite_m_normalized(n as usize + 1, xs);
    let fact = (2..=n as i64).fold(T::one(), |acc, k| acc * T::from_i64(k));
    Ok(h[n as usize].clone() * fact)
}

fn laguerre_recurrence<T: Scalar>(n: u32, alpha: &T, x: &T, y: &T) -> T {
    let mut prev = T::one();
    if n == 0 {
        return prev;
    }
    let mut cur = (alpha.clone() + T::one()) * y.clone() - x.clone();
    let y_sq = y.clone() * y.clone();
    for k in 1..n {
        let kk = T::from_i64(k as i64);
        let lead = (kk.clone() + kk.clone() + alpha.clone() + T::one()) * y.clone() - x.clone();
        let next = (lead * cur.clone() - (kk.clone() + alpha.clone()) * y_sq.clone() * prev)
            / (kk + T::one());
        prev = cur;
        cur = next;
    }
    cur
}

/// `L_n(x, y) = (y - c x)^n` under the c-vacuum, by the recurrence
/// `(k+1) L_{k+1} = ((2k+1) y - x) L_k - k y^2 L_{k-1}`.
pub fn laguerre2<T: Scalar>(n: u32, x: &T, y: &T) -> T {
    laguerre_recurrence(n, &T::zero(), x, y)
}

/// `L_n^(alpha)(x, y)`; the alpha = 0 case is bitwise [`laguerre2`].
pub fn assoc_laguerre(n: u32, alpha: f64, x: f64, y: f64) -> Result<f64> {
    if alpha <= -1.0 && alpha.fract() == 0.0 {
        return Err(Error::GammaPole(alpha));
    }
    Ok(laguerre_recurrence(n, &alpha, &x, &y))
}

/// `HL_n(x, y) = n! sum_r x^(n-2r) y^r / ((n-2r)! (r!)^2)`.
///
/// The squared `r!` comes from evaluating `H_n(x, c y)` against the
/// c-vacuum: each `y^r` picks up an extra `1/r!`.
pub fn hybrid_hl<T: Scalar>(n: u32, x: &T, y: &T) -> T {
    let x_pows = x.powers(n);
    let mut coeff = T::one();
    let mut y_pow = T::one();
    let mut total = T::zero();
    for r in 0..=n / 2 {
        total = total + coeff.clone() * x_pows[(n - 2 * r) as usize].clone() * y_pow.clone();
        let a = (n - 2 * r) as i64;
        let b = (r + 1) as i64;
        coeff = coeff * T::from_i64(a * (a - 1)) / T::from_i64(b * b);
        y_pow = y_pow * y.clone();
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{exact_hermite, Rational};

    #[test]
    fn hermite2_small_values() {
        assert_eq!(hermite2(0, &3.0, &-2.0), 1.0);
        assert_eq!(hermite2(3, &2.0, &1.0), 20.0);
        assert_eq!(hermite2(4, &2.0, &1.0), 76.0);
    }

    #[test]
    fn hermite_m_small_values() {
        assert_eq!(hermite_m(5, &[2.0]).unwrap(), 32.0);
        assert!((hermite_m(3, &[1.0, 1.0, 1.0]).unwrap() - 13.0).abs() < 1e-12);
        assert!((hermite_m(4, &[2.0, 1.0]).unwrap() - 76.0).abs() < 1e-12);
        assert!(hermite_m::<f64>(3, &[]).is_err());
    }

    #[test]
    fn hermite_m_brute_force_multinomial() {
        // H_n^(3)(a,b,c) = n! sum over i + 2j + 3k = n of a^i b^j c^k / (i! j! k!)
        let (a, b, c) = (Rational::new(1, 2), Rational::new(-2, 3), Rational::new(3, 5));
        for n in 0..12u32 {
            let mut want = Rational::zero();
            let fact = |k: u32| (1..=k as i64).fold(Rational::one(), |acc, v| acc * Rational::from_integer(v));
            for k in 0..=n / 3 {
                for j in 0..=(n - 3 * k) / 2 {
                    let i = n - 3 * k - 2 * j;
                    want = want
                        + fact(n) * a.powu(i) * b.powu(j) * c.powu(k)
                            / (fact(i) * fact(j) * fact(k));
                }
            }
            let got = hermite_m(n, &[a.clone(), b.clone(), c.clone()]).unwrap();
            assert_eq!(got, want, "n = {n}");
        }
    }

    #[test]
    fn hermite_m_two_variables_is_hermite2_exactly() {
        let x = Rational::new(-3, 7);
        let y = Rational::new(5, 2);
        for n in 0..=30 {
            let m2 = hermite_m(n, &[x.clone(), y.clone()]).unwrap();
            assert_eq!(m2, hermite2(n, &x, &y), "n = {n}");
        }
    }

    #[test]
    fn recurrence_equals_defining_sum_exactly() {
        let grid = [Rational::new(1, 3), Rational::new(-2, 5), Rational::from_integer(3)];
        for x in &grid {
            for y in &grid {
                for n in 0..=25 {
                    assert_eq!(hermite2(n, x, y), exact_hermite(n, x, y));
                }
            }
        }
    }

    #[test]
    fn laguerre2_values() {
        assert_eq!(laguerre2(7, &0.0, &2.0), 128.0);
        assert!((laguerre2(10, &0.1, &1.0) - 0.205_854_3).abs() < 5e-8);
        assert!((laguerre2(5, &0.2, &1.0) - 0.186_997_3).abs() < 5e-8);
        assert!((laguerre2(3, &(1.0 / 3.0), &3.0) - 18.493_827_2).abs() < 5e-8);
    }

    #[test]
    fn assoc_laguerre_values() {
        assert_eq!(assoc_laguerre(1, 2.0, 1.0, 1.0).unwrap(), 2.0);
        assert!((assoc_laguerre(2, 1.0, 1.0, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(
            assoc_laguerre(10, 0.0, 0.1, 1.0).unwrap(),
            laguerre2(10, &0.1, &1.0)
        );
        assert_eq!(assoc_laguerre(3, -2.0, 1.0, 1.0), Err(Error::GammaPole(-2.0)));
        assert!(assoc_laguerre(3, -1.5, 1.0, 1.0).is_ok());
    }

    #[test]
    fn hybrid_values() {
        assert_eq!(hybrid_hl(0, &5.0, &7.0), 1.0);
        assert_eq!(hybrid_hl(1, &5.0, &7.0), 5.0);
        assert_eq!(hybrid_hl(2, &1.0, &1.0), 3.0);
        assert_eq!(hybrid_hl(4, &1.0, &1.0), 19.0);
    }
}
