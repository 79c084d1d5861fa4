use proptest::prelude::*;

use umbral::asymptotics::{
    approx_assoc_laguerre, approx_hermite, approx_hermite_closed, approx_hybrid, approx_laguerre,
    approx_laguerre_j2, hermite_log_coefficients, laguerre_log_coefficients,
};
use umbral::bessel::{bessel_i, bessel_j, even_hermite_gf, hermite_bessel, tricomi};
use umbral::gamma::{factorial, gamma};
use umbral::oracle::{
    exact_assoc_laguerre, exact_hermite, exact_hybrid, exact_laguerre, highprec_series, Rational,
    SeriesId,
};
use umbral::polynomials::{assoc_laguerre, hermite2, hermite_m, hybrid_hl, laguerre2};
use umbral::scalar::Scalar;
use umbral::series::SeriesControl;
use umbral::umbral::{
    c_moment, eval_exp, eval_exp_with, eval_poly, h_moment, Exponent, MomentRule, UmbralMonomial,
    UmbralPolynomial,
};

fn ctl() -> SeriesControl {
    SeriesControl::default()
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

/// `|a - b| <= tol * max(|b|, scale)`, where `scale` is the same sum taken
/// with every term made positive. Equals a relative bound wherever the sum
/// does not cancel; where it does, no f64 evaluation can beat it.
fn close_mixed(a: f64, b: f64, scale: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(scale)
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

// ---- umbral core -------------------------------------------------------

proptest! {
    #[test]
    fn exponents_add_before_the_vacuum(a in 0i64..40, b in 0i64..40, d in 1i64..5) {
        let p = UmbralPolynomial::monomial(1.0, Exponent::ratio(a, d), 0).unwrap();
        let r = UmbralPolynomial::monomial(1.0, Exponent::ratio(b, d), 0).unwrap();
        let lhs = eval_poly(&(&p * &r), &MomentRule::Laguerre).unwrap();
        let rhs = c_moment((a + b) as f64 / d as f64).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn odd_h_moments_vanish(k in 0u32..60, y in -5.0f64..5.0) {
        prop_assert_eq!(h_moment(2 * k + 1, y), 0.0);
    }

    #[test]
    fn vacuum_is_linear(
        pc in prop::collection::vec((-3.0f64..3.0, 0u32..6, 0u32..6), 1..6),
        qc in prop::collection::vec((-3.0f64..3.0, 0u32..6, 0u32..6), 1..6),
        a in -2.0f64..2.0,
        b in -2.0f64..2.0,
        y in -1.0f64..1.0,
    ) {
        let build = |cs: &[(f64, u32, u32)]| {
            UmbralPolynomial::from_terms(cs.iter().map(|&(k, c, h)| {
                UmbralMonomial::new(k, Exponent::int(c.into()), h).unwrap()
            }))
        };
        let (p, r) = (build(&pc), build(&qc));
        let rule = MomentRule::Tensor { y };
        let combined = &p.scale(a) + &r.scale(b);
        let lhs = eval_poly(&combined, &rule).unwrap();
        let rhs = a * eval_poly(&p, &rule).unwrap() + b * eval_poly(&r, &rule).unwrap();
        let scale = 1.0 + lhs.abs().max(rhs.abs());
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale, "{} vs {}", lhs, rhs);
    }
}

#[test]
fn exp_of_linear_c_is_tricomi_zero() {
    for i in 0..=40 {
        let x = f64::from(i) * 0.1;
        let v = eval_exp(&UmbralPolynomial::c(-x, 1), &MomentRule::Laguerre, &ctl()).unwrap();
        let t = tricomi(0.0, x, &ctl()).unwrap();
        assert!(rel(v.value, t.value) <= 1e-12, "x={x}");
    }
}

// ---- polynomial families -----------------------------------------------

#[test]
fn hermite_scaling_relation_is_exact() {
    let points = [q(1, 3), q(-2, 5), q(3, 1), q(0, 1), q(7, 2)];
    for a in [q(-2, 1), q(-1, 1), q(1, 2), q(3, 1)] {
        for x in &points {
            for y in &points {
                for n in 0..=30u32 {
                    let lhs = a.powu(n) * hermite2(n, x, y);
                    let rhs = hermite2(n, &(a.clone() * x.clone()), &(a.clone() * a.clone() * y.clone()));
                    assert_eq!(lhs, rhs, "a={a} x={x} y={y} n={n}");
                }
            }
        }
    }
}

#[test]
fn two_variable_generating_function() {
    let ts = [-0.5, -0.25, 0.0, 0.3, 0.5];
    let xs = [-1.0, -0.4, 0.0, 0.7, 1.0];
    for &t in &ts {
        for &x in &xs {
            for &y in &xs {
                let mut sum = 0.0;
                let mut tn = 1.0;
                for n in 0..=40u32 {
                    sum += tn * hermite2(n, &x, &y) / factorial(n);
                    tn *= t;
                }
                let want = (x * t + y * t * t).exp();
                assert!((sum - want).abs() <= 1e-10, "t={t} x={x} y={y}");
            }
        }
    }
}

proptest! {
    #[test]
    fn m_variable_generating_function(
        xs in prop::collection::vec(-1.0f64..=1.0, 1..=4),
        t in -0.4f64..=0.4,
    ) {
        let mut sum = 0.0;
        let mut tn = 1.0;
        for n in 0..=40u32 {
            sum += tn * hermite_m(n, &xs).unwrap() / factorial(n);
            tn *= t;
        }
        let exponent: f64 = xs.iter().enumerate().map(|(s, x)| x * t.powi(s as i32 + 1)).sum();
        prop_assert!(rel(sum, exponent.exp()) <= 1e-9);
    }
}

/// `sum_n t^n H_2n(x, y) / n!` with `H_k / sqrt(k!)` carried by the
/// recurrence so that neither `H_2n` nor `n!` overflows.
fn even_gf_series(x: f64, y: f64, t: f64) -> f64 {
    let (mut v_prev, mut v) = (1.0f64, x); // v_k = H_k / sqrt(k!)
    let mut weight = 1.0; // t^n sqrt((2n)!) / n!
    let mut sum = 1.0;
    for n in 1..2000u32 {
        // advance v from index 2n-1 (or 1) to 2n
        for k in (2 * n - 2).max(1)..2 * n {
            let kf = f64::from(k);
            let next = (x * v + 2.0 * y * kf.sqrt() * v_prev) / (kf + 1.0).sqrt();
            v_prev = v;
            v = next;
        }
        let nf = f64::from(n);
        weight *= t * ((2.0 * nf - 1.0) * 2.0 * nf).sqrt() / nf;
        let term = weight * v;
        sum += term;
        if n > 10 && term.abs() <= 1e-13 {
            break;
        }
    }
    sum
}

#[test]
fn even_index_generating_function() {
    let mut checked = 0;
    for &t in &[-0.5, -0.2, 0.0, 0.25, 0.5] {
        for &y in &[-0.4, -0.1, 0.0, 0.2, 0.4] {
            for &x in &[-2.0, -0.5, 0.0, 1.0, 2.0] {
                let closed = even_hermite_gf(x, y, t).unwrap();
                let sum = even_gf_series(x, y, t);
                assert!((sum - closed).abs() <= 1e-9, "x={x} y={y} t={t}: {sum} vs {closed}");
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 125);
}

#[test]
fn closed_forms_match_umbral_definitions() {
    let grid = [0.1, 0.5, 1.0, 3.0];
    for &x in &grid {
        for &y in &grid {
            // binomial powers with a float-lattice exponent: (b + a X)^n
            for n in 0..=20u32 {
                let lag = (&UmbralPolynomial::constant(y) + &UmbralPolynomial::c(-x, 1)).pow(n);
                let v = eval_poly(&lag, &MomentRule::Laguerre).unwrap();
                let scale = laguerre2(n, &-x, &y);
                assert!(close_mixed(laguerre2(n, &x, &y), v, scale, 1e-12), "laguerre n={n} x={x} y={y}");

                let alpha = 0.5;
                let pre = UmbralPolynomial::monomial(1.0, Exponent::ratio(1, 2), 0).unwrap();
                let v = eval_poly(&(&pre * &lag), &MomentRule::Laguerre).unwrap()
                    * gamma(f64::from(n) + alpha + 1.0).unwrap()
                    / factorial(n);
                let got = assoc_laguerre(n, alpha, x, y).unwrap();
                let scale = assoc_laguerre(n, alpha, -x, y).unwrap();
                assert!(close_mixed(got, v, scale, 1e-12), "assoc n={n} x={x} y={y}");

                let herm = (&UmbralPolynomial::constant(x) + &UmbralPolynomial::h(1.0, 1)).pow(n);
                let v = eval_poly(&herm, &MomentRule::Hermite { y }).unwrap();
                assert!(rel(hermite2(n, &x, &y), v) <= 1e-12, "hermite n={n} x={x} y={y}");

                let sqrt_c_h = UmbralPolynomial::monomial(1.0, Exponent::ratio(1, 2), 1).unwrap();
                let hyb = (&UmbralPolynomial::constant(x) + &sqrt_c_h).pow(n);
                let v = eval_poly(&hyb, &MomentRule::Tensor { y }).unwrap();
                assert!(rel(hybrid_hl(n, &x, &y), v) <= 1e-12, "hybrid n={n} x={x} y={y}");
            }
        }
    }
}

#[test]
fn float_evaluators_agree_with_rational_oracles() {
    let mut grid = vec![q(0, 1)];
    for v in [q(1, 10), q(1, 3), q(1, 1), q(3, 1)] {
        grid.push(v.clone());
        grid.push(-v);
    }
    for x in &grid {
        for y in &grid {
            let (xf, yf) = (x.to_f64(), y.to_f64());
            for n in 0..=40u32 {
                let (ax, ay) = (xf.abs(), yf.abs());
                let pairs = [
                    (
                        "laguerre",
                        laguerre2(n, &xf, &yf),
                        exact_laguerre(n, x, y).to_f64(),
                        laguerre2(n, &-ax, &ay).abs(),
                    ),
                    (
                        "hermite",
                        hermite2(n, &xf, &yf),
                        exact_hermite(n, x, y).to_f64(),
                        hermite2(n, &ax, &ay),
                    ),
                    (
                        "hybrid",
                        hybrid_hl(n, &xf, &yf),
                        exact_hybrid(n, x, y).to_f64(),
                        hybrid_hl(n, &ax, &ay),
                    ),
                    (
                        "assoc",
                        assoc_laguerre(n, 2.0, xf, yf).unwrap(),
                        exact_assoc_laguerre(n, &q(2, 1), x, y).unwrap().to_f64(),
                        assoc_laguerre(n, 2.0, -ax, ay).unwrap().abs(),
                    ),
                ];
                for (name, fast, exact, scale) in pairs {
                    assert!(
                        close_mixed(fast, exact, scale, 1e-12),
                        "{name} n={n} x={x} y={y}: {fast} vs {exact}"
                    );
                }
            }
        }
    }
}

#[test]
fn alpha_zero_reduction_is_exact() {
    for n in 0..=25u32 {
        for (x, y) in [(q(1, 10), q(1, 1)), (q(-2, 3), q(5, 7)), (q(3, 1), q(-1, 3))] {
            assert_eq!(exact_assoc_laguerre(n, &Rational::zero(), &x, &y).unwrap(), exact_laguerre(n, &x, &y));
            let (xf, yf) = (x.to_f64(), y.to_f64());
            assert_eq!(assoc_laguerre(n, 0.0, xf, yf).unwrap(), laguerre2(n, &xf, &yf));
        }
    }
}

// ---- Bessel-type functions ----------------------------------------------

#[test]
fn tricomi_zero_is_j0_of_twice_the_root() {
    for i in 0..=90 {
        let x = f64::from(i) * 0.1;
        let c = tricomi(0.0, x, &ctl()).unwrap().value;
        let j = bessel_j(0, 2.0 * x.sqrt(), &ctl()).unwrap().value;
        assert!((c - j).abs() <= 1e-12 * j.abs().max(1e-3), "x={x}: {c} vs {j}");
    }
}

#[test]
fn single_argument_hermite_bessel_is_reflected_tricomi() {
    for nu in [0.0, 0.5, 1.0, 2.0] {
        for i in -30..=30 {
            let x = f64::from(i) * 0.1;
            let hb = hermite_bessel(nu, &[x], &ctl()).unwrap().value;
            let c = tricomi(nu, -x, &ctl()).unwrap().value;
            assert!((hb - c).abs() <= 1e-12 * c.abs().max(1.0), "nu={nu} x={x}");
        }
    }
}

#[test]
fn i0_at_least_one_and_j0_at_most_one() {
    for i in -300..=300 {
        let x = f64::from(i) * 0.1;
        assert!(bessel_i(0, x.clamp(-30.0, 30.0), &ctl()).unwrap().value >= 1.0);
        assert!(bessel_j(0, x, &ctl()).unwrap().value <= 1.0 + 1e-12);
    }
}

/// The f64 sum truncates after `terms_used` terms; the exactly summed
/// truncated series must lie within `tail_bound` of a certified reference.
#[test]
fn bessel_j_tail_bound_covers_truncation() {
    for n in [0u32, 1, 3] {
        for x in [q(1, 2), q(2, 1), q(7, 2), q(10, 1)] {
            let s = bessel_j(n, x.to_f64(), &ctl()).unwrap();
            let reference = highprec_series(&SeriesId::BesselJ { n, x: x.clone() }, 1e-25).unwrap();
            let half = x.clone() / q(2, 1);
            let mut term = (1..=n).fold(Rational::one(), |t, k| t * half.clone() / q(k.into(), 1));
            let mut partial = Rational::zero();
            for r in 0..s.terms_used as i64 {
                partial = partial + term.clone();
                term = -term * half.clone() * half.clone() / q((r + 1) * (i64::from(n) + r + 1), 1);
            }
            let truncation = (partial - reference.sum.clone()).abs().to_f64();
            assert!(
                truncation <= s.tail_bound + reference.tail_bound,
                "J_{n}({x}): truncation {truncation:e} > bound {:e}",
                s.tail_bound
            );
        }
    }
}

// ---- asymptotics ---------------------------------------------------------

#[test]
fn first_order_collapses() {
    for (n, x, y) in [(10, 0.1, 1.0), (5, 0.2, 1.0), (3, 1.0 / 3.0, 3.0), (20, 0.3, 2.0)] {
        let a = approx_laguerre(n, x, y, 1, &ctl()).unwrap().value;
        let want = y.powi(n as i32) * bessel_j(0, 2.0 * (f64::from(n) * x / y).sqrt(), &ctl()).unwrap().value;
        assert!(rel(a, want) <= 1e-12);
    }
    for (n, x, y) in [(70, 1.0, 3.0 / 4900.0), (10, 3.0, 0.03), (8, -1.5, 0.02), (6, 2.0, -0.01)] {
        let a = approx_hermite(n, x, y, 1, &ctl()).unwrap().value;
        let nf = f64::from(n);
        let want = x.powi(n as i32) * (nf * nf * y / (x * x)).exp();
        assert!(rel(a, want) <= 1e-12, "n={n} x={x} y={y}");

        if y > 0.0 {
            let h = approx_hybrid(n, x, y, 1, &ctl()).unwrap().value;
            let arg = 2.0 * (nf * nf * y).sqrt() / x.abs();
            let want = x.powi(n as i32) * bessel_i(0, arg, &ctl()).unwrap().value;
            assert!(rel(h, want) <= 1e-12, "hybrid n={n} x={x} y={y}");
        }
    }
}

#[test]
fn second_order_matches_explicit_sums() {
    for (n, x, y) in [(70u32, 1.0, 3.0 / 4900.0), (10, 3.0, 0.03), (12, 2.0, 0.05), (9, -1.2, 0.01)] {
        let nf = f64::from(n);
        let big_y = nf * nf * y;
        let a1 = 1.0 / x;
        let a2 = -1.0 / (2.0 * nf * x * x);
        // sum_r H_2r(a1, a2) Y^r / r!  and  / (r!)^2
        let mut herm = 0.0;
        let mut hyb = 0.0;
        for r in 0..60u32 {
            let h = hermite2(2 * r, &a1, &a2) * big_y.powi(r as i32) / factorial(r);
            herm += h;
            hyb += h / factorial(r);
        }
        let xn = x.powi(n as i32);
        let a = approx_hermite(n, x, y, 2, &ctl()).unwrap().value;
        assert!(rel(a, xn * herm) <= 1e-12, "hermite n={n}: {a} vs {}", xn * herm);
        let h = approx_hybrid(n, x, y, 2, &ctl()).unwrap().value;
        assert!(rel(h, xn * hyb) <= 1e-12, "hybrid n={n}");
        let closed = approx_hermite_closed(n, x, y).unwrap();
        assert!(rel(closed, a) <= 1e-12, "closed n={n}: {closed} vs {a}");
    }
}

fn single_symbol(coeffs: &[f64], c_step: (i64, i64), h_step: u32) -> UmbralPolynomial {
    UmbralPolynomial::from_terms(coeffs.iter().enumerate().map(|(i, &a)| {
        let s = i as i64 + 1;
        let c_exp = Exponent::ratio(s * c_step.0, c_step.1);
        UmbralMonomial::new(a, c_exp, h_step * s as u32).unwrap()
    }))
}

#[test]
fn asymptotic_engines_agree() {
    let lag_points: [(f64, f64); 4] = [(0.1, 1.0), (0.2, 1.0), (1.0 / 3.0, 3.0), (0.05, 2.0)];
    let herm_points: [(f64, f64); 4] = [(1.0, 0.01), (3.0, 0.002), (2.0, -0.005), (-1.5, 0.004)];
    for n in [3u32, 5, 10] {
        for m in 1..=4usize {
            for &(x, y) in &lag_points {
                let p = single_symbol(&laguerre_log_coefficients(n, x, y, m), (1, 1), 0);
                let yn = y.powi(n as i32);
                let generic = eval_exp(&p, &MomentRule::Laguerre, &ctl()).unwrap().value * yn;
                let fast = approx_laguerre(n, x, y, m, &ctl()).unwrap().value;
                assert!(rel(fast, generic) <= 1e-10, "laguerre n={n} m={m} x={x}");

                let alpha_c = UmbralPolynomial::monomial(1.0, Exponent::ratio(3, 2), 0).unwrap();
                let pre = gamma(f64::from(n) + 2.5).unwrap() / factorial(n) * yn;
                let generic = eval_exp_with(&alpha_c, &p, &MomentRule::Laguerre, &ctl()).unwrap().value * pre;
                let fast = approx_assoc_laguerre(n, 1.5, x, y, m, &ctl()).unwrap().value;
                assert!(rel(fast, generic) <= 1e-10, "assoc n={n} m={m} x={x}");
            }
            for &(x, y) in &herm_points {
                let nf = f64::from(n);
                let big_y = nf * nf * y;
                let xn = x.powi(n as i32);
                let coeffs = hermite_log_coefficients(n, x, m);

                let p = single_symbol(&coeffs, (0, 1), 1);
                let generic = eval_exp(&p, &MomentRule::Hermite { y: big_y }, &ctl()).unwrap().value * xn;
                let fast = approx_hermite(n, x, y, m, &ctl()).unwrap().value;
                assert!(rel(fast, generic) <= 1e-10, "hermite n={n} m={m} x={x} y={y}");

                let p = single_symbol(&coeffs, (1, 2), 1);
                let generic = eval_exp(&p, &MomentRule::Tensor { y: big_y }, &ctl()).unwrap().value * xn;
                let fast = approx_hybrid(n, x, y, m, &ctl()).unwrap().value;
                assert!(rel(fast, generic) <= 1e-10, "hybrid n={n} m={m} x={x} y={y}");
            }
        }
    }
}

#[test]
fn error_never_grows_with_order_on_table_points() {
    for (n, x, y) in [(10u32, q(1, 10), q(1, 1)), (5, q(1, 5), q(1, 1)), (3, q(1, 3), q(3, 1))] {
        let exact = exact_laguerre(n, &x, &y).to_f64();
        let errs: Vec<f64> = (1..=6)
            .map(|m| rel(approx_laguerre(n, x.to_f64(), y.to_f64(), m, &ctl()).unwrap().value, exact))
            .collect();
        for w in errs.windows(2) {
            assert!(w[1] <= w[0], "n={n}: {errs:?}");
        }
    }
}

#[test]
fn first_order_error_is_order_one_over_n() {
    let err = |n: u32| {
        let x = q(1, n.into());
        let exact = exact_laguerre(n, &x, &Rational::one()).to_f64();
        rel(approx_laguerre(n, x.to_f64(), 1.0, 1, &ctl()).unwrap().value, exact)
    };
    for n in [8u32, 16, 32] {
        let ratio = err(n) / err(2 * n);
        assert!((1.6..=2.4).contains(&ratio), "n={n}: ratio {ratio}");
    }
}

#[test]
fn j2_variant_stays_within_second_order_of_hc0() {
    for (n, x, y) in [(5u32, q(1, 5), q(1, 1)), (3, q(1, 3), q(3, 1))] {
        let exact = exact_laguerre(n, &x, &y).to_f64();
        let (xf, yf) = (x.to_f64(), y.to_f64());
        let j2 = approx_laguerre_j2(n, xf, yf, &ctl()).unwrap().value;
        let m2 = approx_laguerre(n, xf, yf, 2, &ctl()).unwrap().value;
        assert!((j2 - m2).abs() / exact.abs() <= 5.0 / f64::from(n * n));
    }
}

// ---- oracle ----------------------------------------------------------------

#[test]
fn certified_sums_cover_deeper_sums() {
    let ids = [
        SeriesId::BesselJ { n: 0, x: q(2, 1) },
        SeriesId::BesselJ { n: 2, x: q(7, 3) },
        SeriesId::BesselI { n: 0, x: q(1, 1) },
        SeriesId::BesselI { n: 1, x: q(5, 2) },
        SeriesId::Tricomi { alpha: 1, x: q(3, 4) },
        SeriesId::HermiteBessel { nu: 0, xs: vec![q(-1, 1), q(-1, 20)] },
    ];
    for id in &ids {
        let coarse = highprec_series(id, 1e-12).unwrap();
        let fine = highprec_series(id, 1e-25).unwrap();
        let gap = (coarse.sum.clone() - fine.sum.clone()).abs().to_f64();
        assert!(gap <= coarse.tail_bound + fine.tail_bound, "{id:?}: gap {gap:e} > {:e}", coarse.tail_bound);
        assert!(fine.tail_bound <= 1e-25 * fine.to_f64().abs());
    }
}
