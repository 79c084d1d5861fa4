//! `eval`, `approx` and `sweep`.

use umbral::asymptotics::{make_report, make_report_float, ApproxReport, Method};
use umbral::bessel::{bessel_i, bessel_j, hermite_bessel, tricomi};
use umbral::oracle::{
    exact_assoc_laguerre, exact_hermite, exact_hybrid, exact_laguerre, highprec_series, Rational,
    SeriesId,
};
use umbral::polynomials::{assoc_laguerre, hermite2, hermite_m, hybrid_hl, laguerre2, PolyFamily};
use umbral::series::SeriesControl;

use crate::error::{usage, CliResult};
use crate::number::{format_err, format_full, format_sig, NumArg};
use crate::report::{Cell, Report};

/// Target relative accuracy of certified sums on the exact route.
const CERTIFIED_TARGET: f64 = 1e-20;

#[derive(Debug, Clone, Copy)]
pub struct Output {
    pub full: bool,
    pub ctl: SeriesControl,
}

impl Output {
    pub fn value(&self, v: f64) -> Cell {
        let text = if self.full { format_full(v) } else { format_sig(v, 7) };
        Cell::real(v, text)
    }

    pub fn error(&self, v: f64) -> Cell {
        let text = if self.full { format_full(v) } else { format_err(v) };
        Cell::real(v, text)
    }
}

fn need<'a>(arg: &'a Option<NumArg>, name: &str, family: &str) -> CliResult<&'a NumArg> {
    arg.as_ref().ok_or_else(|| usage(format!("{family} needs --{name}")))
}

fn nonneg_integer(arg: &NumArg) -> Option<u32> {
    arg.exact.as_ref().filter(|r| r.is_integer() && r.signum() >= 0).and_then(|r| u32::try_from(r.numer()).ok())
}

pub struct EvalArgs {
    pub family: String,
    pub n: u32,
    pub x: Option<NumArg>,
    pub y: Option<NumArg>,
    pub alpha: Option<NumArg>,
    pub xs: Vec<NumArg>,
}

enum Evaluated {
    Oracle(Rational),
    Certified { value: f64, tail: f64 },
    Float(f64),
}

pub fn eval(args: &EvalArgs, out: &Output) -> CliResult<Report> {
    let f = args.family.as_str();
    let n = args.n;
    // tricomi and hermitebessel take their order from --alpha
    let mut shown = if is_function(f) { Vec::new() } else { vec![format!("n={n}")] };
    let mut show = |name: &str, a: &NumArg| shown.push(format!("{name}={a}"));
    let result = match f {
        "laguerre2" | "hermite2" | "hybrid" => {
            let (x, y) = (need(&args.x, "x", f)?, need(&args.y, "y", f)?);
            show("x", x);
            show("y", y);
            match (&x.exact, &y.exact) {
                (Some(xq), Some(yq)) => Evaluated::Oracle(match f {
                    "laguerre2" => exact_laguerre(n, xq, yq),
                    "hermite2" => exact_hermite(n, xq, yq),
                    _ => exact_hybrid(n, xq, yq),
                }),
                _ => Evaluated::Float(match f {
                    "laguerre2" => laguerre2(n, &x.value, &y.value),
                    "hermite2" => hermite2(n, &x.value, &y.value),
                    _ => hybrid_hl(n, &x.value, &y.value),
                }),
            }
        }
        "assoclaguerre" => {
            let (x, y, a) = (need(&args.x, "x", f)?, need(&args.y, "y", f)?, need(&args.alpha, "alpha", f)?);
            show("alpha", a);
            show("x", x);
            show("y", y);
            match (&a.exact, &x.exact, &y.exact) {
                (Some(aq), Some(xq), Some(yq)) => Evaluated::Oracle(exact_assoc_laguerre(n, aq, xq, yq)?),
                _ => Evaluated::Float(assoc_laguerre(n, a.value, x.value, y.value)?),
            }
        }
        "hermitem" => {
            if args.xs.is_empty() {
                return Err(usage("hermitem needs --xs with at least one value"));
            }
            shown.push(format!("xs={}", join(&args.xs)));
            match args.xs.iter().map(|a| a.exact.clone()).collect::<Option<Vec<_>>>() {
                Some(q) => Evaluated::Oracle(hermite_m(n, &q)?),
                None => {
                    let v: Vec<f64> = args.xs.iter().map(|a| a.value).collect();
                    Evaluated::Float(hermite_m(n, &v)?)
                }
            }
        }
        "besselj" | "besseli" => {
            let x = need(&args.x, "x", f)?;
            show("x", x);
            match &x.exact {
                Some(xq) => {
                    let id = if f == "besselj" {
                        SeriesId::BesselJ { n, x: xq.clone() }
                    } else {
                        SeriesId::BesselI { n, x: xq.clone() }
                    };
                    certified(&id)?
                }
                None => {
                    let s = if f == "besselj" { bessel_j(n, x.value, &out.ctl)? } else { bessel_i(n, x.value, &out.ctl)? };
                    Evaluated::Float(s.value)
                }
            }
        }
        "tricomi" => {
            let (x, a) = (need(&args.x, "x", f)?, need(&args.alpha, "alpha", f)?);
            show("alpha", a);
            show("x", x);
            match (nonneg_integer(a), &x.exact) {
                (Some(alpha), Some(xq)) => certified(&SeriesId::Tricomi { alpha, x: xq.clone() })?,
                _ => Evaluated::Float(tricomi(a.value, x.value, &out.ctl)?.value),
            }
        }
        "hermitebessel" => {
            let a = need(&args.alpha, "alpha", f)?;
            if args.xs.is_empty() {
                return Err(usage("hermitebessel needs --xs with at least one value"));
            }
            shown.push(format!("nu={a}"));
            shown.push(format!("xs={}", join(&args.xs)));
            let exact = args.xs.iter().map(|v| v.exact.clone()).collect::<Option<Vec<_>>>();
            match (nonneg_integer(a), exact) {
                (Some(nu), Some(xs)) => certified(&SeriesId::HermiteBessel { nu, xs })?,
                _ => {
                    let v: Vec<f64> = args.xs.iter().map(|a| a.value).collect();
                    Evaluated::Float(hermite_bessel(a.value, &v, &out.ctl)?.value)
                }
            }
        }
        other => return Err(usage(format!("unknown family '{other}'; expected one of {EVAL_FAMILIES}"))),
    };

    let mut report = Report::new(vec!["family", "args", "route", "value", "exact", "tail_bound"]);
    let (route, value, exact, tail) = match result {
        Evaluated::Oracle(q) => ("oracle", q.to_f64(), Cell::text(q.to_string()), Cell::real(0.0, "0".into())),
        Evaluated::Certified { value, tail } => ("certified", value, Cell::Empty, out.error(tail)),
        Evaluated::Float(v) => ("float", v, Cell::Empty, Cell::Empty),
    };
    report.push(vec![Cell::text(f), Cell::text(shown.join(" ")), Cell::text(route), out.value(value), exact, tail], None);
    Ok(report)
}

pub const EVAL_FAMILIES: &str =
    "laguerre2, hermite2, hermitem, assoclaguerre, hybrid, besselj, besseli, tricomi, hermitebessel";

fn is_function(f: &str) -> bool {
    matches!(f, "tricomi" | "hermitebessel")
}

fn join(xs: &[NumArg]) -> String {
    xs.iter().map(|a| a.text.as_str()).collect::<Vec<_>>().join(",")
}

fn certified(id: &SeriesId) -> CliResult<Evaluated> {
    let s = highprec_series(id, CERTIFIED_TARGET)?;
    Ok(Evaluated::Certified { value: s.to_f64(), tail: s.tail_bound })
}

/// A point `(x, y)` that keeps exact inputs exact.
#[derive(Debug, Clone)]
pub struct Point {
    pub x: NumArg,
    pub y: NumArg,
}

pub fn approx_family(name: &str, alpha: Option<&NumArg>) -> CliResult<PolyFamily> {
    Ok(match name {
        "laguerre2" => PolyFamily::Laguerre2,
        "hermite2" => PolyFamily::Hermite2,
        "hybrid" => PolyFamily::HybridHL,
        "assoclaguerre" => PolyFamily::AssocLaguerre {
            alpha: alpha.ok_or_else(|| usage("assoclaguerre needs --alpha"))?.value,
        },
        other => {
            return Err(usage(format!(
                "unknown family '{other}'; expected one of laguerre2, assoclaguerre, hermite2, hybrid"
            )))
        }
    })
}

pub fn method(m: usize, j2: bool, closed: bool) -> CliResult<Method> {
    match (j2, closed) {
        (true, true) => Err(usage("--j2 and --closed are mutually exclusive")),
        (true, false) => Ok(Method::BesselJ2),
        (false, true) => Ok(Method::GaussianClosed),
        (false, false) if m == 0 => Err(usage("--m must be at least 1")),
        (false, false) => Ok(Method::Order(m)),
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Order(_) => "order",
        Method::BesselJ2 => "j2",
        Method::GaussianClosed => "closed",
    }
}

/// Runs one approximation; fraction inputs use the rational oracle for the
/// exact value, decimal inputs the float evaluators.
pub fn run_approx(family: PolyFamily, n: u32, p: &Point, m: Method, ctl: &SeriesControl) -> CliResult<(ApproxReport, &'static str)> {
    Ok(match (&p.x.exact, &p.y.exact) {
        (Some(x), Some(y)) => (make_report(family, n, x, y, m, ctl)?, "oracle"),
        _ => (make_report_float(family, n, p.x.value, p.y.value, m, ctl)?, "float"),
    })
}

pub fn approx_report() -> Report {
    Report::new(vec!["family", "method", "n", "x", "y", "m", "exact", "approx", "rel_error", "terms", "route"])
}

pub fn push_approx(report: &mut Report, r: &ApproxReport, p: &Point, route: &str, out: &Output) {
    report.push(
        vec![
            Cell::text(r.family.name()),
            Cell::text(method_name(r.method)),
            Cell::Int(i64::from(r.n)),
            Cell::real(p.x.value, p.x.text.clone()),
            Cell::real(p.y.value, p.y.text.clone()),
            Cell::Int(r.order_m as i64),
            out.value(r.exact),
            out.value(r.approx),
            out.error(r.relative_error),
            Cell::Int(r.terms_used as i64),
            Cell::text(route),
        ],
        None,
    );
}

/// Inclusive integer range: `A`, `A..B`, `A..B:xK` (geometric), `A..B:+K`
/// (arithmetic) or a comma list. Values come back sorted and deduplicated.
pub fn parse_range(s: &str, what: &str) -> CliResult<Vec<u64>> {
    let bad = |msg: &str| usage(format!("invalid {what} range '{s}': {msg}"));
    let int = |t: &str| t.trim().parse::<u64>().map_err(|_| bad("expected non-negative integers"));
    let mut values = if s.contains(',') {
        s.split(',').map(int).collect::<CliResult<Vec<_>>>()?
    } else if let Some((a, rest)) = s.split_once("..") {
        let (b, step) = match rest.split_once(':') {
            Some((b, step)) => (b, Some(step)),
            None => (rest, None),
        };
        let (a, b) = (int(a)?, int(b)?);
        let mut v = Vec::new();
        match step {
            None => v.extend(a..=b),
            Some(st) if st.starts_with('x') => {
                let k = int(&st[1..])?;
                if k < 2 || a == 0 {
                    return Err(bad("a geometric step needs K >= 2 and a start of at least 1"));
                }
                let mut c = a;
                while c <= b {
                    v.push(c);
                    c = c.saturating_mul(k);
                }
            }
            Some(st) if st.starts_with('+') => {
                let k = int(&st[1..])?;
                if k == 0 {
                    return Err(bad("an arithmetic step must be at least 1"));
                }
                v.extend((a..=b).step_by(k as usize));
            }
            Some(_) => return Err(bad("step must be xK or +K")),
        }
        v
    } else {
        vec![int(s)?]
    };
    values.sort_unstable();
    values.dedup();
    if values.is_empty() {
        return Err(bad("range is empty"));
    }
    Ok(values)
}

pub struct SweepArgs {
    pub family: String,
    pub n: String,
    pub m: String,
    pub x: NumArg,
    pub y: NumArg,
    pub alpha: Option<NumArg>,
    pub scaled: bool,
}

fn scale(a: &NumArg, by: u64) -> NumArg {
    match &a.exact {
        Some(q) => NumArg::from_rational(q.clone() / Rational::from_integer(by as i64)),
        None => NumArg::from_f64(a.value / by as f64),
    }
}

pub fn sweep(args: &SweepArgs, out: &Output) -> CliResult<Report> {
    let family = approx_family(&args.family, args.alpha.as_ref())?;
    let ns = parse_range(&args.n, "n")?;
    let ms = parse_range(&args.m, "m")?;
    if ms[0] == 0 {
        return Err(usage("m values must be at least 1"));
    }
    let mut report = approx_report();
    for &n in &ns {
        let n32 = u32::try_from(n).map_err(|_| usage(format!("n = {n} is too large")))?;
        let point = match (args.scaled, family) {
            (false, _) => Point { x: args.x.clone(), y: args.y.clone() },
            (true, PolyFamily::Laguerre2 | PolyFamily::AssocLaguerre { .. }) => {
                Point { x: scale(&args.x, n.max(1)), y: args.y.clone() }
            }
            (true, _) => Point { x: args.x.clone(), y: scale(&args.y, (n * n).max(1)) },
        };
        for &m in &ms {
            let (r, route) = run_approx(family, n32, &point, Method::Order(m as usize), &out.ctl)?;
            push_approx(&mut report, &r, &point, route, out);
        }
    }
    Ok(report)
}
