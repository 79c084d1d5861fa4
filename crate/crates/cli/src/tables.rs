//! Accuracy tables: specs are json data, rows are recomputed and compared.

use serde::Deserialize;
use serde_json::json;
use umbral::asymptotics::{exact_value, make_report, Method};
use umbral::oracle::Rational;
use umbral::polynomials::PolyFamily;

use crate::commands::Output;
use crate::error::{usage, CliError, CliResult};
use crate::number::{format_err, format_fixed, format_full, two_digit_match};
use crate::report::{Cell, Report};

const BUILTIN: [&str; 5] = [
    include_str!("../tables/table1.json"),
    include_str!("../tables/table2.json"),
    include_str!("../tables/table3.json"),
    include_str!("../tables/table4.json"),
    include_str!("../tables/table5.json"),
];

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSpec {
    pub table_id: u8,
    pub title: String,
    pub config: String,
    #[serde(default)]
    pub reconstructed: bool,
    pub value_decimals: usize,
    pub error_basis: ErrorBasis,
    #[serde(default)]
    pub pattern: Option<Pattern>,
    pub rows: Vec<RowSpec>,
    #[serde(default)]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorBasis {
    /// `|approx - exact| / |exact|`
    Exact,
    /// `|approx - exact| / |approx|`
    Approximation,
}

/// Verdict by error decay alone: strictly decreasing over `orders` and
/// shrinking by at least `min_span` from first to last.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pattern {
    pub orders: Vec<usize>,
    pub min_span: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowSpec {
    pub label: String,
    pub family: String,
    pub n: u32,
    pub x: String,
    pub y: String,
    pub formula: Formula,
    #[serde(default)]
    pub expected_value: Option<f64>,
    #[serde(default)]
    pub value_tolerance: Option<Tolerance>,
    #[serde(default)]
    pub expected_rel_error: Option<f64>,
    #[serde(default)]
    pub informational: bool,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Formula {
    Named(NamedFormula),
    Order { order: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedFormula {
    Exact,
    J2,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tolerance {
    Abs(f64),
    Rel(f64),
}

impl Tolerance {
    fn accepts(self, computed: f64, expected: f64) -> bool {
        let diff = (computed - expected).abs();
        match self {
            Tolerance::Abs(t) => diff <= t,
            Tolerance::Rel(t) => diff <= t * expected.abs(),
        }
    }
}

impl TableSpec {
    pub fn builtin(id: u8) -> CliResult<Self> {
        let text = BUILTIN
            .get(usize::from(id).wrapping_sub(1))
            .ok_or_else(|| usage(format!("table id must be 1..5, got {id}")))?;
        Self::parse(text)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let spec: TableSpec =
            serde_json::from_str(text).map_err(|e| usage(format!("invalid table spec: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> CliResult<()> {
        let bad = |msg: String| Err(usage(format!("invalid table spec {}: {msg}", self.table_id)));
        if !(1..=5).contains(&self.table_id) {
            return bad("table_id must be 1..5".into());
        }
        if self.rows.is_empty() {
            return bad("no rows".into());
        }
        for r in &self.rows {
            if self.table_id <= 4 && r.expected_value.is_none() {
                return bad(format!("row '{}' needs expected_value", r.label));
            }
            if r.expected_value.is_some() != r.value_tolerance.is_some() {
                return bad(format!("row '{}': expected_value and value_tolerance go together", r.label));
            }
            r.x.parse::<Rational>().map_err(|e| usage(format!("row '{}': x: {e}", r.label)))?;
            r.y.parse::<Rational>().map_err(|e| usage(format!("row '{}': y: {e}", r.label)))?;
            family(&r.family)?;
        }
        if let Some(p) = &self.pattern {
            for m in &p.orders {
                if !self.rows.iter().any(|r| r.formula == Formula::Order { order: *m }) {
                    return bad(format!("pattern order {m} has no row"));
                }
            }
        }
        Ok(())
    }
}

fn family(name: &str) -> CliResult<PolyFamily> {
    match name {
        "laguerre2" => Ok(PolyFamily::Laguerre2),
        "hermite2" => Ok(PolyFamily::Hermite2),
        "hybrid" => Ok(PolyFamily::HybridHL),
        other => Err(usage(format!("table rows support laguerre2, hermite2, hybrid; got '{other}'"))),
    }
}

struct RowResult {
    computed: f64,
    rel_error: Option<f64>,
    value_ok: Option<bool>,
    error_ok: Option<bool>,
}

fn evaluate(spec: &TableSpec, row: &RowSpec, out: &Output) -> CliResult<RowResult> {
    let fam = family(&row.family)?;
    let x: Rational = row.x.parse().map_err(|e| usage(format!("{e}")))?;
    let y: Rational = row.y.parse().map_err(|e| usage(format!("{e}")))?;
    let method = match row.formula {
        Formula::Named(NamedFormula::Exact) => None,
        Formula::Named(NamedFormula::J2) => Some(Method::BesselJ2),
        Formula::Named(NamedFormula::Closed) => Some(Method::GaussianClosed),
        Formula::Order { order } => Some(Method::Order(order)),
    };
    let (computed, rel_error) = match method {
        None => (exact_value(&fam, row.n, &x, &y)?, None),
        Some(m) => {
            let r = make_report(fam, row.n, &x, &y, m, &out.ctl)?;
            let err = match spec.error_basis {
                ErrorBasis::Exact => r.relative_error,
                ErrorBasis::Approximation => r.error_relative_to_approx(),
            };
            (r.approx, Some(err))
        }
    };
    let value_ok = row.expected_value.zip(row.value_tolerance).map(|(e, t)| t.accepts(computed, e));
    let error_ok = row.expected_rel_error.zip(rel_error).map(|(e, c)| two_digit_match(c, e));
    Ok(RowResult { computed, rel_error, value_ok, error_ok })
}

fn check_cell(ok: Option<bool>, informational: bool) -> Cell {
    match (ok, informational) {
        (None, _) => Cell::text("-"),
        (Some(true), false) => Cell::text("pass"),
        (Some(false), false) => Cell::text("FAIL"),
        (Some(true), true) => Cell::text("pass (info)"),
        (Some(false), true) => Cell::text("differs (info)"),
    }
}

/// Recomputes `spec`; returns the rendered report and the labels of rows
/// that fail the verdict (empty when the table passes).
pub fn run(spec: &TableSpec, out: &Output) -> CliResult<(Report, Vec<String>)> {
    let mut report = Report::new(vec![
        "label",
        "computed",
        "expected",
        "value_check",
        "rel_error",
        "expected_rel_error",
        "error_check",
    ]);
    report.title = Some(format!("Table {}: {}", spec.table_id, spec.title));
    let fixed = |v: f64| Cell::real(v, if out.full { format_full(v) } else { format_fixed(v, spec.value_decimals) });

    let mut failures = Vec::new();
    let mut errors_by_order = Vec::new();
    for row in &spec.rows {
        let r = evaluate(spec, row, out)?;
        if let Formula::Order { order } = row.formula {
            errors_by_order.push((order, r.rel_error.unwrap_or(f64::NAN)));
        }
        let informational = row.informational || spec.pattern.is_some();
        if !informational && (r.value_ok == Some(false) || r.error_ok == Some(false)) {
            let mut what = Vec::new();
            if r.value_ok == Some(false) {
                what.push(format!("value {} vs expected {}", format_full(r.computed), row.expected_value.unwrap_or_default()));
            }
            if r.error_ok == Some(false) {
                what.push(format!(
                    "rel_error {} vs expected {}",
                    format_err(r.rel_error.unwrap_or_default()),
                    format_err(row.expected_rel_error.unwrap_or_default())
                ));
            }
            failures.push(format!("{}: {}", row.label, what.join("; ")));
        }
        report.push(
            vec![
                Cell::text(row.label.clone()),
                fixed(r.computed),
                row.expected_value.map_or(Cell::Empty, fixed),
                check_cell(r.value_ok, informational),
                r.rel_error.map_or(Cell::Empty, |e| out.error(e)),
                row.expected_rel_error.map_or(Cell::Empty, |e| Cell::real(e, format_err(e))),
                check_cell(r.error_ok, informational),
            ],
            row.note.clone(),
        );
    }

    let mut verdict_note = None;
    if let Some(p) = &spec.pattern {
        let errs: Vec<f64> = p
            .orders
            .iter()
            .map(|m| errors_by_order.iter().find(|(o, _)| o == m).map_or(f64::NAN, |(_, e)| *e))
            .collect();
        let decreasing = errs.windows(2).all(|w| w[1] < w[0]);
        let span = errs[0] / errs[errs.len() - 1];
        let orders: Vec<String> = p.orders.iter().map(|m| m.to_string()).collect();
        let summary = format!(
            "error pattern over m = {}: {} (span {})",
            orders.join(", "),
            errs.iter().map(|e| format_err(*e)).collect::<Vec<_>>().join(" > "),
            format_err(span)
        );
        if !(decreasing && span >= p.min_span) {
            failures.push(format!("{summary} is not strictly decreasing by at least {}", p.min_span));
        }
        verdict_note = Some(summary);
    }

    report.meta = vec![
        ("table_id", json!(spec.table_id)),
        ("config", json!(spec.config)),
        ("error_basis", json!(match spec.error_basis {
            ErrorBasis::Exact => "exact",
            ErrorBasis::Approximation => "approximation",
        })),
        ("verdict", json!(if failures.is_empty() { "pass" } else { "fail" })),
    ];
    if spec.reconstructed {
        report.meta.insert(2, ("reconstructed", json!(true)));
    }
    report.notes = spec.notes.clone();
    report.notes.extend(verdict_note);
    Ok((report, failures))
}

pub fn mismatch(spec: &TableSpec, failures: &[String]) -> CliError {
    CliError::Mismatch(format!(
        "table {} has {} mismatching row(s):\n  {}",
        spec.table_id,
        failures.len(),
        failures.join("\n  ")
    ))
}
