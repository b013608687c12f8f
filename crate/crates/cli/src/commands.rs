//! The three subcommands, as functions returning their printed output so
//! they can be driven from tests without spawning the binary.

use std::fmt::Write as _;

use boole_core::{
    classical_monomial_bound, closed_form_kernel, composite_boole_with, composite_bound_uniform,
    crossover_threshold, kernel_identity_check, kernel_integral, kernel_sup_abs, monomial_bound_value,
    solve_kernel_coefficients, DerivativeStats, EstimateId, Interval, KernelOrder, MonomialBound, Polynomial,
    Provenance, Rational, Reading,
};
use serde::Serialize;
use thiserror::Error;

use crate::expr::{parse_expression, EvalError, Expr};

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments; exit code 2.
    #[error("usage error: {0}")]
    Usage(String),
    /// A check or an evaluation failed; exit code 1.
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl From<boole_core::Error> for CliError {
    fn from(e: boole_core::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

/// Printed text plus exit code (0 success, 1 failed check).
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
}

fn parse_rational(name: &str, s: &str) -> Result<Rational, CliError> {
    s.trim()
        .parse()
        .map_err(|e| CliError::Usage(format!("--{name}: {e}")))
}

fn rational_interval(a: &str, b: &str) -> Result<Interval<Rational>, CliError> {
    let (a, b) = (parse_rational("a", a)?, parse_rational("b", b)?);
    Interval::new(a, b).map_err(|e| CliError::Usage(e.to_string()))
}

// Values the certificate checks against: sup|K| on [0, 1] overall and per
// piece, for orders 1, 2, 3. They scale by (b − a)^n.
const CLAIMED_SUP: [(i64, i64); 3] = [(11, 60), (17, 1440), (1, 1620)];
const CLAIMED_OUTER_SUP: [(i64, i64); 3] = [(31, 180), (17, 1440), (343, 1_093_500)];

struct Certificate {
    text: String,
    failed: Vec<String>,
}

impl Certificate {
    fn check(&mut self, label: String, ok: bool, detail: String) {
        let tag = if ok { "PASS" } else { "FAIL" };
        let _ = writeln!(self.text, "  [{tag}] {label}: {detail}");
        if !ok {
            self.failed.push(label);
        }
    }
}

/// Exact certificate for the kernels of the requested orders on `[a, b]`.
pub fn verify_kernels(a: &str, b: &str, order: Option<u32>) -> Result<Outcome, CliError> {
    let iv = rational_interval(a, b)?;
    let orders: Vec<KernelOrder> = match order {
        Some(n) => vec![KernelOrder::try_from(n).map_err(|e| CliError::Usage(e.to_string()))?],
        None => KernelOrder::ALL.to_vec(),
    };
    let width = iv.width();
    let mut cert = Certificate {
        text: String::new(),
        failed: Vec::new(),
    };
    let _ = writeln!(cert.text, "interval [{}, {}], width {}", iv.a(), iv.b(), width);
    let _ = writeln!(cert.text, "node spacing h = (b - a)/4 = {}", iv.step());

    for order in orders {
        let n = order.get();
        let _ = writeln!(
            cert.text,
            "order {n} kernel (pieces with leading coefficient {}):",
            order.leading_coeff()
        );
        let solved = match solve_kernel_coefficients(order, &iv) {
            Ok(k) => k,
            Err(e) => {
                cert.check(format!("order {n} solve"), false, e.to_string());
                continue;
            }
        };
        for (i, seg) in solved.segments().iter().enumerate() {
            let _ = writeln!(
                cert.text,
                "    K{}(t) = {}   on [{}, {}]",
                i + 1,
                seg.poly,
                seg.support.a(),
                seg.support.b()
            );
        }
        let closed = closed_form_kernel(order, &iv);
        cert.check(
            format!("order {n} solver = closed form"),
            solved == closed,
            "coefficient-by-coefficient".into(),
        );

        let integral = kernel_integral(&solved);
        cert.check(
            format!("order {n} integral of K"),
            integral.is_zero(),
            format!("{integral}"),
        );

        for d in 0..n as usize {
            let got = solved.boundary_terms(d);
            let want = solved.expected_boundary_terms(d);
            let shown: Vec<String> = got.iter().map(Rational::to_string).collect();
            cert.check(
                format!("order {n} boundary/jump terms of K^({d})"),
                got == want,
                format!("[{}]", shown.join(", ")),
            );
        }

        let scale = width.pow(n);
        let claimed = Rational::new(CLAIMED_SUP[n as usize - 1].0, CLAIMED_SUP[n as usize - 1].1);
        let outer = Rational::new(
            CLAIMED_OUTER_SUP[n as usize - 1].0,
            CLAIMED_OUTER_SUP[n as usize - 1].1,
        );
        match kernel_sup_abs(&solved) {
            Ok(sup) => {
                cert.check(
                    format!("order {n} sup|K|"),
                    sup.overall == &claimed * &scale,
                    format!("{} = {} * (b - a)^{n}", sup.overall, claimed),
                );
                let per: Vec<String> = sup.per_segment.iter().map(Rational::to_string).collect();
                let inner_ok =
                    sup.per_segment[1] == &claimed * &scale && sup.per_segment[2] == &claimed * &scale;
                let outer_ok = sup.per_segment[0] == &outer * &scale && sup.per_segment[3] == &outer * &scale;
                cert.check(
                    format!("order {n} per-piece sup|K_i|"),
                    inner_ok && outer_ok,
                    format!("[{}]", per.join(", ")),
                );
            }
            Err(e) => cert.check(format!("order {n} sup|K|"), false, e.to_string()),
        }

        let sign = order.identity_sign();
        let bad: Vec<usize> = (0..=10)
            .filter(|&j| !kernel_identity_check(&solved, &Polynomial::monomial(j)).holds())
            .collect();
        cert.check(
            format!("order {n} kernel identity"),
            bad.is_empty(),
            if bad.is_empty() {
                format!(
                    "int K*f^({n}) = {}(Boole(f) - int f) for f = t^0..t^10",
                    if sign > 0 { "+" } else { "-" }
                )
            } else {
                format!("fails for t^{bad:?}")
            },
        );
    }

    let exit_code = if cert.failed.is_empty() {
        let _ = writeln!(cert.text, "all checks passed");
        0
    } else {
        let _ = writeln!(cert.text, "FAILED: {}", cert.failed.join("; "));
        1
    };
    Ok(Outcome {
        exit_code,
        stdout: cert.text,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum TableFormat {
    Csv,
    Markdown,
}

/// One power `k` of the monomial study.
#[derive(Clone, Debug, PartialEq)]
pub struct StudyRow {
    pub k: u32,
    /// Indexed like [`EstimateId::ALL`].
    pub bounds: Vec<MonomialBound>,
    pub classical: Rational,
}

impl StudyRow {
    pub fn new(k: u32, b: &Rational) -> Result<Self, CliError> {
        let bounds = EstimateId::ALL
            .iter()
            .map(|&id| monomial_bound_value(id, k, b))
            .collect::<Result<_, _>>()?;
        Ok(StudyRow {
            k,
            bounds,
            classical: classical_monomial_bound(k, b),
        })
    }

    /// Does the estimate beat the classical bound at this `k`?
    pub fn better(&self, id: EstimateId, reading: Reading) -> bool {
        self.bounds[index_of(id)].get(reading) < &self.classical
    }
}

fn index_of(id: EstimateId) -> usize {
    EstimateId::ALL.iter().position(|&x| x == id).expect("listed")
}

pub fn study_rows(kmax: u32, b: &Rational) -> Result<Vec<StudyRow>, CliError> {
    (6..=kmax).map(|k| StudyRow::new(k, b)).collect()
}

/// CSV header: value columns, then one flag per estimate and reading.
pub fn csv_header() -> Vec<String> {
    let mut h: Vec<String> = [
        "k",
        "t1m_table",
        "t1m_theorem",
        "t1M_table",
        "t1M_theorem",
        "t2m",
        "t2M",
        "t3m",
        "t3M",
        "classical",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    for id in EstimateId::ALL {
        for reading in ["table", "theorem"] {
            h.push(format!("better_{id}_{reading}"));
        }
    }
    h
}

fn row_cells(row: &StudyRow, render: impl Fn(&Rational) -> String) -> Vec<String> {
    let bound = |id: EstimateId| &row.bounds[index_of(id)];
    let mut cells = vec![row.k.to_string()];
    for id in [EstimateId::T1m, EstimateId::T1M] {
        cells.push(render(&bound(id).table_value));
        cells.push(render(&bound(id).theorem_value));
    }
    for id in [EstimateId::T2m, EstimateId::T2M, EstimateId::T3m, EstimateId::T3M] {
        cells.push(render(&bound(id).theorem_value));
    }
    cells.push(render(&row.classical));
    for id in EstimateId::ALL {
        for reading in [Reading::Table, Reading::Theorem] {
            cells.push(row.better(id, reading).to_string());
        }
    }
    cells
}

fn thresholds(b: &Rational, reading: Reading) -> Result<String, CliError> {
    let parts = EstimateId::ALL
        .iter()
        .map(|&id| Ok(format!("{id}={}", crossover_threshold(id, b, reading)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(parts.join(" "))
}

/// Monomial study for `t^k`, `k = 6..=kmax`, on `[0, b]`.
pub fn table(kmax: u32, b: &str, format: TableFormat) -> Result<String, CliError> {
    if kmax < 6 {
        return Err(CliError::Usage(format!("--kmax must be at least 6, got {kmax}")));
    }
    let b = parse_rational("b", b)?;
    if b <= Rational::zero() {
        return Err(CliError::Usage(format!("--b must be positive, got {b}")));
    }
    let rows = study_rows(kmax, &b)?;
    let footer = [
        format!(
            "crossover thresholds (table reading): {}",
            thresholds(&b, Reading::Table)?
        ),
        format!(
            "crossover thresholds (theorem reading): {}",
            thresholds(&b, Reading::Theorem)?
        ),
        format!("setting: f(t) = t^k on [0, {b}], h = (b - a)/4"),
    ];

    match format {
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(csv_header()).map_err(csv_failure)?;
            for row in &rows {
                w.write_record(row_cells(row, Rational::to_fraction_string))
                    .map_err(csv_failure)?;
            }
            let mut out = String::from_utf8(w.into_inner().map_err(|e| CliError::Failure(e.to_string()))?)
                .expect("csv output is utf-8");
            for line in footer {
                let _ = writeln!(out, "# {line}");
            }
            Ok(out)
        }
        TableFormat::Markdown => {
            let header = csv_header();
            let mut out = format!("| {} |\n", header.join(" | "));
            let _ = writeln!(out, "|{}", "---:|".repeat(header.len()));
            for row in &rows {
                let cells = row_cells(row, |r| r.to_decimal_string(15));
                let _ = writeln!(out, "| {} |", cells.join(" | "));
            }
            out.push('\n');
            for line in footer {
                let _ = writeln!(out, "{line}  ");
            }
            Ok(out)
        }
    }
}

fn csv_failure(e: csv::Error) -> CliError {
    CliError::Failure(e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct IntegrateArgs {
    pub expr: String,
    pub a: String,
    pub b: String,
    pub panels: usize,
    /// `order:m:M:I`, each field a constant expression.
    pub stats: Vec<String>,
    pub estimates: Option<String>,
    /// Treat supplied statistics as sampled rather than exact.
    pub heuristic: bool,
    pub format: ReportFormat,
}

#[derive(Debug, Serialize)]
struct JsonInterval {
    a: f64,
    b: f64,
}

#[derive(Debug, Serialize)]
struct JsonReport {
    value: f64,
    panels: usize,
    interval: JsonInterval,
    bounds: std::collections::BTreeMap<String, f64>,
    provenance: String,
}

enum IntegrandError {
    Eval(EvalError),
    Rule(boole_core::Error),
}

impl From<boole_core::Error> for IntegrandError {
    fn from(e: boole_core::Error) -> Self {
        IntegrandError::Rule(e)
    }
}

fn parse_real(name: &str, s: &str) -> Result<f64, CliError> {
    let s = s.trim();
    if let Ok(r) = s.parse::<Rational>() {
        return Ok(r.to_f64());
    }
    s.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| CliError::Usage(format!("--{name}: not a finite number: {s:?}")))
}

fn constant_expr(s: &str) -> Result<f64, CliError> {
    let e = parse_expression(s).map_err(|e| CliError::Usage(format!("--stats value {s:?}: {e}")))?;
    if !e.is_constant() {
        return Err(CliError::Usage(format!(
            "--stats value {s:?} must not depend on t"
        )));
    }
    e.eval(0.0)
        .map_err(|e| CliError::Usage(format!("--stats value {s:?}: {e}")))
}

/// Parse `order:m:M:I`.
pub fn parse_stats(spec: &str, heuristic: bool) -> Result<DerivativeStats<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [order, m, big_m, i] = parts.as_slice() else {
        return Err(CliError::Usage(format!("--stats {spec:?}: expected order:m:M:I")));
    };
    let order: u32 = order
        .trim()
        .parse()
        .ok()
        .filter(|n| (1..=3).contains(n))
        .ok_or_else(|| CliError::Usage(format!("--stats {spec:?}: order must be 1, 2 or 3")))?;
    let (m, big_m, i) = (constant_expr(m)?, constant_expr(big_m)?, constant_expr(i)?);
    let stats = if heuristic {
        DerivativeStats::sampled(order, i, m, big_m)
    } else {
        DerivativeStats::exact(order, i, m, big_m)
    };
    stats.map_err(|e| CliError::Usage(format!("--stats {spec:?}: {e}")))
}

/// Composite Boole value of an expression, with bounds when statistics
/// are supplied.
pub fn integrate(args: &IntegrateArgs) -> Result<String, CliError> {
    let expr: Expr = parse_expression(&args.expr).map_err(|e| CliError::Usage(format!("--expr: {e}")))?;
    let (a, b) = (parse_real("a", &args.a)?, parse_real("b", &args.b)?);
    let iv = Interval::new(a, b).map_err(|e| CliError::Usage(e.to_string()))?;
    if args.panels == 0 {
        return Err(CliError::Usage("--panels must be at least 1".into()));
    }

    let mut stats: Vec<DerivativeStats<f64>> = Vec::new();
    for spec in &args.stats {
        let s = parse_stats(spec, args.heuristic)?;
        if stats.iter().any(|x| x.order() == s.order()) {
            return Err(CliError::Usage(format!(
                "--stats given twice for order {}",
                s.order()
            )));
        }
        stats.push(s);
    }
    let estimates: Vec<EstimateId> = match &args.estimates {
        Some(list) => list
            .split(',')
            .map(|s| s.trim().parse::<EstimateId>())
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Usage(e.to_string()))?,
        None => EstimateId::ALL
            .into_iter()
            .filter(|id| stats.iter().any(|s| s.order() == id.order().get()))
            .collect(),
    };
    for id in &estimates {
        if !stats.iter().any(|s| s.order() == id.order().get()) {
            return Err(CliError::Usage(format!(
                "estimate {id} needs --stats for order {}",
                id.order()
            )));
        }
    }

    let value = composite_boole_with(
        |t: f64| expr.eval(t).map_err(IntegrandError::Eval),
        &iv,
        args.panels,
    )
    .map_err(|e| match e {
        IntegrandError::Eval(e) => CliError::Failure(e.to_string()),
        IntegrandError::Rule(e) => CliError::Failure(e.to_string()),
    })?;

    let mut bounds = Vec::new();
    for &id in &estimates {
        let s = stats
            .iter()
            .find(|s| s.order() == id.order().get())
            .expect("checked above");
        bounds.push((id, composite_bound_uniform(id, s, &iv, args.panels)?));
    }
    let provenance = if bounds.is_empty() {
        "none"
    } else if stats.iter().any(|s| s.provenance() == Provenance::Sampled) {
        "sampled"
    } else {
        "exact"
    };

    match args.format {
        ReportFormat::Json => {
            let report = JsonReport {
                value,
                panels: args.panels,
                interval: JsonInterval { a, b },
                bounds: bounds.iter().map(|(id, v)| (id.to_string(), *v)).collect(),
                provenance: provenance.to_string(),
            };
            let mut s =
                serde_json::to_string_pretty(&report).map_err(|e| CliError::Failure(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        ReportFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "integrand: {expr}");
            let _ = writeln!(
                out,
                "interval: [{a}, {b}], panels: {} (h = (b - a)/4 per panel)",
                args.panels
            );
            let _ = writeln!(out, "value: {value}");
            let label = match provenance {
                "none" => {
                    let _ = writeln!(out, "uncertified: no derivative statistics supplied");
                    return Ok(out);
                }
                "sampled" => "heuristic",
                _ => "certified",
            };
            for (id, v) in &bounds {
                let _ = writeln!(
                    out,
                    "{id}: bound {v}, enclosure [{}, {}] ({label})",
                    value - v,
                    value + v
                );
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(expr: &str, a: &str, b: &str, panels: usize) -> IntegrateArgs {
        IntegrateArgs {
            expr: expr.into(),
            a: a.into(),
            b: b.into(),
            panels,
            stats: Vec::new(),
            estimates: None,
            heuristic: false,
            format: ReportFormat::Json,
        }
    }

    fn json(out: &str) -> serde_json::Value {
        serde_json::from_str(out).unwrap()
    }

    #[test]
    fn verify_unit_interval() {
        let o = verify_kernels("0", "1", None).unwrap();
        assert_eq!(o.exit_code, 0, "{}", o.stdout);
        for c in ["11/60", "17/1440", "1/1620", "h = (b - a)/4"] {
            assert!(o.stdout.contains(c), "missing {c}");
        }
    }

    #[test]
    fn verify_scaled_interval() {
        let o = verify_kernels("-1", "3", None).unwrap();
        assert_eq!(o.exit_code, 0, "{}", o.stdout);
        // 11/60·4, 17/1440·16, 1/1620·64
        for c in ["11/15", "17/90", "16/405"] {
            assert!(o.stdout.contains(c), "missing {c}:\n{}", o.stdout);
        }
    }

    #[test]
    fn verify_rejects_bad_input() {
        assert_eq!(verify_kernels("0", "0", None).unwrap_err().exit_code(), 2);
        assert_eq!(verify_kernels("0.5", "1", None).unwrap_err().exit_code(), 2);
        assert_eq!(verify_kernels("0", "1", Some(4)).unwrap_err().exit_code(), 2);
        assert_eq!(verify_kernels("0", "1", Some(2)).unwrap().exit_code, 0);
    }

    #[test]
    fn table_footer_thresholds() {
        let out = table(30, "1", TableFormat::Csv).unwrap();
        assert!(
            out.contains("# crossover thresholds (table reading): t1m=15 t1M=24 t2m=11 t2M=16 t3m=10 t3M=15")
        );
        assert!(out
            .contains("# crossover thresholds (theorem reading): t1m=12 t1M=16 t2m=11 t2M=16 t3m=10 t3M=15"));
        assert_eq!(table(5, "1", TableFormat::Csv).unwrap_err().exit_code(), 2);
        assert_eq!(table(10, "0", TableFormat::Csv).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn markdown_uses_decimals() {
        let out = table(6, "1", TableFormat::Markdown).unwrap();
        // classical bound for t^6 is 1/2688
        assert!(out.contains("0.00037202380952381"), "{out}");
        assert!(!out.contains("1/2688"));
    }

    #[test]
    fn integrate_quartic() {
        let mut a = args("t^4", "0", "1", 1);
        let v = json(&integrate(&a).unwrap());
        assert!((v["value"].as_f64().unwrap() - 0.2).abs() < 1e-15);
        assert_eq!(v["provenance"], "none");

        // t^4: I(f') = 4, f'' = 12 t^2 in [0, 12]
        a.stats = vec!["2:0:12:4".into()];
        a.estimates = Some("t2m".into());
        let v = json(&integrate(&a).unwrap());
        let bound = v["bounds"]["t2m"].as_f64().unwrap();
        let value = v["value"].as_f64().unwrap();
        assert!(value - bound <= 0.2 && 0.2 <= value + bound);
        assert_eq!(v["provenance"], "exact");
    }

    #[test]
    fn integrate_constant() {
        let mut a = args("1", "0", "5", 3);
        a.stats = vec!["1:0:0:0".into(), "2:0:0:0".into(), "3:0:0:0".into()];
        let v = json(&integrate(&a).unwrap());
        assert!((v["value"].as_f64().unwrap() - 5.0).abs() < 1e-14);
        let bounds = v["bounds"].as_object().unwrap();
        assert_eq!(bounds.len(), 6);
        assert!(bounds.values().all(|b| b.as_f64().unwrap() == 0.0));
    }

    #[test]
    fn integrate_exp_with_t1m_stats() {
        let mut a = args("exp(t)", "0", "1", 1);
        a.stats = vec!["1:1:exp(1):exp(1)-1".into()];
        a.estimates = Some("t1M".into());
        let v = json(&integrate(&a).unwrap());
        let bound = v["bounds"]["t1M"].as_f64().unwrap();
        assert!((bound - 11.0 / 60.0).abs() < 1e-15);
        let err = (v["value"].as_f64().unwrap() - (std::f64::consts::E - 1.0)).abs();
        assert!(err <= bound);
    }

    #[test]
    fn integrate_text_labels() {
        let mut a = args("t^4", "0", "1", 2);
        a.format = ReportFormat::Text;
        assert!(integrate(&a).unwrap().contains("uncertified"));
        a.stats = vec!["2:0:12:4".into()];
        assert!(integrate(&a).unwrap().contains("(certified)"));
        a.heuristic = true;
        assert!(integrate(&a).unwrap().contains("(heuristic)"));
    }

    #[test]
    fn integrate_errors() {
        let a = args("log(t)", "0", "1", 1);
        let e = integrate(&a).unwrap_err();
        assert_eq!(e.exit_code(), 1);
        assert!(e.to_string().contains("log(t)") && e.to_string().contains("t = 0"));

        assert_eq!(integrate(&args("t^^2", "0", "1", 1)).unwrap_err().exit_code(), 2);
        assert_eq!(integrate(&args("t", "1", "0", 1)).unwrap_err().exit_code(), 2);
        assert_eq!(integrate(&args("t", "0", "1", 0)).unwrap_err().exit_code(), 2);

        let mut a = args("t", "0", "1", 1);
        a.estimates = Some("t2m".into());
        assert_eq!(integrate(&a).unwrap_err().exit_code(), 2);
        a.stats = vec!["2:1:0:0".into()];
        assert_eq!(integrate(&a).unwrap_err().exit_code(), 2);
        a.stats = vec!["2:0:1:t".into()];
        assert_eq!(integrate(&a).unwrap_err().exit_code(), 2);
    }
}
