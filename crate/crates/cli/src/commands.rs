//! One function per subcommand. Each returns an [`OutputRecord`] plus the
//! number of failed assertions; the caller maps failures to exit codes.

use itertools::Itertools;
use num_rational::Ratio;
use serde_json::{json, Value};
use thiserror::Error;

use projheight::cayley::{css_check, scan_css, CayleyGraph, CssOptions, ScanReport};
use projheight::heights::{
    bounds_report, gap_report, height, height_upper_bound, line_bound_certificates, line_height_fast,
    spectrum, LineBoundKind,
};
use projheight::modular::{odd_primes, PrimeModulus, ProjectivePoint, Residue, ResidueSet};

use crate::record::OutputRecord;

/// Primes covered by the published table of line heights.
pub const TABLE_PRIMES: [u64; 6] = [11, 13, 17, 19, 23, 29];

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_VIOLATION: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }
}

impl From<projheight::Error> for CliError {
    fn from(e: projheight::Error) -> Self {
        match e {
            projheight::Error::BudgetExceeded { .. } | projheight::Error::CapExceeded { .. } => {
                CliError::Budget(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

pub type CmdResult = Result<Outcome, CliError>;

#[derive(Debug, Clone)]
pub struct Outcome {
    pub record: OutputRecord,
    pub violations: usize,
}

impl From<OutputRecord> for Outcome {
    fn from(record: OutputRecord) -> Self {
        Outcome { record, violations: 0 }
    }
}

fn modulus(p: u64) -> Result<PrimeModulus, CliError> {
    PrimeModulus::new(p).map_err(CliError::from)
}

fn terms(rs: &[Residue]) -> String {
    rs.iter().join("+")
}

/// Parses `n/d`, an integer, or a finite decimal such as `0.5`.
pub fn parse_rational(s: &str) -> Result<Ratio<i64>, String> {
    let s = s.trim();
    if let Some((int, frac)) = s.split_once('.') {
        let digits = frac.len() as u32;
        let scale = 10i64.checked_pow(digits).ok_or("too many decimal digits")?;
        let negative = int.starts_with('-');
        let int: i64 = if int.is_empty() || int == "-" { 0 } else { int.parse().map_err(|e| format!("{e}"))? };
        let frac: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|e| format!("{e}"))? };
        let magnitude = int.abs() * scale + frac;
        return Ok(Ratio::new(if negative { -magnitude } else { magnitude }, scale));
    }
    s.parse::<Ratio<i64>>().map_err(|e| format!("invalid rational '{s}': {e}"))
}

pub fn height_cmd(p: u64, coords: &[i64]) -> CmdResult {
    let m = modulus(p)?;
    let point = ProjectivePoint::canonicalize(coords, m)?;
    let mut rec = OutputRecord::new(
        "height",
        &["p", "point", "d_star", "height", "argmin_k", "method", "upper_bound", "bound_1_plus_a", "bound_reflected"],
    );
    rec.param("p", p).param("coords", coords.iter().join(","));

    let line_a = match point.coords() {
        [one, a] if *one == Residue::ONE && !a.is_zero() => Some(*a),
        _ => None,
    };
    let (record, bounds) = match line_a {
        Some(a) => (line_height_fast(a, m)?, line_bound_certificates(a, m)?),
        None => (height(&point), Vec::new()),
    };
    let bound = |kind: LineBoundKind| {
        bounds.iter().find(|b| b.kind == kind).map_or(Value::Null, |b| json!(b.bound))
    };
    rec.push(vec![
        ("p", json!(p)),
        ("point", json!(point.to_string())),
        ("d_star", json!(point.d_star())),
        ("height", json!(record.height)),
        ("argmin_k", json!(record.argmin_k)),
        ("method", json!(record.method.tag())),
        ("upper_bound", json!(height_upper_bound(&point))),
        ("bound_1_plus_a", bound(LineBoundKind::OnePlusA)),
        ("bound_reflected", bound(LineBoundKind::Reflected)),
    ]);
    Ok(rec.into())
}

/// Line heights `h_p(<1, a>)` for `a` in `[2, p-2]`, one row each.
pub fn table_cmd(primes: &[u64]) -> CmdResult {
    let mut rec = OutputRecord::new("table", &["p", "a", "height", "argmin_k", "method"]);
    rec.param("primes", primes.iter().join(","));
    for &p in primes {
        let m = modulus(p)?;
        for a in 2..p.saturating_sub(1) {
            let r = line_height_fast(m.reduce_u64(a), m)?;
            rec.push(vec![
                ("p", json!(p)),
                ("a", json!(a)),
                ("height", json!(r.height)),
                ("argmin_k", json!(r.argmin_k)),
                ("method", json!(r.method.tag())),
            ]);
        }
    }
    let rows = rec.rows.len();
    rec.summarize("rows", rows);
    Ok(rec.into())
}

pub fn table_range(pmin: u64, pmax: u64) -> Vec<u64> {
    odd_primes(pmin, pmax)
}

pub fn spectrum_cmd(p: u64, d: usize, check_bounds: bool, budget: u128) -> CmdResult {
    let m = modulus(p)?;
    let s = spectrum(m, d, budget)?;
    let mut rec = OutputRecord::new("spectrum", &["p", "d", "height", "count"]);
    rec.param("p", p).param("d", d).param("check_bounds", check_bounds);
    for (&h, &c) in &s.count_per_value {
        rec.push(vec![("p", json!(p)), ("d", json!(d)), ("height", json!(h)), ("count", json!(c))]);
    }
    rec.summarize("points", s.point_count.to_string())
        .summarize("values", s.values.iter().join(","))
        .summarize("max_height", s.max_height)
        .summarize("max_witness", s.max_witness.to_string())
        .summarize("gaps", s.gaps.iter().map(|g| format!("({},{})", g.below, g.above)).join(" "));
    let mut violations = 0;
    if check_bounds {
        let b = bounds_report(&s);
        rec.summarize("max_lower_bound", b.lower)
            .summarize("max_upper_bound", b.upper)
            .summarize("bounds_hold", b.holds);
        violations += usize::from(!b.holds);
    }
    Ok(Outcome { record: rec, violations })
}

pub fn gaps_cmd(primes: &[u64], r: u64, c: Ratio<i64>, budget: u128) -> CmdResult {
    if r == 0 {
        return Err(CliError::Input("r must be at least 1".into()));
    }
    if c < Ratio::from_integer(0) {
        return Err(CliError::Input("c must be nonnegative".into()));
    }
    let mut rec = OutputRecord::new(
        "gaps",
        &["p", "values", "max_height", "max_is_p", "window_lower", "window_upper", "empty", "inside"],
    );
    rec.param("primes", primes.iter().join(",")).param("r", r).param("c", c.to_string());
    let mut empty = 0;
    let mut max_mismatch = 0;
    for &p in primes {
        let m = modulus(p)?;
        let s = spectrum(m, 2, budget)?;
        let g = gap_report(&s, r, c);
        let b = bounds_report(&s);
        empty += usize::from(g.empty);
        max_mismatch += usize::from(!b.holds);
        rec.push(vec![
            ("p", json!(p)),
            ("values", json!(s.values.iter().join(" "))),
            ("max_height", json!(s.max_height)),
            ("max_is_p", json!(b.holds)),
            ("window_lower", json!(g.lower.to_string())),
            ("window_upper", json!(g.upper.to_string())),
            ("empty", json!(g.empty)),
            ("inside", json!(g.inside.iter().join(" "))),
        ]);
    }
    rec.summarize("primes", primes.len())
        .summarize("empty_windows", empty)
        .summarize("nonempty_windows", primes.len() - empty)
        .summarize("max_bound_failures", max_mismatch);
    Ok(Outcome { record: rec, violations: max_mismatch })
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CayleyFlags {
    pub exact: bool,
    pub css: bool,
    pub girth: bool,
}

pub fn cayley_cmd(p: u64, set: &[i64], flags: CayleyFlags, cap: usize) -> CmdResult {
    let m = modulus(p)?;
    let g = CayleyGraph::new(ResidueSet::new(set, m)?);
    let r = css_check(&g, CssOptions { exact: flags.exact, cap })?;

    let mut columns = vec!["p", "A", "d", "gamma", "height", "beta_upper", "witness_k", "triangle_free", "triangle_witness"];
    if flags.exact {
        columns.push("beta_exact");
    }
    if flags.girth {
        columns.push("shortest_cycle");
    }
    if flags.css {
        columns.extend(["css_margin", "css_pass", "violations"]);
    }
    let mut rec = OutputRecord::new("cayley", &columns);
    rec.param("p", p)
        .param("A", set.iter().join(","))
        .param("exact", flags.exact)
        .param("css", flags.css)
        .param("girth", flags.girth);

    let mut row = vec![
        ("p", json!(p)),
        ("A", json!(r.set.to_string())),
        ("d", json!(r.d)),
        ("gamma", json!(r.gamma)),
        ("height", json!(r.height)),
        ("beta_upper", json!(r.beta_upper)),
        ("witness_k", json!(r.witness_k)),
        ("triangle_free", json!(r.triangle_free)),
        ("triangle_witness", r.triangle_witness.as_ref().map_or(Value::Null, |w| json!(terms(&w.terms)))),
    ];
    if flags.exact {
        row.push(("beta_exact", json!(r.beta_exact)));
    }
    if flags.girth {
        row.push(("shortest_cycle", json!(r.shortest_cycle)));
    }
    if flags.css {
        row.push(("css_margin", json!(r.css_margin.to_string())));
        row.push(("css_pass", json!(r.passed())));
        row.push(("violations", json!(r.violations.join("; "))));
    }
    rec.push(row);
    let violations = if flags.css { r.violations.len() } else { 0 };
    Ok(Outcome { record: rec, violations })
}

pub fn scan_cmd(pmax: u64, d: usize, exact: bool, cap: usize, budget: u128) -> CmdResult {
    let report = scan_css(pmax, d, CssOptions { exact, cap }, budget)?;
    Ok(scan_record(&report))
}

pub fn scan_record(report: &ScanReport) -> Outcome {
    let mut rec = OutputRecord::new(
        "scan",
        &[
            "p", "A", "orbit_size", "gamma", "height", "beta_upper", "witness_k", "beta_exact", "triangle_free",
            "shortest_cycle", "css_margin", "pass", "violations",
        ],
    );
    rec.param("pmax", report.p_max).param("d", report.d).param("exact", report.exact);
    for r in &report.records {
        let b = &r.report;
        rec.push(vec![
            ("p", json!(b.p.get())),
            ("A", json!(b.set.to_string())),
            ("orbit_size", json!(r.orbit_size)),
            ("gamma", json!(b.gamma)),
            ("height", json!(b.height)),
            ("beta_upper", json!(b.beta_upper)),
            ("witness_k", json!(b.witness_k)),
            ("beta_exact", json!(b.beta_exact)),
            ("triangle_free", json!(b.triangle_free)),
            ("shortest_cycle", json!(b.shortest_cycle)),
            ("css_margin", json!(b.css_margin.to_string())),
            ("pass", json!(b.passed())),
            ("violations", json!(b.violations.join("; "))),
        ]);
    }
    let above_third: usize = report.primes.iter().map(|s| s.triangle_free_at_or_above_third).sum();
    let nontrivial: Vec<String> = report
        .primes
        .iter()
        .filter(|s| s.above_quarter && s.below_third)
        .map(|s| s.p.to_string())
        .collect();
    rec.summarize("primes", report.primes.len())
        .summarize("instances", report.instances)
        .summarize("triangle_free", report.triangle_free)
        .summarize("triangle_free_with_d_at_least_p_over_3", above_third)
        .summarize("primes_with_p_over_4_lt_d_lt_p_over_3", nontrivial.join(","))
        .summarize("violations", report.violations);
    Outcome { record: rec, violations: report.violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/2").unwrap(), Ratio::new(1, 2));
        assert_eq!(parse_rational("0.5").unwrap(), Ratio::new(1, 2));
        assert_eq!(parse_rational("3").unwrap(), Ratio::from_integer(3));
        assert_eq!(parse_rational("-1.25").unwrap(), Ratio::new(-5, 4));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn table_p11() {
        let out = table_cmd(&[11]).unwrap();
        let pairs: Vec<(u64, u64)> = out
            .record
            .rows
            .iter()
            .map(|r| (r["a"].as_u64().unwrap(), r["height"].as_u64().unwrap()))
            .collect();
        assert_eq!(pairs, vec![(2, 3), (3, 4), (4, 4), (5, 6), (6, 3), (7, 5), (8, 5), (9, 6)]);
        assert!(table_cmd(&table_range(3, 3)).unwrap().record.rows.is_empty());
    }

    #[test]
    fn input_errors() {
        assert_eq!(height_cmd(4, &[1, 2]).unwrap_err().exit_code(), EXIT_INPUT);
        assert_eq!(height_cmd(7, &[0, 7]).unwrap_err().exit_code(), EXIT_INPUT);
        assert_eq!(cayley_cmd(7, &[0, 1], CayleyFlags::default(), 24).unwrap_err().exit_code(), EXIT_INPUT);
        let flags = CayleyFlags { exact: true, ..Default::default() };
        assert_eq!(cayley_cmd(29, &[1, 2], flags, 24).unwrap_err().exit_code(), EXIT_BUDGET);
        assert_eq!(spectrum_cmd(101, 4, false, 1000).unwrap_err().exit_code(), EXIT_BUDGET);
    }
}
