//! Built-in example cases with stored golden reports.

use std::fmt;

use crate::checks::{run_all, CheckConfig, CheckResult};
use crate::dsl::{load, DslError, ValidateOptions};
use crate::error::Error;
use crate::poly::Poly;
use crate::report::Report;
use crate::Integer;

#[derive(Debug, Clone, Copy)]
pub struct CatalogCase {
    pub name: &'static str,
    pub source: &'static str,
    pub golden: &'static str,
}

macro_rules! case {
    ($name:literal) => {
        CatalogCase {
            name: $name,
            source: include_str!(concat!("../catalog/", $name, ".hpd")),
            golden: include_str!(concat!("../catalog/", $name, ".golden.json")),
        }
    };
}

pub const CASES: &[CatalogCase] = &[
    case!("gr25-join"),
    case!("points-line"),
    case!("three-points-plane"),
    case!("cone-point"),
    case!("cone-gr25"),
    case!("astar-pl-empty"),
    case!("astar-pl-base"),
    case!("gr25-dual"),
    case!("join-linear-points"),
];

pub fn case(name: &str) -> Option<&'static CatalogCase> {
    CASES.iter().find(|c| c.name == name)
}

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog case `{0}`")]
    Unknown(String),
    #[error("catalog case `{case}`: {source}")]
    Dsl { case: String, source: DslError },
    #[error("catalog case `{case}`: {source}")]
    Model { case: String, source: Error },
}

/// Report of one case on its own, exactly as stored in the golden file.
pub fn case_report(case: &CatalogCase, cfg: &CheckConfig) -> Result<Report<Integer>, CatalogError> {
    let ws = load::<Integer>(case.source, ValidateOptions::default()).map_err(|source| {
        CatalogError::Dsl {
            case: case.name.into(),
            source,
        }
    })?;
    let outcomes = run_all(&ws, cfg).map_err(|source| CatalogError::Model {
        case: case.name.into(),
        source,
    })?;
    Ok(Report::from_outcomes(
        case.source.as_bytes(),
        outcomes,
        ws.warnings(),
    ))
}

/// First differing line between two texts, 1-based.
pub fn first_difference(a: &str, b: &str) -> Option<(usize, String, String)> {
    let mut la = a.lines();
    let mut lb = b.lines();
    let mut n = 0;
    loop {
        n += 1;
        match (la.next(), lb.next()) {
            (None, None) => return None,
            (x, y) if x == y => continue,
            (x, y) => {
                return Some((
                    n,
                    x.unwrap_or("<end>").to_string(),
                    y.unwrap_or("<end>").to_string(),
                ))
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct CaseRun {
    pub name: &'static str,
    pub report: Report<Integer>,
    pub json: String,
    pub golden: CheckResult<Integer>,
}

impl CaseRun {
    pub fn matches_golden(&self) -> bool {
        self.golden.passed()
    }

    pub fn passed(&self) -> bool {
        self.matches_golden() && self.report.status() == crate::report::ExitStatus::Pass
    }
}

/// Runs a case and compares its JSON with the stored golden text.
///
/// The golden comparison is reported as a check whose left side counts
/// differing lines.
pub fn run_case(case: &'static CatalogCase, cfg: &CheckConfig) -> Result<CaseRun, CatalogError> {
    let report = case_report(case, cfg)?;
    let json = report.to_json();
    let golden_name = format!("{}.golden", case.name);
    let golden = match first_difference(&json, case.golden) {
        None => CheckResult::compare(golden_name, Poly::zero(), Poly::zero(), Vec::new()),
        Some((line, got, want)) => {
            let differing = json
                .lines()
                .zip(case.golden.lines())
                .filter(|(a, b)| a != b)
                .count()
                + json.lines().count().abs_diff(case.golden.lines().count());
            CheckResult::compare(
                golden_name,
                Poly::int(differing as i64),
                Poly::zero(),
                vec![format!(
                    "line {line}: got `{}`, stored `{}`",
                    got.trim(),
                    want.trim()
                )],
            )
        }
    };
    Ok(CaseRun {
        name: case.name,
        report,
        json,
        golden,
    })
}

/// Runs the named case, or every case when `name` is `None`, and merges the
/// results into one report. Check names are prefixed with the case name.
pub fn run_catalog(
    name: Option<&str>,
    cfg: &CheckConfig,
) -> Result<(Report<Integer>, Vec<CaseRun>), CatalogError> {
    let cases: Vec<&'static CatalogCase> = match name {
        Some(n) => vec![case(n).ok_or_else(|| CatalogError::Unknown(n.to_string()))?],
        None => CASES.iter().collect(),
    };
    let runs = cases
        .into_iter()
        .map(|c| run_case(c, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let mut input = Vec::new();
    let mut checks = Vec::new();
    let mut sods = Vec::new();
    let mut warnings = Vec::new();
    for run in &runs {
        input.extend_from_slice(case(run.name).map_or("", |c| c.source).as_bytes());
        for c in &run.report.checks {
            let mut c = c.clone();
            c.name = format!("{}: {}", run.name, c.name);
            checks.push(c);
        }
        checks.push(run.golden.clone());
        for s in &run.report.sods {
            let mut s = s.clone();
            s.name = format!("{}: {}", run.name, s.name);
            sods.push(s);
        }
        warnings.extend(
            run.report
                .warnings
                .iter()
                .map(|w| format!("{}: {w}", run.name)),
        );
    }
    let mut report = Report::new(&input, checks);
    report.sods = sods;
    report.warnings = warnings;
    Ok((report, runs))
}

impl fmt::Display for CaseRun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "ok" } else { "FAILED" };
        write!(f, "{}: {status}", self.name)
    }
}
