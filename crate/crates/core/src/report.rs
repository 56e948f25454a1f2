//! Reports: byte-stable JSON plus a plain-text summary.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::checks::{CheckOutcome, CheckResult, CheckStatus, NamedSod};
use crate::poly::Coeff;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Hex SHA-256 of the input bytes.
pub fn digest(input: &[u8]) -> String {
    Sha256::digest(input)
        .iter()
        .fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Pass,
    Fail,
    Underdetermined,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Pass => 0,
            ExitStatus::Fail => 1,
            ExitStatus::Underdetermined => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct Report<C: Coeff> {
    pub version: String,
    pub input_digest: String,
    pub checks: Vec<CheckResult<C>>,
    pub sods: Vec<NamedSod<C>>,
    pub warnings: Vec<String>,
}

impl<C: Coeff> Report<C> {
    pub fn new(input: &[u8], checks: Vec<CheckResult<C>>) -> Self {
        Self {
            version: VERSION.to_string(),
            input_digest: digest(input),
            checks,
            sods: Vec::new(),
            warnings: Vec::new(),
        }
    }

    /// Merges check outcomes in their given order; SODs are keyed by name and
    /// warnings deduplicated, both sorted.
    pub fn from_outcomes(
        input: &[u8],
        outcomes: Vec<CheckOutcome<C>>,
        extra_warnings: &[String],
    ) -> Self {
        let mut checks = Vec::new();
        let mut sods = BTreeMap::new();
        let mut warnings: Vec<String> = extra_warnings.to_vec();
        for o in outcomes {
            checks.extend(o.results);
            for s in o.sods {
                sods.entry(s.name.clone()).or_insert(s);
            }
            warnings.extend(o.warnings);
        }
        warnings.sort();
        warnings.dedup();
        Self {
            sods: sods.into_values().collect(),
            warnings,
            ..Self::new(input, checks)
        }
    }

    /// Fail takes precedence over underdetermined.
    pub fn status(&self) -> ExitStatus {
        if self.checks.iter().any(|c| c.status == CheckStatus::Fail) {
            ExitStatus::Fail
        } else if self
            .checks
            .iter()
            .any(|c| c.status == CheckStatus::Underdetermined)
        {
            ExitStatus::Underdetermined
        } else {
            ExitStatus::Pass
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per check, then SODs and warnings.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let side = |p: &Option<crate::poly::Poly<C>>| {
                p.as_ref()
                    .map_or_else(|| "?".to_string(), |p| p.to_string())
            };
            let _ = write!(
                out,
                "{:<15} {}: lhs = {}, rhs = {}",
                c.status.to_string().to_uppercase(),
                c.name,
                side(&c.lhs),
                side(&c.rhs)
            );
            if let Some(w) = &c.witness {
                let pts: Vec<String> = w.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let at = if pts.is_empty() {
                    "any point".to_string()
                } else {
                    pts.join(", ")
                };
                let _ = write!(out, " (witness: {at})");
            }
            out.push('\n');
        }
        for s in &self.sods {
            let blocks: Vec<String> = s
                .sod
                .blocks
                .iter()
                .map(|b| format!("{}({})", b.invariant, b.twist))
                .collect();
            let _ = writeln!(
                out,
                "sod {} over {}: <{}>",
                s.name,
                s.sod.base,
                blocks.join(", ")
            );
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use num_bigint::BigInt;

    #[test]
    fn digest_is_sha256() {
        assert_eq!(
            digest(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn status_precedence() {
        let pass = CheckResult::<BigInt>::compare("a", Poly::one(), Poly::one(), vec![]);
        let fail = CheckResult::<BigInt>::compare("b", Poly::one(), Poly::zero(), vec![]);
        let und = CheckResult::<BigInt>::underdetermined("c", None, None, vec![]);
        assert_eq!(
            Report::new(b"", vec![pass.clone()]).status(),
            ExitStatus::Pass
        );
        assert_eq!(
            Report::new(b"", vec![pass.clone(), und.clone()]).status(),
            ExitStatus::Underdetermined
        );
        assert_eq!(
            Report::new(b"", vec![und, fail, pass]).status(),
            ExitStatus::Fail
        );
    }

    #[test]
    fn json_key_order() {
        let fail = CheckResult::<BigInt>::compare("b", "e".parse().unwrap(), Poly::zero(), vec![]);
        let json = Report::new(b"x", vec![fail]).to_json();
        let keys = [
            "\"version\"",
            "\"input_digest\"",
            "\"checks\"",
            "\"sods\"",
            "\"warnings\"",
        ];
        let pos: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        assert!(json.contains("\"e\": 1"));
        assert!(json.ends_with("}\n"));
    }
}
