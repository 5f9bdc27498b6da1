//! Report serialization and the human-readable summary.

use std::io::{self, Write};

use cmperiods_core::verify::{Status, VerifyReport};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct CaseJson {
    pub case_id: String,
    pub status: String,
    pub residual_decimal: String,
    pub digits_checked: u32,
    pub details: String,
}

#[derive(Debug, Serialize)]
pub struct Meta {
    pub runtime_ms: u128,
    pub version: String,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub digits: u32,
    pub cases: Vec<CaseJson>,
    pub meta: Meta,
}

impl Report {
    pub fn new(suite: &str, digits: u32, cases: &[VerifyReport], runtime_ms: u128) -> Self {
        Report {
            suite: suite.to_string(),
            digits,
            cases: cases
                .iter()
                .map(|c| CaseJson {
                    case_id: c.case_id.clone(),
                    status: c.status.as_str().to_string(),
                    residual_decimal: c.residual.to_decimal(6),
                    digits_checked: c.digits_checked,
                    details: c.details.clone(),
                })
                .collect(),
            meta: Meta {
                runtime_ms,
                version: env!("CARGO_PKG_VERSION").to_string(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let count = |s: Status| self.cases.iter().filter(|c| c.status == s.as_str()).count();
        (
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Skipped),
        )
    }

    /// Success iff every case passed or was skipped with a stated reason.
    pub fn ok(&self) -> bool {
        self.cases
            .iter()
            .all(|c| c.status == "PASS" || (c.status == "SKIPPED" && !c.details.is_empty()))
    }

    pub fn print_human(&self, out: &mut impl Write) -> io::Result<()> {
        for c in &self.cases {
            writeln!(
                out,
                "{:<7} {:<45} residual {:<12} {}",
                c.status, c.case_id, c.residual_decimal, c.details
            )?;
        }
        let (pass, fail, skip) = self.counts();
        writeln!(
            out,
            "suite {}: {pass} passed, {fail} failed, {skip} skipped at {} digits in {} ms",
            self.suite, self.digits, self.meta.runtime_ms
        )
    }
}
