//! Verification engine: each check yields a [`VerifyReport`] with a relative residual.

mod constants;
mod remark1;
mod section6;
mod structure;
mod theorem2;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Result;
use crate::numerics::{elementary, relative_residual, BigReal, GammaTable, PrecisionContext};
use crate::quadfield;

pub use constants::{dimension_dk, verify_constants, ConstantsFixture};
pub use remark1::{verify_remark1_instances, ClosedForm, ClosedFormTerm, Remark1Instance};
pub use section6::{run_section6, Section6Data};
pub use structure::{
    chowla_selberg_row, chowla_selberg_suite, conjugation_check, delta_at_i_check, embedding_check,
    padic_suite, qseries_suite, quaternion_suite, Conjugation, CuspTable, EmbeddingRow, NamedForm,
    QSeriesFixture, QuotientTerm, Remark4Row,
};
pub use theorem2::{
    lemma26_holds, verify_axis_relation, verify_cross_consistency, verify_prop27,
    verify_prop27_special, verify_theorem2_row, Family, SpecialPoint, SpecialRow, Theorem2Row,
};

/// Digits of slack between the working precision and the pass threshold.
pub const TOLERANCE_SLACK: u32 = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub case_id: String,
    pub status: Status,
    /// Relative deviation; zero for exact checks that hold.
    pub residual: BigReal,
    pub digits_checked: u32,
    pub details: String,
}

impl VerifyReport {
    /// PASS iff residual < 10^(−digits).
    pub fn numeric(
        case_id: impl Into<String>,
        residual: BigReal,
        digits: u32,
        details: impl Into<String>,
    ) -> Self {
        let pass = crate::numerics::below_decimal(&residual, digits);
        VerifyReport {
            case_id: case_id.into(),
            status: if pass { Status::Pass } else { Status::Fail },
            residual,
            digits_checked: digits,
            details: details.into(),
        }
    }

    /// Exact (zero-tolerance) check; `residual` is informative only.
    pub fn exact(
        case_id: impl Into<String>,
        ok: bool,
        residual: BigReal,
        details: impl Into<String>,
    ) -> Self {
        VerifyReport {
            case_id: case_id.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            residual,
            digits_checked: 0,
            details: details.into(),
        }
    }

    pub fn skipped(case_id: impl Into<String>, reason: impl Into<String>) -> Self {
        VerifyReport {
            case_id: case_id.into(),
            status: Status::Skipped,
            residual: BigReal::zero(64),
            digits_checked: 0,
            details: reason.into(),
        }
    }

    /// Turns an error raised while checking into a FAIL carrying the message.
    pub fn failed(case_id: impl Into<String>, err: &crate::Error) -> Self {
        VerifyReport {
            case_id: case_id.into(),
            status: Status::Fail,
            residual: BigReal::one(64),
            digits_checked: 0,
            details: format!("error: {err}"),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Shared state for a verification run: precision, Gamma coefficients and cached ω_d.
pub struct Verifier {
    ctx: PrecisionContext,
    table: GammaTable,
    omegas: BTreeMap<i64, BigReal>,
}

impl Verifier {
    pub fn new(ctx: PrecisionContext) -> Result<Self> {
        Ok(Verifier {
            ctx,
            table: GammaTable::new(&ctx)?,
            omegas: BTreeMap::new(),
        })
    }

    /// Precomputes ω_d for each discriminant (plus −3 and −4).
    pub fn with_omegas(ctx: PrecisionContext, discriminants: &[i64]) -> Result<Self> {
        let mut v = Self::new(ctx)?;
        for &d in discriminants.iter().chain([-3, -4].iter()) {
            if !v.omegas.contains_key(&d) {
                let w = quadfield::omega_with(&v.table, d)?;
                v.omegas.insert(d, w);
            }
        }
        Ok(v)
    }

    /// Assembles a verifier from ω values computed elsewhere (e.g. in parallel).
    pub fn from_parts(
        ctx: PrecisionContext,
        table: GammaTable,
        omegas: BTreeMap<i64, BigReal>,
    ) -> Self {
        Verifier { ctx, table, omegas }
    }

    pub fn ctx(&self) -> &PrecisionContext {
        &self.ctx
    }

    pub fn table(&self) -> &GammaTable {
        &self.table
    }

    pub fn prec(&self) -> u32 {
        self.ctx.bits()
    }

    /// Pass threshold in decimal digits.
    pub fn tolerance_digits(&self) -> u32 {
        self.ctx.decimal_digits.saturating_sub(TOLERANCE_SLACK)
    }

    pub fn omega(&self, d: i64) -> Result<BigReal> {
        match self.omegas.get(&d) {
            Some(w) => Ok(w.clone()),
            None => quadfield::omega_with(&self.table, d),
        }
    }

    pub fn pi(&self) -> BigReal {
        elementary::pi(self.prec())
    }

    pub(crate) fn report(
        &self,
        case_id: String,
        pairs: &[(&str, &BigReal, &BigReal)],
        extra: &str,
    ) -> VerifyReport {
        let (residual, details) = max_residual(pairs);
        let details = if extra.is_empty() {
            details
        } else {
            format!("{details}; {extra}")
        };
        VerifyReport::numeric(case_id, residual, self.tolerance_digits(), details)
    }
}

/// Largest relative residual over named (lhs, rhs) pairs, with a per-pair summary.
pub(crate) fn max_residual(pairs: &[(&str, &BigReal, &BigReal)]) -> (BigReal, String) {
    let mut worst: Option<BigReal> = None;
    let mut parts: Vec<String> = Vec::new();
    for (name, lhs, rhs) in pairs {
        let r = relative_residual(lhs, rhs);
        parts.push(format!("{name}: {}", r.to_decimal(3)));
        worst = Some(match worst {
            Some(w) if w >= r => w,
            _ => r,
        });
    }
    (worst.unwrap_or_else(|| BigReal::zero(64)), parts.join(", "))
}

/// Wraps a fallible check so that errors become FAIL reports.
pub(crate) fn guard(case_id: &str, f: impl FnOnce() -> Result<VerifyReport>) -> VerifyReport {
    f().unwrap_or_else(|e| VerifyReport::failed(case_id, &e))
}
