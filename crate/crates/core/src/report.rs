//! Verification records.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::kernel::{pow10_neg, BigReal, Float, PrecisionContext};
use crate::truncation::TailRule;

/// Outcome of a verification run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportStatus {
    /// Both sides certified to the tolerance and agreeing within it.
    Pass,
    /// Both sides certified, but they differ by more than the tolerance.
    Fail,
    /// At least one side could not be certified to the tolerance.
    Accuracy,
}

impl fmt::Display for ReportStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportStatus::Pass => "pass",
            ReportStatus::Fail => "fail",
            ReportStatus::Accuracy => "accuracy",
        })
    }
}

/// A single identity check: both sides, their difference and the verdict.
///
/// `pass` holds exactly when `abs_diff <= tolerance` and both error bounds
/// are within the tolerance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub parameters: BTreeMap<String, String>,
    pub digits: u32,
    pub lhs: String,
    pub rhs: String,
    pub lhs_err: String,
    pub rhs_err: String,
    pub abs_diff: String,
    pub tolerance: String,
    pub terms_used: u64,
    pub tail_rule: TailRule,
    pub elapsed_ms: u64,
    pub pass: bool,
    pub status: ReportStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Inputs of a comparison, before formatting.
pub struct Comparison<'a> {
    pub identity_id: &'a str,
    pub parameters: Vec<(&'a str, String)>,
    pub lhs: &'a BigReal,
    pub rhs: &'a BigReal,
    pub terms_used: u64,
    pub tail_rule: TailRule,
    pub started: Instant,
}

impl IdentityReport {
    /// Compares at the context's target tolerance `10^-target_digits`.
    pub fn compare(c: Comparison<'_>, ctx: &PrecisionContext) -> Self {
        let tol = pow10_neg(ctx.target_digits, ctx.bits());
        Self::compare_with_tolerance(c, ctx, &tol)
    }

    pub fn compare_with_tolerance(c: Comparison<'_>, ctx: &PrecisionContext, tol: &Float) -> Self {
        let diff = c.lhs.abs_diff(c.rhs);
        let certified = c.lhs.err() <= tol && c.rhs.err() <= tol;
        let agree = diff <= *tol;
        let status = match (certified, agree) {
            (true, true) => ReportStatus::Pass,
            (true, false) => ReportStatus::Fail,
            (false, _) => ReportStatus::Accuracy,
        };
        let sig = ctx.target_digits as usize + 1;
        IdentityReport {
            identity_id: c.identity_id.to_string(),
            parameters: c.parameters.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            digits: ctx.target_digits,
            lhs: c.lhs.to_sci_string(sig),
            rhs: c.rhs.to_sci_string(sig),
            lhs_err: c.lhs.err().to_sci_string(3),
            rhs_err: c.rhs.err().to_sci_string(3),
            abs_diff: diff.to_sci_string(3),
            tolerance: tol.to_sci_string(3),
            terms_used: c.terms_used,
            tail_rule: c.tail_rule,
            elapsed_ms: c.started.elapsed().as_millis() as u64,
            pass: status == ReportStatus::Pass,
            status,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> =
            self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(
            f,
            "{} [{}] {}: |diff| = {} (tol {}), terms {}, tail {}",
            self.identity_id,
            params.join(","),
            self.status,
            self.abs_diff,
            self.tolerance,
            self.terms_used,
            self.tail_rule
        )
    }
}
