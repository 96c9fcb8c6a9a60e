//! Uniform check records shared by every verification routine.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub param: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckRecord {
    pub fn new(
        check: impl Into<String>,
        param: impl Into<String>,
        pass: bool,
        detail: impl Into<String>,
    ) -> Self {
        CheckRecord {
            check: check.into(),
            param: param.into(),
            pass,
            detail: detail.into(),
        }
    }

    /// Exact check: passes iff the residual printout is `0`.
    pub fn residual(check: impl Into<String>, param: impl Into<String>, residual: String) -> Self {
        let pass = residual == "0";
        Self::new(check, param, pass, residual)
    }

    /// Numeric check against a tolerance.
    pub fn numeric(
        check: impl Into<String>,
        param: impl Into<String>,
        value: f64,
        tol: f64,
    ) -> Self {
        Self::new(
            check,
            param,
            value.abs() < tol,
            format!("{value:.3e} (tol {tol:.0e})"),
        )
    }
}

pub fn all_pass(records: &[CheckRecord]) -> bool {
    records.iter().all(|r| r.pass)
}

/// Fixed-width text table.
pub fn render_text(records: &[CheckRecord]) -> String {
    let w_check = records
        .iter()
        .map(|r| r.check.len())
        .max()
        .unwrap_or(5)
        .max(5);
    let w_param = records
        .iter()
        .map(|r| r.param.len())
        .max()
        .unwrap_or(5)
        .max(5);
    let mut out = format!(
        "{:<w_check$}  {:<w_param$}  {:<4}  detail\n",
        "check", "param", "pass"
    );
    for r in records {
        let detail = if r.detail.len() > 100 {
            format!(
                "{}...",
                &r.detail[..r
                    .detail
                    .char_indices()
                    .nth(97)
                    .map_or(r.detail.len(), |(i, _)| i)]
            )
        } else {
            r.detail.clone()
        };
        out.push_str(&format!(
            "{:<w_check$}  {:<w_param$}  {:<4}  {}\n",
            r.check,
            r.param,
            if r.pass { "ok" } else { "FAIL" },
            detail
        ));
    }
    out
}
