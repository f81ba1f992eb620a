//! Identity registry, verification runner and JSON reports.

pub mod cli;
mod eval;
mod registry;

use std::time::Instant;

use rayon::prelude::*;
use rug::Float;
use serde::{Deserialize, Serialize};

pub use eval::{BinomialSign, ClosedFamily, Evaluator, Mu2Form, OracleFamily, Side, Value};
pub use registry::{Identity, IdentityKind, Registry, TolerancePolicy, REGISTRY_VERSION};

use crate::error::{Error, Result};
use crate::mpcore::{fmt_float, make_context, PrecisionContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    /// The sides differ: expected for `refuted_expected` entries, a violation for inequalities.
    Refuted,
    /// An exact or conjectured identity whose sides differ by more than the tolerance.
    Mismatch,
    PrecisionExhausted,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub id: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub abs_diff: String,
    pub digits: u32,
    pub elapsed_seconds: f64,
    pub anchor: String,
    /// Error bar of the left side when it comes from quadrature or sampling.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs_error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl Report {
    /// Whether this report counts as a pass for its identity kind.
    pub fn passed(&self, kind: IdentityKind) -> bool {
        match kind {
            IdentityKind::RefutedExpected => self.status == Status::Refuted,
            _ => self.status == Status::Verified,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> Result<Report> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub verified: usize,
    pub refuted: usize,
    pub mismatch: usize,
    pub precision_exhausted: usize,
    pub error: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub reports: Vec<Report>,
    pub summary: Summary,
}

impl SuiteReport {
    /// `0` when every check passed, `3` when the only failures are precision
    /// exhaustion, `1` otherwise.
    pub fn exit_code(&self) -> i32 {
        let s = &self.summary;
        if s.failed == 0 {
            0
        } else if s.failed == s.precision_exhausted {
            3
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOptions {
    pub parallelism: usize,
    pub include_conjectures: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { parallelism: 1, include_conjectures: false }
    }
}

fn sci(x: &Float) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.to_string_radix(10, Some(6))
}

fn outcome(
    identity: &Identity,
    ctx: &PrecisionContext,
    digits: u32,
) -> Result<(Status, String, String, String, Option<String>)> {
    let l = identity.lhs.evaluate(ctx)?;
    let r = identity.rhs.evaluate(ctx)?;
    let lhs_error = l.error().map(sci);
    if identity.kind == IdentityKind::Symbolic {
        let (Value::Symbolic(a), Value::Symbolic(b)) = (&l, &r) else {
            return Err(Error::Registry(format!("identity `{}` compares non-symbolic values", identity.id)));
        };
        let status = if a == b { Status::Verified } else { Status::Mismatch };
        let d = cexpr_diff(a, b);
        return Ok((status, a.to_string(), b.to_string(), d, None));
    }
    let a = l.to_float(ctx)?;
    let b = r.to_float(ctx)?;
    let diff = Float::with_val(ctx.prec(), &a - &b).abs();
    let tol = identity.tolerance.tolerance(digits);
    let status = match identity.kind {
        IdentityKind::Inequality => {
            if a <= b {
                Status::Verified
            } else {
                Status::Refuted
            }
        }
        IdentityKind::RefutedExpected => {
            let gap = identity.min_gap.unwrap_or(0.0);
            if diff >= gap {
                Status::Refuted
            } else if diff <= tol {
                Status::Verified
            } else {
                Status::Mismatch
            }
        }
        _ => {
            if diff <= tol {
                Status::Verified
            } else {
                Status::Mismatch
            }
        }
    };
    let shown = ctx.target_digits as usize;
    Ok((status, fmt_float(&a, shown), fmt_float(&b, shown), sci(&diff), lhs_error))
}

fn cexpr_diff(a: &crate::symconst::ConstExpr, b: &crate::symconst::ConstExpr) -> String {
    if a == b {
        "0".into()
    } else {
        a.sub(b).to_string()
    }
}

/// Evaluates both sides of one identity at `digits` target digits.
pub fn run_entry(identity: &Identity, digits: u32) -> Report {
    let start = Instant::now();
    let eval_digits = identity.max_digits.map_or(digits, |m| m.min(digits));
    let result = make_context(eval_digits).and_then(|ctx| outcome(identity, &ctx, digits));
    let elapsed_seconds = start.elapsed().as_secs_f64();
    let mut report = Report {
        id: identity.id.clone(),
        status: Status::Error,
        lhs: String::new(),
        rhs: String::new(),
        abs_diff: String::new(),
        digits,
        elapsed_seconds,
        anchor: identity.anchor.clone(),
        lhs_error: None,
        message: None,
    };
    match result {
        Ok((status, lhs, rhs, abs_diff, lhs_error)) => {
            report.status = status;
            report.lhs = lhs;
            report.rhs = rhs;
            report.abs_diff = abs_diff;
            report.lhs_error = lhs_error;
        }
        Err(e) => {
            report.status = if e.is_precision_exhausted() { Status::PrecisionExhausted } else { Status::Error };
            report.message = Some(e.to_string());
        }
    }
    report
}

/// Runs one registered identity with the context's target digits.
pub fn run_identity(id: &str, ctx: &PrecisionContext) -> Result<Report> {
    let registry = Registry::builtin()?;
    let identity = registry.get(id)?;
    Ok(run_entry(identity, ctx.target_digits))
}

/// Runs every identity matching `filter` (`"all"`, a tag, or an id). Conjecture
/// entries run only when `include_conjectures` is set. Reports come back in
/// registry order whatever the parallelism.
pub fn run_suite(filter: &str, ctx: &PrecisionContext, options: &SuiteOptions) -> Result<SuiteReport> {
    run_suite_in(&Registry::builtin()?, filter, ctx, options)
}

pub fn run_suite_in(
    registry: &Registry,
    filter: &str,
    ctx: &PrecisionContext,
    options: &SuiteOptions,
) -> Result<SuiteReport> {
    if options.parallelism == 0 {
        return Err(Error::invalid("parallelism must be positive"));
    }
    let selected: Vec<&Identity> = registry
        .identities
        .iter()
        .filter(|i| i.matches(filter) && (options.include_conjectures || !i.is_conjecture()))
        .collect();
    let digits = ctx.target_digits;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.parallelism)
        .build()
        .map_err(|e| Error::invalid(format!("cannot build thread pool: {e}")))?;
    let reports: Vec<Report> = pool.install(|| selected.par_iter().map(|i| run_entry(i, digits)).collect());
    let mut summary = Summary { total: reports.len(), ..Summary::default() };
    for (r, i) in reports.iter().zip(&selected) {
        match r.status {
            Status::Verified => summary.verified += 1,
            Status::Refuted => summary.refuted += 1,
            Status::Mismatch => summary.mismatch += 1,
            Status::PrecisionExhausted => summary.precision_exhausted += 1,
            Status::Error => summary.error += 1,
        }
        if r.passed(i.kind) {
            summary.passed += 1;
        } else {
            summary.failed += 1;
        }
    }
    Ok(SuiteReport { reports, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_examples() {
        let ctx = make_context(20).unwrap();
        let r = run_identity("ls-pi-n4", &ctx).unwrap();
        assert_eq!(r.status, Status::Verified, "{r:?}");
        let r = run_identity("mu2-1pxy-disproof", &ctx).unwrap();
        assert_eq!(r.status, Status::Refuted, "{r:?}");
        let d: f64 = r.abs_diff.parse().unwrap();
        assert!((d - 0.4945).abs() < 1e-4, "{d}");
        let r = run_identity("parseval-cl2", &ctx).unwrap();
        assert_eq!(r.status, Status::Verified, "{r:?}");
        assert!(matches!(run_identity("no-such-id", &ctx), Err(Error::UnknownIdentity(_))));
    }

    #[test]
    fn report_json_round_trip() {
        let ctx = make_context(15).unwrap();
        let r = run_identity("ls-pi-n4", &ctx).unwrap();
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for key in ["id", "status", "lhs", "rhs", "abs_diff", "digits", "elapsed_seconds", "anchor"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn filters_and_determinism() {
        let ctx = make_context(15).unwrap();
        let one = run_suite("section-5", &ctx, &SuiteOptions { parallelism: 1, include_conjectures: false }).unwrap();
        let many = run_suite("section-5", &ctx, &SuiteOptions { parallelism: 8, include_conjectures: false }).unwrap();
        assert!(one.summary.total >= 8);
        assert_eq!(one.summary, many.summary);
        for (a, b) in one.reports.iter().zip(&many.reports) {
            assert_eq!((&a.id, &a.lhs, &a.rhs, a.status), (&b.id, &b.lhs, &b.rhs, b.status));
        }
        assert_eq!(one.exit_code(), 0);
        let reg = Registry::builtin().unwrap();
        for r in &one.reports {
            assert!(reg.get(&r.id).unwrap().tags.iter().any(|t| t == "section-5"));
        }
        let conj = run_suite("conjecture", &ctx, &SuiteOptions::default()).unwrap();
        assert_eq!(conj.summary.total, 0);
        assert!(run_suite("all", &ctx, &SuiteOptions { parallelism: 0, include_conjectures: false }).is_err());
    }
}
