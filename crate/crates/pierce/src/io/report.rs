use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::geom::ConvexBody;
use crate::solver::{
    solve_three_lines, solve_two_lines, verify_certificate, DualWitness, PiercingCertificate,
    SolveOptions, SolveOutcome, SolverError,
};
use crate::transversal::HypothesisReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunOutcome {
    Certificate,
    DualWitness,
    Inconclusive,
    HypothesisViolated,
}

/// The machine-readable result of a solve run. Outcome and payload are kept
/// consistent and any certificate is re-verified before the report is built.
/// `timings_ms` is excluded from byte-level determinism comparisons.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub seed: u64,
    pub lines_requested: u32,
    pub outcome: RunOutcome,
    pub hypothesis: Option<HypothesisReport>,
    pub certificate: Option<PiercingCertificate>,
    pub certificate_verified: Option<bool>,
    pub dual_witness: Option<DualWitness>,
    pub best_residual: Option<f64>,
    pub timings_ms: BTreeMap<String, u64>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// JSON with timings cleared, for determinism comparisons.
    pub fn comparable_json(&self) -> String {
        let mut copy = self.clone();
        copy.timings_ms = BTreeMap::new();
        copy.to_json()
    }
}

/// Runs the 2- or 3-line solver on already-converted families and packages
/// the outcome (including hypothesis violations) as a report plus the CLI
/// exit code. Unrecoverable input errors are returned as `Err`.
pub fn run_solve(
    families: &[Vec<ConvexBody>],
    lines: u32,
    options: &SolveOptions,
) -> Result<(RunReport, i32), SolverError> {
    let start = std::time::Instant::now();
    let result = match lines {
        2 => solve_two_lines(families, options),
        3 => solve_three_lines(families, options),
        other => {
            return Err(SolverError::BadFamilyCount {
                max: other as usize,
                got: families.len(),
            })
        }
    };
    let mut report = RunReport {
        seed: options.seed,
        lines_requested: lines,
        outcome: RunOutcome::Inconclusive,
        hypothesis: None,
        certificate: None,
        certificate_verified: None,
        dual_witness: None,
        best_residual: None,
        timings_ms: BTreeMap::new(),
    };
    let exit = match result {
        Ok(run) => {
            report.hypothesis = run.hypothesis;
            report.timings_ms = run.timings_ms;
            match run.outcome {
                SolveOutcome::Certificate(cert) => {
                    let verified = verify_certificate(families, &cert);
                    report.outcome = RunOutcome::Certificate;
                    report.best_residual = Some(cert.residual);
                    report.certificate_verified = Some(verified);
                    report.certificate = Some(cert);
                    if verified {
                        0
                    } else {
                        5
                    }
                }
                SolveOutcome::DualWitness(dual) => {
                    report.outcome = RunOutcome::DualWitness;
                    report.dual_witness = Some(dual);
                    3
                }
                SolveOutcome::Inconclusive {
                    best_residual,
                    best_family: _,
                    best_point: _,
                } => {
                    report.outcome = RunOutcome::Inconclusive;
                    report.best_residual = Some(best_residual);
                    4
                }
            }
        }
        Err(SolverError::HypothesisViolated(hyp)) => {
            report.outcome = RunOutcome::HypothesisViolated;
            report.hypothesis = Some(hyp);
            3
        }
        Err(other) => return Err(other),
    };
    report
        .timings_ms
        .insert("total".into(), start.elapsed().as_millis() as u64);
    Ok((report, exit))
}

/// Extracts a certificate from a serialized report.
pub fn certificate_from_json(text: &str) -> Result<PiercingCertificate, serde_json::Error> {
    let report: RunReport = serde_json::from_str(text)?;
    report.certificate.ok_or_else(|| {
        serde::de::Error::custom("report has no certificate payload")
    })
}

/// Re-checks the self-consistency of a report against an instance: a
/// certificate outcome must re-verify and violation payloads must match the
/// declared outcome.
pub fn report_is_consistent(report: &RunReport, families: &[Vec<ConvexBody>]) -> bool {
    match report.outcome {
        RunOutcome::Certificate => report
            .certificate
            .as_ref()
            .is_some_and(|c| verify_certificate(families, c)),
        RunOutcome::DualWitness => report.dual_witness.is_some(),
        RunOutcome::Inconclusive => report.best_residual.is_some(),
        RunOutcome::HypothesisViolated => report
            .hypothesis
            .as_ref()
            .is_some_and(|h| !h.holds && h.witness_violation.is_some()),
    }
}
