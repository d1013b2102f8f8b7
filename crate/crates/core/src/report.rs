//! Verdicts with counterexample witnesses.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// An input tuple on which a checked identity fails.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Witness {
    /// Name of the identity that failed.
    pub identity: String,
    /// Positions of the inputs in the enumeration (basis or test family).
    pub indices: Vec<usize>,
    /// Human-readable rendering of the inputs.
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    pub fn new(
        identity: impl Into<String>,
        indices: Vec<usize>,
        inputs: Vec<String>,
        lhs: impl ToString,
        rhs: impl ToString,
    ) -> Self {
        Witness {
            identity: identity.into(),
            indices,
            inputs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

/// Outcome of a check. A failing report always carries a witness.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub certificate: String,
}

impl CheckReport {
    pub fn pass(check: impl Into<String>, certificate: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            verdict: Verdict::Pass,
            witness: None,
            certificate: certificate.into(),
        }
    }

    pub fn fail(check: impl Into<String>, witness: Witness, certificate: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            verdict: Verdict::Fail,
            witness: Some(witness),
            certificate: certificate.into(),
        }
    }

    /// Pass if `witness` is `None`, otherwise fail with it.
    pub fn from_witness(
        check: impl Into<String>,
        witness: Option<Witness>,
        certificate: impl Into<String>,
    ) -> Self {
        match witness {
            None => Self::pass(check, certificate),
            Some(w) => Self::fail(check, w, certificate),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub(crate) fn with_witness_info(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }
}

/// Evaluates `probe` on `0..count` (possibly in parallel) and returns the
/// witness with the smallest index, so the result does not depend on the
/// schedule.
pub fn first_witness<F>(count: usize, probe: F) -> Option<Witness>
where
    F: Fn(usize) -> Option<Witness> + Sync + Send,
{
    (0..count).into_par_iter().find_map_first(probe)
}

/// Runs a sequence of named stages and stops at the first failing one. The
/// combined certificate lists every stage that was reached.
pub(crate) struct StagedCheck {
    check: String,
    passed: Vec<String>,
}

impl StagedCheck {
    pub fn new(check: impl Into<String>) -> Self {
        StagedCheck {
            check: check.into(),
            passed: Vec::new(),
        }
    }

    /// Records a stage; returns the failing report if the stage failed.
    pub fn stage(&mut self, stage: &CheckReport) -> Option<CheckReport> {
        if stage.passed() {
            self.passed.push(stage.certificate.clone());
            None
        } else {
            let mut cert = self.passed.clone();
            cert.push(format!("FAILED: {}", stage.certificate));
            Some(CheckReport {
                check: self.check.clone(),
                verdict: Verdict::Fail,
                witness: stage.witness.clone(),
                certificate: cert.join("; "),
            })
        }
    }

    pub fn finish(self) -> CheckReport {
        CheckReport::pass(self.check, self.passed.join("; "))
    }
}

/// Combines a check with an independently computed verdict for the same
/// statement. Returns `primary` when the two agree; otherwise a failing
/// report that names the disagreement.
pub fn cross_checked(primary: CheckReport, independent: &CheckReport) -> CheckReport {
    if primary.verdict == independent.verdict {
        return primary;
    }
    let witness = primary
        .witness
        .clone()
        .or_else(|| independent.witness.clone())
        .expect("one of two disagreeing reports fails and carries a witness");
    CheckReport::fail(
        primary.check.clone(),
        witness,
        format!(
            "cross-check disagreement: {} says {:?} ({}), {} says {:?} ({})",
            primary.check,
            primary.verdict,
            primary.certificate,
            independent.check,
            independent.verdict,
            independent.certificate
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_witness_is_deterministic() {
        for _ in 0..20 {
            let w = first_witness(10_000, |i| {
                (i % 997 == 3).then(|| Witness::new("id", vec![i], vec![], 1, 0))
            });
            assert_eq!(w.unwrap().indices, vec![3]);
        }
        assert!(first_witness(0, |_| None).is_none());
    }

    #[test]
    fn report_json_shape() {
        let r = CheckReport::fail(
            "leibniz",
            Witness::new("jacobi", vec![0, 1, 1], vec!["e1".into()], "(1)", "(0)"),
            "checked 8 triples",
        );
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["verdict"], "fail");
        assert_eq!(v["witness"]["indices"][2], 1);
        let back: CheckReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn staged_stops_at_first_failure() {
        let mut s = StagedCheck::new("combo");
        assert!(s.stage(&CheckReport::pass("a", "a ok")).is_none());
        let w = Witness::new("b", vec![1], vec![], 1, 2);
        let failed = s
            .stage(&CheckReport::fail("b", w.clone(), "b broke"))
            .unwrap();
        assert!(!failed.passed());
        assert_eq!(failed.witness, Some(w));
        assert!(failed.certificate.contains("a ok"));
        assert!(failed.certificate.contains("FAILED: b broke"));
    }
}
