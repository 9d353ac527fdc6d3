//! End-to-end certification: spectral class, cone condition, transcendence
//! hypotheses, λ₁ and λ₂, hyperbolicity and the assembled certificate.

pub mod cone;
pub mod lambda;
pub mod recheck;
pub mod report;
pub mod spectral;
pub mod transcendence;

use serde::{Deserialize, Serialize};

pub use cone::{cone_condition, ConeConfig, ConeEvidence, SequenceCert, SequenceEvidence, SequenceSet};
pub use lambda::{lambda1, lambda2_exact, Lambda2Exact};
pub use recheck::{verify, VerifyReport};
pub use report::{full_report, hyperbolicity, product_profile, Certificate, Hyperbolicity};
pub use spectral::{classify_spectrum, SpectralClass, SpectralReport};
pub use transcendence::{sigma, transcendence_conditions, transcendence_with_cone, PairChoice, TranscendenceReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
}

impl Verdict {
    /// Conjunction: any failure fails, otherwise any unknown is unknown.
    pub fn and(self, o: Verdict) -> Verdict {
        match (self, o) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Unknown, _) | (_, Verdict::Unknown) => Verdict::Unknown,
            _ => Verdict::Pass,
        }
    }

    pub fn all(vs: impl IntoIterator<Item = Verdict>) -> Verdict {
        vs.into_iter().fold(Verdict::Pass, Verdict::and)
    }

    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Process exit code: 0 pass, 1 certified failure, 2 unknown.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Unknown => 2,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Unknown => "UNKNOWN",
        })
    }
}

/// A verdict with a one-line justification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub verdict: Verdict,
    pub detail: String,
}

impl Check {
    pub fn new(verdict: Verdict, detail: impl Into<String>) -> Self {
        Self {
            verdict,
            detail: detail.into(),
        }
    }
}
