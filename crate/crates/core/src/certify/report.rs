//! Hyperbolicity verdicts, product profiles and the assembled certificate.

use serde::{Deserialize, Serialize};

use super::cone::{ConeConfig, ConeEvidence};
use super::lambda::{exact_degree, lambda1, lambda2_exact, Lambda2Exact};
use super::spectral::{classify_spectrum, SpectralClass, SpectralReport};
use super::transcendence::{transcendence_with_cone, TranscendenceReport};
use super::{cone::cone_condition, Verdict};
use crate::algebra::rational::{int, rat};
use crate::algebra::{RatInterval, Rational};
use crate::error::{Error, Result};
use crate::maps::{degree_bound_fa, IntMat3};
use crate::psi::Lambda1Enclosure;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Hyperbolicity {
    /// `λ_p` strictly exceeds every other dynamical degree.
    Hyperbolic { p: usize },
    /// Certified: no degree strictly exceeds all others.
    None,
    /// Overlapping enclosures.
    Undecidable,
}

/// `p` such that the lower end of `lams[p]` exceeds the upper ends of all
/// the others.
pub fn hyperbolicity(lams: &[RatInterval]) -> Hyperbolicity {
    let others = |p: usize| lams.iter().enumerate().filter(move |(i, _)| *i != p).map(|(_, l)| l);
    for (p, l) in lams.iter().enumerate() {
        if others(p).all(|o| o.hi() < l.lo()) {
            return Hyperbolicity::Hyperbolic { p };
        }
    }
    // `p` is ruled out once some other degree is certainly at least `λ_p`.
    let ruled_out = |p: usize| others(p).any(|o| lams[p].hi() <= o.lo());
    if (0..lams.len()).all(ruled_out) {
        Hyperbolicity::None
    } else {
        Hyperbolicity::Undecidable
    }
}

/// Degrees `(1, μ, …, μ, ν, 1)` of the `d`-dimensional product construction.
pub fn product_profile(mu: &RatInterval, nu: &RatInterval, d: usize) -> Result<Vec<RatInterval>> {
    if d < 3 {
        return Err(Error::InvalidInput(format!("profile dimension {d} < 3")));
    }
    if !(nu.lo() > &int(1) && nu.hi() < mu.lo()) {
        return Err(Error::HypothesisFailed(format!("1 < ν < μ not certified for ν = {nu}, μ = {mu}")));
    }
    let one = RatInterval::from_int(1);
    let mut out = vec![one.clone()];
    out.extend(std::iter::repeat_n(mu.clone(), d - 2));
    out.push(nu.clone());
    out.push(one);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportConfig {
    pub cone: ConeConfig,
    pub eps: Rational,
    pub profile_dims: Vec<usize>,
    /// Number of times `eps` is divided by 1000 when the verdict is undecided.
    pub refine_budget: u32,
}

impl Default for ReportConfig {
    fn default() -> Self {
        Self {
            cone: ConeConfig::default(),
            eps: rat(1, 1_000_000),
            profile_dims: vec![],
            refine_budget: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    #[serde(with = "crate::serde_rat::rational")]
    pub eps: Rational,
    pub moduli: (u64, u64),
    pub step_cap: u64,
    pub baker_target: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lambda1Entry {
    #[serde(with = "crate::serde_rat::interval")]
    pub bounds: RatInterval,
    /// `certified` for a series enclosure, `bracket` for `[1, deg f]`.
    pub status: String,
    pub enclosure: Option<Lambda1Enclosure>,
    pub exact: Option<Lambda2Exact>,
    pub transcendence: TranscendenceReport,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lambda2Entry {
    #[serde(with = "crate::serde_rat::interval")]
    pub bounds: RatInterval,
    pub status: String,
    pub polynomial: Option<String>,
    pub exact: Option<Lambda2Exact>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lambdas {
    pub l0: String,
    pub l1: Lambda1Entry,
    pub l2: Lambda2Entry,
    pub l3: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Profile {
    pub d: usize,
    #[serde(with = "crate::serde_rat::interval_vec")]
    pub degrees: Vec<RatInterval>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub meta: Meta,
    pub matrix: IntMat3,
    pub spectral_class: SpectralReport,
    pub inverse_spectral_class: SpectralReport,
    pub lambda: Lambdas,
    pub cone_evidence: ConeEvidence,
    pub hyperbolicity: Hyperbolicity,
    pub profiles: Vec<Profile>,
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes") + "\n"
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("certificate: {e}")))
    }

    pub fn lambdas(&self) -> [RatInterval; 4] {
        let one = RatInterval::from_int(1);
        [one.clone(), self.lambda.l1.bounds.clone(), self.lambda.l2.bounds.clone(), one]
    }
}

fn bracket(a: &IntMat3) -> RatInterval {
    RatInterval::new(int(1), int(degree_bound_fa(a))).expect("degree bound is at least 1")
}

fn l1_entry(a: &IntMat3, class: SpectralClass, cone: &ConeEvidence, eps: &Rational) -> Lambda1Entry {
    let transcendence = transcendence_with_cone(a, cone);
    let mut entry = Lambda1Entry {
        bounds: bracket(a),
        status: "bracket".into(),
        enclosure: None,
        exact: None,
        transcendence,
        note: None,
    };
    match lambda1(a, cone, eps) {
        Ok(e) => {
            entry.bounds = e.interval.clone();
            entry.status = "certified".into();
            entry.enclosure = Some(e);
        }
        Err(err) => entry.note = Some(format!("λ₁ ∈ [1, deg f] only: {err}")),
    }
    if class == SpectralClass::PerronReal {
        match exact_degree(a, eps) {
            Ok(x) => {
                entry.bounds = x.root.clone();
                entry.status = "exact".into();
                entry.exact = Some(x);
            }
            Err(err) => entry.note = Some(format!("no exact form: {err}")),
        }
    }
    entry
}

fn l2_entry(a: &IntMat3, eps: &Rational) -> Lambda2Entry {
    let inv = a.inverse().expect("det ±1");
    match lambda2_exact(a, eps) {
        Ok(x) => Lambda2Entry {
            bounds: x.root.clone(),
            status: "exact".into(),
            polynomial: Some(x.polynomial.clone()),
            exact: Some(x),
            note: None,
        },
        Err(err) => Lambda2Entry {
            bounds: bracket(&inv),
            status: "bracket".into(),
            polynomial: None,
            exact: None,
            note: Some(format!("λ₂ ∈ [1, deg f⁻¹] only: {err}")),
        },
    }
}

/// Everything known about `f_A`. Sub-failures leave bracket-only or
/// unknown fields instead of aborting.
pub fn full_report(a: &IntMat3, cfg: &ReportConfig) -> Certificate {
    let spec = classify_spectrum(a);
    let inv = a.inverse().expect("det ±1");
    let inv_spec = classify_spectrum(&inv);
    let cone = cone_condition(a, &cfg.cone);
    let mut eps = cfg.eps.clone();
    let mut l1 = l1_entry(a, spec.class, &cone, &eps);
    let mut l2 = l2_entry(a, &eps);
    let one = RatInterval::from_int(1);
    let lams = |l1: &Lambda1Entry, l2: &Lambda2Entry| [one.clone(), l1.bounds.clone(), l2.bounds.clone(), one.clone()];
    let mut hyp = hyperbolicity(&lams(&l1, &l2));
    let mut notes = vec![];
    let mut budget = cfg.refine_budget;
    while hyp == Hyperbolicity::Undecidable && budget > 0 && (l1.status != "bracket" || l2.status != "bracket") {
        eps /= int(1000);
        budget -= 1;
        notes.push(format!("undecided; refined eps to {eps}"));
        l1 = l1_entry(a, spec.class, &cone, &eps);
        l2 = l2_entry(a, &eps);
        hyp = hyperbolicity(&lams(&l1, &l2));
    }
    if let Some(r) = &spec.reason {
        notes.push(format!("spectrum of A: {r}"));
    }
    let mut profiles = vec![];
    for &d in &cfg.profile_dims {
        match product_profile(&l1.bounds, &l2.bounds, d) {
            Ok(degrees) => profiles.push(Profile { d, degrees }),
            Err(err) => notes.push(format!("profile d = {d}: {err}")),
        }
    }
    Certificate {
        meta: Meta {
            tool: "dyndeg".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            eps,
            moduli: (*cfg.cone.moduli.start(), *cfg.cone.moduli.end()),
            step_cap: cfg.cone.step_cap,
            baker_target: cfg.cone.baker_target.as_ref().map(|t| t.to_string()),
        },
        matrix: *a,
        spectral_class: spec,
        inverse_spectral_class: inv_spec,
        lambda: Lambdas {
            l0: "1".into(),
            l1,
            l2,
            l3: "1".into(),
        },
        cone_evidence: cone,
        hyperbolicity: hyp,
        profiles,
        notes,
    }
}

impl Certificate {
    /// Overall verdict of the transcendence hypotheses.
    pub fn transcendence(&self) -> Verdict {
        self.lambda.l1.transcendence.overall
    }
}
