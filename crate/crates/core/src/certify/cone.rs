//! The cone condition: every `Aⁿv` (`n >= 1`, `v ∈ 𝒱 ∪ 𝒫`) satisfies the
//! six-inequality predicate.
//!
//! A real dominant eigenvalue gives an analytic margin. A dominant complex
//! pair needs the 36 sequences `⟨w, Aⁿv⟩` to be zero-free for `n >= 1`,
//! certified modulo small integers and, for sequences starting at 0, by an
//! lcm of periods beyond the Baker bound.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::spectral::{classify_spectrum, SpectralClass};
use super::{Check, Verdict};
use crate::algebra::rational::rat;
use crate::algebra::Rational;
use crate::maps::IntMat3;
use crate::psi::{star_test, Vec3, CONE_FUNCTIONALS, CONE_VECTORS};
use crate::recur::linrec::{LcmCert, LinRec3, ModCert};
use crate::recur::{
    certify_never_zero, certify_zero_only_at_start, dominant_cone_cert, seq_from_pair, BakerBound, BakerContext,
    EigenData, PerronConeCert, PerronConeOutcome, PerronData, DEFAULT_STEP_CAP,
};

/// Number of iterates checked exactly before any analytic argument.
pub const EXACT_PREFIX: u64 = 32;

/// Floor for the lcm target of zero-start sequences.
pub fn default_report_target() -> BigInt {
    BigInt::from(7) * BigInt::from(10).pow(18)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeConfig {
    pub moduli: RangeInclusive<u64>,
    pub step_cap: u64,
    /// Replaces the default lcm target floor; the Baker bound still applies.
    pub baker_target: Option<BigInt>,
    pub eps: Rational,
}

impl Default for ConeConfig {
    fn default() -> Self {
        Self {
            moduli: 5..=1999,
            step_cap: DEFAULT_STEP_CAP,
            baker_target: None,
            eps: rat(1, 1_000_000),
        }
    }
}

impl ConeConfig {
    pub fn target_floor(&self) -> BigInt {
        self.baker_target.clone().unwrap_or_else(default_report_target)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SequenceCert {
    /// No residue in a full period vanishes.
    NeverZero(ModCert),
    /// Zeros can only sit at multiples of an lcm larger than the Baker bound.
    ZeroOnlyAtStart(LcmCert),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceEvidence {
    /// `6·i + j + 1` for `v = CONE_VECTORS[i]`, `w = CONE_FUNCTIONALS[j]`.
    pub index: usize,
    pub v: Vec3,
    pub w: Vec3,
    pub seq: LinRec3,
    /// All three eigen-coefficients are nonzero.
    pub coeffs_nonzero: bool,
    /// `c₁ ≠ -c₂`.
    pub pair_sum_nonzero: bool,
    pub baker: Option<BakerBound>,
    pub cert: Option<SequenceCert>,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceSet {
    pub rec: [i64; 3],
    pub exact_prefix: u64,
    pub moduli: (u64, u64),
    pub step_cap: u64,
    #[serde(with = "crate::serde_rat::bigint")]
    pub target_floor: BigInt,
    pub baker: Option<BakerContext>,
    pub sequences: Vec<SequenceEvidence>,
}

impl SequenceSet {
    pub fn failing(&self) -> Vec<usize> {
        self.sequences.iter().filter(|s| s.cert.is_none()).map(|s| s.index).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConeEvidence {
    Perron { cert: PerronConeCert },
    Sequences(SequenceSet),
    /// `Aⁿv` violates the predicate.
    Fails { n: u64, v: Vec3 },
    Unknown { reason: String },
    /// Not evaluated.
    Skipped,
}

impl ConeEvidence {
    pub fn verdict(&self) -> Verdict {
        match self {
            ConeEvidence::Perron { .. } => Verdict::Pass,
            ConeEvidence::Sequences(s) if s.failing().is_empty() => Verdict::Pass,
            ConeEvidence::Fails { .. } => Verdict::Fail,
            _ => Verdict::Unknown,
        }
    }

    pub fn check(&self) -> Check {
        let detail = match self {
            ConeEvidence::Perron { cert } => {
                format!("dominant real eigenvalue; analytic margin from n = {}", cert.onset())
            }
            ConeEvidence::Sequences(s) => {
                let bad = s.failing();
                if bad.is_empty() {
                    format!("all {} sequences certified zero-free for n >= 1", s.sequences.len())
                } else {
                    format!("sequences {bad:?} not certified")
                }
            }
            ConeEvidence::Fails { n, v } => format!("A^{n}·{v:?} violates the cone predicate"),
            ConeEvidence::Unknown { reason } => reason.clone(),
            ConeEvidence::Skipped => "not evaluated".into(),
        };
        Check::new(self.verdict(), detail)
    }
}

/// First `n` in `1..=count` with `Aⁿv` outside the cone, for any listed `v`.
pub fn exact_prefix_failure(a: &IntMat3, vectors: &[Vec3], count: u64) -> Option<(u64, Vec3)> {
    let mut first: Option<(u64, Vec3)> = None;
    for v in vectors {
        let mut x = v.map(BigInt::from);
        for n in 1..=count {
            x = a.apply(&x);
            if !star_test(&x) {
                if first.is_none_or(|(m, _)| n < m) {
                    first = Some((n, *v));
                }
                break;
            }
        }
    }
    first
}

pub fn cone_condition(a: &IntMat3, cfg: &ConeConfig) -> ConeEvidence {
    if let Some((n, v)) = exact_prefix_failure(a, &CONE_VECTORS, EXACT_PREFIX) {
        return ConeEvidence::Fails { n, v };
    }
    let spec = classify_spectrum(a);
    match spec.class {
        SpectralClass::PerronReal => perron(a),
        SpectralClass::ComplexPairDominant => sequences(a, cfg),
        SpectralClass::Unsupported => ConeEvidence::Unknown {
            reason: format!("unsupported spectrum: {}", spec.reason.unwrap_or_default()),
        },
    }
}

fn perron(a: &IntMat3) -> ConeEvidence {
    let outcome = PerronData::new(a).and_then(|p| dominant_cone_cert(&p, &CONE_VECTORS));
    match outcome {
        Ok(PerronConeOutcome::Certified(cert)) => ConeEvidence::Perron { cert },
        Ok(PerronConeOutcome::Fails { n, v }) => ConeEvidence::Fails { n, v },
        Err(e) => ConeEvidence::Unknown { reason: e.to_string() },
    }
}

/// The 36 pairs in index order.
pub fn cone_pairs() -> Vec<(usize, Vec3, Vec3)> {
    CONE_VECTORS
        .iter()
        .enumerate()
        .flat_map(|(i, v)| CONE_FUNCTIONALS.iter().enumerate().map(move |(j, w)| (6 * i + j + 1, *v, *w)))
        .collect()
}

fn sequences(a: &IntMat3, cfg: &ConeConfig) -> ConeEvidence {
    let e = match EigenData::new(a) {
        Ok(e) => e,
        Err(err) => return ConeEvidence::Unknown { reason: err.to_string() },
    };
    let ctx = BakerContext::new(&e, &cfg.eps);
    let floor = cfg.target_floor();
    let seqs: Vec<SequenceEvidence> = cone_pairs()
        .par_iter()
        .map(|&(index, v, w)| one_sequence(a, &e, ctx.as_ref().ok(), cfg, &floor, index, v, w))
        .collect();
    if let Err(err) = &ctx {
        if seqs.iter().any(|s| s.cert.is_none()) {
            return ConeEvidence::Unknown {
                reason: format!("Baker data unavailable: {err}"),
            };
        }
    }
    ConeEvidence::Sequences(SequenceSet {
        rec: a.recurrence(),
        exact_prefix: EXACT_PREFIX,
        moduli: (*cfg.moduli.start(), *cfg.moduli.end()),
        step_cap: cfg.step_cap,
        target_floor: floor,
        baker: ctx.ok(),
        sequences: seqs,
    })
}

#[allow(clippy::too_many_arguments)]
fn one_sequence(
    a: &IntMat3,
    e: &EigenData,
    ctx: Option<&BakerContext>,
    cfg: &ConeConfig,
    floor: &BigInt,
    index: usize,
    v: Vec3,
    w: Vec3,
) -> SequenceEvidence {
    let seq = seq_from_pair(a, &v, &w);
    let sc = e.coeffs(&v, &w);
    let baker = ctx.map(|c| c.bound(&sc));
    let mut ev = SequenceEvidence {
        index,
        v,
        w,
        seq: seq.clone(),
        coeffs_nonzero: sc.all_nonzero(),
        pair_sum_nonzero: sc.pair_sum_nonzero(),
        baker: None,
        cert: None,
        failure: None,
    };
    if !seq.init[0].is_zero() {
        match certify_never_zero(&seq, cfg.moduli.clone(), cfg.step_cap) {
            Ok(m) => ev.cert = Some(SequenceCert::NeverZero(m)),
            Err(err) => ev.failure = Some(err.to_string()),
        }
        ev.baker = baker.and_then(|b| b.ok());
        return ev;
    }
    let bound = match baker {
        Some(Ok(b)) => b,
        Some(Err(err)) => {
            ev.failure = Some(format!("Baker bound: {err}"));
            return ev;
        }
        None => {
            ev.failure = Some("Baker data unavailable".into());
            return ev;
        }
    };
    let target = floor.clone().max(bound.n0.clone());
    ev.baker = Some(bound);
    match certify_zero_only_at_start(&seq, cfg.moduli.clone(), &target, cfg.step_cap) {
        Ok(l) => ev.cert = Some(SequenceCert::ZeroOnlyAtStart(l)),
        Err(err) => ev.failure = Some(err.to_string()),
    }
    ev
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_fails_at_once() {
        let ev = cone_condition(&IntMat3::identity(), &ConeConfig::default());
        assert_eq!(ev, ConeEvidence::Fails { n: 1, v: [1, 1, 0] });
        assert_eq!(ev.verdict(), Verdict::Fail);
    }

    #[test]
    fn perron_inverse() {
        let a = IntMat3::new([[13, 34, 48], [-8, -21, -30], [6, 16, 23]]).unwrap();
        let ev = cone_condition(&a, &ConeConfig::default());
        assert!(matches!(ev, ConeEvidence::Perron { .. }));
        assert_eq!(ev.verdict(), Verdict::Pass);
    }

    #[test]
    fn pair_indexing() {
        let p = cone_pairs();
        assert_eq!(p.len(), 36);
        assert_eq!(p[2], (3, [1, 1, 0], [0, 0, 1]));
        assert_eq!(p[35], (36, [0, 0, 1], [-1, 0, 1]));
    }
}
