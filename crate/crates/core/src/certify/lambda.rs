//! `λ₁(f_A)` by series bisection and `λ₂(f_A) = λ₁(f_A⁻¹)` in closed form
//! when `A⁻¹` has a real dominant eigenvalue.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::cone::ConeEvidence;
use crate::algebra::rational::int;
use crate::algebra::{largest_real_root, PolyQ, RatInterval, Rational};
use crate::error::{Error, Result};
use crate::maps::IntMat3;
use crate::psi::{lambda1_enclosure, psi_seq, Lambda1Enclosure, CONE_VECTORS, V};
use crate::recur::{
    dominant_cone_cert, eventual_rec_detect, max_sequence, series_to_polynomial, MaxSequence, PerronConeCert,
    PerronConeOutcome, PerronData,
};

/// Extra exact terms checked beyond the proven recurrence onset.
const EXTRA_TERMS: usize = 6;

pub fn lambda1(a: &IntMat3, cone: &ConeEvidence, eps: &Rational) -> Result<Lambda1Enclosure> {
    lambda1_enclosure(a, cone, eps)
}

/// Exact data for `λ₁` of the inverse map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lambda2Exact {
    /// The matrix whose `Ψ`-series is summed (`A⁻¹` for `λ₂(f_A)`).
    pub matrix: IntMat3,
    pub rec: [i64; 3],
    pub cone: PerronConeCert,
    pub max_sequences: Vec<MaxSequence>,
    /// `P₁, P₂, …` (sums of the max-sequences).
    #[serde(with = "crate::serde_rat::bigint_vec")]
    pub terms: Vec<BigInt>,
    /// From this index on `Pₙ` satisfies the recurrence.
    pub onset: usize,
    /// Integer coefficients of `λ^deg·(Q - R)(1/λ)`, constant term first.
    #[serde(with = "crate::serde_rat::bigint_vec")]
    pub raw_coeffs: Vec<BigInt>,
    /// The same polynomial with the root `λ = 0` removed.
    pub polynomial: String,
    #[serde(with = "crate::serde_rat::interval")]
    pub root: RatInterval,
}

impl Lambda2Exact {
    pub fn raw_polynomial(&self) -> PolyQ {
        PolyQ::new(self.raw_coeffs.iter().cloned().map(int).collect())
    }

    pub fn reduced_polynomial(&self) -> PolyQ {
        self.raw_polynomial().strip_zero_roots()
    }
}

/// Index from which the recurrence provably holds: each max-sequence is a
/// fixed linear functional of `A⁻ⁿv` from its stabilization onset, and the
/// order-3 recurrence needs three such predecessors.
pub fn proven_onset(seqs: &[MaxSequence]) -> usize {
    seqs.iter().map(|m| m.stabilization.onset as usize).max().unwrap_or(1) + 3
}

/// `λ₂(f_A)`, computed as the exact `λ₁` of `f_{A⁻¹}`.
pub fn lambda2_exact(a: &IntMat3, eps: &Rational) -> Result<Lambda2Exact> {
    exact_degree(&a.inverse()?, eps)
}

/// `λ₁(f_M)` as the largest root of an integer polynomial, for `M` with a
/// real dominant eigenvalue.
pub fn exact_degree(m: &IntMat3, eps: &Rational) -> Result<Lambda2Exact> {
    let p = PerronData::new(m)?;
    let cone = match dominant_cone_cert(&p, &CONE_VECTORS)? {
        PerronConeOutcome::Certified(c) => c,
        PerronConeOutcome::Fails { n, v } => {
            return Err(Error::HypothesisFailed(format!(
                "cone condition fails at n = {n}, v = {v:?}"
            )))
        }
    };
    let stab: Vec<MaxSequence> = V.iter().map(|v| max_sequence(&p, v, 1)).collect::<Result<_>>()?;
    let proven = proven_onset(&stab);
    let count = proven.max(4) + EXTRA_TERMS;
    let max_sequences: Vec<MaxSequence> = V.iter().map(|v| max_sequence(&p, v, count)).collect::<Result<_>>()?;
    let terms: Vec<BigInt> = (0..count)
        .map(|n| max_sequences.iter().map(|m| &m.values[n]).sum())
        .collect();
    if terms != psi_seq(m, count) {
        return Err(Error::Inconsistent("max-sequence sums differ from Ψ(Mⁿ)".into()));
    }
    let rec = m.recurrence();
    let onset = eventual_rec_detect(&terms, &rec, proven)?;
    let raw = series_to_polynomial(&terms, &rec, onset)?;
    let raw_coeffs = raw
        .int_coeffs()
        .ok_or_else(|| Error::Inconsistent("non-integral series polynomial".into()))?;
    let reduced = raw.strip_zero_roots();
    let root = largest_real_root(&reduced, eps)?;
    Ok(Lambda2Exact {
        matrix: *m,
        rec,
        cone,
        max_sequences,
        terms,
        onset,
        raw_coeffs,
        polynomial: reduced.to_string_var("λ"),
        root,
    })
}
