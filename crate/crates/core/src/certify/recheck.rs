//! Re-verification of a stored certificate. Searches are not repeated: the
//! stored moduli, periods and onsets are checked directly.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::cone::{cone_pairs, ConeEvidence, SequenceCert, SequenceSet};
use super::lambda::Lambda2Exact;
use super::report::{hyperbolicity, Certificate};
use super::spectral::classify_spectrum;
use super::Verdict;
use crate::algebra::poly::{count_real_roots, root_bound};
use crate::algebra::PolyQ;
use crate::maps::IntMat3;
use crate::psi::{check_lambda1, psi_seq, V};
use crate::recur::linrec::{recheck_lcm, recheck_mod};
use crate::recur::{
    argmax_stabilize, dominant_cone_cert, series_to_polynomial, seq_from_pair, BakerContext, EigenData,
    PerronConeOutcome, PerronData,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<(String, Verdict)>,
    pub overall: Verdict,
}

impl VerifyReport {
    fn push(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push((name.into(), Verdict::from_bool(ok)));
    }
}

fn sequences_ok(a: &IntMat3, s: &SequenceSet) -> bool {
    if s.rec != a.recurrence() || s.sequences.len() != 36 {
        return false;
    }
    let Ok(e) = EigenData::new(a) else { return false };
    let ctx = s.baker.as_ref().and_then(|b| BakerContext::new(&e, &b.eps).ok());
    s.sequences.iter().zip(cone_pairs()).all(|(ev, (index, v, w))| {
        if ev.index != index || ev.v != v || ev.w != w || ev.seq != seq_from_pair(a, &v, &w) {
            return false;
        }
        match &ev.cert {
            Some(SequenceCert::NeverZero(m)) => recheck_mod(&ev.seq, m, s.step_cap) && m.zero_positions.is_empty(),
            Some(SequenceCert::ZeroOnlyAtStart(l)) => {
                let Some(ctx) = &ctx else { return false };
                let Ok(b) = ctx.bound(&e.coeffs(&v, &w)) else { return false };
                recheck_lcm(&ev.seq, l, s.step_cap) && l.target >= b.n0
            }
            None => false,
        }
    })
}

fn cone_ok(a: &IntMat3, c: &ConeEvidence) -> Option<bool> {
    match c {
        ConeEvidence::Perron { cert } => {
            let fresh = PerronData::new(a).and_then(|p| dominant_cone_cert(&p, &crate::psi::CONE_VECTORS));
            Some(matches!(fresh, Ok(PerronConeOutcome::Certified(ref f)) if f == cert))
        }
        ConeEvidence::Sequences(s) if s.failing().is_empty() => Some(sequences_ok(a, s)),
        ConeEvidence::Fails { n, v } => {
            let mut x = v.map(num_bigint::BigInt::from);
            for _ in 0..*n {
                x = a.apply(&x);
            }
            Some(!crate::psi::star_test(&x))
        }
        _ => None,
    }
}

fn largest_root_ok(p: &PolyQ, root: &crate::algebra::RatInterval) -> bool {
    let bound = root_bound(p);
    let (lo, hi) = (root.lo(), root.hi());
    if lo == hi {
        return p.eval(lo).is_zero() && count_real_roots(p, lo, &bound) == 0;
    }
    count_real_roots(p, lo, hi) >= 1 && count_real_roots(p, hi, &bound) == 0
}

fn exact_ok(x: &Lambda2Exact) -> bool {
    let m = &x.matrix;
    let Ok(p) = PerronData::new(m) else { return false };
    let stab_ok = x.max_sequences.len() == V.len()
        && x.max_sequences.iter().zip(V).all(|(s, v)| {
            s.stabilization.v == v && argmax_stabilize(&p, &v).is_ok_and(|t| t == s.stabilization)
        });
    let proven = super::lambda::proven_onset(&x.max_sequences);
    let terms_ok = x.terms == psi_seq(m, x.terms.len()) && x.terms.len() >= proven && x.onset <= proven;
    let poly_ok = series_to_polynomial(&x.terms, &m.recurrence(), x.onset)
        .is_ok_and(|q| q == x.raw_polynomial());
    stab_ok && terms_ok && poly_ok && largest_root_ok(&x.reduced_polynomial(), &x.root)
}

/// Re-checks every claim of `c` that carries evidence.
pub fn verify(c: &Certificate) -> VerifyReport {
    let mut r = VerifyReport {
        checks: vec![],
        overall: Verdict::Pass,
    };
    let a = c.matrix;
    r.push("determinant ±1", IntMat3::new(a.rows()).is_ok());
    r.push("spectral class", classify_spectrum(&a) == c.spectral_class);
    match cone_ok(&a, &c.cone_evidence) {
        Some(ok) => r.push("cone evidence", ok),
        None => r.checks.push(("cone evidence".into(), Verdict::Unknown)),
    }
    if let Some(e) = &c.lambda.l1.enclosure {
        r.push("λ₁ sign contract", check_lambda1(&a, e));
        r.push("λ₁ needs the cone condition", c.cone_evidence.verdict() == Verdict::Pass);
    }
    if let Some(x) = &c.lambda.l1.exact {
        r.push("λ₁ exact polynomial", x.matrix == a && exact_ok(x));
    }
    if let Some(x) = &c.lambda.l2.exact {
        r.push("λ₂ exact polynomial", a.inverse().is_ok_and(|i| i == x.matrix) && exact_ok(x));
    }
    r.push("hyperbolicity", hyperbolicity(&c.lambdas()) == c.hyperbolicity);
    r.overall = Verdict::all(r.checks.iter().map(|(_, v)| *v));
    r
}
