//! The four algebraic hypotheses of the transcendence criterion and the cone
//! condition that accompanies them.
//!
//! With `c = ⟨w, P₁v⟩` for the projector `P₁` onto the `ξ₁`-eigenline,
//! `σ(v, w) = -c̄/c`. The criterion asks that no `σ` and no ratio of two `σ`
//! (outside jointly dependent pairs) is a unit of `K`.

use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cone::{cone_condition, ConeConfig, ConeEvidence};
use super::spectral::{classify_spectrum, SpectralClass};
use super::{Check, Verdict};
use crate::algebra::{KElem, RatInterval};
use crate::error::{Error, Result};
use crate::maps::IntMat3;
use crate::psi::{Vec3, CONE_FUNCTIONALS, V};
use crate::recur::EigenData;

const BITS: u32 = 64;

/// Which eigenvalue of the complex pair plays `ξ₁`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairChoice {
    Upper,
    Lower,
}

impl PairChoice {
    fn index(self) -> usize {
        match self {
            PairChoice::Upper => 0,
            PairChoice::Lower => 1,
        }
    }
}

/// `σ(v, w)` for the eigenvalue selected by `choice`.
pub fn sigma(e: &EigenData, v: &Vec3, w: &Vec3, choice: PairChoice) -> Result<KElem> {
    let c = e.pairing(choice.index(), v, w);
    if c.is_zero() {
        let vi = V.iter().position(|x| x == v).unwrap_or(usize::MAX);
        let wi = CONE_FUNCTIONALS.iter().position(|x| x == w).unwrap_or(usize::MAX);
        return Err(Error::DegeneratePair { v: vi + 1, w: wi + 1 });
    }
    (-c.conj()).checked_div(&c)
}

/// Linear dependence of two integer vectors.
fn parallel(a: &Vec3, b: &Vec3) -> bool {
    let cross = [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ];
    cross == [0, 0, 0]
}

/// Pairs `(v, w)`, `(v', w')` whose ratio is not tested.
pub fn exempt(p: (&Vec3, &Vec3), q: (&Vec3, &Vec3)) -> bool {
    parallel(p.0, q.0) && parallel(p.1, q.1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaCheck {
    /// `6·i + j + 1` for `v = 𝒱[i]`, `w = 𝒲[j]`.
    pub index: usize,
    pub v: Vec3,
    pub w: Vec3,
    pub sigma: Option<String>,
    /// `σ·σ̄ = 1` holds exactly.
    pub unimodular: bool,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioChecks {
    pub pairs_total: usize,
    pub exempt: usize,
    pub checked: usize,
    /// `(i, j)` (1-based σ indices) whose ratio is a unit.
    pub units: Vec<(usize, usize)>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AngleCheck {
    pub verdict: Verdict,
    /// Some conjugate of `ξ₁/ξ₂` has modulus certified different from 1.
    pub galois_route: Option<bool>,
    /// `ξ₁/ξ₂` has a cyclotomic minimal polynomial.
    pub root_of_unity: Option<bool>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscendenceReport {
    pub cond_irreducible: Check,
    pub cond_pair_and_angle: AngleCheck,
    pub cond_sigma_units: Vec<SigmaCheck>,
    pub cond_ratio_units: RatioChecks,
    /// Both choices of `ξ₁` within the complex pair give the same verdicts.
    pub pair_choice_invariant: Option<bool>,
    pub cone_condition: Check,
    pub overall: Verdict,
    pub statement: String,
}

impl TranscendenceReport {
    pub fn sigma_verdict(&self) -> Verdict {
        if self.cond_sigma_units.is_empty() {
            return Verdict::Unknown;
        }
        Verdict::all(self.cond_sigma_units.iter().map(|s| s.verdict))
    }
}

fn angle_check(e: &EigenData) -> Result<AngleCheck> {
    let xi = e.xi();
    let z = xi[0].checked_div(&xi[1])?;
    let one = RatInterval::from_int(1);
    let galois = z
        .conjugates(BITS)
        .iter()
        .any(|c| !c.norm_sqr().overlaps(&one));
    let rou = z.is_root_of_unity()?;
    let (verdict, detail) = match (galois, rou) {
        (true, false) => (Verdict::Pass, "a conjugate of ξ₁/ξ₂ has modulus ≠ 1; minimal polynomial is not cyclotomic"),
        (false, true) => (Verdict::Fail, "ξ₁/ξ₂ is a root of unity"),
        (true, true) => (Verdict::Unknown, "routes disagree"),
        (false, false) => (Verdict::Unknown, "conjugate moduli not separated from 1"),
    };
    Ok(AngleCheck {
        verdict,
        galois_route: Some(galois),
        root_of_unity: Some(rou),
        detail: detail.into(),
    })
}

struct Sigmas {
    checks: Vec<SigmaCheck>,
    values: Vec<Option<KElem>>,
}

fn sigma_table(e: &EigenData, choice: PairChoice) -> Sigmas {
    let pairs: Vec<(usize, Vec3, Vec3)> = V
        .iter()
        .enumerate()
        .flat_map(|(i, v)| CONE_FUNCTIONALS.iter().enumerate().map(move |(j, w)| (6 * i + j + 1, *v, *w)))
        .collect();
    let rows: Vec<(SigmaCheck, Option<KElem>)> = pairs
        .par_iter()
        .map(|&(index, v, w)| match sigma(e, &v, &w, choice) {
            Ok(s) => {
                let unimodular = (&s * &s.conj()).as_rational().is_some_and(|q| q.is_one());
                let (verdict, detail) = match s.is_unit() {
                    Ok(false) => (Verdict::Pass, "not a unit".to_string()),
                    Ok(true) => (Verdict::Fail, "σ is a unit".to_string()),
                    Err(err) => (Verdict::Unknown, err.to_string()),
                };
                let check = SigmaCheck {
                    index,
                    v,
                    w,
                    sigma: Some(s.to_string()),
                    unimodular,
                    verdict,
                    detail,
                };
                (check, Some(s))
            }
            Err(err) => {
                let check = SigmaCheck {
                    index,
                    v,
                    w,
                    sigma: None,
                    unimodular: false,
                    verdict: Verdict::Fail,
                    detail: err.to_string(),
                };
                (check, None)
            }
        })
        .collect();
    let (checks, values) = rows.into_iter().unzip();
    Sigmas { checks, values }
}

fn ratio_table(s: &Sigmas) -> RatioChecks {
    let n = s.checks.len();
    let all: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let todo: Vec<(usize, usize)> = all
        .iter()
        .copied()
        .filter(|&(i, j)| {
            let (a, b) = (&s.checks[i], &s.checks[j]);
            !exempt((&a.v, &a.w), (&b.v, &b.w))
        })
        .collect();
    let results: Vec<((usize, usize), Verdict)> = todo
        .par_iter()
        .map(|&(i, j)| {
            let verdict = match (&s.values[i], &s.values[j]) {
                (Some(a), Some(b)) => match a.checked_div(b).and_then(|r| r.is_unit()) {
                    Ok(false) => Verdict::Pass,
                    Ok(true) => Verdict::Fail,
                    Err(_) => Verdict::Unknown,
                },
                _ => Verdict::Unknown,
            };
            ((i, j), verdict)
        })
        .collect();
    let units = results
        .iter()
        .filter(|(_, v)| *v == Verdict::Fail)
        .map(|&((i, j), _)| (i + 1, j + 1))
        .collect();
    RatioChecks {
        pairs_total: all.len(),
        exempt: all.len() - todo.len(),
        checked: todo.len(),
        units,
        verdict: Verdict::all(results.iter().map(|r| r.1)),
    }
}

const STATEMENT_PASS: &str = "hypotheses verified; transcendence of λ₁ follows by the cited criterion";
const STATEMENT_OTHER: &str = "hypotheses not all verified; no transcendence claim";

fn refused(detail: &str) -> Check {
    Check::new(Verdict::Unknown, format!("refused: {detail}"))
}

/// Evaluates every hypothesis, running the cone condition with `cfg`.
pub fn transcendence_conditions(a: &IntMat3, cfg: &ConeConfig) -> (TranscendenceReport, ConeEvidence) {
    let cone = cone_condition(a, cfg);
    (transcendence_with_cone(a, &cone), cone)
}

/// Evaluates the algebraic hypotheses and takes the cone condition from
/// `cone`.
pub fn transcendence_with_cone(a: &IntMat3, cone: &ConeEvidence) -> TranscendenceReport {
    let spec = classify_spectrum(a);
    let cond_irreducible = Check::new(
        Verdict::from_bool(spec.irreducible),
        if spec.irreducible {
            format!("{} is irreducible", spec.charpoly)
        } else {
            format!("{} is reducible", spec.charpoly)
        },
    );
    let cone_condition = cone.check();
    let mut rep = TranscendenceReport {
        cond_irreducible,
        cond_pair_and_angle: AngleCheck {
            verdict: Verdict::Unknown,
            galois_route: None,
            root_of_unity: None,
            detail: String::new(),
        },
        cond_sigma_units: vec![],
        cond_ratio_units: RatioChecks {
            pairs_total: 0,
            exempt: 0,
            checked: 0,
            units: vec![],
            verdict: Verdict::Unknown,
        },
        pair_choice_invariant: None,
        cone_condition,
        overall: Verdict::Unknown,
        statement: STATEMENT_OTHER.into(),
    };
    match spec.class {
        SpectralClass::ComplexPairDominant => {}
        SpectralClass::PerronReal => {
            rep.cond_pair_and_angle.verdict = Verdict::Fail;
            rep.cond_pair_and_angle.detail = "the dominant eigenvalue is real".into();
            rep.overall = Verdict::Fail;
            return rep;
        }
        SpectralClass::Unsupported => {
            let why = spec.reason.clone().unwrap_or_default();
            rep.cond_pair_and_angle.detail = refused(&why).detail;
            if !spec.irreducible {
                rep.cond_pair_and_angle.verdict = Verdict::Fail;
            }
            rep.overall = rep.cond_irreducible.verdict.and(rep.cond_pair_and_angle.verdict);
            return rep;
        }
    }
    let e = match EigenData::new(a) {
        Ok(e) => e,
        Err(err) => {
            rep.cond_pair_and_angle.detail = refused(&err.to_string()).detail;
            return rep;
        }
    };
    rep.cond_pair_and_angle = angle_check(&e).unwrap_or_else(|err| AngleCheck {
        verdict: Verdict::Unknown,
        galois_route: None,
        root_of_unity: None,
        detail: err.to_string(),
    });
    let upper = sigma_table(&e, PairChoice::Upper);
    let lower = sigma_table(&e, PairChoice::Lower);
    let ratios = ratio_table(&upper);
    let ratios_lower = ratio_table(&lower);
    let same_sigma = upper
        .checks
        .iter()
        .zip(&lower.checks)
        .all(|(a, b)| a.verdict == b.verdict);
    let reciprocal = upper.values.iter().zip(&lower.values).all(|(a, b)| match (a, b) {
        (Some(a), Some(b)) => (a * b).as_rational().is_some_and(|q| q.is_one()),
        (None, None) => true,
        _ => false,
    });
    let same_ratio = ratios.verdict == ratios_lower.verdict && ratios.units.len() == ratios_lower.units.len();
    rep.pair_choice_invariant = Some(same_sigma && reciprocal && same_ratio);
    rep.cond_sigma_units = upper.checks;
    rep.cond_ratio_units = ratios;
    let invariant = Verdict::from_bool(rep.pair_choice_invariant == Some(true));
    rep.overall = Verdict::all([
        rep.cond_irreducible.verdict,
        rep.cond_pair_and_angle.verdict,
        rep.sigma_verdict(),
        rep.cond_ratio_units.verdict,
        rep.cone_condition.verdict,
    ]);
    if invariant == Verdict::Fail && rep.overall == Verdict::Pass {
        rep.overall = Verdict::Unknown;
    }
    if rep.overall == Verdict::Pass {
        rep.statement = STATEMENT_PASS.into();
    }
    rep
}
