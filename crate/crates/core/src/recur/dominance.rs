//! Matrices with a real dominant eigenvalue `θ` (`|θ| > |ξ±|`): eventual
//! behaviour of `⟨w, Aⁿv⟩` from the exact eigencomponents.
//!
//! For a real functional `f`, `f(Aⁿv) = θⁿ f(P₃v) + 2·Re(ξ₁ⁿ f(P₁v))`, so
//! `|f(Aⁿv) - θⁿ f(P₃v)| <= 2|ξ₁|ⁿ |f(P₁v)|`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::eigen::{functional, EigenData};
use crate::algebra::elementary::sqrt_iv;
use crate::algebra::rational::int;
use crate::algebra::{CInterval, RatInterval};
use crate::error::{Error, Result};
use crate::maps::IntMat3;
use crate::psi::{star_test, Vec3, CONE_FUNCTIONALS, U};

/// Largest `n` tried when searching for an onset.
pub const MAX_ONSET: u64 = 100_000;
/// Working precisions tried in turn.
const PRECISIONS: [u32; 4] = [64, 128, 256, 512];

fn modulus(z: &CInterval, bits: u32) -> RatInterval {
    sqrt_iv(&z.norm_sqr(), bits).expect("norm is nonnegative")
}

/// Spectral data of a matrix whose real eigenvalue strictly dominates.
#[derive(Clone, Debug)]
pub struct PerronData {
    eigen: EigenData,
}

impl PerronData {
    pub fn new(a: &IntMat3) -> Result<Self> {
        let eigen = EigenData::new(a)?;
        let t = eigen.field().theta_enclosure(64).abs();
        // |ξ±|² = |d|/|θ| and |d| = 1, so dominance is |θ| > 1.
        if t.lo() <= &int(1) {
            return Err(Error::Unsupported("real eigenvalue is not dominant".into()));
        }
        Ok(Self { eigen })
    }

    pub fn eigen(&self) -> &EigenData {
        &self.eigen
    }

    /// Enclosures of `(θ, |ξ₁|)`.
    pub fn moduli(&self, bits: u32) -> (RatInterval, RatInterval) {
        let theta = self.eigen.field().theta_enclosure(bits + 8);
        let (_, _, d) = self.eigen.field().coeffs();
        let s2 = RatInterval::point(d.clone()).abs().checked_div(&theta.abs()).expect("θ ≠ 0");
        (theta.round_out(bits), sqrt_iv(&s2, bits + 4).expect("positive").round_out(bits))
    }

    /// `(f(P₃v), |f(P₁v)|)` as enclosures.
    fn parts(&self, v: &Vec3, f: &Vec3, bits: u32) -> (RatInterval, RatInterval) {
        let dom = functional(f, &self.eigen.component(2, v)).embed_bits(bits).re;
        let sub = modulus(&functional(f, &self.eigen.component(0, v)).embed_bits(bits), bits);
        (dom, sub)
    }
}

/// First `n >= 1` with `|θ|ⁿ·m - 2sⁿ·M > 0`, and the value there.
fn onset(theta: &RatInterval, s: &RatInterval, m: &RatInterval, big_m: &RatInterval, bits: u32) -> Option<(u64, RatInterval)> {
    let t = theta.abs();
    let mut tp = t.clone();
    let mut sp = s.clone();
    for n in 1..=MAX_ONSET {
        let l = &(&tp * m) - &(&sp * big_m).scale(&int(2));
        if l.is_positive() {
            return Some((n, l));
        }
        tp = (&tp * &t).round_out(bits);
        sp = (&sp * s).round_out(bits);
    }
    None
}

fn orbit(a: &IntMat3, v: &Vec3, n: u64) -> Vec<[BigInt; 3]> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut x = v.map(BigInt::from);
    out.push(x.clone());
    for _ in 0..n {
        x = a.apply(&x);
        out.push(x.clone());
    }
    out
}

/// Margin for one vector: for `n >= onset`,
/// `min_f |f(Aⁿv)| >= |θ|ⁿ·min_dominant - 2sⁿ·max_subdominant >= bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorMargin {
    pub v: Vec3,
    pub onset: u64,
    #[serde(with = "crate::serde_rat::interval")]
    pub bound: RatInterval,
    #[serde(with = "crate::serde_rat::interval")]
    pub min_dominant: RatInterval,
    #[serde(with = "crate::serde_rat::interval")]
    pub max_subdominant: RatInterval,
}

/// Proof that `Aⁿv` satisfies the six-inequality cone predicate for every
/// `n >= 1` and every listed `v`: the analytic margin from each vector's
/// onset on, exact integer evaluation before it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerronConeCert {
    pub margins: Vec<VectorMargin>,
    #[serde(with = "crate::serde_rat::interval")]
    pub dominant: RatInterval,
    #[serde(with = "crate::serde_rat::interval")]
    pub subdominant_modulus: RatInterval,
}

impl PerronConeCert {
    /// Largest per-vector onset.
    pub fn onset(&self) -> u64 {
        self.margins.iter().map(|m| m.onset).max().unwrap_or(1)
    }
}

/// Outcome of [`dominant_cone_cert`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PerronConeOutcome {
    Certified(PerronConeCert),
    /// Exact evaluation found `Aⁿv` outside every open cone.
    Fails { n: u64, v: Vec3 },
}

pub fn dominant_cone_cert(p: &PerronData, vectors: &[Vec3]) -> Result<PerronConeOutcome> {
    let mut last_err = None;
    for bits in PRECISIONS {
        match cone_at(p, vectors, bits) {
            Ok(c) => return Ok(c),
            Err(e @ Error::MarginNotCertifiable(_)) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.expect("at least one precision tried"))
}

fn cone_at(p: &PerronData, vectors: &[Vec3], bits: u32) -> Result<PerronConeOutcome> {
    let (theta, s) = p.moduli(bits);
    let mut margins = vec![];
    for v in vectors {
        let parts: Vec<_> = CONE_FUNCTIONALS.iter().map(|f| p.parts(v, f, bits)).collect();
        let m = parts.iter().map(|(d, _)| d.abs()).reduce(|a, b| a.min(&b)).expect("nonempty");
        let big_m = parts.into_iter().map(|(_, s)| s).reduce(|a, b| a.max(&b)).expect("nonempty");
        if !m.is_positive() {
            return Err(Error::MarginNotCertifiable(format!(
                "a dominant functional of {v:?} is not separated from 0"
            )));
        }
        let Some((n0, bound)) = onset(&theta, &s, &m, &big_m, bits) else {
            return Err(Error::MarginNotCertifiable("no onset within the search range".into()));
        };
        for (n, x) in orbit(p.eigen().matrix(), v, n0 - 1).iter().enumerate().skip(1) {
            if !star_test(x) {
                return Ok(PerronConeOutcome::Fails { n: n as u64, v: *v });
            }
        }
        margins.push(VectorMargin {
            v: *v,
            onset: n0,
            bound,
            min_dominant: m,
            max_subdominant: big_m,
        });
    }
    Ok(PerronConeOutcome::Certified(PerronConeCert {
        margins,
        dominant: theta,
        subdominant_modulus: s,
    }))
}

/// Fixed maximiser of `u ↦ ⟨u, Aⁿv⟩` over `𝒰` for all `n >= onset`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stabilization {
    pub v: Vec3,
    pub u_star: Vec3,
    /// From here on `u_star` attains the maximum (analytic bound refined by
    /// exact evaluation below it).
    pub onset: u64,
    /// From here on the analytic margin alone proves it.
    pub analytic_onset: u64,
}

pub fn argmax_stabilize(p: &PerronData, v: &Vec3) -> Result<Stabilization> {
    let mut last_err = None;
    for bits in PRECISIONS {
        match stabilize_at(p, v, bits) {
            Ok(s) => return Ok(s),
            Err(e @ Error::MarginNotCertifiable(_)) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.expect("at least one precision tried"))
}

fn dot(u: &Vec3, x: &[BigInt; 3]) -> BigInt {
    (0..3).map(|i| &x[i] * u[i]).sum()
}

fn stabilize_at(p: &PerronData, v: &Vec3, bits: u32) -> Result<Stabilization> {
    let (theta, s) = p.moduli(bits);
    if !theta.is_positive() {
        return Err(Error::Unsupported("negative dominant eigenvalue alternates the maximiser".into()));
    }
    let dom: Vec<RatInterval> = U.iter().map(|u| p.parts(v, u, bits).0).collect();
    let best = (0..U.len())
        .max_by(|&i, &j| dom[i].lo().cmp(dom[j].lo()))
        .expect("nonempty");
    for (i, d) in dom.iter().enumerate() {
        if i != best && !d.certainly_lt(&dom[best]) {
            return Err(Error::MarginNotCertifiable(format!("tie on 𝒰 for v = {v:?}")));
        }
    }
    let u_star = U[best];
    let mut analytic = 1;
    for (i, u) in U.iter().enumerate() {
        if i == best {
            continue;
        }
        let diff = [u_star[0] - u[0], u_star[1] - u[1], u_star[2] - u[2]];
        let (gap, sub) = p.parts(v, &diff, bits);
        let Some((n, _)) = onset(&theta, &s, &gap, &sub, bits) else {
            return Err(Error::MarginNotCertifiable("no onset within the search range".into()));
        };
        analytic = analytic.max(n);
    }
    // Walk back from the analytic onset while exact values agree.
    let xs = orbit(p.eigen().matrix(), v, analytic);
    let attains = |x: &[BigInt; 3]| {
        let top = dot(&u_star, x);
        U.iter().all(|u| dot(u, x) <= top)
    };
    let mut k = analytic;
    while k > 1 && attains(&xs[k as usize - 1]) {
        k -= 1;
    }
    Ok(Stabilization {
        v: *v,
        u_star,
        onset: k,
        analytic_onset: analytic,
    })
}

/// `n ↦ max_{u∈𝒰} ⟨u, Aⁿv⟩` for `n = 1..=count`, with its stabilization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxSequence {
    pub stabilization: Stabilization,
    #[serde(with = "crate::serde_rat::bigint_vec")]
    pub values: Vec<BigInt>,
}

pub fn max_sequence(p: &PerronData, v: &Vec3, count: usize) -> Result<MaxSequence> {
    let stabilization = argmax_stabilize(p, v)?;
    let xs = orbit(p.eigen().matrix(), v, count as u64);
    let values = xs[1..]
        .iter()
        .map(|x| U.iter().map(|u| dot(u, x)).max().expect("nonempty"))
        .collect();
    Ok(MaxSequence { stabilization, values })
}
