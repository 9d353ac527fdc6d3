//! The support sets `𝒰, 𝒱, 𝒫, 𝒲`, the functional `Ψ(Aⁿ)`, the cone
//! predicate, and the certified root of `Σ Ψ(Aⁿ) λ⁻ⁿ = 1`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::elementary::bits_for;
use crate::algebra::rational::{int, round_bits, Rational};
use crate::algebra::RatInterval;
use crate::error::{Error, Result};
use crate::maps::{degree_bound_fa, BigMat3, IntMat3};

pub type Vec3 = [i64; 3];

/// `𝒰 = {0, -e₁, -e₂, -e₃}`
pub const U: [Vec3; 4] = [[0, 0, 0], [-1, 0, 0], [0, -1, 0], [0, 0, -1]];
/// `𝒱`
pub const V: [Vec3; 4] = [[1, 1, 0], [0, 1, 1], [-1, -1, 0], [0, -1, -1]];
/// `𝒫 = {(-1,-1,-1), e₁, e₂, e₃}`
pub const P: [Vec3; 4] = [[-1, -1, -1], [1, 0, 0], [0, 1, 0], [0, 0, 1]];

/// `𝒲 = (𝒰 - 𝒰) \ {0}`, in the order of the pairs `(u, u')` of `U`.
pub fn w_set() -> Vec<Vec3> {
    let mut out = vec![];
    for a in U {
        for b in U {
            if a != b {
                out.push([a[0] - b[0], a[1] - b[1], a[2] - b[2]]);
            }
        }
    }
    out
}

fn dot(u: &Vec3, x: &[BigInt; 3]) -> BigInt {
    (0..3).map(|i| &x[i] * u[i]).sum()
}

fn big(v: &Vec3) -> [BigInt; 3] {
    v.map(BigInt::from)
}

/// `Σ_{v∈𝒱} max(0, -min_i (Mv)_i)`.
pub fn psi_of(m: &BigMat3) -> BigInt {
    V.iter()
        .map(|v| {
            let x = m.apply(&big(v));
            let min = x.iter().min().unwrap().clone();
            if min.is_negative() {
                -min
            } else {
                BigInt::zero()
            }
        })
        .sum()
}

/// `Σ_{v∈𝒱} max_{u∈𝒰} ⟨u, Mv⟩`, the defining form.
pub fn psi_of_max_form(m: &BigMat3) -> BigInt {
    V.iter()
        .map(|v| {
            let x = m.apply(&big(v));
            U.iter().map(|u| dot(u, &x)).max().unwrap()
        })
        .sum()
}

/// `Ψ(Aⁿ)`.
pub fn psi(a: &IntMat3, n: u32) -> BigInt {
    let mut m = BigMat3::identity();
    let ab = a.to_big();
    for _ in 0..n {
        m = m.mul(&ab);
    }
    psi_of(&m)
}

/// `Ψ(Aⁿ)` for `n = 1..=count`.
pub fn psi_seq(a: &IntMat3, count: usize) -> Vec<BigInt> {
    let ab = a.to_big();
    let mut m = BigMat3::identity();
    (0..count)
        .map(|_| {
            m = m.mul(&ab);
            psi_of(&m)
        })
        .collect()
}

/// `(Ψ(A), deg f_A bound)`.
pub fn psi_bounds(a: &IntMat3) -> (BigInt, u64) {
    (psi(a, 1), degree_bound_fa(a))
}

/// The six conditions `x, y, z ≠ 0` and pairwise distinct.
pub fn star_test(x: &[BigInt; 3]) -> bool {
    x.iter().all(|c| !c.is_zero()) && x[0] != x[1] && x[1] != x[2] && x[2] != x[0]
}

pub fn star_test_i64(x: Vec3) -> bool {
    star_test(&big(&x))
}

/// The sign-reduced vectors of `𝒱 ∪ 𝒫`: `(1,1,0), (0,1,1), (-1,-1,-1), e₁,
/// e₂, e₃`. The cone predicate is invariant under `x ↦ -x`.
pub const CONE_VECTORS: [Vec3; 6] = [[1, 1, 0], [0, 1, 1], [-1, -1, -1], [1, 0, 0], [0, 1, 0], [0, 0, 1]];

/// The functionals `x, y, z, x-y, y-z, z-x` of the cone predicate.
pub const CONE_FUNCTIONALS: [Vec3; 6] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 0], [0, 1, -1], [-1, 0, 1]];

pub const DEFAULT_SERIES_TERMS: usize = 64;
const MAX_SERIES_TERMS: usize = 1 << 14;
const DEFAULT_M: u32 = 8;
const MAX_M: u32 = 32;

/// Data needed to bound `F(λ) = Σ_{n>=1} Ψ(Aⁿ) λ⁻ⁿ` from both sides.
#[derive(Clone, Debug)]
pub struct SeriesData {
    pub psi: Vec<BigInt>,
    /// `‖A^r‖₁` for `r = 0..=m`.
    pub norms: Vec<BigInt>,
    pub m: u32,
}

impl SeriesData {
    pub fn new(a: &IntMat3, terms: usize, m: u32) -> Self {
        let ab = a.to_big();
        let mut p = BigMat3::identity();
        let mut norms = vec![p.norm1()];
        for _ in 0..m {
            p = p.mul(&ab);
            norms.push(p.norm1());
        }
        Self {
            psi: psi_seq(a, terms),
            norms,
            m,
        }
    }

    fn extend(&mut self, a: &IntMat3, terms: usize) {
        if terms > self.psi.len() {
            self.psi = psi_seq(a, terms);
        }
    }

    /// Whether `‖A^m‖₁ < λ^m`, i.e. the tail bound converges at `λ`.
    pub fn tail_converges(&self, lambda: &Rational) -> bool {
        int(self.norms[self.m as usize].clone()) < num_traits::pow(lambda.clone(), self.m as usize)
    }

    /// Exact partial sum over the first `terms` values (Horner in `1/λ`).
    pub fn partial_sum(&self, lambda: &Rational, terms: usize) -> Rational {
        let t = lambda.recip();
        self.psi[..terms]
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, p| (acc + int(p.clone())) * &t)
    }

    /// Bound on `Σ_{n>terms} Ψ(Aⁿ) λ⁻ⁿ` via `Ψ(Aⁿ) <= 8‖Aⁿ‖₁` and
    /// `‖Aⁿ‖₁ <= ‖A^m‖₁^q ‖A^r‖₁` for `n = qm + r`.
    pub fn tail_bound(&self, lambda: &Rational, terms: usize) -> Option<Rational> {
        if !self.tail_converges(lambda) {
            return None;
        }
        let m = self.m as usize;
        let ratio = int(self.norms[m].clone()) / num_traits::pow(lambda.clone(), m);
        let k = (0..m)
            .map(|r| int(self.norms[r].clone()) / num_traits::pow(lambda.clone(), r))
            .max()
            .unwrap();
        let q0 = (terms + 1) / m;
        let geo = num_traits::pow(ratio.clone(), q0) / (Rational::one() - ratio);
        Some(int(8 * m as i64) * k * geo)
    }

    /// `(lower, upper)` bounds of `F(λ)` from `terms` exact terms.
    pub fn bounds(&self, lambda: &Rational, terms: usize) -> Option<(Rational, Rational)> {
        let lower = self.partial_sum(lambda, terms);
        let tail = self.tail_bound(lambda, terms)?;
        let upper = &lower + tail;
        Some((lower, upper))
    }
}

/// Certified root of `F(λ) = 1` together with the sign witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lambda1Enclosure {
    #[serde(with = "crate::serde_rat::interval")]
    pub interval: RatInterval,
    /// Number of exact series terms used in the final comparisons.
    pub terms: usize,
    /// Block length of the tail bound.
    pub m: u32,
    /// Lower bound of `F(lo)`; exceeds 1.
    #[serde(with = "crate::serde_rat::rational")]
    pub f_lo_lower: Rational,
    /// Upper bound of `F(hi)`; below 1.
    #[serde(with = "crate::serde_rat::rational")]
    pub f_hi_upper: Rational,
}

/// Bisection for the root of `F(λ) = 1` inside `[lo, hi]`, where the caller
/// has established the cone condition for `A`. Midpoints are dyadic; the
/// number of exact terms doubles whenever a midpoint cannot be decided.
pub fn lambda1_bisect(a: &IntMat3, lo: Rational, hi: Rational, eps: &Rational) -> Result<Lambda1Enclosure> {
    if lo >= hi {
        return Err(Error::BracketInvalid(format!("empty bracket [{lo}, {hi}]")));
    }
    let lo = if lo <= Rational::one() { Rational::new(BigInt::from(1025), BigInt::from(1024)) } else { lo };
    let mut m = DEFAULT_M;
    let mut terms = DEFAULT_SERIES_TERMS;
    let mut data = SeriesData::new(a, terms, m);
    while !data.tail_converges(&lo) {
        m *= 2;
        if m > MAX_M {
            return Err(Error::TailNotConvergent);
        }
        data = SeriesData::new(a, terms, m);
    }
    let one = Rational::one();
    let lower_at = |data: &SeriesData, x: &Rational, n: usize| data.partial_sum(x, n);
    let upper_at = |data: &SeriesData, x: &Rational, n: usize| data.bounds(x, n).map(|b| b.1);

    let mut f_lo_lower = lower_at(&data, &lo, terms);
    if f_lo_lower <= one {
        return Err(Error::BracketInvalid(format!(
            "series lower bound at λ = {lo} is {f_lo_lower}, not above 1"
        )));
    }
    let mut f_hi_upper = loop {
        let u = upper_at(&data, &hi, terms).ok_or(Error::TailNotConvergent)?;
        if u < one {
            break u;
        }
        if terms >= MAX_SERIES_TERMS {
            return Err(Error::BracketInvalid(format!("series at λ = {hi} not certified below 1")));
        }
        terms *= 2;
        data.extend(a, terms);
    };

    let bits = bits_for(eps) + 2;
    let (mut lo, mut hi) = (lo, hi);
    while &hi - &lo > *eps {
        let mid = round_bits(&((&lo + &hi) / int(2)), bits);
        let mid = if mid <= lo || mid >= hi { (&lo + &hi) / int(2) } else { mid };
        loop {
            let (l, u) = data.bounds(&mid, terms).ok_or(Error::TailNotConvergent)?;
            if l > one {
                lo = mid;
                f_lo_lower = l;
                break;
            }
            if u < one {
                hi = mid;
                f_hi_upper = u;
                break;
            }
            if terms >= MAX_SERIES_TERMS {
                return Err(Error::PrecisionExhausted(format!("F({mid}) undecided with {terms} terms")));
            }
            terms *= 2;
            data.extend(a, terms);
        }
    }
    Ok(Lambda1Enclosure {
        interval: RatInterval::new(lo, hi)?,
        terms,
        m,
        f_lo_lower,
        f_hi_upper,
    })
}

/// `λ₁(f_A)` enclosure of width `<= eps`. The series identity behind it
/// needs the cone condition for `A`, so a passing `cone` is required.
pub fn lambda1_enclosure(a: &IntMat3, cone: &crate::certify::ConeEvidence, eps: &Rational) -> Result<Lambda1Enclosure> {
    if cone.verdict() != crate::certify::Verdict::Pass {
        return Err(Error::HypothesisFailed(format!("cone condition: {}", cone.check().detail)));
    }
    let (lo, hi) = psi_bounds(a);
    lambda1_bisect(a, int(lo), int(hi), eps)
}

/// Re-derives the sign contract `F(lo) > 1 > F(hi)` of a stored enclosure.
pub fn check_lambda1(a: &IntMat3, e: &Lambda1Enclosure) -> bool {
    let data = SeriesData::new(a, e.terms, e.m);
    let one = Rational::one();
    let lo_ok = data.partial_sum(e.interval.lo(), e.terms) > one;
    let hi_ok = data
        .bounds(e.interval.hi(), e.terms)
        .is_some_and(|(_, u)| u < one);
    lo_ok && hi_ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn a_base() -> IntMat3 {
        IntMat3::new([[-3, -14, -12], [4, 11, 6], [-2, -4, -1]]).unwrap()
    }

    #[test]
    fn support_sets() {
        let w = w_set();
        assert_eq!(w.len(), 12);
        for x in &w {
            assert!(w.contains(&[-x[0], -x[1], -x[2]]));
        }
        for v in V {
            assert!(V.contains(&[-v[0], -v[1], -v[2]]));
        }
    }

    #[test]
    fn psi_values() {
        assert_eq!(psi(&a_base(), 1), BigInt::from(75));
        assert_eq!(psi(&IntMat3::identity(), 1), BigInt::from(2));
        let inv = a_base().inverse().unwrap();
        let want = [209, 3067, 44541, 646855].map(BigInt::from);
        assert_eq!(psi_seq(&inv, 4), want.to_vec());
        assert_eq!(psi_bounds(&IntMat3::identity()), (BigInt::from(2), 3));
    }

    #[test]
    fn star_examples() {
        assert!(star_test_i64([1, 2, 3]));
        assert!(!star_test_i64([0, 1, 2]));
        assert!(!star_test_i64([1, 1, 2]));
    }

    #[test]
    fn geometric_tail_is_sound() {
        // The tail bound must dominate the actual next terms.
        let a = a_base();
        let data = SeriesData::new(&a, 40, 8);
        let lam = int(75);
        let exact = data.partial_sum(&lam, 40) - data.partial_sum(&lam, 20);
        assert!(data.tail_bound(&lam, 20).unwrap() >= exact);
    }

    #[test]
    fn enclosure_for_base_matrix() {
        let e = lambda1_bisect(&a_base(), int(75), int(150), &rat(1, 1000)).unwrap();
        assert!(e.interval.width() <= rat(1, 1000));
        assert!(check_lambda1(&a_base(), &e));
        assert!(lambda1_bisect(&a_base(), int(150), int(75), &rat(1, 10)).is_err());
    }
}
