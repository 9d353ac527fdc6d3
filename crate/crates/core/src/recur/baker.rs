//! Effective lower bounds for `|c₁ξ₁ᴺ + c₂ξ₂ᴺ|` from the Baker–Wüstholz
//! theorem, turned into an index `N₀` beyond which a sequence cannot vanish.
//!
//! With `Λ = N·log(ξ₁/ξ₂) + log(-c₁/c₂) + k·log(-1)` (three logarithms,
//! `K` of degree 6) one has `log|Λ| > -C·max(log 2N, 1)`, and `aₙ = 0` forces
//! `log|Λ| <= -3N·log|ξ₁| + log 2 + log|c₃/c₂|`. The threshold is the first
//! `N` after which the two are incompatible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::eigen::{EigenData, SeqCoeffs};
use crate::algebra::elementary::{bits_for, ln2, log_rat, pi_iv};
use crate::algebra::height::{abs_log_embedded, log_abs_embedded};
use crate::algebra::rational::{int, rat};
use crate::algebra::{height_rel, h_prime, KElem, RatInterval, Rational};
use crate::error::{Error, Result};

/// Number of logarithms in the linear form.
pub const BAKER_K: u32 = 3;
/// Degree of the splitting field.
pub const BAKER_D: u32 = 6;

const BITS: u32 = 96;

/// Enclosure of `18·(k+1)!·k^(k+1)·(32d)^(k+2)·log(2kd)`.
pub fn baker_constant(k: u32, d: u32) -> RatInterval {
    assert!(k >= 1 && d >= 1);
    let fact: BigInt = (1..=k + 1).map(BigInt::from).product();
    let prefix = BigInt::from(18) * fact * BigInt::from(k).pow(k + 1) * BigInt::from(32 * d).pow(k + 2);
    let log = log_rat(&int(2 * k * d), BITS).expect("positive argument");
    log.scale(&int(prefix))
}

/// `max(log 2N, 1)`.
fn log_factor(n: &BigInt) -> RatInterval {
    if n <= &BigInt::one() {
        return RatInterval::from_int(1);
    }
    let l = log_rat(&int(n * 2), BITS).expect("positive argument");
    l.max(&RatInterval::from_int(1))
}

/// Enclosure of `slope·N + offset - C·max(log 2N, 1)`.
pub fn baker_gap(c_total: &RatInterval, slope: &RatInterval, offset: &RatInterval, n: &BigInt) -> RatInterval {
    let lin = &slope.scale(&int(n.clone())) + offset;
    &lin - &(c_total * &log_factor(n))
}

fn gap_positive(c: &RatInterval, s: &RatInterval, o: &RatInterval, n: &BigInt) -> bool {
    baker_gap(c, s, o, n).is_positive()
}

/// Smallest `N₀ >= 1` such that the gap is certainly positive for every
/// `N >= N₀`.
///
/// The true gap is decreasing on `[2, C/slope]` and increasing beyond, so it
/// suffices to locate the first positive value to the right of the minimum.
pub fn baker_threshold(c_total: &RatInterval, slope: &RatInterval, offset: &RatInterval) -> Result<BigInt> {
    if !slope.is_positive() {
        return Err(Error::HypothesisFailed("slope must be positive".into()));
    }
    if c_total.lo().is_negative() {
        return Err(Error::InvalidInput("negative Baker constant".into()));
    }
    let ratio = c_total.hi() / slope.lo();
    let n_min = Integer::div_ceil(ratio.numer(), ratio.denom()).max(BigInt::from(2));
    let (c, s, o) = (c_total, slope, offset);
    if gap_positive(c, s, o, &n_min) {
        let one = BigInt::one();
        return Ok(if gap_positive(c, s, o, &one) { one } else { BigInt::from(2) });
    }
    // Exponential search, then bisection on the increasing branch.
    let mut lo = n_min.clone();
    let mut step = BigInt::one();
    let mut hi = &n_min + &step;
    while !gap_positive(c, s, o, &hi) {
        lo = hi.clone();
        step *= 2;
        hi = &n_min + &step;
    }
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) / 2;
        if gap_positive(c, s, o, &mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Quantities shared by all sequences of one matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BakerContext {
    #[serde(with = "crate::serde_rat::interval")]
    pub constant: RatInterval,
    #[serde(with = "crate::serde_rat::interval")]
    pub h_ratio: RatInterval,
    #[serde(with = "crate::serde_rat::interval")]
    pub height_ratio: RatInterval,
    #[serde(with = "crate::serde_rat::interval")]
    pub h_minus_one: RatInterval,
    #[serde(with = "crate::serde_rat::interval")]
    pub log_abs_xi1: RatInterval,
    #[serde(with = "crate::serde_rat::rational")]
    pub eps: Rational,
}

/// Per-sequence Baker data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BakerBound {
    /// `height_rel(-c₁/c₂)`.
    #[serde(with = "crate::serde_rat::interval")]
    pub height_coeff: RatInterval,
    #[serde(with = "crate::serde_rat::interval")]
    pub h_coeff: RatInterval,
    /// `log|c₃/c₂|`.
    #[serde(with = "crate::serde_rat::interval")]
    pub log_c3_c2: RatInterval,
    #[serde(with = "crate::serde_rat::interval")]
    pub c_total: RatInterval,
    #[serde(with = "crate::serde_rat::interval")]
    pub slope: RatInterval,
    #[serde(with = "crate::serde_rat::interval")]
    pub offset: RatInterval,
    #[serde(with = "crate::serde_rat::bigint")]
    pub n0: BigInt,
}

fn h_prime_parts(a: &KElem, eps: &Rational) -> Result<(RatInterval, RatInterval)> {
    let h = height_rel(a, eps)?;
    let l = abs_log_embedded(a, eps)?;
    let hp = h.max(&l).max(&RatInterval::from_int(1)).scale(&rat(1, 6));
    Ok((h, hp))
}

impl BakerContext {
    pub fn new(e: &EigenData, eps: &Rational) -> Result<Self> {
        let xi = e.xi();
        let ratio = xi[0].checked_div(&xi[1])?;
        let (height_ratio, h_ratio) = h_prime_parts(&ratio, eps)?;
        let h_minus_one = h_prime(&e.field().from_int(-1), eps)?;
        let log_abs_xi1 = log_abs_embedded(&xi[0], eps)?;
        if !log_abs_xi1.is_positive() {
            return Err(Error::HypothesisFailed("|ξ₁| > 1 fails".into()));
        }
        Ok(Self {
            constant: baker_constant(BAKER_K, BAKER_D),
            h_ratio,
            height_ratio,
            h_minus_one,
            log_abs_xi1,
            eps: eps.clone(),
        })
    }

    /// `N₀` for one sequence: `aₙ ≠ 0` for all `N >= N₀`.
    pub fn bound(&self, sc: &SeqCoeffs) -> Result<BakerBound> {
        if !sc.all_nonzero() {
            return Err(Error::HypothesisFailed("some cᵢ vanishes".into()));
        }
        if !sc.pair_sum_nonzero() {
            return Err(Error::HypothesisFailed("c₁ = -c₂".into()));
        }
        let [c1, c2, c3] = &sc.c;
        let q = (-c1).checked_div(c2)?;
        let (height_coeff, h_coeff) = h_prime_parts(&q, &self.eps)?;
        let log_c3_c2 = log_abs_embedded(&c3.checked_div(c2)?, &self.eps)?;
        let c_total = &(&(&self.constant * &self.h_ratio) * &h_coeff) * &self.h_minus_one;
        let slope = self.log_abs_xi1.scale(&int(3));
        let offset = -&(&ln2(bits_for(&self.eps)) + &log_c3_c2);
        let n0 = baker_threshold(&c_total, &slope, &offset)?;
        Ok(BakerBound {
            height_coeff,
            h_coeff,
            log_c3_c2,
            c_total,
            slope,
            offset,
            n0,
        })
    }
}

/// `N₀` with `a_N ≠ 0` for every `N >= N₀`.
pub fn zero_free_bound_from_baker(sc: &SeqCoeffs, e: &EigenData, eps: &Rational) -> Result<BigInt> {
    Ok(BakerContext::new(e, eps)?.bound(sc)?.n0)
}

/// `π/6` enclosure, the value `h'(-1)` takes in degree 6.
pub fn pi_over_six(bits: u32) -> RatInterval {
    pi_iv(bits).scale(&rat(1, 6))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::from_f64;
    use num_traits::Zero;

    fn iv(x: f64) -> RatInterval {
        RatInterval::point(from_f64(x).unwrap())
    }

    #[test]
    fn constant_values() {
        let c = baker_constant(3, 6);
        let (lo, hi) = c.to_f64_bounds();
        assert!(lo > 3.27e16 && hi < 3.28e16);
        let expect = 18.0 * 2.0 * 32f64.powi(3) * 2f64.ln();
        let (lo, hi) = baker_constant(1, 1).to_f64_bounds();
        assert!((lo - expect).abs() < 1e-6 && (hi - expect).abs() < 1e-6);
        assert!(baker_constant(3, 6).lo() > baker_constant(3, 1).hi());
    }

    #[test]
    fn threshold_below_seven_e18() {
        let (c, s, o) = (iv(6.4e16), iv(0.42), iv(0.1));
        let n0 = baker_threshold(&c, &s, &o).unwrap();
        let limit = BigInt::from(7) * BigInt::from(10).pow(18);
        assert!(n0 <= limit);
        assert!(baker_gap(&c, &s, &o, &limit).is_positive());
        assert!(!baker_gap(&c, &s, &o, &(&n0 - 1)).is_positive());
        assert_eq!(n0, "6711388138689394425".parse::<BigInt>().unwrap());
    }

    #[test]
    fn zero_constant() {
        let n0 = baker_threshold(&RatInterval::from_int(0), &iv(0.42), &iv(0.1)).unwrap();
        assert_eq!(n0, BigInt::one());
    }

    #[test]
    fn monotone_in_constant() {
        let (s, o) = (iv(0.5), iv(-1.0));
        let mut prev = BigInt::zero();
        for c in [0.0, 1.0, 10.0, 1e3, 1e6] {
            let n0 = baker_threshold(&iv(c), &s, &o).unwrap();
            assert!(n0 >= prev);
            prev = n0;
        }
    }
}
