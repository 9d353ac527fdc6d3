//! Certified `log`, `atan`, `π` and `sqrt` over rational intervals.
//!
//! Every function takes a precision in bits and returns an enclosure whose
//! width, for a point argument, is at most `2^-bits`. Internally all series
//! are summed with outward-rounded dyadic partial sums.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::interval::{CInterval, RatInterval};
use super::rational::{ilog2, int, pow2, pow2_rat, rat, Rational};
use crate::error::{Error, Result};

const GUARD: u32 = 16;

/// Smallest `bits` with `2^-bits <= eps`.
pub fn bits_for(eps: &Rational) -> u32 {
    assert!(eps.is_positive(), "eps must be positive");
    let k = -ilog2(eps);
    (k.max(0) as u32) + 1
}

/// `Σ s_k x^(2k+1)/(2k+1)` for `0 <= x <= 1/2`, with `s_k = 1` (atanh) or
/// `(-1)^k` (atan). The tail is bounded by `(4/3)·x^(2K+1)/(2K+1)` in both
/// cases. Summed in fixed point with scale `2^w`, lower and upper bounds
/// carried separately.
fn odd_series(x: &Rational, w: u32, alternating: bool) -> RatInterval {
    debug_assert!(!x.is_negative() && *x <= rat(1, 2));
    if x.is_zero() {
        return RatInterval::from_int(0);
    }
    let one = pow2(w);
    let scaled = x.numer() << w as usize;
    let (x_lo, x_hi) = (scaled.div_floor(x.denom()), Integer::div_ceil(&scaled, x.denom()));
    let x2_lo = (&x_lo * &x_lo) >> w as usize;
    let x2_hi = Integer::div_ceil(&(&x_hi * &x_hi), &one);
    let (mut p_lo, mut p_hi) = (x_lo, x_hi);
    let (mut s_lo, mut s_hi) = (BigInt::zero(), BigInt::zero());
    let mut k: u64 = 0;
    loop {
        let denom = BigInt::from(2 * k + 1);
        if p_hi < denom {
            let tail = Integer::div_ceil(&(&p_hi * 4), &(&denom * 3)) + 1;
            s_lo -= &tail;
            s_hi += &tail;
            return RatInterval::from_ordered(Rational::new(s_lo, one.clone()), Rational::new(s_hi, one));
        }
        let t_lo = p_lo.div_floor(&denom);
        let t_hi = Integer::div_ceil(&p_hi, &denom);
        if alternating && k % 2 == 1 {
            s_lo -= t_hi;
            s_hi -= t_lo;
        } else {
            s_lo += t_lo;
            s_hi += t_hi;
        }
        p_lo = (&p_lo * &x2_lo) >> w as usize;
        p_hi = Integer::div_ceil(&(&p_hi * &x2_hi), &one);
        k += 1;
    }
}

fn atanh_small(x: &Rational, w: u32) -> RatInterval {
    if x.is_negative() {
        -&odd_series(&-x.clone(), w, false)
    } else {
        odd_series(x, w, false)
    }
}

/// Enclosure of `ln 2 = 2·atanh(1/3)`.
pub fn ln2(bits: u32) -> RatInterval {
    let w = bits + GUARD;
    let a = odd_series(&rat(1, 3), w, false);
    (&a + &a).round_out(bits + 2)
}

/// Enclosure of `log q` for a positive rational.
pub fn log_rat(q: &Rational, bits: u32) -> Result<RatInterval> {
    if !q.is_positive() {
        return Err(Error::Domain(format!("log of nonpositive {q}")));
    }
    if q.is_one() {
        return Ok(RatInterval::from_int(0));
    }
    let mut k = ilog2(q);
    let mut m = q / pow2_rat(k);
    if m > rat(4, 3) {
        m /= int(2);
        k += 1;
    }
    // m in [2/3, 4/3], so |y| <= 1/5.
    let y = (&m - int(1)) / (&m + int(1));
    let k_bits = 64 - (k.unsigned_abs()).leading_zeros();
    let w = bits + GUARD + k_bits;
    let a = atanh_small(&y, w);
    let two_atanh = &a + &a;
    let total = if k == 0 {
        two_atanh
    } else {
        &two_atanh + &ln2(w).scale(&int(k))
    };
    Ok(total.round_out(bits + 2))
}

/// Enclosure of `log x` over a positive interval.
pub fn log_iv(x: &RatInterval, bits: u32) -> Result<RatInterval> {
    if !x.is_positive() {
        return Err(Error::Domain(format!("log of interval {x} touching 0")));
    }
    let lo = log_rat(x.lo(), bits)?;
    if x.is_point() {
        return Ok(lo);
    }
    let hi = log_rat(x.hi(), bits)?;
    Ok(RatInterval::from_ordered(lo.lo().clone(), hi.hi().clone()))
}

/// Enclosure of `atan t` for a rational `t` of either sign.
pub fn atan_rat(t: &Rational, bits: u32) -> RatInterval {
    if t.is_negative() {
        return -&atan_rat(&-t.clone(), bits);
    }
    let w = bits + GUARD;
    let r = atan_nonneg(t, w);
    r.round_out(bits + 2)
}

fn atan_nonneg(t: &Rational, w: u32) -> RatInterval {
    if *t <= rat(1, 2) {
        return odd_series(t, w, true);
    }
    if *t <= int(1) {
        // atan t = atan(1/2) + atan((t - 1/2)/(1 + t/2)), second argument <= 1/3.
        let u = (t - rat(1, 2)) / (int(1) + t / int(2));
        return &odd_series(&rat(1, 2), w, true) + &odd_series(&u, w, true);
    }
    let half_pi = pi_raw(w).scale(&rat(1, 2));
    &half_pi - &atan_nonneg(&t.recip(), w)
}

/// Enclosure of `atan` over an interval (monotone).
pub fn atan_iv(x: &RatInterval, bits: u32) -> RatInterval {
    let lo = atan_rat(x.lo(), bits);
    if x.is_point() {
        return lo;
    }
    let hi = atan_rat(x.hi(), bits);
    RatInterval::from_ordered(lo.lo().clone(), hi.hi().clone())
}

fn pi_raw(w: u32) -> RatInterval {
    let a = odd_series(&rat(1, 5), w + 6, true).scale(&int(16));
    let b = odd_series(&rat(1, 239), w + 6, true).scale(&int(4));
    &a - &b
}

/// Enclosure of `π` (Machin's formula).
pub fn pi_iv(bits: u32) -> RatInterval {
    pi_raw(bits + GUARD).round_out(bits + 2)
}

/// Lower and upper dyadic approximations of `sqrt q`, `q >= 0`.
pub fn sqrt_rat(q: &Rational, bits: u32) -> Result<RatInterval> {
    if q.is_negative() {
        return Err(Error::Domain(format!("sqrt of negative {q}")));
    }
    let scaled = q * int(pow2(2 * bits));
    let r: BigInt = scaled.floor().to_integer().sqrt();
    let lo = Rational::new(r.clone(), pow2(bits));
    let exact = scaled.is_integer() && &r * &r == scaled.to_integer();
    let hi = if exact {
        lo.clone()
    } else {
        Rational::new(r + BigInt::one(), pow2(bits))
    };
    Ok(RatInterval::from_ordered(lo, hi))
}

/// Enclosure of `sqrt` over a nonnegative interval.
pub fn sqrt_iv(x: &RatInterval, bits: u32) -> Result<RatInterval> {
    if x.lo().is_negative() {
        return Err(Error::Domain(format!("sqrt of interval {x} with negative part")));
    }
    let lo = sqrt_rat(x.lo(), bits)?;
    if x.is_point() {
        return Ok(lo);
    }
    let hi = sqrt_rat(x.hi(), bits)?;
    Ok(RatInterval::from_ordered(lo.lo().clone(), hi.hi().clone()))
}

/// Enclosure of `x^(1/k)` over a nonnegative interval, endpoints rounded
/// outward to multiples of `2^-bits`.
pub fn nth_root_iv(x: &RatInterval, k: u32, bits: u32) -> RatInterval {
    assert!(k >= 1 && !x.lo().is_negative());
    let step = pow2_rat(-(bits as i64));
    // Largest dyadic r with r^k <= y, found by bisection on multiples of 2^-bits.
    let floor_root = |y: &Rational| -> Rational {
        let mut lo = Rational::zero();
        let mut hi = y.clone().max(Rational::one()) + &step;
        while &hi - &lo > step {
            let mid = super::rational::floor_bits(&((&lo + &hi) / int(2)), bits);
            let mid = if mid <= lo { &lo + &step } else { mid };
            if num_traits::pow(mid.clone(), k as usize) <= *y {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };
    let lo = floor_root(x.lo());
    let r = floor_root(x.hi());
    let hi = if num_traits::pow(r.clone(), k as usize) == *x.hi() { r } else { r + step };
    RatInterval::from_ordered(lo, hi)
}

/// Enclosure of `|arg z|` for the principal argument, `arg z ∈ (-π, π]`.
pub fn abs_arg(z: &CInterval, bits: u32) -> Result<RatInterval> {
    let y = z.im.abs();
    let x = &z.re;
    let w = bits + 4;
    if x.is_positive() {
        let t = y.checked_div(x)?;
        Ok(atan_iv(&t, w).round_out(bits + 2))
    } else if x.is_negative() {
        let t = y.checked_div(&x.abs())?;
        Ok((&pi_iv(w) - &atan_iv(&t, w)).round_out(bits + 2))
    } else if y.is_positive() {
        let t = x.checked_div(&y)?;
        let half_pi = pi_iv(w).scale(&rat(1, 2));
        Ok((&half_pi - &atan_iv(&t, w)).round_out(bits + 2))
    } else {
        Err(Error::Domain(format!(
            "argument of a complex enclosure containing 0: {} + i{}",
            z.re, z.im
        )))
    }
}

/// Enclosure of `|log z| = sqrt(log|z|^2 + arg(z)^2)` on the principal
/// branch.
pub fn abs_log(z: &CInterval, bits: u32) -> Result<RatInterval> {
    let w = bits + 8;
    let log_mod = log_iv(&z.norm_sqr(), w)?.scale(&rat(1, 2));
    let arg = abs_arg(z, w)?;
    let s = (&log_mod.sqr() + &arg.sqr()).round_out(w);
    Ok(sqrt_iv(&s, w)?.round_out(bits + 2))
}
