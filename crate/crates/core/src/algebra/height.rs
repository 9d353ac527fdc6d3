//! Relative Weil heights of elements of `K` and the `h'` normalisation used
//! in linear-forms-in-logarithms bounds.
//!
//! `height_rel(a) = (6/deg)·log a_d + Σ_σ log⁺|σ(a)|` where `a_d` is the
//! leading coefficient of the primitive integer minimal polynomial and `σ`
//! runs over the six embeddings of `K`. Each root of the minimal polynomial
//! appears `6/deg` times among the conjugates, so this is `6/deg` times the
//! Mahler measure.

use num_bigint::BigInt;
use num_traits::One;

use super::elementary::{abs_log, bits_for, log_iv, log_rat};
use super::field::KElem;
use super::interval::{CInterval, RatInterval};
use super::rational::{int, rat, Rational};
use crate::error::{invalid, Error, Result};

const MAX_EXTRA_BITS: u32 = 4096;

/// `log max(1, |z|)` over a complex enclosure.
fn log_plus(z: &CInterval, bits: u32) -> Result<RatInterval> {
    let n2 = z.norm_sqr();
    let one = Rational::one();
    if n2.hi() <= &one {
        return Ok(RatInterval::from_int(0));
    }
    let upper = log_rat(n2.hi(), bits)?.hi() / int(2);
    if n2.lo() >= &one {
        let lower = log_rat(n2.lo(), bits)?.lo() / int(2);
        return RatInterval::new(lower, upper);
    }
    RatInterval::new(Rational::from_integer(0.into()), upper)
}

fn height_at(a: &KElem, deg: usize, lead: &BigInt, bits: u32) -> Result<RatInterval> {
    let mut total = if lead.is_one() {
        RatInterval::from_int(0)
    } else {
        log_rat(&int(lead.clone()), bits + 4)?.scale(&rat(6, deg as i64))
    };
    for z in a.conjugates(bits + 4) {
        total = &total + &log_plus(&z, bits + 4)?;
    }
    Ok(total)
}

/// Enclosure of the relative height `6·h_abs(a)`, width `<= eps`.
pub fn height_rel(a: &KElem, eps: &Rational) -> Result<RatInterval> {
    if a.is_zero() {
        return invalid("height of 0");
    }
    let mp = a.min_poly();
    let deg = mp.degree().unwrap_or(1).max(1);
    let lead = mp.primitive().pop().expect("nonzero minimal polynomial");
    let base = bits_for(eps) + 4;
    let mut extra = 0;
    loop {
        let h = height_at(a, deg, &lead, base + extra)?;
        if h.width() <= *eps {
            return Ok(h);
        }
        extra = extra * 2 + 16;
        if extra > MAX_EXTRA_BITS {
            return Err(Error::PrecisionExhausted(format!("height of {a} to width {eps}")));
        }
    }
}

/// Enclosure of `|log a|` on the principal branch under the fixed embedding.
pub fn abs_log_embedded(a: &KElem, eps: &Rational) -> Result<RatInterval> {
    if a.is_zero() {
        return invalid("log of 0");
    }
    let base = bits_for(eps) + 4;
    let mut extra = 0;
    loop {
        let z = a.embed_bits(base + extra + 8);
        match abs_log(&z, base + extra) {
            Ok(r) if r.width() <= *eps => return Ok(r),
            Ok(_) | Err(Error::Domain(_)) => {}
            Err(e) => return Err(e),
        }
        extra = extra * 2 + 16;
        if extra > MAX_EXTRA_BITS {
            return Err(Error::PrecisionExhausted(format!("|log {a}| to width {eps}")));
        }
    }
}

/// Enclosure of `log |a|` under the fixed embedding.
pub fn log_abs_embedded(a: &KElem, eps: &Rational) -> Result<RatInterval> {
    if a.is_zero() {
        return invalid("log of 0");
    }
    let base = bits_for(eps) + 4;
    let mut extra = 0;
    loop {
        let n2 = a.embed_bits(base + extra + 8).norm_sqr();
        if n2.is_positive() {
            let r = log_iv(&n2, base + extra)?.scale(&rat(1, 2));
            if r.width() <= *eps {
                return Ok(r);
            }
        }
        extra = extra * 2 + 16;
        if extra > MAX_EXTRA_BITS {
            return Err(Error::PrecisionExhausted(format!("log|{a}| to width {eps}")));
        }
    }
}

/// Enclosure of `h'(a) = (1/6)·max(height_rel(a), |log a|, 1)`.
pub fn h_prime(a: &KElem, eps: &Rational) -> Result<RatInterval> {
    let inner = eps * int(3);
    let h = height_rel(a, &inner)?;
    let l = abs_log_embedded(a, &inner)?;
    let m = h.max(&l).max(&RatInterval::from_int(1));
    Ok(m.scale(&rat(1, 6)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::elementary::pi_iv;
    use crate::algebra::field::SplitCubicField;
    use crate::algebra::rational::pow2_rat;

    fn eps(k: i64) -> Rational {
        pow2_rat(-k)
    }

    #[test]
    fn rational_heights() {
        let f = SplitCubicField::from_coeffs(1, 0, -1).unwrap();
        assert_eq!(height_rel(&f.one(), &eps(30)).unwrap(), RatInterval::from_int(0));
        let h2 = height_rel(&f.from_int(2), &eps(30)).unwrap();
        let (lo, hi) = h2.to_f64_bounds();
        assert!(lo - 1e-12 <= 6.0 * 2f64.ln() && 6.0 * 2f64.ln() <= hi + 1e-12);
        assert!(h2.width() <= eps(30));
        let h_half = height_rel(&f.from_rational(rat(1, 2)), &eps(30)).unwrap();
        assert!(h_half.overlaps(&h2));
        assert!(height_rel(&f.zero(), &eps(10)).is_err());
    }

    #[test]
    fn ratio_of_complex_roots() {
        let f = SplitCubicField::from_coeffs(1, 0, -1).unwrap();
        let (_, p, m) = f.roots();
        let r = p.checked_div(&m).unwrap();
        let h = height_rel(&r, &eps(32)).unwrap();
        assert!(h.width() <= eps(32));
        let (lo, hi) = h.to_f64_bounds();
        assert!(lo - 1e-12 <= 0.843598722968886 && 0.843598722968886 <= hi + 1e-12);
        let hp = h_prime(&r, &eps(30)).unwrap();
        // |log(ξ₁/ξ₂)| = 2·arg ξ₁ ≈ 1.4076 dominates the height here.
        assert!(hp.hi() < pi_iv(30).scale(&rat(1, 6)).lo());
    }

    #[test]
    fn h_prime_of_minus_one() {
        let f = SplitCubicField::from_coeffs(1, 0, -1).unwrap();
        let hp = h_prime(&f.from_int(-1), &eps(40)).unwrap();
        let want = pi_iv(50).scale(&rat(1, 6));
        assert!(hp.overlaps(&want));
        assert!(hp.width() <= eps(40));
    }
}
