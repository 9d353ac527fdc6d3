//! Helpers around [`BigRational`]: constructors, dyadic rounding and text
//! conversions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Result};

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int<T: Into<BigInt>>(n: T) -> Rational {
    BigRational::from_integer(n.into())
}

pub fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

/// Largest multiple of `2^-bits` that is `<= q`.
pub fn floor_bits(q: &Rational, bits: u32) -> Rational {
    let scaled = q.numer() << bits as usize;
    BigRational::new(scaled.div_floor(q.denom()), pow2(bits))
}

/// Smallest multiple of `2^-bits` that is `>= q`.
pub fn ceil_bits(q: &Rational, bits: u32) -> Rational {
    let scaled = q.numer() << bits as usize;
    BigRational::new(Integer::div_ceil(&scaled, q.denom()), pow2(bits))
}

/// Nearest multiple of `2^-bits` (ties away from the floor).
pub fn round_bits(q: &Rational, bits: u32) -> Rational {
    let scaled: BigRational = q * BigRational::from_integer(pow2(bits));
    BigRational::new(scaled.round().to_integer(), pow2(bits))
}

/// Exact conversion of a finite float.
pub fn from_f64(x: f64) -> Option<Rational> {
    BigRational::from_float(x)
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Too large for a direct conversion: go through the bit lengths.
        let shift = q.numer().bits() as i64 - q.denom().bits() as i64 - 60;
        let scaled = if shift > 0 {
            BigRational::new(q.numer().clone(), q.denom() << shift as usize)
        } else {
            BigRational::new(q.numer() << (-shift) as usize, q.denom().clone())
        };
        scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
    })
}

/// `floor(log2 |q|)` for nonzero `q`.
pub fn ilog2(q: &Rational) -> i64 {
    debug_assert!(!q.is_zero());
    let n = q.numer().abs();
    let d = q.denom();
    let mut k = n.bits() as i64 - d.bits() as i64;
    // 2^k <= |q| < 2^(k+1) after at most one correction step.
    let two_k = |k: i64| -> Rational {
        if k >= 0 {
            BigRational::from_integer(pow2(k as u32))
        } else {
            BigRational::new(BigInt::one(), pow2((-k) as u32))
        }
    };
    let a = BigRational::new(n, d.clone());
    if a < two_k(k) {
        k -= 1;
    }
    k
}

/// `2^k` as a rational, `k` of either sign.
pub fn pow2_rat(k: i64) -> Rational {
    if k >= 0 {
        BigRational::from_integer(pow2(k as u32))
    } else {
        BigRational::new(BigInt::one(), pow2((-k) as u32))
    }
}

/// Serialized form used in certificates: always `num/den`.
pub fn to_ratio_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p/q`, an integer, or a decimal with optional exponent
/// (`1e-6`, `0.25`, `-3.5E2`) into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return invalid("empty number");
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad(s))?;
        let d: BigInt = d.trim().parse().map_err(|_| bad(s))?;
        if d.is_zero() {
            return invalid(format!("zero denominator in {s:?}"));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..].parse().map_err(|_| bad(s))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad(s));
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad(s));
    }
    let all: BigInt = format!("{int_part}{frac_part}0").parse().map_err(|_| bad(s))?;
    let all = all / BigInt::from(10);
    let scale = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let mut q = if scale >= 0 {
        BigRational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        q = -q;
    }
    Ok(q)
}

fn bad(s: &str) -> crate::error::Error {
    crate::error::Error::InvalidInput(format!("not a number: {s:?}"))
}

/// Least common multiple of all denominators.
pub fn denominator_lcm<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}
