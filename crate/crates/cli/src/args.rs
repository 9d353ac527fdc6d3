//! Value parsers for command-line flags.

use std::ops::RangeInclusive;

use dyndeg_core::algebra::Rational;
use num_bigint::BigInt;

/// `"1/1000000"`, `"0.000001"` or `"1e-6"`, parsed exactly.
pub fn rational(s: &str) -> Result<Rational, String> {
    let q = if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let d: BigInt = d.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if d == BigInt::from(0) {
            return Err("zero denominator".into());
        }
        Rational::new(n, d)
    } else {
        decimal(s)?
    };
    Ok(q)
}

fn decimal(s: &str) -> Result<Rational, String> {
    let bad = || format!("not a number: {s:?}");
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits: BigInt = format!("{int_part}{frac}").parse().map_err(|_| bad())?;
    let shift = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    Ok(if shift >= 0 {
        Rational::from_integer(digits * ten.pow(shift as u32))
    } else {
        Rational::new(digits, ten.pow(shift.unsigned_abs()))
    })
}

pub fn positive_rational(s: &str) -> Result<Rational, String> {
    let q = rational(s)?;
    if q <= Rational::from_integer(0.into()) {
        return Err("must be positive".into());
    }
    Ok(q)
}

/// `"LO..HI"` with `2 <= LO <= HI`.
pub fn moduli(s: &str) -> Result<RangeInclusive<u64>, String> {
    let (lo, hi) = s.split_once("..").ok_or("expected LO..HI")?;
    let lo: u64 = lo.trim().parse().map_err(|_| format!("bad lower modulus {lo:?}"))?;
    let hi: u64 = hi.trim().trim_start_matches('=').parse().map_err(|_| format!("bad upper modulus {hi:?}"))?;
    if lo < 2 || lo > hi {
        return Err(format!("need 2 <= LO <= HI, got {lo}..{hi}"));
    }
    Ok(lo..=hi)
}

pub fn step_cap(s: &str) -> Result<u64, String> {
    let n = integer(s)?;
    let n = u64::try_from(n).map_err(|_| "step cap out of range".to_string())?;
    if n < 1000 {
        return Err("step cap must be at least 1000".into());
    }
    Ok(n)
}

/// A nonnegative integer, also accepting `7e18`.
pub fn integer(s: &str) -> Result<BigInt, String> {
    let q = decimal(s)?;
    if !q.is_integer() || q < Rational::from_integer(0.into()) {
        return Err(format!("expected a nonnegative integer, got {s:?}"));
    }
    Ok(q.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_numbers() {
        let micro = Rational::new(1.into(), 1_000_000.into());
        assert_eq!(rational("1e-6").unwrap(), micro);
        assert_eq!(rational("0.000001").unwrap(), micro);
        assert_eq!(rational("1/1000000").unwrap(), micro);
        assert!(positive_rational("0").is_err());
        assert!(rational("1/0").is_err());
        assert_eq!(integer("7e18").unwrap(), BigInt::from(7_000_000_000_000_000_000u64));
        assert!(integer("1.5").is_err());
    }

    #[test]
    fn parses_ranges() {
        assert_eq!(moduli("5..1999").unwrap(), 5..=1999);
        assert_eq!(moduli("5..=59").unwrap(), 5..=59);
        assert!(moduli("9..5").is_err());
        assert!(moduli("1..5").is_err());
        assert!(step_cap("999").is_err());
        assert_eq!(step_cap("1e7").unwrap(), 10_000_000);
    }
}
