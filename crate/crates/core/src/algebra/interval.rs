//! Closed intervals with rational endpoints, plus rectangular complex
//! enclosures built on top of them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::rational::{ceil_bits, floor_bits, int, to_f64, Rational};
use crate::error::{Error, Result};

/// `[lo, hi]` with `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatInterval {
    lo: Rational,
    hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInput(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    /// Caller guarantees `lo <= hi`.
    pub(crate) fn from_ordered(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn from_int(n: i64) -> Self {
        Self::point(int(n))
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn into_bounds(self) -> (Rational, Rational) {
        (self.lo, self.hi)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        Rational::from_float(x).is_some_and(|q| self.contains(&q))
    }

    pub fn contains_interval(&self, other: &RatInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &RatInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Every point of `self` is strictly below every point of `other`.
    pub fn certainly_lt(&self, other: &RatInterval) -> bool {
        self.hi < other.lo
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }

    pub fn hull(&self, other: &RatInterval) -> RatInterval {
        Self {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// Outward rounding of both endpoints to multiples of `2^-bits`.
    pub fn round_out(&self, bits: u32) -> RatInterval {
        Self {
            lo: floor_bits(&self.lo, bits),
            hi: ceil_bits(&self.hi, bits),
        }
    }

    pub fn inflate(&self, r: &Rational) -> RatInterval {
        Self {
            lo: &self.lo - r,
            hi: &self.hi + r,
        }
    }

    pub fn abs(&self) -> RatInterval {
        if self.lo.is_negative() && self.hi.is_positive() {
            Self {
                lo: Rational::zero(),
                hi: self.hi.clone().max(-self.lo.clone()),
            }
        } else if self.hi.is_negative() || self.hi.is_zero() {
            Self {
                lo: -self.hi.clone(),
                hi: -self.lo.clone(),
            }
        } else {
            self.clone()
        }
    }

    pub fn sqr(&self) -> RatInterval {
        let a = self.abs();
        Self {
            lo: &a.lo * &a.lo,
            hi: &a.hi * &a.hi,
        }
    }

    pub fn pow(&self, n: u32) -> RatInterval {
        if n == 0 {
            return Self::from_int(1);
        }
        if n.is_multiple_of(2) {
            let a = self.abs();
            return Self {
                lo: num_traits::pow(a.lo, n as usize),
                hi: num_traits::pow(a.hi, n as usize),
            };
        }
        Self {
            lo: num_traits::pow(self.lo.clone(), n as usize),
            hi: num_traits::pow(self.hi.clone(), n as usize),
        }
    }

    pub fn recip(&self) -> Result<RatInterval> {
        if self.contains_zero() {
            return Err(Error::Domain(format!("reciprocal of {self} which contains 0")));
        }
        Ok(Self {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    pub fn checked_div(&self, other: &RatInterval) -> Result<RatInterval> {
        Ok(self * &other.recip()?)
    }

    pub fn max(&self, other: &RatInterval) -> RatInterval {
        Self {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn min(&self, other: &RatInterval) -> RatInterval {
        Self {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().min(other.hi.clone()),
        }
    }

    pub fn scale(&self, k: &Rational) -> RatInterval {
        self * &RatInterval::point(k.clone())
    }

    pub fn to_f64_bounds(&self) -> (f64, f64) {
        (to_f64(&self.lo), to_f64(&self.hi))
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_f64_bounds();
        write!(f, "[{lo:.12}, {hi:.12}]")
    }
}

impl Add for &RatInterval {
    type Output = RatInterval;
    fn add(self, o: &RatInterval) -> RatInterval {
        RatInterval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }
}

impl Sub for &RatInterval {
    type Output = RatInterval;
    fn sub(self, o: &RatInterval) -> RatInterval {
        RatInterval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }
}

impl Mul for &RatInterval {
    type Output = RatInterval;
    fn mul(self, o: &RatInterval) -> RatInterval {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        RatInterval { lo, hi }
    }
}

impl Neg for &RatInterval {
    type Output = RatInterval;
    fn neg(self) -> RatInterval {
        RatInterval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident, $t:ty) => {
        impl $tr for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add, RatInterval);
forward_owned!(Sub, sub, RatInterval);
forward_owned!(Mul, mul, RatInterval);

/// Axis-aligned rectangle `re + i·im` enclosing a complex number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CInterval {
    pub re: RatInterval,
    pub im: RatInterval,
}

impl CInterval {
    pub fn new(re: RatInterval, im: RatInterval) -> Self {
        Self { re, im }
    }

    pub fn real(re: RatInterval) -> Self {
        Self {
            re,
            im: RatInterval::from_int(0),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// Enclosure of `|z|^2`.
    pub fn norm_sqr(&self) -> RatInterval {
        &self.re.sqr() + &self.im.sqr()
    }

    pub fn max_width(&self) -> Rational {
        self.re.width().max(self.im.width())
    }

    pub fn contains(&self, re: &Rational, im: &Rational) -> bool {
        self.re.contains(re) && self.im.contains(im)
    }

    pub fn contains_f64(&self, re: f64, im: f64) -> bool {
        self.re.contains_f64(re) && self.im.contains_f64(im)
    }

    pub fn round_out(&self, bits: u32) -> Self {
        Self {
            re: self.re.round_out(bits),
            im: self.im.round_out(bits),
        }
    }

    pub fn scale(&self, k: &RatInterval) -> Self {
        Self {
            re: &self.re * k,
            im: &self.im * k,
        }
    }
}

impl Add for &CInterval {
    type Output = CInterval;
    fn add(self, o: &CInterval) -> CInterval {
        CInterval {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl Sub for &CInterval {
    type Output = CInterval;
    fn sub(self, o: &CInterval) -> CInterval {
        CInterval {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl Mul for &CInterval {
    type Output = CInterval;
    fn mul(self, o: &CInterval) -> CInterval {
        CInterval {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }
}

forward_owned!(Add, add, CInterval);
forward_owned!(Sub, sub, CInterval);
forward_owned!(Mul, mul, CInterval);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn iv(a: i64, b: i64) -> RatInterval {
        RatInterval::new(int(a), int(b)).unwrap()
    }

    #[test]
    fn rejects_reversed() {
        assert!(RatInterval::new(int(2), int(1)).is_err());
    }

    #[test]
    fn products_cover_sign_cases() {
        assert_eq!(&iv(-2, 3) * &iv(-5, 1), iv(-15, 10));
        assert_eq!(&iv(-2, -1) * &iv(-2, -1), iv(1, 4));
        assert_eq!(iv(-2, 3).sqr(), iv(0, 9));
        assert_eq!(iv(-3, -2).pow(3), iv(-27, -8));
    }

    #[test]
    fn reciprocal_excludes_zero() {
        assert!(iv(-1, 1).recip().is_err());
        assert_eq!(iv(2, 4).recip().unwrap(), RatInterval::new(rat(1, 4), rat(1, 2)).unwrap());
    }

    #[test]
    fn complex_product_encloses() {
        let i = CInterval::new(iv(0, 0), iv(1, 1));
        let p = &i * &i;
        assert_eq!(p.re, iv(-1, -1));
        assert!(p.im.is_point() && p.im.lo().is_zero());
    }

    #[test]
    fn round_out_contains_original() {
        let x = RatInterval::new(rat(1, 3), rat(2, 3)).unwrap();
        assert!(x.round_out(4).contains_interval(&x));
    }
}
