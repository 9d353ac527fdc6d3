//! Dense univariate polynomials over ℚ, lowest degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::interval::{CInterval, RatInterval};
use super::rational::{denominator_lcm, int, pow2_rat, Rational};
use crate::error::{invalid, Error, Result};

/// Polynomial with rational coefficients; the empty vector is zero and the
/// last stored coefficient is never zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyQ {
    coeffs: Vec<Rational>,
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints<T: Into<BigInt> + Copy>(c: &[T]) -> Self {
        Self::new(c.iter().map(|&x| int(x)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c·x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn int_coeffs(&self) -> Option<Vec<BigInt>> {
        self.is_integral()
            .then(|| self.coeffs.iter().map(|c| c.to_integer()).collect())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Primitive integer multiple with positive leading coefficient.
    pub fn primitive(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let l = denominator_lcm(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_interval(&self, x: &RatInterval) -> RatInterval {
        self.coeffs.iter().rev().fold(RatInterval::from_int(0), |acc, c| {
            &(&acc * x) + &RatInterval::point(c.clone())
        })
    }

    pub fn eval_complex(&self, z: &CInterval) -> CInterval {
        self.coeffs.iter().rev().fold(
            CInterval::real(RatInterval::from_int(0)),
            |acc, c| &(&acc * z) + &CInterval::real(RatInterval::point(c.clone())),
        )
    }

    /// Euclidean division `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &PolyQ) -> (PolyQ, PolyQ) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lead_inv = d.leading().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &PolyQ) -> PolyQ {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &PolyQ) -> PolyQ {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Squarefree part `p / gcd(p, p')`, monic.
    pub fn squarefree(&self) -> PolyQ {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn pow(&self, n: u32) -> PolyQ {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `x^deg · p(1/x)`.
    pub fn reversed(&self) -> PolyQ {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// Drops factors of `x`.
    pub fn strip_zero_roots(&self) -> PolyQ {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        Self::new(self.coeffs[k..].to_vec())
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let show_coeff = !a.is_one() || k == 0;
            if show_coeff {
                out.push_str(&a.to_string());
            }
            match k {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{k}")),
            }
        }
        out
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("x"))
    }
}

impl Add for &PolyQ {
    type Output = PolyQ;
    fn add(self, o: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyQ::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &PolyQ {
    type Output = PolyQ;
    fn sub(self, o: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyQ::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &PolyQ {
    type Output = PolyQ;
    fn mul(self, o: &PolyQ) -> PolyQ {
        if self.is_zero() || o.is_zero() {
            return PolyQ::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        PolyQ::new(c)
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Checks that `p` is a monic integer cubic and returns `(b, c, d)` for
/// `x^3 + b x^2 + c x + d`.
pub fn cubic_coeffs(p: &PolyQ) -> Result<[BigInt; 3]> {
    if p.degree() != Some(3) || !p.is_monic() || !p.is_integral() {
        return invalid(format!("expected a monic integer cubic, got {p}"));
    }
    let c = p.int_coeffs().unwrap();
    Ok([c[2].clone(), c[1].clone(), c[0].clone()])
}

/// `Π_{i<j} (r_i - r_j)^2` for a monic integer cubic.
pub fn cubic_discriminant(p: &PolyQ) -> Result<BigInt> {
    let [b, c, d] = cubic_coeffs(p)?;
    let b2 = &b * &b;
    let c2 = &c * &c;
    Ok(&b2 * &c2 - 4 * &c2 * &c - 4 * &b2 * &b * &d - 27 * &d * &d + 18 * &b * &c * &d)
}

/// A monic integer cubic is irreducible over ℚ iff it has no integer root,
/// and any integer root divides the constant term.
pub fn cubic_irreducible(p: &PolyQ) -> Result<bool> {
    let [_, _, d] = cubic_coeffs(p)?;
    if d.is_zero() {
        return Ok(false);
    }
    Ok(divisors(&d.abs())
        .iter()
        .all(|r| !p.eval(&int(r.clone())).is_zero() && !p.eval(&int(-r.clone())).is_zero()))
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    // The cubics met here have small constant terms; trial division is ample.
    let mut out = vec![];
    let mut k = BigInt::one();
    while &k * &k <= *n {
        if (n % &k).is_zero() {
            out.push(k.clone());
            out.push(n / &k);
        }
        k += 1;
    }
    out
}

/// The `k`-th cyclotomic polynomial.
pub fn cyclotomic(k: u32) -> PolyQ {
    assert!(k >= 1);
    let mut p = &PolyQ::monomial(Rational::one(), k as usize) - &PolyQ::one();
    for d in 1..k {
        if k.is_multiple_of(d) {
            p = p.div_rem(&cyclotomic(d)).0;
        }
    }
    p
}

/// Sturm chain of a squarefree polynomial.
fn sturm_chain(p: &PolyQ) -> Vec<PolyQ> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            return chain;
        }
        chain.push(-&r);
    }
}

fn sign_changes(chain: &[PolyQ], x: &Rational) -> usize {
    let signs: Vec<bool> = chain
        .iter()
        .map(|q| q.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Power of two strictly larger than every root modulus (Cauchy bound).
pub fn root_bound(p: &PolyQ) -> Rational {
    let lead = p.leading().abs();
    let m = p
        .coeffs
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rational::zero);
    let b = m + int(1);
    let mut k = 0i64;
    while pow2_rat(k) <= b {
        k += 1;
    }
    pow2_rat(k)
}

/// Number of distinct real roots of `p` in `(a, b]`.
pub fn count_real_roots(p: &PolyQ, a: &Rational, b: &Rational) -> usize {
    let sq = p.squarefree();
    if sq.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let chain = sturm_chain(&sq);
    sign_changes(&chain, a).saturating_sub(sign_changes(&chain, b))
}

/// Enclosure of the largest real root with width at most `eps`.
pub fn largest_real_root(p: &PolyQ, eps: &Rational) -> Result<RatInterval> {
    if p.degree().unwrap_or(0) == 0 {
        return invalid("largest_real_root of a constant polynomial");
    }
    let sq = p.squarefree();
    let chain = sturm_chain(&sq);
    let bound = root_bound(&sq);
    let mut lo = -bound.clone();
    let mut hi = bound;
    let v_hi = sign_changes(&chain, &hi);
    if sign_changes(&chain, &lo) == v_hi {
        return Err(Error::NoRealRoot);
    }
    // Invariant: the largest root lies in (lo, hi].
    let two = int(2);
    while &hi - &lo > *eps {
        let mid = (&lo + &hi) / &two;
        if sign_changes(&chain, &mid) > v_hi {
            lo = mid;
        } else {
            if sq.eval(&mid).is_zero() {
                return Ok(RatInterval::point(mid));
            }
            hi = mid;
        }
    }
    if sq.eval(&hi).is_zero() {
        return Ok(RatInterval::point(hi));
    }
    Ok(RatInterval::from_ordered(lo, hi))
}

/// Enclosures of all real roots in increasing order, each of width `<= eps`.
pub fn real_roots(p: &PolyQ, eps: &Rational) -> Result<Vec<RatInterval>> {
    if p.degree().unwrap_or(0) == 0 {
        return invalid("real_roots of a constant polynomial");
    }
    let sq = p.squarefree();
    let chain = sturm_chain(&sq);
    let bound = root_bound(&sq);
    let mut out = vec![];
    isolate(&sq, &chain, -bound.clone(), bound, eps, &mut out);
    Ok(out)
}

fn isolate(
    p: &PolyQ,
    chain: &[PolyQ],
    lo: Rational,
    hi: Rational,
    eps: &Rational,
    out: &mut Vec<RatInterval>,
) {
    let n = sign_changes(chain, &lo) - sign_changes(chain, &hi);
    if n == 0 {
        return;
    }
    if n == 1 && &hi - &lo <= *eps {
        let iv = if p.eval(&hi).is_zero() {
            RatInterval::point(hi)
        } else {
            RatInterval::from_ordered(lo, hi)
        };
        out.push(iv);
        return;
    }
    let mid = (&lo + &hi) / int(2);
    isolate(p, chain, lo, mid.clone(), eps, out);
    isolate(p, chain, mid, hi, eps, out);
}
