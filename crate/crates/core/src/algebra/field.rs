//! Exact arithmetic in the splitting field `K = ℚ(θ)[δ]` of a monic integer
//! cubic with negative discriminant `D`, where `θ` is the real root and
//! `δ^2 = D`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::elementary::{bits_for, sqrt_rat};
use super::interval::{CInterval, RatInterval};
use super::linalg::RatMatrix;
use super::poly::{cubic_coeffs, cubic_discriminant, cubic_irreducible, cyclotomic, root_bound, PolyQ};
use super::rational::{int, pow2_rat, Rational};
use crate::error::{invalid, Error, Result};

/// Orders `k` with `φ(k) <= 6`: the only possible orders of roots of unity
/// in a degree-6 field.
pub const CYCLOTOMIC_ORDERS: [u32; 13] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 18];

struct FieldData {
    cubic: PolyQ,
    /// `x^3 + b x^2 + c x + d`
    b: Rational,
    c: Rational,
    d: Rational,
    disc: BigInt,
    /// Tightest enclosure of the real root computed so far.
    theta: Mutex<RatInterval>,
}

/// Handle to a splitting field; cheap to clone.
#[derive(Clone)]
pub struct SplitCubicField(Arc<FieldData>);

impl fmt::Debug for SplitCubicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SplitCubicField({}, D = {})", self.0.cubic, self.0.disc)
    }
}

impl PartialEq for SplitCubicField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.cubic == other.0.cubic
    }
}
impl Eq for SplitCubicField {}

impl SplitCubicField {
    /// Requires an irreducible monic integer cubic with `D < 0`.
    pub fn new(cubic: &PolyQ) -> Result<Self> {
        let [b, c, d] = cubic_coeffs(cubic)?;
        if !cubic_irreducible(cubic)? {
            return Err(Error::Unsupported(format!("{cubic} is reducible over ℚ")));
        }
        let disc = cubic_discriminant(cubic)?;
        if !disc.is_negative() {
            return Err(Error::Unsupported(format!(
                "{cubic} has discriminant {disc} >= 0; only one-real-root cubics are supported"
            )));
        }
        let bound = root_bound(cubic);
        let theta = RatInterval::from_ordered(-bound.clone(), bound);
        Ok(Self(Arc::new(FieldData {
            cubic: cubic.clone(),
            b: int(b),
            c: int(c),
            d: int(d),
            disc,
            theta: Mutex::new(theta),
        })))
    }

    /// Field of `x^3 + b x^2 + c x + d`.
    pub fn from_coeffs(b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(&PolyQ::from_ints(&[d, c, b, 1]))
    }

    pub fn cubic(&self) -> &PolyQ {
        &self.0.cubic
    }

    pub fn disc(&self) -> &BigInt {
        &self.0.disc
    }

    /// `(b, c, d)` of `x^3 + b x^2 + c x + d`.
    pub fn coeffs(&self) -> (&Rational, &Rational, &Rational) {
        (&self.0.b, &self.0.c, &self.0.d)
    }

    pub fn elem(&self, coords: [Rational; 6]) -> KElem {
        KElem {
            f: self.clone(),
            c: coords,
        }
    }

    pub fn from_rational(&self, q: Rational) -> KElem {
        let mut c: [Rational; 6] = Default::default();
        c[0] = q;
        self.elem(c)
    }

    pub fn from_int(&self, n: i64) -> KElem {
        self.from_rational(int(n))
    }

    pub fn zero(&self) -> KElem {
        self.from_int(0)
    }

    pub fn one(&self) -> KElem {
        self.from_int(1)
    }

    pub fn theta(&self) -> KElem {
        let mut c: [Rational; 6] = Default::default();
        c[1] = Rational::one();
        self.elem(c)
    }

    pub fn delta(&self) -> KElem {
        let mut c: [Rational; 6] = Default::default();
        c[3] = Rational::one();
        self.elem(c)
    }

    /// `(θ, ξ₊, ξ₋)` with `ξ± = (-(b+θ) ± δ/p'(θ))/2`. Under the fixed
    /// embedding `ξ₊` has positive imaginary part.
    pub fn roots(&self) -> (KElem, KElem, KElem) {
        let theta = self.theta();
        let (b, c, _) = self.coeffs();
        let dp = &(&(&theta * &theta) * &self.from_int(3))
            + &(&(&theta * &self.from_rational(b * int(2))) + &self.from_rational(c.clone()));
        let dp_inv = dp.inv().expect("p'(θ) vanishes only at a repeated root");
        let half = self.from_rational(Rational::new(1.into(), 2.into()));
        let base = -&(&self.from_rational(b.clone()) + &theta);
        let s = &self.delta() * &dp_inv;
        let plus = &(&base + &s) * &half;
        let minus = &(&base - &s) * &half;
        (theta, plus, minus)
    }

    /// Enclosure of the real root of width `<= 2^-bits`.
    pub fn theta_enclosure(&self, bits: u32) -> RatInterval {
        let target = pow2_rat(-(bits as i64));
        let mut guard = self.0.theta.lock().unwrap_or_else(|e| e.into_inner());
        if guard.width() <= target {
            return guard.clone();
        }
        let (mut lo, mut hi) = guard.clone().into_bounds();
        let two = int(2);
        // The cubic is negative left of its only real root and positive right of it.
        while &hi - &lo > target {
            let mid = (&lo + &hi) / &two;
            let v = self.0.cubic.eval(&mid);
            if v.is_zero() {
                lo = mid.clone();
                hi = mid;
                break;
            }
            if v.is_negative() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        *guard = RatInterval::from_ordered(lo, hi);
        guard.clone()
    }

    /// Enclosure of `sqrt|D|`.
    pub fn sqrt_abs_disc(&self, bits: u32) -> RatInterval {
        sqrt_rat(&int(self.0.disc.abs()), bits).expect("|D| is nonnegative")
    }

    /// Images of `(θ, δ)` under embedding `k` in `0..6`. Embedding 0 is the
    /// fixed one (`θ` real, `δ ↦ +i·sqrt|D|`); `k/2` picks the image of `θ`
    /// among (real root, upper root, lower root) and `k%2` flips `δ`.
    pub fn embedding_images(&self, k: usize, bits: u32) -> (CInterval, CInterval) {
        assert!(k < 6);
        let t = self.theta_enclosure(bits);
        let s = self.sqrt_abs_disc(bits);
        let (b, c, _) = self.coeffs();
        let theta_img = match k / 2 {
            0 => CInterval::real(t),
            j => {
                let re = (&RatInterval::point(b.clone()) + &t).scale(&Rational::new((-1).into(), 2.into()));
                // p'(θ) = 3θ^2 + 2bθ + c is positive at the real root.
                let dp = &(&t.sqr().scale(&int(3)) + &t.scale(&(b * int(2))))
                    + &RatInterval::point(c.clone());
                let im = s
                    .checked_div(&dp.scale(&int(2)))
                    .expect("p'(θ) enclosure separated from zero at working precision");
                CInterval::new(re, if j == 1 { im } else { -&im })
            }
        };
        let delta_im = if k.is_multiple_of(2) { s } else { -&s };
        (theta_img, CInterval::new(RatInterval::from_int(0), delta_im))
    }
}

type Qt = [Rational; 3];

fn qt_mul(f: &FieldData, a: &[Rational], b: &[Rational]) -> Qt {
    let mut p: [Rational; 5] = Default::default();
    for i in 0..3 {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..3 {
            p[i + j] += &a[i] * &b[j];
        }
    }
    // θ^3 = -bθ^2 - cθ - d
    for k in (3..5).rev() {
        let t = std::mem::take(&mut p[k]);
        if t.is_zero() {
            continue;
        }
        p[k - 1] -= &f.b * &t;
        p[k - 2] -= &f.c * &t;
        p[k - 3] -= &f.d * &t;
    }
    let [a0, a1, a2, _, _] = p;
    [a0, a1, a2]
}

fn qt_is_zero(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

fn qt_inv(f: &FieldData, a: &[Rational]) -> Qt {
    let basis: [Qt; 3] = [
        [int(1), int(0), int(0)],
        [int(0), int(1), int(0)],
        [int(0), int(0), int(1)],
    ];
    let cols: Vec<Qt> = basis.iter().map(|e| qt_mul(f, a, e)).collect();
    let m = RatMatrix::from_rows((0..3).map(|i| (0..3).map(|j| cols[j][i].clone()).collect()).collect());
    let x = m
        .solve(&[int(1), int(0), int(0)])
        .expect("nonzero element of a field is invertible");
    [x[0].clone(), x[1].clone(), x[2].clone()]
}

/// Element `a + bδ` of `K` with `a, b ∈ ℚ(θ)`; coordinates over
/// `{1, θ, θ², δ, θδ, θ²δ}`.
#[derive(Clone, PartialEq, Eq)]
pub struct KElem {
    f: SplitCubicField,
    c: [Rational; 6],
}

impl fmt::Debug for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KElem{:?}", self.c.iter().map(|x| x.to_string()).collect::<Vec<_>>())
    }
}

impl fmt::Display for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 6] = ["", "θ", "θ^2", "δ", "θδ", "θ^2δ"];
        let mut first = true;
        for (x, name) in self.c.iter().zip(NAMES) {
            if x.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if x.is_negative() { " - " } else { " + " })?;
            } else if x.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let a = x.abs();
            if name.is_empty() || !a.is_one() {
                write!(f, "{a}")?;
                if !name.is_empty() {
                    f.write_str("·")?;
                }
            }
            f.write_str(name)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl KElem {
    pub fn field(&self) -> &SplitCubicField {
        &self.f
    }

    pub fn coords(&self) -> &[Rational; 6] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// `Some(q)` when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<Rational> {
        self.c[1..].iter().all(Zero::is_zero).then(|| self.c[0].clone())
    }

    fn halves(&self) -> (&[Rational], &[Rational]) {
        self.c.split_at(3)
    }

    fn from_halves(f: &SplitCubicField, a: Qt, b: Qt) -> KElem {
        let [a0, a1, a2] = a;
        let [b0, b1, b2] = b;
        f.elem([a0, a1, a2, b0, b1, b2])
    }

    fn same_field(&self, o: &KElem) {
        debug_assert!(self.f == o.f, "elements of different fields");
    }

    /// Complex conjugation `δ ↦ -δ`.
    pub fn conj(&self) -> KElem {
        let mut c = self.c.clone();
        for x in &mut c[3..] {
            *x = -x.clone();
        }
        self.f.elem(c)
    }

    pub fn inv(&self) -> Result<KElem> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero in K".into()));
        }
        let fd = &*self.f.0;
        let (a, b) = self.halves();
        // (a + bδ)^-1 = (a - bδ) / (a^2 - D b^2)
        let a2 = qt_mul(fd, a, a);
        let b2 = qt_mul(fd, b, b);
        let dd = int(fd.disc.clone());
        let n: Qt = [&a2[0] - &dd * &b2[0], &a2[1] - &dd * &b2[1], &a2[2] - &dd * &b2[2]];
        debug_assert!(!qt_is_zero(&n));
        let ni = qt_inv(fd, &n);
        let re = qt_mul(fd, a, &ni);
        let im = qt_mul(fd, b, &ni).map(|x| -x);
        Ok(Self::from_halves(&self.f, re, im))
    }

    pub fn checked_div(&self, o: &KElem) -> Result<KElem> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, mut n: u64) -> KElem {
        let mut base = self.clone();
        let mut acc = self.f.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    pub fn scale(&self, q: &Rational) -> KElem {
        self.f.elem(self.c.clone().map(|x| x * q))
    }

    /// Matrix of `x ↦ self·x` in the coordinate basis (column `j` is the
    /// image of basis element `j`).
    pub fn mul_matrix(&self) -> RatMatrix {
        let mut m = RatMatrix::zero(6);
        for j in 0..6 {
            let mut e: [Rational; 6] = Default::default();
            e[j] = Rational::one();
            let img = self * &self.f.elem(e);
            for (i, x) in img.c.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn charpoly(&self) -> PolyQ {
        self.mul_matrix().charpoly()
    }

    /// Monic minimal polynomial over ℚ.
    pub fn min_poly(&self) -> PolyQ {
        if let Some(q) = self.as_rational() {
            return PolyQ::new(vec![-q, Rational::one()]);
        }
        self.charpoly().squarefree()
    }

    /// Norm `N_{K/ℚ}`, i.e. the determinant of the multiplication matrix.
    pub fn norm(&self) -> Rational {
        self.charpoly().coeff(0)
    }

    /// Degree of `ℚ(a)` over ℚ.
    pub fn degree(&self) -> usize {
        self.min_poly().degree().unwrap_or(0)
    }

    /// Algebraic integer with norm `±1`.
    pub fn is_unit(&self) -> Result<bool> {
        if self.is_zero() {
            return invalid("is_unit(0)");
        }
        let m = self.min_poly();
        Ok(m.is_integral() && m.coeff(0).abs().is_one())
    }

    pub fn is_root_of_unity(&self) -> Result<bool> {
        if self.is_zero() {
            return invalid("is_root_of_unity(0)");
        }
        let m = self.min_poly();
        if !m.is_integral() || !m.coeff(0).abs().is_one() {
            return Ok(false);
        }
        Ok(CYCLOTOMIC_ORDERS.iter().any(|&k| cyclotomic(k) == m))
    }

    fn eval_at(&self, theta: &CInterval, delta: &CInterval) -> CInterval {
        let horner = |c: &[Rational]| {
            c.iter().rev().fold(CInterval::real(RatInterval::from_int(0)), |acc, x| {
                &(&acc * theta) + &CInterval::real(RatInterval::point(x.clone()))
            })
        };
        let (a, b) = self.halves();
        &horner(a) + &(delta * &horner(b))
    }

    /// Enclosure of the image under embedding `k` (see
    /// [`SplitCubicField::embedding_images`]) with both widths `<= 2^-bits`.
    pub fn conjugate_bits(&self, k: usize, bits: u32) -> CInterval {
        if let Some(q) = self.as_rational() {
            return CInterval::real(RatInterval::point(q));
        }
        let size: u64 = self
            .c
            .iter()
            .map(|x| x.numer().bits() + x.denom().bits())
            .max()
            .unwrap_or(0);
        let target = pow2_rat(-(bits as i64));
        let mut w = bits + 16 + size as u32;
        loop {
            let (t, d) = self.f.embedding_images(k, w);
            let z = self.eval_at(&t, &d);
            if z.max_width() <= target {
                return z.round_out(bits + 2);
            }
            w += w / 2 + 16;
        }
    }

    pub fn embed_bits(&self, bits: u32) -> CInterval {
        self.conjugate_bits(0, bits)
    }

    /// Enclosure of the image under the fixed embedding, widths `<= eps`.
    pub fn embed(&self, eps: &Rational) -> CInterval {
        self.embed_bits(bits_for(eps))
    }

    /// Enclosures of all six embeddings.
    pub fn conjugates(&self, bits: u32) -> Vec<CInterval> {
        (0..6).map(|k| self.conjugate_bits(k, bits)).collect()
    }
}

impl Add for &KElem {
    type Output = KElem;
    fn add(self, o: &KElem) -> KElem {
        self.same_field(o);
        let mut c = self.c.clone();
        for (x, y) in c.iter_mut().zip(&o.c) {
            *x += y;
        }
        self.f.elem(c)
    }
}

impl Sub for &KElem {
    type Output = KElem;
    fn sub(self, o: &KElem) -> KElem {
        self.same_field(o);
        let mut c = self.c.clone();
        for (x, y) in c.iter_mut().zip(&o.c) {
            *x -= y;
        }
        self.f.elem(c)
    }
}

impl Mul for &KElem {
    type Output = KElem;
    fn mul(self, o: &KElem) -> KElem {
        self.same_field(o);
        let fd = &*self.f.0;
        let (a, b) = self.halves();
        let (c, e) = o.halves();
        // (a + bδ)(c + eδ) = ac + D·be + (ae + bc)δ
        let ac = qt_mul(fd, a, c);
        let be = qt_mul(fd, b, e);
        let ae = qt_mul(fd, a, e);
        let bc = qt_mul(fd, b, c);
        let dd = int(fd.disc.clone());
        let re = [0, 1, 2].map(|i| &ac[i] + &dd * &be[i]);
        let im = [0, 1, 2].map(|i| &ae[i] + &bc[i]);
        KElem::from_halves(&self.f, re, im)
    }
}

impl Neg for &KElem {
    type Output = KElem;
    fn neg(self) -> KElem {
        self.f.elem(self.c.clone().map(|x| -x))
    }
}

impl Neg for KElem {
    type Output = KElem;
    fn neg(self) -> KElem {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for KElem {
            type Output = KElem;
            fn $m(self, o: KElem) -> KElem {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn f23() -> SplitCubicField {
        SplitCubicField::from_coeffs(1, 0, -1).unwrap()
    }

    #[test]
    fn rejects_bad_cubics() {
        assert!(matches!(SplitCubicField::from_coeffs(0, -1, 0), Err(Error::Unsupported(_))));
        // x^3 - 3x + 1 has three real roots
        assert!(matches!(SplitCubicField::from_coeffs(0, -3, 1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn delta_squares_to_disc() {
        let f = f23();
        let d = f.delta();
        assert_eq!(&d * &d, f.from_int(-23));
        assert_eq!(f.cubic().eval(&int(0)), int(-1));
    }

    #[test]
    fn roots_satisfy_cubic_and_symmetric_functions() {
        let f = f23();
        let (t, p, m) = f.roots();
        for r in [&t, &p, &m] {
            let v = &(&r.pow(3) + &r.pow(2)) - &f.one();
            assert!(v.is_zero());
        }
        assert_eq!(&(&t + &p) + &m, f.from_int(-1));
        assert_eq!(&(&(&t * &p) + &(&t * &m)) + &(&p * &m), f.from_int(0));
        assert_eq!(&(&t * &p) * &m, f.from_int(1));
        assert_eq!(p.conj(), m);
    }

    #[test]
    fn inverse_and_conj() {
        let f = f23();
        let a = f.elem([int(2), rat(1, 3), int(-1), int(5), int(0), rat(7, 2)]);
        let ai = a.inv().unwrap();
        assert_eq!(&a * &ai, f.one());
        assert_eq!(f.theta().conj(), f.theta());
        assert_eq!(f.delta().conj(), -f.delta());
        assert!(f.zero().inv().is_err());
    }

    #[test]
    fn minimal_polynomials() {
        let f = f23();
        assert_eq!(f.theta().min_poly(), *f.cubic());
        assert_eq!(f.delta().min_poly(), PolyQ::from_ints(&[23, 0, 1]));
        assert_eq!(f.from_rational(rat(3, 4)).min_poly(), PolyQ::new(vec![rat(-3, 4), int(1)]));
        let (_, p, _) = f.roots();
        assert_eq!(p.min_poly(), *f.cubic());
    }

    #[test]
    fn units_and_roots_of_unity() {
        let f = f23();
        assert!(f.theta().is_unit().unwrap());
        assert!(!f.from_int(2).is_unit().unwrap());
        assert_eq!(f.from_int(2).norm(), int(64));
        assert!(!f.delta().is_unit().unwrap());
        assert_eq!(f.delta().norm(), int(23 * 23 * 23));
        assert!(f.zero().is_unit().is_err());
        assert!(f.from_int(-1).is_root_of_unity().unwrap());
        assert!(!f.theta().is_root_of_unity().unwrap());
        let (_, p, m) = f.roots();
        assert!(!p.checked_div(&m).unwrap().is_root_of_unity().unwrap());
    }

    #[test]
    fn fixed_embedding_values() {
        let f = f23();
        let t = f.theta().embed(&rat(1, 1_000_000));
        assert!(t.contains_f64(0.7548776662466927, 0.0));
        let (_, p, _) = f.roots();
        let z = p.embed(&rat(1, 1_000_000_000));
        assert!(z.re.contains_f64(-0.8774388331233464) && z.im.contains_f64(0.7448617666197442));
        assert!(z.max_width() <= rat(1, 1_000_000_000));
        assert_eq!(f.one().embed(&rat(1, 10)), CInterval::real(RatInterval::from_int(1)));
    }

    #[test]
    fn conjugates_are_roots_of_min_poly() {
        let f = f23();
        let (_, p, m) = f.roots();
        let r = p.checked_div(&m).unwrap();
        let mp = r.min_poly();
        for z in r.conjugates(60) {
            let v = mp.eval_complex(&z);
            assert!(v.re.abs().hi() < &rat(1, 1_000_000) && v.im.abs().hi() < &rat(1, 1_000_000));
        }
    }
}
