//! Monomial maps `h_A`, linear maps `L_M` on ℙ³, their compositions, and
//! exact evaluation at rational points.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::elementary::{bits_for, log_rat, nth_root_iv};
use crate::algebra::linalg::RatMatrix;
use crate::algebra::poly::PolyQ;
use crate::algebra::rational::{int, Rational};
use crate::algebra::RatInterval;
use crate::error::{invalid, Error, Result};

/// 3×3 integer matrix with determinant ±1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMat3 {
    rows: [[i64; 3]; 3],
}

fn det3(m: &[[i128; 3]; 3]) -> i128 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

impl IntMat3 {
    pub fn new(rows: [[i64; 3]; 3]) -> Result<Self> {
        let m = Self { rows };
        match m.det() {
            1 | -1 => Ok(m),
            d => invalid(format!("matrix determinant is {d}, expected ±1")),
        }
    }

    pub fn identity() -> Self {
        Self {
            rows: [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        }
    }

    pub fn minus_identity() -> Self {
        Self {
            rows: [[-1, 0, 0], [0, -1, 0], [0, 0, -1]],
        }
    }

    pub fn rows(&self) -> [[i64; 3]; 3] {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    fn wide(&self) -> [[i128; 3]; 3] {
        self.rows.map(|r| r.map(i128::from))
    }

    pub fn det(&self) -> i128 {
        det3(&self.wide())
    }

    pub fn trace(&self) -> i128 {
        (0..3).map(|i| self.rows[i][i] as i128).sum()
    }

    /// Inverse via the adjugate; entries must fit in `i64`.
    pub fn inverse(&self) -> Result<Self> {
        let m = self.wide();
        let d = det3(&m);
        let cof = |i: usize, j: usize| -> i128 {
            let r: Vec<usize> = (0..3).filter(|&k| k != i).collect();
            let c: Vec<usize> = (0..3).filter(|&k| k != j).collect();
            let minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]];
            if (i + j).is_multiple_of(2) {
                minor
            } else {
                -minor
            }
        };
        let mut rows = [[0i64; 3]; 3];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                // inverse[i][j] = cof(j, i) / det, and det = ±1
                *x = i64::try_from(cof(j, i) * d).map_err(|_| Error::InvalidInput("inverse overflows i64".into()))?;
            }
        }
        Self::new(rows)
    }

    pub fn mul(&self, o: &IntMat3) -> Result<Self> {
        let a = self.wide();
        let b = o.wide();
        let mut rows = [[0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let s: i128 = (0..3).map(|k| a[i][k] * b[k][j]).sum();
                rows[i][j] = i64::try_from(s).map_err(|_| Error::InvalidInput("product overflows i64".into()))?;
            }
        }
        Self::new(rows)
    }

    pub fn neg(&self) -> Self {
        Self {
            rows: self.rows.map(|r| r.map(|x| -x)),
        }
    }

    /// Characteristic polynomial `x^3 - tr·x^2 + c₂·x - det`.
    pub fn charpoly(&self) -> PolyQ {
        let m = self.wide();
        let tr = self.trace();
        let c2 = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0] + m[1][1] * m[2][2]
            - m[1][2] * m[2][1];
        PolyQ::from_ints(&[-det3(&m), c2, -tr, 1])
    }

    /// Recurrence coefficients `(r₁, r₂, r₃)` with
    /// `a_n = r₁a_{n-1} + r₂a_{n-2} + r₃a_{n-3}` for every `⟨w, Aⁿv⟩`.
    pub fn recurrence(&self) -> [i64; 3] {
        let c = self.charpoly();
        let get = |k| -i64::try_from(c.coeff(k).to_integer()).expect("small coefficients");
        [get(2), get(1), get(0)]
    }

    pub fn apply(&self, v: &[BigInt; 3]) -> [BigInt; 3] {
        std::array::from_fn(|i| (0..3).map(|j| &v[j] * self.rows[i][j]).sum())
    }

    pub fn to_big(&self) -> BigMat3 {
        BigMat3(self.rows.map(|r| r.map(BigInt::from)))
    }

    pub fn to_rat_matrix(&self) -> RatMatrix {
        RatMatrix::from_int_rows(self.rows)
    }

    /// Parses three lines of three integers; blank lines and lines starting
    /// with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        if lines.len() != 3 {
            return invalid(format!("expected 3 matrix rows, found {}", lines.len()));
        }
        let mut rows = [[0i64; 3]; 3];
        for (i, line) in lines.iter().enumerate() {
            let nums: Vec<&str> = line.split_whitespace().collect();
            if nums.len() != 3 {
                return invalid(format!("row {} has {} entries, expected 3", i + 1, nums.len()));
            }
            for (j, s) in nums.iter().enumerate() {
                rows[i][j] = s
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("row {}: not an integer: {s:?}", i + 1)))?;
            }
        }
        Self::new(rows)
    }
}

impl FromStr for IntMat3 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for IntMat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}, {}, {}]", r[0], r[1], r[2]))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// 3×3 big-integer matrix for powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigMat3(pub [[BigInt; 3]; 3]);

impl BigMat3 {
    pub fn identity() -> Self {
        IntMat3::identity().to_big()
    }

    pub fn mul(&self, o: &BigMat3) -> BigMat3 {
        BigMat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..3).map(|k| &self.0[i][k] * &o.0[k][j]).sum())
        }))
    }

    pub fn apply(&self, v: &[BigInt; 3]) -> [BigInt; 3] {
        std::array::from_fn(|i| (0..3).map(|j| &self.0[i][j] * &v[j]).sum())
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> BigInt {
        (0..3)
            .map(|j| (0..3).map(|i| self.0[i][j].abs()).sum::<BigInt>())
            .max()
            .unwrap()
    }
}

/// Homogeneous form of `h_A`: row `i` holds the exponents of
/// `x₀, x₁, x₂, x₃` in output coordinate `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogMonomialMap {
    pub expo: [[u64; 4]; 4],
    pub degree: u64,
}

pub fn homogenize_monomial(a: &IntMat3) -> HomogMonomialMap {
    let mut raw = [[0i128; 4]; 4];
    for i in 0..3 {
        let r = a.rows[i].map(i128::from);
        raw[i + 1] = [-(r[0] + r[1] + r[2]), r[0], r[1], r[2]];
    }
    let mins: [i128; 4] = std::array::from_fn(|j| raw.iter().map(|r| r[j]).min().unwrap());
    let expo = raw.map(|r| std::array::from_fn(|j| (r[j] - mins[j]) as u64));
    let degree = expo[0].iter().sum();
    debug_assert!(expo.iter().all(|r| r.iter().sum::<u64>() == degree));
    HomogMonomialMap { expo, degree }
}

/// One factor of a composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    /// `L_M` on homogeneous coordinates; `label` is for display only.
    Linear { label: String, matrix: RatMatrix },
    /// `h_A` for an integer matrix (the Cremona involution is `h_{-I}`).
    Monomial { source: IntMat3, map: HomogMonomialMap },
}

impl Factor {
    pub fn linear(label: &str, matrix: RatMatrix) -> Result<Self> {
        if matrix.size() != 4 || matrix.inverse().is_none() {
            return invalid(format!("linear factor {label} must be an invertible 4×4 matrix"));
        }
        Ok(Self::Linear {
            label: label.into(),
            matrix,
        })
    }

    pub fn monomial(a: &IntMat3) -> Self {
        Self::Monomial {
            source: *a,
            map: homogenize_monomial(a),
        }
    }

    pub fn degree(&self) -> u64 {
        match self {
            Factor::Linear { .. } => 1,
            Factor::Monomial { map, .. } => map.degree,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Factor::Linear { label, .. } => format!("L_{label}"),
            Factor::Monomial { source, .. } => format!("h_{source}"),
        }
    }
}

/// `factors[0] ∘ factors[1] ∘ …`; evaluation applies the last factor first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BirationalComposition {
    pub factors: Vec<Factor>,
}

impl BirationalComposition {
    pub fn new(factors: Vec<Factor>) -> Self {
        Self { factors }
    }

    pub fn degree_bound(&self) -> u64 {
        self.factors.iter().map(Factor::degree).product()
    }

    pub fn evaluate(&self, p: &ProjPointQ) -> Result<ProjPointQ> {
        // Projective coordinates stay integral: linear factors are cleared of
        // denominators, and common factors are removed before each monomial.
        let mut x: [BigInt; 4] = p.coords.clone();
        for (k, f) in self.factors.iter().enumerate().rev() {
            let factor = self.factors.len() - k;
            x = match f {
                Factor::Linear { matrix, .. } => integral_mul_vec(matrix, &x),
                Factor::Monomial { map, .. } => {
                    let ints = ProjPointQ::new(x)
                        .map_err(|_| Error::IndeterminatePoint { factor, step: None })?
                        .coords;
                    eval_monomial(map, &ints).ok_or(Error::IndeterminatePoint { factor, step: None })?
                }
            };
            if x.iter().all(Zero::is_zero) {
                return Err(Error::IndeterminatePoint { factor, step: None });
            }
        }
        ProjPointQ::new(x)
    }
}

/// `l·M·x` with `l` the lcm of the denominators of `M`.
fn integral_mul_vec(m: &RatMatrix, x: &[BigInt; 4]) -> [BigInt; 4] {
    let rows = m.rows();
    let l = rows.iter().flatten().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    std::array::from_fn(|i| {
        (0..4)
            .map(|j| {
                let q = &rows[i][j];
                let c = q.numer() * (&l / q.denom());
                c * &x[j]
            })
            .sum()
    })
}

impl fmt::Display for BirationalComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(Factor::label).collect();
        f.write_str(&parts.join(" ∘ "))
    }
}

/// Returns `None` when a zero coordinate meets a column with a positive
/// exponent.
fn eval_monomial(map: &HomogMonomialMap, x: &[BigInt; 4]) -> Option<[BigInt; 4]> {
    for j in 0..4 {
        if x[j].is_zero() && map.expo.iter().any(|r| r[j] > 0) {
            return None;
        }
    }
    Some(std::array::from_fn(|i| {
        let mut acc = BigInt::one();
        for j in 0..4 {
            let e = map.expo[i][j];
            if e > 0 {
                acc *= num_traits::pow(x[j].clone(), e as usize);
            }
        }
        acc
    }))
}

/// The fixed 4×4 matrix `B` of the construction.
pub fn matrix_b() -> RatMatrix {
    RatMatrix::from_int_rows([[1, -1, 1, -1], [1, 1, -1, 1], [-1, 1, 1, -1], [1, -1, 1, 1]])
}

/// The three compositions attached to `A`.
#[derive(Clone, Debug)]
pub struct FaMaps {
    /// `L_{B⁻¹} ∘ h_{-I} ∘ L_B ∘ h_A`
    pub forward: BirationalComposition,
    /// `h_{A⁻¹} ∘ L_{B⁻¹} ∘ h_{-I} ∘ L_B`
    pub inverse: BirationalComposition,
    /// `f_{A⁻¹}`, birationally conjugate to `inverse`.
    pub conjugated_inverse: BirationalComposition,
    pub a_inv: IntMat3,
}

fn forward_of(a: &IntMat3) -> Result<BirationalComposition> {
    let b = matrix_b();
    let b_inv = b.inverse().expect("det B = 8");
    Ok(BirationalComposition::new(vec![
        Factor::linear("B⁻¹", b_inv)?,
        Factor::monomial(&IntMat3::minus_identity()),
        Factor::linear("B", b)?,
        Factor::monomial(a),
    ]))
}

pub fn build_fa(a: &IntMat3) -> Result<FaMaps> {
    let a_inv = a.inverse()?;
    let b = matrix_b();
    let b_inv = b.inverse().expect("det B = 8");
    let inverse = BirationalComposition::new(vec![
        Factor::monomial(&a_inv),
        Factor::linear("B⁻¹", b_inv)?,
        Factor::monomial(&IntMat3::minus_identity()),
        Factor::linear("B", b)?,
    ]);
    Ok(FaMaps {
        forward: forward_of(a)?,
        inverse,
        conjugated_inverse: forward_of(&a_inv)?,
        a_inv,
    })
}

/// `deg(f_A) <= 1·3·1·deg(h_A)`.
pub fn degree_bound_fa(a: &IntMat3) -> u64 {
    3 * homogenize_monomial(a).degree
}

/// Point of ℙ³(ℚ) as coprime integers with first nonzero coordinate
/// positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPointQ {
    coords: [BigInt; 4],
}

impl ProjPointQ {
    pub fn new(coords: [BigInt; 4]) -> Result<Self> {
        let g = coords.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            return invalid("projective point with all coordinates zero");
        }
        let first = coords.iter().find(|x| !x.is_zero()).unwrap();
        let g = if first.is_negative() { -g } else { g };
        Ok(Self {
            coords: coords.map(|x| x / &g),
        })
    }

    pub fn from_ints(c: [i64; 4]) -> Result<Self> {
        Self::new(c.map(BigInt::from))
    }

    pub fn from_rationals(x: &[Rational; 4]) -> Result<Self> {
        let l = x.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        Self::new(std::array::from_fn(|i| (&x[i] * int(l.clone())).to_integer()))
    }

    pub fn coords(&self) -> &[BigInt; 4] {
        &self.coords
    }

    pub fn is_torus(&self) -> bool {
        self.coords.iter().all(|x| !x.is_zero())
    }

    /// Maximum coordinate magnitude of the reduced representative.
    pub fn max_abs(&self) -> BigInt {
        self.coords.iter().map(|x| x.abs()).max().unwrap()
    }

    /// `"1,2,3,5"` or `"1 2 3 5"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split([',', ' ', ':']).filter(|p| !p.is_empty()).collect();
        if parts.len() != 4 {
            return invalid(format!("expected 4 coordinates, got {s:?}"));
        }
        let mut c: [BigInt; 4] = Default::default();
        for (i, p) in parts.iter().enumerate() {
            c[i] = p.trim().parse().map_err(|_| Error::InvalidInput(format!("bad coordinate {p:?}")))?;
        }
        Self::new(c)
    }
}

impl fmt::Display for ProjPointQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.coords;
        write!(f, "[{}:{}:{}:{}]", c[0], c[1], c[2], c[3])
    }
}

/// Enclosure of `log max |x_i|` (width `<= eps`).
pub fn weil_height(p: &ProjPointQ, eps: &Rational) -> RatInterval {
    log_rat(&int(p.max_abs()), bits_for(eps)).expect("max coordinate is positive")
}

/// Heights along a finite orbit prefix.
#[derive(Clone, Debug)]
pub struct OrbitHeights {
    pub points: Vec<ProjPointQ>,
    /// `h(f^k P)` for the computed `k`.
    pub heights: Vec<RatInterval>,
    /// `h(f^k P)^{1/k}` for `k >= 1`.
    pub root_ratios: Vec<RatInterval>,
    /// Set when the orbit hit an indeterminacy before `n_max`.
    pub stopped: Option<Error>,
}

pub const DEFAULT_ORBIT_STEPS: usize = 3;

/// Orbit heights up to `n_max` steps. Coordinate sizes grow by a factor of
/// about `deg` per step, so only small `n_max` are practical.
pub fn orbit_heights(c: &BirationalComposition, p: &ProjPointQ, n_max: usize, eps: &Rational) -> OrbitHeights {
    let mut points = vec![p.clone()];
    let mut heights = vec![weil_height(p, eps)];
    let mut root_ratios = vec![];
    let mut stopped = None;
    for k in 1..=n_max {
        match c.evaluate(points.last().unwrap()) {
            Ok(q) => {
                let h = weil_height(&q, eps);
                root_ratios.push(nth_root_iv(&h, k as u32, bits_for(eps)));
                heights.push(h);
                points.push(q);
            }
            Err(Error::IndeterminatePoint { factor, .. }) => {
                stopped = Some(Error::IndeterminatePoint { factor, step: Some(k) });
                break;
            }
            Err(e) => {
                stopped = Some(e);
                break;
            }
        }
    }
    OrbitHeights {
        points,
        heights,
        root_ratios,
        stopped,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    pub(crate) fn a_base() -> IntMat3 {
        IntMat3::new([[-3, -14, -12], [4, 11, 6], [-2, -4, -1]]).unwrap()
    }

    pub(crate) fn a_one() -> IntMat3 {
        IntMat3::new([[56, -19, -17], [-16, 6, 5], [207, -71, -63]]).unwrap()
    }

    #[test]
    fn homogenization_tables() {
        let h = homogenize_monomial(&a_base());
        assert_eq!(h.expo, [[21, 3, 14, 12], [50, 0, 0, 0], [0, 7, 25, 18], [28, 1, 10, 11]]);
        assert_eq!(h.degree, 50);
        let c = homogenize_monomial(&IntMat3::minus_identity());
        assert_eq!(c.expo, [[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 0]]);
        assert_eq!(c.degree, 3);
        let h1 = homogenize_monomial(&a_one());
        assert_eq!(h1.degree, 223);
        assert!(h1.expo.contains(&[0, 223, 0, 0]));
        let id = homogenize_monomial(&IntMat3::identity());
        assert_eq!(id.degree, 1);
    }

    #[test]
    fn inverses_and_degrees() {
        assert_eq!(a_base().inverse().unwrap().rows(), [[13, 34, 48], [-8, -21, -30], [6, 16, 23]]);
        assert_eq!(a_one().inverse().unwrap().rows(), [[-23, 10, 7], [27, -9, -8], [-106, 43, 32]]);
        let maps = build_fa(&a_base()).unwrap();
        assert_eq!(maps.forward.degree_bound(), 150);
        assert_eq!(build_fa(&a_one()).unwrap().forward.degree_bound(), 669);
        assert_eq!(BirationalComposition::default().degree_bound(), 1);
        let b = matrix_b();
        assert_eq!(b.mul(&b.inverse().unwrap()), RatMatrix::identity(4));
        assert!(IntMat3::new([[1, 0, 0], [0, 2, 0], [0, 0, 1]]).is_err());
    }

    #[test]
    fn charpolys() {
        assert_eq!(a_one().charpoly(), PolyQ::from_ints(&[-1, 0, 1, 1]));
        assert_eq!(a_one().recurrence(), [-1, 0, 1]);
        assert_eq!(a_base().inverse().unwrap().recurrence(), [15, -7, 1]);
    }

    #[test]
    fn parses_matrix_files() {
        let m = IntMat3::parse("# A1\n56 -19 -17\n-16 6 5\n\n207 -71 -63\n").unwrap();
        assert_eq!(m, a_one());
        assert!(IntMat3::parse("1 0 0\n0 1 0\n").is_err());
        assert!(IntMat3::parse("1 0 0\n0 1 x\n0 0 1").is_err());
        assert!(IntMat3::parse("2 0 0\n0 1 0\n0 0 1").is_err());
    }

    #[test]
    fn evaluation_basics() {
        let ones = ProjPointQ::from_ints([1, 1, 1, 1]).unwrap();
        let cremona = BirationalComposition::new(vec![Factor::monomial(&IntMat3::minus_identity())]);
        assert_eq!(cremona.evaluate(&ones).unwrap(), ones);
        let ha = BirationalComposition::new(vec![Factor::monomial(&a_one())]);
        assert_eq!(ha.evaluate(&ones).unwrap(), ones);
        let p = ProjPointQ::from_ints([1, 0, 2, 3]).unwrap();
        assert!(matches!(cremona.evaluate(&p), Err(Error::IndeterminatePoint { factor: 1, .. })));
    }

    #[test]
    fn round_trip_single_point() {
        let maps = build_fa(&a_base()).unwrap();
        let p = ProjPointQ::from_ints([2, -3, 5, 7]).unwrap();
        let q = maps.inverse.evaluate(&p).unwrap();
        assert_eq!(maps.forward.evaluate(&q).unwrap(), p);
    }

    #[test]
    fn point_normalisation_and_height() {
        let p = ProjPointQ::from_ints([-2, 4, 6, 8]).unwrap();
        assert_eq!(p.coords(), &[1, -2, -3, -4].map(BigInt::from));
        let h = weil_height(&ProjPointQ::from_ints([2, 4, 6, 8]).unwrap(), &rat(1, 1 << 30));
        assert!(h.contains_f64(4f64.ln()) && h.width() <= rat(1, 1 << 30));
        assert_eq!(weil_height(&ProjPointQ::from_ints([1, 1, 1, 1]).unwrap(), &rat(1, 100)), RatInterval::from_int(0));
        assert!(ProjPointQ::from_ints([0, 0, 0, 0]).is_err());
    }

    #[test]
    fn orbit_of_fixed_point() {
        let maps = build_fa(&a_one()).unwrap();
        let ones = ProjPointQ::from_ints([1, 1, 1, 1]).unwrap();
        // B·(1,1,1,1) = (0,2,0,2), so the Cremona factor is indeterminate there.
        let o = orbit_heights(&maps.forward, &ones, 2, &rat(1, 1000));
        assert!(matches!(o.stopped, Some(Error::IndeterminatePoint { factor: 3, step: Some(1) })));
        let ha = BirationalComposition::new(vec![Factor::monomial(&a_one())]);
        let o = orbit_heights(&ha, &ones, 3, &rat(1, 1000));
        assert!(o.stopped.is_none());
        assert!(o.heights.iter().all(|h| *h == RatInterval::from_int(0)));
    }
}
