//! Order-3 integer recurrences `a_n = r₁a_{n-1} + r₂a_{n-2} + r₃a_{n-3}` and
//! their zero patterns modulo `m`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::maps::IntMat3;
use crate::psi::Vec3;

/// Default per-modulus bound on the number of states visited.
pub const DEFAULT_STEP_CAP: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinRec3 {
    pub rec: [i64; 3],
    #[serde(with = "crate::serde_rat::bigint_arr3")]
    pub init: [BigInt; 3],
}

fn dot(w: &Vec3, x: &[BigInt; 3]) -> BigInt {
    (0..3).map(|i| &x[i] * w[i]).sum()
}

/// `a_n = ⟨w, Aⁿv⟩`.
pub fn seq_from_pair(a: &IntMat3, v: &Vec3, w: &Vec3) -> LinRec3 {
    let v0 = v.map(BigInt::from);
    let v1 = a.apply(&v0);
    let v2 = a.apply(&v1);
    LinRec3 {
        rec: a.recurrence(),
        init: [dot(w, &v0), dot(w, &v1), dot(w, &v2)],
    }
}

impl LinRec3 {
    pub fn new(rec: [i64; 3], init: [i64; 3]) -> Self {
        Self {
            rec,
            init: init.map(BigInt::from),
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rec[2].abs() == 1
    }

    /// `a_0, …, a_{count-1}`.
    pub fn terms(&self, count: usize) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = self.init.iter().take(count).cloned().collect();
        while out.len() < count {
            let n = out.len();
            let next = &out[n - 1] * self.rec[0] + &out[n - 2] * self.rec[1] + &out[n - 3] * self.rec[2];
            out.push(next);
        }
        out
    }

    pub fn content(&self) -> BigInt {
        self.init.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    /// The sequence divided by the gcd of its initial terms. It has exactly
    /// the same zero positions.
    pub fn primitive(&self) -> (LinRec3, BigInt) {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return (self.clone(), if g.is_zero() { BigInt::one() } else { g });
        }
        let init = self.init.clone().map(|x| x / &g);
        (LinRec3 { rec: self.rec, init }, g)
    }

    fn residues(&self, m: u64) -> ([u64; 3], [u64; 3]) {
        let mb = BigInt::from(m);
        let red = |x: &BigInt| x.mod_floor(&mb).to_u64().unwrap();
        let rec = self.rec.map(|r| r.rem_euclid(m as i64) as u64);
        (rec, [red(&self.init[0]), red(&self.init[1]), red(&self.init[2])])
    }
}

/// Period and zero positions of the sequence modulo `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModCert {
    pub m: u64,
    pub period: u64,
    pub zero_positions: Vec<u64>,
}

enum Scan {
    Done { period: u64, zeros: Vec<u64> },
    /// A zero at a position > 0 was seen and the caller asked to stop there.
    LateZero,
    Capped,
}

#[inline]
fn step(rec: &[u64; 3], s: [u64; 3], m: u64) -> [u64; 3] {
    let m128 = m as u128;
    let next = (rec[0] as u128 * s[2] as u128 + rec[1] as u128 * s[1] as u128 + rec[2] as u128 * s[0] as u128) % m128;
    [s[1], s[2], next as u64]
}

fn scan(r: &LinRec3, m: u64, step_cap: u64, stop_on_late_zero: bool) -> Scan {
    let (rec, start) = r.residues(m);
    let mut s = start;
    let mut n = 0u64;
    let mut zeros = vec![];
    loop {
        if s[0] == 0 {
            if n > 0 && stop_on_late_zero {
                return Scan::LateZero;
            }
            zeros.push(n);
        }
        s = step(&rec, s, m);
        n += 1;
        if s == start {
            return Scan::Done { period: n, zeros };
        }
        if n >= step_cap {
            return Scan::Capped;
        }
    }
}

/// Full cycle of the state triple modulo `m` (requires `|r₃| = 1`, so the
/// state map is a permutation and the orbit is purely periodic).
pub fn mod_cycle(r: &LinRec3, m: u64, step_cap: u64) -> Result<ModCert> {
    if !r.is_invertible() {
        return invalid("mod_cycle needs |r₃| = 1");
    }
    if m < 2 {
        return invalid("modulus must be at least 2");
    }
    match scan(r, m, step_cap, false) {
        Scan::Done { period, zeros } => Ok(ModCert {
            m,
            period,
            zero_positions: zeros,
        }),
        Scan::Capped => Err(Error::StepCapExceeded(m)),
        Scan::LateZero => unreachable!(),
    }
}

/// First modulus in `moduli` under which the sequence never vanishes.
pub fn certify_never_zero(r: &LinRec3, moduli: std::ops::RangeInclusive<u64>, step_cap: u64) -> Result<ModCert> {
    if !r.is_invertible() {
        return invalid("certify_never_zero needs |r₃| = 1");
    }
    let (lo, hi) = (*moduli.start(), *moduli.end());
    for m in moduli {
        if m < 2 {
            continue;
        }
        let (_, start) = r.residues(m);
        if start[0] == 0 {
            continue;
        }
        if let Scan::Done { period, zeros } = scan(r, m, step_cap, true) {
            debug_assert!(zeros.is_empty());
            return Ok(ModCert {
                m,
                period,
                zero_positions: vec![],
            });
        }
    }
    Err(Error::NotFound { lo, hi })
}

/// Evidence that a sequence with `a₀ = 0` has no zero in `1..lcm`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LcmCert {
    /// `(m, period)` for every modulus whose only zero in a period is at 0.
    pub moduli_used: Vec<(u64, u64)>,
    #[serde(with = "crate::serde_rat::bigint")]
    pub lcm_periods: BigInt,
    #[serde(with = "crate::serde_rat::bigint")]
    pub target: BigInt,
    /// gcd of the initial terms that was divided out before scanning.
    #[serde(with = "crate::serde_rat::bigint")]
    pub content: BigInt,
    /// Moduli skipped because their period exceeded the step cap.
    pub capped: Vec<u64>,
}

/// Scans moduli ascending, accumulating the lcm of periods of those moduli
/// whose zero set is exactly `{0}`, until the lcm exceeds `target`. Any `n`
/// with `a_n = 0` is then a multiple of the lcm.
pub fn certify_zero_only_at_start(
    r: &LinRec3,
    moduli: std::ops::RangeInclusive<u64>,
    target: &BigInt,
    step_cap: u64,
) -> Result<LcmCert> {
    if !r.init[0].is_zero() {
        return invalid("certify_zero_only_at_start needs a₀ = 0");
    }
    if !r.is_invertible() {
        return invalid("certify_zero_only_at_start needs |r₃| = 1");
    }
    let (p, content) = r.primitive();
    let mut lcm = BigInt::one();
    let mut used = vec![];
    let mut capped = vec![];
    for m in moduli {
        if m < 2 {
            continue;
        }
        match scan(&p, m, step_cap, true) {
            Scan::Done { period, .. } => {
                lcm = lcm.lcm(&BigInt::from(period));
                used.push((m, period));
                if &lcm > target {
                    return Ok(LcmCert {
                        moduli_used: used,
                        lcm_periods: lcm,
                        target: target.clone(),
                        content,
                        capped,
                    });
                }
            }
            Scan::Capped => capped.push(m),
            Scan::LateZero => {}
        }
    }
    Err(Error::TargetNotReached {
        lcm,
        target: target.clone(),
    })
}

/// Re-checks a stored never-zero certificate by one cycle.
pub fn recheck_mod(r: &LinRec3, cert: &ModCert, step_cap: u64) -> bool {
    mod_cycle(r, cert.m, step_cap).is_ok_and(|c| c == *cert)
}

/// Re-checks a stored lcm certificate: each listed modulus must have the
/// stated period and zero set `{0}`, and the lcm must exceed the target.
pub fn recheck_lcm(r: &LinRec3, cert: &LcmCert, step_cap: u64) -> bool {
    let (p, content) = r.primitive();
    if content != cert.content || !r.init[0].is_zero() {
        return false;
    }
    let mut lcm = BigInt::one();
    for &(m, period) in &cert.moduli_used {
        match mod_cycle(&p, m, step_cap) {
            Ok(c) if c.period == period && c.zero_positions == [0] => {
                lcm = lcm.lcm(&BigInt::from(period));
            }
            _ => return false,
        }
    }
    lcm == cert.lcm_periods && lcm > cert.target
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a_one() -> IntMat3 {
        IntMat3::new([[56, -19, -17], [-16, 6, 5], [207, -71, -63]]).unwrap()
    }

    #[test]
    fn sequences_from_pairs() {
        let s = seq_from_pair(&a_one(), &[1, 1, 0], &[1, 0, 0]);
        assert_eq!(s, LinRec3::new([-1, 0, 1], [1, 37, -50]));
        let s = seq_from_pair(&a_one(), &[1, 1, 0], &[1, -1, 0]);
        assert_eq!(s.init, [0, 47, -78].map(BigInt::from));
        let inv = IntMat3::new([[-3, -14, -12], [4, 11, 6], [-2, -4, -1]]).unwrap().inverse().unwrap();
        let s = seq_from_pair(&inv, &[1, 1, 0], &[0, -1, 0]);
        assert_eq!(s.terms(5)[1..], [29, 427, 6201, 90055].map(BigInt::from));
    }

    #[test]
    fn terms_follow_matrix_powers() {
        let a = a_one();
        let s = seq_from_pair(&a, &[0, 1, 1], &[0, 1, -1]);
        let mut x = [0, 1, 1].map(BigInt::from);
        for t in s.terms(15) {
            assert_eq!(t, &x[1] - &x[2]);
            x = a.apply(&x);
        }
    }

    #[test]
    fn cycles() {
        let s = LinRec3::new([-1, 0, 1], [1, 37, -50]);
        let c = mod_cycle(&s, 20, DEFAULT_STEP_CAP).unwrap();
        assert!(c.zero_positions.is_empty());
        let z = LinRec3::new([-1, 0, 1], [0, 0, 0]);
        let c = mod_cycle(&z, 7, DEFAULT_STEP_CAP).unwrap();
        assert_eq!((c.period, c.zero_positions), (1, vec![0]));
        assert_eq!(mod_cycle(&s, 1999, 10), Err(Error::StepCapExceeded(1999)));
        assert!(mod_cycle(&LinRec3::new([1, 1, 2], [0, 1, 1]), 5, 100).is_err());
    }

    #[test]
    fn never_zero_moduli() {
        let s1 = seq_from_pair(&a_one(), &[1, 1, 0], &[1, 0, 0]);
        assert_eq!(certify_never_zero(&s1, 5..=59, DEFAULT_STEP_CAP).unwrap().m, 20);
        let s10 = seq_from_pair(&a_one(), &[0, 1, 1], &[1, -1, 0]);
        assert_eq!(certify_never_zero(&s10, 5..=59, DEFAULT_STEP_CAP).unwrap().m, 43);
        let zero_start = seq_from_pair(&a_one(), &[1, 1, 0], &[0, 0, 1]);
        assert!(matches!(certify_never_zero(&zero_start, 5..=59, DEFAULT_STEP_CAP), Err(Error::NotFound { .. })));
    }

    #[test]
    fn lcm_certificate_for_sequence_three() {
        let s3 = seq_from_pair(&a_one(), &[1, 1, 0], &[0, 0, 1]);
        assert_eq!(s3.init, [0, 136, -199].map(BigInt::from));
        let target = BigInt::from(7) * BigInt::from(10).pow(18u32);
        let c = certify_zero_only_at_start(&s3, 5..=1999, &target, DEFAULT_STEP_CAP).unwrap();
        assert_eq!(c.lcm_periods, "197856007040168436960".parse::<BigInt>().unwrap());
        assert!(recheck_lcm(&s3, &c, DEFAULT_STEP_CAP));
    }

    #[test]
    fn content_is_divided_out() {
        let s = LinRec3::new([-1, 0, 1], [0, 4, -6]);
        let (p, g) = s.primitive();
        assert_eq!(g, BigInt::from(2));
        assert_eq!(p.init, [0, 2, -3].map(BigInt::from));
    }
}
