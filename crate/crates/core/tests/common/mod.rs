//! Property checks shared by the property suite and the acceptance run.
//! Each returns `Err` with a counterexample description on failure.
#![allow(dead_code, clippy::eq_op)]

use dyndeg_core::algebra::rational::{int, rat};
use dyndeg_core::algebra::{KElem, PolyQ, SplitCubicField};
use dyndeg_core::certify::full_report;
use dyndeg_core::certify::report::ReportConfig;
use dyndeg_core::maps::{build_fa, degree_bound_fa, weil_height, IntMat3, ProjPointQ};
use dyndeg_core::psi::{Vec3, CONE_FUNCTIONALS, CONE_VECTORS, U, V};
use dyndeg_core::recur::linrec::{mod_cycle, LinRec3};
use dyndeg_core::recur::{argmax_stabilize, baker_threshold, seq_from_pair, EigenData, PerronData};
use dyndeg_core::Error;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub fn a_base() -> IntMat3 {
    IntMat3::new([[-3, -14, -12], [4, 11, 6], [-2, -4, -1]]).unwrap()
}

pub fn a_one() -> IntMat3 {
    IntMat3::new([[56, -19, -17], [-16, 6, 5], [207, -71, -63]]).unwrap()
}

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn run<S: Strategy>(cases: u32, s: S, f: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&s, f).map_err(|e| e.to_string())
}

fn field() -> SplitCubicField {
    SplitCubicField::new(&a_one().charpoly()).unwrap()
}

fn elem_strategy() -> impl Strategy<Value = [(i64, i64); 6]> {
    proptest::array::uniform6((-20i64..=20, 1i64..=5))
}

fn elem(f: &SplitCubicField, c: [(i64, i64); 6]) -> KElem {
    f.elem(c.map(|(n, d)| rat(n, d)))
}

pub fn field_axioms(cases: u32) -> Result<(), String> {
    let f = field();
    run(cases, (elem_strategy(), elem_strategy(), elem_strategy()), |(a, b, c)| {
        let (a, b, c) = (elem(&f, a), elem(&f, b), elem(&f, c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &a), &f.zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), f.one());
        }
        Ok(())
    })
}

pub fn conjugation(cases: u32) -> Result<(), String> {
    let f = field();
    run(cases, (elem_strategy(), elem_strategy()), |(a, b)| {
        let (a, b) = (elem(&f, a), elem(&f, b));
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        Ok(())
    })
}

pub fn norm_multiplicative(cases: u32) -> Result<(), String> {
    let f = field();
    run(cases, (elem_strategy(), elem_strategy()), |(a, b)| {
        let (a, b) = (elem(&f, a), elem(&f, b));
        prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
        Ok(())
    })
}

fn eval_k(p: &PolyQ, x: &KElem) -> KElem {
    let f = x.field();
    p.coeffs()
        .iter()
        .rev()
        .fold(f.zero(), |acc, c| &(&acc * x) + &f.from_rational(c.clone()))
}

pub fn min_poly_annihilates(cases: u32) -> Result<(), String> {
    let f = field();
    run(cases, elem_strategy(), |a| {
        let a = elem(&f, a);
        let m = a.min_poly();
        prop_assert!(m.is_monic());
        prop_assert!(eval_k(&m, &a).is_zero());
        prop_assert_eq!(6 % m.degree().unwrap(), 0);
        Ok(())
    })
}

/// `c₁ξ₁ⁿ + c₂ξ₂ⁿ + c₃ξ₃ⁿ = aₙ` in `K` and `c₂ = c̄₁` for the 36 sequences.
pub fn reconstruction(a: &IntMat3, n_max: usize) -> Result<(), String> {
    let e = EigenData::new(a).map_err(|e| e.to_string())?;
    for v in &CONE_VECTORS {
        for w in &CONE_FUNCTIONALS {
            let sc = e.coeffs(v, w);
            if sc.c[1] != sc.c[0].conj() {
                return Err(format!("conj(c₁) ≠ c₂ for v = {v:?}, w = {w:?}"));
            }
            let terms = seq_from_pair(a, v, w).terms(n_max + 1);
            for (n, t) in terms.iter().enumerate() {
                if sc.value(e.xi(), n as u64).as_rational() != Some(int(t.clone())) {
                    return Err(format!("mismatch at n = {n} for v = {v:?}, w = {w:?}"));
                }
            }
        }
    }
    Ok(())
}

fn point_strategy() -> impl Strategy<Value = [i64; 4]> {
    let c = prop_oneof![-9i64..=-1, 1i64..=9];
    [c.clone(), c.clone(), c.clone(), c]
}

/// `forward(inverse(P)) = P` away from indeterminacy. Returns the number of
/// points actually evaluated.
pub fn round_trip(a: &IntMat3, cases: u32) -> Result<usize, String> {
    let maps = build_fa(a).map_err(|e| e.to_string())?;
    let count = std::cell::Cell::new(0usize);
    run(cases, point_strategy(), |c| {
        let p = ProjPointQ::from_ints(c).unwrap();
        let q = match maps.inverse.evaluate(&p) {
            Ok(q) => q,
            Err(Error::IndeterminatePoint { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        match maps.forward.evaluate(&q) {
            Ok(r) => {
                count.set(count.get() + 1);
                prop_assert_eq!(r, p);
            }
            Err(Error::IndeterminatePoint { .. }) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
        Ok(())
    })?;
    Ok(count.get())
}

/// `h(f(P)) <= deg·h(P) + log 4` for one step of `f_A`.
pub fn height_inequality(a: &IntMat3, cases: u32) -> Result<(), String> {
    let maps = build_fa(a).map_err(|e| e.to_string())?;
    let deg = int(degree_bound_fa(a));
    let eps = rat(1, 1 << 20);
    let log4 = weil_height(&ProjPointQ::from_ints([1, 1, 1, 4]).unwrap(), &eps);
    run(cases, point_strategy(), |c| {
        let p = ProjPointQ::from_ints(c).unwrap();
        if let Ok(q) = maps.forward.evaluate(&p) {
            let lhs = weil_height(&q, &eps);
            let rhs = &weil_height(&p, &eps).scale(&deg) + &log4;
            prop_assert!(lhs.lo() <= rhs.hi(), "h(f(P)) = {lhs} > {rhs} at {p}");
        }
        Ok(())
    })
}

/// The state map is a permutation, so the first return is to the start.
pub fn pure_periodicity(cases: u32) -> Result<(), String> {
    let s = (-20i64..=20, -20i64..=20, prop_oneof![Just(1i64), Just(-1i64)], proptest::array::uniform3(-50i64..=50), 2u64..=60);
    run(cases, s, |(r1, r2, r3, init, m)| {
        let r = LinRec3::new([r1, r2, r3], init);
        let cert = mod_cycle(&r, m, 1_000_000).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let red = |x: &BigInt| x.mod_floor(&BigInt::from(m)).to_u64().unwrap();
        let rec = [r1, r2, r3].map(|x| x.rem_euclid(m as i64) as u64);
        let start = [red(&r.init[0]), red(&r.init[1]), red(&r.init[2])];
        let mut st = start;
        let mut zeros = vec![];
        for n in 1..=cert.period {
            if st[0] == 0 {
                zeros.push(n - 1);
            }
            st = [st[1], st[2], (rec[0] * st[2] + rec[1] * st[1] + rec[2] * st[0]) % m];
            prop_assert!((st == start) == (n == cert.period), "return at n = {}", n);
        }
        prop_assert_eq!(&zeros, &cert.zero_positions);
        // Exact terms reduce to the cycled residues.
        let count = (3 * cert.period).min(200) as usize;
        for (n, t) in r.terms(count).iter().enumerate() {
            let is_zero = red(t) == 0;
            prop_assert_eq!(is_zero, cert.zero_positions.contains(&(n as u64 % cert.period)));
        }
        Ok(())
    })
}

pub fn baker_monotone(cases: u32) -> Result<(), String> {
    use dyndeg_core::algebra::RatInterval;
    run(cases, (0u64..1_000_000, 0u64..1_000_000, 1i64..100, -50i64..50), |(c1, c2, s, o)| {
        let (lo, hi) = (c1.min(c2), c1.max(c2));
        let slope = RatInterval::point(rat(s, 10));
        let off = RatInterval::point(rat(o, 10));
        let n1 = baker_threshold(&RatInterval::point(int(lo)), &slope, &off).unwrap();
        let n2 = baker_threshold(&RatInterval::point(int(hi)), &slope, &off).unwrap();
        prop_assert!(n1 <= n2);
        Ok(())
    })
}

fn dot(u: &Vec3, x: &[BigInt; 3]) -> BigInt {
    (0..3).map(|i| &x[i] * u[i]).sum()
}

/// For `k₀ <= n <= k₀ + 50` the stabilized `u*` attains the maximum.
pub fn argmax_sound(m: &IntMat3) -> Result<(), String> {
    let p = PerronData::new(m).map_err(|e| e.to_string())?;
    for v in &V {
        let s = argmax_stabilize(&p, v).map_err(|e| e.to_string())?;
        let mut x = v.map(BigInt::from);
        for n in 1..=s.onset + 50 {
            x = m.apply(&x);
            if n >= s.onset {
                let top = dot(&s.u_star, &x);
                if U.iter().any(|u| dot(u, &x) > top) {
                    return Err(format!("u* = {:?} not maximal at n = {n} for v = {v:?}", s.u_star));
                }
            }
        }
    }
    Ok(())
}

pub fn certificate_bytes(a: &IntMat3, cfg: &ReportConfig) -> String {
    full_report(a, cfg).to_json()
}

pub fn deterministic_certificate(a: &IntMat3) -> Result<(), String> {
    let cfg = ReportConfig::default();
    let one = certificate_bytes(a, &cfg);
    let two = certificate_bytes(a, &cfg);
    if one == two {
        Ok(())
    } else {
        Err("certificate bytes differ between runs".into())
    }
}
