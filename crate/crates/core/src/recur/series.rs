//! Eventually recurrent sequences `P₁, P₂, …` and the polynomial equation
//! for `Σ Pₙ λ⁻ⁿ = 1`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::rational::int;
use crate::algebra::PolyQ;
use crate::error::{invalid, Error, Result};

/// Index of the first term that the recurrence can predict from three
/// predecessors (terms are indexed from 1).
const FIRST_CHECKABLE: usize = 4;

/// `terms[0]` is `P₁`. Returns `r₁P_{n-1} + r₂P_{n-2} + r₃P_{n-3}` for `n >= 4`.
fn predicted(terms: &[BigInt], rec: &[i64; 3], n: usize) -> BigInt {
    (0..3).map(|j| &terms[n - 2 - j] * rec[j]).sum()
}

/// Smallest `n₀` such that every supplied `Pₙ` with `n >= max(n₀, 4)`
/// satisfies the recurrence. Holding from the start gives `n₀ = 1`.
pub fn eventual_rec_detect(terms: &[BigInt], rec: &[i64; 3], n_start_max: usize) -> Result<usize> {
    if terms.len() < FIRST_CHECKABLE {
        return invalid("need at least four terms");
    }
    let last_fail = (FIRST_CHECKABLE..=terms.len())
        .rev()
        .find(|&n| terms[n - 1] != predicted(terms, rec, n));
    let onset = last_fail.map_or(1, |n| n + 1);
    if onset > n_start_max || onset > terms.len() {
        return Err(Error::NoOnsetFound);
    }
    Ok(onset)
}

/// With `t = 1/λ` and `G(t) = Σ Pₙtⁿ`, `Q(t)G(t) = R(t)` where
/// `Q = 1 - r₁t - r₂t² - r₃t³`. Returns `λ^deg·(Q(1/λ) - R(1/λ))`, whose
/// positive roots solve `G(1/λ) = 1`.
pub fn series_to_polynomial(terms: &[BigInt], rec: &[i64; 3], onset: usize) -> Result<PolyQ> {
    let start = onset.max(FIRST_CHECKABLE);
    if terms.len() + 1 < start {
        return invalid(format!("need terms up to index {}", start - 1));
    }
    for n in start..=terms.len() {
        if terms[n - 1] != predicted(terms, rec, n) {
            return Err(Error::Inconsistent(format!("recurrence fails at n = {n}")));
        }
    }
    let mut diff = vec![BigInt::zero(); start];
    diff[0] = BigInt::from(1);
    for (j, r) in rec.iter().enumerate() {
        diff[j + 1] -= *r;
    }
    let mut r_coeffs = vec![BigInt::zero(); start];
    for n in 1..start {
        let mut r_n = terms[n - 1].clone();
        for j in 1..=3 {
            if n > j {
                r_n -= &terms[n - j - 1] * rec[j - 1];
            }
        }
        diff[n] -= &r_n;
        r_coeffs[n] = r_n;
    }
    // deg = max(deg Q, deg R); the difference may cancel below that.
    let deg_q = (1..=3).rev().find(|&j| rec[j - 1] != 0).unwrap_or(0);
    let deg_r = (1..start).rev().find(|&n| !r_coeffs[n].is_zero()).unwrap_or(0);
    diff.truncate(deg_q.max(deg_r) + 1);
    // Coefficient of t^n becomes the coefficient of λ^(deg - n).
    Ok(PolyQ::new(diff.into_iter().rev().map(int).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn onsets() {
        let p3 = big(&[209, 3067, 44541, 646855]);
        assert_eq!(eventual_rec_detect(&p3, &[15, -7, 1], 10).unwrap(), 1);
        let p42 = big(&[173, 290, 174, 131, 130, 67, 261, 122, 253, 383]);
        assert_eq!(eventual_rec_detect(&p42, &[0, 1, 1], 20).unwrap(), 10);
        assert_eq!(eventual_rec_detect(&p42, &[0, 1, 1], 9), Err(Error::NoOnsetFound));
        assert_eq!(eventual_rec_detect(&big(&[5; 8]), &[1, 0, 0], 3).unwrap(), 1);
    }

    #[test]
    fn polynomials() {
        let p3 = big(&[209, 3067, 44541, 646855]);
        let q = series_to_polynomial(&p3, &[15, -7, 1], 1).unwrap();
        assert_eq!(q, PolyQ::from_ints(&[0, 75, -224, 1]));
        let p42 = big(&[173, 290, 174, 131, 130, 67, 261, 122, 253, 383]);
        let q = series_to_polynomial(&p42, &[0, 1, 1], 10).unwrap();
        assert_eq!(q, PolyQ::from_ints(&[75, 75, 0, 238, 334, 332, -2, -291, -173, 1]));
    }

    #[test]
    fn geometric_series() {
        // Pₙ = 2·3ⁿ: 1 = Σ 2·3ⁿλ⁻ⁿ gives λ = 9.
        let p: Vec<BigInt> = (1..8u32).map(|n| BigInt::from(2) * BigInt::from(3).pow(n)).collect();
        let q = series_to_polynomial(&p, &[3, 0, 0], 1).unwrap();
        assert_eq!(q, PolyQ::from_ints(&[-9, 1]));
    }

    #[test]
    fn inconsistent_data_is_refused() {
        let p42 = big(&[173, 290, 174, 131, 130, 67, 261, 122, 253, 383]);
        assert!(matches!(series_to_polynomial(&p42, &[0, 1, 1], 5), Err(Error::Inconsistent(_))));
    }
}
