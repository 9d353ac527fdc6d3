//! Exact spectral decomposition of an integer 3×3 matrix over the splitting
//! field of its characteristic polynomial.
//!
//! For a simple eigenvalue `ξ` the spectral projector is
//! `adj(ξI - A) / p'(ξ)`, which equals `q·s` for the eigencolumn `q` and the
//! matching row `s` of the inverse eigenmatrix. It needs no normalisation
//! choice, so `⟨w, P v⟩` is canonical.

use crate::algebra::rational::int;
use crate::algebra::{KElem, Rational, SplitCubicField};
use crate::error::{Error, Result};
use crate::maps::IntMat3;
use crate::psi::Vec3;

type KMat = [[KElem; 3]; 3];

#[derive(Clone, Debug)]
pub struct EigenData {
    field: SplitCubicField,
    a: IntMat3,
    /// `[ξ₁, ξ₂, ξ₃] = [ξ₊, ξ₋, θ]`.
    xi: [KElem; 3],
    proj: [KMat; 3],
}

/// `aₙ = c₁ξ₁ⁿ + c₂ξ₂ⁿ + c₃ξ₃ⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqCoeffs {
    pub c: [KElem; 3],
}

impl SeqCoeffs {
    pub fn all_nonzero(&self) -> bool {
        self.c.iter().all(|c| !c.is_zero())
    }

    /// `c₁ + c₂ ≠ 0`.
    pub fn pair_sum_nonzero(&self) -> bool {
        !(&self.c[0] + &self.c[1]).is_zero()
    }

    pub fn value(&self, xi: &[KElem; 3], n: u64) -> KElem {
        let mut s = self.c[0].field().zero();
        for i in 0..3 {
            s = &s + &(&self.c[i] * &xi[i].pow(n));
        }
        s
    }
}

fn adjugate(m: &KMat) -> KMat {
    let cof = |i: usize, j: usize| {
        let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
        let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
        &(&m[r0][c0] * &m[r1][c1]) - &(&m[r0][c1] * &m[r1][c0])
    };
    std::array::from_fn(|i| std::array::from_fn(|j| cof(j, i)))
}

impl EigenData {
    pub fn new(a: &IntMat3) -> Result<Self> {
        let field = SplitCubicField::new(&a.charpoly())?;
        Self::with_field(a, field)
    }

    pub fn with_field(a: &IntMat3, field: SplitCubicField) -> Result<Self> {
        if field.cubic() != &a.charpoly() {
            return Err(Error::InvalidInput(
                "field cubic differs from the characteristic polynomial".into(),
            ));
        }
        let (theta, plus, minus) = field.roots();
        let (b, c, _) = field.coeffs();
        let p1 = projector(a, &field, &plus, b, c);
        let p2 = p1.clone().map(|row| row.map(|x| x.conj()));
        let p3 = projector(a, &field, &theta, b, c);
        Ok(Self {
            field,
            a: *a,
            xi: [plus, minus, theta],
            proj: [p1, p2, p3],
        })
    }

    pub fn field(&self) -> &SplitCubicField {
        &self.field
    }

    pub fn matrix(&self) -> &IntMat3 {
        &self.a
    }

    pub fn xi(&self) -> &[KElem; 3] {
        &self.xi
    }

    pub fn projector(&self, i: usize) -> &KMat {
        &self.proj[i]
    }

    /// Eigencomponent `Pᵢv`.
    pub fn component(&self, i: usize, v: &Vec3) -> [KElem; 3] {
        let p = &self.proj[i];
        std::array::from_fn(|r| {
            (0..3).fold(self.field.zero(), |acc, k| &acc + &p[r][k].scale(&int(v[k])))
        })
    }

    /// `⟨w, Pᵢv⟩`.
    pub fn pairing(&self, i: usize, v: &Vec3, w: &Vec3) -> KElem {
        functional(w, &self.component(i, v))
    }

    pub fn coeffs(&self, v: &Vec3, w: &Vec3) -> SeqCoeffs {
        SeqCoeffs {
            c: std::array::from_fn(|i| self.pairing(i, v, w)),
        }
    }
}

/// `⟨w, x⟩` for an integer functional and a vector over `K`.
pub fn functional(w: &Vec3, x: &[KElem; 3]) -> KElem {
    let f = x[0].field().clone();
    (0..3).fold(f.zero(), |acc, k| &acc + &x[k].scale(&int(w[k])))
}

fn projector(a: &IntMat3, f: &SplitCubicField, xi: &KElem, b: &Rational, c: &Rational) -> KMat {
    let m: KMat = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let e = f.from_int(-a.get(i, j));
            if i == j {
                &e + xi
            } else {
                e
            }
        })
    });
    let dp = &(&(&xi.pow(2) * &f.from_int(3)) + &(xi * &f.from_rational(b * int(2))))
        + &f.from_rational(c.clone());
    let inv = dp.inv().expect("simple root of an irreducible cubic");
    adjugate(&m).map(|row| row.map(|x| &x * &inv))
}

/// Exact coefficients of `⟨w, Aⁿv⟩` in the eigenbasis of `A`.
pub fn coeffs_in_k(a: &IntMat3, v: &Vec3, w: &Vec3, f: &SplitCubicField) -> Result<SeqCoeffs> {
    Ok(EigenData::with_field(a, f.clone())?.coeffs(v, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psi::{CONE_FUNCTIONALS, CONE_VECTORS};
    use crate::recur::linrec::seq_from_pair;

    fn a_one() -> IntMat3 {
        IntMat3::new([[56, -19, -17], [-16, 6, 5], [207, -71, -63]]).unwrap()
    }

    #[test]
    fn projectors_resolve_identity() {
        let e = EigenData::new(&a_one()).unwrap();
        for r in 0..3 {
            for c in 0..3 {
                let s = &(&e.projector(0)[r][c] + &e.projector(1)[r][c]) + &e.projector(2)[r][c];
                assert_eq!(s.as_rational(), Some(int((r == c) as i64)));
            }
        }
    }

    #[test]
    fn reconstruction_of_a_sequence() {
        let a = a_one();
        let e = EigenData::new(&a).unwrap();
        let (v, w) = (CONE_VECTORS[2], CONE_FUNCTIONALS[4]);
        let sc = e.coeffs(&v, &w);
        assert!(sc.all_nonzero() && sc.pair_sum_nonzero());
        assert_eq!(sc.c[1], sc.c[0].conj());
        let terms = seq_from_pair(&a, &v, &w).terms(8);
        for (n, t) in terms.iter().enumerate() {
            assert_eq!(sc.value(e.xi(), n as u64).as_rational(), Some(int(t.clone())));
        }
    }

    #[test]
    fn reducible_is_unsupported() {
        assert!(matches!(EigenData::new(&IntMat3::identity()), Err(Error::Unsupported(_))));
    }
}
