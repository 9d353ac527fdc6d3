//! Small dense matrices over ℚ.

use num_traits::{One, Zero};

use super::poly::PolyQ;
use super::rational::{int, Rational};

/// Row-major square matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    n: usize,
    a: Vec<Rational>,
}

impl RatMatrix {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            a: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self {
            n,
            a: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows<const N: usize>(rows: [[i64; N]; N]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.a[i * self.n + j] = x;
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.a.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, o: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let mut r = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let x = self.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    r.a[i * n + j] += x * o.get(k, j);
                }
            }
        }
        r
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn trace(&self) -> Rational {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    /// Characteristic polynomial `det(xI - M)` by Faddeev–LeVerrier.
    pub fn charpoly(&self) -> PolyQ {
        let n = self.n;
        let mut c = vec![Rational::zero(); n + 1];
        c[n] = Rational::one();
        let mut m = Self::zero(n);
        for k in 1..=n {
            // M_k = A·M_{k-1} + c_{n-k+1}·I
            let mut next = self.mul(&m);
            for i in 0..n {
                let v = next.get(i, i) + &c[n - k + 1];
                next.set(i, i, v);
            }
            m = next;
            c[n - k] = -self.mul(&m).trace() / int(k as i64);
        }
        PolyQ::new(c)
    }

    /// Solves `M x = b`; `None` when `M` is singular.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        let n = self.n;
        let mut aug: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> = (0..n).map(|j| self.get(i, j).clone()).collect();
                row.push(b[i].clone());
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !aug[r][col].is_zero())?;
            aug.swap(col, piv);
            let inv = aug[col][col].recip();
            for x in aug[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..n {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for j in col..=n {
                        let t = &f * &aug[col][j];
                        aug[r][j] -= t;
                    }
                }
            }
        }
        Some(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        let n = self.n;
        let cols: Option<Vec<Vec<Rational>>> = (0..n)
            .map(|j| {
                let e: Vec<Rational> = (0..n)
                    .map(|i| if i == j { Rational::one() } else { Rational::zero() })
                    .collect();
                self.solve(&e)
            })
            .collect();
        let cols = cols?;
        let mut r = Self::zero(n);
        for (j, col) in cols.into_iter().enumerate() {
            for (i, x) in col.into_iter().enumerate() {
                r.set(i, j, x);
            }
        }
        Some(r)
    }

    pub fn det(&self) -> Rational {
        let cp = self.charpoly();
        let c0 = cp.coeff(0);
        if self.n.is_multiple_of(2) {
            c0
        } else {
            -c0
        }
    }
}
