//! LU factorization with partial pivoting.

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ComplexVector, C64, ONE, ZERO};

#[derive(Clone, Debug)]
pub struct Lu {
    /// Unit lower and upper factors packed together.
    factors: ComplexMatrix,
    perm: Vec<usize>,
}

impl Lu {
    pub fn factor(a: &ComplexMatrix) -> Result<Self> {
        let n = a.require_square()?;
        let mut f = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, f[(i, k)].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax == 0.0 || !pmax.is_finite() {
                return Err(Error::Singular { col: k, pivot: pmax });
            }
            if p != k {
                perm.swap(p, k);
                let data = f.as_mut_slice();
                for j in 0..n {
                    data.swap(k * n + j, p * n + j);
                }
            }
            let pivot = f[(k, k)];
            for i in k + 1..n {
                let m = f[(i, k)] / pivot;
                f[(i, k)] = m;
                if m == ZERO {
                    continue;
                }
                let data = f.as_mut_slice();
                let (upper, lower) = data.split_at_mut(i * n);
                let row_k = &upper[k * n..k * n + n];
                let row_i = &mut lower[..n];
                for j in k + 1..n {
                    row_i[j] -= m * row_k[j];
                }
            }
        }
        Ok(Self { factors: f, perm })
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn solve_vec(&self, b: &ComplexVector) -> ComplexVector {
        let n = self.dim();
        assert_eq!(b.len(), n);
        let mut x: Vec<_> = self.perm.iter().map(|&p| b[p]).collect();
        self.substitute(&mut x);
        ComplexVector::from_raw(x)
    }

    /// Solves `A X = B` for every column of `B`.
    pub fn solve(&self, b: &ComplexMatrix) -> ComplexMatrix {
        let n = self.dim();
        assert_eq!(b.rows(), n);
        let m = b.cols();
        let mut x = ComplexMatrix::zeros(n, m);
        for (i, &p) in self.perm.iter().enumerate() {
            for j in 0..m {
                x[(i, j)] = b[(p, j)];
            }
        }
        // Row-oriented substitution keeps the inner loops contiguous.
        let f = &self.factors;
        let data = x.as_mut_slice();
        for i in 0..n {
            for k in 0..i {
                let l = f[(i, k)];
                if l == ZERO {
                    continue;
                }
                let (head, tail) = data.split_at_mut(i * m);
                let src = &head[k * m..k * m + m];
                for (d, s) in tail[..m].iter_mut().zip(src) {
                    *d -= l * s;
                }
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let u = f[(i, k)];
                if u == ZERO {
                    continue;
                }
                let (head, tail) = data.split_at_mut(k * m);
                let dst = &mut head[i * m..i * m + m];
                for (d, s) in dst.iter_mut().zip(&tail[..m]) {
                    *d -= u * s;
                }
            }
            let inv = ONE / f[(i, i)];
            for d in &mut data[i * m..i * m + m] {
                *d *= inv;
            }
        }
        x
    }

    pub fn inverse(&self) -> ComplexMatrix {
        self.solve(&ComplexMatrix::identity(self.dim()))
    }

    fn substitute(&self, x: &mut [C64]) {
        let n = self.dim();
        let f = &self.factors;
        for i in 0..n {
            let mut s = x[i];
            for k in 0..i {
                s -= f[(i, k)] * x[k];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for k in i + 1..n {
                s -= f[(i, k)] * x[k];
            }
            x[i] = s / f[(i, i)];
        }
    }
}

/// Solves `A X = B`.
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let lu = Lu::factor(a)?;
    if b.rows() != lu.dim() {
        return Err(Error::DimensionMismatch {
            expected: (lu.dim(), b.cols()),
            found: (b.rows(), b.cols()),
        });
    }
    Ok(lu.solve(b))
}

pub fn inverse(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(Lu::factor(a)?.inverse())
}

/// 1-norm condition number `‖A‖₁ ‖A⁻¹‖₁`; infinite when `A` is singular.
pub fn condition_one(a: &ComplexMatrix) -> f64 {
    match inverse(a) {
        Ok(inv) => {
            let c = a.norm_one() * inv.norm_one();
            if c.is_finite() {
                c
            } else {
                f64::INFINITY
            }
        }
        Err(_) => f64::INFINITY,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        let a = ComplexMatrix::from_rows(&[
            [C64::new(0.0, 0.0), C64::new(2.0, 1.0), C64::new(1.0, 0.0)],
            [C64::new(1.0, -1.0), C64::new(0.5, 0.0), C64::new(0.0, 3.0)],
            [C64::new(2.0, 0.0), C64::new(0.0, 0.0), C64::new(-1.0, 1.0)],
        ])
        .unwrap();
        let inv = inverse(&a).unwrap();
        assert!(a.matmul(&inv).max_abs_diff(&ComplexMatrix::identity(3)) < 1e-14);
        let b = ComplexVector::from_real(&[1.0, 2.0, 3.0]).unwrap();
        let x = Lu::factor(&a).unwrap().solve_vec(&b);
        assert!(a.matvec(&x).max_abs_diff(&b) < 1e-14);
    }

    #[test]
    fn singular_matrix_is_reported() {
        let a = ComplexMatrix::from_real_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap();
        assert!(matches!(Lu::factor(&a), Err(Error::Singular { .. })));
        assert_eq!(condition_one(&a), f64::INFINITY);
        assert!((condition_one(&ComplexMatrix::identity(4)) - 1.0).abs() < 1e-15);
    }
}
