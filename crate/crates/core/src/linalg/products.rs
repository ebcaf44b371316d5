use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64, ZERO};

/// Kronecker product: block `(i, j)` of the result is `a[i, j] * b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut out = ComplexMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let s = a[(i, j)];
            if s == ZERO {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = s * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Hilbert-Schmidt inner product `Tr(A† B)`, conjugate-linear in `a`.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<C64> {
    a.require_square()?;
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch {
            expected: (a.rows(), a.cols()),
            found: (b.rows(), b.cols()),
        });
    }
    Ok(hs_inner_unchecked(a, b))
}

pub(crate) fn hs_inner_unchecked(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .fold(ZERO, |acc, (x, y)| acc + x.conj() * y)
}

/// `sqrt(Tr(A† A))`.
pub fn hs_norm(a: &ComplexMatrix) -> f64 {
    a.norm_fro()
}

/// Commutator `[A, B] = AB - BA`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    &a.matmul(b) - &b.matmul(a)
}

/// Anticommutator `{A, B} = AB + BA`.
pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    &a.matmul(b) + &b.matmul(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ONE;

    fn real(rows: &[&[f64]]) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(rows).unwrap()
    }

    #[test]
    fn identity_kron_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_block_layout() {
        let a = real(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let b = real(&[&[1.0, 0.0], &[0.0, 2.0]]);
        let k = kron(&a, &b);
        assert_eq!((k.rows(), k.cols()), (4, 4));
        for i in 0..4 {
            for j in 0..4 {
                let expect = match (i, j) {
                    (0, 2) => 1.0,
                    (1, 3) => 2.0,
                    _ => 0.0,
                };
                assert_eq!(k[(i, j)], C64::new(expect, 0.0), "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn spin_z_commutator_superoperator() {
        // Under block(i,j) = A[i,j]·B with column stacking this is diag(0, -1, 1, 0).
        let sz = real(&[&[0.5, 0.0], &[0.0, -0.5]]);
        let i2 = ComplexMatrix::identity(2);
        let m = &kron(&i2, &sz) - &kron(&sz.transpose(), &i2);
        let expect = ComplexMatrix::from_diagonal(&[ZERO, -ONE, ONE, ZERO]);
        assert!(m.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn hilbert_schmidt_products() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(hs_inner(&i2, &i2).unwrap(), C64::new(2.0, 0.0));
        let sx = real(&[&[0.0, 0.5], &[0.5, 0.0]]);
        let sy = ComplexMatrix::from_rows(&[[ZERO, C64::new(0.0, -0.5)], [C64::new(0.0, 0.5), ZERO]]).unwrap();
        assert_eq!(hs_inner(&sx, &sy).unwrap(), ZERO);
        assert!((hs_inner(&sx, &sx).unwrap() - C64::new(0.5, 0.0)).norm() < 1e-16);
        assert!((hs_norm(&sx) - 0.5f64.sqrt()).abs() < 1e-16);
        assert!(matches!(
            hs_inner(&i2, &ComplexMatrix::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
