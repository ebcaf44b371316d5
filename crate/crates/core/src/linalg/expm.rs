//! Dense matrix exponential by scaling and squaring with a diagonal Padé
//! approximant whose degree is picked from the 1-norm (Higham 2005).

use crate::error::{Error, Result};
use crate::linalg::lu::Lu;
use crate::linalg::matrix::gemm_into;
use crate::linalg::{ComplexMatrix, C64, ONE};

const THETA: [(usize, f64); 5] = [
    (3, 1.495585217958292e-2),
    (5, 2.53939833006323e-1),
    (7, 9.504178996162932e-1),
    (9, 2.097847961257068e0),
    (13, 5.371920351148152e0),
];

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const B9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// `e^{M t}`.
pub fn expm(m: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    let n = m.require_square()?;
    if !t.is_finite() {
        return Err(Error::InvalidParameter(format!("time {t} is not finite")));
    }
    let a = m.scale_real(t);
    let norm = a.norm_one();
    if !norm.is_finite() {
        return Err(Error::Overflow { norm });
    }
    if norm == 0.0 {
        return Ok(ComplexMatrix::identity(n));
    }

    for &(degree, theta) in &THETA[..4] {
        if norm <= theta {
            let coeffs: &[f64] = match degree {
                3 => &B3,
                5 => &B5,
                7 => &B7,
                _ => &B9,
            };
            return finish(pade_low(&a, coeffs)?, 0, norm);
        }
    }

    let theta13 = THETA[4].1;
    let s = (norm / theta13).log2().ceil().max(0.0) as i32;
    let scaled = a.scale_real(2f64.powi(-s));
    finish(pade13(&scaled)?, s as u32, norm)
}

fn finish(mut r: ComplexMatrix, squarings: u32, norm: f64) -> Result<ComplexMatrix> {
    for _ in 0..squarings {
        r = r.matmul(&r);
        if !r.is_finite() {
            return Err(Error::Overflow { norm });
        }
    }
    if r.is_finite() {
        Ok(r)
    } else {
        Err(Error::Overflow { norm })
    }
}

/// Padé approximant of degree 3, 5, 7 or 9 built from even powers of `a`.
fn pade_low(a: &ComplexMatrix, b: &[f64]) -> Result<ComplexMatrix> {
    let n = a.rows();
    let ident = ComplexMatrix::identity(n);
    let a2 = a.matmul(a);
    let mut powers = vec![ident, a2.clone()];
    let half = b.len() / 2;
    while powers.len() < half {
        let next = powers.last().unwrap().matmul(&a2);
        powers.push(next);
    }
    let mut u_inner = ComplexMatrix::zeros(n, n);
    let mut v = ComplexMatrix::zeros(n, n);
    for (k, p) in powers.iter().enumerate() {
        u_inner.axpy(C64::new(b[2 * k + 1], 0.0), p);
        v.axpy(C64::new(b[2 * k], 0.0), p);
    }
    let u = a.matmul(&u_inner);
    rational(&u, &v)
}

fn pade13(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.rows();
    let b = &B13;
    let c = |x: f64| C64::new(x, 0.0);
    let ident = ComplexMatrix::identity(n);
    let a2 = a.matmul(a);
    let a4 = a2.matmul(&a2);
    let a6 = a4.matmul(&a2);

    let mut w1 = a6.scale_real(b[13]);
    w1.axpy(c(b[11]), &a4);
    w1.axpy(c(b[9]), &a2);
    let mut w2 = a6.scale_real(b[7]);
    w2.axpy(c(b[5]), &a4);
    w2.axpy(c(b[3]), &a2);
    w2.axpy(c(b[1]), &ident);
    // u = a * (a6 * w1 + w2)
    gemm_into(ONE, &a6, &w1, ONE, &mut w2);
    let u = a.matmul(&w2);

    let mut z1 = a6.scale_real(b[12]);
    z1.axpy(c(b[10]), &a4);
    z1.axpy(c(b[8]), &a2);
    let mut v = a6.scale_real(b[6]);
    v.axpy(c(b[4]), &a4);
    v.axpy(c(b[2]), &a2);
    v.axpy(c(b[0]), &ident);
    gemm_into(ONE, &a6, &z1, ONE, &mut v);
    rational(&u, &v)
}

/// Solves `(V - U) R = V + U`.
fn rational(u: &ComplexMatrix, v: &ComplexMatrix) -> Result<ComplexMatrix> {
    let p = v + u;
    let q = v - u;
    let lu = Lu::factor(&q)?;
    Ok(lu.solve(&p))
}
