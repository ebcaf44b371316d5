//! General complex eigensolver.
//!
//! The matrix is reduced to upper Hessenberg form with Householder reflectors,
//! then driven to complex Schur form `A = Z T Z†` by single-shift QR sweeps
//! (Wilkinson shifts, an exceptional shift every tenth sweep without
//! deflation). Eigenvectors of the triangular factor come from
//! back-substitution; near-equal diagonal entries are perturbed instead of
//! rejected, so defective matrices produce clustered eigenvalues and an
//! ill-conditioned eigenvector matrix rather than an error.

use crate::error::{Error, Result};
use crate::linalg::lu::condition_one;
use crate::linalg::{ComplexMatrix, ComplexVector, C64, ITERATIVE_TOL, ZERO};

const MAX_SWEEPS_PER_EIGENVALUE: usize = 300;

/// Eigenvalues (with multiplicity), unit-norm right eigenvectors stored as
/// columns, per-pair residuals `‖M v − λ v‖`, and the 1-norm condition number
/// of the eigenvector matrix.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<C64>,
    pub right_eigenvectors: ComplexMatrix,
    pub residual_norms: Vec<f64>,
    pub eigenvector_condition: f64,
}

impl EigenDecomposition {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn eigenvector(&self, k: usize) -> ComplexVector {
        self.right_eigenvectors.column(k)
    }

    /// Eigenvalues ordered by real part, then imaginary part.
    pub fn sorted_eigenvalues(&self) -> Vec<C64> {
        let mut v = self.eigenvalues.clone();
        sort_complex(&mut v);
        v
    }
}

/// Sorts by real part, then imaginary part.
pub fn sort_complex(values: &mut [C64]) {
    values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Largest distance between paired entries when `a` is matched greedily to
/// its nearest unused neighbour in `b`. Infinite if `b` is shorter.
pub fn spectral_distance(a: &[C64], b: &[C64]) -> f64 {
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let best = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1));
        match best {
            Some((j, d)) => {
                used[j] = true;
                worst = worst.max(d);
            }
            None => return f64::INFINITY,
        }
    }
    worst
}

/// Full eigendecomposition with the default residual tolerance.
pub fn eig(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    eig_with_tolerance(m, ITERATIVE_TOL)
}

/// Full eigendecomposition; fails if any pair has residual above `tol * ‖M‖_F`.
pub fn eig_with_tolerance(m: &ComplexMatrix, tol: f64) -> Result<EigenDecomposition> {
    m.require_square()?;
    let (h, q) = hessenberg(m);
    let (t, z) = schur(h, q)?;
    let eigenvalues = t.diagonal();
    let y = triangular_eigenvectors(&t);
    let mut v = z.matmul(&y);
    normalize_columns(&mut v);

    let bound = tol * m.norm_fro();
    let mut residual_norms = Vec::with_capacity(eigenvalues.len());
    for (k, &lambda) in eigenvalues.iter().enumerate() {
        let vk = v.column(k);
        let mut r = m.matvec(&vk);
        r.axpy(-lambda, &vk);
        let res = r.norm2();
        if res > bound {
            return Err(Error::InaccurateEigenpair {
                index: k,
                residual: res,
                bound,
            });
        }
        residual_norms.push(res);
    }
    let eigenvector_condition = condition_one(&v);
    Ok(EigenDecomposition {
        eigenvalues,
        right_eigenvectors: v,
        residual_norms,
        eigenvector_condition,
    })
}

/// Eigenvalues only (skips eigenvectors and residual checks).
pub fn eigenvalues(m: &ComplexMatrix) -> Result<Vec<C64>> {
    m.require_square()?;
    let (h, q) = hessenberg(m);
    let (t, _) = schur(h, q)?;
    Ok(t.diagonal())
}

#[inline]
fn cabs1(z: C64) -> f64 {
    z.re.abs() + z.im.abs()
}

/// Returns `(H, Q)` with `A = Q H Q†` and `H` upper Hessenberg.
pub(crate) fn hessenberg(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.rows();
    let mut h = a.clone();
    let mut q = ComplexMatrix::identity(n);
    if n < 3 {
        return (h, q);
    }
    let mut v = vec![ZERO; n];
    for k in 0..n - 2 {
        let len = n - k - 1;
        let tail: f64 = (k + 2..n).map(|i| h[(i, k)].norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let xnorm = (x0.norm_sqr() + tail).sqrt();
        let phase = if x0 == ZERO { C64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * xnorm;
        v[0] = x0 - alpha;
        for i in 1..len {
            v[i] = h[(k + 1 + i, k)];
        }
        let vnorm = v[..len].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut v[..len] {
            *z /= vnorm;
        }
        let v = &v[..len];

        // H <- P H, P = I - 2 v v†, acting on rows k+1..n.
        for j in k..n {
            let s: C64 = (0..len).map(|i| v[i].conj() * h[(k + 1 + i, j)]).sum();
            if s == ZERO {
                continue;
            }
            for i in 0..len {
                h[(k + 1 + i, j)] -= 2.0 * v[i] * s;
            }
        }
        // H <- H P and Q <- Q P, acting on columns k+1..n.
        for mat in [&mut h, &mut q] {
            for i in 0..n {
                let row = &mut mat.as_mut_slice()[i * n + k + 1..i * n + n];
                let s: C64 = row.iter().zip(v).map(|(a, b)| a * b).sum();
                if s == ZERO {
                    continue;
                }
                for (a, b) in row.iter_mut().zip(v) {
                    *a -= 2.0 * s * b.conj();
                }
            }
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
    (h, q)
}

/// Rotation `G = [[c, s], [-conj(s), c]]` with `G [a; b] = [r; 0]`.
#[inline]
fn givens(a: C64, b: C64) -> (f64, C64) {
    if b == ZERO {
        return (1.0, ZERO);
    }
    if a == ZERO {
        return (0.0, C64::new(1.0, 0.0));
    }
    let an = a.norm();
    let nu = an.hypot(b.norm());
    (an / nu, (a / an) * b.conj() / nu)
}

/// Drives an upper Hessenberg `h` to upper triangular form, accumulating the
/// rotations into `z`.
pub(crate) fn schur(mut h: ComplexMatrix, mut z: ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let n = h.rows();
    if n == 1 {
        return Ok((h, z));
    }
    let eps = f64::EPSILON;
    let hnorm = h.norm_fro();
    let mut hi = n - 1;
    let mut sweeps = 0usize;
    let mut total = 0usize;
    let mut rotations: Vec<(f64, C64)> = Vec::with_capacity(n);

    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let mut s = cabs1(h[(l - 1, l - 1)]) + cabs1(h[(l, l)]);
            if s == 0.0 {
                s = hnorm;
            }
            if cabs1(h[(l, l - 1)]) <= eps * s {
                h[(l, l - 1)] = ZERO;
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            sweeps = 0;
            continue;
        }

        sweeps += 1;
        total += 1;
        if sweeps > MAX_SWEEPS_PER_EIGENVALUE {
            return Err(Error::EigenNotConverged {
                iterations: total,
                unconverged: hi + 1,
            });
        }

        let shift = if sweeps.is_multiple_of(10) {
            h[(hi, hi)] + 0.75 * h[(hi, hi - 1)].re.abs() + 0.75 * h[(hi, hi - 1)].im.abs()
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };

        for k in l..=hi {
            h[(k, k)] -= shift;
        }
        rotations.clear();
        for k in l..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..n {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = c * x + s * y;
                h[(k + 1, j)] = -s.conj() * x + c * y;
            }
            h[(k + 1, k)] = ZERO;
            rotations.push((c, s));
        }
        for (offset, &(c, s)) in rotations.iter().enumerate() {
            let k = l + offset;
            for i in 0..=(k + 1).min(hi) {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = c * x + s.conj() * y;
                h[(i, k + 1)] = -s * x + c * y;
            }
            for i in 0..n {
                let x = z[(i, k)];
                let y = z[(i, k + 1)];
                z[(i, k)] = c * x + s.conj() * y;
                z[(i, k + 1)] = -s * x + c * y;
            }
        }
        for k in l..=hi {
            h[(k, k)] += shift;
        }
    }

    for i in 1..n {
        for j in 0..i {
            h[(i, j)] = ZERO;
        }
    }
    Ok((h, z))
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let l1 = mid + disc;
    let l2 = mid - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Columns are eigenvectors of the upper triangular `t`.
fn triangular_eigenvectors(t: &ComplexMatrix) -> ComplexMatrix {
    let n = t.rows();
    let small = (f64::EPSILON * t.norm_fro()).max(f64::MIN_POSITIVE);
    let mut y = ComplexMatrix::zeros(n, n);
    let mut x = vec![ZERO; n];
    for k in 0..n {
        x[..=k].fill(ZERO);
        x[k] = C64::new(1.0, 0.0);
        let lambda = t[(k, k)];
        for i in (0..k).rev() {
            let mut s = ZERO;
            for j in i + 1..=k {
                s += t[(i, j)] * x[j];
            }
            let mut d = t[(i, i)] - lambda;
            if d.norm() < small {
                d = C64::new(small, 0.0);
            }
            x[i] = -smith_div(s, d);
            if x[i].norm() > 1e100 {
                for xj in &mut x[i..=k] {
                    *xj *= 1e-100;
                }
            }
        }
        for i in 0..=k {
            y[(i, k)] = x[i];
        }
    }
    y
}

/// `a / b` without forming `|b|²`, which underflows for tiny `b`.
fn smith_div(a: C64, b: C64) -> C64 {
    if b.re.abs() >= b.im.abs() {
        let r = b.im / b.re;
        let den = b.re + b.im * r;
        C64::new((a.re + a.im * r) / den, (a.im - a.re * r) / den)
    } else {
        let r = b.re / b.im;
        let den = b.re * r + b.im;
        C64::new((a.re * r + a.im) / den, (a.im * r - a.re) / den)
    }
}

fn normalize_columns(v: &mut ComplexMatrix) {
    for j in 0..v.cols() {
        let norm = (0..v.rows()).map(|i| v[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            for i in 0..v.rows() {
                v[(i, j)] /= norm;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn pseudo_random(n: usize, seed: u64) -> ComplexMatrix {
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        ComplexMatrix::from_fn(n, n, |_, _| c(next(), next()))
    }

    #[test]
    fn diagonal_spectrum() {
        let d = ComplexMatrix::from_diagonal(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        let e = eig(&d).unwrap();
        let sorted = e.sorted_eigenvalues();
        for (k, z) in sorted.iter().enumerate() {
            assert!((z - c(k as f64 + 1.0, 0.0)).norm() < 1e-14);
        }
        assert!((e.eigenvector_condition - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hessenberg_is_a_similarity() {
        let a = pseudo_random(7, 3);
        let (h, q) = hessenberg(&a);
        for i in 2..7 {
            for j in 0..i - 1 {
                assert_eq!(h[(i, j)], ZERO);
            }
        }
        let back = q.matmul(&h).matmul(&q.adjoint());
        assert!(back.max_abs_diff(&a) < 1e-14);
        assert!(q.adjoint().matmul(&q).max_abs_diff(&ComplexMatrix::identity(7)) < 1e-14);
    }

    #[test]
    fn schur_form_reproduces_matrix() {
        let a = pseudo_random(9, 11);
        let (h, q) = hessenberg(&a);
        let (t, z) = schur(h, q).unwrap();
        for i in 1..9 {
            for j in 0..i {
                assert_eq!(t[(i, j)], ZERO);
            }
        }
        assert!(z.matmul(&t).matmul(&z.adjoint()).max_abs_diff(&a) < 1e-13);
    }

    #[test]
    fn random_nonhermitian_residuals() {
        for seed in 0..20 {
            let a = pseudo_random(10, seed);
            let e = eig(&a).unwrap();
            assert_eq!(e.len(), 10);
            for r in &e.residual_norms {
                assert!(*r <= 1e-12 * a.norm_fro(), "seed {seed}: residual {r:e}");
            }
        }
    }

    #[test]
    fn jordan_block_is_flagged_not_rejected() {
        let j = ComplexMatrix::from_real_rows(&[[2.0, 1.0, 0.0], [0.0, 2.0, 1.0], [0.0, 0.0, 2.0]]).unwrap();
        let e = eig(&j).unwrap();
        for z in &e.eigenvalues {
            assert!((z - c(2.0, 0.0)).norm() < 1e-5);
        }
        assert!(e.eigenvector_condition > 1e8, "condition {:e}", e.eigenvector_condition);
    }

    #[test]
    fn zero_matrix_has_identity_eigenvectors() {
        let e = eig(&ComplexMatrix::zeros(4, 4)).unwrap();
        assert!(e.eigenvalues.iter().all(|z| *z == ZERO));
        assert_eq!(e.right_eigenvectors, ComplexMatrix::identity(4));
        assert_eq!(e.eigenvector_condition, 1.0);
    }

    #[test]
    fn companion_matrix_roots() {
        // x^3 - 6x^2 + 11x - 6 = (x-1)(x-2)(x-3)
        let m = ComplexMatrix::from_real_rows(&[[6.0, -11.0, 6.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]).unwrap();
        let vals = eig(&m).unwrap().sorted_eigenvalues();
        for (k, z) in vals.iter().enumerate() {
            assert!((z - c(k as f64 + 1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn rotation_has_conjugate_pair() {
        let m = ComplexMatrix::from_real_rows(&[[0.0, -1.0], [1.0, 0.0]]).unwrap();
        let vals = eig(&m).unwrap().sorted_eigenvalues();
        assert!((vals[0] - c(0.0, -1.0)).norm() < 1e-15);
        assert!((vals[1] - c(0.0, 1.0)).norm() < 1e-15);
    }
}
