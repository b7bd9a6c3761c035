//! Dense linear algebra kernels used by the ensemble and evolution machinery.
//!
//! Eigendecompositions go through LAPACK's divide-and-conquer routines
//! (`dsyevd` / `zheevd`), which are several times faster than the QR-based
//! `*syev` path at the N ~ 10^3 sizes this crate lives at. The wrappers are
//! checked in the test suite against `ndarray_linalg::Eigh` so the two
//! routes guard each other.

mod tridiag;

pub use tridiag::symmetric_tridiagonal_eigenvalues;

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use std::os::raw::c_char;

use crate::error::{Error, Result};

extern "C" {
    fn dsyevd_(
        jobz: *const c_char,
        uplo: *const c_char,
        n: *const i32,
        a: *mut f64,
        lda: *const i32,
        w: *mut f64,
        work: *mut f64,
        lwork: *const i32,
        iwork: *mut i32,
        liwork: *const i32,
        info: *mut i32,
    );
    fn zheevd_(
        jobz: *const c_char,
        uplo: *const c_char,
        n: *const i32,
        a: *mut Complex64,
        lda: *const i32,
        w: *mut f64,
        work: *mut Complex64,
        lwork: *const i32,
        rwork: *mut f64,
        lrwork: *const i32,
        iwork: *mut i32,
        liwork: *const i32,
        info: *mut i32,
    );
}

/// Eigendecomposition of a real symmetric matrix.
///
/// Returns eigenvalues ascending and the matrix whose *columns* are the
/// corresponding orthonormal eigenvectors.
pub fn eigh_real(a: &Array2<f64>) -> Result<(Array1<f64>, Array2<f64>)> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::Shape(format!("eigh_real: {}x{}", a.nrows(), a.ncols())));
    }
    if n == 0 {
        return Err(Error::EmptySpectrum("eigh_real on 0x0 matrix".into()));
    }
    // LAPACK is column-major; a symmetric matrix is its own transpose, so the
    // row-major buffer can be handed over as-is.
    let mut buf: Vec<f64> = a.iter().copied().collect();
    let nn = n as i32;
    let mut w = vec![0.0f64; n];
    let mut info = 0i32;
    let (jobz, uplo) = (b'V' as c_char, b'L' as c_char);
    unsafe {
        let mut work_q = [0.0f64; 1];
        let mut iwork_q = [0i32; 1];
        dsyevd_(
            &jobz, &uplo, &nn, buf.as_mut_ptr(), &nn, w.as_mut_ptr(),
            work_q.as_mut_ptr(), &-1, iwork_q.as_mut_ptr(), &-1, &mut info,
        );
        let lwork = work_q[0] as i32;
        let liwork = iwork_q[0];
        let mut work = vec![0.0f64; lwork.max(1) as usize];
        let mut iwork = vec![0i32; liwork.max(1) as usize];
        dsyevd_(
            &jobz, &uplo, &nn, buf.as_mut_ptr(), &nn, w.as_mut_ptr(),
            work.as_mut_ptr(), &lwork, iwork.as_mut_ptr(), &liwork, &mut info,
        );
    }
    if info != 0 {
        return Err(Error::Numeric(format!(
            "dsyevd failed with info={info} (n={n}, max|a|={:.3e})",
            a.iter().fold(0.0f64, |m, x| m.max(x.abs()))
        )));
    }
    // Column-major output read as row-major puts eigenvector k in row k;
    // transpose so that columns are eigenvectors.
    let rows = Array2::from_shape_vec((n, n), buf).expect("shape checked above");
    Ok((Array1::from(w), rows.reversed_axes().as_standard_layout().to_owned()))
}

/// Eigendecomposition of a complex Hermitian matrix.
///
/// Returns eigenvalues ascending and the matrix whose *columns* are the
/// corresponding orthonormal eigenvectors.
pub fn eigh_complex(a: &Array2<Complex64>) -> Result<(Array1<f64>, Array2<Complex64>)> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::Shape(format!("eigh_complex: {}x{}", a.nrows(), a.ncols())));
    }
    if n == 0 {
        return Err(Error::EmptySpectrum("eigh_complex on 0x0 matrix".into()));
    }
    // Handing the row-major buffer to LAPACK presents H^T = conj(H). Its
    // eigenvectors are the conjugates of those of H, which is undone below.
    let mut buf: Vec<Complex64> = a.iter().copied().collect();
    let nn = n as i32;
    let mut w = vec![0.0f64; n];
    let mut info = 0i32;
    let (jobz, uplo) = (b'V' as c_char, b'L' as c_char);
    unsafe {
        let mut work_q = [Complex64::new(0.0, 0.0); 1];
        let mut rwork_q = [0.0f64; 1];
        let mut iwork_q = [0i32; 1];
        zheevd_(
            &jobz, &uplo, &nn, buf.as_mut_ptr(), &nn, w.as_mut_ptr(),
            work_q.as_mut_ptr(), &-1, rwork_q.as_mut_ptr(), &-1,
            iwork_q.as_mut_ptr(), &-1, &mut info,
        );
        let lwork = work_q[0].re as i32;
        let lrwork = rwork_q[0] as i32;
        let liwork = iwork_q[0];
        let mut work = vec![Complex64::new(0.0, 0.0); lwork.max(1) as usize];
        let mut rwork = vec![0.0f64; lrwork.max(1) as usize];
        let mut iwork = vec![0i32; liwork.max(1) as usize];
        zheevd_(
            &jobz, &uplo, &nn, buf.as_mut_ptr(), &nn, w.as_mut_ptr(),
            work.as_mut_ptr(), &lwork, rwork.as_mut_ptr(), &lrwork,
            iwork.as_mut_ptr(), &liwork, &mut info,
        );
    }
    if info != 0 {
        return Err(Error::Numeric(format!("zheevd failed with info={info} (n={n})")));
    }
    // Row k of the row-major view is an eigenvector of conj(H); conjugating
    // and transposing yields eigenvectors of H in the columns.
    let mut v = Array2::<Complex64>::zeros((n, n));
    for k in 0..n {
        for m in 0..n {
            v[[m, k]] = buf[k * n + m].conj();
        }
    }
    Ok((Array1::from(w), v))
}

/// Nearest orthogonal matrix to `x` in Frobenius norm: the symmetric polar
/// factor x (x^T x)^{-1/2}.
pub fn polar_orthonormalize_real(x: &Array2<f64>) -> Result<Array2<f64>> {
    let s = x.t().dot(x);
    let (w, q) = eigh_real(&s)?;
    let wmax = w[w.len() - 1];
    if !(wmax > 0.0) || w[0] <= wmax * 1e-14 {
        return Err(Error::DegenerateInput(format!(
            "polar factor undefined: singular value range [{:.3e}, {:.3e}]",
            w[0].max(0.0).sqrt(),
            wmax.max(0.0).sqrt()
        )));
    }
    let mut q_scaled = q.clone();
    for (k, col) in q_scaled.columns_mut().into_iter().enumerate() {
        let inv = 1.0 / w[k].sqrt();
        for v in col {
            *v *= inv;
        }
    }
    let inv_sqrt = q_scaled.dot(&q.t());
    Ok(x.dot(&inv_sqrt))
}

/// Nearest unitary matrix to `x`: the polar factor x (x^H x)^{-1/2}.
pub fn polar_orthonormalize_complex(x: &Array2<Complex64>) -> Result<Array2<Complex64>> {
    let xh = conjugate_transpose(x);
    let s = xh.dot(x);
    let (w, q) = eigh_complex(&s)?;
    let wmax = w[w.len() - 1];
    if !(wmax > 0.0) || w[0] <= wmax * 1e-14 {
        return Err(Error::DegenerateInput(format!(
            "polar factor undefined: singular value range [{:.3e}, {:.3e}]",
            w[0].max(0.0).sqrt(),
            wmax.max(0.0).sqrt()
        )));
    }
    let mut q_scaled = q.clone();
    for (k, col) in q_scaled.columns_mut().into_iter().enumerate() {
        let inv = Complex64::new(1.0 / w[k].sqrt(), 0.0);
        for v in col {
            *v *= inv;
        }
    }
    let qh = conjugate_transpose(&q);
    let inv_sqrt = q_scaled.dot(&qh);
    Ok(x.dot(&inv_sqrt))
}

pub fn conjugate_transpose(a: &Array2<Complex64>) -> Array2<Complex64> {
    a.t().mapv(|z| z.conj())
}

pub fn to_complex(a: &Array2<f64>) -> Array2<Complex64> {
    a.mapv(|x| Complex64::new(x, 0.0))
}

/// max |(M^H M - I)_{ij}|, the orthonormality residual of a transform.
pub fn orthogonality_residual_real(o: &Array2<f64>) -> f64 {
    let g = o.t().dot(o);
    let n = g.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g[[i, j]] - target).abs());
        }
    }
    worst
}

pub fn orthogonality_residual_complex(u: &Array2<Complex64>) -> f64 {
    let g = conjugate_transpose(u).dot(u);
    let n = g.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            worst = worst.max((g[[i, j]] - target).norm());
        }
    }
    worst
}

/// Entrywise max |a_ij - conj(a_ji)|, i.e. the Hermiticity defect.
pub fn hermiticity_defect(a: &Array2<f64>) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((a[[i, j]] - a[[j, i]]).abs());
        }
    }
    worst
}

pub fn hermiticity_defect_complex(a: &Array2<Complex64>) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((a[[i, j]] - a[[j, i]].conj()).norm());
        }
    }
    worst
}

/// Sum with a fixed pairwise reduction tree.
///
/// Used wherever Monte Carlo results are reduced, so that accumulated values
/// are bit-identical for any worker count once the inputs are collected in
/// realization order.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 32 {
        let mut acc = 0.0;
        for &x in xs {
            acc += x;
        }
        return acc;
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

pub fn pairwise_mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    pairwise_sum(xs) / xs.len() as f64
}

/// Two-pass sample standard error of the mean, with the same fixed reduction
/// order as [`pairwise_sum`]. Returns 0 for fewer than two samples.
pub fn pairwise_stderr(xs: &[f64]) -> f64 {
    let n = xs.len();
    if n < 2 {
        return 0.0;
    }
    let mean = pairwise_mean(xs);
    let sq: Vec<f64> = xs.iter().map(|&x| (x - mean) * (x - mean)).collect();
    let var = pairwise_sum(&sq) / (n as f64 - 1.0);
    (var / n as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray_linalg::{Eigh, UPLO};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn random_symmetric(n: usize, seed: u64) -> Array2<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut a = Array2::<f64>::zeros((n, n));
        for i in 0..n {
            for j in i..n {
                let x: f64 = rng.sample(StandardNormal);
                a[[i, j]] = x;
                a[[j, i]] = x;
            }
        }
        a
    }

    fn random_hermitian(n: usize, seed: u64) -> Array2<Complex64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut a = Array2::<Complex64>::zeros((n, n));
        for i in 0..n {
            for j in i..n {
                let re: f64 = rng.sample(StandardNormal);
                if i == j {
                    a[[i, i]] = Complex64::new(re, 0.0);
                } else {
                    let im: f64 = rng.sample(StandardNormal);
                    a[[i, j]] = Complex64::new(re, im);
                    a[[j, i]] = Complex64::new(re, -im);
                }
            }
        }
        a
    }

    #[test]
    fn eigh_real_agrees_with_reference_route() {
        let a = random_symmetric(40, 1);
        let (w, v) = eigh_real(&a).unwrap();
        let (w_ref, _) = a.eigh(UPLO::Lower).unwrap();
        for (x, y) in w.iter().zip(w_ref.iter()) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-10);
        }
        // reconstruction
        let lam = Array2::from_diag(&w);
        let rec = v.dot(&lam).dot(&v.t());
        for (x, y) in rec.iter().zip(a.iter()) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-10);
        }
        assert!(orthogonality_residual_real(&v) < 1e-12);
    }

    #[test]
    fn eigh_complex_agrees_with_reference_route() {
        let a = random_hermitian(40, 2);
        let (w, v) = eigh_complex(&a).unwrap();
        let (w_ref, _) = a.eigh(UPLO::Lower).unwrap();
        for (x, y) in w.iter().zip(w_ref.iter()) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-10);
        }
        let lam = Array2::from_diag(&w.mapv(|x| Complex64::new(x, 0.0)));
        let rec = v.dot(&lam).dot(&conjugate_transpose(&v));
        for (x, y) in rec.iter().zip(a.iter()) {
            assert!((x - y).norm() < 1e-10);
        }
        assert!(orthogonality_residual_complex(&v) < 1e-12);
    }

    #[test]
    fn eigh_eigenvalues_sorted_ascending() {
        let a = random_symmetric(25, 3);
        let (w, _) = eigh_real(&a).unwrap();
        for k in 1..w.len() {
            assert!(w[k] >= w[k - 1]);
        }
    }

    #[test]
    fn polar_factor_is_orthogonal_and_near_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let n = 60;
        // near-orthogonal input: identity plus noise
        let mut x = Array2::<f64>::eye(n);
        for v in x.iter_mut() {
            let e: f64 = rng.sample(StandardNormal);
            *v += 0.05 * e;
        }
        let o = polar_orthonormalize_real(&x).unwrap();
        assert!(orthogonality_residual_real(&o) < 1e-11);
        // the polar factor stays close to a near-orthogonal input
        let diff = (&o - &x).iter().map(|v| v.abs()).fold(0.0f64, f64::max);
        assert!(diff < 0.2, "polar factor strayed: {diff}");
    }

    #[test]
    fn polar_factor_complex_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 40;
        let mut x = Array2::<Complex64>::eye(n);
        for v in x.iter_mut() {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            *v += Complex64::new(0.05 * re, 0.05 * im);
        }
        let u = polar_orthonormalize_complex(&x).unwrap();
        assert!(orthogonality_residual_complex(&u) < 1e-11);
    }

    #[test]
    fn polar_factor_rejects_rank_deficient_input() {
        let x = Array2::<f64>::zeros((8, 8));
        assert!(polar_orthonormalize_real(&x).is_err());
    }

    #[test]
    fn pairwise_sum_matches_sequential() {
        let xs: Vec<f64> = (0..1000).map(|i| (i as f64).sin()).collect();
        let seq: f64 = xs.iter().sum();
        assert_abs_diff_eq!(pairwise_sum(&xs), seq, epsilon = 1e-9);
    }

    #[test]
    fn stderr_of_constant_sequence_is_zero() {
        let xs = vec![2.5; 64];
        assert_eq!(pairwise_stderr(&xs), 0.0);
    }
}
