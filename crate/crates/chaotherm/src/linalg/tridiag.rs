//! Eigenvalues of a symmetric tridiagonal matrix by the implicit QL method
//! with Wilkinson shifts (EISPACK `imtql1` lineage, eigenvectors omitted).
//!
//! This is the O(n^2) workhorse behind the synthetic eigenvalue sampler: the
//! tridiagonal beta-ensemble models need eigenvalues only, and a full dense
//! solve would dominate the Monte Carlo budget for nothing.

use crate::error::{Error, Result};

/// Eigenvalues (ascending) of the symmetric tridiagonal matrix with diagonal
/// `diag` and subdiagonal `offdiag` (`offdiag.len() == diag.len() - 1`).
pub fn symmetric_tridiagonal_eigenvalues(diag: &[f64], offdiag: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 {
        return Err(Error::EmptySpectrum("tridiagonal of dimension 0".into()));
    }
    if offdiag.len() + 1 != n {
        return Err(Error::Shape(format!(
            "tridiagonal: diag len {} vs offdiag len {}",
            n,
            offdiag.len()
        )));
    }
    let mut d = diag.to_vec();
    // e is padded so that e[m] = 0 can be written for m = n-1
    let mut e = vec![0.0f64; n];
    e[..n - 1].copy_from_slice(offdiag);

    for l in 0..n {
        let mut iter = 0;
        loop {
            // locate a negligible subdiagonal element to split the problem
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::Numeric(format!(
                    "tridiagonal QL failed to converge at index {l} after {iter} sweeps"
                )));
            }
            // Wilkinson shift
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0f64;
            let mut c = 1.0f64;
            let mut p = 0.0f64;
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // rotation annihilated; deflate and restart this l
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
    Ok(d)
}
