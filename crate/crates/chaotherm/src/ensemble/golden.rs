//! Golden-rule estimate of the correlation width.

use crate::ensemble::ResidualMatrix;
use crate::error::{Error, Result};
use crate::scaffold::HfSpectrum;

/// Spreading-width estimate delta = 2 pi <V^2_{mn}> rho(E) at the spectrum
/// center.
///
/// The mean square runs over *all* off-diagonal positions of the selected
/// rows, zeros included. Counting zeros is what makes the estimate scale
/// correctly: doubling the density dilutes the nonzero entries by the same
/// factor, and the product <V^2> rho stays put.
pub fn golden_rule_width(spectrum: &HfSpectrum, v: &ResidualMatrix) -> Result<f64> {
    let n = spectrum.len();
    if v.dim() != n {
        return Err(Error::Shape(format!(
            "residual dimension {} vs spectrum {}",
            v.dim(),
            n
        )));
    }
    if n < 10 {
        return Err(Error::InsufficientData(format!(
            "golden rule averaging window needs at least 10 rows, spectrum has {n}"
        )));
    }
    // centered window of at least 100 rows (all rows when the matrix is
    // smaller than that)
    let want = 100.max(n / 5).min(n);
    let start = (n - want) / 2;
    let rows = start..start + want;

    let mut sum_sq = 0.0f64;
    let mut count = 0usize;
    for m in rows {
        for j in 0..n {
            if j == m {
                continue;
            }
            sum_sq += v.abs_sq(m, j);
            count += 1;
        }
    }
    let mean_sq = sum_sq / count as f64;
    let rho = spectrum.density().eval(spectrum.center_energy());
    Ok(2.0 * std::f64::consts::PI * mean_sq * rho)
}
