//! Sparse banded residual interactions.

use ndarray::Array2;
use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::ensemble::Symmetry;
use crate::error::{Error, Result};
use crate::scaffold::HfSpectrum;

/// Band structure and strength of the residual interaction V.
///
/// One- and two-body selection rules are modeled through bandedness and
/// sparsity alone: entries live within `band_halfwidth` of the diagonal and
/// each in-band position is occupied independently with probability
/// `fill_probability`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ResidualSpec {
    /// band half-width b, in index units
    pub band_halfwidth: usize,
    /// probability that an in-band entry is nonzero
    pub fill_probability: f64,
    /// rms of a nonzero entry
    pub rms_strength: f64,
    pub symmetry: Symmetry,
}

impl ResidualSpec {
    pub fn validate(&self) -> Result<()> {
        if self.band_halfwidth < 1 {
            return Err(Error::Parameter("band_halfwidth must be >= 1".into()));
        }
        if !(self.fill_probability > 0.0 && self.fill_probability <= 1.0) {
            return Err(Error::Parameter(format!(
                "fill_probability must lie in (0, 1], got {}",
                self.fill_probability
            )));
        }
        if !(self.rms_strength >= 0.0) {
            return Err(Error::Parameter(format!(
                "rms_strength must be >= 0, got {}",
                self.rms_strength
            )));
        }
        Ok(())
    }
}

/// A dense-stored Hermitian matrix in either symmetry class.
#[derive(Debug, Clone)]
pub enum ResidualMatrix {
    Real(Array2<f64>),
    Complex(Array2<Complex64>),
}

impl ResidualMatrix {
    pub fn dim(&self) -> usize {
        match self {
            ResidualMatrix::Real(m) => m.nrows(),
            ResidualMatrix::Complex(m) => m.nrows(),
        }
    }

    pub fn symmetry(&self) -> Symmetry {
        match self {
            ResidualMatrix::Real(_) => Symmetry::Orthogonal,
            ResidualMatrix::Complex(_) => Symmetry::Unitary,
        }
    }

    pub fn abs_sq(&self, i: usize, j: usize) -> f64 {
        match self {
            ResidualMatrix::Real(m) => m[[i, j]] * m[[i, j]],
            ResidualMatrix::Complex(m) => m[[i, j]].norm_sqr(),
        }
    }

    pub fn zeros(n: usize, symmetry: Symmetry) -> Self {
        match symmetry {
            Symmetry::Orthogonal => ResidualMatrix::Real(Array2::zeros((n, n))),
            Symmetry::Unitary => ResidualMatrix::Complex(Array2::zeros((n, n))),
        }
    }
}

/// Draw one residual interaction matrix.
///
/// Off-diagonal in-band entries are zero-centered with rms `v`: real
/// Gaussians in the orthogonal class, complex Gaussians with independent
/// real and imaginary parts in the unitary class. The diagonal stays zero;
/// diagonal fluctuations belong to the scaffold.
pub fn sample_residual(
    spectrum: &HfSpectrum,
    spec: &ResidualSpec,
    seed: u64,
) -> Result<ResidualMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_residual_with(spectrum, spec, &mut rng)
}

pub(crate) fn sample_residual_with(
    spectrum: &HfSpectrum,
    spec: &ResidualSpec,
    rng: &mut ChaCha8Rng,
) -> Result<ResidualMatrix> {
    spec.validate()?;
    let n = spectrum.len();
    let b = if spec.band_halfwidth >= n {
        log::info!(
            "band_halfwidth {} >= dimension {}; residual degenerates to a full matrix",
            spec.band_halfwidth,
            n
        );
        n.saturating_sub(1).max(1)
    } else {
        spec.band_halfwidth
    };
    let v = spec.rms_strength;
    match spec.symmetry {
        Symmetry::Orthogonal => {
            let mut m = Array2::<f64>::zeros((n, n));
            for i in 0..n {
                let j_hi = (i + b).min(n - 1);
                for j in (i + 1)..=j_hi {
                    if rng.random::<f64>() < spec.fill_probability {
                        let x: f64 = rng.sample(StandardNormal);
                        m[[i, j]] = v * x;
                        m[[j, i]] = v * x;
                    }
                }
            }
            Ok(ResidualMatrix::Real(m))
        }
        Symmetry::Unitary => {
            let comp = v / 2.0f64.sqrt();
            let mut m = Array2::<Complex64>::zeros((n, n));
            for i in 0..n {
                let j_hi = (i + b).min(n - 1);
                for j in (i + 1)..=j_hi {
                    if rng.random::<f64>() < spec.fill_probability {
                        let re: f64 = rng.sample(StandardNormal);
                        let im: f64 = rng.sample(StandardNormal);
                        let z = Complex64::new(comp * re, comp * im);
                        m[[i, j]] = z;
                        m[[j, i]] = z.conj();
                    }
                }
            }
            Ok(ResidualMatrix::Complex(m))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scaffold::{build_hf_spectrum, DensityModel};

    fn spectrum(n: usize) -> HfSpectrum {
        build_hf_spectrum(DensityModel::Constant { rho0: 1.0 }, n, 31).unwrap()
    }

    fn spec(b: usize, f: f64, v: f64, symmetry: Symmetry) -> ResidualSpec {
        ResidualSpec { band_halfwidth: b, fill_probability: f, rms_strength: v, symmetry }
    }

    #[test]
    fn zero_strength_gives_zero_matrix() {
        let s = spectrum(30);
        match sample_residual(&s, &spec(5, 1.0, 0.0, Symmetry::Orthogonal), 1).unwrap() {
            ResidualMatrix::Real(m) => assert!(m.iter().all(|&x| x == 0.0)),
            _ => panic!("expected real matrix"),
        }
    }

    #[test]
    fn full_fill_full_band_statistics() {
        // sample-statistics oracle: f = 1, b = N-1, N = 100 gives in-band
        // fill 1 and rms within 15% of v
        let n = 100;
        let s = spectrum(n);
        let v = 0.7;
        let m = match sample_residual(&s, &spec(n - 1, 1.0, v, Symmetry::Orthogonal), 2).unwrap() {
            ResidualMatrix::Real(m) => m,
            _ => panic!(),
        };
        let mut nonzero = 0usize;
        let mut sum_sq = 0.0;
        let mut count = 0usize;
        for i in 0..n {
            for j in (i + 1)..n {
                count += 1;
                if m[[i, j]] != 0.0 {
                    nonzero += 1;
                }
                sum_sq += m[[i, j]] * m[[i, j]];
            }
        }
        assert_eq!(nonzero, count, "fill must be exactly 1 at f = 1");
        let rms = (sum_sq / count as f64).sqrt();
        assert!((rms - v).abs() / v < 0.15, "rms {rms} vs strength {v}");
    }

    #[test]
    fn orthogonal_class_is_exactly_real_symmetric() {
        let s = spectrum(40);
        match sample_residual(&s, &spec(6, 0.5, 1.0, Symmetry::Orthogonal), 3).unwrap() {
            ResidualMatrix::Real(m) => {
                for i in 0..40 {
                    assert_eq!(m[[i, i]], 0.0);
                    for j in 0..40 {
                        assert_eq!(m[[i, j]], m[[j, i]]);
                    }
                }
            }
            _ => panic!("expected real matrix"),
        }
    }

    #[test]
    fn unitary_class_is_hermitian_with_matching_rms() {
        let n = 120;
        let s = spectrum(n);
        let v = 0.5;
        let m = match sample_residual(&s, &spec(n, 1.0, v, Symmetry::Unitary), 4).unwrap() {
            ResidualMatrix::Complex(m) => m,
            _ => panic!(),
        };
        let mut sum_sq = 0.0;
        let mut count = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                assert_eq!(m[[i, j]], m[[j, i]].conj());
                sum_sq += m[[i, j]].norm_sqr();
                count += 1;
            }
        }
        let rms = (sum_sq / count as f64).sqrt();
        assert!((rms - v).abs() / v < 0.15, "rms {rms} vs strength {v}");
    }

    #[test]
    fn entries_respect_the_band() {
        let n = 50;
        let s = spectrum(n);
        let m = match sample_residual(&s, &spec(4, 1.0, 1.0, Symmetry::Orthogonal), 5).unwrap() {
            ResidualMatrix::Real(m) => m,
            _ => panic!(),
        };
        for i in 0..n {
            for j in 0..n {
                if (i as isize - j as isize).unsigned_abs() > 4 {
                    assert_eq!(m[[i, j]], 0.0);
                }
            }
        }
    }

    #[test]
    fn invalid_fill_rejected() {
        let s = spectrum(10);
        assert!(sample_residual(&s, &spec(2, 0.0, 1.0, Symmetry::Orthogonal), 0).is_err());
        assert!(sample_residual(&s, &spec(2, 1.5, 1.0, Symmetry::Orthogonal), 0).is_err());
    }
}
