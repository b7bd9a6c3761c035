//! Observables in the scaffold basis.

use ndarray::Array2;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::hermiticity_defect;
use crate::scaffold::HfSpectrum;

pub const HERMITICITY_TOL: f64 = 1e-12;

/// A Hermitian observable, stored in the scaffold (mean-field) basis.
///
/// All built-in kinds produce real symmetric matrices, which are Hermitian
/// in both symmetry classes.
#[derive(Debug, Clone)]
pub struct Observable {
    matrix: Array2<f64>,
    kind: ObservableKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObservableKind {
    Identity,
    DiagonalProfile,
    WindowProjector,
    BandedRandom,
    /// User-supplied matrix; used e.g. for smooth coherence bands.
    Custom,
}

/// Smooth diagonal profiles a(E) for `DiagonalProfile` observables.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Profile {
    /// a(E) = E
    Energy,
    /// a(E) = offset + slope * (E - center)
    LinearRamp { center: f64, slope: f64, offset: f64 },
    /// a(E) = amplitude * exp(-(E - center)^2 / (2 width^2))
    GaussianBump { center: f64, width: f64, amplitude: f64 },
    /// explicit values per level
    Values(Vec<f64>),
}

impl Profile {
    fn eval(&self, e: f64, index: usize) -> Result<f64> {
        Ok(match self {
            Profile::Energy => e,
            Profile::LinearRamp { center, slope, offset } => offset + slope * (e - center),
            Profile::GaussianBump { center, width, amplitude } => {
                if !(*width > 0.0) {
                    return Err(Error::Parameter("bump width must be > 0".into()));
                }
                amplitude * (-(e - center) * (e - center) / (2.0 * width * width)).exp()
            }
            Profile::Values(v) => *v
                .get(index)
                .ok_or_else(|| Error::Shape(format!("profile values shorter than level index {index}")))?,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ObservableSpec {
    Identity,
    DiagonalProfile { profile: Profile },
    /// Projector onto the levels with indices in [lo, hi).
    WindowProjector { lo: usize, hi: usize },
    /// Random real symmetric band: entries with |m - n| <= halfwidth drawn
    /// i.i.d. N(0, strength^2); the diagonal is included unless disabled.
    BandedRandom { halfwidth: usize, strength: f64, include_diagonal: bool },
}

pub fn build_observable(
    spec: &ObservableSpec,
    spectrum: &HfSpectrum,
    seed: u64,
) -> Result<Observable> {
    let n = spectrum.len();
    let matrix = match spec {
        ObservableSpec::Identity => Array2::eye(n),
        ObservableSpec::DiagonalProfile { profile } => {
            let mut m = Array2::zeros((n, n));
            for (k, &e) in spectrum.levels().iter().enumerate() {
                m[[k, k]] = profile.eval(e, k)?;
            }
            m
        }
        ObservableSpec::WindowProjector { lo, hi } => {
            check_index_window(n, *lo, *hi)?;
            let mut m = Array2::zeros((n, n));
            for k in *lo..*hi {
                m[[k, k]] = 1.0;
            }
            m
        }
        ObservableSpec::BandedRandom { halfwidth, strength, include_diagonal } => {
            if !(*strength >= 0.0) {
                return Err(Error::Parameter("banded_random strength must be >= 0".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut m = Array2::zeros((n, n));
            for i in 0..n {
                let j_hi = (i + halfwidth).min(n - 1);
                for j in i..=j_hi {
                    if i == j && !include_diagonal {
                        continue;
                    }
                    let x: f64 = rng.sample(StandardNormal);
                    m[[i, j]] = strength * x;
                    m[[j, i]] = strength * x;
                }
            }
            m
        }
    };
    let kind = match spec {
        ObservableSpec::Identity => ObservableKind::Identity,
        ObservableSpec::DiagonalProfile { .. } => ObservableKind::DiagonalProfile,
        ObservableSpec::WindowProjector { .. } => ObservableKind::WindowProjector,
        ObservableSpec::BandedRandom { .. } => ObservableKind::BandedRandom,
    };
    Ok(Observable { matrix, kind })
}

impl Observable {
    /// Wrap an explicit real symmetric matrix.
    pub fn from_matrix(matrix: Array2<f64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::Shape(format!(
                "observable must be square, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let defect = hermiticity_defect(&matrix);
        if defect > HERMITICITY_TOL {
            return Err(Error::Parameter(format!(
                "observable not Hermitian: defect {defect:.3e}"
            )));
        }
        Ok(Self { matrix, kind: ObservableKind::Custom })
    }

    /// A smooth zero-diagonal coherence band:
    /// A_mn = exp(-(E_m - E_n)^2 / (2 w^2)) / (sqrt(2 pi) rho_c w), m != n.
    ///
    /// The normalization makes a fully coherent window state return
    /// Tr(A Pi) close to 1, which gives relaxation runs an O(1) signal to
    /// decay from while Tr_k(A) stays exactly zero.
    pub fn coherence_band(spectrum: &HfSpectrum, bandwidth: f64) -> Result<Self> {
        if !(bandwidth > 0.0) {
            return Err(Error::Parameter(format!("bandwidth must be > 0, got {bandwidth}")));
        }
        let n = spectrum.len();
        let rho_c = spectrum.density().eval(spectrum.center_energy());
        let norm = 1.0 / ((2.0 * std::f64::consts::PI).sqrt() * rho_c * bandwidth);
        // truncate where the Gaussian is numerically zero
        let cutoff = 9.0 * bandwidth;
        let mut m = Array2::zeros((n, n));
        for i in 0..n {
            for j in (i + 1)..n {
                let de = spectrum.level(j) - spectrum.level(i);
                if de > cutoff {
                    break;
                }
                let v = norm * (-de * de / (2.0 * bandwidth * bandwidth)).exp();
                m[[i, j]] = v;
                m[[j, i]] = v;
            }
        }
        Ok(Self { matrix: m, kind: ObservableKind::Custom })
    }

    pub fn matrix(&self) -> &Array2<f64> {
        &self.matrix
    }

    pub fn kind(&self) -> ObservableKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diag().sum()
    }
}

pub(crate) fn check_index_window(n: usize, lo: usize, hi: usize) -> Result<()> {
    if lo >= hi {
        return Err(Error::Range(format!("empty index window [{lo}, {hi})")));
    }
    if hi > n {
        return Err(Error::Range(format!(
            "index window [{lo}, {hi}) exceeds spectrum of {n} levels"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scaffold::{build_hf_spectrum, DensityModel, HfSpectrum};
    use approx::assert_abs_diff_eq;

    fn spectrum(n: usize) -> HfSpectrum {
        build_hf_spectrum(DensityModel::Constant { rho0: 1.0 }, n, 17).unwrap()
    }

    #[test]
    fn identity_is_identity() {
        let s = spectrum(7);
        let a = build_observable(&ObservableSpec::Identity, &s, 0).unwrap();
        assert_eq!(a.matrix(), &Array2::<f64>::eye(7));
        assert_abs_diff_eq!(a.trace(), 7.0);
    }

    #[test]
    fn window_projector_trace_counts_states() {
        let s = spectrum(10);
        let a = build_observable(&ObservableSpec::WindowProjector { lo: 3, hi: 6 }, &s, 0).unwrap();
        assert_abs_diff_eq!(a.trace(), 3.0);
        assert_eq!(a.matrix()[[3, 3]], 1.0);
        assert_eq!(a.matrix()[[2, 2]], 0.0);
    }

    #[test]
    fn window_outside_spectrum_is_range_error() {
        let s = spectrum(5);
        assert!(build_observable(&ObservableSpec::WindowProjector { lo: 3, hi: 9 }, &s, 0).is_err());
        assert!(build_observable(&ObservableSpec::WindowProjector { lo: 4, hi: 4 }, &s, 0).is_err());
    }

    #[test]
    fn diagonal_profile_applies_function() {
        let s = HfSpectrum::from_levels(
            vec![1.0, 2.0, 4.0],
            DensityModel::Constant { rho0: 1.0 },
        )
        .unwrap();
        let a = build_observable(
            &ObservableSpec::DiagonalProfile { profile: Profile::Energy },
            &s,
            0,
        )
        .unwrap();
        assert_eq!(a.matrix().diag().to_vec(), vec![1.0, 2.0, 4.0]);
        assert_eq!(a.matrix()[[0, 1]], 0.0);
    }

    #[test]
    fn banded_random_is_symmetric_and_banded() {
        let s = spectrum(40);
        let a = build_observable(
            &ObservableSpec::BandedRandom { halfwidth: 3, strength: 0.5, include_diagonal: true },
            &s,
            9,
        )
        .unwrap();
        let m = a.matrix();
        assert!(hermiticity_defect(m) == 0.0);
        for i in 0..40 {
            for j in 0..40 {
                if (i as isize - j as isize).unsigned_abs() > 3 {
                    assert_eq!(m[[i, j]], 0.0);
                }
            }
        }
    }

    #[test]
    fn coherence_band_has_zero_diagonal_and_near_unit_coherent_signal() {
        let s = build_hf_spectrum(DensityModel::Constant { rho0: 50.0 }, 1200, 3).unwrap();
        let a = Observable::coherence_band(&s, 1.0).unwrap();
        let m = a.matrix();
        assert_abs_diff_eq!(a.trace(), 0.0);
        // a fully coherent state over a central window sees close to unit
        // expectation; the shortfall is the band mass cut by the window edge
        // plus the excluded diagonal, a few percent for a 10-bandwidth window
        let w = s.index_range(10.0, 20.0);
        let nw = w.len() as f64;
        let mut psi_b_psi = 0.0;
        for i in w.clone() {
            for j in w.clone() {
                psi_b_psi += m[[i, j]];
            }
        }
        psi_b_psi /= nw;
        assert!(
            (0.85..=1.01).contains(&psi_b_psi),
            "coherent-state expectation {psi_b_psi}"
        );
    }

    #[test]
    fn from_matrix_rejects_asymmetric_input() {
        let mut m = Array2::<f64>::eye(3);
        m[[0, 1]] = 0.5;
        assert!(Observable::from_matrix(m).is_err());
    }
}
