//! Statistical operators: Hermitian, positive semidefinite, unit trace.

use ndarray::{Array1, Array2};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eigh_real, hermiticity_defect};
use crate::scaffold::observable::check_index_window;
use crate::scaffold::HfSpectrum;

pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-12;

/// The statistical operator Pi describing the initial distribution over
/// Hilbert space, stored in the scaffold basis.
#[derive(Debug, Clone)]
pub struct StatOperator {
    matrix: Array2<f64>,
    kind: StatOperatorKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatOperatorKind {
    PureHf,
    WindowUniform,
    BoltzmannDiagonal,
    RandomPsdWindow,
    CrossWindowPure,
    /// User-supplied matrix, e.g. mixtures of the built-in kinds.
    Custom,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StatOperatorSpec {
    /// A single scaffold state: Pi_mn = delta_m,idx delta_n,idx.
    PureHf { index: usize },
    /// (1/n) x projector onto the levels with indices in [lo, hi).
    WindowUniform { lo: usize, hi: usize },
    /// Diagonal Boltzmann weights exp(-beta E_m), normalized.
    BoltzmannDiagonal { beta: f64 },
    /// X X^T over a window (X an n x rank standard normal), trace-normalized.
    RandomPsdWindow { lo: usize, hi: usize, rank: usize },
    /// Rank-1 projector onto a coherent superposition spanning the two index
    /// windows, with total weight `first_weight` on the first. The windows
    /// must be disjoint or identical (identical windows give a single-window
    /// coherent state).
    CrossWindowPure {
        first_lo: usize,
        first_hi: usize,
        second_lo: usize,
        second_hi: usize,
        first_weight: f64,
    },
}

pub fn build_stat_operator(
    spec: &StatOperatorSpec,
    spectrum: &HfSpectrum,
    seed: u64,
) -> Result<StatOperator> {
    let n = spectrum.len();
    let (matrix, kind) = match spec {
        StatOperatorSpec::PureHf { index } => {
            if *index >= n {
                return Err(Error::Range(format!("pure_hf index {index} >= {n} levels")));
            }
            let mut m = Array2::zeros((n, n));
            m[[*index, *index]] = 1.0;
            (m, StatOperatorKind::PureHf)
        }
        StatOperatorSpec::WindowUniform { lo, hi } => {
            check_index_window(n, *lo, *hi)?;
            let w = 1.0 / (*hi - *lo) as f64;
            let mut m = Array2::zeros((n, n));
            for k in *lo..*hi {
                m[[k, k]] = w;
            }
            (m, StatOperatorKind::WindowUniform)
        }
        StatOperatorSpec::BoltzmannDiagonal { beta } => {
            if !beta.is_finite() {
                return Err(Error::Parameter(format!("beta must be finite, got {beta}")));
            }
            let e0 = spectrum.level(0);
            let weights: Vec<f64> = spectrum
                .levels()
                .iter()
                .map(|&e| (-beta * (e - e0)).exp())
                .collect();
            let z: f64 = weights.iter().sum();
            if !(z > 0.0) || !z.is_finite() {
                return Err(Error::Parameter(format!(
                    "Boltzmann weights not normalizable (Z = {z})"
                )));
            }
            let mut m = Array2::zeros((n, n));
            for (k, w) in weights.iter().enumerate() {
                m[[k, k]] = w / z;
            }
            (m, StatOperatorKind::BoltzmannDiagonal)
        }
        StatOperatorSpec::RandomPsdWindow { lo, hi, rank } => {
            check_index_window(n, *lo, *hi)?;
            let nw = *hi - *lo;
            let r = (*rank).clamp(1, nw);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut x = Array2::<f64>::zeros((nw, r));
            for v in x.iter_mut() {
                *v = rng.sample(StandardNormal);
            }
            let block = x.dot(&x.t());
            let trace: f64 = block.diag().sum();
            if !(trace > 0.0) {
                return Err(Error::DegenerateInput("random PSD draw has zero trace".into()));
            }
            let mut m = Array2::zeros((n, n));
            for i in 0..nw {
                for j in 0..nw {
                    m[[lo + i, lo + j]] = block[[i, j]] / trace;
                }
            }
            (m, StatOperatorKind::RandomPsdWindow)
        }
        StatOperatorSpec::CrossWindowPure { first_lo, first_hi, second_lo, second_hi, first_weight } => {
            check_index_window(n, *first_lo, *first_hi)?;
            check_index_window(n, *second_lo, *second_hi)?;
            if !(0.0..=1.0).contains(first_weight) {
                return Err(Error::Parameter(format!(
                    "first_weight must lie in [0, 1], got {first_weight}"
                )));
            }
            let identical = first_lo == second_lo && first_hi == second_hi;
            let disjoint = *first_hi <= *second_lo || *second_hi <= *first_lo;
            if !identical && !disjoint {
                return Err(Error::Range(
                    "cross-window ranges must be disjoint or identical".into(),
                ));
            }
            let mut psi = Array1::<f64>::zeros(n);
            if identical {
                let amp = (1.0 / (*first_hi - *first_lo) as f64).sqrt();
                for k in *first_lo..*first_hi {
                    psi[k] = amp;
                }
            } else {
                let amp1 = (first_weight / (*first_hi - *first_lo) as f64).sqrt();
                let amp2 = ((1.0 - first_weight) / (*second_hi - *second_lo) as f64).sqrt();
                for k in *first_lo..*first_hi {
                    psi[k] = amp1;
                }
                for k in *second_lo..*second_hi {
                    psi[k] = amp2;
                }
            }
            let mut m = Array2::zeros((n, n));
            for i in 0..n {
                if psi[i] == 0.0 {
                    continue;
                }
                for j in 0..n {
                    m[[i, j]] = psi[i] * psi[j];
                }
            }
            (m, StatOperatorKind::CrossWindowPure)
        }
    };
    let op = StatOperator { matrix, kind };
    op.validate()?;
    Ok(op)
}

impl StatOperator {
    /// Wrap an explicit matrix, checking symmetry, trace, and positive
    /// semidefiniteness.
    pub fn from_matrix(matrix: Array2<f64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::Shape(format!(
                "statistical operator must be square, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let op = Self { matrix, kind: StatOperatorKind::Custom };
        op.validate_psd()?;
        Ok(op)
    }

    /// Convex mixture of window-uniform states over disjoint index windows.
    pub fn window_mixture(
        spectrum: &HfSpectrum,
        parts: &[(std::ops::Range<usize>, f64)],
    ) -> Result<Self> {
        let n = spectrum.len();
        let total: f64 = parts.iter().map(|(_, w)| *w).sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Parameter(format!("mixture weights sum to {total}, need 1")));
        }
        let mut m = Array2::zeros((n, n));
        for (range, w) in parts {
            check_index_window(n, range.start, range.end)?;
            if !(*w >= 0.0) {
                return Err(Error::Parameter(format!("negative mixture weight {w}")));
            }
            let per = w / range.len() as f64;
            for k in range.clone() {
                m[[k, k]] += per;
            }
        }
        Ok(Self { matrix: m, kind: StatOperatorKind::Custom })
    }

    pub fn matrix(&self) -> &Array2<f64> {
        &self.matrix
    }

    pub fn kind(&self) -> StatOperatorKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        self.matrix.diag().to_vec()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diag().sum()
    }

    /// Cheap structural checks: symmetry and unit trace.
    pub fn validate(&self) -> Result<()> {
        let defect = hermiticity_defect(&self.matrix);
        if defect > 1e-12 {
            return Err(Error::Numeric(format!(
                "statistical operator not Hermitian: defect {defect:.3e}"
            )));
        }
        let trace = self.trace();
        if (trace - 1.0).abs() > TRACE_TOL * self.dim() as f64 {
            return Err(Error::Numeric(format!(
                "statistical operator trace {trace} != 1"
            )));
        }
        Ok(())
    }

    /// Full spectral check: all eigenvalues in [-tol, 1 + tol].
    pub fn validate_psd(&self) -> Result<()> {
        self.validate()?;
        let (w, _) = eigh_real(&self.matrix)?;
        let lo = w[0];
        let hi = w[w.len() - 1];
        if lo < -PSD_TOL {
            return Err(Error::Numeric(format!(
                "statistical operator has negative eigenvalue {lo:.3e}"
            )));
        }
        if hi > 1.0 + PSD_TOL {
            return Err(Error::Numeric(format!(
                "statistical operator has eigenvalue {hi} > 1"
            )));
        }
        Ok(())
    }
}
