//! Hamiltonian realizations along two routes: microscopic (scaffold plus
//! banded residual, then diagonalize) and synthetic (eigenvalues and
//! enveloped eigenvectors sampled directly), in both symmetry classes.
//!
//! Realization sampling is a pure function of (inputs, seed). Independent
//! realizations derive their generator from a master seed plus realization
//! index through separate ChaCha streams, so ensembles are reproducible for
//! any worker count.

mod envelope;
mod golden;
mod realization;
mod residual;
mod synthetic;

pub use envelope::{EnvelopeF, EnvelopeKind};
pub use golden::golden_rule_width;
pub use realization::{diagonalize, Origin, Realization, Transform, ORTHOGONALITY_TOL};
pub use residual::{sample_residual, ResidualMatrix, ResidualSpec};
pub use synthetic::{
    mean_positions, sample_beta_eigenvalues, sample_stitched_levels, sample_synthetic,
    sample_unfolded_rm_levels,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::scaffold::HfSpectrum;

/// Random-matrix symmetry class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    /// Time-reversal invariant (GOE statistics, real orthogonal transforms).
    Orthogonal,
    /// Time-reversal non-invariant (GUE statistics, complex unitary
    /// transforms).
    Unitary,
}

/// How realizations are produced.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EnsembleKind {
    /// H = H_hf + V with V drawn fresh per realization.
    Microscopic { residual: ResidualSpec },
    /// Eigenvalues and enveloped transforms sampled directly.
    Synthetic { envelope: EnvelopeF, symmetry: Symmetry },
}

impl EnsembleKind {
    pub fn symmetry(&self) -> Symmetry {
        match self {
            EnsembleKind::Microscopic { residual } => residual.symmetry,
            EnsembleKind::Synthetic { symmetry, .. } => *symmetry,
        }
    }
}

/// Deterministic source of independent realizations.
///
/// Realization `index` uses ChaCha stream `index` of the master seed, so
/// any subset of realizations can be regenerated in isolation and parallel
/// schedules cannot perturb the ensemble.
#[derive(Debug, Clone)]
pub struct EnsembleSampler<'a> {
    pub spectrum: &'a HfSpectrum,
    pub kind: EnsembleKind,
    pub master_seed: u64,
}

impl<'a> EnsembleSampler<'a> {
    pub fn new(spectrum: &'a HfSpectrum, kind: EnsembleKind, master_seed: u64) -> Self {
        Self { spectrum, kind, master_seed }
    }

    pub fn sample(&self, index: u64) -> Result<Realization> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(index);
        match &self.kind {
            EnsembleKind::Microscopic { residual } => {
                let v = residual::sample_residual_with(self.spectrum, residual, &mut rng)?;
                diagonalize(self.spectrum, &v)
            }
            EnsembleKind::Synthetic { envelope, symmetry } => {
                synthetic::sample_synthetic_with(self.spectrum, envelope, *symmetry, &mut rng)
            }
        }
    }
}
