//! Energy moments of a statistical operator on the scaffold.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scaffold::{HfSpectrum, StatOperator};

/// Mean energy and energy spread.
///
/// The scaffold variance is Tr(H_hf^2 Pi) - [Tr(H_hf Pi)]^2; the residual
/// mixing adds delta^2 on top, so the total spread obeys
/// energy_spread_sq = hf_variance + delta^2 >= delta^2 for every Pi.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MomentsReport {
    pub energy: f64,
    pub hf_variance: f64,
    pub delta_sq: f64,
    pub energy_spread_sq: f64,
}

pub fn energy_moments(
    spectrum: &HfSpectrum,
    pi: &StatOperator,
    delta: f64,
) -> Result<MomentsReport> {
    if !(delta >= 0.0) {
        return Err(Error::Parameter(format!("delta must be >= 0, got {delta}")));
    }
    if pi.dim() != spectrum.len() {
        return Err(Error::Shape(format!(
            "statistical operator dimension {} vs spectrum {}",
            pi.dim(),
            spectrum.len()
        )));
    }
    let diag = pi.diagonal();
    let mut e = 0.0;
    let mut e2 = 0.0;
    for (m, &w) in diag.iter().enumerate() {
        let level = spectrum.level(m);
        e += level * w;
        e2 += level * level * w;
    }
    let hf_variance = e2 - e * e;
    Ok(MomentsReport {
        energy: e,
        hf_variance,
        delta_sq: delta * delta,
        energy_spread_sq: hf_variance + delta * delta,
    })
}
