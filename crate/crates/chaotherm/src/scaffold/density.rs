//! Smooth level-density models for the mean-field scaffold.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Average level density rho(E) of the integrable scaffold.
///
/// Many-body densities grow close to exponentially with excitation energy;
/// the `Exponential` variant models that with rho(E) = rho0 exp(E / t_scale).
/// `Constant` keeps desk-scale tests free of density gradients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DensityModel {
    Constant { rho0: f64 },
    Exponential { rho0: f64, t_scale: f64 },
}

impl DensityModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            DensityModel::Constant { rho0 } => {
                if !(rho0 > 0.0) {
                    return Err(Error::Parameter(format!("rho0 must be > 0, got {rho0}")));
                }
            }
            DensityModel::Exponential { rho0, t_scale } => {
                if !(rho0 > 0.0) {
                    return Err(Error::Parameter(format!("rho0 must be > 0, got {rho0}")));
                }
                if !(t_scale > 0.0) {
                    return Err(Error::Parameter(format!("t_scale must be > 0, got {t_scale}")));
                }
            }
        }
        Ok(())
    }

    /// rho(E), in levels per unit energy.
    pub fn eval(&self, e: f64) -> f64 {
        match *self {
            DensityModel::Constant { rho0 } => rho0,
            DensityModel::Exponential { rho0, t_scale } => rho0 * (e / t_scale).exp(),
        }
    }

    /// Integrated density from E = 0: the expected level count below `e`.
    pub fn cumulative(&self, e: f64) -> f64 {
        match *self {
            DensityModel::Constant { rho0 } => rho0 * e,
            DensityModel::Exponential { rho0, t_scale } => {
                rho0 * t_scale * ((e / t_scale).exp() - 1.0)
            }
        }
    }

    /// Inverse of [`cumulative`](Self::cumulative).
    pub fn inverse_cumulative(&self, x: f64) -> f64 {
        match *self {
            DensityModel::Constant { rho0 } => x / rho0,
            DensityModel::Exponential { rho0, t_scale } => {
                t_scale * (1.0 + x / (rho0 * t_scale)).ln()
            }
        }
    }
}
