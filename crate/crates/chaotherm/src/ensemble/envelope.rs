//! The correlation envelope F(x): the second-moment profile of eigenvector
//! components versus energy offset.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnvelopeKind {
    /// Realistic for banded residual interactions.
    Gaussian,
    /// The golden-rule shape for non-banded residual interactions.
    Lorentzian,
}

/// Envelope F with correlation width `delta`.
///
/// Normalized so that rho * integral F dE = 1, which is the continuum form
/// of the transform orthogonality sum rules. The Gaussian variant is
/// exp(-x^2 / (2 delta^2)) / (sqrt(2 pi) rho delta); the Lorentzian variant
/// is delta / (2 pi rho (x^2 + delta^2/4)), i.e. half-width delta/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeF {
    pub kind: EnvelopeKind,
    pub delta: f64,
}

impl EnvelopeF {
    pub fn gaussian(delta: f64) -> Self {
        Self { kind: EnvelopeKind::Gaussian, delta }
    }

    pub fn lorentzian(delta: f64) -> Self {
        Self { kind: EnvelopeKind::Lorentzian, delta }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0) {
            return Err(Error::Parameter(format!(
                "envelope width must be > 0, got {}",
                self.delta
            )));
        }
        Ok(())
    }

    /// F[(e_m - e_bar)^2 / delta^2], with the local density folded into the
    /// normalization.
    pub fn value(&self, e_m: f64, e_bar: f64, rho: f64) -> f64 {
        let x = e_m - e_bar;
        let d = self.delta;
        match self.kind {
            EnvelopeKind::Gaussian => {
                (-x * x / (2.0 * d * d)).exp() / ((2.0 * std::f64::consts::PI).sqrt() * rho * d)
            }
            EnvelopeKind::Lorentzian => {
                d / (2.0 * std::f64::consts::PI * rho * (x * x + 0.25 * d * d))
            }
        }
    }

    /// The squared-propagator relaxation factor multiplying the mean-field
    /// term of the averaged trajectory: exp(-t^2 delta^2) for the Gaussian
    /// kind, exp(-delta t) for the Lorentzian kind (hbar = 1).
    pub fn relaxation_factor(&self, t: f64) -> f64 {
        let d = self.delta;
        match self.kind {
            EnvelopeKind::Gaussian => (-t * t * d * d).exp(),
            EnvelopeKind::Lorentzian => (-d * t.abs()).exp(),
        }
    }

    /// Decay of the averaged propagator diagonal: the square root of
    /// [`relaxation_factor`](Self::relaxation_factor).
    pub fn propagator_decay(&self, t: f64) -> f64 {
        let d = self.delta;
        match self.kind {
            EnvelopeKind::Gaussian => (-0.5 * t * t * d * d).exp(),
            EnvelopeKind::Lorentzian => (-0.5 * d * t.abs()).exp(),
        }
    }

    /// The contraction kernel sum_alpha F(e_m, E_alpha) F(e_n, E_alpha) in
    /// the continuum limit. For the Gaussian kind this is
    /// exp(-(e_m - e_n)^2 / (4 delta^2)) / (2 sqrt(pi) rho delta); the
    /// Lorentzian analogue follows from the convolution of two Lorentzians.
    pub fn pair_kernel(&self, e_m: f64, e_n: f64, rho: f64) -> f64 {
        let x = e_m - e_n;
        let d = self.delta;
        match self.kind {
            EnvelopeKind::Gaussian => {
                (-x * x / (4.0 * d * d)).exp() / (2.0 * std::f64::consts::PI.sqrt() * rho * d)
            }
            EnvelopeKind::Lorentzian => {
                d / (std::f64::consts::PI * rho * (x * x + d * d))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn both_kinds_integrate_to_unit_sum_rule() {
        // quadrature oracle: rho * integral F dE = 1
        for kind in [EnvelopeKind::Gaussian, EnvelopeKind::Lorentzian] {
            let f = EnvelopeF { kind, delta: 1.3 };
            let rho = 4.0;
            let (lo, hi, steps) = (-400.0, 400.0, 4_000_000);
            let h = (hi - lo) / steps as f64;
            let mut total = 0.0;
            for k in 0..steps {
                let e = lo + (k as f64 + 0.5) * h;
                total += f.value(e, 0.0, rho) * h;
            }
            total *= rho;
            let tol = if kind == EnvelopeKind::Gaussian { 1e-9 } else { 2e-3 };
            assert!((total - 1.0).abs() < tol, "{kind:?} sum rule {total}");
        }
    }

    #[test]
    fn pair_kernel_matches_quadrature() {
        // quadrature oracle for the contraction of two envelopes
        for kind in [EnvelopeKind::Gaussian, EnvelopeKind::Lorentzian] {
            let f = EnvelopeF { kind, delta: 0.8 };
            let rho = 2.5;
            let (e_m, e_n) = (0.3, -0.4);
            let (lo, hi, steps) = (-600.0, 600.0, 6_000_000);
            let h = (hi - lo) / steps as f64;
            let mut total = 0.0;
            for k in 0..steps {
                let e = lo + (k as f64 + 0.5) * h;
                total += f.value(e_m, e, rho) * f.value(e_n, e, rho) * h;
            }
            total *= rho; // sum over alpha = rho * integral
            let kernel = f.pair_kernel(e_m, e_n, rho);
            assert!(
                (total - kernel).abs() / kernel < 2e-3,
                "{kind:?}: quadrature {total} vs kernel {kernel}"
            );
        }
    }

    #[test]
    fn relaxation_factor_is_squared_propagator_decay() {
        for kind in [EnvelopeKind::Gaussian, EnvelopeKind::Lorentzian] {
            let f = EnvelopeF { kind, delta: 2.0 };
            for &t in &[0.0, 0.1, 0.7, 3.0] {
                assert_abs_diff_eq!(
                    f.relaxation_factor(t),
                    f.propagator_decay(t).powi(2),
                    epsilon = 1e-14
                );
            }
        }
    }

    #[test]
    fn gaussian_propagator_at_inverse_delta() {
        // at t = 1/delta the averaged propagator has decayed to e^{-1/2}
        let f = EnvelopeF::gaussian(2.5);
        assert_abs_diff_eq!(f.propagator_decay(1.0 / 2.5), (-0.5f64).exp(), epsilon = 1e-14);
    }

    #[test]
    fn nonpositive_delta_rejected() {
        assert!(EnvelopeF::gaussian(0.0).validate().is_err());
    }
}
