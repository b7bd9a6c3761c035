//! Synthetic realizations: eigenvalues with local Wigner-Dyson statistics
//! mapped onto the scaffold density, and transforms drawn from the
//! correlation envelope, then orthonormalized.

use ndarray::Array2;
use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::{ChiSquared, StandardNormal};

use crate::ensemble::{EnvelopeF, EnvelopeKind, Origin, Realization, Symmetry, Transform};
use crate::error::{Error, Result};
use crate::linalg::{
    polar_orthonormalize_complex, polar_orthonormalize_real, symmetric_tridiagonal_eigenvalues,
};
use crate::scaffold::HfSpectrum;

/// Eigenvalues of one beta-Hermite tridiagonal matrix (Dumitriu & Edelman
/// 2002): diagonal N(0, 1), k-th subdiagonal chi_{beta (n-k)} / sqrt(2).
/// For beta = 1 (2) the eigenvalue statistics are those of the GOE (GUE),
/// at a fraction of the dense-solve cost.
pub fn sample_beta_eigenvalues(n: usize, beta: f64, rng: &mut ChaCha8Rng) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::EmptySpectrum("beta ensemble of dimension 0".into()));
    }
    let mut diag = vec![0.0f64; n];
    for d in diag.iter_mut() {
        *d = rng.sample(StandardNormal);
    }
    let mut off = vec![0.0f64; n.saturating_sub(1)];
    for (k, o) in off.iter_mut().enumerate() {
        let dof = beta * (n - 1 - k) as f64;
        let chi_sq: f64 = rng.sample(ChiSquared::new(dof).expect("dof > 0"));
        *o = (chi_sq / 2.0).sqrt();
    }
    symmetric_tridiagonal_eigenvalues(&diag, &off)
}

/// CDF of the semicircle law on [-1, 1].
fn semicircle_cdf(y: f64) -> f64 {
    let y = y.clamp(-1.0, 1.0);
    0.5 + (y * (1.0 - y * y).sqrt() + y.asin()) / std::f64::consts::PI
}

/// `n` unfolded random-matrix levels with unit mean spacing, taken from the
/// center of a padded beta-ensemble spectrum so the Airy edges do not leak
/// into the kept range. Values lie in (0, n) and increase strictly.
pub fn sample_unfolded_rm_levels(
    n: usize,
    symmetry: Symmetry,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<f64>> {
    let beta = match symmetry {
        Symmetry::Orthogonal => 1.0,
        Symmetry::Unitary => 2.0,
    };
    let pad = (n / 16).max(16);
    let total = n + 2 * pad;
    let raw = sample_beta_eigenvalues(total, beta, rng)?;
    let radius = (2.0 * beta * total as f64).sqrt();
    let mut kept: Vec<f64> = raw[pad..pad + n]
        .iter()
        .map(|&x| total as f64 * semicircle_cdf(x / radius) - pad as f64)
        .collect();
    // spectral rigidity keeps these near (0, n); clamp stragglers and
    // restore strict ordering at the edges
    let eps = 1e-9;
    for (k, x) in kept.iter_mut().enumerate() {
        *x = x.clamp(eps * (k as f64 + 1.0), n as f64 - eps * ((n - k) as f64));
    }
    for k in 1..n {
        if kept[k] <= kept[k - 1] {
            kept[k] = kept[k - 1] + eps;
        }
    }
    Ok(kept)
}

/// Smooth (ensemble-mean) eigenvalue positions implied by the density:
/// the inverse cumulative evaluated at alpha + 1/2.
pub fn mean_positions(spectrum: &HfSpectrum) -> Vec<f64> {
    let n = spectrum.len();
    (0..n)
        .map(|a| spectrum.density().inverse_cumulative(a as f64 + 0.5))
        .collect()
}

/// Draw one synthetic realization: Wigner-Dyson eigenvalues mapped through
/// the scaffold density, and a transform whose raw entries have variance
/// F[(E_m - Ebar_alpha)^2 / delta^2], orthonormalized to the nearest
/// orthogonal (unitary) matrix by the symmetric polar factor.
pub fn sample_synthetic(
    spectrum: &HfSpectrum,
    envelope: &EnvelopeF,
    symmetry: Symmetry,
    seed: u64,
) -> Result<Realization> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_synthetic_with(spectrum, envelope, symmetry, &mut rng)
}

pub(crate) fn sample_synthetic_with(
    spectrum: &HfSpectrum,
    envelope: &EnvelopeF,
    symmetry: Symmetry,
    rng: &mut ChaCha8Rng,
) -> Result<Realization> {
    envelope.validate()?;
    let n = spectrum.len();
    let rho_c = spectrum.density().eval(spectrum.center_energy());
    let n_delta = rho_c * envelope.delta;
    if n_delta < 3.0 {
        return Err(Error::Parameter(format!(
            "envelope width {} holds only {n_delta:.1} levels; need at least 3 for \
             random-matrix statistics to mean anything",
            envelope.delta
        )));
    }

    let unfolded = sample_unfolded_rm_levels(n, symmetry, rng)?;
    let eigenvalues: Vec<f64> = unfolded
        .iter()
        .map(|&x| spectrum.density().inverse_cumulative(x))
        .collect();
    let ebar = mean_positions(spectrum);

    // Gaussian envelopes vanish numerically beyond 9 delta; the Lorentzian
    // tail matters everywhere
    let cutoff = match envelope.kind {
        EnvelopeKind::Gaussian => 9.0 * envelope.delta,
        EnvelopeKind::Lorentzian => f64::INFINITY,
    };

    let transform = match symmetry {
        Symmetry::Orthogonal => {
            let mut x = Array2::<f64>::zeros((n, n));
            for m in 0..n {
                let e_m = spectrum.level(m);
                for (a, &eb) in ebar.iter().enumerate() {
                    if (e_m - eb).abs() > cutoff {
                        continue;
                    }
                    let rho_mid = spectrum.density().eval(0.5 * (e_m + eb));
                    let var = envelope.value(e_m, eb, rho_mid);
                    let g: f64 = rng.sample(StandardNormal);
                    x[[m, a]] = var.sqrt() * g;
                }
            }
            Transform::Real(polar_orthonormalize_real(&x)?)
        }
        Symmetry::Unitary => {
            let mut x = Array2::<Complex64>::zeros((n, n));
            for m in 0..n {
                let e_m = spectrum.level(m);
                for (a, &eb) in ebar.iter().enumerate() {
                    if (e_m - eb).abs() > cutoff {
                        continue;
                    }
                    let rho_mid = spectrum.density().eval(0.5 * (e_m + eb));
                    let comp = (0.5 * envelope.value(e_m, eb, rho_mid)).sqrt();
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    x[[m, a]] = Complex64::new(comp * re, comp * im);
                }
            }
            Transform::Complex(polar_orthonormalize_complex(&x)?)
        }
    };

    let real = Realization {
        eigenvalues,
        transform,
        origin: Origin::Synthetic,
        symmetry,
        mean_eigenvalues: Some(ebar),
    };
    real.validate(None, None)?;
    Ok(real)
}

/// Window-stitched level sequence: independent random-matrix blocks of
/// `block_size` levels, each unfolded and mapped into consecutive slots of
/// the scaffold density. Levels farther apart than one block are exactly
/// uncorrelated, which is what the rigidity upbend diagnostics probe.
pub fn sample_stitched_levels(
    spectrum: &HfSpectrum,
    block_size: usize,
    symmetry: Symmetry,
    seed: u64,
) -> Result<Vec<f64>> {
    if block_size < 2 {
        return Err(Error::Parameter("stitched block_size must be >= 2".into()));
    }
    let n = spectrum.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    let mut start = 0usize;
    while start < n {
        let size = block_size.min(n - start);
        if size < 2 {
            // a single trailing level: place it at its mean position
            out.push(spectrum.density().inverse_cumulative(start as f64 + 0.5));
            break;
        }
        let block = sample_unfolded_rm_levels(size, symmetry, &mut rng)?;
        for x in block {
            out.push(spectrum.density().inverse_cumulative(start as f64 + x));
        }
        start += size;
    }
    for k in 1..out.len() {
        if out[k] <= out[k - 1] {
            out[k] = out[k - 1] + 1e-9;
        }
    }
    Ok(out)
}
