//! The integrable scaffold: a Poissonian level sequence with a smooth
//! density model.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use crate::error::{Error, Result};
use crate::scaffold::DensityModel;

/// Sorted scaffold levels plus the density model they were drawn from.
///
/// Levels are strictly increasing; an integrable spectrum carries no level
/// repulsion, so spacings are independent exponentials with local mean
/// 1 / rho(E).
#[derive(Debug, Clone)]
pub struct HfSpectrum {
    levels: Vec<f64>,
    density: DensityModel,
    emin: f64,
    emax: f64,
}

/// Draw `count` scaffold levels from an inhomogeneous Poisson process with
/// rate rho(E), reproducibly from `seed`.
///
/// The construction runs a unit-rate Poisson process in the cumulative
/// coordinate x = integral of rho and maps back through the inverse; that
/// makes the local mean spacing exactly 1 / rho(E) at every energy.
pub fn build_hf_spectrum(density: DensityModel, count: usize, seed: u64) -> Result<HfSpectrum> {
    density.validate()?;
    if count == 0 {
        return Err(Error::EmptySpectrum("requested 0 levels".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = 0.0f64;
    let mut levels = Vec::with_capacity(count);
    for _ in 0..count {
        let step: f64 = rng.sample(Exp1);
        x += step;
        levels.push(density.inverse_cumulative(x));
    }
    let emax = density.inverse_cumulative(x + 0.5);
    HfSpectrum::from_levels_with_range(levels, density, 0.0, emax)
}

impl HfSpectrum {
    /// Wrap externally supplied levels. Exact ties are perturbed by
    /// 1e-12 x (mean spacing) with a logged warning; out-of-order input is
    /// rejected.
    pub fn from_levels(levels: Vec<f64>, density: DensityModel) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::EmptySpectrum("no levels supplied".into()));
        }
        let emin = levels[0];
        let n = levels.len();
        let span = levels[n - 1] - emin;
        let emax = levels[n - 1] + if n > 1 { 0.5 * span / (n as f64 - 1.0) } else { 1.0 };
        Self::from_levels_with_range(levels, density, emin, emax)
    }

    fn from_levels_with_range(
        mut levels: Vec<f64>,
        density: DensityModel,
        emin: f64,
        emax: f64,
    ) -> Result<Self> {
        density.validate()?;
        if levels.is_empty() {
            return Err(Error::EmptySpectrum("no levels supplied".into()));
        }
        let n = levels.len();
        for k in 1..n {
            if levels[k] < levels[k - 1] {
                return Err(Error::Ordering(format!(
                    "levels must be sorted ascending; levels[{k}] = {} < levels[{}] = {}",
                    levels[k],
                    k - 1,
                    levels[k - 1]
                )));
            }
        }
        // break exact ties so downstream eigenproblems stay nondegenerate
        if n > 1 {
            let mean_spacing = (levels[n - 1] - levels[0]).max(f64::MIN_POSITIVE) / (n as f64 - 1.0);
            let nudge = 1e-12 * mean_spacing;
            let mut ties = 0usize;
            for k in 1..n {
                if levels[k] <= levels[k - 1] {
                    levels[k] = levels[k - 1] + nudge;
                    ties += 1;
                }
            }
            if ties > 0 {
                log::warn!("perturbed {ties} degenerate scaffold levels by {nudge:.3e}");
            }
        }
        if levels[0] < emin || levels[n - 1] > emax {
            return Err(Error::Range(format!(
                "levels [{}, {}] exceed modeled range [{emin}, {emax}]",
                levels[0],
                levels[n - 1]
            )));
        }
        Ok(Self { levels, density, emin, emax })
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn level(&self, m: usize) -> f64 {
        self.levels[m]
    }

    pub fn density(&self) -> &DensityModel {
        &self.density
    }

    pub fn emin(&self) -> f64 {
        self.emin
    }

    pub fn emax(&self) -> f64 {
        self.emax
    }

    /// Energy at the middle of the level sequence.
    pub fn center_energy(&self) -> f64 {
        self.levels[self.levels.len() / 2]
    }

    /// Index of the level closest to `e`.
    pub fn nearest_index(&self, e: f64) -> usize {
        match self.levels.binary_search_by(|x| x.partial_cmp(&e).expect("levels finite")) {
            Ok(k) => k,
            Err(k) => {
                if k == 0 {
                    0
                } else if k >= self.levels.len() {
                    self.levels.len() - 1
                } else if (self.levels[k] - e).abs() < (e - self.levels[k - 1]).abs() {
                    k
                } else {
                    k - 1
                }
            }
        }
    }

    /// Half-open index range of levels with energies in [lo, hi).
    pub fn index_range(&self, lo: f64, hi: f64) -> std::ops::Range<usize> {
        let cmp = |x: &f64, t: f64| x.partial_cmp(&t).expect("levels finite");
        let start = self.levels.partition_point(|x| cmp(x, lo).is_lt());
        let end = self.levels.partition_point(|x| cmp(x, hi).is_lt());
        start..end
    }

    /// Empirical mean spacing over a window of levels.
    pub fn mean_spacing_in(&self, range: std::ops::Range<usize>) -> Option<f64> {
        if range.len() < 2 || range.end > self.levels.len() {
            return None;
        }
        let span = self.levels[range.end - 1] - self.levels[range.start];
        Some(span / (range.len() as f64 - 1.0))
    }
}
