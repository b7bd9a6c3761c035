//! Partition of the energy axis into windows of the correlation width.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scaffold::{HfSpectrum, StatOperator};

/// Contiguous energy windows of width `delta` covering the modeled range.
///
/// Each window carries its level count N_k, the model density rho_k at the
/// window center, and the weight p_k of the statistical operator in that
/// window (the diagonal partial trace; the eigen-decomposed form of the same
/// quantity is algebraically identical).
#[derive(Debug, Clone, Serialize)]
pub struct WindowPartition {
    pub delta: f64,
    /// window edges; window k covers [boundaries[k], boundaries[k+1])
    pub boundaries: Vec<f64>,
    /// level count N_k per window
    pub counts: Vec<usize>,
    /// model density at each window center
    pub densities: Vec<f64>,
    /// partial trace p_k of the statistical operator
    pub weights: Vec<f64>,
    /// first level index of each window (levels are sorted, so windows are
    /// contiguous index ranges); length = windows + 1, last entry = n
    pub starts: Vec<usize>,
}

pub fn partition_windows(
    spectrum: &HfSpectrum,
    pi: &StatOperator,
    delta: f64,
) -> Result<WindowPartition> {
    if !(delta > 0.0) {
        return Err(Error::Parameter(format!("window width must be > 0, got {delta}")));
    }
    if spectrum.is_empty() {
        return Err(Error::EmptySpectrum("cannot partition an empty spectrum".into()));
    }
    if pi.dim() != spectrum.len() {
        return Err(Error::Shape(format!(
            "statistical operator dimension {} vs spectrum {}",
            pi.dim(),
            spectrum.len()
        )));
    }
    let emin = spectrum.emin();
    let emax = spectrum.emax();
    let span = emax - emin;
    let windows = (span / delta).ceil().max(1.0) as usize;
    let mut boundaries = Vec::with_capacity(windows + 1);
    for k in 0..=windows {
        boundaries.push(emin + k as f64 * delta);
    }

    let diag = pi.diagonal();
    let mut counts = vec![0usize; windows];
    let mut weights = vec![0.0f64; windows];
    let mut starts = vec![0usize; windows + 1];
    let mut k = 0usize;
    for (m, &e) in spectrum.levels().iter().enumerate() {
        while k + 1 < windows && e >= boundaries[k + 1] {
            k += 1;
            starts[k] = m;
        }
        counts[k] += 1;
        weights[k] += diag[m];
    }
    for j in (k + 1)..=windows {
        starts[j] = spectrum.len();
    }
    let densities: Vec<f64> = (0..windows)
        .map(|k| spectrum.density().eval(0.5 * (boundaries[k] + boundaries[k + 1])))
        .collect();

    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::Numeric(format!(
            "window weights sum to {total}, expected 1"
        )));
    }
    Ok(WindowPartition { delta, boundaries, counts, densities, weights, starts })
}

impl WindowPartition {
    pub fn windows(&self) -> usize {
        self.counts.len()
    }

    /// Half-open level index range of window k.
    pub fn level_range(&self, k: usize) -> std::ops::Range<usize> {
        self.starts[k]..self.starts[k + 1]
    }

    pub fn window_center(&self, k: usize) -> f64 {
        0.5 * (self.boundaries[k] + self.boundaries[k + 1])
    }

    /// Index of the window holding energy `e`.
    pub fn window_of(&self, e: f64) -> usize {
        if e <= self.boundaries[0] {
            return 0;
        }
        let k = ((e - self.boundaries[0]) / self.delta).floor() as usize;
        k.min(self.windows() - 1)
    }

    /// Window with the largest statistical weight p_k.
    pub fn dominant_window(&self) -> usize {
        self.weights
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).expect("weights finite"))
            .map(|(k, _)| k)
            .expect("partition has at least one window")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scaffold::{
        build_hf_spectrum, build_stat_operator, DensityModel, StatOperatorSpec,
    };
    use approx::assert_abs_diff_eq;

    #[test]
    fn pure_state_puts_all_weight_in_one_window() {
        let s = build_hf_spectrum(DensityModel::Constant { rho0: 10.0 }, 400, 2).unwrap();
        let idx = 200;
        let pi = build_stat_operator(&StatOperatorSpec::PureHf { index: idx }, &s, 0).unwrap();
        let part = partition_windows(&s, &pi, 4.0).unwrap();
        let k = part.window_of(s.level(idx));
        for (j, &w) in part.weights.iter().enumerate() {
            if j == k {
                assert_abs_diff_eq!(w, 1.0, epsilon = 1e-14);
            } else {
                assert_eq!(w, 0.0);
            }
        }
    }

    #[test]
    fn window_uniform_fitting_one_window_gives_unit_weight() {
        let s = build_hf_spectrum(DensityModel::Constant { rho0: 10.0 }, 400, 2).unwrap();
        let pi_probe = build_stat_operator(&StatOperatorSpec::PureHf { index: 0 }, &s, 0).unwrap();
        let part = partition_windows(&s, &pi_probe, 5.0).unwrap();
        let k = 3;
        let range = part.level_range(k);
        let pi = build_stat_operator(
            &StatOperatorSpec::WindowUniform { lo: range.start, hi: range.end },
            &s,
            0,
        )
        .unwrap();
        let part2 = partition_windows(&s, &pi, 5.0).unwrap();
        assert_abs_diff_eq!(part2.weights[k], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn uniform_over_two_equal_windows_splits_half_half() {
        let s = build_hf_spectrum(DensityModel::Constant { rho0: 10.0 }, 400, 2).unwrap();
        let probe = build_stat_operator(&StatOperatorSpec::PureHf { index: 0 }, &s, 0).unwrap();
        let part = partition_windows(&s, &probe, 5.0).unwrap();
        let (r2, r3) = (part.level_range(2), part.level_range(3));
        let pi = crate::scaffold::StatOperator::window_mixture(&s, &[(r2, 0.5), (r3, 0.5)])
            .unwrap();
        let part2 = partition_windows(&s, &pi, 5.0).unwrap();
        assert_abs_diff_eq!(part2.weights[2], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(part2.weights[3], 0.5, epsilon = 1e-12);
    }

    #[test]
    fn weights_always_sum_to_one() {
        let s = build_hf_spectrum(DensityModel::Exponential { rho0: 1.0, t_scale: 15.0 }, 3000, 4)
            .unwrap();
        let pi = build_stat_operator(&StatOperatorSpec::BoltzmannDiagonal { beta: 0.05 }, &s, 0)
            .unwrap();
        let part = partition_windows(&s, &pi, 7.0).unwrap();
        let total: f64 = part.weights.iter().sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn counts_track_density_away_from_edges() {
        let s = build_hf_spectrum(DensityModel::Constant { rho0: 25.0 }, 2500, 6).unwrap();
        let pi = build_stat_operator(&StatOperatorSpec::PureHf { index: 1250 }, &s, 0).unwrap();
        let part = partition_windows(&s, &pi, 4.0).unwrap();
        let w = part.windows();
        for k in 1..w - 1 {
            let expected = part.densities[k] * part.delta;
            let got = part.counts[k] as f64;
            assert!(
                (got - expected).abs() / expected < 0.25,
                "window {k}: count {got} vs rho*delta {expected}"
            );
        }
    }

    #[test]
    fn nonpositive_delta_rejected() {
        let s = build_hf_spectrum(DensityModel::Constant { rho0: 1.0 }, 10, 2).unwrap();
        let pi = build_stat_operator(&StatOperatorSpec::PureHf { index: 0 }, &s, 0).unwrap();
        assert!(partition_windows(&s, &pi, 0.0).is_err());
    }
}
