//! One diagonalized Hamiltonian: eigenvalues plus the transform from the
//! scaffold basis to the eigenbasis.

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ensemble::{ResidualMatrix, Symmetry};
use crate::error::{Error, Result};
use crate::linalg::{
    conjugate_transpose, eigh_complex, eigh_real, orthogonality_residual_complex,
    orthogonality_residual_real,
};
use crate::scaffold::HfSpectrum;

pub const ORTHOGONALITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    Microscopic,
    Synthetic,
}

/// Basis transform O_{m alpha} (orthogonal class) or U_{m alpha} (unitary
/// class); column alpha is the eigenvector of eigenvalue E_alpha expressed
/// in the scaffold basis.
#[derive(Debug, Clone)]
pub enum Transform {
    Real(Array2<f64>),
    Complex(Array2<Complex64>),
}

impl Transform {
    pub fn dim(&self) -> usize {
        match self {
            Transform::Real(m) => m.nrows(),
            Transform::Complex(m) => m.nrows(),
        }
    }

    pub fn orthogonality_residual(&self) -> f64 {
        match self {
            Transform::Real(m) => orthogonality_residual_real(m),
            Transform::Complex(m) => orthogonality_residual_complex(m),
        }
    }

    /// |T_{m alpha}|^2
    pub fn abs_sq(&self, m: usize, alpha: usize) -> f64 {
        match self {
            Transform::Real(t) => t[[m, alpha]] * t[[m, alpha]],
            Transform::Complex(t) => t[[m, alpha]].norm_sqr(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Realization {
    pub eigenvalues: Vec<f64>,
    pub transform: Transform,
    pub origin: Origin,
    pub symmetry: Symmetry,
    /// Smooth (ensemble-mean) eigenvalue positions; synthetic origin only.
    pub mean_eigenvalues: Option<Vec<f64>>,
}

impl Realization {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Occupation of eigenstate alpha under a real symmetric operator M in
    /// the scaffold basis: diag(T^H M T).
    pub fn occupations(&self, m: &Array2<f64>) -> Vec<f64> {
        let n = self.dim();
        match &self.transform {
            Transform::Real(t) => {
                let mt = m.dot(t);
                (0..n).map(|a| t.column(a).dot(&mt.column(a))).collect()
            }
            Transform::Complex(t) => {
                let mz = m.mapv(|x| Complex64::new(x, 0.0));
                let mt = mz.dot(t);
                (0..n)
                    .map(|a| {
                        t.column(a)
                            .iter()
                            .zip(mt.column(a).iter())
                            .map(|(u, v)| (u.conj() * v).re)
                            .sum()
                    })
                    .collect()
            }
        }
    }

    /// Checks the orthonormality residual and, for microscopic origin, the
    /// reconstruction T diag(E) T^H = H within 1e-9 per unit of max |H|.
    pub fn validate(&self, h: Option<&ResidualMatrix>, spectrum: Option<&HfSpectrum>) -> Result<()> {
        let res = self.transform.orthogonality_residual();
        if res > ORTHOGONALITY_TOL {
            return Err(Error::Numeric(format!(
                "transform orthogonality residual {res:.3e} exceeds {ORTHOGONALITY_TOL:.0e}"
            )));
        }
        for k in 1..self.eigenvalues.len() {
            if self.eigenvalues[k] < self.eigenvalues[k - 1] {
                return Err(Error::Numeric("eigenvalues not sorted ascending".into()));
            }
        }
        if let (Some(v), Some(s)) = (h, spectrum) {
            let err = self.reconstruction_error(v, s);
            let scale = hamiltonian_scale(v, s);
            if err > 1e-9 * scale.max(1.0) {
                return Err(Error::Numeric(format!(
                    "reconstruction error {err:.3e} vs scale {scale:.3e}"
                )));
            }
        }
        Ok(())
    }

    /// max |(T diag(E) T^H - H)_{ij}| for H = diag(levels) + V.
    pub fn reconstruction_error(&self, v: &ResidualMatrix, spectrum: &HfSpectrum) -> f64 {
        let n = self.dim();
        match (&self.transform, v) {
            (Transform::Real(t), ResidualMatrix::Real(vm)) => {
                let mut scaled = t.clone();
                for (a, mut col) in scaled.columns_mut().into_iter().enumerate() {
                    col *= self.eigenvalues[a];
                }
                let rec = scaled.dot(&t.t());
                let mut worst = 0.0f64;
                for i in 0..n {
                    for j in 0..n {
                        let mut h = vm[[i, j]];
                        if i == j {
                            h += spectrum.level(i);
                        }
                        worst = worst.max((rec[[i, j]] - h).abs());
                    }
                }
                worst
            }
            (Transform::Complex(t), ResidualMatrix::Complex(vm)) => {
                let mut scaled = t.clone();
                for (a, mut col) in scaled.columns_mut().into_iter().enumerate() {
                    let e = Complex64::new(self.eigenvalues[a], 0.0);
                    for z in col.iter_mut() {
                        *z *= e;
                    }
                }
                let rec = scaled.dot(&conjugate_transpose(t));
                let mut worst = 0.0f64;
                for i in 0..n {
                    for j in 0..n {
                        let mut h = vm[[i, j]];
                        if i == j {
                            h += Complex64::new(spectrum.level(i), 0.0);
                        }
                        worst = worst.max((rec[[i, j]] - h).norm());
                    }
                }
                worst
            }
            _ => f64::INFINITY,
        }
    }
}

fn hamiltonian_scale(v: &ResidualMatrix, spectrum: &HfSpectrum) -> f64 {
    let level_scale = spectrum
        .levels()
        .iter()
        .fold(0.0f64, |m, &x| m.max(x.abs()));
    let v_scale = match v {
        ResidualMatrix::Real(m) => m.iter().fold(0.0f64, |acc, &x| acc.max(x.abs())),
        ResidualMatrix::Complex(m) => m.iter().fold(0.0f64, |acc, z| acc.max(z.norm())),
    };
    level_scale + v_scale
}

/// Diagonalize H = H_hf + V.
///
/// The eigenvector phase convention (largest-magnitude component made real
/// positive) pins the transform so realizations are reproducible bit for
/// bit from the seed that generated V.
pub fn diagonalize(spectrum: &HfSpectrum, v: &ResidualMatrix) -> Result<Realization> {
    let n = spectrum.len();
    if v.dim() != n {
        return Err(Error::Shape(format!(
            "residual dimension {} vs spectrum {}",
            v.dim(),
            n
        )));
    }
    match v {
        ResidualMatrix::Real(vm) => {
            let mut h = vm.clone();
            for i in 0..n {
                h[[i, i]] += spectrum.level(i);
            }
            let (w, mut t) = eigh_real(&h)?;
            fix_phases_real(&mut t);
            Ok(Realization {
                eigenvalues: w.to_vec(),
                transform: Transform::Real(t),
                origin: Origin::Microscopic,
                symmetry: Symmetry::Orthogonal,
                mean_eigenvalues: None,
            })
        }
        ResidualMatrix::Complex(vm) => {
            let mut h = vm.clone();
            for i in 0..n {
                h[[i, i]] += Complex64::new(spectrum.level(i), 0.0);
            }
            let (w, mut t) = eigh_complex(&h)?;
            fix_phases_complex(&mut t);
            Ok(Realization {
                eigenvalues: w.to_vec(),
                transform: Transform::Complex(t),
                origin: Origin::Microscopic,
                symmetry: Symmetry::Unitary,
                mean_eigenvalues: None,
            })
        }
    }
}

pub(crate) fn fix_phases_real(t: &mut Array2<f64>) {
    for mut col in t.columns_mut() {
        let mut best = 0usize;
        let mut best_abs = -1.0f64;
        for (i, &x) in col.iter().enumerate() {
            if x.abs() > best_abs {
                best_abs = x.abs();
                best = i;
            }
        }
        if col[best] < 0.0 {
            for x in col.iter_mut() {
                *x = -*x;
            }
        }
    }
}

pub(crate) fn fix_phases_complex(t: &mut Array2<Complex64>) {
    for mut col in t.columns_mut() {
        let mut best = 0usize;
        let mut best_abs = -1.0f64;
        for (i, z) in col.iter().enumerate() {
            if z.norm() > best_abs {
                best_abs = z.norm();
                best = i;
            }
        }
        if best_abs > 0.0 {
            let phase = col[best].conj() / col[best].norm();
            for z in col.iter_mut() {
                *z *= phase;
            }
        }
    }
}
