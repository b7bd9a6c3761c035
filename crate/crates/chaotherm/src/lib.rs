//! Random-matrix ensembles for chaotic many-body Hamiltonians.
//!
//! A mean-field scaffold (Poissonian levels with a smooth density) is mixed
//! locally by a residual interaction; within a correlation width `delta` the
//! eigenvalues and eigenvectors follow random-matrix statistics of the
//! orthogonal or unitary class. On top of that structure the crate evolves
//! expectation values Tr(A rho(t)) exactly per realization, averages them
//! over ensembles in parallel, evaluates the matching analytic predictions
//! (relaxation envelope, time-independent asymptote, fluctuation terms), and
//! issues a thermalization verdict.
//!
//! Entry points:
//! - [`scaffold`]: levels, observables, statistical operators, windows.
//! - [`ensemble`]: microscopic (banded residual) and synthetic (enveloped
//!   eigenvector) realizations, both symmetry classes.
//! - [`spectra`]: unfolding, spacing statistics, rigidity, strength function.
//! - [`evolve`]: trajectories, ensemble means, correlation functions,
//!   equilibrium values, verdicts.
//! - [`runner`]: config-driven pipeline, artifact files, acceptance checks.
//!
//! The `examples/` directory demonstrates each capability end to end; the
//! `chaotherm` binary exposes the same pipeline as `run` / `verify`.

pub mod ensemble;
pub mod error;
pub mod linalg;
pub mod scaffold;

pub use error::{Error, Result};
