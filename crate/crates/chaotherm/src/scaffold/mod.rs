//! The integrable scaffold: level sequence, density model, observables,
//! statistical operators, the window partition of the energy axis, and
//! energy moments.
//!
//! Everything here is immutable after construction and safe to share across
//! worker threads; generation is single-threaded and deterministic per seed.

mod density;
mod moments;
pub(crate) mod observable;
mod spectrum;
mod stat_operator;
mod windows;

pub use density::DensityModel;
pub use moments::{energy_moments, MomentsReport};
pub use observable::{build_observable, Observable, ObservableKind, ObservableSpec, Profile};
pub use spectrum::{build_hf_spectrum, HfSpectrum};
pub use stat_operator::{
    build_stat_operator, StatOperator, StatOperatorKind, StatOperatorSpec,
};
pub use windows::{partition_windows, WindowPartition};
