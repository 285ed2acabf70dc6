//! Decoherence and quantum Fisher information of a pure-dephasing qubit
//! coupled to a squeezed thermal bosonic bath with an ohmic-family spectral
//! density.
//!
//! The crate is organized bottom-up:
//!
//! * [`spectral_bath`] — spectral density, squeezing kernel, thermal factor.
//! * [`decoherence`] — Γ(T, t) by adaptive quadrature and its derivatives.
//! * [`probe_state`] — the reduced qubit state and its eigensystem.
//! * [`qfi`] — closed-form and spectral-decomposition QFI.
//! * [`sweep`] — sweeps, density grids and the optimal-time search.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod decoherence;
pub mod error;
pub mod probe_state;
pub mod qfi;
mod quadrature;
pub mod spectral_bath;
pub mod sweep;

pub use decoherence::{gamma, gamma_partial, gamma_partial_fd, GammaResult, QuadratureConfig};
pub use error::{Error, Result};
pub use probe_state::{optimal_alpha, reduced_dm, EigenSystem, ProbeInit, QubitDensityMatrix};
pub use qfi::{qfi_closed_form, qfi_point, qfi_spectral, Estimand, QfiInputs, QfiSample};
pub use spectral_bath::{BathPoint, Regime, SpectralParams, SqueezeParams};
pub use sweep::{
    density_grid, optimal_time, sweep, Axis, DensityGrid, FixedInputs, GridSpec, OptimalTimeResult, SweepRow,
    SweepSpec, SweepTable, TimeSearch,
};

/// Crate version, recorded in output metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
