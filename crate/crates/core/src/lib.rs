//! Simulation and analysis of high-impedance faults (HIFs) in resonant-grounded
//! three-wire distribution networks.
//!
//! The crate is organised bottom-up:
//!
//! * [`arc`] generates nonlinear fault currents from an energy-balance arc model
//!   and measures their distortion.
//! * [`network`] holds the n-feeder zero-sequence equivalent circuit and a
//!   time-domain simulator for it.
//! * [`phasor`] turns sampled waveforms into one-cycle harmonic phasors, sliding
//!   phasor streams and sinusoidal/distortional decompositions.
//! * [`theory`] gives the closed-form harmonic transfer from the fault current
//!   to every feeder, lossless and damped, and estimates network ratios from
//!   measured phasors.
//! * [`identify`] implements the 3rd-harmonic pairwise phase-difference
//!   indicator, the classic fundamental/3rd-harmonic baseline and the
//!   effective-area maps.
//!
//! The simulator and the closed-form theory are independent routes to the same
//! steady-state phasors; the test suites check one against the other.

pub mod angle;
pub mod arc;
pub mod error;
pub mod identify;
pub mod network;
mod ode;
pub mod phasor;
pub mod theory;
pub mod waveform;

pub use error::{Error, Result};
pub use waveform::WaveformRecord;

/// Nominal system frequency used by the defaults (Hz).
pub const DEFAULT_F0: f64 = 50.0;
/// Sampling rate of the field recorders the defaults mirror (Hz).
pub const DEFAULT_FS: f64 = 6400.0;
/// Highest harmonic order analysed by default.
pub const DEFAULT_MAX_ORDER: u32 = 11;
/// Version of this crate, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
