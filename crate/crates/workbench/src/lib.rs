//! Workbench around `hif-core`: scenario files, waveform CSV, end-to-end runs
//! with their output bundles, and parallel parameter sweeps.

pub mod csvio;
pub mod error;
pub mod run;
pub mod scenario;
pub mod sweep;

pub use error::{Result, WorkbenchError};
pub use run::{run, RunBundle};
pub use scenario::{load_scenario, save_scenario, Scenario};
pub use sweep::{kcl_residual, sweep, Metric, SweepAxis, SweepSpec, SweepTable};
