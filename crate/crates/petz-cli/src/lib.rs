//! Harness behind the `petz` binary: sweep configuration, trial runners,
//! and report emission. Kept as a library so the acceptance suite can drive
//! sweeps in-process.

pub mod config;
pub mod fmt;
pub mod report;
pub mod sweep;

pub use config::{SweepConfig, Which};
pub use report::{Format, SweepReport, SweepRow};
pub use sweep::{run_saturation, run_sweep};
