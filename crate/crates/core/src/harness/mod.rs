//! Command-line orchestration: per-state reports, randomized sweeps,
//! channel evolution and the acceptance suite.

pub mod channels;
pub mod evolve;
pub mod measure;
pub mod sweep;
pub mod verify;

pub use channels::{apply_per_qubit, gamma_of_t, ChannelKind, KrausChannel};
pub use evolve::{evolve, EvolveRow};
pub use measure::{measure_report, MeasureReport, MeasureSelection};
pub use sweep::{run_sweep, Check, Dims, Format, SweepConfig, SweepReport, SweepRow};

/// Version of the JSON report layouts.
pub const SCHEMA_VERSION: u32 = 1;
