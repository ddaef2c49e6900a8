//! Relative quantum coherence, mutual incompatibility and quantum
//! correlations for small finite-dimensional systems.

pub mod error;
pub mod harness;
pub mod incompat;
pub mod matcore;
pub mod optim;
pub mod qcorr;
pub mod rqc;
pub mod states;

pub use error::{Error, Result};
