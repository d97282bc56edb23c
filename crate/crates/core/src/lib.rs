//! Exact verification engine for equivariant slice spectral sequence computations and the
//! 2-local Weierstrass Hopf algebroid.

pub mod algebra;
pub mod chart;
pub mod config;
pub mod error;
pub mod exact;
pub mod report;
pub mod run;
pub mod ss;
pub mod weierstrass;

pub use error::{Error, Result};
pub use run::run_check;
