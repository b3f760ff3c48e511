//! Exact controllability of block-diagonalizable evolution systems.
//!
//! The library decides controllability of `du/dt = Au + Bv` for operators
//! given by their symbols: a sequence of finite matrix blocks indexed by a
//! frequency parameter.  Each block gets a Kalman rank test and an
//! observability Gramian; the global verdict combines the per-block costs
//! with an analytic tail bound where one is available.

pub mod cli;
pub mod error;
pub mod global_analysis;
pub mod kalman;
pub mod observability;
pub mod spectra;
pub mod symbols;
pub mod synthesis;

pub use error::{Error, Result};
pub use global_analysis::{analyze, AnalyzeOptions, GlobalReport, Verdict};
pub use kalman::{rank_test, CMatrix, RankVerdict, TolerancePolicy};
pub use observability::{observability_gramian, GramianMethod, GramianResult};
pub use spectra::{generate_blocks, BlockSpectrum, SpectralModel};
pub use symbols::{ControlSystem, SymbolSequence};
pub use synthesis::{min_energy_control, BlockTrajectory};
