//! Optimal work and efficiency of a three-stroke heat engine whose working
//! body is a two-level system driven by (possibly restricted) thermal
//! operations.
//!
//! The crate is organized bottom-up:
//!
//! - [`populations`]: probability vectors, spectra, Gibbs weights.
//! - [`majorization`]: β-ordering and thermomajorization curves.
//! - [`thermal`]: qubit Gibbs-stochastic processes and the `λ` segment.
//! - [`ergotropy`]: passive rearrangements and extractable work.
//! - [`engine`]: stroke simulation, cyclic states and the closed-form optimum.
//! - [`restrictions`]: `λ_max` for finite baths and Jaynes-Cummings couplings.
//! - [`oracle`]: brute-force checks of all closed forms.
//! - [`sweep`], [`verify`] and [`cli`]: parameter sweeps, the verification
//!   suite and the command-line front end.
//!
//! ```
//! use stroke_engine::engine::{optimal_performance, EngineParams};
//!
//! let params = EngineParams::unrestricted(0.2, 0.6).unwrap();
//! let best = optimal_performance(&params);
//! assert!(best.operational);
//! assert!((best.w_max - 0.1298).abs() < 1e-4);
//! ```

pub mod cli;
pub mod engine;
pub mod ergotropy;
pub mod error;
pub mod majorization;
pub mod oracle;
pub mod populations;
pub mod restrictions;
pub mod sweep;
pub mod thermal;
pub mod verify;

pub use engine::{optimal_performance, CycleReport, EngineParams, PerformancePoint};
pub use error::{EngineError, Result};
pub use populations::{EnergySpectrum, GibbsVector, PopulationVector};
pub use restrictions::RestrictionModel;
