//! Numerics for the semilinear heat equation driven by the fractional
//! sub-Laplacian on the Heisenberg group `H^N`.
//!
//! The crate is organised around five layers:
//!
//! * [`group`], [`calculus`], [`measure`] — exact group algebra, horizontal
//!   vector fields and the local sub-Laplacian, gauge-polar integration and
//!   measure calibration;
//! * [`fracop`] — the fractional sub-Laplacian `(-Δ)^s` as a singular
//!   integral in gauge-polar coordinates;
//! * [`semigroup`] — the heat semigroup `e^{-t(-Δ)^s}` by two independent
//!   backends (method of lines and subordinated Monte Carlo), plus heat
//!   kernel envelope and Riesz potential diagnostics;
//! * [`solver`] — the Duhamel mild-solution solver with certified Picard
//!   windows, continuation and blow-up detection;
//! * [`fujita`] — experiment orchestration: critical exponent algebra,
//!   weighted-kernel integral bounds, barrier confinement and the
//!   blow-up/global dichotomy, with JSON/CSV reporting.

pub mod calculus;
pub mod error;
pub mod fracop;
pub mod fujita;
pub mod grid;
pub mod group;
pub mod measure;
pub mod quad;
pub mod report;
pub mod rng;
pub mod semigroup;
pub mod solver;

pub use error::{Error, Result};
pub use group::{Gauge, GroupParams, GroupPoint};
