//! Geometric phase gates in the pulsed (Milburn) and continuous
//! (Sørensen–Mølmer) interaction regimes.
//!
//! The crate is organised around three layers:
//!
//! - closed-form gate algebra: loop coefficients and phase-space geometry
//!   ([`phase_space`]), and the coefficient-level decomposition of imperfect
//!   gates under interaction-strength rescaling ([`error_models`]);
//! - the analytical optomechanical example: Poisson-weighted series for the
//!   Husimi Q-function, fidelity and purity of the final field state, both
//!   unitary ([`analytic`]) and with mechanical dissipation ([`dissipative`]);
//! - a brute-force truncated-Fock-space simulator ([`oracle`]) that provides
//!   ground truth for every closed form above.
//!
//! All public operations are pure functions of their inputs and safe to call
//! concurrently. With the `parallel` feature (on by default) the series
//! summations and oracle block updates run on rayon; without it a sequential
//! fallback is used with identical results.

pub mod analytic;
pub mod dissipative;
pub mod error;
pub mod error_models;
pub mod kernel;
pub mod oracle;
pub(crate) mod parallel;
pub mod phase_space;
pub mod poisson;

pub use error::GateError;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, GateError>;
