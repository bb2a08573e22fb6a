//! Fractional Wiener–Weierstrass bridge toolkit.
//!
//! The process `Y(t) = Σ_{m≥0} α^m B_H({b^m t})` superposes rescaled
//! fractional Brownian bridges the way the classical Weierstrass function
//! superposes cosines. This crate provides, at desk scale:
//!
//! - exact covariance and increment variance of `Y` on b-adic grids
//!   ([`gaussian`]), where the superposition terminates after finitely many
//!   terms and no truncation error exists;
//! - Riemann–Liouville fractional integrals of step functions and two-sided
//!   Hardy–Littlewood-type norm bounds for homogeneous indicator families
//!   ([`fraccalc`]);
//! - FFT-based path synthesis with reproducible per-path substreams
//!   ([`path`]);
//! - estimators for p-variation, roughness, Φ-variation, moduli of
//!   continuity, box dimension, and the argmax distribution ([`stats`]);
//! - a check runner with deterministic CSV/JSON artifacts and manifests
//!   ([`report`]).
//!
//! Run `cargo run --example tour` for a guided pass over the main surfaces,
//! or use the `wwb` binary for the command-line interface.

pub mod error;
pub mod fit;
pub mod fraccalc;
pub mod gaussian;
pub mod model;
pub mod path;
pub mod quad;
pub mod report;
pub mod stats;
pub mod step;

pub use error::{Result, WwbError};
pub use model::{derive_k, GridSpec, KappaSpec, ModelParams, Regime};
pub use step::StepFunction;
