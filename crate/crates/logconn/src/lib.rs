//! Exact construction and verification of a universal family of logarithmic
//! rank-2 connections on the elliptic curve y² = x(x−1)(x−λ) with two poles.

// Matrix code indexes several arrays with one loop variable.
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod config;
pub mod connection;
pub mod curve;
pub mod exact;
pub mod family;
pub mod maps;
pub mod parabolic;
pub mod report;
pub mod samples;
pub mod suite;
pub mod symplectic;

pub use error::{Error, Result};

/// Rational scalars.
pub type Q = exact::Q;
/// ℚ(ε), the one-parameter field used for chart-regularity limits.
pub type QEps = exact::QEps;
