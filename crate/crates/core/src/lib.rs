//! Exact modular data for affine sl2 WZW models and Virasoro minimal models.
//!
//! Every pass/fail decision in this crate is made with exact arithmetic:
//! rationals, cyclotomic fields, and integer-coefficient q-series. Floating
//! point appears only inside certified interval bounds and for display.
//!
//! - [`exact`]: rationals, cyclotomic numbers, interval balls and the
//!   multi-modular certifier used for large matrix identities.
//! - [`qseries`]: truncated q-series with integer or Laurent-polynomial
//!   coefficients.
//! - [`rcft`]: the theory-agnostic [`ModularData`] container with fusion,
//!   quantum dimensions and modular relation checks.
//! - [`wzw`] and [`minimal`]: the two families of theories.
//! - [`modinv`]: verification, commutant solving and enumeration of
//!   modular invariants, with ADE templates.
//! - [`coset`]: GKO branching rules, extension catalog and the
//!   classification decision procedures.

#![allow(clippy::needless_range_loop)]

pub mod coset;
pub mod error;
pub mod exact;
pub mod minimal;
pub mod modinv;
pub mod par;
pub mod qseries;
pub mod rcft;
pub mod wzw;

pub use error::{Error, Result};
pub use exact::{Cyclotomic, Rational};
pub use par::Exec;
pub use rcft::{Label, ModularData, TheoryId};

/// Bumped whenever cached artifacts change shape.
pub const ARTIFACT_VERSION: &str = concat!("cftkit-", env!("CARGO_PKG_VERSION"), "-1");
