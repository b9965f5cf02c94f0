//! Truncated q-series with a rational leading exponent and integer or
//! Laurent-polynomial coefficients.

mod laurent;
mod series;

pub use laurent::LaurentPoly;
pub use series::{
    euler_phi_inverse, euler_product, series_inv, series_mul, Coeff, Int, IntSeries, LaurentSeries,
    PuiseuxSeries,
};

/// Truncation order used when a caller does not choose one.
pub const DEFAULT_ORDER: usize = 20;
