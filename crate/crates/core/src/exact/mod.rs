//! Exact arithmetic: rationals, cyclotomic fields, rigorous intervals and
//! multi-modular certification.

pub mod ball;
pub mod cyclotomic;
pub mod field;
pub mod linalg;
pub mod rational;
pub mod slots;

pub use ball::{numeric_eval, Ball, ComplexBall};
pub use cyclotomic::{cyclo_inv, cyclo_mul, cyclo_reduce, two_i_sin, Cyclotomic, RootSum};
pub use rational::Rational;
