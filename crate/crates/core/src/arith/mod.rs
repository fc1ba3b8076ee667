//! Exact scalars, dense matrices and integer lattices.
//!
//! Everything here is arbitrary precision; no fixed-width integer ever holds a
//! computed value.

mod lattice;
mod matrix;
mod rational;

pub use lattice::{lattice_basis, IntegerMatrix};
pub use matrix::RationalMatrix;
pub use rational::{denominator_lcm, format_rational, int, parse_rational, rat, serde_str, sign, Rational};
