//! Exact zero counting for univariate splines.
//!
//! The crate computes, without any floating point, the number `Z(s)` of
//! separated zeros of a spline `s` of degree `m` with knots `α_0 < … < α_n`,
//! and checks it against the bound `Z(s) ≤ n + m - 1`. Around that core it
//! provides cardinal B-splines, compactly supported extensions, and box-spline
//! collocation matrices `A_X` with exact determinants.
//!
//! Modules, bottom-up:
//!
//! * [`arith`]: rationals, dense matrices, integer lattices.
//! * [`poly`]: polynomials and Sturm-sequence root counting.
//! * [`spline`]: the [`Spline`] type, the zero census and the bound checkers.
//! * [`bspline`]: `B_m`, translates, combinations, compact extension.
//! * [`boxspline`]: vector configurations, zonotopes, `Ω`, `B_X`, `A_X`.
//! * [`harness`]: seeded random splines and verification suites.

pub mod arith;
pub mod boxspline;
pub mod bspline;
pub mod error;
pub mod harness;
pub mod poly;
pub mod spline;

pub use arith::{parse_rational, Rational, RationalMatrix};
pub use error::{Error, Result};
pub use poly::Polynomial;
pub use spline::Spline;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/arithmetic.md")]
    mod arithmetic {}
    #[doc = include_str!("../../../book/src/zeros.md")]
    mod zeros {}
    #[doc = include_str!("../../../book/src/bsplines.md")]
    mod bsplines {}
    #[doc = include_str!("../../../book/src/boxsplines.md")]
    mod boxsplines {}
    #[doc = include_str!("../../../book/src/harness.md")]
    mod harness {}
}
