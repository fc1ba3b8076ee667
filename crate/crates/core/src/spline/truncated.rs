//! Splines from the truncated-power form `p(x) + Σ c_i (x - α_i)_+^m`.
//!
//! Each term `(x - α)_+^m` is `C^{m-1}` with a jump only in the `m`-th
//! derivative, so the sum is a degree-`m` spline by construction.

use super::Spline;
use crate::arith::{format_rational, Rational};
use crate::error::{Error, Result};
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedPowerSpec {
    /// The polynomial to the left of every jump.
    pub base: Polynomial,
    /// `(α_i, c_i)` with strictly increasing `α_i` inside `[left, right]`.
    pub jumps: Vec<(Rational, Rational)>,
    /// Outermost knots of the resulting spline.
    pub left: Rational,
    pub right: Rational,
}

/// Builds the spline, re-verifies smoothness, and drops interior knots whose
/// jump coefficient is zero.
pub fn spline_from_truncated_powers(spec: &TruncatedPowerSpec, m: usize) -> Result<Spline> {
    if m == 0 {
        return Err(Error::Degree("truncated powers need degree at least 1".into()));
    }
    if let Some(d) = spec.base.degree().filter(|&d| d > m) {
        return Err(Error::PieceDegree {
            piece: 0,
            degree: m,
            found: d,
        });
    }
    if spec.left >= spec.right || spec.jumps.windows(2).any(|w| w[0].0 >= w[1].0) {
        return Err(Error::KnotOrder);
    }
    if let Some((a, _)) = spec
        .jumps
        .iter()
        .find(|(a, _)| *a < spec.left || *a > spec.right)
    {
        return Err(Error::OutOfRange(format_rational(a)));
    }

    let mut knots: Vec<Rational> = spec.jumps.iter().map(|(a, _)| a.clone()).collect();
    knots.push(spec.left.clone());
    knots.push(spec.right.clone());
    knots.sort();
    knots.dedup();

    let mut pieces = Vec::with_capacity(knots.len() + 1);
    let mut current = spec.base.clone();
    pieces.push(current.clone());
    let mut jumps = spec.jumps.iter().peekable();
    for k in &knots {
        if let Some((_, c)) = jumps.next_if(|(a, _)| a == k) {
            current = &current + &Polynomial::linear_power(k, m).scale(c);
        }
        pieces.push(current.clone());
    }
    Ok(Spline::new(m, knots, pieces)?.normalize())
}
