//! Cardinal B-splines and compactly supported extensions.
//!
//! `B_m` is the degree-`m` spline with knots `0, 1, …, m + 1`, supported on
//! `[0, m + 1]` and positive inside. It is built from the truncated-power
//! formula
//!
//! ```text
//! B_m(x) = 1/m! · Σ_{k=0}^{m+1} (-1)^k C(m+1, k) (x - k)_+^m
//! ```
//!
//! and cross-checked against the convolution recurrence
//! `B_m(x) = ∫_{x-1}^{x} B_{m-1}(t) dt` on every construction.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{format_rational, Rational, RationalMatrix};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::spline::{spline_from_truncated_powers, Spline, TruncatedPowerSpec};

pub const MAX_BSPLINE_DEGREE: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CardinalBSpline {
    m: usize,
    spline: Spline,
}

impl CardinalBSpline {
    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn spline(&self) -> &Spline {
        &self.spline
    }

    pub fn into_spline(self) -> Spline {
        self.spline
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.spline.eval(x)
    }

    /// The polynomial on `[k, k + 1]`, for `k = 0..=m`.
    pub fn piece(&self, k: usize) -> &Polynomial {
        &self.spline.pieces()[k + 1]
    }
}

fn check_degree(m: usize) -> Result<()> {
    if !(1..=MAX_BSPLINE_DEGREE).contains(&m) {
        return Err(Error::OutOfRange(format!(
            "B-spline degree {m} (supported: 1..={MAX_BSPLINE_DEGREE})"
        )));
    }
    Ok(())
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `B_m` for `1 ≤ m ≤ 12`. Each degree is built and cross-checked once per
/// process, then cloned.
pub fn cardinal_bspline(m: usize) -> Result<CardinalBSpline> {
    static CACHE: [OnceLock<Result<CardinalBSpline>>; MAX_BSPLINE_DEGREE + 1] =
        [const { OnceLock::new() }; MAX_BSPLINE_DEGREE + 1];
    check_degree(m)?;
    CACHE[m].get_or_init(|| build_cardinal_bspline(m)).clone()
}

fn build_cardinal_bspline(m: usize) -> Result<CardinalBSpline> {
    let fact = Rational::from_integer(factorial(m));
    let jumps = (0..=m + 1)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let c = Rational::from_integer(binomial(m + 1, k) * sign) / &fact;
            (Rational::from_integer(k.into()), c)
        })
        .collect();
    let spec = TruncatedPowerSpec {
        base: Polynomial::zero(),
        jumps,
        left: Rational::zero(),
        right: Rational::from_integer((m + 1).into()),
    };
    let spline = spline_from_truncated_powers(&spec, m)?;
    if spline.knots().len() != m + 2 || !spline.pieces().last().is_some_and(Polynomial::is_zero) {
        return Err(Error::Invariant(format!(
            "truncated-power B_{m} is not supported on [0, {}]",
            m + 1
        )));
    }
    if spline != cardinal_bspline_by_convolution(m)? {
        return Err(Error::Invariant(format!(
            "truncated-power and convolution constructions of B_{m} differ"
        )));
    }
    Ok(CardinalBSpline { m, spline })
}

/// `B_m` from the recurrence `B_m(x) = ∫_{x-1}^{x} B_{m-1}(t) dt`, starting
/// at the indicator of `[0, 1)`.
///
/// On `[k, k+1]` the integral splits at `k`: with `A_j` an antiderivative of
/// the piece of `B_{m-1}` on `[j, j+1]`,
/// `B_m(x) = A_{k-1}(k) - A_{k-1}(x-1) + A_k(x) - A_k(k)`.
pub fn cardinal_bspline_by_convolution(m: usize) -> Result<Spline> {
    check_degree(m)?;
    let mut pieces = vec![Polynomial::one()];
    for d in 1..=m {
        let anti: Vec<Polynomial> = pieces
            .iter()
            .map(|p| p.antiderivative(Rational::zero()))
            .collect();
        let one = Rational::one();
        pieces = (0..=d)
            .map(|k| {
                let at_k = Rational::from_integer(k.into());
                let mut piece = Polynomial::zero();
                if let Some(prev) = k.checked_sub(1).and_then(|j| anti.get(j)) {
                    piece = &piece + &Polynomial::constant(prev.eval(&at_k));
                    piece = &piece - &prev.translate(&one);
                }
                if let Some(cur) = anti.get(k) {
                    piece = &piece + cur;
                    piece = &piece - &Polynomial::constant(cur.eval(&at_k));
                }
                piece
            })
            .collect();
    }
    let knots = (0..=m + 1).map(|k| Rational::from_integer(k.into())).collect();
    let mut all = Vec::with_capacity(m + 3);
    all.push(Polynomial::zero());
    all.extend(pieces);
    all.push(Polynomial::zero());
    Spline::new(m, knots, all)
}

/// `T_λ s : x ↦ s(x - λ)`.
pub fn translate(s: &Spline, shift: &Rational) -> Spline {
    s.translate(shift)
}

/// `Σ d_j · T_{λ_j} B_m` for `terms = [(λ_j, d_j)]` with distinct shifts.
pub fn bspline_combination(m: usize, terms: &[(Rational, Rational)]) -> Result<Spline> {
    if terms.is_empty() {
        return Err(Error::Dimension("empty B-spline combination".into()));
    }
    let mut shifts: Vec<&Rational> = terms.iter().map(|(s, _)| s).collect();
    shifts.sort();
    if let Some(w) = shifts.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateShift(format_rational(w[0])));
    }
    let b = cardinal_bspline(m)?;
    let mut acc: Option<Spline> = None;
    for (shift, coeff) in terms {
        let term = b.spline().translate(shift).scale(coeff);
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term)?,
        });
    }
    Ok(acc.expect("nonempty").normalize())
}

/// The `m` pieces on `[α_0 - m, α_0]` of the combination of translated
/// B-splines that matches the first bounded piece of `s`.
fn left_extension(s: &Spline) -> Result<Vec<Polynomial>> {
    let m = s.degree();
    let a = s.first_knot().clone();
    let target = &s.pieces()[1];
    let b = cardinal_bspline(m)?;

    // T_{a+j} B_m restricted to [a, a+1] is piece -j of B_m shifted by a + j.
    let shifts: Vec<Rational> = (0..=m)
        .map(|i| &a - Rational::from_integer(i.into()))
        .collect();
    let basis: Vec<Polynomial> = (0..=m).map(|i| b.piece(i).translate(&shifts[i])).collect();
    let mut columns = RationalMatrix::zeros(m + 1, m + 1);
    for (j, q) in basis.iter().enumerate() {
        for k in 0..=m {
            columns.set(k, j, q.coeff(k));
        }
    }
    let rhs: Vec<Rational> = (0..=m).map(|k| target.coeff(k)).collect();
    let lambdas = columns.solve(&rhs).map_err(|e| {
        Error::Invariant(format!(
            "translated B-splines on one interval must be independent: {e}"
        ))
    })?;

    let terms: Vec<(Rational, Rational)> = shifts.into_iter().zip(lambdas).collect();
    let glued = bspline_combination(m, &terms)?;
    let half = Rational::new(1.into(), 2.into());
    if glued.pieces()[glued.piece_index(&(&a + &half))] != *target {
        return Err(Error::Invariant("extension does not match the first piece".into()));
    }
    Ok((1..=m)
        .rev()
        .map(|i| {
            let mid = &a - Rational::from_integer(i.into()) + &half;
            glued.pieces()[glued.piece_index(&mid)].clone()
        })
        .collect())
}

/// A compactly supported spline equal to `s` on `[α_0, α_n]`, vanishing
/// outside `[α_0 - m, α_n + m]`, with knots among
/// `α_0 - m, …, α_0 - 1, α_0, …, α_n, α_n + 1, …, α_n + m`.
///
/// The left tail is the combination `Σ_{j=-m}^{0} λ_j T_{α_0 + j} B_m`
/// that reproduces the first piece of `s`; the right tail is the left tail
/// of the reflected spline, reflected back.
pub fn extend_compact(s: &Spline) -> Result<Spline> {
    let m = s.degree();
    if m == 0 {
        return Err(Error::Degree("cannot extend a piecewise constant".into()));
    }
    let left = left_extension(s)?;
    let right: Vec<Polynomial> = left_extension(&s.reflect())?
        .iter()
        .rev()
        .map(Polynomial::reflect)
        .collect();

    let a = s.first_knot();
    let b = s.last_knot();
    let mut knots: Vec<Rational> = (1..=m)
        .rev()
        .map(|i| a - Rational::from_integer(i.into()))
        .collect();
    knots.extend(s.knots().iter().cloned());
    knots.extend((1..=m).map(|i| b + Rational::from_integer(i.into())));

    let mut pieces = vec![Polynomial::zero()];
    pieces.extend(left);
    pieces.extend(s.interior_pieces().iter().cloned());
    pieces.extend(right);
    pieces.push(Polynomial::zero());

    let extended = Spline::new(m, knots, pieces)
        .map_err(|e| Error::Invariant(format!("glued extension is not a spline: {e}")))?;
    Ok(extended.normalize())
}
