//! Finite-knot univariate splines with exactly certified smoothness.
//!
//! A [`Spline`] of degree `m` has knots `α_0 < … < α_n` and one polynomial
//! piece per domain, including the two unbounded end domains:
//!
//! ```text
//! piece 0        piece 1         …   piece n          piece n+1
//! (-∞, α_0]      [α_0, α_1]      …   [α_{n-1}, α_n]   [α_n, ∞)
//! ```
//!
//! Construction checks that adjacent pieces agree with their first `m - 1`
//! derivatives at every knot, so every value of this type is `C^{m-1}`.

mod census;
mod checks;
mod document;
mod truncated;

use crate::arith::{format_rational, Rational};
use crate::error::{Error, Result};
use crate::poly::Polynomial;

pub use census::{separated_zero_count, zero_order_at, DomainCensus, ZeroOrder, ZeroReport};
pub use checks::{
    check_corollary10, check_prop5, check_theorem_and_corollary10, check_theorem_bound,
    Corollary10Verdict, Prop5Verdict,
    TheoremVerdict,
};
pub use document::SplineDocument;
pub use truncated::{spline_from_truncated_powers, TruncatedPowerSpec};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Spline {
    degree: usize,
    knots: Vec<Rational>,
    pieces: Vec<Polynomial>,
}

impl Spline {
    /// Validates shape, piece degrees and `C^{m-1}` smoothness.
    ///
    /// Degree zero is rejected: piecewise constants only arise as derivatives
    /// of degree-one splines (see [`Spline::derivative`]).
    pub fn new(degree: usize, knots: Vec<Rational>, pieces: Vec<Polynomial>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Degree("splines of degree 0 cannot be constructed".into()));
        }
        Self::build(degree, knots, pieces)
    }

    fn build(degree: usize, knots: Vec<Rational>, pieces: Vec<Polynomial>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::TooFewKnots(knots.len()));
        }
        if knots.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::KnotOrder);
        }
        if pieces.len() != knots.len() + 1 {
            return Err(Error::PieceCount {
                knots: knots.len(),
                expected: knots.len() + 1,
                found: pieces.len(),
            });
        }
        for (i, p) in pieces.iter().enumerate() {
            if let Some(d) = p.degree().filter(|&d| d > degree) {
                return Err(Error::PieceDegree {
                    piece: i,
                    degree,
                    found: d,
                });
            }
        }
        let s = Self {
            degree,
            knots,
            pieces,
        };
        s.verify_smoothness()?;
        Ok(s)
    }

    /// Re-checks `p_L^{(j)}(α) = p_R^{(j)}(α)` for `j < m` at every knot.
    pub fn verify_smoothness(&self) -> Result<()> {
        for (i, knot) in self.knots.iter().enumerate() {
            let mut left = self.pieces[i].clone();
            let mut right = self.pieces[i + 1].clone();
            for j in 0..self.degree {
                if left.eval(knot) != right.eval(knot) {
                    return Err(Error::NotSmooth {
                        knot: format_rational(knot),
                        order: self.degree - 1,
                        derivative: j,
                    });
                }
                left = left.derivative();
                right = right.derivative();
            }
        }
        Ok(())
    }

    /// A single polynomial of degree at most `degree` viewed as a spline on
    /// `[left, right]`.
    pub fn polynomial(degree: usize, p: Polynomial, left: Rational, right: Rational) -> Result<Self> {
        Self::new(degree, vec![left, right], vec![p; 3])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn knots(&self) -> &[Rational] {
        &self.knots
    }

    pub fn pieces(&self) -> &[Polynomial] {
        &self.pieces
    }

    /// The `n` of knots `α_0 < … < α_n`.
    pub fn n(&self) -> usize {
        self.knots.len() - 1
    }

    pub fn first_knot(&self) -> &Rational {
        &self.knots[0]
    }

    pub fn last_knot(&self) -> &Rational {
        self.knots.last().expect("at least two knots")
    }

    /// Pieces on the bounded domains `[α_{j-1}, α_j]`, `j = 1..=n`.
    pub fn interior_pieces(&self) -> &[Polynomial] {
        &self.pieces[1..self.pieces.len() - 1]
    }

    pub fn knot_index(&self, x: &Rational) -> Option<usize> {
        self.knots.binary_search(x).ok()
    }

    /// Index of a piece whose closed domain contains `x` (the right one at a knot).
    pub fn piece_index(&self, x: &Rational) -> usize {
        self.knots.partition_point(|k| k <= x)
    }

    /// `s(x)`. At a knot both adjacent pieces agree when the degree is at least one.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.pieces[self.piece_index(x)].eval(x)
    }

    /// Piecewise derivative, of degree `m - 1`, with knots that became
    /// removable dropped.
    ///
    /// The derivative of a degree-one spline is a piecewise constant with no
    /// smoothness; it can be evaluated and counted but not differentiated again.
    pub fn derivative(&self) -> Result<Spline> {
        if self.degree == 0 {
            return Err(Error::Degree(
                "piecewise constant splines cannot be differentiated".into(),
            ));
        }
        let pieces = self.pieces.iter().map(Polynomial::derivative).collect();
        Ok(Self::build(self.degree - 1, self.knots.clone(), pieces)?.normalize())
    }

    /// Whether adjacent pieces differ at knot `i`, i.e. the spline is not
    /// polynomial across it.
    pub fn is_genuine_knot(&self, i: usize) -> bool {
        self.pieces[i] != self.pieces[i + 1]
    }

    /// Number of interior knots that do not change the polynomial.
    pub fn synthetic_knot_count(&self) -> usize {
        (1..self.knots.len() - 1)
            .filter(|&i| !self.is_genuine_knot(i))
            .count()
    }

    /// Drops interior knots across which the spline is a single polynomial.
    ///
    /// The outermost knots always stay: they delimit the interval the
    /// zero-counting theorems talk about.
    pub fn normalize(&self) -> Spline {
        let last = self.knots.len() - 1;
        let mut knots = Vec::with_capacity(self.knots.len());
        let mut pieces = vec![self.pieces[0].clone()];
        for (i, k) in self.knots.iter().enumerate() {
            if i == 0 || i == last || self.is_genuine_knot(i) {
                knots.push(k.clone());
                pieces.push(self.pieces[i + 1].clone());
            }
        }
        Self {
            degree: self.degree,
            knots,
            pieces,
        }
    }

    /// Adds a synthetic knot at `x`; the function is unchanged.
    pub fn insert_knot(&self, x: &Rational) -> Result<Spline> {
        if x <= self.first_knot() || x >= self.last_knot() {
            return Err(Error::OutOfRange(format_rational(x)));
        }
        if self.knot_index(x).is_some() {
            return Err(Error::KnotExists(format_rational(x)));
        }
        let i = self.piece_index(x);
        let mut knots = self.knots.clone();
        let mut pieces = self.pieces.clone();
        knots.insert(i, x.clone());
        pieces.insert(i, self.pieces[i].clone());
        Ok(Self {
            degree: self.degree,
            knots,
            pieces,
        })
    }

    /// `x ↦ s(x - shift)`.
    pub fn translate(&self, shift: &Rational) -> Spline {
        Self {
            degree: self.degree,
            knots: self.knots.iter().map(|k| k + shift).collect(),
            pieces: self.pieces.iter().map(|p| p.translate(shift)).collect(),
        }
    }

    /// `x ↦ s(-x)`.
    pub fn reflect(&self) -> Spline {
        Self {
            degree: self.degree,
            knots: self.knots.iter().rev().map(|k| -k.clone()).collect(),
            pieces: self.pieces.iter().rev().map(Polynomial::reflect).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Spline {
        Self {
            degree: self.degree,
            knots: self.knots.clone(),
            pieces: self.pieces.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Pointwise sum over the union of both knot sets. Degrees must match.
    pub fn add(&self, other: &Spline) -> Result<Spline> {
        if self.degree != other.degree {
            return Err(Error::Degree(format!(
                "cannot add splines of degree {} and {}",
                self.degree, other.degree
            )));
        }
        let mut knots: Vec<Rational> = self.knots.iter().chain(&other.knots).cloned().collect();
        knots.sort();
        knots.dedup();
        let pieces = domain_samples(&knots)
            .iter()
            .map(|x| {
                &self.pieces[self.piece_index(x)] + &other.pieces[other.piece_index(x)]
            })
            .collect();
        Self::build(self.degree, knots, pieces)
    }

    /// Whether every piece on `[α_0, α_n]` is the zero polynomial.
    pub fn is_zero_on_span(&self) -> bool {
        self.interior_pieces().iter().all(Polynomial::is_zero)
    }

    /// Compares the functions on the whole real line: same degree, and equal
    /// after normalization.
    pub fn same_function(&self, other: &Spline) -> bool {
        let (a, b) = (self.normalize(), other.normalize());
        if a.degree != b.degree {
            return false;
        }
        let mut knots: Vec<Rational> = a.knots.iter().chain(&b.knots).cloned().collect();
        knots.sort();
        knots.dedup();
        domain_samples(&knots).iter().all(|x| {
            a.pieces[a.piece_index(x)] == b.pieces[b.piece_index(x)]
        })
    }
}

/// One sample point strictly inside each domain determined by `knots`.
pub(crate) fn domain_samples(knots: &[Rational]) -> Vec<Rational> {
    let one = Rational::from_integer(1.into());
    let two = Rational::from_integer(2.into());
    let mut out = Vec::with_capacity(knots.len() + 1);
    out.push(&knots[0] - &one);
    for w in knots.windows(2) {
        out.push((&w[0] + &w[1]) / &two);
    }
    out.push(knots.last().expect("nonempty") + &one);
    out
}
