//! Box splines of integer vector configurations in one or two dimensions.
//!
//! For `X = (a_1, …, a_m) ⊂ Z^s` spanning `R^s`, the box spline `B_X` is the
//! density of the image of the uniform measure on `[0,1]^m` under
//! `t ↦ X·t`:
//!
//! ```text
//! ∫_{[0,1]^m} f(X t) dt = ∫_{R^s} B_X(x) f(x) dx
//! ```
//!
//! It is a piecewise polynomial of degree `m - s` supported on the zonotope
//! `Σ_X^{[0,1]}`. This module evaluates it exactly, enumerates the
//! semi-integral interior points `Ω`, and assembles the collocation matrix
//! `(A_X)_{ij} = B_X(Σ_X + ω_i - 2ω_j)` whose invertibility is in question.

mod conjecture;
mod eval;
mod omega;
mod zonotope;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{Rational, RationalMatrix};
use crate::error::{Error, Result};

pub use conjecture::{conjecture_matrix, conjecture_verdict, ConjectureVerdict};
pub use eval::{box_spline_eval, box_spline_eval_with, FiberFrame};
pub use omega::{semi_integral_interior_points, Omega};
pub use zonotope::{zonotope_support, Zonotope};

/// A spanning list of nonzero integer vectors in `Z^1` or `Z^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VectorConfig {
    dim: usize,
    vectors: Vec<Vec<i64>>,
}

impl VectorConfig {
    pub fn new(vectors: Vec<Vec<i64>>) -> Result<Self> {
        let dim = vectors
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidVectors("no vectors".into()))?;
        if !(1..=2).contains(&dim) {
            return Err(Error::InvalidVectors(format!(
                "ambient dimension {dim} (supported: 1 or 2)"
            )));
        }
        if vectors.iter().any(|v| v.len() != dim) {
            return Err(Error::InvalidVectors("vectors of different lengths".into()));
        }
        if vectors.iter().any(|v| v.iter().all(|&c| c == 0)) {
            return Err(Error::InvalidVectors("zero vector".into()));
        }
        let config = Self { dim, vectors };
        let rank = config.matrix().rank();
        if rank < dim {
            return Err(Error::RankDeficient { rank, dim });
        }
        Ok(config)
    }

    /// Ambient dimension `s`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of vectors `m`.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<i64>] {
        &self.vectors
    }

    /// Polynomial degree `m - s` of `B_X`.
    pub fn degree(&self) -> usize {
        self.len() - self.dim
    }

    /// The `s × m` matrix with the vectors as columns.
    pub fn matrix(&self) -> RationalMatrix {
        let mut x = RationalMatrix::zeros(self.dim, self.len());
        for (j, v) in self.vectors.iter().enumerate() {
            for (i, &c) in v.iter().enumerate() {
                x.set(i, j, Rational::from_integer(c.into()));
            }
        }
        x
    }

    pub fn big_vectors(&self) -> Vec<Vec<BigInt>> {
        self.vectors
            .iter()
            .map(|v| v.iter().map(|&c| BigInt::from(c)).collect())
            .collect()
    }

    /// `Σ_X^{1} = a_1 + … + a_m`, the centre shift in `A_X`.
    pub fn sum(&self) -> Vec<Rational> {
        (0..self.dim)
            .map(|i| Rational::from_integer(self.vectors.iter().map(|v| v[i]).sum::<i64>().into()))
            .collect()
    }

    /// The univariate configuration of `m + 1` ones, whose box spline is `B_m`.
    pub fn ones(m: usize) -> Self {
        Self::new(vec![vec![1]; m + 1]).expect("ones span R")
    }

    /// Every `s × s` minor has determinant in `{-1, 0, 1}`; otherwise the
    /// first offending minor (in lexicographic index order) is returned.
    pub fn unimodular_check(&self) -> Unimodularity {
        let minor = |idx: &[usize]| -> i64 {
            match idx {
                [i] => self.vectors[*i][0],
                [i, j] => {
                    let (a, b) = (&self.vectors[*i], &self.vectors[*j]);
                    a[0] * b[1] - a[1] * b[0]
                }
                _ => unreachable!("dimension is 1 or 2"),
            }
        };
        let subsets: Vec<Vec<usize>> = if self.dim == 1 {
            (0..self.len()).map(|i| vec![i]).collect()
        } else {
            (0..self.len())
                .flat_map(|i| (i + 1..self.len()).map(move |j| vec![i, j]))
                .collect()
        };
        let witness = subsets.into_iter().find_map(|idx| {
            let det = minor(&idx);
            (det.abs() > 1).then(|| MinorWitness {
                vectors: idx.iter().map(|&i| self.vectors[i].clone()).collect(),
                indices: idx,
                det,
            })
        });
        Unimodularity {
            unimodular: witness.is_none(),
            witness,
        }
    }
}

pub fn unimodular_check(x: &VectorConfig) -> Unimodularity {
    x.unimodular_check()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Unimodularity {
    pub unimodular: bool,
    pub witness: Option<MinorWitness>,
}

/// An `s × s` minor with `|det| > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinorWitness {
    pub indices: Vec<usize>,
    pub vectors: Vec<Vec<i64>>,
    pub det: i64,
}

impl FromStr for VectorConfig {
    type Err = Error;

    /// `"1,0;1,1;0,1"`: vectors separated by `;`, components by `,`.
    fn from_str(text: &str) -> Result<Self> {
        let vectors = text
            .split(';')
            .map(|v| {
                v.split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<i64>()
                            .map_err(|_| Error::Parse(format!("bad component {c:?} in {text:?}")))
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vectors)
    }
}

impl fmt::Display for VectorConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .vectors
            .iter()
            .map(|v| v.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// Parses `"x,y"` (or `"x"`) into a rational point.
pub fn parse_point(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(crate::arith::parse_rational).collect()
}
