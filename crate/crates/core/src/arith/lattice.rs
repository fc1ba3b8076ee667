//! Integer matrices and lattice bases.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::RationalMatrix;
use super::rational::Rational;
use crate::error::{Error, Result};

/// A dense `rows × cols` integer matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// The `s × m` matrix whose columns are `vectors`.
    pub fn from_columns(vectors: &[Vec<BigInt>]) -> Result<Self> {
        let s = vectors.first().map_or(0, Vec::len);
        if vectors.iter().any(|v| v.len() != s) {
            return Err(Error::Dimension("vectors of different lengths".into()));
        }
        let mut entries = Vec::with_capacity(s * vectors.len());
        for i in 0..s {
            entries.extend(vectors.iter().map(|v| v[i].clone()));
        }
        Self::new(s, vectors.len(), entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect(),
        )
        .expect("shape preserved")
    }

    pub fn determinant(&self) -> Result<BigInt> {
        Ok(self.to_rational().determinant()?.to_integer())
    }

    /// Integer coordinates of `v` in the columns of a square lower-triangular
    /// basis, or `None` when `v` is not in the lattice.
    pub fn lattice_coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let n = self.rows;
        if self.cols != n || v.len() != n {
            return None;
        }
        let mut residual = v.to_vec();
        let mut coords = vec![BigInt::zero(); n];
        for j in 0..n {
            let d = self.get(j, j);
            if d.is_zero() {
                return None;
            }
            let (q, r) = residual[j].div_rem(d);
            if !r.is_zero() {
                return None;
            }
            for (i, res) in residual.iter_mut().enumerate().skip(j) {
                *res -= &q * self.get(i, j);
            }
            coords[j] = q;
        }
        Some(coords)
    }
}

/// Basis (as columns) of the lattice generated over the integers by `vectors`.
///
/// Integer column operations bring the `s × m` matrix to column Hermite form:
/// lower triangular, positive diagonal, entries below the diagonal reduced
/// into `[0, d_ii)`. Unimodular column operations preserve the lattice.
pub fn lattice_basis(vectors: &[Vec<BigInt>]) -> Result<IntegerMatrix> {
    if vectors.is_empty() {
        return Err(Error::InvalidVectors("no vectors".into()));
    }
    let x = IntegerMatrix::from_columns(vectors)?;
    let (s, m) = (x.rows, x.cols);
    if s == 0 {
        return Err(Error::InvalidVectors("zero-dimensional vectors".into()));
    }
    let mut cols: Vec<Vec<BigInt>> = (0..m).map(|j| x.column(j)).collect();

    for r in 0..s {
        // Fold the gcd of row r over columns r.. into column r.
        for c in r + 1..m {
            if cols[c][r].is_zero() {
                continue;
            }
            if cols[r][r].is_zero() {
                cols.swap(r, c);
                continue;
            }
            let a = cols[r][r].clone();
            let b = cols[c][r].clone();
            let e = a.extended_gcd(&b);
            let (ua, ub) = (&a / &e.gcd, &b / &e.gcd);
            // [x y; -ub ua] has determinant x*ua + y*ub = 1.
            let new_r: Vec<BigInt> = (0..s)
                .map(|i| &e.x * &cols[r][i] + &e.y * &cols[c][i])
                .collect();
            let new_c: Vec<BigInt> = (0..s)
                .map(|i| &ua * &cols[c][i] - &ub * &cols[r][i])
                .collect();
            cols[r] = new_r;
            cols[c] = new_c;
        }
        if r >= m || cols[r][r].is_zero() {
            let rank = x.to_rational().rank();
            return Err(Error::RankDeficient { rank, dim: s });
        }
        if cols[r][r].is_negative() {
            for v in cols[r].iter_mut() {
                *v = -v.clone();
            }
        }
    }

    // Reduce below-diagonal entries modulo the diagonal, left of each pivot.
    for j in 1..s {
        for k in 0..j {
            let d = cols[j][j].clone();
            let q = cols[k][j].div_floor(&d);
            if !q.is_zero() {
                for i in 0..s {
                    let delta = &q * &cols[j][i];
                    cols[k][i] -= delta;
                }
            }
        }
    }

    let basis: Vec<Vec<BigInt>> = cols.into_iter().take(s).collect();
    IntegerMatrix::from_columns(&basis)
}
