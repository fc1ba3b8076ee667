//! Dense exact matrices over [`Rational`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{denominator_lcm, format_rational, Rational};
use crate::error::{Error, Result};

/// A dense `rows × cols` matrix of rationals stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
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

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from equally long rows.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(n_rows, n_cols, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * rhs.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if self.cols != v.len() {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    ///
    /// Each row is first scaled by the lcm of its denominators, so elimination
    /// runs entirely over integers; every Bareiss division is exact.
    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let row = self.row(i);
                let l = denominator_lcm(row);
                let out = row
                    .iter()
                    .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
                    .collect();
                scale *= l;
                out
            })
            .collect();

        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        negate = !negate;
                    }
                    None => return Ok(Rational::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let mut det = Rational::new(a[n - 1][n - 1].clone(), scale);
        if negate {
            det = -det;
        }
        Ok(det)
    }

    /// Solves `A x = b` exactly by Gaussian elimination, then re-checks
    /// `A x = b` before returning.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "solve needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if b.len() != n {
            return Err(Error::Dimension(format!(
                "right-hand side has length {}, expected {n}",
                b.len()
            )));
        }
        let mut a = self.to_rows();
        let mut rhs = b.to_vec();
        for k in 0..n {
            let pivot = (k..n).find(|&r| !a[r][k].is_zero()).ok_or(Error::Singular)?;
            a.swap(k, pivot);
            rhs.swap(k, pivot);
            let inv = a[k][k].recip();
            for j in k..n {
                a[k][j] *= &inv;
            }
            rhs[k] *= &inv;
            for i in 0..n {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let factor = a[i][k].clone();
                for j in k..n {
                    let delta = &factor * &a[k][j];
                    a[i][j] -= delta;
                }
                let delta = &factor * &rhs[k];
                rhs[i] -= delta;
            }
        }
        if self.mul_vec(&rhs)? != b {
            return Err(Error::Invariant("solution failed back-substitution".into()));
        }
        Ok(rhs)
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut a = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].recip();
            for x in a[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..self.rows {
                if i != r && !a[i][c].is_zero() {
                    let factor = a[i][c].clone();
                    for j in 0..self.cols {
                        let delta = &factor * &a[r][j];
                        a[i][j] -= delta;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let m = RationalMatrix::from_rows(a).expect("shape preserved");
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, free).clone();
                }
                v
            })
            .collect()
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(format_rational).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(0);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};
    use proptest::prelude::*;

    /// Laplace expansion along the first row; the independent oracle.
    pub(crate) fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
        let n = m.len();
        if n == 0 {
            return Rational::one();
        }
        let mut acc = Rational::zero();
        for j in 0..n {
            let minor: Vec<Vec<Rational>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * cofactor_det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn from_ints(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn hilbert(n: usize) -> RationalMatrix {
        RationalMatrix::from_rows(
            (1..=n)
                .map(|i| (1..=n).map(|j| rat(1, (i + j - 1) as i64)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(RationalMatrix::identity(3).determinant().unwrap(), int(1));
        assert_eq!(from_ints(&[&[2, 1], &[1, 2]]).determinant().unwrap(), int(3));
        let h = hilbert(3);
        // Frozen from the cofactor oracle.
        assert_eq!(cofactor_det(&h.to_rows()), rat(1, 2160));
        assert_eq!(h.determinant().unwrap(), rat(1, 2160));
    }

    #[test]
    fn determinant_needs_pivoting() {
        let m = from_ints(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        assert_eq!(m.determinant().unwrap(), cofactor_det(&m.to_rows()));
        assert_eq!(m.determinant().unwrap(), int(-2));
        let singular = from_ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.determinant().unwrap(), int(0));
    }

    #[test]
    fn determinant_rejects_non_square() {
        let m = RationalMatrix::zeros(2, 3);
        assert!(matches!(m.determinant(), Err(Error::Dimension(_))));
        assert!(RationalMatrix::new(2, 2, vec![int(1)]).is_err());
    }

    #[test]
    fn solve_examples() {
        let x = RationalMatrix::identity(2)
            .solve(&[rat(1, 2), int(3)])
            .unwrap();
        assert_eq!(x, vec![rat(1, 2), int(3)]);
        let x = from_ints(&[&[2, 0], &[0, 4]])
            .solve(&[int(1), int(1)])
            .unwrap();
        assert_eq!(x, vec![rat(1, 2), rat(1, 4)]);
        let x = from_ints(&[&[1, 1], &[1, 2]])
            .solve(&[int(3), int(5)])
            .unwrap();
        assert_eq!(x, vec![int(1), int(2)]);
    }

    #[test]
    fn solve_errors_are_distinct() {
        let singular = from_ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.solve(&[int(1), int(1)]), Err(Error::Singular));
        let rect = RationalMatrix::zeros(2, 3);
        assert!(matches!(rect.solve(&[int(1), int(1)]), Err(Error::Dimension(_))));
    }

    #[test]
    fn nullspace_of_a2() {
        let x = from_ints(&[&[1, 1, 0], &[0, 1, 1]]);
        let ns = x.nullspace();
        assert_eq!(ns, vec![vec![int(1), int(-1), int(1)]]);
        assert_eq!(x.rank(), 2);
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = RationalMatrix> {
        proptest::collection::vec(-5i64..=5, n * n).prop_map(move |v| {
            RationalMatrix::new(n, n, v.into_iter().map(int).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor(n in 1usize..=5, seed in proptest::collection::vec(-5i64..=5, 25)) {
            let m = RationalMatrix::new(n, n, seed[..n * n].iter().map(|&x| int(x)).collect()).unwrap();
            prop_assert_eq!(m.determinant().unwrap(), cofactor_det(&m.to_rows()));
        }

        #[test]
        fn determinant_is_multiplicative(a in small_matrix(4), b in small_matrix(4)) {
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(ab.determinant().unwrap(), a.determinant().unwrap() * b.determinant().unwrap());
        }

        #[test]
        fn solve_satisfies_system(a in small_matrix(3), b in proptest::collection::vec(-9i64..=9, 3)) {
            let b: Vec<Rational> = b.into_iter().map(int).collect();
            match a.solve(&b) {
                Ok(x) => prop_assert_eq!(a.mul_vec(&x).unwrap(), b),
                Err(e) => {
                    prop_assert_eq!(e, Error::Singular);
                    prop_assert!(a.determinant().unwrap().is_zero());
                }
            }
        }
    }
}
