//! The collocation matrix `(A_X)_{ij} = B_X(Σ_X + ω_i - 2ω_j)` over `Ω`.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::eval::{box_spline_eval, box_spline_eval_with, FiberFrame};
use super::omega::{semi_integral_interior_points, Omega};
use super::{Unimodularity, VectorConfig};
use crate::arith::{format_rational, Rational, RationalMatrix};
use crate::error::Result;

pub fn conjecture_matrix(x: &VectorConfig) -> Result<RationalMatrix> {
    let omega = semi_integral_interior_points(x)?;
    matrix_over(x, &omega)
}

fn matrix_over(x: &VectorConfig, omega: &Omega) -> Result<RationalMatrix> {
    let n = omega.len();
    let sum = x.sum();
    let frame = if x.degree() <= 2 {
        Some(FiberFrame::standard(x)?)
    } else {
        None
    };
    let two = Rational::from_integer(2.into());
    let entries: Vec<Rational> = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (wi, wj) = (&omega.points[k / n], &omega.points[k % n]);
            let p: Vec<Rational> = (0..x.dim()).map(|c| &sum[c] + &wi[c] - &two * &wj[c]).collect();
            match &frame {
                Some(f) => box_spline_eval_with(x, f, &p),
                None => box_spline_eval(x, &p),
            }
        })
        .collect::<Result<_>>()?;
    RationalMatrix::new(n, n, entries)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureVerdict {
    pub vectors: VectorConfig,
    pub unimodularity: Unimodularity,
    pub omega: Omega,
    pub matrix: RationalMatrix,
    pub determinant: Rational,
    pub invertible: bool,
    /// `Ω` is empty; the matrix is `0 × 0` with determinant 1.
    pub vacuous: bool,
}

pub fn conjecture_verdict(x: &VectorConfig) -> Result<ConjectureVerdict> {
    let omega = semi_integral_interior_points(x)?;
    let matrix = matrix_over(x, &omega)?;
    let determinant = if omega.is_empty() {
        Rational::one()
    } else {
        matrix.determinant()?
    };
    Ok(ConjectureVerdict {
        vectors: x.clone(),
        unimodularity: x.unimodular_check(),
        vacuous: omega.is_empty(),
        invertible: !determinant.is_zero(),
        omega,
        matrix,
        determinant,
    })
}

impl ConjectureVerdict {
    /// JSON form with every rational as a `"p/q"` string.
    pub fn to_json(&self) -> Value {
        let rat_vec = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
        json!({
            "vectors": self.vectors.vectors(),
            "unimodular": self.unimodularity.unimodular,
            "witness": self.unimodularity.witness,
            "omega": self.omega.points.iter().map(|p| rat_vec(p)).collect::<Vec<_>>(),
            "proper_sublattice": self.omega.proper_sublattice,
            "matrix": self.matrix.to_rows().iter().map(|r| rat_vec(r)).collect::<Vec<_>>(),
            "determinant": format_rational(&self.determinant),
            "invertible": self.invertible,
            "vacuous": self.vacuous,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::boxspline::tests::{a2, b2};
    use crate::bspline::cardinal_bspline;

    #[test]
    fn x1_by_hand() {
        // Ω = {1/2, 1, 3/2}, Σ = 2, entries are hat values at 2 + ω_i - 2ω_j.
        let expect = RationalMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 2), int(0)],
            vec![int(0), int(1), int(0)],
            vec![int(0), rat(1, 2), rat(1, 2)],
        ])
        .unwrap();
        let verdict = conjecture_verdict(&VectorConfig::ones(1)).unwrap();
        assert_eq!(verdict.matrix, expect);
        assert_eq!(verdict.determinant, rat(1, 4));
    }

    #[test]
    fn a2_determinant() {
        let verdict = conjecture_verdict(&a2()).unwrap();
        assert_eq!(verdict.omega.len(), 7);
        assert!(verdict.unimodularity.unimodular);
        assert_eq!(verdict.determinant, rat(1, 64));
        assert!(verdict.invertible);
    }

    #[test]
    fn b2_is_singular() {
        let verdict = conjecture_verdict(&b2()).unwrap();
        assert!(!verdict.unimodularity.unimodular);
        assert_eq!(verdict.determinant, int(0));
        assert!(!verdict.invertible);
        assert!(!verdict.vacuous);
    }

    #[test]
    fn univariate_family_is_invertible() {
        for m in 1..=6 {
            let verdict = conjecture_verdict(&VectorConfig::ones(m)).unwrap();
            assert_eq!(verdict.omega.len(), 2 * m + 1);
            assert!(verdict.invertible, "m = {m}");
        }
    }

    /// `A_{X_m}` is the collocation matrix of `B_m(· + Σ - 2ω_j)` at `Ω`.
    #[test]
    fn univariate_matrix_is_collocation() {
        for m in 1..=4 {
            let x = VectorConfig::ones(m);
            let a = conjecture_matrix(&x).unwrap();
            let omega = semi_integral_interior_points(&x).unwrap();
            let b = cardinal_bspline(m).unwrap();
            let sum = int(m as i64 + 1);
            for (i, wi) in omega.points.iter().enumerate() {
                for (j, wj) in omega.points.iter().enumerate() {
                    let t = &sum + &wi[0] - int(2) * &wj[0];
                    assert_eq!(a.get(i, j), &b.eval(&t));
                }
            }
        }
    }

    /// `Σ/2` is the centre of the zonotope and lies in `½Σ_X^Z`, so `Ω` is
    /// never empty for a spanning configuration.
    #[test]
    fn centre_is_in_omega() {
        for text in ["1", "2", "1,0;0,1", "2,1;1,3", "1,0;1,1;0,1;-1,1"] {
            let x: VectorConfig = text.parse().unwrap();
            let verdict = conjecture_verdict(&x).unwrap();
            let half: Vec<Rational> = x.sum().iter().map(|c| c / int(2)).collect();
            assert!(verdict.omega.points.contains(&half), "{text}");
            assert!(!verdict.vacuous);
        }
    }

    #[test]
    fn json_shape() {
        let v = conjecture_verdict(&VectorConfig::ones(1)).unwrap().to_json();
        assert_eq!(v["determinant"], "1/4");
        assert_eq!(v["omega"][0][0], "1/2");
        assert_eq!(v["matrix"][1][1], "1");
    }
}
