//! Semi-integral interior points `Ω = int(Σ_X^{[0,1]}) ∩ ½·Σ_X^Z`.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::zonotope::zonotope_support;
use super::VectorConfig;
use crate::arith::{lattice_basis, Rational};
use crate::error::Result;

/// `Ω` in lexicographic order.
///
/// The half-lattice is half of the lattice generated by `X` over the
/// integers. When that lattice is a proper sublattice of `Z^s`
/// (`lattice_index > 1`), `proper_sublattice` is set so callers can flag it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Omega {
    pub points: Vec<Vec<Rational>>,
    pub lattice_index: BigInt,
    pub proper_sublattice: bool,
}

impl Omega {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Smallest `k` with `k·step/2 ≥ bound`.
fn ceil_half_steps(bound: &Rational, step: &BigInt) -> BigInt {
    let scaled = bound * Rational::from_integer(BigInt::from(2)) / Rational::from_integer(step.clone());
    scaled.ceil().to_integer()
}

fn floor_half_steps(bound: &Rational, step: &BigInt) -> BigInt {
    let scaled = bound * Rational::from_integer(BigInt::from(2)) / Rational::from_integer(step.clone());
    scaled.floor().to_integer()
}

pub fn semi_integral_interior_points(x: &VectorConfig) -> Result<Omega> {
    let basis = lattice_basis(&x.big_vectors())?;
    let zonotope = zonotope_support(x);
    let (lo, hi) = zonotope.bounding_box();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut points = Vec::new();

    // Lower-triangular basis: the first coordinate depends only on k1.
    let h11 = basis.get(0, 0).clone();
    let mut k1 = ceil_half_steps(&lo[0], &h11);
    let k1_end = floor_half_steps(&hi[0], &h11);
    while k1 <= k1_end {
        let px = Rational::from_integer(&k1 * &h11) * &half;
        if x.dim() == 1 {
            points.push(vec![px]);
        } else {
            let h21 = basis.get(1, 0);
            let h22 = basis.get(1, 1).clone();
            // y = (h21 k1 + h22 k2) / 2
            let offset = Rational::from_integer(h21 * &k1) * &half;
            let mut k2 = ceil_half_steps(&(&lo[1] - &offset), &h22);
            let k2_end = floor_half_steps(&(&hi[1] - &offset), &h22);
            while k2 <= k2_end {
                let py = &offset + Rational::from_integer(&k2 * &h22) * &half;
                points.push(vec![px.clone(), py]);
                k2 += 1;
            }
        }
        k1 += 1;
    }
    points.retain(|p| zonotope.contains_strictly(p));
    points.sort();

    let lattice_index = basis.determinant()?.abs();
    Ok(Omega {
        proper_sublattice: !lattice_index.is_one(),
        lattice_index,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::boxspline::tests::{a2, b2};

    /// Brute force over the half-integer grid of a box.
    fn brute_force(x: &VectorConfig, lo: i64, hi: i64) -> Vec<Vec<Rational>> {
        let z = zonotope_support(x);
        let mut out = Vec::new();
        for i in 2 * lo..=2 * hi {
            for j in 2 * lo..=2 * hi {
                let p = vec![rat(i, 2), rat(j, 2)];
                if z.contains_strictly(&p) {
                    out.push(p);
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn a2_has_seven_points() {
        let expect = vec![
            vec![rat(1, 2), rat(1, 2)],
            vec![rat(1, 2), int(1)],
            vec![int(1), rat(1, 2)],
            vec![int(1), int(1)],
            vec![int(1), rat(3, 2)],
            vec![rat(3, 2), int(1)],
            vec![rat(3, 2), rat(3, 2)],
        ];
        assert_eq!(brute_force(&a2(), 0, 2), expect);
        let omega = semi_integral_interior_points(&a2()).unwrap();
        assert_eq!(omega.points, expect);
        assert!(!omega.proper_sublattice);
    }

    #[test]
    fn b2_matches_brute_force() {
        let omega = semi_integral_interior_points(&b2()).unwrap();
        assert_eq!(omega.points, brute_force(&b2(), -1, 3));
    }

    #[test]
    fn univariate_ones() {
        let omega = semi_integral_interior_points(&VectorConfig::ones(1)).unwrap();
        assert_eq!(omega.points, vec![vec![rat(1, 2)], vec![int(1)], vec![rat(3, 2)]]);
        for m in 1..=8 {
            let omega = semi_integral_interior_points(&VectorConfig::ones(m)).unwrap();
            assert_eq!(omega.len(), 2 * m + 1);
        }
    }

    #[test]
    fn proper_sublattice_is_flagged() {
        let x: VectorConfig = "2,0;0,2;2,2".parse().unwrap();
        let omega = semi_integral_interior_points(&x).unwrap();
        assert!(omega.proper_sublattice);
        assert_eq!(omega.lattice_index, BigInt::from(4));
        // Half of 2Z^2 is Z^2: the integer interior points of the hexagon.
        assert!(omega.points.iter().all(|p| p.iter().all(|c| c.is_integer())));
        assert_eq!(omega.len(), 7);
    }

    #[test]
    fn unit_square_interior_is_its_centre() {
        let x: VectorConfig = "1,0;0,1".parse().unwrap();
        let omega = semi_integral_interior_points(&x).unwrap();
        assert_eq!(omega.points, vec![vec![rat(1, 2), rat(1, 2)]]);
        let x: VectorConfig = "1;-1".parse().unwrap();
        let omega = semi_integral_interior_points(&x).unwrap();
        assert_eq!(omega.points, vec![vec![rat(-1, 2)], vec![int(0)], vec![rat(1, 2)]]);
    }
}
