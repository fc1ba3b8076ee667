//! Zonotopes `Σ_X^{[0,1]}`: Minkowski sums of the segments `[0, a_i]`.

use num_traits::{Signed, Zero};

use super::VectorConfig;
use crate::arith::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Zonotope {
    dim: usize,
    /// `[lo, hi]` for `dim = 1`; counterclockwise vertices without collinear
    /// points for `dim = 2`, starting at the lexicographically smallest.
    vertices: Vec<Vec<Rational>>,
}

pub(crate) fn cross(o: &[Rational], a: &[Rational], b: &[Rational]) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Andrew's monotone chain; collinear points are dropped.
pub(crate) fn convex_hull(mut pts: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Vec<Rational>> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Vec<Rational>>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for p in iter {
            while hull.len() >= start + 2
                && !cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p).is_positive()
            {
                hull.pop();
            }
            hull.push(p.clone());
        }
        hull.pop();
    }
    hull
}

impl Zonotope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    /// Strict interior membership; boundary points are outside.
    pub fn contains_strictly(&self, x: &[Rational]) -> bool {
        if self.dim == 1 {
            return self.vertices[0][0] < x[0] && x[0] < self.vertices[1][0];
        }
        let n = self.vertices.len();
        (0..n).all(|i| {
            cross(&self.vertices[i], &self.vertices[(i + 1) % n], x).is_positive()
        })
    }

    /// Componentwise minimum and maximum over the vertices.
    pub fn bounding_box(&self) -> (Vec<Rational>, Vec<Rational>) {
        let lo = (0..self.dim)
            .map(|i| self.vertices.iter().map(|p| p[i].clone()).min().expect("nonempty"))
            .collect();
        let hi = (0..self.dim)
            .map(|i| self.vertices.iter().map(|p| p[i].clone()).max().expect("nonempty"))
            .collect();
        (lo, hi)
    }
}

/// The support of `B_X`, by iterated Minkowski sums of segments.
pub fn zonotope_support(x: &VectorConfig) -> Zonotope {
    let to_rat = |v: &[i64]| -> Vec<Rational> {
        v.iter().map(|&c| Rational::from_integer(c.into())).collect()
    };
    if x.dim() == 1 {
        let (mut lo, mut hi) = (Rational::zero(), Rational::zero());
        for v in x.vectors() {
            let c = Rational::from_integer(v[0].into());
            if c.is_negative() {
                lo += c;
            } else {
                hi += c;
            }
        }
        return Zonotope {
            dim: 1,
            vertices: vec![vec![lo], vec![hi]],
        };
    }
    let mut poly = vec![vec![Rational::zero(), Rational::zero()]];
    for v in x.vectors() {
        let a = to_rat(v);
        let shifted: Vec<Vec<Rational>> = poly
            .iter()
            .map(|p| vec![&p[0] + &a[0], &p[1] + &a[1]])
            .collect();
        poly.extend(shifted);
        poly = convex_hull(poly);
    }
    Zonotope {
        dim: 2,
        vertices: poly,
    }
}
