//! Exact point evaluation of `B_X` through fiber volumes.
//!
//! With `X·W = I` and `X·V = 0`, the map `(x, u) ↦ W x + V u` is a linear
//! bijection onto `R^m`, so the pushforward density is
//!
//! ```text
//! B_X(x) = |det[W V]| · vol{u : W x + V u ∈ [0,1]^m}
//! ```
//!
//! The fiber is a point (`m = s`), a segment (`m - s = 1`) or a convex
//! polygon (`m - s = 2`). When `m = s` the box is taken half-open,
//! `[0,1)^m`, so that the integer translates of `B_X` tile without overlap.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::VectorConfig;
use crate::arith::{denominator_lcm, Rational, RationalMatrix};
use crate::bspline::cardinal_bspline;
use crate::error::{Error, Result};

/// A right inverse `W` (`m × s`) and kernel basis `V` (`m × (m-s)`) of `X`,
/// with the Jacobian factor `|det[W V]|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberFrame {
    w: RationalMatrix,
    v: RationalMatrix,
    scale: Rational,
}

impl FiberFrame {
    /// `W` inverts the first `s` linearly independent columns and is zero on
    /// the other rows; `V` is the rref null space rescaled to primitive
    /// integer vectors.
    pub fn standard(x: &VectorConfig) -> Result<Self> {
        let xm = x.matrix();
        let (s, m) = (x.dim(), x.len());
        let mut chosen: Vec<usize> = Vec::with_capacity(s);
        for j in 0..m {
            let mut trial = chosen.clone();
            trial.push(j);
            if column_rank(&xm, &trial) == trial.len() {
                chosen = trial;
                if chosen.len() == s {
                    break;
                }
            }
        }
        let square = RationalMatrix::from_rows(
            (0..s).map(|i| chosen.iter().map(|&j| xm.get(i, j).clone()).collect()).collect(),
        )?;
        let mut w = RationalMatrix::zeros(m, s);
        for k in 0..s {
            let mut e = vec![Rational::zero(); s];
            e[k] = Rational::one();
            let col = square.solve(&e)?;
            for (r, &j) in chosen.iter().enumerate() {
                w.set(j, k, col[r].clone());
            }
        }
        let kernel: Vec<Vec<Rational>> = xm.nullspace().into_iter().map(primitive_integer).collect();
        let mut v = RationalMatrix::zeros(m, kernel.len());
        for (c, vec) in kernel.iter().enumerate() {
            for (r, val) in vec.iter().enumerate() {
                v.set(r, c, val.clone());
            }
        }
        Self::new(x, w, v)
    }

    /// Checks `X W = I`, `X V = 0` and that `[W V]` is nonsingular.
    pub fn new(x: &VectorConfig, w: RationalMatrix, v: RationalMatrix) -> Result<Self> {
        let (s, m) = (x.dim(), x.len());
        if w.rows() != m || w.cols() != s || v.rows() != m || v.cols() != m - s {
            return Err(Error::Dimension(format!(
                "frame shapes {}x{} and {}x{} do not fit {m} vectors in dimension {s}",
                w.rows(),
                w.cols(),
                v.rows(),
                v.cols()
            )));
        }
        let xm = x.matrix();
        if xm.mul(&w)? != RationalMatrix::identity(s) {
            return Err(Error::InvalidVectors("W is not a right inverse of X".into()));
        }
        if xm.mul(&v)? != RationalMatrix::zeros(s, m - s) {
            return Err(Error::InvalidVectors("V is not in the kernel of X".into()));
        }
        let joined = RationalMatrix::from_rows(
            (0..m)
                .map(|i| w.row(i).iter().chain(v.row(i)).cloned().collect())
                .collect(),
        )?;
        let scale = joined.determinant()?.abs();
        if scale.is_zero() {
            return Err(Error::Singular);
        }
        Ok(Self { w, v, scale })
    }

    pub fn w(&self) -> &RationalMatrix {
        &self.w
    }

    pub fn v(&self) -> &RationalMatrix {
        &self.v
    }

    /// `|det[W V]|`.
    pub fn scale(&self) -> &Rational {
        &self.scale
    }
}

fn column_rank(xm: &RationalMatrix, cols: &[usize]) -> usize {
    let sub = RationalMatrix::from_rows(
        (0..xm.rows())
            .map(|i| cols.iter().map(|&j| xm.get(i, j).clone()).collect())
            .collect(),
    )
    .expect("rectangular");
    sub.rank()
}

fn primitive_integer(v: Vec<Rational>) -> Vec<Rational> {
    let lcm = denominator_lcm(&v);
    let ints: Vec<BigInt> = v.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    ints.into_iter().map(|c| Rational::from_integer(c / &g)).collect()
}

/// `B_X(x)` with the standard frame.
pub fn box_spline_eval(x: &VectorConfig, point: &[Rational]) -> Result<Rational> {
    if x.degree() > 2 {
        return delegate_univariate(x, point);
    }
    box_spline_eval_with(x, &FiberFrame::standard(x)?, point)
}

/// `B_X(x)` with a caller-supplied frame; the value does not depend on it.
pub fn box_spline_eval_with(x: &VectorConfig, frame: &FiberFrame, point: &[Rational]) -> Result<Rational> {
    if point.len() != x.dim() {
        return Err(Error::Dimension(format!(
            "point has {} coordinates, vectors live in dimension {}",
            point.len(),
            x.dim()
        )));
    }
    let m = x.len();
    let centre = frame.w.mul_vec(point)?;
    let volume = match x.degree() {
        0 => {
            let inside = centre.iter().all(|t| !t.is_negative() && *t < Rational::one());
            if inside {
                Rational::one()
            } else {
                Rational::zero()
            }
        }
        1 => {
            // 0 ≤ c_i + v_i u ≤ 1 for every i.
            let mut lo: Option<Rational> = None;
            let mut hi: Option<Rational> = None;
            for i in 0..m {
                let (c, v) = (&centre[i], frame.v.get(i, 0));
                if v.is_zero() {
                    if c.is_negative() || *c > Rational::one() {
                        return Ok(Rational::zero());
                    }
                    continue;
                }
                let a = -c / v;
                let b = (Rational::one() - c) / v;
                let (a, b) = if v.is_positive() { (a, b) } else { (b, a) };
                lo = Some(lo.map_or(a.clone(), |l| l.max(a)));
                hi = Some(hi.map_or(b.clone(), |h| h.min(b)));
            }
            let (lo, hi) = (lo.expect("V has a nonzero row"), hi.expect("V has a nonzero row"));
            (hi - lo).max(Rational::zero())
        }
        2 => fiber_area(&centre, &frame.v)?,
        d => {
            return Err(Error::Unsupported(format!(
                "fiber dimension {d}; only m - s ≤ 2 is evaluated directly"
            )))
        }
    };
    Ok(volume * &frame.scale)
}

/// Univariate `±1` configurations of any length reduce to a cardinal
/// B-spline: flipping `t_i ↦ 1 - t_i` for each `-1` shifts the sum.
fn delegate_univariate(x: &VectorConfig, point: &[Rational]) -> Result<Rational> {
    let unit = x.dim() == 1 && x.vectors().iter().all(|v| v[0].abs() == 1);
    if !unit {
        return Err(Error::Unsupported(format!(
            "box spline of degree {} for {x}; only m - s ≤ 2 or univariate ±1 vectors",
            x.degree()
        )));
    }
    if point.len() != 1 {
        return Err(Error::Dimension(format!("point has {} coordinates, expected 1", point.len())));
    }
    let negatives = x.vectors().iter().filter(|v| v[0] < 0).count() as i64;
    let b = cardinal_bspline(x.len() - 1)?;
    Ok(b.eval(&(&point[0] + Rational::from_integer(negatives.into()))))
}

type Point2 = [Rational; 2];

/// Area of `{u ∈ R^2 : 0 ≤ c_i + V_i·u ≤ 1 for all i}`.
fn fiber_area(centre: &[Rational], v: &RationalMatrix) -> Result<Rational> {
    let m = centre.len();
    let row = |i: usize| [v.get(i, 0).clone(), v.get(i, 1).clone()];
    let det2 = |a: &Point2, b: &Point2| &a[0] * &b[1] - &a[1] * &b[0];
    let (i, j) = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .find(|&(i, j)| !det2(&row(i), &row(j)).is_zero())
        .ok_or_else(|| Error::Invariant("kernel basis has rank below 2".into()))?;

    // The parallelogram cut out by slabs i and j.
    let (ri, rj) = (row(i), row(j));
    let d = det2(&ri, &rj);
    let corner = |a: i64, b: i64| -> Point2 {
        let p = Rational::from_integer(a.into()) - &centre[i];
        let q = Rational::from_integer(b.into()) - &centre[j];
        [(&p * &rj[1] - &q * &ri[1]) / &d, (&q * &ri[0] - &p * &rj[0]) / &d]
    };
    let mut polygon = vec![corner(0, 0), corner(1, 0), corner(1, 1), corner(0, 1)];

    for k in (0..m).filter(|&k| k != i && k != j) {
        let rk = row(k);
        let lower = |u: &Point2| &centre[k] + &rk[0] * &u[0] + &rk[1] * &u[1];
        polygon = clip(&polygon, |u| lower(u));
        polygon = clip(&polygon, |u| Rational::one() - lower(u));
        if polygon.is_empty() {
            return Ok(Rational::zero());
        }
    }
    Ok(shoelace(&polygon))
}

/// Sutherland–Hodgman against `{u : f(u) ≥ 0}` for affine `f`.
fn clip(polygon: &[Point2], f: impl Fn(&Point2) -> Rational) -> Vec<Point2> {
    let n = polygon.len();
    let values: Vec<Rational> = polygon.iter().map(&f).collect();
    let mut out = Vec::with_capacity(n + 1);
    for a in 0..n {
        let b = (a + 1) % n;
        let (fa, fb) = (&values[a], &values[b]);
        if !fa.is_negative() {
            out.push(polygon[a].clone());
        }
        if (fa.is_negative() && fb.is_positive()) || (fa.is_positive() && fb.is_negative()) {
            let t = fa / (fa - fb);
            let (p, q) = (&polygon[a], &polygon[b]);
            out.push([&p[0] + &t * (&q[0] - &p[0]), &p[1] + &t * (&q[1] - &p[1])]);
        }
    }
    out
}

fn shoelace(polygon: &[Point2]) -> Rational {
    let n = polygon.len();
    if n < 3 {
        return Rational::zero();
    }
    let twice: Rational = (0..n)
        .map(|a| {
            let (p, q) = (&polygon[a], &polygon[(a + 1) % n]);
            &p[0] * &q[1] - &p[1] * &q[0]
        })
        .sum();
    twice.abs() / Rational::from_integer(2.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::boxspline::tests::{a2, b2};
    use crate::boxspline::zonotope_support;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_point(rng: &mut ChaCha8Rng, lo: &[Rational], hi: &[Rational]) -> Vec<Rational> {
        lo.iter()
            .zip(hi)
            .map(|(l, h)| {
                let den: i64 = rng.random_range(1..=12);
                let span = ((h - l) * Rational::from_integer(den.into())).to_integer();
                let span: i64 = span.try_into().unwrap();
                l - rat(1, 2) + rat(rng.random_range(0..=span + den), den)
            })
            .collect()
    }

    #[test]
    fn a2_centre_value() {
        let frame = FiberFrame::standard(&a2()).unwrap();
        assert_eq!(frame.scale(), &int(1));
        assert_eq!(box_spline_eval(&a2(), &[int(1), int(1)]).unwrap(), int(1));
        // Courant element: linear on triangles, 0 at the hexagon vertices.
        assert_eq!(box_spline_eval(&a2(), &[int(1), int(0)]).unwrap(), int(0));
        assert_eq!(box_spline_eval(&a2(), &[rat(1, 2), rat(1, 2)]).unwrap(), rat(1, 2));
    }

    #[test]
    fn hat_function() {
        let x = VectorConfig::ones(1);
        let cases = [(int(0), int(0)), (rat(1, 2), rat(1, 2)), (int(1), int(1)), (rat(3, 2), rat(1, 2)), (int(3), int(0))];
        for (t, expect) in cases {
            assert_eq!(box_spline_eval(&x, &[t]).unwrap(), expect);
        }
    }

    #[test]
    fn outside_support_is_zero() {
        for x in [a2(), b2()] {
            for p in [[int(-1), int(0)], [int(5), int(5)], [int(2), int(0)]] {
                assert_eq!(box_spline_eval(&x, &p).unwrap(), int(0), "{x} at {p:?}");
            }
        }
    }

    #[test]
    fn indicator_case_is_half_open() {
        let x: VectorConfig = "1,0;0,1".parse().unwrap();
        assert_eq!(box_spline_eval(&x, &[int(0), int(0)]).unwrap(), int(1));
        assert_eq!(box_spline_eval(&x, &[int(1), rat(1, 2)]).unwrap(), int(0));
        let x: VectorConfig = "1,1;1,-1".parse().unwrap();
        assert_eq!(box_spline_eval(&x, &[int(1), int(0)]).unwrap(), rat(1, 2));
    }

    #[test]
    fn univariate_matches_cardinal_bspline() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in 1..=5 {
            let x = VectorConfig::ones(m);
            let b = cardinal_bspline(m).unwrap();
            for _ in 0..50 {
                let t = rat(rng.random_range(-6..=(m as i64 + 1) * 6 + 6), 6 * rng.random_range(1..=5));
                assert_eq!(box_spline_eval(&x, &[t.clone()]).unwrap(), b.eval(&t), "m={m} at {t}");
            }
        }
    }

    #[test]
    fn signed_univariate_shifts() {
        let x: VectorConfig = "1;-1;1;1;-1".parse().unwrap();
        let b = cardinal_bspline(4).unwrap();
        assert_eq!(box_spline_eval(&x, &[rat(1, 3)]).unwrap(), b.eval(&rat(7, 3)));
        let wide: VectorConfig = "2;1;1;1".parse().unwrap();
        assert!(matches!(box_spline_eval(&wide, &[int(1)]), Err(Error::Unsupported(_))));
    }

    #[test]
    fn frame_choice_does_not_matter() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        // A2 with W on columns 2,3 and a doubled, negated kernel vector.
        let x = a2();
        let w = RationalMatrix::from_rows(vec![vec![int(0), int(0)], vec![int(1), int(0)], vec![int(-1), int(1)]]).unwrap();
        let v = RationalMatrix::from_rows(vec![vec![int(-2)], vec![int(2)], vec![int(-2)]]).unwrap();
        let alt = FiberFrame::new(&x, w, v).unwrap();
        // B2 with W on columns 2,4 and a sheared kernel basis.
        let xb = b2();
        let std_b = FiberFrame::standard(&xb).unwrap();
        let mut v2 = RationalMatrix::zeros(4, 2);
        for r in 0..4 {
            v2.set(r, 0, std_b.v().get(r, 0) + std_b.v().get(r, 1));
            v2.set(r, 1, std_b.v().get(r, 1) * int(3));
        }
        let w2 = RationalMatrix::from_rows(vec![vec![int(0), int(0)], vec![rat(1, 2), rat(1, 2)], vec![int(0), int(0)], vec![rat(-1, 2), rat(1, 2)]]).unwrap();
        let alt_b = FiberFrame::new(&xb, w2, v2).unwrap();
        for (x, alt) in [(x, alt), (xb, alt_b)] {
            let (lo, hi) = zonotope_support(&x).bounding_box();
            let std = FiberFrame::standard(&x).unwrap();
            for _ in 0..20 {
                let p = random_point(&mut rng, &lo, &hi);
                assert_eq!(
                    box_spline_eval_with(&x, &std, &p).unwrap(),
                    box_spline_eval_with(&x, &alt, &p).unwrap(),
                    "{x} at {p:?}"
                );
            }
        }
    }

    #[test]
    fn central_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for x in [a2(), b2(), VectorConfig::ones(2), "1,0;0,1;1,1;1,2".parse().unwrap()] {
            let (lo, hi) = zonotope_support(&x).bounding_box();
            let sum = x.sum();
            for _ in 0..20 {
                let p = random_point(&mut rng, &lo, &hi);
                let q: Vec<Rational> = sum.iter().zip(&p).map(|(s, c)| s - c).collect();
                assert_eq!(box_spline_eval(&x, &p).unwrap(), box_spline_eval(&x, &q).unwrap());
            }
        }
    }

    #[test]
    fn bad_frames_are_rejected() {
        let x = a2();
        let w = RationalMatrix::zeros(3, 2);
        let v = RationalMatrix::from_rows(vec![vec![int(1)], vec![int(-1)], vec![int(1)]]).unwrap();
        assert!(FiberFrame::new(&x, w, v).is_err());
        assert!(matches!(box_spline_eval(&x, &[int(1)]), Err(Error::Dimension(_))));
    }

    /// Riemann sum with midpoints on a 1/8 grid; B2 is piecewise quadratic,
    /// so the midpoint rule is close but not exact.
    #[test]
    fn b2_mass_is_about_one() {
        let x = b2();
        let h = rat(1, 8);
        let mut total = Rational::zero();
        for i in -8..16 {
            for j in 0..24 {
                let p = [rat(2 * i + 1, 16), rat(2 * j + 1, 16)];
                total += box_spline_eval(&x, &p).unwrap();
            }
        }
        let mass = total * &h * &h;
        assert!((mass - int(1)).abs() < rat(1, 100));
    }
}
