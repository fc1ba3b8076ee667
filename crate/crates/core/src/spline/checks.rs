//! Checkers for the zero-counting bounds.
//!
//! Every checker normalizes first, so `n` counts genuine interior knots plus
//! the two outermost knots; inserting removable knots can never loosen a bound.

use serde::Serialize;

use super::census::{separated_zero_count, zero_order_at, ZeroOrder, ZeroReport};
use super::Spline;
use crate::error::Result;

/// `Z(s) ≤ n + m - 1` on `[α_0, α_n]`, alongside the crude per-domain bound
/// `m·(n + 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremVerdict {
    pub z: usize,
    pub n: usize,
    pub degree: usize,
    pub bound: usize,
    pub gross_bound: usize,
    pub within_gross_bound: bool,
    pub pass: bool,
}

pub fn check_theorem_bound(s: &Spline) -> Result<TheoremVerdict> {
    Ok(check_theorem_and_corollary10(s)?.0)
}

/// Both verdicts from a single zero census.
pub fn check_theorem_and_corollary10(s: &Spline) -> Result<(TheoremVerdict, Corollary10Verdict)> {
    let s = s.normalize();
    let (z, report) = separated_zero_count(&s, s.first_knot(), s.last_knot())?;
    Ok((theorem_verdict(&s, z), corollary10_verdict(&s, &report)))
}

fn theorem_verdict(s: &Spline, z: usize) -> TheoremVerdict {
    let (n, m) = (s.n(), s.degree());
    let bound = n + m - 1;
    let gross_bound = m * (n + 1);
    TheoremVerdict {
        z,
        n,
        degree: m,
        bound,
        gross_bound,
        within_gross_bound: z <= gross_bound,
        pass: z <= bound,
    }
}

/// Verdict for splines whose outermost knots are zeros of order at least `m`.
///
/// Both readings of the bound are recorded: interior zeros in `(α_0, α_n)`
/// against `n - m - 1`, and all zeros in `[α_0, α_n]` (the two outer knots
/// included) against `n - m + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prop5Verdict {
    pub applicable: bool,
    /// Why the hypotheses fail; `None` when applicable.
    pub not_applicable_reason: Option<String>,
    pub n: usize,
    pub degree: usize,
    pub n_ge_m_plus_1: bool,
    pub interior_z: usize,
    pub interior_bound: i64,
    pub total_z: usize,
    pub total_bound: i64,
    /// `None` when not applicable: there is nothing to pass or fail.
    pub pass: Option<bool>,
}

pub fn check_prop5(s: &Spline) -> Result<Prop5Verdict> {
    let s = s.normalize();
    let (n, m) = (s.n(), s.degree());
    let (total_z, report) = separated_zero_count(&s, s.first_knot(), s.last_knot())?;
    let interior_z = report.open_component_count;
    let interior_bound = n as i64 - m as i64 - 1;
    let total_bound = n as i64 - m as i64 + 1;

    let order_left = zero_order_at(&s, s.first_knot());
    let order_right = zero_order_at(&s, s.last_knot());
    let reason = if order_left < ZeroOrder::Finite(m) {
        Some(format!("first knot is a zero of order {order_left:?} < {m}"))
    } else if order_right < ZeroOrder::Finite(m) {
        Some(format!("last knot is a zero of order {order_right:?} < {m}"))
    } else if report.all_identically_zero() {
        Some("outermost knots are not separated (spline vanishes on the span)".to_string())
    } else {
        None
    };
    let applicable = reason.is_none();
    let n_ge_m_plus_1 = n > m;
    let pass = applicable
        .then_some(n_ge_m_plus_1 && interior_z as i64 <= interior_bound && total_z as i64 <= total_bound);
    Ok(Prop5Verdict {
        applicable,
        not_applicable_reason: reason,
        n,
        degree: m,
        n_ge_m_plus_1,
        interior_z,
        interior_bound,
        total_z,
        total_bound,
        pass,
    })
}

/// If `s` has at least `n + m` zeros in `[α_0, α_n]` (hypothesis 1) and every
/// domain has a zero inside it or zeros at both ends (hypothesis 2), then
/// `s ≡ 0` on `[α_0, α_n]`. `consistent` records that the implication held.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Corollary10Verdict {
    /// `None` means infinitely many zeros.
    pub zero_cardinality: Option<usize>,
    pub threshold: usize,
    pub hyp1: bool,
    pub hyp2: bool,
    pub conclusion_holds: bool,
    pub consistent: bool,
}

pub fn check_corollary10(s: &Spline) -> Result<Corollary10Verdict> {
    Ok(check_theorem_and_corollary10(s)?.1)
}

fn corollary10_verdict(s: &Spline, report: &ZeroReport) -> Corollary10Verdict {
    let threshold = s.n() + s.degree();
    let zero_cardinality = report.zero_cardinality();
    let hyp1 = zero_cardinality.is_none_or(|c| c >= threshold);
    let hyp2 = report.domains.iter().enumerate().all(|(j, d)| {
        d.identically_zero
            || d.interior_roots.unwrap_or(0) > 0
            || (report.knot_zero[j] && report.knot_zero[j + 1])
    });
    let conclusion_holds = report.all_identically_zero();
    Corollary10Verdict {
        zero_cardinality,
        threshold,
        hyp1,
        hyp2,
        conclusion_holds,
        consistent: !(hyp1 && hyp2) || conclusion_holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::bspline::cardinal_bspline;
    use crate::poly::Polynomial;
    use crate::spline::tests::{ramp, zigzag};

    #[test]
    fn polynomial_case() {
        let s = Spline::polynomial(2, Polynomial::from_ints(&[-2, 0, 1]), int(0), int(2)).unwrap();
        let v = check_theorem_bound(&s).unwrap();
        assert_eq!((v.z, v.n, v.bound), (1, 1, 2));
        assert!(v.pass && v.within_gross_bound);
    }

    #[test]
    fn zigzag_attains_bound() {
        let v = check_theorem_bound(&zigzag(4)).unwrap();
        assert_eq!((v.z, v.bound), (4, 4));
        assert!(v.pass);
        assert_eq!(v.gross_bound, 5);
    }

    #[test]
    fn b2_theorem_bound() {
        let b2 = cardinal_bspline(2).unwrap();
        let v = check_theorem_bound(b2.spline()).unwrap();
        assert_eq!((v.z, v.bound), (2, 4));
        assert!(v.pass);
    }

    #[test]
    fn bsplines_satisfy_prop5_with_equality() {
        for m in 1..=3 {
            let b = cardinal_bspline(m).unwrap();
            let v = check_prop5(b.spline()).unwrap();
            assert!(v.applicable, "m={m}: {:?}", v.not_applicable_reason);
            assert_eq!(v.n, m + 1);
            assert_eq!(v.interior_z, 0);
            assert_eq!(v.interior_bound, 0);
            assert_eq!(v.total_z, 2);
            assert_eq!(v.total_bound, 2);
            assert_eq!(v.pass, Some(true));
        }
    }

    #[test]
    fn prop5_not_applicable() {
        let s = Spline::polynomial(1, Polynomial::from_ints(&[1, 1]), int(0), int(1)).unwrap();
        let v = check_prop5(&s).unwrap();
        assert!(!v.applicable);
        assert_eq!(v.pass, None);
        // The ramp's left end is a zero of order 1 = m, its right end is not.
        let v = check_prop5(&ramp()).unwrap();
        assert!(!v.applicable);
        let zero = Spline::new(1, vec![int(0), int(1)], vec![Polynomial::zero(); 3]).unwrap();
        let v = check_prop5(&zero).unwrap();
        assert!(!v.applicable);
    }

    #[test]
    fn corollary10_cases() {
        let zero = Spline::new(2, vec![int(0), int(1), int(2)], vec![Polynomial::zero(); 4]).unwrap();
        let v = check_corollary10(&zero).unwrap();
        assert!(v.hyp1 && v.hyp2 && v.conclusion_holds && v.consistent);

        let v = check_corollary10(&zigzag(4)).unwrap();
        assert_eq!(v.zero_cardinality, Some(4));
        assert_eq!(v.threshold, 5);
        assert!(!v.hyp1);
        assert!(v.hyp2);
        assert!(v.consistent);
    }
}
