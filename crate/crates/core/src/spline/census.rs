//! Separated-zero census.
//!
//! Two zeros `u < v` of `s` are separated exactly when `s` is not constant on
//! `[u, v]`; since `s(u) = 0`, that means `s` is not identically zero on
//! `[u, v]`. So two zeros are *not* separated iff the whole segment between
//! them lies in the zero set, i.e. iff they sit in the same connected
//! component of `{x : s(x) = 0}`. A pairwise-separated family therefore picks
//! at most one zero per component, and one per component is achievable, so
//! the maximal size `Z(s)` is the number of connected components.
//!
//! Components are read off from per-domain data alone: a domain is either
//! identically zero (it belongs to one component together with its end
//! knots), or its polynomial has finitely many roots, each of which in the
//! open domain is a singleton component. Knot zeros glue neighbouring
//! identically-zero domains together.

use num_traits::Zero;
use serde::Serialize;

use super::Spline;
use crate::arith::{format_rational, Rational};
use crate::error::{Error, Result};
use crate::poly::count_distinct_roots;

/// Order of a zero: the first derivative index `j < m` with `s^{(j)}(z) ≠ 0`,
/// capped at `m`, or infinite when `s` vanishes on a neighbourhood of `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ZeroOrder {
    Finite(usize),
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DomainCensus {
    pub identically_zero: bool,
    /// Distinct roots in the open domain; `None` for identically-zero domains.
    pub interior_roots: Option<usize>,
}

/// Structural census of the zero set of a spline over a knot interval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroReport {
    #[serde(serialize_with = "ser_rational")]
    pub left: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub right: Rational,
    /// `s(α_j) = 0` for each knot in `[left, right]`.
    pub knot_zero: Vec<bool>,
    /// One entry per domain between consecutive knots in `[left, right]`.
    pub domains: Vec<DomainCensus>,
    /// Connected components of the zero set in the closed interval: `Z`.
    pub component_count: usize,
    /// Components meeting the open interval `(left, right)`.
    pub open_component_count: usize,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

impl ZeroReport {
    /// Number of zeros in `[left, right]`, or `None` when some domain is
    /// identically zero (the zero set is then uncountable).
    pub fn zero_cardinality(&self) -> Option<usize> {
        let mut total = self.knot_zero.iter().filter(|&&z| z).count();
        for d in &self.domains {
            total += d.interior_roots?;
        }
        Some(total)
    }

    pub fn any_identically_zero(&self) -> bool {
        self.domains.iter().any(|d| d.identically_zero)
    }

    pub fn all_identically_zero(&self) -> bool {
        self.domains.iter().all(|d| d.identically_zero)
    }
}

/// `Z(s)` on `[a, b]` together with the census it was computed from.
///
/// `a` and `b` must be knots of `s` (insert knots first for other endpoints).
/// The spline must be continuous, so degree zero is rejected.
pub fn separated_zero_count(s: &Spline, a: &Rational, b: &Rational) -> Result<(usize, ZeroReport)> {
    if a >= b {
        return Err(Error::EmptyInterval(format_rational(a), format_rational(b)));
    }
    if s.degree() == 0 {
        return Err(Error::Degree(
            "zero census needs a continuous spline (degree at least 1)".into(),
        ));
    }
    let not_a_knot = |x: &Rational| Error::OutOfRange(format!("{} is not a knot", format_rational(x)));
    let ia = s.knot_index(a).ok_or_else(|| not_a_knot(a))?;
    let ib = s.knot_index(b).ok_or_else(|| not_a_knot(b))?;

    let knots = s.knots();
    let knot_zero: Vec<bool> = knots[ia..=ib]
        .iter()
        .map(|k| s.eval(k).is_zero())
        .collect();
    let mut domains = Vec::with_capacity(ib - ia);
    for j in ia..ib {
        let p = &s.pieces()[j + 1];
        domains.push(if p.is_zero() {
            DomainCensus {
                identically_zero: true,
                interior_roots: None,
            }
        } else {
            DomainCensus {
                identically_zero: false,
                interior_roots: Some(count_distinct_roots(p, &knots[j], &knots[j + 1], true, true)?),
            }
        });
    }

    // Walk knot, domain, knot, …; `in_run` is true while the current point
    // continues a component that started at or before the previous knot.
    let mut components = 0;
    let mut in_run = false;
    for (i, &zero) in knot_zero.iter().enumerate() {
        if zero {
            if !in_run {
                components += 1;
            }
            in_run = true;
        } else {
            in_run = false;
        }
        if let Some(d) = domains.get(i) {
            if !d.identically_zero {
                components += d.interior_roots.unwrap_or(0);
                in_run = false;
            }
        }
    }

    let isolated_left = knot_zero[0] && !domains[0].identically_zero;
    let isolated_right = knot_zero[knot_zero.len() - 1] && !domains[domains.len() - 1].identically_zero;
    let open_components = components - usize::from(isolated_left) - usize::from(isolated_right);

    let report = ZeroReport {
        left: a.clone(),
        right: b.clone(),
        knot_zero,
        domains,
        component_count: components,
        open_component_count: open_components,
    };
    Ok((components, report))
}

/// Order of `z` as a zero of `s` (order 0 when `s(z) ≠ 0`).
pub fn zero_order_at(s: &Spline, z: &Rational) -> ZeroOrder {
    let touching: Vec<usize> = match s.knot_index(z) {
        Some(i) => vec![i, i + 1],
        None => vec![s.piece_index(z)],
    };
    if touching.iter().all(|&i| s.pieces()[i].is_zero()) {
        return ZeroOrder::Infinite;
    }
    // Derivatives below m agree across a knot, so any touching piece will do.
    let mut p = s.pieces()[touching[0]].clone();
    for j in 0..s.degree() {
        if !p.eval(z).is_zero() {
            return ZeroOrder::Finite(j);
        }
        p = p.derivative();
    }
    ZeroOrder::Finite(s.degree())
}
