//! Sturm sequences and exact counting of distinct real roots.
//!
//! Roots are never located, only counted: they may be irrational, and every
//! caller in this crate needs counts plus endpoint values and nothing more.

use num_traits::Zero;

use super::Polynomial;
use crate::arith::{sign, Rational};
use crate::error::{Error, Result};

/// Greatest common divisor, normalized to a primitive polynomial with
/// positive leading coefficient. Each remainder is reduced to its primitive
/// part to keep coefficients small.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let (mut x, mut y) = (a.primitive_part(), b.primitive_part());
    while !y.is_zero() {
        let (_, r) = x.div_rem(&y).expect("y is nonzero");
        x = y;
        y = r.primitive_part();
    }
    x.primitive_part()
}

/// `p / gcd(p, p')`: same distinct roots, all simple.
pub fn square_free_part(p: &Polynomial) -> Polynomial {
    if p.degree().unwrap_or(0) == 0 {
        return p.clone();
    }
    let g = gcd(p, &p.derivative());
    let (q, r) = p.div_rem(&g).expect("gcd of a nonzero polynomial is nonzero");
    debug_assert!(r.is_zero());
    q
}

/// Sturm sequence of the square-free part of `p`.
///
/// Members after the first two are negated remainders, each rescaled by a
/// positive constant, which leaves every sign pattern intact.
pub fn sturm_sequence(p: &Polynomial) -> Vec<Polynomial> {
    let p0 = square_free_part(p).primitive_part();
    if p0.is_zero() {
        return Vec::new();
    }
    let p1 = p0.derivative().primitive_part();
    let mut seq = vec![p0];
    if p1.is_zero() {
        return seq;
    }
    seq.push(p1);
    loop {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        seq.push((-&r).primitive_part());
    }
    seq
}

/// Sign changes of the sequence evaluated at `x`, zeros dropped.
pub fn sign_variations(seq: &[Polynomial], x: &Rational) -> usize {
    count_changes(seq.iter().map(|p| sign(&p.eval(x))))
}

fn count_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Number of distinct real roots of `p` in the interval between `a` and `b`,
/// with each endpoint included unless its `open_*` flag is set.
///
/// For a square-free Sturm sequence, `V(a) - V(b)` counts the roots in the
/// half-open interval `(a, b]`; the endpoints are then adjusted by direct
/// evaluation.
pub fn count_distinct_roots(
    p: &Polynomial,
    a: &Rational,
    b: &Rational,
    open_left: bool,
    open_right: bool,
) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::InfiniteRoots);
    }
    if a >= b {
        return Err(Error::EmptyInterval(a.to_string(), b.to_string()));
    }
    if p.degree() == Some(1) {
        let root = -p.coeff(0) / p.coeff(1);
        let inside = (a < &root || (!open_left && a == &root)) && (&root < b || (!open_right && b == &root));
        return Ok(usize::from(inside));
    }
    let seq = sturm_sequence(p);
    let half_open = sign_variations(&seq, a) - sign_variations(&seq, b);
    let root_at_a = p.eval(a).is_zero();
    let root_at_b = p.eval(b).is_zero();
    let interior = half_open - usize::from(root_at_b);
    Ok(interior + usize::from(root_at_a && !open_left) + usize::from(root_at_b && !open_right))
}
