//! Seeded random splines and batch verification.
//!
//! Trial `i` of a run with master seed `S` draws from
//! `ChaCha8Rng::seed_from_u64(S)` on stream `i`, so every trial is
//! reproducible on its own and the report does not depend on how rayon
//! schedules the trials.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{format_rational, int, rat, Rational};
use crate::bspline::extend_compact;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::spline::{
    check_corollary10, check_prop5, check_theorem_and_corollary10, separated_zero_count,
    spline_from_truncated_powers, Spline, SplineDocument, TruncatedPowerSpec,
};

/// At most this many witnesses are kept in a report.
pub const MAX_WITNESSES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub degree: usize,
    pub interior_knots: usize,
    /// Numerators are drawn from `[-num_bound, num_bound]`.
    pub num_bound: i64,
    /// Denominators are drawn from `[1, den_bound]`.
    pub den_bound: i64,
    /// Outermost knots `α_0` and `α_n`.
    pub knot_range: (Rational, Rational),
}

impl GeneratorConfig {
    /// Defaults: numerators up to 8, denominators up to 4, knots in `[-4, 4]`.
    pub fn new(seed: u64, degree: usize, interior_knots: usize) -> Self {
        Self {
            seed,
            degree,
            interior_knots,
            num_bound: 8,
            den_bound: 4,
            knot_range: (int(-4), int(4)),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree == 0 {
            return Err(Error::Degree("random splines need degree at least 1".into()));
        }
        if self.num_bound < 1 || self.den_bound < 1 {
            return Err(Error::OutOfRange(format!(
                "bounds must be positive (num {}, den {})",
                self.num_bound, self.den_bound
            )));
        }
        let (lo, hi) = &self.knot_range;
        if lo >= hi {
            return Err(Error::EmptyInterval(format_rational(lo), format_rational(hi)));
        }
        // Interior grid points k/den_bound strictly inside (lo, hi).
        let d = int(self.den_bound);
        let first: BigInt = (lo * &d).floor().to_integer() + 1;
        let last: BigInt = (hi * &d).ceil().to_integer() - 1;
        let available: BigInt = &last - &first + BigInt::from(1);
        if available < BigInt::from(self.interior_knots) {
            return Err(Error::OutOfRange(format!(
                "{} interior knots do not fit in ({}, {}) with denominators up to {}",
                self.interior_knots,
                format_rational(lo),
                format_rational(hi),
                self.den_bound
            )));
        }
        Ok(())
    }

    fn rng(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial);
        rng
    }
}

fn draw_rational(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Rational {
    rat(
        rng.random_range(-cfg.num_bound..=cfg.num_bound),
        rng.random_range(1..=cfg.den_bound),
    )
}

fn draw_nonzero(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Rational {
    loop {
        let r = draw_rational(rng, cfg);
        if !r.is_zero() {
            return r;
        }
    }
}

/// A rational in `[lo, hi]` (or `(lo, hi)` when `open`) with denominator at
/// most `den_bound`.
fn draw_in_range(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig, open: bool) -> Rational {
    let (lo, hi) = &cfg.knot_range;
    loop {
        let d = int(rng.random_range(1..=cfg.den_bound));
        let first = (lo * &d).ceil().to_integer();
        let last = (hi * &d).floor().to_integer();
        let span: i64 = (&last - &first).try_into().expect("knot range is small");
        let k = &first + rng.random_range(0..=span);
        let r = Rational::new(k, d.to_integer());
        if !open || (&r > lo && &r < hi) {
            return r;
        }
    }
}

/// How the polynomial left of the first jump is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BaseMode {
    Random,
    /// `c·(x - ρ_1)…(x - ρ_r)` with roots in the knot range.
    PlantedRoots,
    /// Zero, so the first domain is a flat zero run.
    Zero,
}

/// The spline of trial `trial`.
///
/// For degree 1, trial 0 is the zigzag through `±1` at `n + 1` equally spaced
/// knots, which attains `Z = n`.
pub fn trial_spline(cfg: &GeneratorConfig, trial: u64) -> Result<Spline> {
    cfg.validate()?;
    if cfg.degree == 1 && trial == 0 {
        return Ok(zigzag(cfg.interior_knots + 1));
    }
    let mut rng = cfg.rng(trial);
    let m = cfg.degree;

    let mut knots = BTreeSet::new();
    while knots.len() < cfg.interior_knots {
        knots.insert(draw_in_range(&mut rng, cfg, true));
    }
    let jumps: Vec<(Rational, Rational)> = knots
        .into_iter()
        .map(|k| {
            let c = draw_nonzero(&mut rng, cfg);
            (k, c)
        })
        .collect();

    let mode = match rng.random_range(0..3) {
        0 => BaseMode::Random,
        1 => BaseMode::PlantedRoots,
        _ if jumps.is_empty() => BaseMode::PlantedRoots,
        _ => BaseMode::Zero,
    };
    let base = match mode {
        BaseMode::Random => loop {
            let p = Polynomial::new((0..=m).map(|_| draw_rational(&mut rng, cfg)).collect());
            if !p.is_zero() {
                break p;
            }
        },
        BaseMode::PlantedRoots => {
            let count = rng.random_range(0..=m);
            let roots: Vec<Rational> = (0..count).map(|_| draw_in_range(&mut rng, cfg, false)).collect();
            Polynomial::from_roots(&draw_nonzero(&mut rng, cfg), &roots)
        }
        BaseMode::Zero => Polynomial::zero(),
    };
    let spec = TruncatedPowerSpec {
        base,
        jumps,
        left: cfg.knot_range.0.clone(),
        right: cfg.knot_range.1.clone(),
    };
    spline_from_truncated_powers(&spec, m)
}

/// Trial 0 of `cfg`.
pub fn random_spline(cfg: &GeneratorConfig) -> Result<Spline> {
    trial_spline(cfg, 0)
}

/// Degree-one spline with value `(-1)^k` at the knot `k = 0, …, n`.
pub fn zigzag(n: usize) -> Spline {
    let segment = |k: i64| {
        let v = if k % 2 == 0 { 1 } else { -1 };
        // v at x = k, -v at x = k + 1
        Polynomial::from_ints(&[v * (1 + 2 * k), -2 * v])
    };
    let n = n.max(1) as i64;
    let mut pieces = vec![segment(0)];
    pieces.extend((0..n).map(segment));
    pieces.push(segment(n - 1));
    Spline::new(1, (0..=n).map(int).collect(), pieces).expect("piecewise linear and continuous")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SuiteKind {
    /// `Z(s) ≤ n + m - 1`.
    Theorem9,
    /// The interior bound for compactly supported extensions.
    Prop5,
    /// The vanishing criterion on its own.
    Corollary10,
    /// Coincidence, smoothness and support of `extend_compact`, plus the
    /// interior bound.
    Extension,
    /// Open-support `Z(s̄') ≥ Z(s̄) + 1` for the extension `s̄`.
    Rolle,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 5] = [
        SuiteKind::Theorem9,
        SuiteKind::Prop5,
        SuiteKind::Corollary10,
        SuiteKind::Extension,
        SuiteKind::Rolle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteKind::Theorem9 => "theorem9",
            SuiteKind::Prop5 => "prop5",
            SuiteKind::Corollary10 => "corollary10",
            SuiteKind::Extension => "extension",
            SuiteKind::Rolle => "rolle",
        }
    }
}

impl fmt::Display for SuiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteKind {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        SuiteKind::ALL
            .into_iter()
            .find(|k| k.name() == text)
            .ok_or_else(|| Error::Parse(format!("unknown suite {text:?}")))
    }
}

/// Per-trial result of a checker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialOutcome {
    /// The zero count the suite tracks.
    pub z: usize,
    pub violation: bool,
    /// Attains the bound of the suite.
    pub tight: bool,
    /// The vanishing-criterion verdict on the trial spline when the checker
    /// already computed it; otherwise the runner computes it.
    pub corollary10_consistent: Option<bool>,
}

impl TrialOutcome {
    pub fn new(z: usize, violation: bool, tight: bool) -> Self {
        Self {
            z,
            violation,
            tight,
            corollary10_consistent: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialReport {
    pub command: String,
    pub seed: u64,
    pub trials: u64,
    pub violations: u64,
    /// Trials where the vanishing criterion failed on the trial spline; these
    /// are also counted in `violations`.
    pub corollary10_failures: u64,
    #[serde(rename = "max_Z")]
    pub max_z: usize,
    pub bound: usize,
    /// Violating splines first, then splines attaining the bound, each group
    /// in trial order.
    pub witnesses: Vec<SplineDocument>,
    pub elapsed_ms: u64,
}

impl TrialReport {
    /// 0 without violations, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.violations > 0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

/// `n + m - 1` for the configuration's knot count.
pub fn nominal_bound(cfg: &GeneratorConfig) -> usize {
    cfg.interior_knots + cfg.degree
}

fn command_line(kind: &str, cfg: &GeneratorConfig, trials: u64) -> String {
    format!(
        "verify --kind {kind} --m {} --knots {} --trials {trials} --seed {}",
        cfg.degree,
        cfg.interior_knots + 1,
        cfg.seed
    )
}

/// Runs `checker` on every trial spline and aggregates.
///
/// A checker error or an inconsistent vanishing criterion on the trial
/// spline both count as violations.
pub fn run_suite_with<F>(label: &str, cfg: &GeneratorConfig, trials: u64, checker: F) -> Result<TrialReport>
where
    F: Fn(&Spline) -> Result<TrialOutcome> + Sync,
{
    cfg.validate()?;
    if trials == 0 {
        return Err(Error::OutOfRange("trials must be at least 1".into()));
    }
    let start = Instant::now();
    let outcomes: Vec<(Spline, TrialOutcome, bool)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let s = trial_spline(cfg, t)?;
            let outcome = checker(&s).unwrap_or_else(|_| TrialOutcome::new(0, true, false));
            let consistent = match outcome.corollary10_consistent {
                Some(c) => c,
                None => check_corollary10(&s).map(|v| v.consistent).unwrap_or(false),
            };
            let violation = outcome.violation || !consistent;
            Ok((s, TrialOutcome { violation, ..outcome }, consistent))
        })
        .collect::<Result<_>>()?;

    let violations = outcomes.iter().filter(|(_, o, _)| o.violation).count() as u64;
    let corollary10_failures = outcomes.iter().filter(|(_, _, c)| !c).count() as u64;
    let max_z = outcomes.iter().map(|(_, o, _)| o.z).max().unwrap_or(0);
    let violating = outcomes.iter().filter(|(_, o, _)| o.violation);
    let tight = outcomes.iter().filter(|(_, o, _)| o.tight && !o.violation);
    let witnesses = violating
        .chain(tight)
        .take(MAX_WITNESSES)
        .map(|(s, _, _)| s.to_document())
        .collect();
    Ok(TrialReport {
        command: command_line(label, cfg, trials),
        seed: cfg.seed,
        trials,
        violations,
        corollary10_failures,
        max_z,
        bound: nominal_bound(cfg),
        witnesses,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

pub fn run_verification_suite(kind: SuiteKind, cfg: &GeneratorConfig, trials: u64) -> Result<TrialReport> {
    if kind == SuiteKind::Rolle && cfg.degree < 2 {
        return Err(Error::Degree(
            "the Rolle suite differentiates once and needs degree at least 2".into(),
        ));
    }
    let checker = |s: &Spline| -> Result<TrialOutcome> {
        match kind {
            SuiteKind::Theorem9 => {
                let (v, c) = check_theorem_and_corollary10(s)?;
                Ok(TrialOutcome {
                    corollary10_consistent: Some(c.consistent),
                    ..TrialOutcome::new(v.z, !v.pass, v.z == v.bound)
                })
            }
            SuiteKind::Prop5 => prop5_outcome(&extend_compact(s)?),
            SuiteKind::Corollary10 => {
                let (t, c) = check_theorem_and_corollary10(s)?;
                Ok(TrialOutcome {
                    corollary10_consistent: Some(c.consistent),
                    ..TrialOutcome::new(t.z, !c.consistent, c.hyp1 && c.hyp2)
                })
            }
            SuiteKind::Extension => {
                let e = extend_compact(s)?;
                let mut outcome = prop5_outcome(&e)?;
                outcome.violation |= !extension_is_faithful(s, &e);
                outcome.violation |= !check_corollary10(&e)?.consistent;
                Ok(outcome)
            }
            SuiteKind::Rolle => {
                let e = extend_compact(s)?;
                let z = open_support_z(&e)?;
                let dz = open_support_z(&e.derivative()?)?;
                Ok(TrialOutcome::new(z, dz < z + 1, dz == z + 1))
            }
        }
    };
    run_suite_with(kind.name(), cfg, trials, checker)
}

fn prop5_outcome(e: &Spline) -> Result<TrialOutcome> {
    let v = check_prop5(e)?;
    Ok(TrialOutcome::new(
        v.interior_z,
        v.pass == Some(false),
        v.applicable && v.interior_z as i64 == v.interior_bound,
    ))
}

/// `e` equals `s` on `[α_0, α_n]`, is `C^{m-1}` on the whole line and
/// vanishes outside `[α_0 - m, α_n + m]`.
pub fn extension_is_faithful(s: &Spline, e: &Spline) -> bool {
    let m = Rational::from_integer(s.degree().into());
    let (a, b) = (s.first_knot(), s.last_knot());
    let pieces = e.pieces();
    let outside_zero = pieces[0].is_zero() && pieces[pieces.len() - 1].is_zero();
    let support = e.first_knot() >= &(a - &m) && e.last_knot() <= &(b + &m);
    let smooth = e.verify_smoothness().is_ok();
    let coincide = crate::spline::domain_samples(s.knots())[1..s.knots().len()]
        .iter()
        .all(|x| pieces[e.piece_index(x)] == s.pieces()[s.piece_index(x)]);
    outside_zero && support && smooth && coincide
}

/// `(inf supp s, sup supp s)` for a compactly supported spline.
pub fn support_interval(s: &Spline) -> Option<(Rational, Rational)> {
    let pieces = s.pieces();
    let knots = s.knots();
    let first = (1..pieces.len() - 1).find(|&i| !pieces[i].is_zero())?;
    let last = (1..pieces.len() - 1).rev().find(|&i| !pieces[i].is_zero())?;
    Some((knots[first - 1].clone(), knots[last].clone()))
}

/// Components of the zero set strictly inside the support.
pub fn open_support_z(s: &Spline) -> Result<usize> {
    let (a, b) = support_interval(s)
        .ok_or_else(|| Error::Invariant("spline vanishes on its whole knot span".into()))?;
    Ok(separated_zero_count(s, &a, &b)?.1.open_component_count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_trial() {
        let cfg = GeneratorConfig::new(42, 3, 5);
        for t in 0..20 {
            assert_eq!(trial_spline(&cfg, t).unwrap(), trial_spline(&cfg, t).unwrap());
        }
        assert_ne!(trial_spline(&cfg, 1).unwrap(), trial_spline(&cfg, 2).unwrap());
    }

    #[test]
    fn requested_knots_are_genuine() {
        for m in 1..=4 {
            for k in 0..=7 {
                let cfg = GeneratorConfig::new(9, m, k);
                for t in 1..30 {
                    let s = trial_spline(&cfg, t).unwrap();
                    assert_eq!(s.n(), k + 1, "m={m} k={k} t={t}");
                    assert_eq!(s.synthetic_knot_count(), 0);
                    assert_eq!(s.first_knot(), &int(-4));
                    assert_eq!(s.last_knot(), &int(4));
                }
            }
        }
    }

    #[test]
    fn no_interior_knots_gives_polynomial() {
        let cfg = GeneratorConfig::new(5, 2, 0);
        for t in 0..20 {
            let s = trial_spline(&cfg, t).unwrap();
            assert_eq!(s.knots(), &[int(-4), int(4)]);
            assert!(!s.is_zero_on_span());
        }
    }

    #[test]
    fn zigzag_is_first_trial_for_degree_one() {
        let cfg = GeneratorConfig::new(1, 1, 3);
        assert_eq!(trial_spline(&cfg, 0).unwrap(), zigzag(4));
        let v = crate::spline::check_theorem_bound(&zigzag(4)).unwrap();
        assert_eq!(v.z, 4);
    }

    #[test]
    fn bad_configs() {
        let mut cfg = GeneratorConfig::new(1, 2, 40);
        assert!(cfg.validate().is_err());
        cfg.interior_knots = 31;
        assert!(cfg.validate().is_ok());
        cfg.degree = 0;
        assert!(cfg.validate().is_err());
        let mut cfg = GeneratorConfig::new(1, 2, 1);
        cfg.knot_range = (int(1), int(1));
        assert!(cfg.validate().is_err());
        assert!(run_verification_suite(SuiteKind::Rolle, &GeneratorConfig::new(1, 1, 2), 3).is_err());
        assert!(run_verification_suite(SuiteKind::Theorem9, &GeneratorConfig::new(1, 1, 2), 0).is_err());
    }

    #[test]
    fn suites_pass() {
        for kind in SuiteKind::ALL {
            for m in 2..=3 {
                let cfg = GeneratorConfig::new(7, m, 4);
                let report = run_verification_suite(kind, &cfg, 40).unwrap();
                assert_eq!(report.violations, 0, "{kind} m={m}");
                assert_eq!(report.exit_code(), 0);
            }
        }
    }

    #[test]
    fn degree_one_theorem_suite_is_tight() {
        let cfg = GeneratorConfig::new(3, 1, 5);
        let report = run_verification_suite(SuiteKind::Theorem9, &cfg, 50).unwrap();
        assert_eq!(report.max_z, report.bound);
        assert!(!report.witnesses.is_empty());
    }

    #[test]
    fn always_violating_checker_sets_exit_code() {
        let cfg = GeneratorConfig::new(3, 2, 2);
        let report = run_suite_with("stub", &cfg, 5, |_| Ok(TrialOutcome::new(0, true, false))).unwrap();
        assert_eq!(report.violations, 5);
        assert_eq!(report.exit_code(), 1);
        assert_eq!(report.witnesses.len(), 5);
        let failing = run_suite_with("stub", &cfg, 2, |_| Err(Error::Singular)).unwrap();
        assert_eq!(failing.violations, 2);
    }

    #[test]
    fn report_is_reproducible() {
        let cfg = GeneratorConfig::new(42, 3, 5);
        let mut a = run_verification_suite(SuiteKind::Theorem9, &cfg, 60).unwrap();
        let mut b = run_verification_suite(SuiteKind::Theorem9, &cfg, 60).unwrap();
        a.elapsed_ms = 0;
        b.elapsed_ms = 0;
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.to_json().contains("\"max_Z\""));
        assert_eq!(a.command, "verify --kind theorem9 --m 3 --knots 6 --trials 60 --seed 42");
    }

    #[test]
    fn suite_names_round_trip() {
        for kind in SuiteKind::ALL {
            assert_eq!(kind.name().parse::<SuiteKind>().unwrap(), kind);
        }
        assert!("theorem".parse::<SuiteKind>().is_err());
    }
}
