//! Contraction conditions for self-maps of a finite G-metric space.
//!
//! Condition (I) forbids 2-cycles: `T(Tx) != x` whenever `Tx != x`.
//! Condition (II) is a contraction inequality imposed only on pairwise
//! distinct triples `x, y, z`:
//!
//! | kind   | inequality                                                        | range           |
//! |--------|-------------------------------------------------------------------|-----------------|
//! | banach | `G(Tx,Ty,Tz) <= l * G(x,y,z)`                                     | `l in (0, 1)`   |
//! | kannan | `G(Tx,Ty,Tz) <= l * [G(x,Tx,Tx) + G(y,Ty,Ty) + G(z,Tz,Tz)]`       | `l in (0, 1/3)` |
//! | reich  | `G(Tx,Ty,Tz) <= a1 G(x,Tx,Tx) + a2 G(y,Ty,Ty) + a3 G(z,Tz,Tz) + a4 G(x,y,z)` | `a_i >= 0, 0 < sum < 1` |
//!
//! Tight constants are exact maxima of `LHS / RHS` over the relevant
//! triples. A triple with vanishing RHS and positive LHS makes the
//! condition infeasible for every constant.

use std::fmt;

use crate::error::{Error, Result};
use crate::space::{ordered_triples, unordered_triples, FiniteGSpace, PointId, SelfMap, Tolerance, Triple};

pub const BANACH_BOUND: f64 = 1.0;
pub const KANNAN_BOUND: f64 = 1.0 / 3.0;
/// Uniform Reich coefficients `a_i = l` need `4 l < 1`.
pub const REICH_UNIFORM_BOUND: f64 = 0.25;

/// Nonnegative Reich coefficients `(a1, a2, a3, a4)` with `0 < sum < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReichCoefficients([f64; 4]);

impl ReichCoefficients {
    pub fn new(a: [f64; 4]) -> Result<Self> {
        if let Some(v) = a.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::InvalidCoefficients(format!(
                "coefficient {v} is negative or not finite"
            )));
        }
        let sum: f64 = a.iter().sum();
        if !(sum > 0.0 && sum < 1.0) {
            return Err(Error::InvalidCoefficients(format!("sum {sum} is outside (0, 1)")));
        }
        Ok(ReichCoefficients(a))
    }

    pub fn uniform(l: f64) -> Result<Self> {
        Self::new([l; 4])
    }

    pub fn get(&self) -> [f64; 4] {
        self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }
}

/// Which contraction theorem a check refers to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ContractionKind {
    Banach,
    Kannan,
    /// Fixed coefficients, or `None` for the uniform search `a_i = l`.
    Reich(Option<ReichCoefficients>),
}

impl ContractionKind {
    pub fn name(&self) -> &'static str {
        match self {
            ContractionKind::Banach => "banach",
            ContractionKind::Kannan => "kannan",
            ContractionKind::Reich(_) => "reich",
        }
    }
}

impl fmt::Display for ContractionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Verdict for condition (I). A failure carries a point `x` with
/// `Tx != x` and `T(Tx) = x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConditionOne {
    pub witness: Option<PointId>,
}

impl ConditionOne {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn check_condition_one(map: &SelfMap) -> ConditionOne {
    let witness = (0..map.len()).map(PointId).find(|&x| {
        let tx = map.apply(x);
        tx != x && map.apply(tx) == x
    });
    ConditionOne { witness }
}

/// Both sides of a condition-(II) inequality at one triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub triple: Triple,
    pub lhs: f64,
    pub rhs: f64,
}

impl Evaluation {
    pub fn excess(&self) -> f64 {
        self.lhs - self.rhs
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TightConstant {
    Finite(f64),
    /// Some triple has `RHS = 0 < LHS`.
    Infeasible,
}

impl TightConstant {
    pub fn value(&self) -> Option<f64> {
        match *self {
            TightConstant::Finite(v) => Some(v),
            TightConstant::Infeasible => None,
        }
    }
}

/// Set of admissible constants `[lo, hi)`, or `(lo, hi)` when `lo` is
/// zero and therefore itself excluded by the theorem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub lo_closed: bool,
    pub hi: f64,
}

impl Interval {
    pub fn contains(&self, v: f64) -> bool {
        let above = if self.lo_closed { v >= self.lo } else { v > self.lo };
        above && v < self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_closed { '[' } else { '(' };
        write!(f, "{open}{}, {})", self.lo, self.hi)
    }
}

/// Tight constant of a condition-(II) inequality together with the
/// triple that attains it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TightReport {
    pub constant: TightConstant,
    /// Exclusive upper bound the constant must stay under.
    pub bound: f64,
    /// Maximising triple, or the first infeasible triple.
    pub attained: Option<Evaluation>,
    holds: bool,
}

impl TightReport {
    pub fn holds(&self) -> bool {
        self.holds
    }

    pub fn admissible_interval(&self) -> Option<Interval> {
        if !self.holds {
            return None;
        }
        let lo = self.constant.value()?;
        Some(Interval {
            lo,
            lo_closed: lo > 0.0,
            hi: self.bound,
        })
    }

    /// Violating triple for a negative verdict.
    pub fn witness(&self) -> Option<Triple> {
        if self.holds {
            None
        } else {
            self.attained.map(|e| e.triple)
        }
    }
}

pub(crate) fn tight_over(
    triples: impl Iterator<Item = Triple>,
    bound: f64,
    tol: Tolerance,
    mut eval: impl FnMut(Triple) -> (f64, f64),
) -> TightReport {
    let mut best = 0.0_f64;
    let mut attained = None;
    for t in triples {
        let (lhs, rhs) = eval(t);
        let e = Evaluation { triple: t, lhs, rhs };
        if !tol.positive(rhs) {
            if tol.positive(lhs) {
                return TightReport {
                    constant: TightConstant::Infeasible,
                    bound,
                    attained: Some(e),
                    holds: false,
                };
            }
            attained.get_or_insert(e);
            continue;
        }
        let ratio = lhs / rhs;
        if attained.is_none() || ratio > best {
            best = ratio;
            attained = Some(e);
        }
    }
    TightReport {
        constant: TightConstant::Finite(best),
        bound,
        attained,
        holds: best < bound - tol.eps(),
    }
}

/// Result of checking one inequality at fixed constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityVerdict {
    /// Triple with the largest `LHS - RHS` (lexicographically first on ties).
    pub worst: Option<Evaluation>,
    holds: bool,
}

impl InequalityVerdict {
    pub fn holds(&self) -> bool {
        self.holds
    }

    pub fn witness(&self) -> Option<Triple> {
        if self.holds {
            None
        } else {
            self.worst.map(|e| e.triple)
        }
    }
}

pub(crate) fn inequality_over(
    triples: impl Iterator<Item = Triple>,
    tol: Tolerance,
    mut eval: impl FnMut(Triple) -> (f64, f64),
) -> InequalityVerdict {
    let mut worst: Option<Evaluation> = None;
    for t in triples {
        let (lhs, rhs) = eval(t);
        let e = Evaluation { triple: t, lhs, rhs };
        if worst.is_none_or(|w| e.excess() > w.excess()) {
            worst = Some(e);
        }
    }
    InequalityVerdict {
        holds: worst.is_none_or(|w| w.excess() <= tol.eps()),
        worst,
    }
}

pub(crate) fn require_in(value: f64, lo: f64, hi: f64, range: &'static str) -> Result<()> {
    if value > lo && value < hi {
        Ok(())
    } else {
        Err(Error::ConstantOutOfRange { value, range })
    }
}

fn prepare(space: &FiniteGSpace, map: &SelfMap) -> Result<()> {
    space.require_points(3)?;
    map.check_domain(space.points())
}

/// `G(x, Tx, Tx)`: how far `T` moves `x`.
#[inline]
fn displacement(space: &FiniteGSpace, map: &SelfMap, x: PointId) -> f64 {
    let tx = map.apply(x);
    space.g(x, tx, tx)
}

#[inline]
fn image_g(space: &FiniteGSpace, map: &SelfMap, [x, y, z]: Triple) -> f64 {
    space.g(map.apply(x), map.apply(y), map.apply(z))
}

/// Smallest `l` with `G(Tx,Ty,Tz) <= l G(x,y,z)` on distinct triples.
/// Both sides are symmetric, so unordered triples suffice.
pub fn banach_tight_lambda(space: &FiniteGSpace, map: &SelfMap, tol: Tolerance) -> Result<TightReport> {
    prepare(space, map)?;
    Ok(tight_over(unordered_triples(space.len()), BANACH_BOUND, tol, |t| {
        (image_g(space, map, t), space.g_triple(t))
    }))
}

pub fn kannan_tight_lambda(space: &FiniteGSpace, map: &SelfMap, tol: Tolerance) -> Result<TightReport> {
    prepare(space, map)?;
    Ok(tight_over(unordered_triples(space.len()), KANNAN_BOUND, tol, |t| {
        let rhs = t.iter().map(|&p| displacement(space, map, p)).sum();
        (image_g(space, map, t), rhs)
    }))
}

/// Tight `l` for Reich coefficients `a1 = a2 = a3 = a4 = l`, scanned over
/// ordered triples.
pub fn reich_uniform_tight_lambda(space: &FiniteGSpace, map: &SelfMap, tol: Tolerance) -> Result<TightReport> {
    prepare(space, map)?;
    Ok(tight_over(
        ordered_triples(space.len()),
        REICH_UNIFORM_BOUND,
        tol,
        |t| {
            let [x, y, z] = t;
            let rhs = displacement(space, map, x)
                + displacement(space, map, y)
                + displacement(space, map, z)
                + space.g(x, y, z);
            (image_g(space, map, t), rhs)
        },
    ))
}

/// Condition (II) of the Banach form at a given `l in (0, 1)`.
pub fn banach_check(space: &FiniteGSpace, map: &SelfMap, lambda: f64, tol: Tolerance) -> Result<InequalityVerdict> {
    require_in(lambda, 0.0, BANACH_BOUND, "(0, 1)")?;
    prepare(space, map)?;
    Ok(inequality_over(unordered_triples(space.len()), tol, |t| {
        (image_g(space, map, t), lambda * space.g_triple(t))
    }))
}

/// Condition (II) of the Kannan form at a given `l in (0, 1/3)`.
pub fn kannan_check(space: &FiniteGSpace, map: &SelfMap, lambda: f64, tol: Tolerance) -> Result<InequalityVerdict> {
    require_in(lambda, 0.0, KANNAN_BOUND, "(0, 1/3)")?;
    prepare(space, map)?;
    Ok(inequality_over(unordered_triples(space.len()), tol, |t| {
        let moved: f64 = t.iter().map(|&p| displacement(space, map, p)).sum();
        (image_g(space, map, t), lambda * moved)
    }))
}

/// Condition (II) of the Reich form. The right-hand side is not symmetric
/// for unequal coefficients, so every ordered triple is checked.
pub fn reich_check(
    space: &FiniteGSpace,
    map: &SelfMap,
    coeffs: &ReichCoefficients,
    tol: Tolerance,
) -> Result<InequalityVerdict> {
    prepare(space, map)?;
    let [a1, a2, a3, a4] = coeffs.get();
    Ok(inequality_over(ordered_triples(space.len()), tol, |t| {
        let [x, y, z] = t;
        let rhs = a1 * displacement(space, map, x)
            + a2 * displacement(space, map, y)
            + a3 * displacement(space, map, z)
            + a4 * space.g(x, y, z);
        (image_g(space, map, t), rhs)
    }))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConditionTwo {
    /// Tight-constant search (banach, kannan, uniform reich).
    Tight(TightReport),
    /// Check at fixed Reich coefficients.
    Fixed(InequalityVerdict),
}

impl ConditionTwo {
    pub fn holds(&self) -> bool {
        match self {
            ConditionTwo::Tight(r) => r.holds(),
            ConditionTwo::Fixed(v) => v.holds(),
        }
    }

    pub fn witness(&self) -> Option<Triple> {
        match self {
            ConditionTwo::Tight(r) => r.witness(),
            ConditionTwo::Fixed(v) => v.witness(),
        }
    }
}

/// Verdicts for both hypotheses of one contraction theorem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionReport {
    pub kind: ContractionKind,
    pub condition_one: ConditionOne,
    pub condition_two: ConditionTwo,
}

impl ConditionReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.condition_one.holds() && self.condition_two.holds()
    }

    /// Factor `k` with `G(u_{n+1}, u_{n+2}, u_{n+3}) <= k G(u_n, u_{n+1}, u_{n+2})`
    /// along Picard orbits with pairwise-distinct consecutive terms.
    ///
    /// Banach gives `k = l`; Kannan gives `l / (1 - 2l)`; Reich gives
    /// `(a1 + a2 + a4) / (1 - a3)`, i.e. `3l / (1 - l)` for uniform `l`.
    pub fn orbit_decay_rate(&self) -> Option<f64> {
        if !self.condition_two.holds() {
            return None;
        }
        match (self.kind, self.condition_two) {
            (ContractionKind::Banach, ConditionTwo::Tight(r)) => r.constant.value(),
            (ContractionKind::Kannan, ConditionTwo::Tight(r)) => r.constant.value().map(|l| l / (1.0 - 2.0 * l)),
            (ContractionKind::Reich(None), ConditionTwo::Tight(r)) => r.constant.value().map(|l| 3.0 * l / (1.0 - l)),
            (ContractionKind::Reich(Some(c)), ConditionTwo::Fixed(_)) => {
                let [a1, a2, a3, a4] = c.get();
                Some((a1 + a2 + a4) / (1.0 - a3))
            }
            _ => None,
        }
    }
}

/// Evaluates condition (I) and the condition (II) selected by `kind`.
pub fn evaluate_conditions(
    space: &FiniteGSpace,
    map: &SelfMap,
    kind: ContractionKind,
    tol: Tolerance,
) -> Result<ConditionReport> {
    let condition_two = match kind {
        ContractionKind::Banach => ConditionTwo::Tight(banach_tight_lambda(space, map, tol)?),
        ContractionKind::Kannan => ConditionTwo::Tight(kannan_tight_lambda(space, map, tol)?),
        ContractionKind::Reich(None) => ConditionTwo::Tight(reich_uniform_tight_lambda(space, map, tol)?),
        ContractionKind::Reich(Some(c)) => ConditionTwo::Fixed(reich_check(space, map, &c, tol)?),
    };
    Ok(ConditionReport {
        kind,
        condition_one: check_condition_one(map),
        condition_two,
    })
}
