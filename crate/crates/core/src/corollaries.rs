//! Contraction conditions stated directly on a metric space, and their
//! reductions to the G-metric conditions.
//!
//! The checkers here evaluate distances from the metric itself; the
//! `reduced_*` functions go through a constructed G-space instead. The two
//! routes must agree:
//!
//! * perimeter contraction at `l` ⇔ banach at `l` on the sum form
//! * max contraction at `l` ⇔ banach at `l` on the max form
//! * perimeter Kannan at `l` ⇔ kannan at `l / 2` on the sum form, since
//!   `G(x,Tx,Tx) = 2 d(x,Tx)` there
//! * perimeter Reich at `(a1..a4)` ⇔ reich at `(a1/2, a2/2, a3/2, a4)` on the sum form
//! * max Reich at `(a1..a4)` ⇔ reich at the same coefficients on the max form

use crate::conditions::{
    banach_check, check_condition_one, inequality_over, kannan_check, reich_check, require_in, tight_over,
    InequalityVerdict, ReichCoefficients, TightReport, BANACH_BOUND, KANNAN_BOUND,
};
use crate::error::Result;
use crate::gmetric::{g_from_metric_max, g_from_metric_sum};
use crate::solver::enumerate_fixed_points;
use crate::space::{
    ordered_triples, require_points, unordered_triples, FiniteGSpace, FiniteMetricSpace, PointId, SelfMap, Tolerance,
    Triple,
};

/// A metric-space contraction condition with its constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CorollaryKind {
    /// Perimeters of triangles shrink by `l in (0, 1)`.
    Perimeter(f64),
    /// Triangle diameters shrink by `l in (0, 1)`.
    MaxBanach(f64),
    /// Image perimeter bounded by `l in (0, 1/3)` times total displacement.
    PerimeterKannan(f64),
    PerimeterReich(ReichCoefficients),
    MaxReich(ReichCoefficients),
}

impl CorollaryKind {
    pub fn name(&self) -> &'static str {
        match self {
            CorollaryKind::Perimeter(_) => "perimeter",
            CorollaryKind::MaxBanach(_) => "max-banach",
            CorollaryKind::PerimeterKannan(_) => "perimeter-kannan",
            CorollaryKind::PerimeterReich(_) => "perimeter-reich",
            CorollaryKind::MaxReich(_) => "max-reich",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    Sum,
    Max,
}

/// A metric space together with one of its induced G-metric spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionPair {
    pub metric: FiniteMetricSpace,
    pub space: FiniteGSpace,
    pub construction: Construction,
}

impl ReductionPair {
    pub fn new(metric: FiniteMetricSpace, construction: Construction) -> Self {
        let space = match construction {
            Construction::Sum => g_from_metric_sum(&metric),
            Construction::Max => g_from_metric_max(&metric),
        };
        ReductionPair {
            metric,
            space,
            construction,
        }
    }
}

fn perimeter(m: &FiniteMetricSpace, [x, y, z]: Triple) -> f64 {
    m.d(x, y) + m.d(y, z) + m.d(z, x)
}

fn diameter(m: &FiniteMetricSpace, [x, y, z]: Triple) -> f64 {
    m.d(x, y).max(m.d(y, z)).max(m.d(z, x))
}

fn image(map: &SelfMap, [x, y, z]: Triple) -> Triple {
    [map.apply(x), map.apply(y), map.apply(z)]
}

fn moved(m: &FiniteMetricSpace, map: &SelfMap, x: PointId) -> f64 {
    m.d(x, map.apply(x))
}

fn prepare(m: &FiniteMetricSpace, map: &SelfMap) -> Result<()> {
    require_points(m.len(), 3)?;
    map.check_domain(m.points())
}

/// Tight `l` for `perimeter(T-image) <= l * perimeter` on distinct triples.
pub fn check_perimeter_contraction(m: &FiniteMetricSpace, map: &SelfMap, tol: Tolerance) -> Result<TightReport> {
    prepare(m, map)?;
    Ok(tight_over(unordered_triples(m.len()), BANACH_BOUND, tol, |t| {
        (perimeter(m, image(map, t)), perimeter(m, t))
    }))
}

pub fn check_max_banach(m: &FiniteMetricSpace, map: &SelfMap, tol: Tolerance) -> Result<TightReport> {
    prepare(m, map)?;
    Ok(tight_over(unordered_triples(m.len()), BANACH_BOUND, tol, |t| {
        (diameter(m, image(map, t)), diameter(m, t))
    }))
}

pub fn check_perimeter_kannan(m: &FiniteMetricSpace, map: &SelfMap, tol: Tolerance) -> Result<TightReport> {
    prepare(m, map)?;
    Ok(tight_over(unordered_triples(m.len()), KANNAN_BOUND, tol, |t| {
        let rhs = t.iter().map(|&p| moved(m, map, p)).sum();
        (perimeter(m, image(map, t)), rhs)
    }))
}

pub fn perimeter_check(m: &FiniteMetricSpace, map: &SelfMap, lambda: f64, tol: Tolerance) -> Result<InequalityVerdict> {
    require_in(lambda, 0.0, BANACH_BOUND, "(0, 1)")?;
    prepare(m, map)?;
    Ok(inequality_over(unordered_triples(m.len()), tol, |t| {
        (perimeter(m, image(map, t)), lambda * perimeter(m, t))
    }))
}

pub fn max_banach_check(
    m: &FiniteMetricSpace,
    map: &SelfMap,
    lambda: f64,
    tol: Tolerance,
) -> Result<InequalityVerdict> {
    require_in(lambda, 0.0, BANACH_BOUND, "(0, 1)")?;
    prepare(m, map)?;
    Ok(inequality_over(unordered_triples(m.len()), tol, |t| {
        (diameter(m, image(map, t)), lambda * diameter(m, t))
    }))
}

pub fn perimeter_kannan_check(
    m: &FiniteMetricSpace,
    map: &SelfMap,
    lambda: f64,
    tol: Tolerance,
) -> Result<InequalityVerdict> {
    require_in(lambda, 0.0, KANNAN_BOUND, "(0, 1/3)")?;
    prepare(m, map)?;
    Ok(inequality_over(unordered_triples(m.len()), tol, |t| {
        let total: f64 = t.iter().map(|&p| moved(m, map, p)).sum();
        (perimeter(m, image(map, t)), lambda * total)
    }))
}

fn reich_rhs(m: &FiniteMetricSpace, map: &SelfMap, coeffs: &ReichCoefficients, t: Triple, spread: f64) -> f64 {
    let [a1, a2, a3, a4] = coeffs.get();
    let [x, y, z] = t;
    a1 * moved(m, map, x) + a2 * moved(m, map, y) + a3 * moved(m, map, z) + a4 * spread
}

pub fn check_perimeter_reich(
    m: &FiniteMetricSpace,
    map: &SelfMap,
    coeffs: &ReichCoefficients,
    tol: Tolerance,
) -> Result<InequalityVerdict> {
    prepare(m, map)?;
    Ok(inequality_over(ordered_triples(m.len()), tol, |t| {
        (
            perimeter(m, image(map, t)),
            reich_rhs(m, map, coeffs, t, perimeter(m, t)),
        )
    }))
}

pub fn check_max_reich(
    m: &FiniteMetricSpace,
    map: &SelfMap,
    coeffs: &ReichCoefficients,
    tol: Tolerance,
) -> Result<InequalityVerdict> {
    prepare(m, map)?;
    Ok(inequality_over(ordered_triples(m.len()), tol, |t| {
        (diameter(m, image(map, t)), reich_rhs(m, map, coeffs, t, diameter(m, t)))
    }))
}

/// Checks a corollary condition natively on the metric.
pub fn check_corollary(
    m: &FiniteMetricSpace,
    map: &SelfMap,
    kind: CorollaryKind,
    tol: Tolerance,
) -> Result<InequalityVerdict> {
    match kind {
        CorollaryKind::Perimeter(l) => perimeter_check(m, map, l, tol),
        CorollaryKind::MaxBanach(l) => max_banach_check(m, map, l, tol),
        CorollaryKind::PerimeterKannan(l) => perimeter_kannan_check(m, map, l, tol),
        CorollaryKind::PerimeterReich(c) => check_perimeter_reich(m, map, &c, tol),
        CorollaryKind::MaxReich(c) => check_max_reich(m, map, &c, tol),
    }
}

/// The G-metric construction a corollary reduces through.
pub fn reduction_construction(kind: CorollaryKind) -> Construction {
    match kind {
        CorollaryKind::Perimeter(_) | CorollaryKind::PerimeterKannan(_) | CorollaryKind::PerimeterReich(_) => {
            Construction::Sum
        }
        CorollaryKind::MaxBanach(_) | CorollaryKind::MaxReich(_) => Construction::Max,
    }
}

/// Checks a corollary condition through its G-metric reduction.
pub fn reduced_check(
    pair: &ReductionPair,
    map: &SelfMap,
    kind: CorollaryKind,
    tol: Tolerance,
) -> Result<InequalityVerdict> {
    debug_assert_eq!(pair.construction, reduction_construction(kind));
    let g = &pair.space;
    match kind {
        CorollaryKind::Perimeter(l) | CorollaryKind::MaxBanach(l) => banach_check(g, map, l, tol),
        CorollaryKind::PerimeterKannan(l) => {
            require_in(l, 0.0, KANNAN_BOUND, "(0, 1/3)")?;
            kannan_check(g, map, l / 2.0, tol)
        }
        CorollaryKind::PerimeterReich(c) => {
            let [a1, a2, a3, a4] = c.get();
            let halved = ReichCoefficients::new([a1 / 2.0, a2 / 2.0, a3 / 2.0, a4])?;
            reich_check(g, map, &halved, tol)
        }
        CorollaryKind::MaxReich(c) => reich_check(g, map, &c, tol),
    }
}

/// Fixed points of `map` when condition (I) and the corollary condition
/// both hold; `None` when a hypothesis fails.
pub fn corollary_fixed_points(
    m: &FiniteMetricSpace,
    map: &SelfMap,
    kind: CorollaryKind,
    tol: Tolerance,
) -> Result<Option<Vec<PointId>>> {
    let holds = check_condition_one(map).holds() && check_corollary(m, map, kind, tol)?.holds();
    Ok(holds.then(|| enumerate_fixed_points(map)))
}
