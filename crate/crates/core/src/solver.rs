//! Picard iteration and the fixed-point conclusions of the contraction
//! theorems: under conditions (I) and (II), `1 <= |Fix(T)| <= 2` and every
//! orbit settles at a fixed point.

use crate::conditions::{evaluate_conditions, ConditionReport, ContractionKind};
use crate::error::{Error, Result};
use crate::space::{FiniteGSpace, PointId, SelfMap, Tolerance};
use crate::trace::{IterationTrace, Status};

/// All `p` with `Tp = p`, in declaration order.
pub fn enumerate_fixed_points(map: &SelfMap) -> Vec<PointId> {
    (0..map.len()).map(PointId).filter(|&p| map.apply(p) == p).collect()
}

/// Step budget that always suffices on a space of `n` points.
pub fn default_max_steps(n: usize) -> usize {
    n + 1
}

/// Iterates `u_{n+1} = T u_n` from `start`.
///
/// Stops when the orbit hits a fixed point, revisits an earlier point
/// (the cycle is `orbit[start..]`), or has applied the map `max_steps`
/// times.
pub fn picard_iterate(space: &FiniteGSpace, map: &SelfMap, start: PointId, max_steps: usize) -> Result<IterationTrace> {
    if !space.points().contains(start) {
        return Err(Error::UnknownPoint(format!("#{}", start.index())));
    }
    map.check_domain(space.points())?;

    let mut position = vec![None; space.len()];
    let mut orbit = vec![start];
    position[start.index()] = Some(0);
    let mut current = start;
    let mut steps = 0;
    let status = loop {
        if steps == max_steps {
            break Status::StepLimit;
        }
        let next = map.apply(current);
        steps += 1;
        if next == current {
            break Status::FixedPointReached;
        }
        if let Some(at) = position[next.index()] {
            break Status::CycleDetected { start: at };
        }
        position[next.index()] = Some(orbit.len());
        orbit.push(next);
        current = next;
    };

    let triple_values = orbit.windows(3).map(|w| space.g(w[0], w[1], w[2])).collect();
    Ok(IterationTrace {
        orbit,
        status,
        triple_values,
    })
}

/// Orbit lookup by label.
pub fn picard_iterate_from(
    space: &FiniteGSpace,
    map: &SelfMap,
    start: &str,
    max_steps: usize,
) -> Result<IterationTrace> {
    picard_iterate(space, map, space.points().id(start)?, max_steps)
}

/// Checks `G(u_n, u_{n+1}, u_{n+2}) <= tau0 * rate^n + eps` along a trace,
/// where `tau0 = G(u_0, u_1, u_2)`. Returns the first index that breaks
/// the bound.
pub fn first_decay_violation(trace: &IterationTrace, rate: f64, tol: Tolerance) -> Option<usize> {
    let tau0 = *trace.triple_values.first()?;
    trace
        .triple_values
        .iter()
        .enumerate()
        .find(|&(n, &v)| !tol.le(v, tau0 * rate.powi(n as i32)))
        .map(|(n, _)| n)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitSummary {
    pub start: PointId,
    pub status: Status,
    pub terminal: PointId,
    pub steps: usize,
    /// First index breaking the geometric decay bound, if any.
    pub decay_violation: Option<usize>,
}

/// Which hypothesis of the theorem failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    ConditionOne,
    ConditionTwo,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Conclusion {
    /// `1 <= |Fix(T)| <= 2`.
    pub fixed_point_count_ok: bool,
    /// Every orbit ended at a fixed point.
    pub all_orbits_converge: bool,
    /// Every orbit obeyed the geometric decay bound.
    pub decay_ok: bool,
}

impl Conclusion {
    pub fn holds(&self) -> bool {
        self.fixed_point_count_ok && self.all_orbits_converge && self.decay_ok
    }
}

/// Evidence for one theorem on one instance. `conclusion` is only
/// asserted when both hypotheses hold.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremEvidence {
    pub report: ConditionReport,
    pub failed_hypotheses: Vec<Hypothesis>,
    pub fixed_points: Vec<PointId>,
    pub orbits: Vec<OrbitSummary>,
    pub conclusion: Option<Conclusion>,
}

impl TheoremEvidence {
    pub fn hypotheses_hold(&self) -> bool {
        self.failed_hypotheses.is_empty()
    }
}

pub fn verify_theorem_conclusion(
    space: &FiniteGSpace,
    map: &SelfMap,
    kind: ContractionKind,
    tol: Tolerance,
) -> Result<TheoremEvidence> {
    let report = evaluate_conditions(space, map, kind, tol)?;
    let mut failed_hypotheses = Vec::new();
    if !report.condition_one.holds() {
        failed_hypotheses.push(Hypothesis::ConditionOne);
    }
    if !report.condition_two.holds() {
        failed_hypotheses.push(Hypothesis::ConditionTwo);
    }

    let fixed_points = enumerate_fixed_points(map);
    let rate = report.orbit_decay_rate();
    let max_steps = default_max_steps(space.len());
    let orbits = space
        .points()
        .ids()
        .map(|start| {
            let trace = picard_iterate(space, map, start, max_steps)?;
            Ok(OrbitSummary {
                start,
                status: trace.status,
                terminal: trace.last(),
                steps: trace.orbit.len(),
                decay_violation: rate.and_then(|k| first_decay_violation(&trace, k, tol)),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let conclusion = failed_hypotheses.is_empty().then(|| Conclusion {
        fixed_point_count_ok: (1..=2).contains(&fixed_points.len()),
        all_orbits_converge: orbits.iter().all(|o| o.status == Status::FixedPointReached),
        decay_ok: orbits.iter().all(|o| o.decay_violation.is_none()),
    });

    Ok(TheoremEvidence {
        report,
        failed_hypotheses,
        fixed_points,
        orbits,
        conclusion,
    })
}
