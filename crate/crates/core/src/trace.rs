use crate::space::PointId;

/// How a Picard orbit ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// The last orbit element is fixed by the map.
    FixedPointReached,
    /// The orbit re-entered itself; `orbit[start..]` is the cycle.
    CycleDetected { start: usize },
    /// The step budget ran out before the orbit settled.
    StepLimit,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::FixedPointReached => "fixed-point-reached",
            Status::CycleDetected { .. } => "cycle-detected",
            Status::StepLimit => "step-limit",
        }
    }
}

/// A Picard orbit `u0, u1 = T u0, ...` with its diagnostics.
///
/// Orbit points are pairwise distinct: the walk stops on the first
/// repetition, so a fixed point appears once and a cycle is listed once.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace {
    pub orbit: Vec<PointId>,
    pub status: Status,
    /// `G(u_n, u_{n+1}, u_{n+2})` for every `n` with `n + 2 < orbit.len()`.
    pub triple_values: Vec<f64>,
}

impl IterationTrace {
    pub fn start(&self) -> PointId {
        self.orbit[0]
    }

    pub fn last(&self) -> PointId {
        *self.orbit.last().expect("orbit is never empty")
    }

    /// The fixed point the orbit stabilised at, if any.
    pub fn fixed_point(&self) -> Option<PointId> {
        matches!(self.status, Status::FixedPointReached).then(|| self.last())
    }

    pub fn cycle(&self) -> Option<&[PointId]> {
        match self.status {
            Status::CycleDetected { start } => Some(&self.orbit[start..]),
            _ => None,
        }
    }

    /// The final `window` terms of the infinite orbit, continuing the
    /// eventual behaviour: a fixed point repeats, a cycle keeps cycling.
    /// A step-limited trace only has its recorded terms.
    pub fn tail(&self, window: usize) -> Vec<PointId> {
        match self.status {
            Status::FixedPointReached => vec![self.last(); window],
            Status::CycleDetected { start } => {
                let cycle = &self.orbit[start..];
                cycle.iter().copied().cycle().take(window).collect()
            }
            Status::StepLimit => {
                let from = self.orbit.len().saturating_sub(window);
                self.orbit[from..].to_vec()
            }
        }
    }
}
