//! Report types. Each report serializes to JSON and renders to text from
//! the same fields, so every number printed as text is also in the JSON.

use std::fmt::{self, Write};

use gfix_core::conditions::{ConditionTwo, Evaluation, InequalityVerdict, TightReport};
use gfix_core::solver::{Conclusion, OrbitSummary};
use gfix_core::{ConditionOne, PointId, PointSet, TightConstant, Triple};
use serde::Serialize;

pub trait Render {
    fn render(&self, out: &mut String) -> fmt::Result;
}

fn join(labels: &[String]) -> String {
    labels.join(", ")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn names(points: &PointSet, ids: &[PointId]) -> Vec<String> {
    ids.iter().map(|&p| points.label(p).to_string()).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct EvaluationJson {
    pub triple: Vec<String>,
    pub lhs: f64,
    pub rhs: f64,
}

impl EvaluationJson {
    pub fn new(points: &PointSet, e: &Evaluation) -> Self {
        EvaluationJson {
            triple: names(points, &e.triple),
            lhs: e.lhs,
            rhs: e.rhs,
        }
    }
}

impl fmt::Display for EvaluationJson {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}): lhs {}, rhs {}", join(&self.triple), self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IntervalJson {
    pub lo: f64,
    pub lo_closed: bool,
    pub hi: f64,
}

impl fmt::Display for IntervalJson {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_closed { '[' } else { '(' };
        write!(f, "{open}{}, {})", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TightJson {
    /// `null` when no constant works.
    pub constant: Option<f64>,
    pub bound: f64,
    pub holds: bool,
    pub interval: Option<IntervalJson>,
    pub attained: Option<EvaluationJson>,
}

impl TightJson {
    pub fn new(points: &PointSet, r: &TightReport) -> Self {
        TightJson {
            constant: match r.constant {
                TightConstant::Finite(v) => Some(v),
                TightConstant::Infeasible => None,
            },
            bound: r.bound,
            holds: r.holds(),
            interval: r.admissible_interval().map(|i| IntervalJson {
                lo: i.lo,
                lo_closed: i.lo_closed,
                hi: i.hi,
            }),
            attained: r.attained.as_ref().map(|e| EvaluationJson::new(points, e)),
        }
    }
}

impl Render for TightJson {
    fn render(&self, out: &mut String) -> fmt::Result {
        match self.constant {
            Some(v) => write!(out, "lambda* = {v} (bound {})", self.bound)?,
            None => write!(out, "infeasible (bound {})", self.bound)?,
        }
        writeln!(out, ", holds: {}", yes(self.holds))?;
        if let Some(i) = &self.interval {
            writeln!(out, "  admissible: {i}")?;
        }
        if let Some(e) = &self.attained {
            let what = if self.holds { "attained at" } else { "violated at" };
            writeln!(out, "  {what} {e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InequalityJson {
    pub constants: Vec<f64>,
    pub holds: bool,
    /// Triple with the largest `lhs - rhs`.
    pub worst: Option<EvaluationJson>,
}

impl InequalityJson {
    pub fn new(points: &PointSet, constants: Vec<f64>, v: &InequalityVerdict) -> Self {
        InequalityJson {
            constants,
            holds: v.holds(),
            worst: v.worst.as_ref().map(|e| EvaluationJson::new(points, e)),
        }
    }
}

impl Render for InequalityJson {
    fn render(&self, out: &mut String) -> fmt::Result {
        let cs: Vec<String> = self.constants.iter().map(f64::to_string).collect();
        writeln!(out, "constants ({}), holds: {}", cs.join(", "), yes(self.holds))?;
        if let Some(e) = &self.worst {
            writeln!(out, "  tightest at {e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum ConditionTwoJson {
    Tight(TightJson),
    Inequality(InequalityJson),
}

impl ConditionTwoJson {
    pub fn holds(&self) -> bool {
        match self {
            ConditionTwoJson::Tight(t) => t.holds,
            ConditionTwoJson::Inequality(i) => i.holds,
        }
    }

    pub fn from_core(points: &PointSet, c: &ConditionTwo, constants: Vec<f64>) -> Self {
        match c {
            ConditionTwo::Tight(r) => ConditionTwoJson::Tight(TightJson::new(points, r)),
            ConditionTwo::Fixed(v) => ConditionTwoJson::Inequality(InequalityJson::new(points, constants, v)),
        }
    }
}

impl Render for ConditionTwoJson {
    fn render(&self, out: &mut String) -> fmt::Result {
        match self {
            ConditionTwoJson::Tight(t) => t.render(out),
            ConditionTwoJson::Inequality(i) => i.render(out),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionOneJson {
    pub holds: bool,
    /// A point on a 2-cycle.
    pub witness: Option<String>,
}

impl ConditionOneJson {
    pub fn new(points: &PointSet, c: &ConditionOne) -> Self {
        ConditionOneJson {
            holds: c.holds(),
            witness: c.witness.map(|p| points.label(p).to_string()),
        }
    }
}

impl Render for ConditionOneJson {
    fn render(&self, out: &mut String) -> fmt::Result {
        match &self.witness {
            None => writeln!(out, "condition (I): holds"),
            Some(w) => writeln!(out, "condition (I): fails, `{w}` lies on a 2-cycle"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomLine {
    pub axiom: String,
    pub holds: bool,
    pub witness: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomsReport {
    pub points: usize,
    pub provenance: String,
    pub epsilon: f64,
    pub axioms: Vec<AxiomLine>,
    pub all_hold: bool,
}

impl Render for AxiomsReport {
    fn render(&self, out: &mut String) -> fmt::Result {
        writeln!(
            out,
            "{} points ({}), epsilon {}",
            self.points, self.provenance, self.epsilon
        )?;
        for a in &self.axioms {
            match &a.witness {
                None => writeln!(out, "{}: holds", a.axiom)?,
                Some(w) => writeln!(out, "{}: fails at ({})", a.axiom, join(w))?,
            }
        }
        writeln!(out, "all axioms hold: {}", yes(self.all_hold))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub theorem: String,
    pub condition_one: ConditionOneJson,
    pub condition_two: ConditionTwoJson,
    pub hypotheses_hold: bool,
}

impl Render for CheckReport {
    fn render(&self, out: &mut String) -> fmt::Result {
        writeln!(out, "theorem: {}", self.theorem)?;
        self.condition_one.render(out)?;
        write!(out, "condition (II): ")?;
        self.condition_two.render(out)?;
        writeln!(out, "hypotheses hold: {}", yes(self.hypotheses_hold))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TightLambdaReport {
    pub theorem: String,
    pub tight: TightJson,
}

impl Render for TightLambdaReport {
    fn render(&self, out: &mut String) -> fmt::Result {
        write!(out, "{}: ", self.theorem)?;
        self.tight.render(out)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IterateReport {
    pub start: String,
    pub max_steps: usize,
    pub orbit: Vec<String>,
    pub status: String,
    /// Orbit index the cycle re-enters at.
    pub cycle_start: Option<usize>,
    pub fixed_point: Option<String>,
    /// `G(u_n, u_{n+1}, u_{n+2})` along the orbit.
    pub triple_values: Vec<f64>,
    pub cauchy_window: usize,
    pub cauchy_tail: bool,
}

impl Render for IterateReport {
    fn render(&self, out: &mut String) -> fmt::Result {
        writeln!(
            out,
            "orbit from {} (at most {} steps): {}",
            self.start,
            self.max_steps,
            self.orbit.join(" -> ")
        )?;
        write!(out, "status: {}", self.status)?;
        match (&self.fixed_point, self.cycle_start) {
            (Some(p), _) => writeln!(out, ", fixed point {p}")?,
            (None, Some(s)) => writeln!(out, ", re-enters at index {s}")?,
            _ => writeln!(out)?,
        }
        if !self.triple_values.is_empty() {
            let vs: Vec<String> = self.triple_values.iter().map(f64::to_string).collect();
            writeln!(out, "triple values: {}", vs.join(", "))?;
        }
        writeln!(
            out,
            "G-Cauchy over a window of {}: {}",
            self.cauchy_window,
            yes(self.cauchy_tail)
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FixedPointsReport {
    pub count: usize,
    pub fixed_points: Vec<String>,
}

impl Render for FixedPointsReport {
    fn render(&self, out: &mut String) -> fmt::Result {
        if self.fixed_points.is_empty() {
            writeln!(out, "fixed points ({}): none", self.count)
        } else {
            writeln!(out, "fixed points ({}): {}", self.count, join(&self.fixed_points))
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitJson {
    pub start: String,
    pub status: String,
    pub terminal: String,
    pub steps: usize,
    pub decay_violation: Option<usize>,
}

impl OrbitJson {
    pub fn new(points: &PointSet, o: &OrbitSummary) -> Self {
        OrbitJson {
            start: points.label(o.start).to_string(),
            status: o.status.as_str().to_string(),
            terminal: points.label(o.terminal).to_string(),
            steps: o.steps,
            decay_violation: o.decay_violation,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConclusionJson {
    pub fixed_point_count_ok: bool,
    pub all_orbits_converge: bool,
    pub decay_ok: bool,
    pub holds: bool,
}

impl From<&Conclusion> for ConclusionJson {
    fn from(c: &Conclusion) -> Self {
        ConclusionJson {
            fixed_point_count_ok: c.fixed_point_count_ok,
            all_orbits_converge: c.all_orbits_converge,
            decay_ok: c.decay_ok,
            holds: c.holds(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub check: CheckReport,
    pub failed_hypotheses: Vec<String>,
    pub decay_rate: Option<f64>,
    pub fixed_points: Vec<String>,
    pub orbits: Vec<OrbitJson>,
    /// Absent when a hypothesis fails.
    pub conclusion: Option<ConclusionJson>,
}

impl Render for VerifyReport {
    fn render(&self, out: &mut String) -> fmt::Result {
        self.check.render(out)?;
        if !self.failed_hypotheses.is_empty() {
            writeln!(out, "failed hypotheses: {}", join(&self.failed_hypotheses))?;
        }
        if let Some(k) = self.decay_rate {
            writeln!(out, "orbit decay rate: {k}")?;
        }
        writeln!(out, "fixed points: {{{}}}", join(&self.fixed_points))?;
        for o in &self.orbits {
            write!(
                out,
                "  orbit from {}: {} at {} after {} points",
                o.start, o.status, o.terminal, o.steps
            )?;
            match o.decay_violation {
                Some(i) => writeln!(out, ", decay bound broken at index {i}")?,
                None => writeln!(out)?,
            }
        }
        match &self.conclusion {
            None => writeln!(out, "conclusion: not asserted"),
            Some(c) => writeln!(
                out,
                "conclusion: {} (one or two fixed points: {}, orbits converge: {}, decay: {})",
                if c.holds { "holds" } else { "FAILS" },
                yes(c.fixed_point_count_ok),
                yes(c.all_orbits_converge),
                yes(c.decay_ok)
            ),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedSet {
    pub name: String,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedInterval {
    pub name: String,
    pub interval: IntervalJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub holds: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Coordinate {
    pub label: String,
    pub coords: Vec<f64>,
}

/// Values recomputed from raw coordinates.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ReproduceReport {
    pub example: String,
    pub lambda: Option<f64>,
    pub coordinates: Vec<Coordinate>,
    pub values: Vec<NamedValue>,
    pub intervals: Vec<NamedInterval>,
    pub checks: Vec<NamedCheck>,
    pub sets: Vec<NamedSet>,
}

impl ReproduceReport {
    pub fn value(&mut self, name: impl Into<String>, value: f64) {
        self.values.push(NamedValue {
            name: name.into(),
            value,
        });
    }

    pub fn check(&mut self, name: impl Into<String>, holds: bool, witness: Option<String>) {
        self.checks.push(NamedCheck {
            name: name.into(),
            holds,
            witness,
        });
    }

    pub fn set(&mut self, name: impl Into<String>, members: Vec<String>) {
        self.sets.push(NamedSet {
            name: name.into(),
            members,
        });
    }
}

impl Render for ReproduceReport {
    fn render(&self, out: &mut String) -> fmt::Result {
        write!(out, "example {}", self.example)?;
        match self.lambda {
            Some(l) => writeln!(out, " with lambda = {l}")?,
            None => writeln!(out)?,
        }
        for c in &self.coordinates {
            let xs: Vec<String> = c.coords.iter().map(f64::to_string).collect();
            writeln!(out, "  {} = ({})", c.label, xs.join(", "))?;
        }
        for v in &self.values {
            writeln!(out, "{} = {}", v.name, v.value)?;
        }
        for i in &self.intervals {
            writeln!(out, "{}: {}", i.name, i.interval)?;
        }
        for c in &self.checks {
            match &c.witness {
                Some(w) if !c.holds => writeln!(out, "{}: fails at {w}", c.name)?,
                _ => writeln!(out, "{}: {}", c.name, if c.holds { "holds" } else { "fails" })?,
            }
        }
        for s in &self.sets {
            writeln!(out, "{} = {{{}}}", s.name, join(&s.members))?;
        }
        Ok(())
    }
}

pub fn triple_names(points: &PointSet, t: Triple) -> String {
    format!("({})", join(&names(points, &t)))
}

pub fn point_names(points: &PointSet, ids: &[PointId]) -> Vec<String> {
    names(points, ids)
}
