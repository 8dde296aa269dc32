use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use gfix_core::conditions::{ConditionTwo, KANNAN_BOUND};
use gfix_core::fixtures::{line_triple, planar_triangle, reich_family, WorkedExample, REICH_FAMILY_DEFAULT_LAMBDA};
use gfix_core::gmetric::DEFAULT_CAUCHY_WINDOW;
use gfix_core::solver::{default_max_steps, Hypothesis};
use gfix_core::{
    banach_check, banach_tight_lambda, check_condition_one, delta_metric, enumerate_fixed_points, evaluate_conditions,
    is_g_cauchy_tail, kannan_check, kannan_tight_lambda, picard_iterate, reich_check, reich_uniform_tight_lambda,
    verify_axioms, verify_theorem_conclusion, ContractionKind, FiniteGSpace, ReichCoefficients, SelfMap, Status,
    TightReport, Tolerance, DEFAULT_EPSILON,
};
use serde::Serialize;

use crate::document::{self, GConstruction, Ingested, SpaceDocument};
use crate::report::*;

#[derive(Debug, Parser)]
#[command(name = "gfix", version, about = "Fixed-point checks on finite G-metric spaces")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Numeric tolerance for every comparison.
    #[arg(long, default_value_t = DEFAULT_EPSILON, global = true)]
    pub epsilon: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    Banach,
    Kannan,
    Reich,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DeriveConstruction {
    Sum,
    Max,
    Delta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Example {
    #[value(name = "3.3")]
    Triangle,
    #[value(name = "3.5")]
    Line,
    #[value(name = "reich")]
    Reich,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check (P1)-(P5) exhaustively.
    CheckAxioms {
        file: PathBuf,
    },
    /// Evaluate conditions (I) and (II) for one theorem.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        theorem: Theorem,
        /// Reich coefficients `a1,a2,a3,a4`.
        #[arg(long, value_parser = parse_coeffs, conflicts_with = "lambda")]
        coeffs: Option<[f64; 4]>,
        /// Check at this constant instead of computing the tight one.
        #[arg(long)]
        lambda: Option<f64>,
    },
    /// Smallest constant for condition (II).
    TightLambda {
        file: PathBuf,
        #[arg(long, value_enum)]
        theorem: Theorem,
    },
    /// Picard iteration from one point.
    Iterate {
        file: PathBuf,
        #[arg(long)]
        start: String,
        /// Defaults to the number of points plus one.
        #[arg(long)]
        max_steps: Option<usize>,
    },
    FixedPoints {
        file: PathBuf,
    },
    /// Print a derived space document.
    Derive {
        file: PathBuf,
        #[arg(long, value_enum)]
        construction: DeriveConstruction,
    },
    /// Hypotheses, fixed points and every orbit for one theorem.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long, value_parser = parse_coeffs)]
        coeffs: Option<[f64; 4]>,
    },
    /// Recompute a worked example from raw coordinates.
    Reproduce {
        #[arg(long, value_enum)]
        example: Example,
        /// Parameter of the reich example, in (0, 1/4).
        #[arg(long)]
        lambda: Option<f64>,
    },
}

fn parse_coeffs(s: &str) -> std::result::Result<[f64; 4], String> {
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    parts
        .try_into()
        .map_err(|v: Vec<f64>| format!("expected 4 coefficients, got {}", v.len()))
}

/// A rendered report and whether its verdict is positive.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub text: String,
    pub json: String,
    pub ok: bool,
}

impl Outcome {
    fn new<R: Render + Serialize>(report: &R, ok: bool) -> Result<Self> {
        let mut text = String::new();
        report.render(&mut text)?;
        Ok(Outcome {
            text,
            json: serde_json::to_string_pretty(report)? + "\n",
            ok,
        })
    }

    pub fn print(&self, format: Format) -> &str {
        match format {
            Format::Text => &self.text,
            Format::Json => &self.json,
        }
    }
}

fn theorem_name(t: Theorem) -> &'static str {
    match t {
        Theorem::Banach => "banach",
        Theorem::Kannan => "kannan",
        Theorem::Reich => "reich",
    }
}

fn coefficients(theorem: Theorem, coeffs: Option<[f64; 4]>) -> Result<Option<ReichCoefficients>> {
    match (theorem, coeffs) {
        (_, None) => Ok(None),
        (Theorem::Reich, Some(c)) => Ok(Some(ReichCoefficients::new(c)?)),
        (_, Some(_)) => bail!("--coeffs only applies to --theorem reich"),
    }
}

fn kind(theorem: Theorem, coeffs: Option<ReichCoefficients>) -> ContractionKind {
    match theorem {
        Theorem::Banach => ContractionKind::Banach,
        Theorem::Kannan => ContractionKind::Kannan,
        Theorem::Reich => ContractionKind::Reich(coeffs),
    }
}

fn tight(theorem: Theorem, space: &FiniteGSpace, map: &SelfMap, tol: Tolerance) -> Result<TightReport> {
    Ok(match theorem {
        Theorem::Banach => banach_tight_lambda(space, map, tol)?,
        Theorem::Kannan => kannan_tight_lambda(space, map, tol)?,
        Theorem::Reich => reich_uniform_tight_lambda(space, map, tol)?,
    })
}

fn check_report(
    ing: &Ingested,
    theorem: Theorem,
    coeffs: Option<[f64; 4]>,
    lambda: Option<f64>,
    tol: Tolerance,
) -> Result<CheckReport> {
    let map = ing.require_map()?;
    let points = ing.space.points();
    let coeffs = coefficients(theorem, coeffs)?;
    let condition_two = match (theorem, lambda, coeffs) {
        (_, None, None) => ConditionTwoJson::Tight(TightJson::new(points, &tight(theorem, &ing.space, map, tol)?)),
        (Theorem::Banach, Some(l), _) => ConditionTwoJson::Inequality(InequalityJson::new(
            points,
            vec![l],
            &banach_check(&ing.space, map, l, tol)?,
        )),
        (Theorem::Kannan, Some(l), _) => ConditionTwoJson::Inequality(InequalityJson::new(
            points,
            vec![l],
            &kannan_check(&ing.space, map, l, tol)?,
        )),
        (Theorem::Reich, Some(l), _) => {
            let c = ReichCoefficients::uniform(l)?;
            ConditionTwoJson::Inequality(InequalityJson::new(
                points,
                c.get().to_vec(),
                &reich_check(&ing.space, map, &c, tol)?,
            ))
        }
        (_, None, Some(c)) => ConditionTwoJson::Inequality(InequalityJson::new(
            points,
            c.get().to_vec(),
            &reich_check(&ing.space, map, &c, tol)?,
        )),
    };
    let condition_one = ConditionOneJson::new(points, &check_condition_one(map));
    Ok(CheckReport {
        theorem: theorem_name(theorem).to_string(),
        hypotheses_hold: condition_one.holds && condition_two.holds(),
        condition_one,
        condition_two,
    })
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let tol = Tolerance::new(cli.epsilon).context("invalid --epsilon")?;
    match &cli.command {
        Command::CheckAxioms { file } => {
            let loaded = document::load(file, tol)?;
            let table = loaded.table();
            let provenance = match &loaded.source {
                document::Source::Metric(_, GConstruction::Sum) => "sum-from-metric",
                document::Source::Metric(_, GConstruction::Max) => "max-from-metric",
                document::Source::Tensor(_) => "raw-tensor",
            };
            let axioms: Vec<AxiomLine> = verify_axioms(&table, tol)
                .into_iter()
                .map(|v| AxiomLine {
                    axiom: v.axiom.to_string(),
                    holds: v.holds(),
                    witness: v.witness.as_deref().map(|w| point_names(table.points(), w)),
                })
                .collect();
            let all_hold = axioms.iter().all(|a| a.holds);
            let report = AxiomsReport {
                points: table.len(),
                provenance: provenance.to_string(),
                epsilon: tol.eps(),
                axioms,
                all_hold,
            };
            Outcome::new(&report, all_hold)
        }
        Command::Check {
            file,
            theorem,
            coeffs,
            lambda,
        } => {
            let ing = document::ingest(file, tol)?;
            let report = check_report(&ing, *theorem, *coeffs, *lambda, tol)?;
            Outcome::new(&report, report.hypotheses_hold)
        }
        Command::TightLambda { file, theorem } => {
            let ing = document::ingest(file, tol)?;
            let r = tight(*theorem, &ing.space, ing.require_map()?, tol)?;
            let report = TightLambdaReport {
                theorem: theorem_name(*theorem).to_string(),
                tight: TightJson::new(ing.space.points(), &r),
            };
            Outcome::new(&report, r.holds())
        }
        Command::Iterate { file, start, max_steps } => {
            let ing = document::ingest(file, tol)?;
            let map = ing.require_map()?;
            let points = ing.space.points();
            let max_steps = max_steps.unwrap_or_else(|| default_max_steps(ing.space.len()));
            let trace = picard_iterate(&ing.space, map, points.id(start)?, max_steps)?;
            let report = IterateReport {
                start: start.clone(),
                max_steps,
                orbit: point_names(points, &trace.orbit),
                status: trace.status.as_str().to_string(),
                cycle_start: match trace.status {
                    Status::CycleDetected { start } => Some(start),
                    _ => None,
                },
                fixed_point: trace.fixed_point().map(|p| points.label(p).to_string()),
                triple_values: trace.triple_values.clone(),
                cauchy_window: DEFAULT_CAUCHY_WINDOW,
                cauchy_tail: is_g_cauchy_tail(&ing.space, &trace, DEFAULT_CAUCHY_WINDOW, tol),
            };
            Outcome::new(&report, trace.status == Status::FixedPointReached)
        }
        Command::FixedPoints { file } => {
            let ing = document::ingest(file, tol)?;
            let fix = enumerate_fixed_points(ing.require_map()?);
            let report = FixedPointsReport {
                count: fix.len(),
                fixed_points: point_names(ing.space.points(), &fix),
            };
            Outcome::new(&report, true)
        }
        Command::Derive { file, construction } => {
            let loaded = document::load(file, tol)?;
            let doc = match construction {
                DeriveConstruction::Sum | DeriveConstruction::Max => {
                    let metric = loaded
                        .metric()
                        .context("--construction sum|max needs a euclidean or metric-matrix geometry")?;
                    let c = if *construction == DeriveConstruction::Sum {
                        GConstruction::Sum
                    } else {
                        GConstruction::Max
                    };
                    SpaceDocument::from_space(&c.apply(metric), loaded.map.as_ref())
                }
                DeriveConstruction::Delta => {
                    let g = loaded.document.g_construction.unwrap_or(GConstruction::Max);
                    let map = loaded.map.clone();
                    let ing = loaded.into_ingested(tol)?;
                    SpaceDocument::from_metric(&delta_metric(&ing.space), g, map.as_ref())
                }
            };
            // the document itself is the report in both formats
            let json = serde_json::to_string_pretty(&doc)? + "\n";
            Ok(Outcome {
                text: json.clone(),
                json,
                ok: true,
            })
        }
        Command::Verify { file, theorem, coeffs } => {
            let ing = document::ingest(file, tol)?;
            let map = ing.require_map()?;
            let points = ing.space.points();
            let c = coefficients(*theorem, *coeffs)?;
            let ev = verify_theorem_conclusion(&ing.space, map, kind(*theorem, c), tol)?;
            let constants = c.map(|c| c.get().to_vec()).unwrap_or_default();
            let condition_one = ConditionOneJson::new(points, &ev.report.condition_one);
            let condition_two = ConditionTwoJson::from_core(points, &ev.report.condition_two, constants);
            let report = VerifyReport {
                check: CheckReport {
                    theorem: theorem_name(*theorem).to_string(),
                    hypotheses_hold: ev.hypotheses_hold(),
                    condition_one,
                    condition_two,
                },
                failed_hypotheses: ev
                    .failed_hypotheses
                    .iter()
                    .map(|h| match h {
                        Hypothesis::ConditionOne => "condition (I)".to_string(),
                        Hypothesis::ConditionTwo => "condition (II)".to_string(),
                    })
                    .collect(),
                decay_rate: ev.report.orbit_decay_rate(),
                fixed_points: point_names(points, &ev.fixed_points),
                orbits: ev.orbits.iter().map(|o| OrbitJson::new(points, o)).collect(),
                conclusion: ev.conclusion.as_ref().map(ConclusionJson::from),
            };
            let ok = report.conclusion.as_ref().is_some_and(|c| c.holds);
            Outcome::new(&report, ok)
        }
        Command::Reproduce { example, lambda } => {
            let report = match (example, lambda) {
                (Example::Triangle, None) => reproduce_triangle(tol)?,
                (Example::Line, None) => reproduce_line(tol)?,
                (Example::Reich, l) => reproduce_reich(l.unwrap_or(REICH_FAMILY_DEFAULT_LAMBDA), tol)?,
                (_, Some(_)) => bail!("--lambda only applies to --example reich"),
            };
            Outcome::new(&report, true)
        }
    }
}

fn base_report(name: &str, ex: &WorkedExample) -> ReproduceReport {
    ReproduceReport {
        example: name.to_string(),
        coordinates: ex
            .coordinates
            .iter()
            .map(|(label, coords)| Coordinate {
                label: label.clone(),
                coords: coords.clone(),
            })
            .collect(),
        ..Default::default()
    }
}

fn maps_section(report: &mut ReproduceReport, ex: &WorkedExample) {
    let points = ex.space.points();
    for (name, map) in &ex.maps {
        let one = check_condition_one(map);
        report.check(
            format!("condition (I) for {name}"),
            one.holds(),
            one.witness.map(|p| points.label(p).to_string()),
        );
        report.set(
            format!("Fix({name})"),
            point_names(points, &enumerate_fixed_points(map)),
        );
    }
}

fn map<'a>(ex: &'a WorkedExample, name: &str) -> Result<&'a SelfMap> {
    ex.map(name).with_context(|| format!("example has no map {name}"))
}

fn reproduce_triangle(tol: Tolerance) -> Result<ReproduceReport> {
    let ex = planar_triangle();
    let mut report = base_report("3.3", &ex);
    let p = |l| ex.space.points().id(l);
    let (a, b, c) = (p("A")?, p("B")?, p("C")?);
    report.value("|A - B|", ex.metric.d(a, b));
    report.value("|A - C|", ex.metric.d(a, c));
    report.value("|B - C|", ex.metric.d(b, c));
    report.value("G(A, B, C)", ex.space.g(a, b, c));
    for name in ["T1", "T2"] {
        let r = banach_tight_lambda(&ex.space, map(&ex, name)?, tol)?;
        if let Some(v) = r.constant.value() {
            report.value(format!("banach lambda* for {name}"), v);
        }
        if let Some(i) = r.admissible_interval() {
            report.intervals.push(NamedInterval {
                name: format!("banach admissible lambda for {name}"),
                interval: IntervalJson {
                    lo: i.lo,
                    lo_closed: i.lo_closed,
                    hi: i.hi,
                },
            });
        }
    }
    maps_section(&mut report, &ex);
    Ok(report)
}

fn reproduce_line(tol: Tolerance) -> Result<ReproduceReport> {
    let ex = line_triple();
    let mut report = base_report("3.5", &ex);
    for name in ["T1", "T2"] {
        let r = kannan_tight_lambda(&ex.space, map(&ex, name)?, tol)?;
        if let Some(e) = r.attained {
            report.value(
                format!("kannan lhs for {name} at {}", triple_names(ex.space.points(), e.triple)),
                e.lhs,
            );
            report.value(
                format!("kannan rhs for {name} at {}", triple_names(ex.space.points(), e.triple)),
                e.rhs,
            );
        }
        if let Some(v) = r.constant.value() {
            report.value(format!("kannan lambda* for {name}"), v);
        }
        if let Some(i) = r.admissible_interval() {
            report.intervals.push(NamedInterval {
                name: format!("kannan admissible lambda for {name}"),
                interval: IntervalJson {
                    lo: i.lo,
                    lo_closed: i.lo_closed,
                    hi: i.hi,
                },
            });
        }
    }
    report.value("kannan bound", KANNAN_BOUND);
    maps_section(&mut report, &ex);
    Ok(report)
}

fn reproduce_reich(lambda: f64, tol: Tolerance) -> Result<ReproduceReport> {
    let ex = reich_family(lambda)?;
    let mut report = base_report("reich", &ex);
    report.lambda = Some(lambda);
    let t = map(&ex, "T")?;
    let g = &ex.space;
    let points = g.points();
    let coeffs = ReichCoefficients::uniform(lambda)?;
    let verdict = evaluate_conditions(g, t, ContractionKind::Reich(Some(coeffs)), tol)?;
    let ConditionTwo::Fixed(v) = verdict.condition_two else {
        bail!("fixed coefficients give a fixed-coefficient verdict")
    };
    report.check("reich condition at uniform coefficients", v.holds(), None);
    let id = |l| points.id(l);
    let (a, b, c, d) = (id("a")?, id("b")?, id("c")?, id("d")?);
    for triple in [[a, b, c], [a, b, d], [a, c, d], [b, c, d]] {
        let [x, y, z] = triple;
        let moved = |p| g.g(p, t.apply(p), t.apply(p));
        let lhs = g.g(t.apply(x), t.apply(y), t.apply(z));
        let rhs = lambda * (moved(x) + moved(y) + moved(z) + g.g(x, y, z));
        let name = triple_names(points, triple);
        report.value(format!("lhs at {name}"), lhs);
        report.value(format!("rhs at {name}"), rhs);
        report.value(format!("slack at {name}"), rhs - lhs);
    }
    if let Some(l) = reich_uniform_tight_lambda(g, t, tol)?.constant.value() {
        report.value("uniform reich lambda*", l);
    }
    maps_section(&mut report, &ex);
    Ok(report)
}
