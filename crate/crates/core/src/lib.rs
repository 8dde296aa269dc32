//! Fixed-point toolkit for finite G-metric spaces.
//!
//! A G-metric assigns a nonnegative "perimeter" `G(x,y,z)` to every triple
//! of points. This crate validates such tables, builds them from ordinary
//! metrics, checks Banach, Kannan and Reich style contraction conditions
//! that only constrain pairwise-distinct triples, and runs Picard
//! iteration to confirm that such maps have one or two fixed points.
//!
//! ```
//! use gfix_core::{fixtures, banach_tight_lambda, check_condition_one, enumerate_fixed_points, Tolerance};
//!
//! let ex = fixtures::planar_triangle();
//! let t1 = ex.map("T1").unwrap();
//! let report = banach_tight_lambda(&ex.space, t1, Tolerance::default()).unwrap();
//! assert!((report.constant.value().unwrap() - 0.5).abs() < 1e-9);
//! assert!(check_condition_one(t1).holds());
//! assert_eq!(enumerate_fixed_points(t1).len(), 2);
//! ```

pub mod conditions;
pub mod corollaries;
pub mod error;
pub mod fixtures;
pub mod gmetric;
pub mod random;
pub mod solver;
pub mod space;
pub mod trace;

pub use conditions::{
    banach_check, banach_tight_lambda, check_condition_one, evaluate_conditions, kannan_check, kannan_tight_lambda,
    reich_check, reich_uniform_tight_lambda, ConditionOne, ConditionReport, ConditionTwo, ContractionKind, Evaluation,
    InequalityVerdict, Interval, ReichCoefficients, TightConstant, TightReport,
};
pub use corollaries::{CorollaryKind, ReductionPair};
pub use error::{Error, Result, Witness};
pub use gmetric::{
    delta_metric, euclidean_metric, g_from_metric_max, g_from_metric_sum, is_g_cauchy_tail, validate_space,
    verify_axioms, Axiom, AxiomVerdict,
};
pub use solver::{enumerate_fixed_points, picard_iterate, verify_theorem_conclusion, TheoremEvidence};
pub use space::{
    FiniteGSpace, FiniteMetricSpace, GTable, PointId, PointSet, Provenance, SelfMap, Tolerance, Triple, DEFAULT_EPSILON,
};
pub use trace::{IterationTrace, Status};
