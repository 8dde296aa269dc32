//! G-metric axioms, the canonical constructions from an ordinary metric,
//! the derived metric `delta`, and convergence predicates on finite orbits.
//!
//! A G-metric on `X` is a map `G: X^3 -> [0, inf)` with
//!
//! * P1: `G(x,y,z) = 0` iff `x = y = z`
//! * P2: `G(x,x,y) > 0` for `x != y`
//! * P3: `G` is invariant under permutations of its arguments
//! * P4: `G(x,x,y) <= G(x,y,z)` for `y != z`
//! * P5: `G(x,y,z) <= G(x,w,w) + G(w,y,z)`
//!
//! Both constructions from a metric `d` satisfy `G(x,y,y) = c * d(x,y)`
//! with `c = 2` for the sum form and `c = 1` for the max form. Some
//! completeness arguments in the literature write the sum-form identity
//! with a factor of one half; direct evaluation of the sum gives 2.

use std::fmt;

use crate::error::{Error, Result};
use crate::space::{FiniteGSpace, FiniteMetricSpace, GTable, PointId, PointSet, Provenance, Tolerance};
use crate::trace::IterationTrace;

/// Number of tail terms inspected by the convergence predicates.
pub const DEFAULT_CAUCHY_WINDOW: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    P1,
    P2,
    P3,
    P4,
    P5,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [Axiom::P1, Axiom::P2, Axiom::P3, Axiom::P4, Axiom::P5];
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = *self as u8 + 1;
        write!(f, "P{n}")
    }
}

/// Outcome of one axiom check. The witness is present iff the axiom
/// fails and is the lexicographically smallest offending tuple:
/// `(x,y,z)` for P1, P3, P4, `(x,x,y)` for P2 and `(x,y,z,w)` for P5.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub witness: Option<Vec<PointId>>,
}

impl AxiomVerdict {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

const PERMUTATIONS: [[usize; 3]; 5] = [[0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Re-evaluates `axiom` on a single witness tuple; true when the tuple
/// is a genuine violation.
pub fn violates(table: &GTable, axiom: Axiom, witness: &[PointId], tol: Tolerance) -> bool {
    match (axiom, witness) {
        (Axiom::P1, &[x, y, z]) => {
            let all_equal = x == y && y == z;
            all_equal != tol.zero(table.g(x, y, z))
        }
        (Axiom::P2, &[x, x2, y]) => x == x2 && x != y && !tol.positive(table.g(x, x, y)),
        (Axiom::P3, &[x, y, z]) => {
            let t = [x, y, z];
            let base = table.g(x, y, z);
            PERMUTATIONS
                .iter()
                .any(|p| !tol.eq(base, table.g(t[p[0]], t[p[1]], t[p[2]])))
        }
        (Axiom::P4, &[x, y, z]) => y != z && !tol.le(table.g(x, x, y), table.g(x, y, z)),
        (Axiom::P5, &[x, y, z, w]) => !tol.le(table.g(x, y, z), table.g(x, w, w) + table.g(w, y, z)),
        _ => false,
    }
}

fn first_triple(n: usize, mut bad: impl FnMut(PointId, PointId, PointId) -> bool) -> Option<Vec<PointId>> {
    for x in (0..n).map(PointId) {
        for y in (0..n).map(PointId) {
            for z in (0..n).map(PointId) {
                if bad(x, y, z) {
                    return Some(vec![x, y, z]);
                }
            }
        }
    }
    None
}

/// Checks all five axioms exhaustively; P5 is an `O(n^4)` scan.
pub fn verify_axioms(table: &GTable, tol: Tolerance) -> Vec<AxiomVerdict> {
    let n = table.len();
    Axiom::ALL
        .iter()
        .map(|&axiom| {
            let witness = match axiom {
                Axiom::P1 | Axiom::P3 | Axiom::P4 => first_triple(n, |x, y, z| violates(table, axiom, &[x, y, z], tol)),
                Axiom::P2 => first_triple(n, |x, x2, y| x == x2 && violates(table, axiom, &[x, x, y], tol)),
                Axiom::P5 => {
                    let mut found = None;
                    'outer: for x in (0..n).map(PointId) {
                        for y in (0..n).map(PointId) {
                            for z in (0..n).map(PointId) {
                                let lhs = table.g(x, y, z);
                                for w in (0..n).map(PointId) {
                                    if !tol.le(lhs, table.g(x, w, w) + table.g(w, y, z)) {
                                        found = Some(vec![x, y, z, w]);
                                        break 'outer;
                                    }
                                }
                            }
                        }
                    }
                    found
                }
            };
            AxiomVerdict { axiom, witness }
        })
        .collect()
}

/// Promotes a raw tensor to a validated space, or reports the first
/// failing axiom with its witness.
pub fn validate_space(raw: GTable, tol: Tolerance) -> Result<FiniteGSpace> {
    validate_with_provenance(raw, Provenance::RawTensor, tol)
}

pub(crate) fn validate_with_provenance(raw: GTable, provenance: Provenance, tol: Tolerance) -> Result<FiniteGSpace> {
    if raw.is_empty() {
        return Err(Error::EmptySpace);
    }
    if let Some(failed) = verify_axioms(&raw, tol).into_iter().find(|v| !v.holds()) {
        let witness = raw.points().witness(failed.witness.as_deref().unwrap_or_default());
        return Err(Error::AxiomViolation {
            axiom: failed.axiom,
            witness,
        });
    }
    Ok(FiniteGSpace::from_parts(raw, provenance))
}

/// `G(x,y,z) = d(x,y) + d(y,z) + d(x,z)`.
pub fn g_from_metric_sum(m: &FiniteMetricSpace) -> FiniteGSpace {
    let table = GTable::from_fn(m.points().clone(), |x, y, z| m.d(x, y) + m.d(y, z) + m.d(x, z))
        .expect("metric distances are finite and nonnegative");
    FiniteGSpace::from_parts(table, Provenance::SumFromMetric)
}

/// `G(x,y,z) = max{d(x,y), d(y,z), d(x,z)}`.
pub fn g_from_metric_max(m: &FiniteMetricSpace) -> FiniteGSpace {
    let table = GTable::from_fn(m.points().clone(), |x, y, z| m.d(x, y).max(m.d(y, z)).max(m.d(x, z)))
        .expect("metric distances are finite and nonnegative");
    FiniteGSpace::from_parts(table, Provenance::MaxFromMetric)
}

/// `delta(x,y) = max{G(x,y,y), G(y,x,x)}`, a metric for every G-metric.
pub fn delta_metric(space: &FiniteGSpace) -> FiniteMetricSpace {
    let n = space.len();
    let mut d = vec![0.0; n * n];
    for x in 0..n {
        for y in 0..n {
            let (px, py) = (PointId(x), PointId(y));
            d[x * n + y] = space.g(px, py, py).max(space.g(py, px, px));
        }
    }
    FiniteMetricSpace::from_parts_unchecked(space.points().clone(), d)
}

/// Pairwise Euclidean distances between labelled coordinate vectors.
pub fn euclidean_metric<S: AsRef<str>>(points: &[(S, Vec<f64>)], tol: Tolerance) -> Result<FiniteMetricSpace> {
    let set = PointSet::new(points.iter().map(|(l, _)| l.as_ref().to_string()))?;
    let dim = points[0].1.len();
    for (label, coords) in points {
        if coords.len() != dim {
            return Err(Error::DimensionMismatch {
                label: label.as_ref().to_string(),
                expected: dim,
                found: coords.len(),
            });
        }
        if let Some(v) = coords.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidValue {
                value: *v,
                witness: set.witness(&[set.id(label.as_ref())?]),
            });
        }
    }
    let n = points.len();
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let dist = points[i]
                .1
                .iter()
                .zip(&points[j].1)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            if !tol.positive(dist) {
                return Err(Error::CoincidentPoints(
                    points[i].0.as_ref().to_string(),
                    points[j].0.as_ref().to_string(),
                ));
            }
            d[i * n + j] = dist;
        }
    }
    FiniteMetricSpace::new(set, d, tol)
}

/// Cauchy diagnostic: every `G(u_n, u_m, u_m)` with `n < m` over the
/// final `window` terms of the orbit is within `tol` of zero.
pub fn is_g_cauchy_tail(space: &FiniteGSpace, trace: &IterationTrace, window: usize, tol: Tolerance) -> bool {
    let tail = trace.tail(window);
    tail.iter()
        .enumerate()
        .all(|(i, &u)| tail[i + 1..].iter().all(|&v| tol.zero(space.g(u, v, v))))
}

/// Convergence diagnostic towards `limit`: both `G(u_n, u_n, x)` and
/// `G(u_n, x, x)` vanish over the final `window` terms.
pub fn is_g_convergent_tail(
    space: &FiniteGSpace,
    trace: &IterationTrace,
    limit: PointId,
    window: usize,
    tol: Tolerance,
) -> bool {
    trace
        .tail(window)
        .iter()
        .all(|&u| tol.zero(space.g(u, u, limit)) && tol.zero(space.g(u, limit, limit)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::Status;
    use approx::assert_abs_diff_eq;

    fn line(coords: &[(&str, f64)]) -> FiniteMetricSpace {
        let pts: Vec<(&str, Vec<f64>)> = coords.iter().map(|&(l, x)| (l, vec![x])).collect();
        euclidean_metric(&pts, Tolerance::default()).unwrap()
    }

    fn ids(v: &[usize]) -> Vec<PointId> {
        v.iter().copied().map(PointId).collect()
    }

    #[test]
    fn axiom_labels() {
        assert_eq!(Axiom::P1.to_string(), "P1");
        assert_eq!(Axiom::P5.to_string(), "P5");
    }

    #[test]
    fn zero_table_fails_p2_at_xxy() {
        let table = GTable::new(PointSet::new(["x", "y"]).unwrap(), vec![0.0; 8]).unwrap();
        let verdicts = verify_axioms(&table, Tolerance::default());
        let p2 = &verdicts[1];
        assert_eq!(p2.axiom, Axiom::P2);
        assert_eq!(p2.witness.as_deref(), Some(&ids(&[0, 0, 1])[..]));
        assert!(violates(&table, Axiom::P2, &ids(&[0, 0, 1]), Tolerance::default()));
    }

    #[test]
    fn nonzero_diagonal_fails_p1() {
        let m = line(&[("a", 0.0), ("b", 1.0)]);
        let mut values = g_from_metric_max(&m).table().values().to_vec();
        values[0] = 1.0;
        let table = GTable::new(m.points().clone(), values).unwrap();
        let err = validate_space(table, Tolerance::default()).unwrap_err();
        match err {
            Error::AxiomViolation { axiom, witness } => {
                assert_eq!(axiom, Axiom::P1);
                assert_eq!(witness.0, ["a", "a", "a"]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn asymmetric_tensor_fails_p3() {
        let m = line(&[("a", 0.0), ("b", 1.0), ("c", 3.0)]);
        let mut values = g_from_metric_sum(&m).table().values().to_vec();
        // perturb G(a,b,c) only
        values[5] += 0.5;
        let table = GTable::new(m.points().clone(), values).unwrap();
        let verdicts = verify_axioms(&table, Tolerance::default());
        assert!(verdicts[0].holds() && verdicts[1].holds());
        assert_eq!(verdicts[2].witness.as_deref(), Some(&ids(&[0, 1, 2])[..]));
    }

    #[test]
    fn p4_and_p5_violations_detected() {
        // G(x,x,y) large while G(x,y,z) small breaks P4
        let pts = PointSet::new(["x", "y", "z"]).unwrap();
        let table = GTable::from_fn(pts.clone(), |a, b, c| {
            let mut s = [a.0, b.0, c.0];
            s.sort();
            match s {
                [i, j, k] if i == j && j == k => 0.0,
                [0, 1, 2] => 1.0,
                _ => 5.0,
            }
        })
        .unwrap();
        let v = verify_axioms(&table, Tolerance::default());
        assert!(v[0].holds() && v[1].holds() && v[2].holds());
        assert_eq!(v[3].witness.as_deref(), Some(&ids(&[0, 1, 2])[..]));

        let table = GTable::from_fn(pts, |a, b, c| {
            let mut s = [a.0, b.0, c.0];
            s.sort();
            match s {
                [i, j, k] if i == j && j == k => 0.0,
                [0, 2, 2] | [0, 0, 2] => 10.0,
                [0, 1, 2] => 10.0,
                _ => 1.0,
            }
        })
        .unwrap();
        let v = verify_axioms(&table, Tolerance::default());
        assert!(v[3].holds());
        let w = v[4].witness.clone().expect("P5 must fail");
        assert!(violates(&table, Axiom::P5, &w, Tolerance::default()));
    }

    #[test]
    fn sum_construction_values() {
        let m = line(&[("a", 0.0), ("b", 0.2), ("c", 1.0)]);
        let g = g_from_metric_sum(&m);
        let (a, b, c) = (PointId(0), PointId(1), PointId(2));
        assert_abs_diff_eq!(g.g(a, b, c), 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(g.g(a, c, c), 2.0, epsilon = 1e-12);
        assert_eq!(g.g(b, b, b), 0.0);
        assert_eq!(g.provenance(), Provenance::SumFromMetric);
        assert!(verify_axioms(g.table(), Tolerance::default())
            .iter()
            .all(AxiomVerdict::holds));
    }

    #[test]
    fn delta_of_constructions() {
        let m = line(&[("a", 0.0), ("b", 0.2), ("c", 1.0), ("d", 2.5)]);
        let sum = delta_metric(&g_from_metric_sum(&m));
        let max = delta_metric(&g_from_metric_max(&m));
        for x in m.points().ids() {
            for y in m.points().ids() {
                assert_abs_diff_eq!(sum.d(x, y), 2.0 * m.d(x, y), epsilon = 1e-12);
                assert_abs_diff_eq!(max.d(x, y), m.d(x, y), epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn euclidean_errors() {
        let tol = Tolerance::default();
        let mismatch = [("a", vec![0.0, 0.0]), ("b", vec![1.0])];
        assert!(matches!(
            euclidean_metric(&mismatch, tol),
            Err(Error::DimensionMismatch { .. })
        ));
        let same = [("a", vec![1.0, 2.0]), ("b", vec![1.0, 2.0])];
        assert_eq!(
            euclidean_metric(&same, tol),
            Err(Error::CoincidentPoints("a".into(), "b".into()))
        );
        let dup = [("a", vec![1.0]), ("a", vec![2.0])];
        assert_eq!(euclidean_metric(&dup, tol), Err(Error::DuplicateLabel("a".into())));
    }

    #[test]
    fn cauchy_tail_on_constructed_traces() {
        let m = line(&[("p", 0.0), ("q", 1.0), ("r", 3.0)]);
        let g = g_from_metric_max(&m);
        let tol = Tolerance::default();
        let fixed = IterationTrace {
            orbit: ids(&[2, 0]),
            status: Status::FixedPointReached,
            triple_values: vec![],
        };
        assert!(is_g_cauchy_tail(&g, &fixed, DEFAULT_CAUCHY_WINDOW, tol));
        assert!(is_g_convergent_tail(&g, &fixed, PointId(0), DEFAULT_CAUCHY_WINDOW, tol));
        assert!(!is_g_convergent_tail(
            &g,
            &fixed,
            PointId(1),
            DEFAULT_CAUCHY_WINDOW,
            tol
        ));

        let two_cycle = IterationTrace {
            orbit: ids(&[0, 1]),
            status: Status::CycleDetected { start: 0 },
            triple_values: vec![],
        };
        assert!(!is_g_cauchy_tail(&g, &two_cycle, DEFAULT_CAUCHY_WINDOW, tol));
        assert!(!is_g_convergent_tail(
            &g,
            &two_cycle,
            PointId(0),
            DEFAULT_CAUCHY_WINDOW,
            tol
        ));
    }
}
