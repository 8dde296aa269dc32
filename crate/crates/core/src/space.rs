//! Data model shared by every checker: labelled point sets, ternary
//! G-tables, metric spaces and self-maps.
//!
//! Every numeric comparison goes through [`Tolerance`], so a single
//! absolute epsilon governs axiom checks, condition checks and identities.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result, Witness};

/// Default absolute tolerance for every equality and inequality test.
pub const DEFAULT_EPSILON: f64 = 1e-9;

/// Position of a point in the declared point list of its space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointId(pub usize);

impl PointId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// An ordered triple of points.
pub type Triple = [PointId; 3];

/// Absolute tolerance used for all comparisons.
///
/// `LHS <= c * RHS` is accepted when `LHS <= c * RHS + eps`; strict
/// positivity requires the value to exceed `eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance(f64);

impl Tolerance {
    pub fn new(eps: f64) -> Result<Self> {
        if eps.is_finite() && eps >= 0.0 {
            Ok(Tolerance(eps))
        } else {
            Err(Error::ConstantOutOfRange {
                value: eps,
                range: "[0, inf)",
            })
        }
    }

    pub fn eps(self) -> f64 {
        self.0
    }

    /// `a <= b` up to tolerance.
    #[inline]
    pub fn le(self, a: f64, b: f64) -> bool {
        a <= b + self.0
    }

    /// `a == b` up to tolerance.
    #[inline]
    pub fn eq(self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.0
    }

    /// `a > 0` with a gap larger than the tolerance.
    #[inline]
    pub fn positive(self, a: f64) -> bool {
        a > self.0
    }

    /// `a == 0` up to tolerance.
    #[inline]
    pub fn zero(self, a: f64) -> bool {
        a.abs() <= self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(DEFAULT_EPSILON)
    }
}

/// Labelled, ordered set of points. Labels are unique.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    labels: Vec<String>,
    by_label: HashMap<String, PointId>,
}

impl PointSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptySpace);
        }
        let mut by_label = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if by_label.insert(label.clone(), PointId(i)).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(PointSet { labels, by_label })
    }

    /// Points labelled `p0, p1, ...`.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| format!("p{i}")))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, p: PointId) -> &str {
        &self.labels[p.0]
    }

    pub fn id(&self, label: &str) -> Result<PointId> {
        self.by_label
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }

    pub fn ids(&self) -> impl Iterator<Item = PointId> + '_ {
        (0..self.labels.len()).map(PointId)
    }

    pub fn contains(&self, p: PointId) -> bool {
        p.0 < self.labels.len()
    }

    pub fn witness(&self, points: &[PointId]) -> Witness {
        Witness(points.iter().map(|&p| self.label(p).to_string()).collect())
    }
}

/// How a G-table came to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    RawTensor,
    SumFromMetric,
    MaxFromMetric,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::RawTensor => "raw-tensor",
            Provenance::SumFromMetric => "sum-from-metric",
            Provenance::MaxFromMetric => "max-from-metric",
        })
    }
}

/// A full ordered ternary table of nonnegative values, not yet checked
/// against the G-metric axioms.
#[derive(Debug, Clone, PartialEq)]
pub struct GTable {
    points: PointSet,
    values: Vec<f64>,
}

impl GTable {
    /// `values` is row-major: entry `(x, y, z)` lives at `(x * n + y) * n + z`.
    pub fn new(points: PointSet, values: Vec<f64>) -> Result<Self> {
        let n = points.len();
        let expected = n * n * n;
        if values.len() != expected {
            return Err(Error::ShapeMismatch {
                expected,
                found: values.len(),
            });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite() || *v < 0.0) {
            let (x, y, z) = (pos / (n * n), (pos / n) % n, pos % n);
            return Err(Error::InvalidValue {
                value: values[pos],
                witness: points.witness(&[PointId(x), PointId(y), PointId(z)]),
            });
        }
        Ok(GTable { points, values })
    }

    pub fn from_fn(points: PointSet, mut f: impl FnMut(PointId, PointId, PointId) -> f64) -> Result<Self> {
        let n = points.len();
        let mut values = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    values.push(f(PointId(x), PointId(y), PointId(z)));
                }
            }
        }
        Self::new(points, values)
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn g(&self, x: PointId, y: PointId, z: PointId) -> f64 {
        let n = self.points.len();
        self.values[(x.0 * n + y.0) * n + z.0]
    }
}

/// A finite G-metric space whose table has passed all five axioms.
///
/// Only [`crate::gmetric::validate_space`] and the metric constructions
/// produce values of this type.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteGSpace {
    table: GTable,
    provenance: Provenance,
}

impl FiniteGSpace {
    pub(crate) fn from_parts(table: GTable, provenance: Provenance) -> Self {
        FiniteGSpace { table, provenance }
    }

    pub fn table(&self) -> &GTable {
        &self.table
    }

    pub fn points(&self) -> &PointSet {
        self.table.points()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    #[inline]
    pub fn g(&self, x: PointId, y: PointId, z: PointId) -> f64 {
        self.table.g(x, y, z)
    }

    pub fn g_triple(&self, t: Triple) -> f64 {
        self.table.g(t[0], t[1], t[2])
    }

    /// Errors unless the space has at least `required` points.
    pub fn require_points(&self, required: usize) -> Result<()> {
        require_points(self.len(), required)
    }
}

pub(crate) fn require_points(found: usize, required: usize) -> Result<()> {
    if found < required {
        Err(Error::TooFewPoints { required, found })
    } else {
        Ok(())
    }
}

/// The four metric axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricAxiom {
    /// `d(x,x) = 0`
    Identity,
    /// `d(x,y) > 0` for `x != y`
    Separation,
    /// `d(x,y) = d(y,x)`
    Symmetry,
    /// `d(x,z) <= d(x,y) + d(y,z)`
    Triangle,
}

impl MetricAxiom {
    pub const ALL: [MetricAxiom; 4] = [
        MetricAxiom::Identity,
        MetricAxiom::Separation,
        MetricAxiom::Symmetry,
        MetricAxiom::Triangle,
    ];
}

impl fmt::Display for MetricAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MetricAxiom::Identity => "identity",
            MetricAxiom::Separation => "separation",
            MetricAxiom::Symmetry => "symmetry",
            MetricAxiom::Triangle => "triangle",
        })
    }
}

/// Outcome of one metric axiom; `witness` is the lexicographically
/// smallest offending tuple, present iff the axiom fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricVerdict {
    pub axiom: MetricAxiom,
    pub witness: Option<Vec<PointId>>,
}

impl MetricVerdict {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks every metric axiom exhaustively on a square row-major matrix.
pub fn verify_metric_axioms(n: usize, d: &[f64], tol: Tolerance) -> Vec<MetricVerdict> {
    assert_eq!(d.len(), n * n, "distance matrix must be n x n");
    let at = |i: usize, j: usize| d[i * n + j];
    let ids = |w: &[usize]| w.iter().copied().map(PointId).collect::<Vec<_>>();

    let identity = (0..n).find(|&i| !tol.zero(at(i, i))).map(|i| ids(&[i, i]));
    let pairs = || (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)));
    let separation = pairs()
        .find(|&(i, j)| i != j && !tol.positive(at(i, j)))
        .map(|(i, j)| ids(&[i, j]));
    let symmetry = pairs()
        .find(|&(i, j)| !tol.eq(at(i, j), at(j, i)))
        .map(|(i, j)| ids(&[i, j]));
    let triangle = pairs()
        .flat_map(|(i, j)| (0..n).map(move |k| (i, j, k)))
        .find(|&(i, j, k)| !tol.le(at(i, k), at(i, j) + at(j, k)))
        .map(|(i, j, k)| ids(&[i, j, k]));

    [identity, separation, symmetry, triangle]
        .into_iter()
        .zip(MetricAxiom::ALL)
        .map(|(witness, axiom)| MetricVerdict { axiom, witness })
        .collect()
}

/// A finite metric space; construction checks all metric axioms.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    points: PointSet,
    d: Vec<f64>,
}

impl FiniteMetricSpace {
    /// `d` is the row-major `n x n` distance matrix.
    pub fn new(points: PointSet, d: Vec<f64>, tol: Tolerance) -> Result<Self> {
        let n = points.len();
        if d.len() != n * n {
            return Err(Error::ShapeMismatch {
                expected: n * n,
                found: d.len(),
            });
        }
        if let Some(pos) = d.iter().position(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidValue {
                value: d[pos],
                witness: points.witness(&[PointId(pos / n), PointId(pos % n)]),
            });
        }
        if let Some(v) = verify_metric_axioms(n, &d, tol).into_iter().find(|v| !v.holds()) {
            return Err(Error::MetricViolation {
                axiom: v.axiom,
                witness: points.witness(v.witness.as_deref().unwrap_or_default()),
            });
        }
        Ok(FiniteMetricSpace { points, d })
    }

    pub fn from_rows(points: PointSet, rows: &[Vec<f64>], tol: Tolerance) -> Result<Self> {
        let n = points.len();
        if rows.len() != n {
            return Err(Error::ShapeMismatch {
                expected: n,
                found: rows.len(),
            });
        }
        if let Some(row) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::ShapeMismatch {
                expected: n,
                found: row.len(),
            });
        }
        Self::new(points, rows.concat(), tol)
    }

    pub(crate) fn from_parts_unchecked(points: PointSet, d: Vec<f64>) -> Self {
        FiniteMetricSpace { points, d }
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    #[inline]
    pub fn d(&self, x: PointId, y: PointId) -> f64 {
        self.d[x.0 * self.points.len() + y.0]
    }

    pub fn matrix(&self) -> &[f64] {
        &self.d
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.d.chunks(self.len()).map(<[f64]>::to_vec).collect()
    }
}

/// A total map from a point set into itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SelfMap {
    image: Vec<PointId>,
}

impl SelfMap {
    pub fn new(image: Vec<PointId>) -> Result<Self> {
        let n = image.len();
        if n == 0 {
            return Err(Error::EmptySpace);
        }
        if let Some(p) = image.iter().find(|p| p.0 >= n) {
            return Err(Error::MapNotTotal(format!("image index {} out of range 0..{n}", p.0)));
        }
        Ok(SelfMap { image })
    }

    pub fn from_indices(image: &[usize]) -> Result<Self> {
        Self::new(image.iter().copied().map(PointId).collect())
    }

    /// Builds a map from `(source, target)` label pairs that must cover
    /// every point exactly once.
    pub fn from_labels<'a, I>(points: &PointSet, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut image: Vec<Option<PointId>> = vec![None; points.len()];
        for (src, dst) in pairs {
            let s = points.id(src)?;
            let t = points.id(dst)?;
            if image[s.0].replace(t).is_some() {
                return Err(Error::MapNotTotal(format!("point `{src}` mapped twice")));
            }
        }
        let image = image
            .into_iter()
            .enumerate()
            .map(|(i, t)| t.ok_or_else(|| Error::MapNotTotal(format!("point `{}` has no image", points.labels()[i]))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(image)
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new((0..n).map(PointId).collect())
    }

    pub fn constant(n: usize, target: PointId) -> Result<Self> {
        Self::new(vec![target; n])
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, p: PointId) -> PointId {
        self.image[p.0]
    }

    pub fn image(&self) -> &[PointId] {
        &self.image
    }

    /// Errors unless the map acts on exactly `points`.
    pub fn check_domain(&self, points: &PointSet) -> Result<()> {
        if self.len() != points.len() {
            return Err(Error::MapNotTotal(format!(
                "map covers {} points, space has {}",
                self.len(),
                points.len()
            )));
        }
        Ok(())
    }
}

/// Pairwise-distinct triples `x < y < z` in lexicographic order.
pub fn unordered_triples(n: usize) -> impl Iterator<Item = Triple> {
    (0..n)
        .flat_map(move |x| (x + 1..n).flat_map(move |y| (y + 1..n).map(move |z| [PointId(x), PointId(y), PointId(z)])))
}

/// Pairwise-distinct ordered triples in lexicographic order.
pub fn ordered_triples(n: usize) -> impl Iterator<Item = Triple> {
    (0..n).flat_map(move |x| {
        (0..n).filter(move |&y| y != x).flat_map(move |y| {
            (0..n)
                .filter(move |&z| z != x && z != y)
                .map(move |z| [PointId(x), PointId(y), PointId(z)])
        })
    })
}
