//! JSON space documents.
//!
//! ```json
//! {
//!   "points": ["a", "b", "c"],
//!   "geometry": { "kind": "euclidean", "coords": { "a": [0.0], "b": [0.2], "c": [1.0] } },
//!   "g_construction": "max",
//!   "map": { "a": "a", "b": "b", "c": "a" }
//! }
//! ```
//!
//! `geometry.kind` is `euclidean` (`coords`), `metric-matrix` (`matrix`,
//! square, in point order) or `g-tensor` (`tensor`, cubic, indexed
//! `tensor[x][y][z]`). `g_construction` is required for the first two and
//! rejected for tensors.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use gfix_core::{
    euclidean_metric, g_from_metric_max, g_from_metric_sum, validate_space, FiniteGSpace, FiniteMetricSpace, GTable,
    PointSet, SelfMap, Tolerance,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDocument {
    pub points: Vec<String>,
    pub geometry: Geometry,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_construction: Option<GConstruction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Geometry {
    Euclidean { coords: BTreeMap<String, Vec<f64>> },
    MetricMatrix { matrix: Vec<Vec<f64>> },
    GTensor { tensor: Vec<Vec<Vec<f64>>> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GConstruction {
    Sum,
    Max,
}

impl GConstruction {
    pub fn apply(self, metric: &FiniteMetricSpace) -> FiniteGSpace {
        match self {
            GConstruction::Sum => g_from_metric_sum(metric),
            GConstruction::Max => g_from_metric_max(metric),
        }
    }
}

/// Where the G-values of a document come from.
#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Metric(FiniteMetricSpace, GConstruction),
    /// Unvalidated tensor.
    Tensor(GTable),
}

/// A parsed document whose metric (if any) is validated but whose tensor
/// (if any) has not been checked against the axioms yet.
#[derive(Debug, Clone, PartialEq)]
pub struct Loaded {
    pub document: SpaceDocument,
    pub points: PointSet,
    pub source: Source,
    pub map: Option<SelfMap>,
}

impl Loaded {
    pub fn table(&self) -> GTable {
        match &self.source {
            Source::Metric(m, c) => c.apply(m).table().clone(),
            Source::Tensor(t) => t.clone(),
        }
    }

    pub fn metric(&self) -> Option<&FiniteMetricSpace> {
        match &self.source {
            Source::Metric(m, _) => Some(m),
            Source::Tensor(_) => None,
        }
    }

    pub fn into_ingested(self, tol: Tolerance) -> Result<Ingested> {
        let space = match &self.source {
            Source::Metric(m, c) => c.apply(m),
            Source::Tensor(t) => validate_space(t.clone(), tol)?,
        };
        Ok(Ingested {
            document: self.document,
            space,
            map: self.map,
        })
    }
}

/// A fully validated document.
#[derive(Debug, Clone, PartialEq)]
pub struct Ingested {
    pub document: SpaceDocument,
    pub space: FiniteGSpace,
    pub map: Option<SelfMap>,
}

impl Ingested {
    pub fn require_map(&self) -> Result<&SelfMap> {
        self.map.as_ref().context("document has no `map`")
    }
}

pub fn read_document(path: &Path) -> Result<SpaceDocument> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn load(path: &Path, tol: Tolerance) -> Result<Loaded> {
    let document = read_document(path)?;
    load_document(document, tol).with_context(|| format!("invalid space document {}", path.display()))
}

/// Parses and validates in one step.
pub fn ingest(path: &Path, tol: Tolerance) -> Result<Ingested> {
    let loaded = load(path, tol)?;
    loaded
        .into_ingested(tol)
        .with_context(|| format!("invalid space document {}", path.display()))
}

pub fn load_document(document: SpaceDocument, tol: Tolerance) -> Result<Loaded> {
    let points = PointSet::new(document.points.iter().map(String::as_str))?;
    let n = points.len();
    let source = match (&document.geometry, document.g_construction) {
        (Geometry::GTensor { .. }, Some(_)) => bail!("`g_construction` is not allowed with a g-tensor geometry"),
        (Geometry::GTensor { tensor }, None) => {
            ensure!(tensor.len() == n, "tensor has {} slices, expected {n}", tensor.len());
            let mut values = Vec::with_capacity(n * n * n);
            for (x, slice) in tensor.iter().enumerate() {
                ensure!(slice.len() == n, "tensor[{x}] has {} rows, expected {n}", slice.len());
                for (y, row) in slice.iter().enumerate() {
                    ensure!(
                        row.len() == n,
                        "tensor[{x}][{y}] has {} entries, expected {n}",
                        row.len()
                    );
                    values.extend_from_slice(row);
                }
            }
            Source::Tensor(GTable::new(points.clone(), values)?)
        }
        (_, None) => bail!("`g_construction` (\"sum\" or \"max\") is required unless the geometry is a g-tensor"),
        (Geometry::MetricMatrix { matrix }, Some(c)) => {
            ensure!(matrix.len() == n, "matrix has {} rows, expected {n}", matrix.len());
            if let Some((i, row)) = matrix.iter().enumerate().find(|(_, r)| r.len() != n) {
                bail!("matrix row {i} has {} entries, expected {n}", row.len());
            }
            Source::Metric(FiniteMetricSpace::from_rows(points.clone(), matrix, tol)?, c)
        }
        (Geometry::Euclidean { coords }, Some(c)) => {
            if let Some(extra) = coords.keys().find(|k| !points.labels().contains(k)) {
                bail!("coordinates given for undeclared point `{extra}`");
            }
            let ordered = points
                .labels()
                .iter()
                .map(|l| {
                    let xs = coords
                        .get(l)
                        .with_context(|| format!("no coordinates for point `{l}`"))?;
                    Ok((l.clone(), xs.clone()))
                })
                .collect::<Result<Vec<_>>>()?;
            Source::Metric(euclidean_metric(&ordered, tol)?, c)
        }
    };
    let map = document
        .map
        .as_ref()
        .map(|m| SelfMap::from_labels(&points, m.iter().map(|(k, v)| (k.as_str(), v.as_str()))))
        .transpose()?;
    Ok(Loaded {
        document,
        points,
        source,
        map,
    })
}

fn map_table(points: &PointSet, map: Option<&SelfMap>) -> Option<BTreeMap<String, String>> {
    map.map(|t| {
        points
            .ids()
            .map(|p| (points.label(p).to_string(), points.label(t.apply(p)).to_string()))
            .collect()
    })
}

impl SpaceDocument {
    pub fn from_space(space: &FiniteGSpace, map: Option<&SelfMap>) -> Self {
        let points = space.points();
        let tensor = points
            .ids()
            .map(|x| {
                points
                    .ids()
                    .map(|y| points.ids().map(|z| space.g(x, y, z)).collect())
                    .collect()
            })
            .collect();
        SpaceDocument {
            points: points.labels().to_vec(),
            geometry: Geometry::GTensor { tensor },
            g_construction: None,
            map: map_table(points, map),
        }
    }

    pub fn from_metric(metric: &FiniteMetricSpace, construction: GConstruction, map: Option<&SelfMap>) -> Self {
        SpaceDocument {
            points: metric.points().labels().to_vec(),
            geometry: Geometry::MetricMatrix { matrix: metric.rows() },
            g_construction: Some(construction),
            map: map_table(metric.points(), map),
        }
    }
}
