//! Worked examples, rebuilt from raw coordinates.
//!
//! All three live on max-form G-metrics over Euclidean points.

use crate::error::{Error, Result};
use crate::gmetric::{euclidean_metric, g_from_metric_max};
use crate::space::{FiniteGSpace, FiniteMetricSpace, SelfMap, Tolerance};

#[derive(Debug, Clone, PartialEq)]
pub struct WorkedExample {
    pub coordinates: Vec<(String, Vec<f64>)>,
    pub metric: FiniteMetricSpace,
    pub space: FiniteGSpace,
    /// Named maps, e.g. `("T1", ...)`.
    pub maps: Vec<(String, SelfMap)>,
}

impl WorkedExample {
    fn build(coordinates: Vec<(&str, Vec<f64>)>, maps: &[(&str, &[usize])]) -> Result<Self> {
        let coordinates: Vec<(String, Vec<f64>)> = coordinates.into_iter().map(|(l, c)| (l.to_string(), c)).collect();
        let metric = euclidean_metric(&coordinates, Tolerance::default())?;
        let space = g_from_metric_max(&metric);
        let maps = maps
            .iter()
            .map(|&(name, image)| Ok((name.to_string(), SelfMap::from_indices(image)?)))
            .collect::<Result<_>>()?;
        Ok(WorkedExample {
            coordinates,
            metric,
            space,
            maps,
        })
    }

    pub fn map(&self, name: &str) -> Option<&SelfMap> {
        self.maps.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }
}

/// Planar triangle `A = (7/8, sqrt(15)/8)`, `B = (1, 0)`, `C = (0, 0)`.
///
/// `T1` fixes `A` and `B` and sends `C` to `A`; `T2` swaps `A` and `B`
/// and sends `C` to `A`.
pub fn planar_triangle() -> WorkedExample {
    WorkedExample::build(
        vec![
            ("A", vec![7.0 / 8.0, 15f64.sqrt() / 8.0]),
            ("B", vec![1.0, 0.0]),
            ("C", vec![0.0, 0.0]),
        ],
        &[("T1", &[0, 1, 0]), ("T2", &[1, 0, 0])],
    )
    .expect("fixed coordinates are valid")
}

/// Points `a = 0`, `b = 1/5`, `c = 1` on the line, with the same map
/// pattern as [`planar_triangle`].
pub fn line_triple() -> WorkedExample {
    WorkedExample::build(
        vec![("a", vec![0.0]), ("b", vec![0.2]), ("c", vec![1.0])],
        &[("T1", &[0, 1, 0]), ("T2", &[1, 0, 0])],
    )
    .expect("fixed coordinates are valid")
}

/// Default parameter of [`reich_family`].
pub const REICH_FAMILY_DEFAULT_LAMBDA: f64 = 0.125;

/// Four points `a = 0`, `b = 2l / (2l - 1)`, `c = 1`, `d = 2` with `T`
/// fixing `a` and `b` and sending `c`, `d` to `b`. For `l in (0, 1/4)`,
/// uniform Reich coefficients `a_i = l` hold with equality at `(a, b, c)`.
pub fn reich_family(lambda: f64) -> Result<WorkedExample> {
    if !(lambda > 0.0 && lambda < 0.25) {
        return Err(Error::ConstantOutOfRange {
            value: lambda,
            range: "(0, 1/4)",
        });
    }
    let b = 2.0 * lambda / (2.0 * lambda - 1.0);
    WorkedExample::build(
        vec![("a", vec![0.0]), ("b", vec![b]), ("c", vec![1.0]), ("d", vec![2.0])],
        &[("T", &[0, 1, 1, 1])],
    )
}
