//! Random instances for property tests and benchmarks.
//!
//! Metrics are drawn as symmetric nonnegative weight matrices with a zero
//! diagonal and then closed under shortest paths, which repairs every
//! triangle inequality. Instances where the repair collapses two distinct
//! points to (near) zero distance are rejected.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::space::{FiniteMetricSpace, PointId, PointSet, SelfMap, Tolerance};

/// One draw; `None` when shortest-path repair collapses distinct points.
pub fn random_metric<R: Rng + ?Sized>(rng: &mut R, n: usize, tol: Tolerance) -> Option<FiniteMetricSpace> {
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let w: f64 = rng.gen();
            d[i * n + j] = w;
            d[j * n + i] = w;
        }
    }
    // Floyd-Warshall closure.
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i * n + k] + d[k * n + j];
                if via < d[i * n + j] {
                    d[i * n + j] = via;
                }
            }
        }
    }
    let collapsed = (0..n).any(|i| (0..n).any(|j| i != j && !tol.positive(d[i * n + j])));
    if collapsed {
        return None;
    }
    let points = PointSet::numbered(n).ok()?;
    FiniteMetricSpace::new(points, d, tol).ok()
}

/// Draws until a metric survives repair.
pub fn random_metric_retrying<R: Rng + ?Sized>(rng: &mut R, n: usize, tol: Tolerance) -> FiniteMetricSpace {
    loop {
        if let Some(m) = random_metric(rng, n, tol) {
            return m;
        }
    }
}

/// Uniformly random self-map of `n` points.
pub fn random_map<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SelfMap {
    let image = (0..n).map(|_| PointId(rng.gen_range(0..n))).collect();
    SelfMap::new(image).expect("images are in range")
}

/// Random map whose only periodic points are `roots` fixed points, so
/// every orbit settles and condition (I) holds. `roots` is clamped to
/// `1..=n`.
pub fn random_settling_map<R: Rng + ?Sized>(rng: &mut R, n: usize, roots: usize) -> SelfMap {
    let roots = roots.clamp(1, n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut image = vec![PointId(0); n];
    for (pos, &p) in order.iter().enumerate() {
        image[p] = if pos < roots {
            PointId(p)
        } else {
            PointId(order[rng.gen_range(0..pos)])
        };
    }
    SelfMap::new(image).expect("images are in range")
}

/// Map with a 2-cycle on points 0 and 1 and no fixed points; every other
/// point is sent into the cycle.
pub fn two_cycle_map<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SelfMap {
    assert!(n >= 2, "a 2-cycle needs two points");
    let image = (0..n)
        .map(|p| match p {
            0 => PointId(1),
            1 => PointId(0),
            _ => PointId(rng.gen_range(0..2)),
        })
        .collect();
    SelfMap::new(image).expect("images are in range")
}
