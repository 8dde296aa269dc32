//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::result::Result;
use std::time::{Duration, Instant};

use gfix_core::conditions::{ConditionTwo, BANACH_BOUND, KANNAN_BOUND};
use gfix_core::corollaries::{
    check_corollary, check_max_banach, check_perimeter_contraction, check_perimeter_kannan, reduced_check,
    reduction_construction, CorollaryKind,
};
use gfix_core::fixtures::{line_triple, planar_triangle, reich_family, WorkedExample};
use gfix_core::random::{random_map, random_metric_retrying, random_settling_map, two_cycle_map};
use gfix_core::solver::{default_max_steps, Hypothesis};
use gfix_core::space::verify_metric_axioms;
use gfix_core::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Absolute tolerance on reproduced values.
const ABS_TOL: f64 = 1e-9;
/// Slack on the orbit decay bound.
const DECAY_SLACK: f64 = 1e-9;
const AXIOM_INSTANCES: usize = 200;
const MIN_QUALIFYING: usize = 50;
const THEOREM_ATTEMPTS: usize = 4000;
const REDUCTION_INSTANCES: usize = 200;
const CONSTANTS_PER_KIND: usize = 20;

type Outcome = Result<String, String>;

fn eps() -> Tolerance {
    Tolerance::default()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close(what: &str, got: f64, want: f64) -> Result<(), String> {
    ensure((got - want).abs() <= ABS_TOL, || {
        format!("{what}: got {got}, want {want}")
    })
}

fn tight(r: &TightReport) -> Result<f64, String> {
    r.constant
        .value()
        .ok_or_else(|| "tight constant infeasible".to_string())
}

fn labels(ex: &WorkedExample, ids: &[PointId]) -> Vec<String> {
    ids.iter().map(|&p| ex.space.points().label(p).to_string()).collect()
}

fn lib<T>(r: gfix_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn planar_triangle_reproduction() -> Outcome {
    let ex = planar_triangle();
    let id = |l| ex.space.points().id(l).unwrap();
    let (a, b, c) = (id("A"), id("B"), id("C"));
    close("|A - B|", ex.metric.d(a, b), 0.5)?;
    close("G(A,B,C)", ex.space.g(a, b, c), 1.0)?;
    let t1 = ex.map("T1").unwrap();
    let t2 = ex.map("T2").unwrap();
    let star = tight(&lib(banach_tight_lambda(&ex.space, t1, eps()))?)?;
    close("banach tight constant for T1", star, 0.5)?;
    ensure(check_condition_one(t1).holds(), || "T1 should satisfy (I)".into())?;
    ensure(labels(&ex, &enumerate_fixed_points(t1)) == ["A", "B"], || {
        "Fix(T1) != {A, B}".into()
    })?;
    let w = check_condition_one(t2).witness;
    ensure(w == Some(a), || format!("T2 witness {w:?}, want A"))?;
    ensure(enumerate_fixed_points(t2).is_empty(), || "Fix(T2) not empty".into())?;
    Ok(format!("|A-B| = 0.5, G(A,B,C) = 1, lambda* = {star}"))
}

fn line_triple_reproduction() -> Outcome {
    let ex = line_triple();
    let t1 = ex.map("T1").unwrap();
    let t2 = ex.map("T2").unwrap();
    let k1 = lib(kannan_tight_lambda(&ex.space, t1, eps()))?;
    let at = k1.attained.ok_or("no attaining triple")?;
    close("kannan LHS for T1", at.lhs, 0.2)?;
    close("kannan RHS for T1", at.rhs, 1.0)?;
    close("kannan tight constant for T1", tight(&k1)?, 0.2)?;
    let interval = k1.admissible_interval().ok_or("no admissible interval")?;
    ensure(interval.lo_closed, || {
        "interval should be closed at its lower end".into()
    })?;
    close("interval lower end", interval.lo, 0.2)?;
    close("interval upper end", interval.hi, 1.0 / 3.0)?;
    let k2 = lib(kannan_tight_lambda(&ex.space, t2, eps()))?;
    close("kannan tight constant for T2", tight(&k2)?, 1.0 / 7.0)?;
    ensure(k2.holds(), || "T2 should satisfy the kannan condition".into())?;
    ensure(!check_condition_one(t2).holds(), || "T2 should fail (I)".into())?;
    ensure(labels(&ex, &enumerate_fixed_points(t1)) == ["a", "b"], || {
        "Fix(T1) != {a, b}".into()
    })?;
    ensure(enumerate_fixed_points(t2).is_empty(), || "Fix(T2) not empty".into())?;
    Ok(format!("T1 interval {interval}, T2 lambda* = {}", tight(&k2)?))
}

fn reich_family_at(lambda: f64) -> Result<(), String> {
    let ex = lib(reich_family(lambda))?;
    let t = ex.map("T").unwrap();
    let g = &ex.space;
    let id = |l| g.points().id(l).unwrap();
    let (a, b, c, d) = (id("a"), id("b"), id("c"), id("d"));
    close("b", ex.coordinates[1].1[0], 2.0 * lambda / (2.0 * lambda - 1.0))?;

    let coeffs = lib(ReichCoefficients::uniform(lambda))?;
    let verdict = lib(reich_check(g, t, &coeffs, eps()))?;
    ensure(verdict.holds(), || format!("reich check fails at {lambda}"))?;
    let side = |[x, y, z]: [PointId; 3]| {
        let moved = |p: PointId| g.g(p, t.apply(p), t.apply(p));
        let lhs = g.g(t.apply(x), t.apply(y), t.apply(z));
        let rhs = lambda * (moved(x) + moved(y) + moved(z) + g.g(x, y, z));
        (lhs, rhs)
    };
    let (lhs, rhs) = side([a, b, c]);
    close("equality at (a,b,c)", lhs, rhs)?;
    for (name, triple) in [("(a,b,d)", [a, b, d]), ("(a,c,d)", [a, c, d]), ("(b,c,d)", [b, c, d])] {
        let (lhs, rhs) = side(triple);
        ensure(lhs < rhs - ABS_TOL, || {
            format!("no strict slack at {name}: {lhs} vs {rhs}")
        })?;
    }
    let worst = verdict.worst.ok_or("no worst triple")?;
    ensure(worst.triple == [a, b, c], || format!("worst triple {:?}", worst.triple))?;
    close(
        "uniform reich tight constant",
        tight(&lib(reich_uniform_tight_lambda(g, t, eps()))?)?,
        lambda,
    )?;
    ensure(labels(&ex, &enumerate_fixed_points(t)) == ["a", "b"], || {
        "Fix(T) != {a, b}".into()
    })
}

fn reich_family_reproduction() -> Outcome {
    reich_family_at(0.125)?;
    reich_family_at(0.2)?;
    Ok("lambda = 1/8 and 0.2".into())
}

fn axiom_oracle_suite() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0xA110);
    for i in 0..AXIOM_INSTANCES {
        let n = rng.gen_range(3..=7);
        let m = random_metric_retrying(&mut rng, n, eps());
        for (name, g) in [("sum", g_from_metric_sum(&m)), ("max", g_from_metric_max(&m))] {
            if let Some(v) = verify_axioms(g.table(), eps()).into_iter().find(|v| !v.holds()) {
                return Err(format!("instance {i}: {name} form fails {}: {:?}", v.axiom, v.witness));
            }
            let delta = delta_metric(&g);
            if let Some(v) = verify_metric_axioms(n, delta.matrix(), eps())
                .into_iter()
                .find(|v| !v.holds())
            {
                return Err(format!("instance {i}: delta of {name} form fails {}", v.axiom));
            }
        }
    }
    Ok(format!("{AXIOM_INSTANCES} spaces, 0 failures"))
}

fn tight_for(kind: ContractionKind, g: &FiniteGSpace, t: &SelfMap) -> gfix_core::Result<TightReport> {
    match kind {
        ContractionKind::Banach => banach_tight_lambda(g, t, eps()),
        ContractionKind::Kannan => kannan_tight_lambda(g, t, eps()),
        ContractionKind::Reich(_) => reich_uniform_tight_lambda(g, t, eps()),
    }
}

/// Per-step contraction factor of consecutive orbit triples implied by a
/// tight constant `l`: `l` for banach, `l / (1 - 2l)` for kannan and
/// `3l / (1 - l)` for uniform reich.
fn orbit_rate(kind: ContractionKind, l: f64) -> f64 {
    match kind {
        ContractionKind::Banach => l,
        ContractionKind::Kannan => l / (1.0 - 2.0 * l),
        ContractionKind::Reich(_) => 3.0 * l / (1.0 - l),
    }
}

fn theorem_guarantees() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x7E0);
    let kinds = [
        ContractionKind::Banach,
        ContractionKind::Kannan,
        ContractionKind::Reich(None),
    ];
    let mut qualifying = [0usize; 3];
    // Orbit steps exceeding tau0 * l^n with the raw tight constant; only
    // the banach column is bound to stay at zero.
    let mut raw_exceedances = [0usize; 3];
    let mut orbits_checked = 0usize;
    for attempt in 0..THEOREM_ATTEMPTS {
        let n = rng.gen_range(3..=7);
        let m = random_metric_retrying(&mut rng, n, eps());
        let g = if attempt % 2 == 0 {
            g_from_metric_sum(&m)
        } else {
            g_from_metric_max(&m)
        };
        let t = if rng.gen_bool(0.8) {
            let roots = rng.gen_range(1..=2);
            random_settling_map(&mut rng, n, roots)
        } else {
            random_map(&mut rng, n)
        };
        if !check_condition_one(&t).holds() {
            continue;
        }
        for (k, &kind) in kinds.iter().enumerate() {
            let report = lib(tight_for(kind, &g, &t))?;
            // strictly inside the bound, beyond tolerance
            let Some(star) = report.constant.value().filter(|_| report.holds()) else {
                continue;
            };
            qualifying[k] += 1;
            let fix = enumerate_fixed_points(&t);
            ensure((1..=2).contains(&fix.len()), || {
                format!("{}: |Fix| = {} with lambda* = {star}", kind.name(), fix.len())
            })?;
            let rate = orbit_rate(kind, star);
            let lib_rate = lib(evaluate_conditions(&g, &t, kind, eps()))?.orbit_decay_rate();
            ensure(lib_rate.is_some_and(|r| (r - rate).abs() <= 1e-12), || {
                format!("{}: library rate {lib_rate:?}, expected {rate}", kind.name())
            })?;
            for start in g.points().ids() {
                let trace = lib(picard_iterate(&g, &t, start, default_max_steps(n)))?;
                orbits_checked += 1;
                ensure(trace.status == Status::FixedPointReached, || {
                    format!("{}: orbit from {start:?} ended {:?}", kind.name(), trace.status)
                })?;
                let Some(&tau0) = trace.triple_values.first() else {
                    continue;
                };
                for (i, &v) in trace.triple_values.iter().enumerate() {
                    let bound = tau0 * rate.powi(i as i32) + DECAY_SLACK;
                    ensure(v <= bound, || {
                        format!("{}: step {i} value {v} exceeds {bound} (lambda* = {star})", kind.name())
                    })?;
                    if v > tau0 * star.powi(i as i32) + DECAY_SLACK {
                        raw_exceedances[k] += 1;
                    }
                }
            }
        }
    }
    ensure(qualifying.iter().all(|&q| q >= MIN_QUALIFYING), || {
        format!("too few qualifying instances: {qualifying:?}")
    })?;
    ensure(raw_exceedances[0] == 0, || {
        format!("banach orbits exceed tau0 * l^n: {}", raw_exceedances[0])
    })?;
    Ok(format!(
        "qualifying banach/kannan/reich = {}/{}/{}, {orbits_checked} orbits, steps above tau0 * l^n = {}/{}/{}",
        qualifying[0], qualifying[1], qualifying[2], raw_exceedances[0], raw_exceedances[1], raw_exceedances[2]
    ))
}

/// Ratio threshold of a metric-side Reich condition along a fixed
/// coefficient direction: the condition holds at `s * dir` iff `s` is at
/// least this value (up to tolerance).
fn reich_scale_threshold(m: &FiniteMetricSpace, t: &SelfMap, dir: [f64; 4], perimeter: bool) -> f64 {
    let mut best: f64 = 0.0;
    let ids: Vec<PointId> = m.points().ids().collect();
    for &x in &ids {
        for &y in &ids {
            for &z in &ids {
                if x == y || y == z || x == z {
                    continue;
                }
                let span = |p: PointId, q: PointId, r: PointId| {
                    let (a, b, c) = (m.d(p, q), m.d(q, r), m.d(p, r));
                    if perimeter {
                        a + b + c
                    } else {
                        a.max(b).max(c)
                    }
                };
                let lhs = span(t.apply(x), t.apply(y), t.apply(z));
                let rhs = dir[0] * m.d(x, t.apply(x))
                    + dir[1] * m.d(y, t.apply(y))
                    + dir[2] * m.d(z, t.apply(z))
                    + dir[3] * span(x, y, z);
                if rhs > 0.0 {
                    best = best.max(lhs / rhs);
                }
            }
        }
    }
    best
}

fn sample_constant(rng: &mut StdRng, i: usize, threshold: f64, hi: f64) -> f64 {
    let v = if i.is_multiple_of(2) {
        rng.gen_range(0.0..hi)
    } else {
        let offsets = [0.0, 1e-12, -1e-12, 1e-10, -1e-10, 1e-6, -1e-6, 1e-3, -1e-3, 0.05];
        threshold + offsets[(i / 2) % offsets.len()] * if rng.gen_bool(0.5) { 1.0 } else { threshold.max(1.0) }
    };
    v.clamp(hi * 1e-6, hi * (1.0 - 1e-9))
}

fn corollary_reductions() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0xC0);
    let mut comparisons = 0usize;
    for inst in 0..REDUCTION_INSTANCES {
        let n = rng.gen_range(3..=7);
        let m = random_metric_retrying(&mut rng, n, eps());
        let t = match inst % 3 {
            0 => random_map(&mut rng, n),
            1 => {
                let roots = rng.gen_range(1..=2);
                random_settling_map(&mut rng, n, roots)
            }
            _ => two_cycle_map(&mut rng, n),
        };
        let perimeter_star = tight(&lib(check_perimeter_contraction(&m, &t, eps()))?).unwrap_or(0.0);
        let max_star = tight(&lib(check_max_banach(&m, &t, eps()))?).unwrap_or(0.0);
        let kannan_star = tight(&lib(check_perimeter_kannan(&m, &t, eps()))?).unwrap_or(0.0);
        let mut dir: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.0..1.0));
        let total: f64 = dir.iter().sum();
        dir.iter_mut().for_each(|v| *v /= total);
        let reich_sum_star = reich_scale_threshold(&m, &t, dir, true);
        let reich_max_star = reich_scale_threshold(&m, &t, dir, false);

        for i in 0..CONSTANTS_PER_KIND {
            let kinds = [
                CorollaryKind::Perimeter(sample_constant(&mut rng, i, perimeter_star, BANACH_BOUND)),
                CorollaryKind::MaxBanach(sample_constant(&mut rng, i, max_star, BANACH_BOUND)),
                CorollaryKind::PerimeterKannan(sample_constant(&mut rng, i, kannan_star, KANNAN_BOUND)),
                CorollaryKind::PerimeterReich(lib(ReichCoefficients::new(
                    dir.map(|v| v * sample_constant(&mut rng, i, reich_sum_star, 1.0)),
                ))?),
                CorollaryKind::MaxReich(lib(ReichCoefficients::new(
                    dir.map(|v| v * sample_constant(&mut rng, i, reich_max_star, 1.0)),
                ))?),
            ];
            for kind in kinds {
                let pair = ReductionPair::new(m.clone(), reduction_construction(kind));
                let native = lib(check_corollary(&m, &t, kind, eps()))?.holds();
                let reduced = lib(reduced_check(&pair, &t, kind, eps()))?.holds();
                comparisons += 1;
                ensure(native == reduced, || {
                    format!("instance {inst}: {kind:?} native {native} vs reduced {reduced}")
                })?;
            }
        }
    }
    Ok(format!("{comparisons} comparisons, 0 disagreements"))
}

fn negative_control(g: &FiniteGSpace, t: &SelfMap, kind: ContractionKind) -> Result<(), String> {
    let ev = lib(verify_theorem_conclusion(g, t, kind, eps()))?;
    ensure(ev.report.condition_two.holds(), || {
        format!("{}: condition (II) should hold", kind.name())
    })?;
    ensure(ev.failed_hypotheses == [Hypothesis::ConditionOne], || {
        format!("{}: failed hypotheses {:?}", kind.name(), ev.failed_hypotheses)
    })?;
    ensure(ev.conclusion.is_none(), || {
        format!("{}: conclusion asserted", kind.name())
    })?;
    ensure(ev.fixed_points.is_empty(), || format!("{}: Fix not empty", kind.name()))
}

fn negative_controls() -> Outcome {
    let triangle = planar_triangle();
    let line = line_triple();
    negative_control(&triangle.space, triangle.map("T2").unwrap(), ContractionKind::Banach)?;
    negative_control(&line.space, line.map("T2").unwrap(), ContractionKind::Kannan)?;
    negative_control(&line.space, line.map("T2").unwrap(), ContractionKind::Reich(None))?;
    negative_control(
        &triangle.space,
        triangle.map("T2").unwrap(),
        ContractionKind::Reich(None),
    )?;

    let mut rng = StdRng::seed_from_u64(0x2C);
    let mut random_controls = 0usize;
    for _ in 0..500 {
        let n = rng.gen_range(3..=7);
        let m = random_metric_retrying(&mut rng, n, eps());
        let g = g_from_metric_max(&m);
        let t = two_cycle_map(&mut rng, n);
        for kind in [
            ContractionKind::Banach,
            ContractionKind::Kannan,
            ContractionKind::Reich(None),
        ] {
            let report = lib(evaluate_conditions(&g, &t, kind, eps()))?;
            let ConditionTwo::Tight(r) = report.condition_two else {
                unreachable!()
            };
            if r.holds() {
                negative_control(&g, &t, kind)?;
                random_controls += 1;
            }
        }
    }
    Ok(format!("4 fixtures, {random_controls} random 2-cycle controls"))
}

struct Criterion {
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    // Run as a plain binary under `cargo test`; ignore libtest flags.
    let criteria = [
        Criterion {
            name: "planar triangle reproduction",
            limit: Duration::from_secs(1),
            run: planar_triangle_reproduction,
        },
        Criterion {
            name: "line triple reproduction",
            limit: Duration::from_secs(1),
            run: line_triple_reproduction,
        },
        Criterion {
            name: "reich family reproduction",
            limit: Duration::from_secs(1),
            run: reich_family_reproduction,
        },
        Criterion {
            name: "axiom oracle suite",
            limit: Duration::from_secs(30),
            run: axiom_oracle_suite,
        },
        Criterion {
            name: "theorem guarantees",
            limit: Duration::from_secs(60),
            run: theorem_guarantees,
        },
        Criterion {
            name: "corollary reduction equivalence",
            limit: Duration::from_secs(60),
            run: corollary_reductions,
        },
        Criterion {
            name: "negative controls",
            limit: Duration::from_secs(60),
            run: negative_controls,
        },
    ];

    let mut failures = 0;
    for (i, c) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = (c.run)();
        let elapsed = started.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.limit => Err(format!("{detail}; took {elapsed:?}, limit {:?}", c.limit)),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS [{}] {}: {detail} ({elapsed:.2?})", i + 1, c.name),
            Err(why) => {
                failures += 1;
                println!("FAIL [{}] {}: {why} ({elapsed:.2?})", i + 1, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
