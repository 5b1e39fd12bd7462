//! End-to-end acceptance checks. Runs without the libtest harness so that each
//! criterion prints exactly one PASS/FAIL line; exits non-zero on any failure.

use std::cmp::Ordering;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use ped_core::bounds::{
    bottom_strip_partition, corner_square_certificate, erdos_szekeres_threshold,
    middle_strip_partition, partition_certificate, total_upper_bound, upper_rect_partition,
};
use ped_core::constructions::{
    bandwidth_delta, circulant_delta, kkn_capacity, knn_capacity, layout_bandwidth,
    layout_circulant, layout_k2kn, layout_knn, strict_log_floor, Layout,
};
use ped_core::crossings::{crossings_per_edge, enumerate_crossings, CrossingMethod};
use ped_core::geometry::Point;
use ped_core::maxsped::{oracle_01_maxsped, oracle_maxsped, solve_01_maxsped, solve_maxsped};
use ped_core::minsped::{
    approx_minw2sat, assignment_to_stubs, build_instance, exact_minw2sat, WeightMode,
};
use ped_core::number::{half, int, rat, Approx, Quantity, RootSum};
use ped_core::random::{Planarity, RandomDrawing};
use ped_core::validate::{max_uniform_delta, validate_ped, validate_ped_approx};
use ped_core::{GeometricGraph, Result, StubAssignment};

type Check = std::result::Result<String, String>;
type Criterion = fn() -> Check;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Edge `(0,0)-(4,0)` and one second edge.
fn two_edges(a: (i64, i64), b: (i64, i64)) -> GeometricGraph {
    GeometricGraph::new(
        vec![
            Point::from_ints(0, 0),
            Point::from_ints(4, 0),
            Point::from_ints(a.0, a.1),
            Point::from_ints(b.0, b.1),
        ],
        vec![(0, 1), (2, 3)],
    )
    .expect("distinct endpoints")
}

fn is_two_planar(g: &GeometricGraph) -> bool {
    let crossings = enumerate_crossings(g, CrossingMethod::AllPairs).expect("general position");
    crossings_per_edge(g.edge_count(), &crossings)
        .iter()
        .all(|c| c.len() <= 2)
}

fn check_layout(
    name: &str,
    build: impl FnOnce() -> Result<Layout>,
    exact: bool,
) -> std::result::Result<String, String> {
    let start = Instant::now();
    let layout = ok(build())?;
    let stubs = layout.stubs();
    let v = if exact {
        ok(validate_ped(&layout.graph, &stubs))?
    } else {
        ok(validate_ped_approx(&layout.graph, &stubs))?
    };
    let elapsed = start.elapsed();
    ensure!(
        v.is_valid(),
        "{name}: {} stub conflicts",
        v.violations.len()
    );
    ensure!(elapsed < Duration::from_secs(1), "{name}: took {elapsed:?}");
    Ok(format!("{name} {}ms", elapsed.as_millis()))
}

fn criterion_1() -> Check {
    let mut notes = Vec::new();
    notes.push(check_layout("K8,8", || layout_knn(8, &rat(1, 4)), true)?);
    notes.push(check_layout(
        "K8,9",
        || layout_k2kn(4, 9, &rat(1, 4)),
        true,
    )?);

    // 8 vertices, every pair within distance 4
    let edges: Vec<(usize, usize)> = (0..8)
        .flat_map(|u| (u + 1..(u + 5).min(8)).map(move |v| (u, v)))
        .collect();
    let delta = bandwidth_delta(4);
    ensure!(
        &delta * &delta * int(32) <= BigRational::one(),
        "bandwidth ratio {delta} exceeds 1/(2 sqrt 8)"
    );
    notes.push(check_layout(
        "bandwidth-4",
        || layout_bandwidth(8, &edges, 4),
        true,
    )?);

    ensure!(
        circulant_delta(4) == rat(1, 12),
        "circulant ratio is {}",
        circulant_delta(4)
    );
    notes.push(check_layout("C16^4", || layout_circulant(16, 4), false)?);
    Ok(notes.join(", "))
}

fn criterion_2() -> Check {
    ensure!(ok(knn_capacity(&rat(1, 4)))? == 8, "knn_capacity(1/4) != 8");
    ensure!(ok(kkn_capacity(&rat(1, 4)))? == 4, "kkn_capacity(1/4) != 4");

    // (1 - 1/2)^1 equals 1/2 exactly: the strict floor loses that column.
    let delta = half();
    let base = BigRational::one() - &delta;
    let strict = strict_log_floor(&base, &half());
    let mut non_strict = 0u32;
    while num_traits::pow(base.clone(), non_strict as usize + 1) >= half() {
        non_strict += 1;
    }
    ensure!(
        strict + 1 == non_strict,
        "strict {strict}, non-strict {non_strict}"
    );
    let rows = 2;
    ensure!(
        ok(knn_capacity(&delta))? == rows * strict as u64,
        "knn_capacity(1/2) = {}",
        ok(knn_capacity(&delta))?
    );
    let below = &delta - rat(1, 1000);
    let just_below = ok(knn_capacity(&below))?;
    ensure!(
        just_below == ok(knn_capacity(&delta))? + rows,
        "capacity just below 1/2 is {just_below}"
    );
    Ok(format!(
        "columns at 1/2: strict {strict}, non-strict {non_strict}"
    ))
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let mut crossings = 0;
    for seed in 0..200u64 {
        let edges = 1 + (seed % 10) as usize;
        let g = ok(RandomDrawing::new(edges, 12, 12, Planarity::TwoPlanar).generate_seeded(seed))?;
        crossings += ok(enumerate_crossings(&g, CrossingMethod::AllPairs))?.len();
        let exact = ok(solve_maxsped::<RootSum>(&g))?;
        let oracle = ok(oracle_maxsped(&g))?;
        ensure!(
            exact.ink.compare(&oracle.ink) == Ordering::Equal,
            "seed {seed}: dp {} vs oracle {}",
            exact.ink,
            oracle.ink
        );
        let float = ok(solve_maxsped::<Approx>(&g))?.ink.0;
        let reference = oracle.ink.as_f64();
        ensure!(
            (float - reference).abs() <= 1e-9 * reference.max(1.0),
            "seed {seed}: float {float} vs {reference}"
        );
        ensure!(
            ok(validate_ped(&g, &exact.assignment))?.is_valid(),
            "seed {seed}: invalid"
        );
    }

    // max { l_1 + 2 x'_2, l_2 + 2 x''_1 } with near distances x
    for (a, b, l2, near_first, near_second) in
        [((1, -1), (1, 3), 4, 1, 1), ((2, -1), (2, 3), 4, 2, 1)]
    {
        let g = two_edges(a, b);
        let closed_form = (4 + 2 * near_second).max(l2 + 2 * near_first);
        let dp = ok(solve_maxsped::<RootSum>(&g))?;
        ensure!(
            dp.ink.compare(&RootSum::from_rational(&int(closed_form))) == Ordering::Equal,
            "two-edge instance {a:?}-{b:?}: {} != {closed_form}",
            dp.ink
        );
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    Ok(format!(
        "200 drawings, {crossings} crossings, {}ms",
        elapsed.as_millis()
    ))
}

fn criterion_4() -> Check {
    let mut edges_total = 0;
    for seed in 0..100u64 {
        let edges = 1 + (seed % 12) as usize;
        let g =
            ok(RandomDrawing::new(edges, 12, 12, Planarity::TwoPlanar)
                .generate_seeded(1000 + seed))?;
        edges_total += g.edge_count();
        let dp = ok(solve_01_maxsped::<RootSum>(&g))?;
        let (best, _) = ok(oracle_01_maxsped(&g))?;
        ensure!(
            dp.ink.compare(&best) == Ordering::Equal,
            "seed {seed}: dp {} vs subsets {}",
            dp.ink,
            best
        );
    }
    Ok(format!("100 drawings, {edges_total} edges"))
}

fn criterion_5() -> Check {
    let mut instances = 0;
    let mut dual_checked = 0;
    let mut seed = 0u64;
    while instances < 200 {
        ensure!(
            seed < 5000,
            "only {instances} small instances in 5000 seeds"
        );
        let planarity = if seed.is_multiple_of(2) {
            Planarity::Unrestricted
        } else {
            Planarity::TwoPlanar
        };
        let edges = 1 + (seed % 6) as usize;
        let g = ok(RandomDrawing::new(edges, 10, 10, planarity).generate_seeded(2000 + seed))?;
        seed += 1;
        let inst = ok(build_instance::<RootSum>(&g, WeightMode::Absolute))?;
        if inst.variable_count() > 12 {
            continue;
        }
        instances += 1;
        let approx = approx_minw2sat(&inst);
        let exact = ok(exact_minw2sat(&inst))?;
        ensure!(
            inst.is_satisfied_by(&approx.values),
            "seed {seed}: approximation infeasible"
        );
        ensure!(
            approx.weight.compare(&exact.weight.plus(&exact.weight)) != Ordering::Greater,
            "seed {seed}: {} > 2 * {}",
            approx.weight,
            exact.weight
        );
        for a in [&approx, &exact] {
            let stubs: StubAssignment = ok(assignment_to_stubs(&inst, a))?;
            ensure!(
                ok(validate_ped(&g, &stubs))?.is_valid(),
                "seed {seed}: decoded stubs conflict"
            );
        }
        if is_two_planar(&g) {
            dual_checked += 1;
            let kept = ok(solve_maxsped::<RootSum>(&g))?.ink;
            let total = g.total_length::<RootSum>();
            ensure!(
                exact.weight.plus(&kept).compare(&total) == Ordering::Equal,
                "seed {seed}: erased + kept != total"
            );
            let float_gap = (exact.weight.as_f64() + kept.as_f64() - total.as_f64()).abs();
            ensure!(
                float_gap <= 1e-9 * total.as_f64().max(1.0),
                "seed {seed}: gap {float_gap}"
            );
        }
    }
    Ok(format!("{instances} instances, duality on {dual_checked}"))
}

fn criterion_6() -> Check {
    let strips = middle_strip_partition();
    let lows: Vec<BigRational> = strips.iter().map(|s| s.lower.clone()).collect();
    let mut expected = vec![rat(2, 3), rat(4, 7)];
    for _ in 0..5 {
        let next = expected.last().unwrap() * rat(6, 7);
        expected.push(next);
    }
    expected.push(rat(1, 4));
    ensure!(lows == expected, "middle boundaries {lows:?}");
    ensure!(lows[2] == rat(24, 49), "a_3 = {}", lows[2]);
    let caps: Vec<u64> = strips.iter().map(|s| s.capacity).collect();
    ensure!(
        caps == [5, 6, 6, 6, 6, 6, 6, 4],
        "middle capacities {caps:?}"
    );
    ensure!(caps.iter().sum::<u64>() == 45, "middle total");
    ensure!(
        strips[7].consumption == rat(24337, 117649),
        "last consumption {}",
        strips[7].consumption
    );

    let bottom = bottom_strip_partition();
    let expected = [
        rat(1, 4),
        rat(1, 3),
        rat(4, 9),
        rat(5, 9),
        rat(2, 3),
        rat(3, 4),
    ];
    ensure!(
        bottom.boundaries == expected,
        "bottom boundaries {:?}",
        bottom.boundaries
    );
    ensure!(bottom.total() == 10, "bottom total {}", bottom.total());

    let upper = ok(upper_rect_partition(&half()))?;
    let forms: Vec<(BigRational, BigRational)> = upper
        .lower_forms
        .iter()
        .map(|f| (f.slope.clone(), f.offset.clone()))
        .collect();
    let expected = [
        (rat(3, 4), rat(1, 4)),
        (rat(2, 3), rat(1, 3)),
        (rat(5, 9), rat(4, 9)),
        (rat(11, 27), rat(16, 27)),
        (rat(17, 81), rat(64, 81)),
    ];
    ensure!(forms == expected, "upper forms {forms:?}");
    ensure!(upper.total() == 21, "upper total {}", upper.total());

    let corner = corner_square_certificate();
    ensure!(corner.holds(), "corner checks {:?}", corner.checks);
    ensure!(corner.capacity == 8, "corner capacity {}", corner.capacity);
    let growth_margin = corner.growth_factor - 1.3;
    ensure!(
        growth_margin > 1e-3,
        "growth factor {}",
        corner.growth_factor
    );

    let cert = ok(partition_certificate(&half()))?;
    ensure!(
        cert.square_total() == 121,
        "square total {}",
        cert.square_total()
    );
    ensure!(
        total_upper_bound() == 240,
        "upper bound {}",
        total_upper_bound()
    );
    ensure!(
        erdos_szekeres_threshold() == BigUint::from(155_117_520u32),
        "threshold {}",
        erdos_szekeres_threshold()
    );
    Ok(format!(
        "121 / 240, growth factor {:.6}",
        corner.growth_factor
    ))
}

fn criterion_7() -> Check {
    let g = two_edges((1, -1), (1, 3));
    let best = ok(max_uniform_delta(&g))?;
    ensure!(best == rat(1, 4), "max ratio {best}");
    let at = ok(StubAssignment::uniform(2, &best))?;
    ensure!(ok(validate_ped(&g, &at))?.is_valid(), "invalid at 1/4");
    let above = ok(StubAssignment::uniform(2, &(&best + rat(1, 1000))))?;
    ensure!(
        !ok(validate_ped(&g, &above))?.is_valid(),
        "valid at 1/4 + 1/1000"
    );
    Ok("1/4".to_string())
}

fn criterion_8() -> Check {
    let g = ok(RandomDrawing::sparse(2000, Planarity::TwoPlanar).generate_seeded(42))?;
    let start = Instant::now();
    let solution = ok(solve_maxsped::<Approx>(&g))?;
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    let crossings = ok(enumerate_crossings(&g, CrossingMethod::AllPairs))?.len();
    ensure!(crossings > 0, "drawing has no crossings");
    let total = g.total_length::<Approx>().0;
    ensure!(
        solution.ink.0 <= total * (1.0 + 1e-9),
        "ink exceeds total length"
    );
    Ok(format!(
        "2000 edges, {crossings} crossings, {}ms",
        elapsed.as_millis()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 8] = [
        ("constructions validate", criterion_1),
        ("capacity formulas", criterion_2),
        ("maxsped matches oracle", criterion_3),
        ("0/1 maxsped matches subsets", criterion_4),
        ("minsped approximation and duality", criterion_5),
        ("bound certificate golden values", criterion_6),
        ("maximum uniform ratio", criterion_7),
        ("2000-edge maxsped under 5 s", criterion_8),
    ];
    // filter arguments passed by `cargo test` are ignored
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
