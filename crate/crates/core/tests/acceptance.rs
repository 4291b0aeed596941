//! Acceptance criteria, one PASS/FAIL line each. Run with `cargo test -p layersift --test acceptance`.

mod common;

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use layersift::instance::{IpInstance, Point};
use layersift::layers::{
    coprime_multiple, is_neighbor, layer_index, layers_per_period, CoprimeMultiple,
};
use layersift::oracle::{
    brute_force_solve, for_each_feasible, layer_feasible_brute, Box, DEFAULT_ENUMERATION_CAP,
};
use layersift::rational::{int, ratio, Rational};
use layersift::report::{InfeasibleWitness, SolveStatus};
use layersift::solver::{
    descend_to_neighbor, is_center_feasible, sift_range, sift_solve, solve_fixed_line,
    step_toward_neighbors, FixedLineStatus, SiftOptions,
};
use layersift::symmetry::{
    is_k_homogeneous, is_k_transitive, orbit_of_point, PermGroup, Permutation,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    id: u32,
    title: &'static str,
    passed: bool,
    detail: String,
}

fn outcome(id: u32, title: &'static str, passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        id,
        title,
        passed,
        detail: detail.into(),
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let inst = common::load("fig1.ip");
    let group = PermGroup::symmetric(2);
    let report = sift_solve(&inst, &group, SiftOptions::default()).unwrap();
    let elapsed = start.elapsed();
    let (ok, detail) = match &report.status {
        SolveStatus::Optimal { point, value, .. } => {
            let orbit: BTreeSet<Point> =
                orbit_of_point(&group, point).unwrap().into_iter().collect();
            let expected: BTreeSet<Point> =
                [Point::from_ints([2, 1]), Point::from_ints([1, 2])].into();
            let ok = *value == int(3)
                && orbit == expected
                && report.stats.layers_visited == 1
                && elapsed < Duration::from_secs(1);
            let orbit: Vec<String> = orbit.iter().map(ToString::to_string).collect();
            (
                ok,
                format!(
                    "value {value}, orbit {{{}}}, {} layer(s), {elapsed:?}",
                    orbit.join(", "),
                    report.stats.layers_visited
                ),
            )
        }
        other => (false, format!("status {other:?}")),
    };
    outcome(1, "fig1 reproduces value 3 at {(2,1),(1,2)}", ok, detail)
}

fn is_valid_coprime(c: &[Rational], cp: &CoprimeMultiple) -> bool {
    let e = cp.entries();
    let gcd = e.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let first_positive = e
        .iter()
        .find(|v| !v.is_zero())
        .is_some_and(|v| v.is_positive());
    let parallel = (0..c.len()).all(|i| {
        (0..c.len()).all(|j| {
            &c[i] * Rational::from_integer(e[j].clone())
                == &c[j] * Rational::from_integer(e[i].clone())
        })
    });
    gcd.is_one() && first_positive && parallel
}

fn criterion_2() -> Outcome {
    let example = coprime_multiple(&[int(-2), int(2), int(4), int(6)]).unwrap();
    let expected: Vec<BigInt> = [1, -1, -2, -3].iter().map(|&v| BigInt::from(v)).collect();
    let example_ok = example.entries() == expected.as_slice();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut failures = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=6);
        let mut c: Vec<Rational> = (0..n)
            .map(|_| ratio(rng.gen_range(-60..=60), rng.gen_range(1..=24)))
            .collect();
        if c.iter().all(Zero::is_zero) {
            c[0] = ratio(-7, 3);
        }
        if !is_valid_coprime(&c, &coprime_multiple(&c).unwrap()) {
            failures += 1;
        }
    }
    outcome(
        2,
        "coprime multiple example and 1000 random vectors",
        example_ok && failures == 0,
        format!("example {example_ok}, {failures} random failures"),
    )
}

fn criterion_3() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for v in [[1i64, 1, 1], [1, 1, 2]] {
        let cp = coprime_multiple(&v.map(int)).unwrap();
        let norm: i64 = v.iter().map(|x| x * x).sum();
        for m in -2i64..=2 {
            let (lo, hi) = (m * norm, (m + 1) * norm);
            let r = 3 * (m.abs() + 2) + norm;
            let mut seen = BTreeSet::new();
            for x0 in -r..=r {
                for x1 in -r..=r {
                    for x2 in -r..=r {
                        let k = layer_index(&cp, &Point::from_ints([x0, x1, x2])).unwrap();
                        if k >= BigInt::from(lo) && k < BigInt::from(hi) {
                            seen.insert(k);
                        }
                    }
                }
            }
            ok &= BigInt::from(seen.len()) == layers_per_period(&cp) && seen.len() as i64 == norm;
            details.push(format!("{v:?} m={m}: {}", seen.len()));
        }
    }
    outcome(
        3,
        "layers per period equal the squared norm",
        ok,
        details.join(", "),
    )
}

struct Sweep {
    instances: usize,
    agreements: usize,
    disagreements: Vec<String>,
    max_visited_excess: Vec<String>,
    max_visited: usize,
    center_checks: usize,
    center_mismatch: Vec<String>,
    /// Layers with a feasible integer point but an infeasible center.
    center_reverse_mismatch: usize,
    neighbor_checks: usize,
    neighbor_mismatch: Vec<String>,
    descent_samples: usize,
    descent_failures: Vec<String>,
    max_descent_steps: usize,
    statuses: [usize; 2],
    elapsed: Duration,
}

/// Runs the randomized sweep shared by criteria 4-8.
fn sweep() -> Sweep {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20_26);
    let mut s = Sweep {
        instances: 0,
        agreements: 0,
        disagreements: Vec::new(),
        max_visited_excess: Vec::new(),
        max_visited: 0,
        center_checks: 0,
        center_mismatch: Vec::new(),
        center_reverse_mismatch: 0,
        neighbor_checks: 0,
        neighbor_mismatch: Vec::new(),
        descent_samples: 0,
        descent_failures: Vec::new(),
        max_descent_steps: 0,
        statuses: [0, 0],
        elapsed: Duration::ZERO,
    };
    const PER_DIMENSION: usize = 70;
    const DESCENT_BUDGET: usize = 10_000;
    let per_instance_samples = DESCENT_BUDGET / (3 * PER_DIMENSION);
    for n in [5usize, 6, 7] {
        let group = PermGroup::symmetric(n);
        for id in 0..PER_DIMENSION {
            let (inst, bx) = common::random_symmetric_instance(&mut rng, n, id);
            s.instances += 1;
            let sift = sift_solve(&inst, &group, SiftOptions::default()).unwrap();
            let oracle = brute_force_solve(&inst, &bx, DEFAULT_ENUMERATION_CAP).unwrap();
            let same_status = matches!(
                (&sift.status, &oracle.report.status),
                (SolveStatus::Optimal { .. }, SolveStatus::Optimal { .. })
                    | (SolveStatus::Infeasible(_), SolveStatus::Infeasible(_))
            );
            if same_status && sift.status.value() == oracle.report.status.value() {
                s.agreements += 1;
            } else {
                s.disagreements.push(format!(
                    "{}: sift {:?} vs oracle {:?}",
                    inst.name, sift.status, oracle.report.status
                ));
            }
            s.statuses[matches!(sift.status, SolveStatus::Optimal { .. }) as usize] += 1;
            s.max_visited = s.max_visited.max(sift.stats.layers_visited);
            if sift.stats.layers_visited > n {
                s.max_visited_excess
                    .push(format!("{}: {}", inst.name, sift.stats.layers_visited));
            }

            let line = solve_fixed_line(&inst).unwrap();
            if let FixedLineStatus::Bounded(a) = &line.status {
                for k in sift_range(n, a, &line.gamma) {
                    let brute =
                        layer_feasible_brute(&inst, &k, &bx, DEFAULT_ENUMERATION_CAP).unwrap();
                    let center = is_center_feasible(&inst, &k).unwrap();
                    let neighbor = inst
                        .is_feasible_point(&layersift::layers::canonical_neighbor(n, &k))
                        .unwrap();
                    s.center_checks += 1;
                    s.neighbor_checks += 1;
                    if center != brute {
                        s.center_mismatch.push(format!(
                            "{} k={k}: center {center}, brute {brute}",
                            inst.name
                        ));
                        s.center_reverse_mismatch += usize::from(brute);
                    }
                    if neighbor != brute {
                        s.neighbor_mismatch.push(format!(
                            "{} k={k}: neighbor {neighbor}, brute {brute}",
                            inst.name
                        ));
                    }
                }
            }

            let mut candidates = Vec::new();
            for_each_feasible(&inst, &bx, DEFAULT_ENUMERATION_CAP, |x| {
                let p = Point::from_ints(x.iter().copied());
                if !is_neighbor(&p) {
                    candidates.push(p);
                }
            })
            .unwrap();
            let stride = (candidates.len() / per_instance_samples).max(1);
            for x in candidates.iter().step_by(stride).take(per_instance_samples) {
                s.descent_samples += 1;
                match check_descent(&inst, &group, x) {
                    Ok(steps) => s.max_descent_steps = s.max_descent_steps.max(steps),
                    Err(why) => s.descent_failures.push(format!("{} {x}: {why}", inst.name)),
                }
            }
        }
    }
    s.elapsed = start.elapsed();
    s
}

fn check_descent(inst: &IpInstance, group: &PermGroup, x: &Point) -> Result<usize, String> {
    let y = step_toward_neighbors(inst, group, x).map_err(|e| e.to_string())?;
    let k = x.sum();
    let m = Point(vec![
        &k / Rational::from_integer(BigInt::from(inst.n()));
        inst.n()
    ]);
    if !y.is_integral()
        || !inst.is_feasible_point(&y).unwrap()
        || y.sum() != k
        || y.squared_distance(&m) >= x.squared_distance(&m)
    {
        return Err(format!("bad step to {y}"));
    }
    let d = descend_to_neighbor(inst, group, x).map_err(|e| e.to_string())?;
    if d.steps > 64
        || !is_neighbor(&d.neighbor)
        || !inst.is_feasible_point(&d.neighbor).unwrap()
        || d.neighbor.sum() != k
    {
        return Err(format!(
            "descent ended at {} after {} steps",
            d.neighbor, d.steps
        ));
    }
    Ok(d.steps)
}

fn first_few(v: &[String]) -> String {
    v.iter().take(3).cloned().collect::<Vec<_>>().join("; ")
}

fn sweep_criteria(s: &Sweep, max_steps: usize) -> Vec<Outcome> {
    vec![
        outcome(
            4,
            "sift and oracle agree on >= 200 symmetric instances in < 2 min",
            s.instances >= 200
                && s.disagreements.is_empty()
                && s.elapsed < Duration::from_secs(120),
            format!(
                "{}/{} agree ({} optimal, {} infeasible), {:?} {}",
                s.agreements,
                s.instances,
                s.statuses[1],
                s.statuses[0],
                s.elapsed,
                first_few(&s.disagreements)
            ),
        ),
        outcome(
            5,
            "at most n layers visited",
            s.max_visited_excess.is_empty(),
            format!(
                "max visited {} {}",
                s.max_visited,
                first_few(&s.max_visited_excess)
            ),
        ),
        outcome(
            6,
            "center feasibility equals brute layer feasibility",
            s.center_mismatch.is_empty(),
            format!(
                "{}/{} layers agree; integer-feasible layers with infeasible center: {}; {}",
                s.center_checks - s.center_mismatch.len(),
                s.center_checks,
                s.center_reverse_mismatch,
                first_few(&s.center_mismatch)
            ),
        ),
        outcome(
            7,
            "canonical-neighbor feasibility equals brute layer feasibility",
            s.neighbor_mismatch.is_empty(),
            format!(
                "{}/{} layers agree {}",
                s.neighbor_checks - s.neighbor_mismatch.len(),
                s.neighbor_checks,
                first_few(&s.neighbor_mismatch)
            ),
        ),
        outcome(
            8,
            "descent steps are valid and reach a neighbor within 64 steps",
            s.descent_samples > 0 && s.descent_failures.is_empty() && max_steps <= 64,
            format!(
                "{} samples, {} failures, longest descent {} steps {}",
                s.descent_samples,
                s.descent_failures.len(),
                max_steps,
                first_few(&s.descent_failures)
            ),
        ),
    ]
}

/// Exhaustive oracle: images of (1..k) under every element of the closed group.
fn tuple_and_subset_images(group: &PermGroup, k: usize) -> (usize, usize) {
    let elements = group.elements(1_000_000).unwrap();
    let mut tuples = HashSet::new();
    let mut subsets = HashSet::new();
    for g in &elements {
        let t: Vec<usize> = (0..k).map(|i| g.image(i)).collect();
        let mut s = t.clone();
        s.sort_unstable();
        tuples.insert(t);
        subsets.insert(s);
    }
    (tuples.len(), subsets.len())
}

fn criterion_9() -> Outcome {
    let s5 = PermGroup::symmetric(5);
    let a5 = PermGroup::new(
        5,
        vec![
            Permutation::from_cycles(5, &[&[1, 2, 3]]).unwrap(),
            Permutation::from_cycles(5, &[&[3, 4, 5]]).unwrap(),
        ],
    )
    .unwrap();
    let s5_5 = is_k_transitive(&s5, 5).unwrap();
    let a5_3 = is_k_transitive(&a5, 3).unwrap();
    let a5_4 = is_k_transitive(&a5, 4).unwrap();
    let a5_h2 = is_k_homogeneous(&a5, 2).unwrap();
    let oracle_s5_5 = tuple_and_subset_images(&s5, 5).0 == 120;
    let oracle_a5_3 = tuple_and_subset_images(&a5, 3).0 == 60;
    let oracle_a5_4 = tuple_and_subset_images(&a5, 4).0 == 120;
    let oracle_a5_h2 = tuple_and_subset_images(&a5, 2).1 == 10;
    let ok = s5_5
        && a5_3
        && !a5_4
        && a5_h2
        && (s5_5, a5_3, a5_4, a5_h2) == (oracle_s5_5, oracle_a5_3, oracle_a5_4, oracle_a5_h2);
    outcome(
        9,
        "S5 5-transitive, A5 3- not 4-transitive, A5 2-homogeneous",
        ok,
        format!("bfs ({s5_5}, {a5_3}, {a5_4}, {a5_h2}), exhaustive ({oracle_s5_5}, {oracle_a5_3}, {oracle_a5_4}, {oracle_a5_h2})"),
    )
}

fn criterion_10() -> Outcome {
    let inst = common::load("infeas2.ip");
    let report = sift_solve(&inst, &PermGroup::symmetric(2), SiftOptions::default()).unwrap();
    let oracle =
        brute_force_solve(&inst, &Box::cube(2, 4).unwrap(), DEFAULT_ENUMERATION_CAP).unwrap();
    let ok = report.status
        == SolveStatus::Infeasible(InfeasibleWitness::CenterInfeasible(BigInt::from(3)))
        && oracle.feasible_count == 0;
    outcome(
        10,
        "infeas2 infeasible with witness layer 3",
        ok,
        format!(
            "sift {:?}, oracle feasible points {}",
            report.status, oracle.feasible_count
        ),
    )
}

fn main() {
    let mut outcomes = vec![criterion_1(), criterion_2(), criterion_3()];
    let s = sweep();
    outcomes.extend(sweep_criteria(&s, s.max_descent_steps));
    outcomes.push(criterion_9());
    outcomes.push(criterion_10());
    outcomes.sort_by_key(|o| o.id);

    let mut failed = 0;
    for o in &outcomes {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {:>2}: {} -- {}", o.id, o.title, o.detail);
        failed += usize::from(!o.passed);
    }
    println!(
        "acceptance: {} passed, {} failed",
        outcomes.len() - failed,
        failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
