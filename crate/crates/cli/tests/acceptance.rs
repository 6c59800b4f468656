//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! Run with `cargo test -p lampwalk-cli --test acceptance`.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use itertools::Itertools;
use lampwalk::boundary::{
    accumulation_check, aggregate_speed, harmonic_measure_estimate, omega_point_estimate, stationarity_check,
    AccumulationRule, BoundaryCell,
};
use lampwalk::lamplighter::{bfs_ball, lamp_distance, tour_length};
use lampwalk::strips::{
    base_strip, busemann, check_equivariance, half_space_partition, lifted_strip_count, strip_ball_count, OmegaPoint,
    PartitionScheme, Side,
};
use lampwalk::walk::{batch_run, presets, run_walk};
use lampwalk::{BaseElement, BaseGroup, BoundaryPoint, Configuration, LampElement, MetricParams, Rational, WalkConfig};
use lampwalk_cli::random;
use rand::Rng;

const SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn f2() -> BaseGroup {
    BaseGroup::free(2).unwrap()
}

fn z3() -> BaseGroup {
    BaseGroup::lattice(3).unwrap()
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

fn c1_group_law() -> Outcome {
    let start = Instant::now();
    let mut rng = random::rng(SEED, 1);
    let mut violations = 0;
    for group in [f2(), z3()] {
        let id = LampElement::identity(&group, 2);
        for _ in 0..1000 {
            let [a, b, c] = [(); 3].map(|_| random::lamp_element(&mut rng, &group, 2, 10, 5));
            let ok = a.multiply(&b).unwrap().multiply(&c).unwrap() == a.multiply(&b.multiply(&c).unwrap()).unwrap()
                && a.multiply(&a.inverse()).unwrap() == id
                && a.inverse().multiply(&a).unwrap() == id
                && a.multiply(&id).unwrap() == a
                && id.multiply(&a).unwrap() == a;
            violations += usize::from(!ok);
        }
    }
    let t = start.elapsed();
    outcome(
        violations == 0 && t < Duration::from_secs(5),
        format!("2 x 1000 triples, {violations} violations, {:.2} s (limit 5 s)", secs(t)),
    )
}

fn c2_metric_oracle() -> Outcome {
    let start = Instant::now();
    let group = f2();
    let id = LampElement::identity(&group, 2);
    let params = MetricParams::default();
    let ball = bfs_ball(&group, 2, 8).unwrap();
    let violations = ball
        .iter()
        .filter(|(g, d)| lamp_distance(&id, g, &params).unwrap() != Rational::from_integer(i64::from(**d)))
        .count();
    let t = start.elapsed();
    outcome(
        violations == 0 && t < Duration::from_secs(60),
        format!("|B_G(id, 8)| = {}, {violations} violations, {:.2} s (limit 60 s)", ball.len(), secs(t)),
    )
}

fn brute_force_tour(start: &BaseElement, end: &BaseElement, sites: &[BaseElement]) -> u64 {
    sites
        .iter()
        .permutations(sites.len())
        .map(|perm| {
            let mut at = start;
            let mut len = 0;
            for s in perm {
                len += at.word_distance(s).unwrap();
                at = s;
            }
            len + at.word_distance(end).unwrap()
        })
        .min()
        .unwrap()
}

fn c3_tsp() -> Outcome {
    let mut rng = random::rng(SEED, 3);
    let mut violations = 0;
    for group in [f2(), z3()] {
        for _ in 0..200 {
            let k = rng.random_range(0..=8);
            let sites: Vec<BaseElement> =
                (0..k).map(|_| random::element(&mut rng, &group, 5)).sorted().dedup().collect();
            let (s, e) = (random::element(&mut rng, &group, 3), random::element(&mut rng, &group, 3));
            violations += usize::from(tour_length(&s, &e, &sites, 16).unwrap() != brute_force_tour(&s, &e, &sites));
        }
    }
    outcome(violations == 0, format!("2 x 200 instances with at most 8 sites, {violations} violations"))
}

fn c4_convergence() -> Outcome {
    let start = Instant::now();
    let mu = presets::srw_lamp(f2(), 2).unwrap();
    let (n, walks, mid) = (10_000u64, 200u64, 5_000u64);
    let rule = AccumulationRule::Cylinder { depth: 3 };
    let (mut nonempty, mut unchanged) = (0, 0);
    for i in 0..walks {
        let traj = run_walk(&mu, n, SEED, i);
        let late = omega_point_estimate(&traj, n / 10).unwrap();
        if late.point.prefix().is_some_and(|p| !p.is_empty()) {
            nonempty += 1;
        }
        let early = omega_point_estimate(&traj.truncated(mid).unwrap(), mid / 10).unwrap();
        let (a, b) = (accumulation_check(&early, &rule), accumulation_check(&late, &rule));
        if let (Ok(a), Ok(b)) = (a, b) {
            unchanged += usize::from(a.outside == b.outside);
        }
    }
    let t = start.elapsed();
    let (p_nonempty, p_unchanged) = (nonempty as f64 / walks as f64, unchanged as f64 / walks as f64);
    outcome(
        p_nonempty >= 0.99 && p_unchanged >= 0.95 && t < Duration::from_secs(120),
        format!(
            "nonempty prefix {:.1}% (need 99%), outside count stable {:.1}% (need 95%), {:.1} s",
            100.0 * p_nonempty,
            100.0 * p_unchanged,
            secs(t)
        ),
    )
}

/// `E d(e, X_n)` on the 4-regular tree via the birth–death chain of the distance.
fn tree_srw_expected_distance(n: usize) -> f64 {
    let mut p = vec![0.0f64; n + 2];
    p[0] = 1.0;
    for t in 0..n {
        let mut next = vec![0.0f64; n + 2];
        next[1] += p[0];
        for k in 1..=t.min(n) {
            next[k + 1] += 0.75 * p[k];
            next[k - 1] += 0.25 * p[k];
        }
        p = next;
    }
    p.iter().enumerate().map(|(k, q)| k as f64 * q).sum()
}

fn c5_speed() -> Outcome {
    let n = 10_000u64;
    let cfg = WalkConfig::new(n, 200, SEED).unwrap();
    let tree = batch_run(&presets::srw(f2(), 2).unwrap(), &cfg).unwrap();
    let tree = aggregate_speed(&tree.iter().map(|s| s.speed).collect::<Vec<_>>());
    let oracle = tree_srw_expected_distance(n as usize) / n as f64;
    let m = [Rational::new(1, 3), Rational::from_integer(0), Rational::from_integer(0)];
    let lattice = batch_run(&presets::drift(z3(), 2, &m, false).unwrap(), &cfg).unwrap();
    let lattice = aggregate_speed(&lattice.iter().map(|s| s.speed).collect::<Vec<_>>());
    let l1 = 1.0 / 3.0;
    let pass = (tree.base_mean - oracle).abs() <= 0.02
        && (tree.base_mean - 0.5).abs() <= 0.02
        && (lattice.base_mean - l1).abs() <= 0.02;
    outcome(
        pass,
        format!(
            "F2 speed {:.4} (oracle {oracle:.4}, target 0.5 +- 0.02); Z3 speed {:.4} (|m|_1 = {l1:.4} +- 0.02)",
            tree.base_mean, lattice.base_mean
        ),
    )
}

fn c6_harmonic() -> Outcome {
    let mu = presets::srw(f2(), 2).unwrap();
    let small = batch_run(&mu, &WalkConfig::new(2_000, 2_000, SEED).unwrap()).unwrap();
    let nu = harmonic_measure_estimate(small.iter().map(|s| s.limit.as_ref()), 1);
    let masses: Vec<f64> = ["a", "A", "b", "B"]
        .iter()
        .map(|w| nu.mass(&BoundaryCell::Cylinder(w.parse().unwrap())))
        .collect();
    let uniform = nu.undecided == 0 && masses.iter().all(|m| (m - 0.25).abs() <= 0.03);

    // independent halves: even walks at depth 1, odd walks at depth 1 + max |g|
    let big = batch_run(&mu, &WalkConfig::new(2_000, 10_000, SEED + 1).unwrap()).unwrap();
    let half = |parity: u64, depth: usize| {
        harmonic_measure_estimate(big.iter().filter(|s| s.walk_index % 2 == parity).map(|s| s.limit.as_ref()), depth)
    };
    let report = stationarity_check(&mu, &half(0, 1), &half(1, 2)).unwrap();
    let stationary = report.max_discrepancy <= 0.02;
    outcome(
        uniform && stationary,
        format!(
            "depth-1 masses {masses:.4?} (0.25 +- 0.03, N = 2000); stationarity max discrepancy {:.4} (limit 0.02, N = 10^4)",
            report.max_discrepancy
        ),
    )
}

fn strictly_decreasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[1] < w[0])
}

fn c7_strip_growth() -> Outcome {
    let params = MetricParams::default();
    let tree_ends = (BoundaryPoint::End("a.a".parse().unwrap()), BoundaryPoint::End("b.b".parse().unwrap()));
    let axis = base_strip(&tree_ends.0, &tree_ends.1).unwrap();
    let exact = (0..=12).all(|n| strip_ball_count(&axis, n).unwrap() == 2 * n as u128 + 1);

    let growth = |plus: &OmegaPoint, minus: &OmegaPoint, scheme: &PartitionScheme| -> Vec<f64> {
        (4..=12)
            .map(|n| (lifted_strip_count(plus, minus, scheme, n, &params).unwrap().0 as f64).ln() / f64::from(n))
            .collect()
    };
    let tree_curve = growth(
        &OmegaPoint::new(Configuration::zero(2), tree_ends.0.clone()).unwrap(),
        &OmegaPoint::new(Configuration::zero(2), tree_ends.1.clone()).unwrap(),
        &PartitionScheme::TreeEdgeCut,
    );
    let m = vec![Rational::new(1, 3), Rational::from_integer(0), Rational::from_integer(0)];
    let dir = |s: f64| BoundaryPoint::Direction(lampwalk::base_group::Direction::normalize(&[s, 0.0, 0.0]).unwrap());
    let lattice_curve = growth(
        &OmegaPoint::new(Configuration::zero(2), dir(1.0)).unwrap(),
        &OmegaPoint::new(Configuration::zero(2), dir(-1.0)).unwrap(),
        &PartitionScheme::Hyperplane { drift: m.clone() },
    );
    let decreasing = strictly_decreasing(&tree_curve) && strictly_decreasing(&lattice_curve);

    let mut rng = random::rng(SEED, 7);
    let mut violations = 0;
    for i in 0..50 {
        let (plus, minus, scheme, max_n) = if i % 5 == 4 {
            let plus = OmegaPoint::new(random::configuration(&mut rng, &z3(), 2, 6, 4), dir(1.0)).unwrap();
            let minus = OmegaPoint::new(random::configuration(&mut rng, &z3(), 2, 6, 4), dir(-1.0)).unwrap();
            (plus, minus, PartitionScheme::Hyperplane { drift: m.clone() }, 8)
        } else {
            let (u, v) = random::end_pair(&mut rng, 2);
            let plus = OmegaPoint::new(random::configuration(&mut rng, &f2(), 2, 6, 5), u).unwrap();
            let minus = OmegaPoint::new(random::configuration(&mut rng, &f2(), 2, 6, 5), v).unwrap();
            (plus, minus, PartitionScheme::TreeEdgeCut, 12)
        };
        for n in 0..=max_n {
            let (g, base) = lifted_strip_count(&plus, &minus, &scheme, n, &params).unwrap();
            violations += usize::from(g > base);
        }
    }
    outcome(
        exact && decreasing && violations == 0,
        format!(
            "2n+1 through e for n <= 12: {exact}; log(count_G)/n strictly decreasing on n = 4..12 (tree {}, Z3 {}); count_G > count_base in {violations} rows of 50 instances",
            strictly_decreasing(&tree_curve),
            strictly_decreasing(&lattice_curve)
        ),
    )
}

fn c8_equivariance() -> Outcome {
    let mut rng = random::rng(SEED, 8);
    let (mut tree_bad, mut lattice_bad, mut horo_lift_bad, mut horo_other_bad) = (0, 0, 0, 0);
    for _ in 0..200 {
        let (u, v) = random::end_pair(&mut rng, 2);
        let plus = OmegaPoint::new(random::configuration(&mut rng, &f2(), 2, 4, 4), u).unwrap();
        let minus = OmegaPoint::new(random::configuration(&mut rng, &f2(), 2, 4, 4), v).unwrap();
        let points = base_strip(&plus.end, &minus.end).unwrap().points_within(8).unwrap();
        let x = &points[rng.random_range(0..points.len().min(7))];
        let g = random::lamp_element(&mut rng, &f2(), 2, 4, 4);
        let r = check_equivariance(&g, &plus, &minus, x, &PartitionScheme::TreeEdgeCut, &f2(), 5).unwrap();
        tree_bad += usize::from(!r.is_ok());
        let h = check_equivariance(&g, &plus, &minus, x, &PartitionScheme::Horosphere, &f2(), 5).unwrap();
        horo_other_bad += usize::from(!h.strip_mismatches.is_empty() || !h.partition_mismatches.is_empty());
        horo_lift_bad += usize::from(h.lift_mismatch.is_some());
    }
    for _ in 0..200 {
        let m: Vec<Rational> = (0..3).map(|_| Rational::new(rng.random_range(-2..=2), 7)).collect();
        if m.iter().all(|q| *q == Rational::from_integer(0)) {
            continue;
        }
        let mf: Vec<f64> = m.iter().map(|q| *q.numer() as f64 / *q.denom() as f64).collect();
        let neg: Vec<f64> = mf.iter().map(|c| -c).collect();
        let dir = |v: &[f64]| BoundaryPoint::Direction(lampwalk::base_group::Direction::normalize(v).unwrap());
        let plus = OmegaPoint::new(random::configuration(&mut rng, &z3(), 2, 4, 3), dir(&mf)).unwrap();
        let minus = OmegaPoint::new(random::configuration(&mut rng, &z3(), 2, 4, 3), dir(&neg)).unwrap();
        let x = random::element(&mut rng, &z3(), 3);
        let g = random::lamp_element(&mut rng, &z3(), 2, 4, 3);
        let r = check_equivariance(&g, &plus, &minus, &x, &PartitionScheme::Hyperplane { drift: m }, &z3(), 5).unwrap();
        lattice_bad += usize::from(!r.is_ok());
    }
    outcome(
        tree_bad == 0 && lattice_bad == 0 && horo_other_bad == 0,
        format!(
            "mismatching trials: tree-edge-cut {tree_bad}/200, hyperplane {lattice_bad}/200 on radius-5 balls; \
             horosphere strip and partition {horo_other_bad}/200, horosphere lift {horo_lift_bad}/200 (known, see notes)"
        ),
    )
}

fn c9_busemann() -> Outcome {
    let mut rng = random::rng(SEED, 9);
    let (mut algebra_bad, mut oracle_bad, mut membership_bad) = (0, 0, 0);
    for _ in 0..500 {
        let (u, v) = random::end_pair(&mut rng, 2);
        let [x, y, z] = [(); 3].map(|_| BaseElement::Free(random::word(&mut rng, 2, 8)));
        let b = |p: &BaseElement, q: &BaseElement| busemann(&u, p, q).unwrap();
        algebra_bad += usize::from(b(&x, &y) + b(&y, &z) != b(&x, &z) || b(&x, &y) != -b(&y, &x));

        // the limit d(x, w) − d(y, w) is already attained at a deep point w of u
        let deep = x.norm() + y.norm() + 8;
        let w = BaseElement::Free(u.as_end().unwrap().initial_segment(deep as usize).unwrap());
        let limit = x.word_distance(&w).unwrap() as i64 - y.word_distance(&w).unwrap() as i64;
        oracle_bad += usize::from(limit != b(&x, &y));

        let points = base_strip(&u, &v).unwrap().points_within(8).unwrap();
        let s = &points[rng.random_range(0..points.len().min(9))];
        let partition = half_space_partition(&u, &v, s, &PartitionScheme::Horosphere).unwrap();
        for yy in f2().enumerate_ball(s, 3).unwrap().elements {
            let expected = if busemann(&u, s, &yy).unwrap() == 0 {
                Side::Plus
            } else if busemann(&v, s, &yy).unwrap() == 0 {
                Side::Minus
            } else {
                Side::Neither
            };
            membership_bad += usize::from(partition.classify(&yy).unwrap() != expected);
        }
    }
    outcome(
        algebra_bad + oracle_bad + membership_bad == 0,
        format!(
            "500 triples: cocycle/antisymmetry {algebra_bad}, deep-point oracle {oracle_bad}, horosphere membership {membership_bad} violations"
        ),
    )
}

fn run_cli(args: &[&str], threads: usize, dir: &Path, tag: &str) -> Vec<u8> {
    let out = dir.join(format!("{tag}.out"));
    let report = dir.join(format!("{tag}.report"));
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lampwalk"));
    cmd.args(args).arg("--output").arg(&out).env("LAMPWALK_THREADS", threads.to_string());
    if args[0] == "strip" {
        cmd.arg("--report").arg(&report);
    }
    let status = cmd.status().unwrap();
    assert!(status.success(), "lampwalk {args:?} failed: {status}");
    let mut bytes = std::fs::read(&out).unwrap();
    if let Ok(r) = std::fs::read(&report) {
        bytes.extend(r);
    }
    bytes
}

fn c10_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let max = std::thread::available_parallelism().map_or(1, |n| n.get()).max(2);
    let commands: [&[&str]; 5] = [
        &["simulate", "--steps", "3000", "--walks", "64", "--seed", "9"],
        &["simulate", "--family", "lattice", "--measure", "drift(1/4,0,1/8)+lamp", "--steps", "2000", "--walks", "32"],
        &["metric", "--lamps", "a,B", "--pos", "ab", "--bfs-check"],
        &["strip", "--u", "ab.a", "--v", "B.B", "--phi-plus", "b", "--phi-minus", "aB", "--trials", "40"],
        &["verify", "--trials", "60"],
    ];
    let mut identical = 0;
    for (i, args) in commands.iter().enumerate() {
        let runs: Vec<Vec<u8>> = [1, 1, max, max]
            .iter()
            .enumerate()
            .map(|(k, &t)| run_cli(args, t, dir.path(), &format!("{i}-{k}")))
            .collect();
        identical += usize::from(!runs[0].is_empty() && runs.iter().all(|r| r == &runs[0]));
    }
    outcome(
        identical == commands.len(),
        format!("{identical}/{} commands byte-identical across two runs each at 1 and {max} threads", commands.len()),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    // `cargo test` passes harness flags such as --nocapture; the suite takes none
    let criteria: [Criterion; 10] = [
        ("group law", c1_group_law),
        ("metric oracle", c2_metric_oracle),
        ("TSP exactness", c3_tsp),
        ("convergence", c4_convergence),
        ("speed", c5_speed),
        ("harmonic measure", c6_harmonic),
        ("strip growth", c7_strip_growth),
        ("equivariance", c8_equivariance),
        ("Busemann", c9_busemann),
        ("determinism", c10_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        failed += usize::from(!o.pass);
        println!(
            "{} criterion {:>2} {name}: {} [{:.1} s]",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            secs(start.elapsed())
        );
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
