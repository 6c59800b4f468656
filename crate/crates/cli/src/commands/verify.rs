//! The invariant suite behind `lampwalk verify`.

use std::io::Write;

use itertools::Itertools;
use lampwalk::lamplighter::{bfs_ball, lamp_distance, tour_length};
use lampwalk::strips::{
    base_strip, busemann, check_equivariance, lifted_strip_count, strip_ball_count, OmegaPoint, PartitionScheme,
};
use lampwalk::walk::{batch_run, presets, reflect_measure, run_walk, WalkConfig};
use lampwalk::{BaseElement, BaseGroup, BoundaryPoint, LampElement, MetricParams, Rational};
use rand::Rng;

use crate::config::Experiment;
use crate::error::{CliError, CliResult};
use crate::random;
use crate::record::{Header, Kind, Record, RecordWriter};

/// Outcome of one invariant over many cases.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub cases: u64,
    pub failures: u64,
    pub detail: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check { name, ..Default::default() }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.detail.is_none() {
                self.detail = Some(describe());
            }
        }
    }
}

fn groups() -> [BaseGroup; 2] {
    [BaseGroup::free(2).expect("rank 2"), BaseGroup::lattice(3).expect("dim 3")]
}

pub fn group_axioms(seed: u64, trials: u64) -> CliResult<Check> {
    let mut c = Check::new("group-axioms");
    let mut rng = random::rng(seed, 1);
    for group in groups() {
        let id = LampElement::identity(&group, 2);
        for _ in 0..trials {
            let [a, b, d] = [(); 3].map(|_| random::lamp_element(&mut rng, &group, 2, 10, 4));
            let assoc = a.multiply(&b)?.multiply(&d)? == a.multiply(&b.multiply(&d)?)?;
            let inv = a.multiply(&a.inverse())? == id && a.inverse().multiply(&a)? == id;
            let unit = a.multiply(&id)? == a && id.multiply(&a)? == a;
            c.record(assoc && inv && unit, || format!("{a}, {b}, {d}"));
        }
    }
    Ok(c)
}

/// `d_G` against breadth-first search on a whole ball, `c = 1`.
pub fn metric_vs_bfs(name: &'static str, group: &BaseGroup, modulus: u8, radius: u32) -> CliResult<Check> {
    let mut c = Check::new(name);
    let id = LampElement::identity(group, modulus);
    let params = MetricParams::default();
    for (g, d) in bfs_ball(group, modulus, radius)? {
        let ours = lamp_distance(&id, &g, &params)?;
        c.record(ours == Rational::from_integer(i64::from(d)), || format!("{g}: {ours} vs {d}"));
    }
    Ok(c)
}

fn brute_force_tour(start: &BaseElement, end: &BaseElement, sites: &[BaseElement]) -> CliResult<u64> {
    let mut best = u64::MAX;
    for perm in sites.iter().permutations(sites.len()) {
        let mut len = 0;
        let mut at = start;
        for s in perm {
            len += at.word_distance(s)?;
            at = s;
        }
        best = best.min(len + at.word_distance(end)?);
    }
    Ok(best)
}

pub fn tsp_vs_brute_force(seed: u64, instances: u64, max_sites: usize) -> CliResult<Check> {
    let mut c = Check::new("tsp-vs-brute-force");
    let mut rng = random::rng(seed, 2);
    for group in groups() {
        for _ in 0..instances {
            let k = rng.random_range(0..=max_sites);
            let mut sites: Vec<BaseElement> = (0..k).map(|_| random::element(&mut rng, &group, 4)).collect();
            sites.sort();
            sites.dedup();
            let (start, end) = (random::element(&mut rng, &group, 3), random::element(&mut rng, &group, 3));
            let ours = tour_length(&start, &end, &sites, 16)?;
            let truth = brute_force_tour(&start, &end, &sites)?;
            c.record(ours == truth, || format!("{start} -> {end} via {sites:?}: {ours} vs {truth}"));
        }
    }
    Ok(c)
}

/// Cocycle, antisymmetry and the horosphere level set on random tree triples.
pub fn busemann_identities(seed: u64, trials: u64) -> CliResult<Check> {
    let mut c = Check::new("busemann");
    let mut rng = random::rng(seed, 3);
    for _ in 0..trials {
        let u = BoundaryPoint::End(random::end(&mut rng, 2));
        let [x, y, z] = [(); 3].map(|_| BaseElement::Free(random::word(&mut rng, 2, 6)));
        let (bxy, byz, bxz, byx) = (busemann(&u, &x, &y)?, busemann(&u, &y, &z)?, busemann(&u, &x, &z)?, busemann(&u, &y, &x)?);
        c.record(bxy + byz == bxz && bxy == -byx && busemann(&u, &x, &x)? == 0, || format!("{u} at {x}, {y}, {z}"));
    }
    Ok(c)
}

/// Random `(γ, g, ends, x)` trials, compared elementwise on `B(e, radius)`.
pub fn equivariance(seed: u64, trials: u64, radius: u32) -> CliResult<Check> {
    let mut c = Check::new("equivariance");
    let mut rng = random::rng(seed, 4);
    let f2 = BaseGroup::free(2)?;
    for _ in 0..trials {
        let (u, v) = random::end_pair(&mut rng, 2);
        let plus = OmegaPoint::new(random::configuration(&mut rng, &f2, 2, 4, 3), u)?;
        let minus = OmegaPoint::new(random::configuration(&mut rng, &f2, 2, 4, 3), v)?;
        let strip = base_strip(&plus.end, &minus.end)?;
        let Some(x) = strip.points_within(6)?.into_iter().nth(rng.random_range(0..3)) else { continue };
        let g = random::lamp_element(&mut rng, &f2, 2, 3, 3);
        let r = check_equivariance(&g, &plus, &minus, &x, &PartitionScheme::TreeEdgeCut, &f2, radius)?;
        c.record(r.is_ok(), || format!("tree: g = {g}, x = {x}, ends {} / {}", plus.end, minus.end));
    }
    let z3 = BaseGroup::lattice(3)?;
    let drifts = [[1, 0, 0], [1, 1, 0], [1, -2, 1], [0, 0, -1]];
    for trial in 0..trials {
        let m: Vec<Rational> = drifts[trial as usize % drifts.len()].iter().map(|&k| Rational::new(k, 7)).collect();
        let mf: Vec<f64> = m.iter().map(|q| *q.numer() as f64 / *q.denom() as f64).collect();
        let u = BoundaryPoint::Direction(lampwalk::base_group::Direction::normalize(&mf)?);
        let v = BoundaryPoint::Direction(lampwalk::base_group::Direction::normalize(&mf.iter().map(|x| -x).collect::<Vec<_>>())?);
        let plus = OmegaPoint::new(random::configuration(&mut rng, &z3, 2, 4, 3), u)?;
        let minus = OmegaPoint::new(random::configuration(&mut rng, &z3, 2, 4, 3), v)?;
        let x = random::element(&mut rng, &z3, 2);
        let g = random::lamp_element(&mut rng, &z3, 2, 3, 2);
        let scheme = PartitionScheme::Hyperplane { drift: m };
        let r = check_equivariance(&g, &plus, &minus, &x, &scheme, &z3, radius.min(3))?;
        c.record(r.is_ok(), || format!("lattice: g = {g}, x = {x}"));
    }
    Ok(c)
}

/// `2n+1` strip points through `e` and `count_G ≤ count_base`.
pub fn strip_growth(seed: u64, instances: u64, max_n: u32) -> CliResult<Check> {
    let mut c = Check::new("strip-growth");
    let axis = base_strip(&BoundaryPoint::End("a.a".parse()?), &BoundaryPoint::End("A.A".parse()?))?;
    for n in 0..=max_n {
        let k = strip_ball_count(&axis, n)?;
        c.record(k == 2 * u128::from(n) + 1, || format!("axis strip has {k} points in B(e, {n})"));
    }
    let mut rng = random::rng(seed, 5);
    let f2 = BaseGroup::free(2)?;
    let params = MetricParams::default();
    for _ in 0..instances {
        let (u, v) = random::end_pair(&mut rng, 2);
        let plus = OmegaPoint::new(random::configuration(&mut rng, &f2, 2, 4, 4), u)?;
        let minus = OmegaPoint::new(random::configuration(&mut rng, &f2, 2, 4, 4), v)?;
        for n in 0..=max_n.min(8) {
            let (g, base) = lifted_strip_count(&plus, &minus, &PartitionScheme::TreeEdgeCut, n, &params)?;
            c.record(g <= base, || format!("n = {n}: {g} > {base} for {} / {}", plus.end, minus.end));
        }
    }
    Ok(c)
}

/// Replays, reruns and a single-threaded batch reproduce the same walks.
pub fn walk_determinism(seed: u64) -> CliResult<Check> {
    let mut c = Check::new("walk-determinism");
    let mu = presets::srw_lamp(BaseGroup::free(2)?, 2)?;
    for i in 0..20 {
        let a = run_walk(&mu, 500, seed, i);
        let b = run_walk(&mu, 500, seed, i);
        c.record(a == b && a.replay()? == *a.final_state(), || format!("walk {i}"));
    }
    let cfg = WalkConfig::new(400, 16, seed)?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().map_err(|e| CliError::Invalid(e.to_string()))?;
    let single = pool.install(|| batch_run(&mu, &cfg))?;
    c.record(single == batch_run(&mu, &cfg)?, || "batch differs between thread counts".into());
    let twice = reflect_measure(&reflect_measure(&mu));
    c.record(twice.atoms() == mu.atoms() && twice.probabilities() == mu.probabilities(), || "reflection is not an involution".into());
    Ok(c)
}

pub fn all_checks(exp: &Experiment) -> CliResult<Vec<Check>> {
    let (seed, trials) = (exp.seed, exp.trials);
    Ok(vec![
        group_axioms(seed, trials)?,
        metric_vs_bfs("metric-vs-bfs-free", &BaseGroup::free(2)?, 2, 6)?,
        metric_vs_bfs("metric-vs-bfs-lattice", &BaseGroup::lattice(2)?, 3, 5)?,
        tsp_vs_brute_force(seed, trials / 2, 7)?,
        busemann_identities(seed, trials)?,
        equivariance(seed, trials, exp.radius.min(4))?,
        strip_growth(seed, 20, 12)?,
        walk_determinism(seed)?,
    ])
}

pub fn run<W: Write>(exp: &Experiment, header: &Header, out: &mut RecordWriter<W>) -> CliResult<()> {
    let checks = all_checks(exp)?;
    for c in &checks {
        out.write(
            &Record::new(Kind::Check, header)
                .set("name", c.name)
                .set("cases", c.cases)
                .set("failures", c.failures)
                .opt("detail", c.detail.clone()),
        )?;
    }
    let failed: Vec<&str> = checks.iter().filter(|c| c.failures > 0).map(|c| c.name).collect();
    out.write(&Record::new(Kind::Verify, header).set("checks", checks.len()).set("failed", failed.len()))?;
    if !failed.is_empty() {
        return Err(CliError::Invariant(failed.join(", ")));
    }
    Ok(())
}
