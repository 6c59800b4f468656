use std::io::Write;

use lampwalk::boundary::{
    accumulation_check, aggregate_speed, atom_check, harmonic_measure_estimate, omega_point_estimate,
    stationarity_check, AccumulationRule, EmpiricalBoundaryMeasure, LimitEndEstimate, DEFAULT_HALF_SPACE_OFFSET,
};
use lampwalk::walk::{project_measure, run_walk, summarize, WalkConfig, WalkSummary};
use lampwalk::{BaseGroup, Error, Rational, StepMeasure};
use rayon::prelude::*;

use crate::config::Experiment;
use crate::error::CliResult;
use crate::record::{float_value, ratio_text, Header, Kind, Record, RecordWriter};

struct WalkOutcome {
    summary: WalkSummary,
    /// Settled lamps outside the accumulation region, when the rule applies.
    outside: Option<usize>,
}

fn accumulation_rule(exp: &Experiment, drift: &Option<Vec<Rational>>) -> Option<AccumulationRule> {
    match exp.group {
        BaseGroup::Free { .. } => Some(AccumulationRule::Cylinder { depth: exp.depth }),
        BaseGroup::Lattice { .. } => drift
            .as_ref()
            .filter(|m| m.iter().any(|c| *c != Rational::from_integer(0)))
            .map(|m| AccumulationRule::HalfSpace { drift: m.clone(), offset: DEFAULT_HALF_SPACE_OFFSET }),
    }
}

fn run_one(mu: &StepMeasure, cfg: &WalkConfig, rule: &Option<AccumulationRule>, index: u64) -> CliResult<WalkOutcome> {
    let traj = run_walk(mu, cfg.steps, cfg.seed, index);
    let summary = summarize(&traj, cfg)?;
    let outside = match (rule, &summary.limit) {
        (Some(rule), Some(_)) => match accumulation_check(&omega_point_estimate(&traj, cfg.tail_window())?, rule) {
            Ok(report) => Some(report.outside),
            Err(Error::PrefixTooShort { .. }) => None,
            Err(e) => return Err(e.into()),
        },
        _ => None,
    };
    Ok(WalkOutcome { summary, outside })
}

fn limit_fields(limit: &Option<LimitEndEstimate>) -> (serde_json::Value, serde_json::Value, serde_json::Value) {
    match limit {
        None => (serde_json::Value::Null, serde_json::Value::Null, serde_json::Value::Null),
        Some(LimitEndEstimate::Free { prefix, stabilization_time, .. }) => {
            (prefix.to_string().into(), prefix.len().into(), (*stabilization_time).into())
        }
        Some(LimitEndEstimate::Direction { direction, distance, .. }) => {
            let parts: Vec<String> = direction.components().iter().map(|c| float_value(*c).to_string()).collect();
            (format!("({})", parts.join(",")).into(), (*distance).into(), serde_json::Value::Null)
        }
    }
}

fn walk_record(header: &Header, s: &WalkSummary, outside: Option<usize>) -> Record {
    let n = s.speed.steps as f64;
    let to_f = |q: Rational| *q.numer() as f64 / *q.denom() as f64;
    let (limit, length, stab) = limit_fields(&s.limit);
    Record::new(Kind::Walk, header)
        .set("walk_index", s.walk_index)
        .set("final_position", s.final_position.to_string())
        .set("distance", s.speed.base_distance)
        .set("support_size", s.support_size)
        .set("unsettled", s.unsettled)
        .float("base_speed", s.speed.base_speed())
        .float("lamp_speed_lower", to_f(s.speed.lamp.lower) / n)
        .float("lamp_speed_upper", to_f(s.speed.lamp.upper) / n)
        .set("lamp_exact", s.speed.lamp.exact)
        .set("limit", limit)
        .set("limit_length", length)
        .set("stabilization_time", stab)
        .opt("outside", outside)
}

/// Even walks estimate `ν_∞` at depth `L`; odd walks at the depth the
/// stationarity check needs for the convolution.
fn stationarity_inputs(
    exp: &Experiment,
    mu: &StepMeasure,
    summaries: &[WalkSummary],
) -> (EmpiricalBoundaryMeasure, EmpiricalBoundaryMeasure) {
    let rhs_depth = match exp.group {
        BaseGroup::Free { .. } => exp.depth + mu.max_step_length() as usize,
        BaseGroup::Lattice { .. } => exp.depth,
    };
    let half = |parity: u64, depth: usize| {
        let ests = summaries.iter().filter(|s| s.walk_index % 2 == parity).map(|s| s.limit.as_ref());
        harmonic_measure_estimate(ests, depth)
    };
    (half(0, exp.depth), half(1, rhs_depth))
}

pub fn run<W: Write>(exp: &Experiment, header: &Header, out: &mut RecordWriter<W>) -> CliResult<()> {
    let mu = exp.measure()?;
    let cfg = exp.walk_config()?;
    let drift = project_measure(&mu).drift();
    let rule = accumulation_rule(exp, &drift);

    out.write(&Record::new(Kind::Config, header).extend(exp.echo()))?;
    let outcomes: Vec<WalkOutcome> =
        (0..cfg.walks).into_par_iter().map(|i| run_one(&mu, &cfg, &rule, i)).collect::<CliResult<_>>()?;
    let (summaries, outside): (Vec<WalkSummary>, Vec<Option<usize>>) =
        outcomes.into_iter().map(|o| (o.summary, o.outside)).unzip();
    for (s, o) in summaries.iter().zip(&outside) {
        out.write(&walk_record(header, s, *o))?;
    }

    let speed = aggregate_speed(&summaries.iter().map(|s| s.speed).collect::<Vec<_>>());
    let harmonic = harmonic_measure_estimate(summaries.iter().map(|s| s.limit.as_ref()), exp.depth);
    let (lhs, rhs) = stationarity_inputs(exp, &mu, &summaries);
    let stationarity = stationarity_check(&mu, &lhs, &rhs)?;
    let atoms = atom_check(&exp.group, &summaries, exp.atom_depth);
    let nonempty = summaries
        .iter()
        .filter(|s| match &s.limit {
            Some(LimitEndEstimate::Free { prefix, .. }) => !prefix.is_empty(),
            Some(LimitEndEstimate::Direction { .. }) => true,
            None => false,
        })
        .count();
    let (drift_text, drift_l1) = match &drift {
        Some(m) => {
            let parts: Vec<String> = m.iter().map(|q| ratio_text(*q)).collect();
            let l1 = m.iter().fold(Rational::from_integer(0), |a, q| a + if *q < Rational::from_integer(0) { -*q } else { *q });
            (Some(format!("({})", parts.join(","))), Some(ratio_text(l1)))
        }
        None => (None, None),
    };

    out.write(
        &Record::new(Kind::Aggregate, header)
            .set("walks", cfg.walks)
            .set("steps", cfg.steps)
            .set("tail_window", cfg.tail_window())
            .float("speed_mean", speed.base_mean)
            .float("speed_stderr", speed.base_stderr)
            .float("lamp_speed_lower", speed.lamp_lower)
            .float("lamp_speed_upper", speed.lamp_upper)
            .set("lamp_exact", speed.lamp_exact)
            .opt("drift", drift_text)
            .opt("drift_l1", drift_l1)
            .set("nonempty_prefixes", nonempty)
            .set("depth", exp.depth)
            .set("decided", harmonic.decided())
            .set("undecided", harmonic.undecided)
            .float("stationarity_max", stationarity.max_discrepancy)
            .float("stationarity_radius", stationarity.confidence_radius)
            .opt("stationarity_cell", stationarity.worst_cell.map(|c| c.to_string()))
            .set("atom_verdict", atoms.verdict.to_string())
            .set("atom_decays", atoms.decays)
            .set("duplicate_pairs", atoms.duplicate_pairs),
    )?;
    for (cell, count) in &harmonic.counts {
        out.write(
            &Record::new(Kind::HarmonicCell, header)
                .set("depth", exp.depth)
                .set("cell", cell.to_string())
                .set("count", *count)
                .float("mass", harmonic.mass(cell)),
        )?;
    }
    for (depth, mass) in (1..).zip(&atoms.max_mass) {
        out.write(&Record::new(Kind::AtomDepth, header).set("depth", depth).float("max_mass", *mass))?;
    }
    Ok(())
}
