use std::io::Write;

use lampwalk::base_group::Direction;
use lampwalk::strips::{base_strip, check_equivariance, lifted_strip_count, OmegaPoint, PartitionScheme};
use lampwalk::walk::project_measure;
use lampwalk::{BaseGroup, BoundaryPoint, End, LampElement};
use rand::Rng;

use crate::config::Experiment;
use crate::error::{CliError, CliResult};
use crate::measure_spec::parse_config;
use crate::random;
use crate::record::{float_value, Header, Kind, Record, RecordWriter};

pub const CSV_HEADER: &str = "n,count_base,count_G,log(count_G)/n";

/// Random stream of the equivariance fuzz, apart from the walk streams.
const FUZZ_STREAM: u64 = 0x5717;

fn ends(exp: &Experiment) -> CliResult<(BoundaryPoint, BoundaryPoint)> {
    match exp.group {
        BaseGroup::Free { .. } => {
            let u: End = exp.u.parse()?;
            let v: End = exp.v.parse()?;
            if !u.is_exact() || !v.is_exact() {
                return Err(CliError::Invalid("strip ends must be exact, written prefix.period".into()));
            }
            if u == v {
                return Err(CliError::Invalid(format!("the ends coincide: u = v = {u}")));
            }
            Ok((BoundaryPoint::End(u), BoundaryPoint::End(v)))
        }
        // on a lattice the ends are ±m/|m| for the drift m of the measure
        BaseGroup::Lattice { .. } => {
            let m = project_measure(&exp.measure()?).drift().unwrap_or_default();
            let m: Vec<f64> = m.iter().map(|q| *q.numer() as f64 / *q.denom() as f64).collect();
            let u = Direction::normalize(&m).map_err(|_| CliError::Invalid("lattice strips need a drift".into()))?;
            let v = Direction::normalize(&m.iter().map(|c| -c).collect::<Vec<_>>())?;
            Ok((BoundaryPoint::Direction(u), BoundaryPoint::Direction(v)))
        }
    }
}

pub struct StripSetup {
    pub plus: OmegaPoint,
    pub minus: OmegaPoint,
    pub scheme: PartitionScheme,
}

pub fn setup(exp: &Experiment) -> CliResult<StripSetup> {
    let (u, v) = ends(exp)?;
    let scheme = exp.scheme_for(&exp.measure()?)?;
    let plus = OmegaPoint::new(parse_config(&exp.phi_plus, &exp.group, exp.modulus)?, u)?;
    let minus = OmegaPoint::new(parse_config(&exp.phi_minus, &exp.group, exp.modulus)?, v)?;
    Ok(StripSetup { plus, minus, scheme })
}

pub fn write_curve(exp: &Experiment, s: &StripSetup, out: &mut impl Write) -> CliResult<()> {
    writeln!(out, "{CSV_HEADER}")?;
    let params = exp.metric();
    for n in 0..=exp.max_n {
        let (count_g, count_base) = lifted_strip_count(&s.plus, &s.minus, &s.scheme, n, &params)?;
        let growth = if n > 0 && count_g > 0 {
            float_value((count_g as f64).ln() / f64::from(n)).to_string()
        } else {
            String::new()
        };
        writeln!(out, "{n},{count_base},{count_g},{growth}")?;
    }
    Ok(())
}

/// Random `g = (η, γ)` and strip points `x`, compared on `B(e, radius)`.
pub fn fuzz_equivariance(exp: &Experiment, s: &StripSetup, header: &Header) -> CliResult<Record> {
    let mut rng = random::rng(exp.seed, FUZZ_STREAM);
    let strip = base_strip(&s.plus.end, &s.minus.end)?;
    let candidates = strip.points_within(3)?;
    if candidates.is_empty() {
        return Err(CliError::Invalid("the strip does not meet B(e, 3)".into()));
    }
    let (mut checked, mut strip_bad, mut part_bad, mut lift_bad) = (0usize, 0usize, 0usize, 0u64);
    let mut first_failure = None;
    for trial in 0..exp.trials {
        let g: LampElement = random::lamp_element(&mut rng, &exp.group, exp.modulus, 3, 2);
        let x = &candidates[rng.random_range(0..candidates.len())];
        let report = check_equivariance(&g, &s.plus, &s.minus, x, &s.scheme, &exp.group, exp.radius)?;
        checked += report.checked;
        strip_bad += report.strip_mismatches.len();
        part_bad += report.partition_mismatches.len();
        lift_bad += u64::from(report.lift_mismatch.is_some());
        if first_failure.is_none() && !report.is_ok() {
            first_failure = Some(format!("trial {trial}: g = {g}, x = {x}"));
        }
    }
    Ok(Record::new(Kind::Equivariance, header)
        .set("scheme", s.scheme.to_string())
        .set("trials", exp.trials)
        .set("radius", exp.radius)
        .set("checked", checked)
        .set("strip_mismatches", strip_bad)
        .set("partition_mismatches", part_bad)
        .set("lift_mismatches", lift_bad)
        .opt("first_failure", first_failure))
}

pub fn run<W: Write, R: Write>(
    exp: &Experiment,
    header: &Header,
    csv: &mut W,
    report: &mut RecordWriter<R>,
) -> CliResult<()> {
    let s = setup(exp)?;
    write_curve(exp, &s, csv)?;
    report.write(&fuzz_equivariance(exp, &s, header)?)
}
