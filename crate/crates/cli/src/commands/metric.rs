use std::io::Write;

use lampwalk::lamplighter::{bfs_distance_oracle, held_karp, lamp_distance, BFS_MAX_RADIUS};
use lampwalk::{LampElement, Rational};

use crate::config::Experiment;
use crate::error::{CliError, CliResult};
use crate::measure_spec::parse_config;
use crate::record::{Header, Kind, Record, RecordWriter};

pub fn run<W: Write>(exp: &Experiment, header: &Header, out: &mut RecordWriter<W>) -> CliResult<()> {
    let config = parse_config(&exp.lamps, &exp.group, exp.modulus)?;
    let target = LampElement::new(config, exp.group.parse_element(&exp.pos)?)?;
    let id = LampElement::identity(&exp.group, exp.modulus);
    let params = exp.metric();
    let distance = lamp_distance(&id, &target, &params)?;
    let sites: Vec<_> = target.config.support().cloned().collect();
    let toggles = params.c * Rational::from_integer(sites.len() as i64);
    let tour = distance - toggles;
    // the tree formula gives lengths beyond the solver cap, but no order
    let order = match held_karp(&id.pos, &target.pos, &sites, params.exact_tsp_max_lamps) {
        Ok(plan) => {
            let mut sorted = sites.clone();
            sorted.sort();
            let names: Vec<String> = plan.order.iter().map(|&i| sorted[i].to_string()).collect();
            Some(names.join(" "))
        }
        Err(_) => None,
    };

    let bfs = if exp.bfs_check {
        if params.c != Rational::from_integer(1) {
            return Err(CliError::Invalid("the breadth-first cross-check needs cost 1".into()));
        }
        let radius = distance.to_integer();
        if radius > i64::from(BFS_MAX_RADIUS) {
            return Err(CliError::Cap(format!("BFS radius {radius} exceeds {BFS_MAX_RADIUS}")));
        }
        Some(bfs_distance_oracle(&exp.group, &target, radius as u32)?)
    } else {
        None
    };

    out.write(
        &Record::new(Kind::Metric, header)
            .set("lamps", exp.lamps.clone())
            .set("pos", exp.pos.clone())
            .ratio("distance", distance)
            .ratio("tour_length", tour)
            .set("toggles", sites.len())
            .opt("tour_order", order)
            .set("exact", true)
            .opt("bfs_distance", bfs),
    )?;
    if let Some(b) = bfs {
        if Rational::from_integer(i64::from(b)) != distance {
            return Err(CliError::Invariant(format!("d_G = {distance} but breadth-first search gives {b}")));
        }
    }
    Ok(())
}
