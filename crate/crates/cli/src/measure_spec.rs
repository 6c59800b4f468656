//! Text forms of step measures and lamp configurations.
//!
//! A measure is a preset name or a `;`-separated atom list. An atom is
//! `[sites]pos=weight` or `pos=weight`; weights are integers or `p/q`.
//! A site list is comma-separated and `x^k` lights `x` in state `k`.

use lampwalk::walk::{presets, StepMeasure};
use lampwalk::{BaseGroup, Configuration, LampElement, Rational};

use crate::error::{CliError, CliResult};

pub fn parse(spec: &str, group: &BaseGroup, modulus: u8) -> CliResult<StepMeasure> {
    let s = spec.trim();
    let g = *group;
    let mu = match s {
        "srw" => presets::srw(g, modulus)?,
        "srw+lamp" => presets::srw_lamp(g, modulus)?,
        "ray" => presets::ray(g, modulus)?,
        "ray+lamp" => presets::ray_lamp(g, modulus)?,
        _ if s.starts_with("drift(") => {
            let (inner, lamp) = match s.strip_suffix("+lamp") {
                Some(t) => (t, true),
                None => (s, false),
            };
            let inner = inner
                .strip_prefix("drift(")
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| CliError::Invalid(format!("malformed drift preset {s:?}")))?;
            let m = inner
                .split(',')
                .map(|t| t.trim().parse::<Rational>().map_err(|e| CliError::Invalid(format!("drift {t:?}: {e}"))))
                .collect::<CliResult<Vec<_>>>()?;
            presets::drift(g, modulus, &m, lamp)?
        }
        _ => StepMeasure::new(g, modulus, parse_atoms(s, group, modulus)?)?,
    };
    Ok(mu)
}

fn parse_atoms(s: &str, group: &BaseGroup, modulus: u8) -> CliResult<Vec<(LampElement, Rational)>> {
    let mut atoms = Vec::new();
    for part in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
        let (element, weight) = part
            .rsplit_once('=')
            .ok_or_else(|| CliError::Invalid(format!("atom {part:?} lacks =weight")))?;
        let weight: Rational =
            weight.trim().parse().map_err(|e| CliError::Invalid(format!("weight in {part:?}: {e}")))?;
        let element = element.trim();
        let (config, pos) = match element.strip_prefix('[') {
            Some(rest) => {
                let (sites, pos) = rest
                    .split_once(']')
                    .ok_or_else(|| CliError::Invalid(format!("unclosed [ in {part:?}")))?;
                (parse_config(sites, group, modulus)?, pos)
            }
            None => (Configuration::zero(modulus), element),
        };
        atoms.push((LampElement::new(config, group.parse_element(pos)?)?, weight));
    }
    if atoms.is_empty() {
        return Err(CliError::Invalid(format!("unknown measure {s:?}")));
    }
    Ok(atoms)
}

/// Parses `x, y^k, …` into a configuration.
pub fn parse_config(s: &str, group: &BaseGroup, modulus: u8) -> CliResult<Configuration> {
    let mut sites = Vec::new();
    for token in lampwalk::base_group::notation::split_top_level(s) {
        let (site, state) = match token.rsplit_once('^') {
            Some((x, k)) => (x, k.trim().parse::<i64>().map_err(|e| CliError::Invalid(format!("{token:?}: {e}")))?),
            None => (token, 1),
        };
        sites.push((group.parse_element(site)?, state));
    }
    Ok(Configuration::from_sites(modulus, sites)?)
}
