use super::tour::{tour_bounds, tour_length, DEFAULT_EXACT_TSP_MAX};
use super::LampElement;
use crate::error::{Error, Result};
use crate::Rational;

/// Parameters of the lamplighter metric `d_G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricParams {
    /// Cost of one lamp generator step, `c > 0`.
    pub c: Rational,
    /// Largest site count handed to the exact Held–Karp solver.
    pub exact_tsp_max_lamps: usize,
}

impl Default for MetricParams {
    fn default() -> Self {
        MetricParams { c: Rational::from_integer(1), exact_tsp_max_lamps: DEFAULT_EXACT_TSP_MAX }
    }
}

impl MetricParams {
    pub fn new(c: Rational) -> Result<Self> {
        if c <= Rational::from_integer(0) {
            return Err(Error::InvalidArgument(format!("lamp cost c must be positive, got {c}")));
        }
        Ok(MetricParams { c, ..Default::default() })
    }
}

/// Certified bounds on `d_G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DistanceBounds {
    pub lower: Rational,
    pub upper: Rational,
    pub exact: bool,
}

/// `d_G((η, x), (η′, x′)) = l(x, x′) + c·|η △ η′|`, where `l` is the shortest
/// tour from `x` to `x′` through the sites where the configurations differ.
pub fn lamp_distance(g: &LampElement, h: &LampElement, params: &MetricParams) -> Result<Rational> {
    g.pos.check_compatible(&h.pos)?;
    let sites = g.config.differing_sites(&h.config)?;
    let tour = tour_length(&g.pos, &h.pos, &sites, params.exact_tsp_max_lamps)?;
    Ok(Rational::from_integer(tour as i64) + params.c * Rational::from_integer(sites.len() as i64))
}

/// Like [`lamp_distance`], but falls back to certified tour bounds instead of
/// failing when the exact solver does not apply.
pub fn lamp_distance_bounds(g: &LampElement, h: &LampElement, params: &MetricParams) -> Result<DistanceBounds> {
    g.pos.check_compatible(&h.pos)?;
    let sites = g.config.differing_sites(&h.config)?;
    let tour = tour_bounds(&g.pos, &h.pos, &sites, params.exact_tsp_max_lamps)?;
    let toggles = params.c * Rational::from_integer(sites.len() as i64);
    Ok(DistanceBounds {
        lower: Rational::from_integer(tour.lower as i64) + toggles,
        upper: Rational::from_integer(tour.upper as i64) + toggles,
        exact: tour.exact,
    })
}
