use rayon::prelude::*;

use super::measure::StepMeasure;
use super::trajectory::{run_walk, Trajectory};
use crate::base_group::BaseElement;
use crate::boundary::{
    default_tail_window, estimate_limit_point, speed_sample, LimitConfigurationEstimate, LimitEndEstimate, SpeedSample,
};
use crate::error::{Error, Result};
use crate::lamplighter::{Configuration, MetricParams};

/// Settled lamps within this radius of `e` are kept in each summary.
pub const LOCAL_RADIUS: u64 = 3;

/// Batch parameters. The group and lamp modulus come from the step measure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkConfig {
    /// Walk length `n ≥ 1`.
    pub steps: u64,
    /// Number of walks `N ≥ 1`.
    pub walks: u64,
    pub seed: u64,
    /// Window for stable prefixes and settled lamps; `None` means `n/10`.
    pub tail_window: Option<u64>,
    pub metric: MetricParams,
}

impl WalkConfig {
    pub fn new(steps: u64, walks: u64, seed: u64) -> Result<Self> {
        if steps == 0 || walks == 0 {
            return Err(Error::InvalidArgument("walk length and walk count must be at least 1".into()));
        }
        Ok(WalkConfig { steps, walks, seed, tail_window: None, metric: MetricParams::default() })
    }

    pub fn tail_window(&self) -> u64 {
        self.tail_window.unwrap_or_else(|| default_tail_window(self.steps))
    }
}

/// The per-walk record produced by [`batch_run`].
#[derive(Clone, Debug, PartialEq)]
pub struct WalkSummary {
    pub walk_index: u64,
    pub final_position: BaseElement,
    /// `|supp(η_n)|`.
    pub support_size: usize,
    /// `None` when the walk is too short for the window or ends at the lattice origin.
    pub limit: Option<LimitEndEstimate>,
    pub speed: SpeedSample,
    /// Settled lamps within `B(e, LOCAL_RADIUS)`.
    pub settled_local: Configuration,
    pub unsettled: usize,
}

pub fn summarize(traj: &Trajectory, cfg: &WalkConfig) -> Result<WalkSummary> {
    let window = cfg.tail_window();
    let limit = match estimate_limit_point(traj, window) {
        Ok(est) => Some(est),
        Err(Error::NoDirection | Error::TrajectoryTooShort { .. }) => None,
        Err(e) => return Err(e),
    };
    let config = LimitConfigurationEstimate::from_trajectory(traj, window);
    let settled_local = config.settled_config().restrict(|s| s.norm() <= LOCAL_RADIUS);
    Ok(WalkSummary {
        walk_index: traj.walk_index,
        final_position: traj.final_position().clone(),
        support_size: traj.final_config().len(),
        limit,
        speed: speed_sample(traj, &cfg.metric)?,
        settled_local,
        unsettled: config.unsettled_count(),
    })
}

/// Runs walks `0..N` in parallel; results are in walk-index order and do
/// not depend on the number of threads.
pub fn batch_run(mu: &StepMeasure, cfg: &WalkConfig) -> Result<Vec<WalkSummary>> {
    (0..cfg.walks)
        .into_par_iter()
        .map(|i| summarize(&run_walk(mu, cfg.steps, cfg.seed, i), cfg))
        .collect()
}

/// Full trajectories for walks `0..N`, in walk-index order.
pub fn batch_trajectories(mu: &StepMeasure, cfg: &WalkConfig) -> Vec<Trajectory> {
    (0..cfg.walks).into_par_iter().map(|i| run_walk(mu, cfg.steps, cfg.seed, i)).collect()
}
