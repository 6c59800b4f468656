use crate::error::Result;
use crate::lamplighter::{lamp_distance_bounds, DistanceBounds, LampElement, MetricParams};
use crate::walk::Trajectory;

/// `d(e, X_n)` and certified bounds on `d_G(id, Z_n)` for one walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpeedSample {
    pub steps: u64,
    pub base_distance: u64,
    pub lamp: DistanceBounds,
}

impl SpeedSample {
    pub fn base_speed(&self) -> f64 {
        self.base_distance as f64 / self.steps as f64
    }
}

pub fn speed_sample(traj: &Trajectory, params: &MetricParams) -> Result<SpeedSample> {
    let id = LampElement::identity(&traj.group(), traj.modulus());
    Ok(SpeedSample {
        steps: traj.steps(),
        base_distance: traj.final_position().norm(),
        lamp: lamp_distance_bounds(&id, traj.final_state(), params)?,
    })
}

/// Batch speed: mean and standard error of `d(e, X_n)/n`, and the mean of
/// the certified interval for `d_G(id, Z_n)/n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpeedEstimate {
    pub walks: usize,
    pub base_mean: f64,
    pub base_stderr: f64,
    pub lamp_lower: f64,
    pub lamp_upper: f64,
    /// Every lamp distance was computed exactly.
    pub lamp_exact: bool,
}

pub fn aggregate_speed(samples: &[SpeedSample]) -> SpeedEstimate {
    let n = samples.len();
    let ratio = |r: &crate::Rational, steps: u64| *r.numer() as f64 / *r.denom() as f64 / steps as f64;
    let base: Vec<f64> = samples.iter().map(SpeedSample::base_speed).collect();
    let (base_mean, base_stderr) = mean_stderr(&base);
    let lower: Vec<f64> = samples.iter().map(|s| ratio(&s.lamp.lower, s.steps)).collect();
    let upper: Vec<f64> = samples.iter().map(|s| ratio(&s.lamp.upper, s.steps)).collect();
    SpeedEstimate {
        walks: n,
        base_mean,
        base_stderr,
        lamp_lower: mean_stderr(&lower).0,
        lamp_upper: mean_stderr(&upper).0,
        lamp_exact: samples.iter().all(|s| s.lamp.exact),
    }
}

pub fn speed_estimate(trajs: &[Trajectory], params: &MetricParams) -> Result<SpeedEstimate> {
    let samples = trajs.iter().map(|t| speed_sample(t, params)).collect::<Result<Vec<_>>>()?;
    Ok(aggregate_speed(&samples))
}

/// Sample mean and standard error of the mean; `(NaN, NaN)` when empty.
pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
