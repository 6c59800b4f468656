//! Limit behaviour of lamplighter walks at a finite horizon: stable prefixes
//! and directions, settled lamps, speed, and the empirical harmonic measure.

mod harmonic;
mod limit;
mod speed;
mod witness;

pub use harmonic::{
    atom_check, boundary_cell, cylinders, harmonic_measure_estimate, stationarity_check, AtomReport, AtomVerdict,
    BoundaryCell, EmpiricalBoundaryMeasure, StationarityReport,
};
pub use limit::{
    accumulation_check, default_tail_window, estimate_limit_point, omega_point_estimate, AccumulationReport,
    AccumulationRule, LimitConfigurationEstimate, LimitEndEstimate, OmegaPointEstimate, SiteRecord,
    DEFAULT_HALF_SPACE_OFFSET,
};
pub use speed::{aggregate_speed, mean_stderr, speed_estimate, speed_sample, SpeedEstimate, SpeedSample};
pub use witness::{cp_witness, support_contained};
