//! Step measures, seeded trajectories and parallel batches.
//!
//! A walk is `Z_0 = id`, `Z_t = Z_{t−1} i_t` with `i_t` drawn i.i.d. from a
//! [`StepMeasure`]. Step `t` of walk `j` always consumes the `t`-th draw of
//! the stream keyed by `(seed, j)`, so a batch is reproducible bit for bit
//! whatever the thread count.

mod batch;
mod measure;
pub mod presets;
mod rng;
mod trajectory;

pub use batch::{batch_run, batch_trajectories, summarize, WalkConfig, WalkSummary, LOCAL_RADIUS};
pub use measure::{
    first_moment, project_measure, reflect_measure, GenerationReport, Moments, ProjectedMeasure, StepMeasure,
    GENERATION_DEPTH,
};
pub use rng::WalkRng;
pub use trajectory::{run_walk, LampEvent, Trajectory};
