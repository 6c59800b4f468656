//! The wreath product `G = Z_r ≀ Γ` and its travelling-salesman word metric.

mod bfs;
mod config;
mod element;
mod metric;
pub mod tour;

pub use bfs::{bfs_ball, bfs_distance_oracle, BFS_MAX_RADIUS};
pub use config::Configuration;
pub use element::{lamp_inverse, lamp_multiply, LampElement};
pub use metric::{lamp_distance, lamp_distance_bounds, DistanceBounds, MetricParams};
pub use tour::{held_karp, tour_bounds, tour_length, tree_tour_length, TourBounds, TourPlan};

use crate::base_group::BaseElement;
use crate::error::Result;

/// `T_x η`.
pub fn translate(x: &BaseElement, eta: &Configuration) -> Result<Configuration> {
    eta.translate(x)
}
