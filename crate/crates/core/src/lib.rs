//! Lamplighter random walks on wreath products `Z_r ≀ Γ` over free groups
//! and Euclidean lattices.
//!
//! The crate is organised bottom-up:
//!
//! * [`base_group`]: arithmetic, word metric, balls and boundary actions of `F_k` and `Z^d`.
//! * [`lamplighter`]: the wreath-product group law and the travelling-salesman metric `d_G`.
//! * [`walk`]: step measures, seeded trajectories and parallel batches.
//! * [`boundary`]: limit ends, limit configurations, speed and harmonic-measure estimators.
//! * [`strips`]: strips, half-space partitions, Busemann functions and the lifted strip.

pub mod base_group;
pub mod boundary;
pub mod error;
pub mod lamplighter;
pub mod strips;
pub mod walk;

pub use base_group::{BaseElement, BaseGroup, BoundaryPoint, Direction, End, FreeWord, LatticeVector, Letter};
pub use error::{Error, Result};
pub use lamplighter::{Configuration, LampElement, MetricParams};
pub use walk::{StepMeasure, Trajectory, WalkConfig};

/// Exact rational arithmetic for probabilities, costs and distances.
pub type Rational = num_rational::Ratio<i64>;
