//! Strips and half-spaces.
//!
//! For two boundary points `𝔲 ≠ 𝔳` the base strip `𝔰(𝔲, 𝔳)` is the geodesic
//! joining them (free groups) or the whole lattice. Each strip point `x`
//! splits `Γ` into half-spaces `Γ₊ ∋ 𝔲`, `Γ₋ ∋ 𝔳`; gluing two lamp
//! configurations along that split gives the lifted strip
//! `S(b₊, b₋) = {(Φ(b₊, b₋, x), x)}` in the lamplighter group.

mod lift;
mod partition;
mod strip;

pub use lift::{check_equivariance, lifted_strip_count, lifted_strip_element, EquivarianceReport, OmegaPoint};
pub use partition::{busemann, glue_configuration, half_space_partition, HalfSpacePartition, PartitionScheme, Side};
pub use strip::{base_strip, strip_ball_count, BaseStrip};
