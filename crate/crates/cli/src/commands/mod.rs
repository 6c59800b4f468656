pub mod metric;
pub mod simulate;
pub mod strip;
pub mod verify;
