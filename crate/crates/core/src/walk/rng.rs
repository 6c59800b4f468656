//! Counter-based random streams for walks.
//!
//! Each walk owns a ChaCha8 stream keyed by the master seed and selected by
//! the walk index; step `t` consumes exactly the `t`-th 64-bit word of that
//! stream. A trajectory is therefore a pure function of
//! `(master seed, walk index)` and batches need no shared generator.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn key_from_seed(master_seed: u64) -> [u8; 32] {
    let mut state = master_seed;
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    key
}

/// The random stream of one walk.
#[derive(Clone, Debug)]
pub struct WalkRng(ChaCha8Rng);

impl WalkRng {
    pub fn new(master_seed: u64, walk_index: u64) -> Self {
        let mut rng = ChaCha8Rng::from_seed(key_from_seed(master_seed));
        rng.set_stream(walk_index);
        WalkRng(rng)
    }

    /// The stream positioned so that the next draw is the one for step `step` (1-based).
    pub fn at_step(master_seed: u64, walk_index: u64, step: u64) -> Self {
        let mut rng = Self::new(master_seed, walk_index);
        // word positions count 32-bit words; one step is one u64
        rng.0.set_word_pos(u128::from(step.saturating_sub(1)) * 2);
        rng
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }
}
