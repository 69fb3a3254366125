//! Counter-based seed expansion.
//!
//! Every randomized routine draws from a ChaCha stream keyed by the user seed
//! and selected by a counter, so trial `i` sees the same bits no matter which
//! thread runs it or in which order trials are scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator for stream `counter` of `seed`.
pub fn stream(seed: u64, counter: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(counter);
    rng
}
