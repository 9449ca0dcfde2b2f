//! Seeded, splittable randomness.
//!
//! Every protocol session draws from its own ChaCha8 stream derived from
//! `(seed, session index)`, so results do not depend on how sessions are
//! scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SessionRng = ChaCha8Rng;

/// Stream for session `index` under the run-level `seed`.
pub fn session_rng(seed: u64, index: u64) -> SessionRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
