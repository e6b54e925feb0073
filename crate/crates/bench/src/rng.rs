//! Seeded per-trial random streams.
//!
//! Trial `i` of a run seeded with `s` always draws from ChaCha8 stream `i`
//! under key `s`, so results do not depend on how trials are scheduled
//! across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ccd_core::Vec3;

pub type TrialRng = ChaCha8Rng;

pub fn trial_rng(seed: u64, trial: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Uniform on the open box `(lo, hi)` componentwise.
pub fn uniform_vec(rng: &mut impl Rng, lo: Vec3, hi: Vec3) -> Vec3 {
    Vec3::new(
        rng.gen_range(lo.x..hi.x),
        rng.gen_range(lo.y..hi.y),
        rng.gen_range(lo.z..hi.z),
    )
}

/// Uniform on `(-half, half)` on every axis.
pub fn uniform_cube(rng: &mut impl Rng, half: f64) -> Vec3 {
    uniform_vec(rng, Vec3::splat(-half), Vec3::splat(half))
}
