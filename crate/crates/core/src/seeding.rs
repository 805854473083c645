//! Deterministic seed derivation for parallel and per-task randomness.
//!
//! Every randomized component takes an explicit 64-bit seed.  When work fans
//! out (search workers, per-weight chops), each task derives its own seed
//! from the run seed and a stable task salt, so results do not depend on
//! scheduling or worker count.

/// Mixes a run seed with a task salt into an independent stream seed
/// (splitmix64-style finalizer; avalanches all bits).
pub fn mix_seed(seed: u64, salt: u64) -> u64 {
    let mut z = (seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stable salt for a textual task name (FNV-1a).
pub fn salt_from_str(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    h
}
