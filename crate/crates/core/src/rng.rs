//! Deterministic random substreams.
//!
//! Every random decision in a simulated run is drawn from a stream keyed by
//! `(master seed, trial, role, user)`. Keys are mixed with splitmix64 so that
//! parallel schedules reproduce the sequential output exactly.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Which protocol step a stream belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u64)]
pub enum Role {
    Graph = 1,
    HashCoefficients = 2,
    DegreeSharing = 3,
    GroupRr = 4,
    CentralSampling = 5,
    FinalNoise = 6,
    BaselineRr = 7,
    BaselineSampling = 8,
    Subsample = 9,
    Test = 10,
}

#[inline]
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[inline]
fn mix(acc: u64, word: u64) -> u64 {
    splitmix64(acc ^ splitmix64(word))
}

/// Seed material for one trial. Cheap to copy; derives per-user streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Streams {
    key: u64,
}

impl Streams {
    pub fn new(master_seed: u64) -> Self {
        Streams {
            key: splitmix64(master_seed),
        }
    }

    /// Streams for trial `t` of an experiment.
    pub fn trial(&self, t: u64) -> Self {
        Streams {
            key: mix(self.key, t.wrapping_add(0x5452_4941_4c00_0000)),
        }
    }

    pub fn key(&self) -> u64 {
        self.key
    }

    /// A 64-bit seed for `(role, index)`.
    pub fn seed(&self, role: Role, index: u64) -> u64 {
        mix(mix(self.key, role as u64), index)
    }

    pub fn rng(&self, role: Role, index: u64) -> StreamRng {
        StreamRng::seed_from_u64(self.seed(role, index))
    }

    /// Counter-based uniform draw in `[0, 1)` for a keyed event. Used where a
    /// fresh stream per event would be too expensive (central server sampling).
    pub fn uniform(&self, role: Role, a: u64, b: u64, c: u64) -> f64 {
        self.keyed(role).uniform(a, b, c)
    }

    pub fn keyed(&self, role: Role) -> KeyedUniform {
        KeyedUniform(self.seed(role, 0))
    }
}

/// Stateless uniform draws indexed by a triple of counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KeyedUniform(u64);

impl KeyedUniform {
    #[inline]
    pub fn uniform(&self, a: u64, b: u64, c: u64) -> f64 {
        let h = mix(mix(mix(self.0, a), b), c);
        (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
