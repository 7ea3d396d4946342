//! Deterministic pseudo-random rational samples. Every suite draws from its own fixed seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::CurveInstance;
use crate::exact::{q, Q};

pub const SEED_FAMILY: u64 = 0x5eed_0001;
pub const SEED_PAR: u64 = 0x5eed_0002;
pub const SEED_APP: u64 = 0x5eed_0003;
pub const SEED_DEGEN: u64 = 0x5eed_0004;
pub const SEED_CHART: u64 = 0x5eed_0005;
pub const SEED_SYMPLECTIC: u64 = 0x5eed_0006;
pub const SEED_TORELLI: u64 = 0x5eed_0007;
pub const SEED_ELM: u64 = 0x5eed_0008;
pub const SEED_CONSERVATION: u64 = 0x5eed_0009;

pub struct Sampler {
    rng: ChaCha8Rng,
    height: i64,
    den: i64,
}

impl Sampler {
    /// Rationals n/d with |n| ≤ 9 and 1 ≤ d ≤ 7.
    pub fn new(seed: u64) -> Self {
        Self::with_height(seed, 9, 7)
    }

    pub fn with_height(seed: u64, height: i64, den: i64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), height, den }
    }

    pub fn q(&mut self) -> Q {
        let n = self.rng.gen_range(-self.height..=self.height);
        let d = self.rng.gen_range(1..=self.den);
        q(n, d)
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// A rational outside `avoid`.
    pub fn q_avoiding(&mut self, avoid: &[Q]) -> Q {
        loop {
            let v = self.q();
            if !avoid.contains(&v) {
                return v;
            }
        }
    }

    /// Base point z ∈ U₀ with z₁ ≠ z₂ and z_k ∉ {0, 1, λ, t}.
    pub fn base_point(&mut self, inst: &CurveInstance) -> (Q, Q) {
        let mut avoid = vec![q(0, 1), q(1, 1), inst.lambda.clone(), inst.t.clone()];
        let z1 = self.q_avoiding(&avoid);
        avoid.push(z1.clone());
        (z1, self.q_avoiding(&avoid))
    }

    /// A family sample (z₁, z₂, c₁, c₂).
    pub fn family_point(&mut self, inst: &CurveInstance) -> [Q; 4] {
        let (z1, z2) = self.base_point(inst);
        [z1, z2, self.q(), self.q()]
    }
}
