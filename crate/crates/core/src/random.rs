//! Seeded generation of rational labels.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rational::Q;

/// Rationals `p/q` with `|p| ≤ 100`, `1 ≤ q ≤ 100`, from a seeded stream.
pub struct LabelGen {
    rng: ChaCha8Rng,
}

impl LabelGen {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rational(&mut self) -> Q {
        let p: i64 = self.rng.gen_range(-100..=100);
        let q: i64 = self.rng.gen_range(1..=100);
        Q::new(BigInt::from(p), BigInt::from(q))
    }

    /// `k` pairwise distinct nonzero rationals.
    pub fn distinct(&mut self, k: usize) -> Vec<Q> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(k);
        while out.len() < k {
            let x = self.rational();
            if x != Q::from_integer(0.into()) && seen.insert(x.clone()) {
                out.push(x);
            }
        }
        out
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_and_distinct() {
        let a = LabelGen::new(7).distinct(6);
        let b = LabelGen::new(7).distinct(6);
        assert_eq!(a, b);
        let set: BTreeSet<_> = a.iter().collect();
        assert_eq!(set.len(), 6);
        for x in &a {
            assert!(x.numer().magnitude() <= &100u32.into() && x.denom() <= &BigInt::from(100));
        }
    }
}
