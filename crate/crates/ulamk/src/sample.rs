//! Seeded random instance generation (Fisher–Yates, ChaCha8 stream), the
//! sampling model behind the statistical self-checks. Deterministic per
//! seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::{Instance, Permutation, PermutationTuple};

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    assert!(n >= 1);
    let mut labels: Vec<u32> = (1..=n as u32).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        labels.swap(i, j);
    }
    Permutation::new(labels).expect("shuffle preserves permutation")
}

pub fn random_tuple<R: Rng>(rng: &mut R, n: usize, k: usize) -> PermutationTuple {
    assert!(k >= 1);
    PermutationTuple::new((0..k).map(|_| random_permutation(rng, n)).collect())
        .expect("tuple dimensions share one n")
}

/// 2k independent uniform permutations: source tuple first, then target.
pub fn random_instance_with<R: Rng>(rng: &mut R, n: usize, k: usize) -> Instance {
    let source = random_tuple(rng, n, k);
    let target = random_tuple(rng, n, k);
    Instance::new(source, target).expect("tuples share shape")
}

pub fn random_instance(n: usize, k: usize, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_instance_with(&mut rng, n, k)
}
