#![allow(dead_code)]

use proptest::prelude::*;
use qmn_core::LabeledPoset;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DENSITIES: [(u32, u32); 4] = [(1, 5), (1, 3), (1, 2), (3, 4)];

/// Seeded random weighted labeled poset with `1..=max_n` elements and total
/// weight at most `max_weight`.
pub fn poset(max_n: usize, max_weight: u32) -> impl Strategy<Value = LabeledPoset> {
    (1..=max_n, 0..DENSITIES.len(), any::<u64>()).prop_map(move |(n, d, seed)| {
        let p = LabeledPoset::random(n, DENSITIES[d], seed);
        cap_weights(&p, max_weight)
    })
}

pub fn natural_poset(max_n: usize, max_weight: u32) -> impl Strategy<Value = LabeledPoset> {
    poset(max_n, max_weight).prop_map(|p| p.natural_relabeling())
}

pub fn cap_weights(p: &LabeledPoset, max_weight: u32) -> LabeledPoset {
    let mut w = p.weights().to_vec();
    while w.iter().sum::<u32>() > max_weight {
        let i = (0..w.len()).max_by_key(|&i| w[i]).unwrap();
        w[i] -= 1;
    }
    p.with_weights(w).unwrap()
}

/// A natural labeling read off a uniformly shuffled linear extension.
pub fn random_natural_labels(p: &LabeledPoset, seed: u64) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = p.len();
    let mut placed = vec![false; n];
    let mut labels = vec![0u32; n];
    for next in 1..=n as u32 {
        let ready: Vec<usize> = (0..n)
            .filter(|&a| !placed[a] && (0..n).all(|b| !p.less(b, a) || placed[b]))
            .collect();
        let a = ready[rng.gen_range(0..ready.len())];
        placed[a] = true;
        labels[a] = next;
    }
    labels
}
