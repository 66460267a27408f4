//! Weighted labeled posets `(P, ω, d)`.
//!
//! Elements are indices `0..n`. The order relation is stored as one bitmask
//! per element (the strict up-set and down-set), so `n` is capped at
//! [`MAX_ELEMENTS`]. Labels `ω` are a separate permutation of `1..=n`.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Error;

/// Width of the relation bitmasks.
pub const MAX_ELEMENTS: usize = 32;

/// Set of elements as a bitmask.
pub type ElementSet = u32;

/// Kind of a Hasse edge `a ⋖ b`: strict iff `ω(a) > ω(b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Strict,
    Weak,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledPoset {
    up: Vec<ElementSet>,
    down: Vec<ElementSet>,
    labels: Vec<u32>,
    weights: Vec<u32>,
    covers: Vec<(usize, usize)>,
}

pub(crate) fn bits(mut set: ElementSet) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let i = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(i)
        }
    })
}

pub(crate) fn full_set(n: usize) -> ElementSet {
    if n == MAX_ELEMENTS {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

impl LabeledPoset {
    /// Builds a poset from any generating set of relations `a < b`.
    ///
    /// The relation is transitively closed and the Hasse diagram recomputed,
    /// so redundant pairs are absorbed.
    pub fn from_covers(
        n: usize,
        covers: &[(usize, usize)],
        labels: &[u32],
        weights: &[u32],
    ) -> Result<Self, Error> {
        if n > MAX_ELEMENTS {
            return Err(Error::TooManyElements {
                n,
                max: MAX_ELEMENTS,
            });
        }
        let mut up = alloc::vec![0; n];
        for &(a, b) in covers {
            for e in [a, b] {
                if e >= n {
                    return Err(Error::ElementOutOfRange { element: e, n });
                }
            }
            up[a] |= 1 << b;
        }
        Self::from_up_sets(up, labels.to_vec(), weights.to_vec())
    }

    /// Builds a poset from per-element up-sets (not necessarily closed).
    pub fn from_up_sets(
        mut up: Vec<ElementSet>,
        labels: Vec<u32>,
        weights: Vec<u32>,
    ) -> Result<Self, Error> {
        let n = up.len();
        if n > MAX_ELEMENTS {
            return Err(Error::TooManyElements {
                n,
                max: MAX_ELEMENTS,
            });
        }
        if labels.len() != n {
            return Err(Error::LengthMismatch {
                what: "labels",
                expected: n,
                got: labels.len(),
            });
        }
        if weights.len() != n {
            return Err(Error::LengthMismatch {
                what: "weights",
                expected: n,
                got: weights.len(),
            });
        }
        let mut seen = 0u64;
        for &l in &labels {
            if l == 0 || l as usize > n || seen >> l & 1 == 1 {
                return Err(Error::InvalidLabels { n });
            }
            seen |= 1 << l;
        }
        if let Some(element) = weights.iter().position(|&w| w == 0) {
            return Err(Error::NonPositiveWeight { element });
        }
        if up.iter().any(|&s| s & !full_set(n) != 0) {
            return Err(Error::ElementOutOfRange { element: n, n });
        }
        // Warshall closure
        for k in 0..n {
            for i in 0..n {
                if up[i] >> k & 1 == 1 {
                    up[i] |= up[k];
                }
            }
        }
        if (0..n).any(|i| up[i] >> i & 1 == 1) {
            return Err(Error::Cycle);
        }
        let mut down = alloc::vec![0; n];
        for (a, &s) in up.iter().enumerate() {
            for b in bits(s) {
                down[b] |= 1 << a;
            }
        }
        let mut covers = Vec::new();
        for (a, &s) in up.iter().enumerate() {
            for b in bits(s) {
                if s & down[b] == 0 {
                    covers.push((a, b));
                }
            }
        }
        Ok(LabeledPoset {
            up,
            down,
            labels,
            weights,
            covers,
        })
    }

    /// The `n`-element chain `0 < 1 < … < n-1` with the given labels and
    /// weights (listed bottom to top).
    pub fn chain(labels: &[u32], weights: &[u32]) -> Result<Self, Error> {
        let n = labels.len();
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_covers(n, &covers, labels, weights)
    }

    /// The `n`-element antichain with labels `1..=n` in index order.
    pub fn antichain(weights: &[u32]) -> Result<Self, Error> {
        let labels: Vec<u32> = (1..=weights.len() as u32).collect();
        Self::from_covers(weights.len(), &[], &labels, weights)
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> u32 {
        self.labels[a]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, a: usize) -> u32 {
        self.weights[a]
    }

    pub fn total_weight(&self) -> u32 {
        self.weights.iter().sum()
    }

    /// `a <_P b`.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.up[a] >> b & 1 == 1
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.less(a, b) || self.less(b, a)
    }

    pub fn up_set(&self, a: usize) -> ElementSet {
        self.up[a]
    }

    pub fn down_set(&self, a: usize) -> ElementSet {
        self.down[a]
    }

    pub(crate) fn up_sets(&self) -> &[ElementSet] {
        &self.up
    }

    /// Hasse edges `(a, b)` with `a ⋖ b`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn edge_kind(&self, a: usize, b: usize) -> EdgeKind {
        if self.labels[a] > self.labels[b] {
            EdgeKind::Strict
        } else {
            EdgeKind::Weak
        }
    }

    pub fn hasse_edges(&self) -> impl Iterator<Item = (usize, usize, EdgeKind)> + '_ {
        self.covers
            .iter()
            .map(|&(a, b)| (a, b, self.edge_kind(a, b)))
    }

    pub fn strict_edge_count(&self) -> usize {
        self.hasse_edges()
            .filter(|e| e.2 == EdgeKind::Strict)
            .count()
    }

    pub fn is_naturally_labeled(&self) -> bool {
        self.hasse_edges().all(|e| e.2 == EdgeKind::Weak)
    }

    /// Element carrying label `l`.
    pub fn element_with_label(&self, l: u32) -> Option<usize> {
        self.labels.iter().position(|&x| x == l)
    }

    /// Number of unordered incomparable pairs.
    pub fn incomparable_pairs(&self) -> usize {
        let n = self.len();
        (0..n)
            .map(|a| (a + 1..n).filter(|&b| !self.comparable(a, b)).count())
            .sum()
    }

    pub fn is_chain(&self) -> bool {
        self.incomparable_pairs() == 0
    }

    /// A linear extension: repeatedly takes the smallest-index minimal
    /// element.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut placed: ElementSet = 0;
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let next = (0..n)
                .find(|&a| placed >> a & 1 == 0 && self.down[a] & !placed == 0)
                .expect("acyclic");
            placed |= 1 << next;
            order.push(next);
        }
        order
    }

    /// Same order and weights, labels replaced by positions in a linear
    /// extension. The result has no strict edges.
    pub fn natural_relabeling(&self) -> LabeledPoset {
        let mut labels = alloc::vec![0; self.len()];
        for (pos, a) in self.linear_extension().into_iter().enumerate() {
            labels[a] = pos as u32 + 1;
        }
        self.with_labels(labels).expect("permutation")
    }

    pub fn with_labels(&self, labels: Vec<u32>) -> Result<LabeledPoset, Error> {
        Self::from_up_sets(self.up.clone(), labels, self.weights.clone())
    }

    pub fn with_weights(&self, weights: Vec<u32>) -> Result<LabeledPoset, Error> {
        Self::from_up_sets(self.up.clone(), self.labels.clone(), weights)
    }

    /// Restriction to `subset`.
    ///
    /// Elements of the result are the members of `subset` in increasing index
    /// order. Labels keep their relative order and are standardized to
    /// `1..=k`, which preserves every strict/weak comparison.
    pub fn induced_subposet(&self, subset: ElementSet) -> Result<LabeledPoset, Error> {
        let subset = subset & full_set(self.len());
        if subset == 0 {
            return Err(Error::EmptySubset);
        }
        let members: Vec<usize> = bits(subset).collect();
        let compress = |s: ElementSet| -> ElementSet {
            members
                .iter()
                .enumerate()
                .filter(|&(_, &m)| s >> m & 1 == 1)
                .fold(0, |acc, (i, _)| acc | 1 << i)
        };
        let up = members.iter().map(|&m| compress(self.up[m])).collect();
        let labels = standardize(members.iter().map(|&m| self.labels[m]));
        let weights = members.iter().map(|&m| self.weights[m]).collect();
        Self::from_up_sets(up, labels, weights)
    }

    /// Generates a random poset on `n` elements: a random DAG along a random
    /// ordering of the elements, each forward pair related with probability
    /// `density = numerator / denominator`, closed transitively. Labels are a
    /// random permutation and weights are uniform in `{1, 2, 3}`.
    pub fn random(n: usize, density: (u32, u32), seed: u64) -> LabeledPoset {
        assert!(
            (1..=MAX_ELEMENTS).contains(&n),
            "random poset size out of range"
        );
        assert!(
            density.1 > 0 && density.0 <= density.1,
            "density must lie in [0, 1]"
        );
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let mut up = alloc::vec![0; n];
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_ratio(density.0, density.1) {
                    up[order[i]] |= 1 << order[j];
                }
            }
        }
        let mut labels: Vec<u32> = (1..=n as u32).collect();
        labels.shuffle(&mut rng);
        let weights = (0..n).map(|_| rng.gen_range(1..=3)).collect();
        Self::from_up_sets(up, labels, weights).expect("forward edges are acyclic")
    }
}

/// Replaces distinct values by their ranks `1..=k`.
pub(crate) fn standardize(values: impl Iterator<Item = u32>) -> Vec<u32> {
    let values: Vec<u32> = values.collect();
    let mut sorted = values.clone();
    sorted.sort_unstable();
    values
        .iter()
        .map(|v| sorted.binary_search(v).unwrap() as u32 + 1)
        .collect()
}

/// The six-element weighted strip used as the running example: labels
/// `6,5,1,2,3,4` on elements `0..6`, Hasse edges `6⋖5`, `5⋖1`, `1⋖2`, `1⋖3`,
/// `3⋖4` (by label) and weights `1,2,1,2,1,1`.
pub fn example_strip() -> LabeledPoset {
    LabeledPoset::from_covers(
        6,
        &[(0, 1), (1, 2), (2, 3), (2, 4), (4, 5)],
        &[6, 5, 1, 2, 3, 4],
        &[1, 2, 1, 2, 1, 1],
    )
    .unwrap()
}

/// The four-element poset whose `ψ̂_(2,2)` coefficient cancels: labels
/// `4,3,1,2`, with `4 ⋖ 3`, `4 ⋖ 1`, `3 ⋖ 2` strict and `1 ⋖ 2` weak; unit
/// weights.
pub fn example_cancellation() -> LabeledPoset {
    LabeledPoset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)], &[4, 3, 1, 2], &[1; 4]).unwrap()
}
