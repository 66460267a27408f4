//! Integer compositions and partitions, the refinement order, and the scalars
//! `z_α` and `π(α, β)` used for basis changes.

use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::Error;

/// An ordered list of positive parts.
///
/// Compositions order by weight first, then lexicographically on parts. Every
/// composition-keyed map in the crate iterates in this order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self, Error> {
        if parts.is_empty() {
            return Err(Error::EmptyComposition);
        }
        if parts.contains(&0) {
            return Err(Error::ZeroPart);
        }
        Ok(Composition(parts))
    }

    /// The one-part composition `(n)`.
    pub fn single(n: u32) -> Result<Self, Error> {
        Self::new(alloc::vec![n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Running sums `α₁, α₁+α₂, …`.
    pub fn prefix_sums(&self) -> Vec<u32> {
        self.0
            .iter()
            .scan(0, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
            .collect()
    }

    /// The underlying partition (parts sorted decreasingly).
    pub fn sorted(&self) -> Partition {
        let mut parts = self.0.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// All compositions obtained by summing runs of consecutive parts,
    /// in canonical order. There are `2^(len-1)` of them.
    pub fn coarsenings(&self) -> Vec<Composition> {
        let gaps = self.0.len() - 1;
        let mut out: Vec<Composition> = (0u64..1 << gaps)
            .map(|cut| {
                // bit i set: keep the boundary between part i and part i+1
                let mut parts = Vec::with_capacity(gaps + 1);
                let mut run = self.0[0];
                for i in 0..gaps {
                    if cut >> i & 1 == 1 {
                        parts.push(run);
                        run = 0;
                    }
                    run += self.0[i + 1];
                }
                parts.push(run);
                Composition(parts)
            })
            .collect();
        out.sort();
        out
    }

    /// Groups the parts of `self` into the consecutive runs summing to the
    /// parts of `beta`. `None` if `self` does not refine `beta`.
    pub fn blocks_within<'a>(&'a self, beta: &Composition) -> Option<Vec<&'a [u32]>> {
        let mut blocks = Vec::with_capacity(beta.len());
        let mut start = 0;
        for &target in &beta.0 {
            let mut sum = 0;
            let mut end = start;
            while sum < target && end < self.0.len() {
                sum += self.0[end];
                end += 1;
            }
            if sum != target {
                return None;
            }
            blocks.push(&self.0[start..end]);
            start = end;
        }
        (start == self.0.len()).then_some(blocks)
    }

    /// `z_α = Π i^{m_i} m_i!` where `m_i` counts parts equal to `i`.
    pub fn z(&self) -> BigUint {
        let mut parts = self.0.clone();
        parts.sort_unstable();
        let mut z = BigUint::one();
        let mut run = 0u32;
        for (i, &p) in parts.iter().enumerate() {
            run = if i > 0 && parts[i - 1] == p {
                run + 1
            } else {
                1
            };
            z *= BigUint::from(p) * BigUint::from(run);
        }
        z
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn write_parts(f: &mut fmt::Formatter<'_>, parts: &[u32]) -> fmt::Result {
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{p}")?;
    }
    Ok(())
}

fn parse_parts(s: &str) -> Result<Vec<u32>, Error> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(s.to_string()))
        })
        .collect()
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.0)
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Composition::new(parse_parts(s)?)
    }
}

/// True iff `beta` is obtained from `alpha` by merging consecutive parts.
pub fn is_refinement(alpha: &Composition, beta: &Composition) -> bool {
    alpha.blocks_within(beta).is_some()
}

/// `π(α, β)`: for each part of `β`, the product of the running sums of the
/// parts of `α` that merge into it.
pub fn pi(alpha: &Composition, beta: &Composition) -> Result<BigUint, Error> {
    let blocks = alpha
        .blocks_within(beta)
        .ok_or_else(|| Error::NotRefinement {
            alpha: alpha.to_string(),
            beta: beta.to_string(),
        })?;
    let mut out = BigUint::one();
    for block in blocks {
        let mut run = 0u32;
        for &p in block {
            run += p;
            out *= run;
        }
    }
    Ok(out)
}

/// All compositions of `n`, in canonical order. Empty for `n == 0`.
pub fn compositions_of(n: u32) -> Vec<Composition> {
    if n == 0 {
        return Vec::new();
    }
    Composition(alloc::vec![1; n as usize]).coarsenings()
}

/// All compositions of `n` with exactly `len` parts.
pub fn compositions_with_len(n: u32, len: usize) -> Vec<Composition> {
    compositions_of(n)
        .into_iter()
        .filter(|c| c.len() == len)
        .collect()
}

/// A weakly decreasing list of positive parts. May be empty (the empty
/// partition, used as the inner shape of a straight diagram).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, Error> {
        if parts.contains(&0) {
            return Err(Error::ZeroPart);
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing);
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// The partition read as a composition. `None` for the empty partition.
    pub fn as_composition(&self) -> Option<Composition> {
        Composition::new(self.0.clone()).ok()
    }

    /// `z_μ`, the centralizer order of the cycle type `μ`.
    pub fn z(&self) -> BigUint {
        match self.as_composition() {
            Some(c) => c.z(),
            None => BigUint::one(),
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.0)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Partition::new(parse_parts(s)?)
    }
}

/// All distinct orderings of the parts of `mu`, in canonical order.
pub fn rearrangements(mu: &Partition) -> Vec<Composition> {
    if mu.is_empty() {
        return Vec::new();
    }
    let mut parts = mu.0.clone();
    parts.sort_unstable();
    let mut out = Vec::new();
    // lexicographic next-permutation walk visits each multiset ordering once
    loop {
        out.push(Composition(parts.clone()));
        let Some(i) = (0..parts.len() - 1)
            .rev()
            .find(|&i| parts[i] < parts[i + 1])
        else {
            break;
        };
        let j = (i + 1..parts.len())
            .rev()
            .find(|&j| parts[j] > parts[i])
            .unwrap();
        parts.swap(i, j);
        parts[i + 1..].reverse();
    }
    out
}

/// All partitions of `n` in reverse lexicographic order (`(n)` first).
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Set of all compositions reachable from `alpha` by coarsening.
pub fn coarsening_set(alpha: &Composition) -> BTreeSet<Composition> {
    alpha.coarsenings().into_iter().collect()
}
