//! Identities behind the naturally labeled weighted chain: the coarsening
//! sum
//!
//! ```text
//! Σ_{α ≥ d} Π_j d_{i_j} / (α₁ + … + α_j) = 1,
//! ```
//!
//! its `q`-analog, the staircase sampling model that realizes each term as a
//! probability, β-trees with their hook products, and the resulting
//! linear-extension identity `Σ_β |LinExt(β, d)| · Π_j d_{i_j} = (Σ d)!`.
//!
//! Two kinds of composition appear here and are kept apart by name: `d` is
//! the weight composition of the chain, `beta` is a composition of `len(d)`
//! choosing how consecutive weights are grouped, and `alpha` is the resulting
//! coarsening of `d`.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::compositions::{compositions_of, Composition};
use crate::{Error, Rational};

/// Block start indices (1-based, `i₁ = 1`) and leading weights
/// `d_{i₁}, …, d_{i_k}` of the coarsening `alpha` of `d`.
pub fn coarsening_data(
    d: &Composition,
    alpha: &Composition,
) -> Result<(Vec<usize>, Vec<u32>), Error> {
    let blocks = d.blocks_within(alpha).ok_or_else(|| Error::NotCoarsening {
        alpha: alpha.to_string(),
        d: d.to_string(),
    })?;
    let mut starts = Vec::with_capacity(blocks.len());
    let mut leads = Vec::with_capacity(blocks.len());
    let mut pos = 1;
    for b in blocks {
        starts.push(pos);
        leads.push(b[0]);
        pos += b.len();
    }
    Ok((starts, leads))
}

/// The coarsening of `d` that merges consecutive runs of lengths `beta`.
pub fn alpha_from_beta(d: &Composition, beta: &Composition) -> Result<Composition, Error> {
    if beta.weight() as usize != d.len() {
        return Err(Error::SizeMismatch {
            left: beta.weight(),
            right: d.len() as u32,
        });
    }
    let mut parts = Vec::with_capacity(beta.len());
    let mut pos = 0;
    for &b in beta.parts() {
        parts.push(d.parts()[pos..pos + b as usize].iter().sum());
        pos += b as usize;
    }
    Composition::new(parts)
}

/// `Π_j d_{i_j} / (α₁ + … + α_j)` for each coarsening `α` of `d`.
pub fn probabilistic_terms(d: &Composition) -> Vec<(Composition, Rational)> {
    d.coarsenings()
        .into_iter()
        .map(|alpha| {
            let (_, leads) = coarsening_data(d, &alpha).unwrap();
            let term = leads
                .iter()
                .zip(alpha.prefix_sums())
                .fold(Rational::one(), |acc, (&lead, s)| {
                    acc * Rational::new(lead.into(), s.into())
                });
            (alpha, term)
        })
        .collect()
}

/// The coarsening sum, computed term by term.
pub fn probabilistic_sum(d: &Composition) -> Rational {
    probabilistic_terms(d).into_iter().map(|(_, t)| t).sum()
}

/// Dense integer polynomial in `q`, index = exponent, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QPolynomial {
    coeffs: Vec<BigInt>,
}

impl QPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        QPolynomial::default()
    }

    pub fn one() -> Self {
        QPolynomial::new(alloc::vec![BigInt::one()])
    }

    /// `q^k`.
    pub fn monomial(k: u32) -> Self {
        let mut c = alloc::vec![BigInt::zero(); k as usize + 1];
        c[k as usize] = BigInt::one();
        QPolynomial::new(c)
    }

    /// `[m]_q = 1 + q + … + q^{m−1}`.
    pub fn q_integer(m: u32) -> Self {
        QPolynomial::new(alloc::vec![BigInt::one(); m as usize])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, q: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| {
            acc * q + Rational::from_integer(c.clone())
        })
    }

    /// Exact quotient, if `divisor` divides `self` over the integers.
    pub fn div_exact(&self, divisor: &QPolynomial) -> Option<QPolynomial> {
        let dd = divisor.degree()?;
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return self.is_zero().then(QPolynomial::zero);
        }
        let mut quot = alloc::vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dd];
            if (top % lead) != BigInt::zero() {
                return None;
            }
            let f = top / lead;
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &f * c;
            }
            quot[i] = f;
        }
        rem.iter()
            .all(Zero::is_zero)
            .then(|| QPolynomial::new(quot))
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;

    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |v: &[BigInt], i: usize| v.get(i).cloned().unwrap_or_default();
        QPolynomial::new(
            (0..n)
                .map(|i| get(&self.coeffs, i) + get(&rhs.coeffs, i))
                .collect(),
        )
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut out = alloc::vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPolynomial::new(out)
    }
}

/// One term of the `q`-sum as numerator and denominator:
/// `Π_j q^{α₁+…+α_{j−1}} [d_{i_j}]_q` over `Π_j [α₁+…+α_j]_q`.
pub fn q_probabilistic_terms(d: &Composition) -> Vec<(Composition, QPolynomial, QPolynomial)> {
    d.coarsenings()
        .into_iter()
        .map(|alpha| {
            let (_, leads) = coarsening_data(d, &alpha).unwrap();
            let mut num = QPolynomial::one();
            let mut den = QPolynomial::one();
            let mut before = 0;
            for (&lead, s) in leads.iter().zip(alpha.prefix_sums()) {
                num = &(&num * &QPolynomial::monomial(before)) * &QPolynomial::q_integer(lead);
                den = &den * &QPolynomial::q_integer(s);
                before = s;
            }
            (alpha, num, den)
        })
        .collect()
}

/// The `q`-sum with denominators cleared: returns `(N, Q)` where
/// `Q = Π_i [d₁+…+d_i]_q` and `N = Σ_α Q · term_α`. Every term's denominator
/// is a sub-product of `Q` because the prefix sums of a coarsening are prefix
/// sums of `d`.
pub fn q_cleared_identity(d: &Composition) -> (QPolynomial, QPolynomial) {
    let all_prefix = d.prefix_sums();
    let common = all_prefix.iter().fold(QPolynomial::one(), |acc, &s| {
        &acc * &QPolynomial::q_integer(s)
    });
    let mut total = QPolynomial::zero();
    for (alpha, num, _) in q_probabilistic_terms(d) {
        let used = alpha.prefix_sums();
        let missing = all_prefix
            .iter()
            .filter(|s| !used.contains(s))
            .fold(QPolynomial::one(), |acc, &s| {
                &acc * &QPolynomial::q_integer(s)
            });
        total = &total + &(&num * &missing);
    }
    (total, common)
}

/// The `q`-sum as a polynomial: `N / Q` when the division is exact (the
/// identity says it is, and equals `1`).
pub fn q_probabilistic_sum(d: &Composition) -> Option<QPolynomial> {
    let (num, den) = q_cleared_identity(d);
    num.div_exact(&den)
}

/// A rooted forest stored as parent pointers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    parent: Vec<Option<usize>>,
}

impl RootedTree {
    /// # Panics
    ///
    /// If a parent index is out of range.
    pub fn new(parent: Vec<Option<usize>>) -> Self {
        assert!(parent.iter().flatten().all(|&p| p < parent.len()));
        RootedTree { parent }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// `1 +` number of descendants, for every vertex.
    pub fn hooks(&self) -> Vec<u64> {
        let mut hooks = alloc::vec![1u64; self.len()];
        for v in 0..self.len() {
            let mut cur = self.parent[v];
            let mut steps = 0;
            while let Some(p) = cur {
                hooks[p] += 1;
                cur = self.parent[p];
                steps += 1;
                assert!(steps <= self.len(), "parent pointers contain a cycle");
            }
        }
        hooks
    }

    /// `N! / Π hooks`: orderings in which every vertex precedes its
    /// descendants.
    pub fn linear_extension_count(&self) -> BigInt {
        let hooks: BigInt = self.hooks().into_iter().map(BigInt::from).product();
        factorial(self.len() as u32) / hooks
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// The tree attached to a grouping `beta` of the weights `d`: internal
/// vertices `v_1, …, v_k` form a path with `v_k` at the root, and `v_j`
/// carries `α_j − 1` leaves split into blocks `d_{i_j} − 1, d_{i_j + 1}, …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaTree {
    pub tree: RootedTree,
    /// Indices of `v_1, …, v_k` in `tree`.
    pub internal: Vec<usize>,
    /// Leaf block sizes per internal vertex.
    pub leaf_blocks: Vec<Vec<u32>>,
    pub alpha: Composition,
}

impl BetaTree {
    pub fn internal_count(&self) -> usize {
        self.internal.len()
    }

    /// Hook values of `v_1, …, v_k`.
    pub fn internal_hooks(&self) -> Vec<u64> {
        let hooks = self.tree.hooks();
        self.internal.iter().map(|&v| hooks[v]).collect()
    }
}

pub fn beta_tree(d: &Composition, beta: &Composition) -> Result<BetaTree, Error> {
    let alpha = alpha_from_beta(d, beta)?;
    let k = beta.len();
    let mut parent: Vec<Option<usize>> = (0..k).map(|j| (j + 1 < k).then_some(j + 1)).collect();
    let mut leaf_blocks = Vec::with_capacity(k);
    let mut pos = 0;
    for (j, &b) in beta.parts().iter().enumerate() {
        let run = &d.parts()[pos..pos + b as usize];
        let mut blocks = alloc::vec![run[0] - 1];
        blocks.extend_from_slice(&run[1..]);
        let leaves: u32 = blocks.iter().sum();
        parent.extend(core::iter::repeat_n(Some(j), leaves as usize));
        leaf_blocks.push(blocks);
        pos += b as usize;
    }
    Ok(BetaTree {
        tree: RootedTree::new(parent),
        internal: (0..k).collect(),
        leaf_blocks,
        alpha,
    })
}

pub fn linear_extension_count(t: &BetaTree) -> BigInt {
    t.tree.linear_extension_count()
}

/// Both sides of `Σ_{β ⊨ len(d)} |LinExt(β, d)| · Π_j d_{i_j} = (Σ d)!`.
pub fn linext_identity_check(d: &Composition) -> (BigInt, BigInt) {
    let mut lhs = BigInt::zero();
    for beta in compositions_of(d.len() as u32) {
        let t = beta_tree(d, &beta).expect("beta has weight len(d)");
        let (_, leads) = coarsening_data(d, &t.alpha).unwrap();
        let lead: BigInt = leads.into_iter().map(BigInt::from).product();
        lhs += linear_extension_count(&t) * lead;
    }
    (lhs, factorial(d.weight()))
}

/// Grouping `beta` of a staircase selection. `rows[i]` is the 1-based row
/// (from the bottom) of the selected box in column `i + 1`. The selected box
/// in the last remaining column, counted from the top, gives the next part
/// from the right; that many columns are then removed.
///
/// # Panics
///
/// If `rows` is empty or some `rows[i]` is outside `1..=i+1`.
pub fn classify_staircase(rows: &[usize]) -> Composition {
    assert!(!rows.is_empty());
    let mut parts = Vec::new();
    let mut m = rows.len();
    while m > 0 {
        let r = rows[m - 1];
        assert!((1..=m).contains(&r), "row {r} not in column {m}");
        let part = m - r + 1;
        parts.push(part as u32);
        m -= part;
    }
    parts.reverse();
    Composition::new(parts).unwrap()
}

/// Row of the box representing value `a` in a column, i.e. the `r` with
/// `d₁+…+d_{r−1} < a ≤ d₁+…+d_r`.
fn row_of(prefix: &[u32], a: u32) -> usize {
    prefix.iter().position(|&s| a <= s).unwrap() + 1
}

/// Exact probability of each `Ω_β`, by walking every vector of `Ω`.
pub fn staircase_exact(d: &Composition) -> BTreeMap<Composition, Rational> {
    let prefix = d.prefix_sums();
    let total: BigInt = prefix.iter().map(|&s| BigInt::from(s)).product();
    let mut counts: BTreeMap<Composition, u64> = BTreeMap::new();
    let mut values = alloc::vec![1u32; d.len()];
    loop {
        let rows: Vec<usize> = values.iter().map(|&a| row_of(&prefix, a)).collect();
        *counts.entry(classify_staircase(&rows)).or_insert(0) += 1;
        // odometer over 1 ≤ a_i ≤ prefix_i
        let mut i = 0;
        loop {
            if i == values.len() {
                return counts
                    .into_iter()
                    .map(|(b, c)| (b, Rational::new(c.into(), total.clone())))
                    .collect();
            }
            if values[i] < prefix[i] {
                values[i] += 1;
                break;
            }
            values[i] = 1;
            i += 1;
        }
    }
}

/// Empirical frequency of each `Ω_β` over `samples` uniform draws from `Ω`.
pub fn staircase_monte_carlo(
    d: &Composition,
    samples: u64,
    seed: u64,
) -> BTreeMap<Composition, Rational> {
    assert!(samples >= 1, "need at least one sample");
    let prefix = d.prefix_sums();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<Composition, u64> = BTreeMap::new();
    let mut rows = alloc::vec![0usize; d.len()];
    for _ in 0..samples {
        for (i, &s) in prefix.iter().enumerate() {
            rows[i] = row_of(&prefix, rng.gen_range(1..=s));
        }
        *counts.entry(classify_staircase(&rows)).or_insert(0) += 1;
    }
    counts
        .into_iter()
        .map(|(b, c)| (b, Rational::new(c.into(), samples.into())))
        .collect()
}
