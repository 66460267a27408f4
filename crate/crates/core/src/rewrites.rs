//! The two structural recurrences of `K^d_{(P,ω)}` as poset rewrites.
//!
//! - [`add_edge_pair`]: for incomparable `a, b` with `ω(a) < ω(b)`,
//!   `K(P) = K(P + {a<b}) + K(P + {b<a})`.
//! - [`split_weight`]: splitting `a` into `a₋ < a₊` with weights `d₁ + d₂`,
//!   `K(P) = K(P', ω') − K(P', ω'')`.
//!
//! [`reduce_to_natural_chains`] applies both until only naturally labeled
//! weighted chains remain.

use alloc::vec::Vec;

use crate::compositions::Composition;
use crate::poset::{bits, EdgeKind, LabeledPoset, MAX_ELEMENTS};
use crate::qsym::{Basis, QsymExpr};
use crate::surjections::monomial_expansion;
use crate::{Error, Rational};

/// Adds `a < b` (first poset) and `b < a` (second poset), after swapping so
/// that `ω(a) < ω(b)`. Labels and weights are unchanged.
pub fn add_edge_pair(
    p: &LabeledPoset,
    a: usize,
    b: usize,
) -> Result<(LabeledPoset, LabeledPoset), Error> {
    let n = p.len();
    for e in [a, b] {
        if e >= n {
            return Err(Error::ElementOutOfRange { element: e, n });
        }
    }
    if a == b || p.comparable(a, b) {
        return Err(Error::Comparable { a, b });
    }
    let (a, b) = if p.label(a) < p.label(b) {
        (a, b)
    } else {
        (b, a)
    };
    let with = |lo: usize, hi: usize| {
        let mut up = p.up_sets().to_vec();
        up[lo] |= 1 << hi;
        LabeledPoset::from_up_sets(up, p.labels().to_vec(), p.weights().to_vec())
    };
    Ok((with(a, b)?, with(b, a)?))
}

/// The two posets of a weight split. Element `a` of the input becomes `a₋`
/// (same index) and `a₊` is appended as the last element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitResult {
    /// `a₋` labeled `i`, `a₊` labeled `i + 1`: the new edge is weak.
    pub p_prime: LabeledPoset,
    /// Same order with the two new labels swapped: the new edge is strict.
    pub p_doubleprime: LabeledPoset,
    pub lower: usize,
    pub upper: usize,
}

/// Splits `a` into `a₋ < a₊` with weights `d1`, `d2`. Both new elements
/// inherit every relation of `a`; labels above `ω(a)` shift up by one.
pub fn split_weight(p: &LabeledPoset, a: usize, d1: u32, d2: u32) -> Result<SplitResult, Error> {
    let n = p.len();
    if a >= n {
        return Err(Error::ElementOutOfRange { element: a, n });
    }
    if n + 1 > MAX_ELEMENTS {
        return Err(Error::TooManyElements {
            n: n + 1,
            max: MAX_ELEMENTS,
        });
    }
    let total = p.weight(a);
    if d1 == 0 || d2 == 0 || d1.checked_add(d2) != Some(total) {
        return Err(Error::BadSplit { d1, d2, total });
    }
    let plus = n;
    let mut up: Vec<u32> = p.up_sets().to_vec();
    let above_a = up[a];
    for x in bits(p.down_set(a)) {
        up[x] |= 1 << plus;
    }
    up.push(above_a);
    up[a] |= 1 << plus;

    let i = p.label(a);
    let mut labels: Vec<u32> = p
        .labels()
        .iter()
        .map(|&l| if l > i { l + 1 } else { l })
        .collect();
    labels.push(i + 1);
    let mut swapped = labels.clone();
    swapped[a] = i + 1;
    swapped[plus] = i;

    let mut weights = p.weights().to_vec();
    weights[a] = d1;
    weights.push(d2);

    Ok(SplitResult {
        p_prime: LabeledPoset::from_up_sets(up.clone(), labels, weights.clone())?,
        p_doubleprime: LabeledPoset::from_up_sets(up, swapped, weights)?,
        lower: a,
        upper: plus,
    })
}

/// One leaf of the reduction: `sign · K` of a naturally labeled chain whose
/// weights, bottom to top, are `weights`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainTerm {
    pub sign: i8,
    pub chain: LabeledPoset,
    pub weights: Composition,
}

/// Rewrites `K^d_{(P,ω)}` as a signed sum of naturally labeled weighted
/// chains.
///
/// While two elements are incomparable, the lexicographically smallest
/// index pair is resolved with [`add_edge_pair`] (both branches keep the
/// sign). A chain with a strict edge `x ⋖ y` is rewritten with the split
/// identity read right to left: merge `x, y` into one vertex of weight
/// `d(x) + d(y)` (chain `M`), relabel `M` canonically from its edge pattern,
/// and split the merged vertex back. The split gives `K(C) = K(P', ω') − K(M)`
/// where `(P', ω')` is `C` with `x ⋖ y` made weak. Every step lowers either the
/// number of incomparable pairs or the number of strict edges.
pub fn reduce_to_natural_chains(p: &LabeledPoset) -> Vec<ChainTerm> {
    let mut out = Vec::new();
    reduce(p, 1, &mut out);
    out
}

fn reduce(p: &LabeledPoset, sign: i8, out: &mut Vec<ChainTerm>) {
    if let Some((a, b)) = first_incomparable_pair(p) {
        let (lo, hi) = add_edge_pair(p, a, b).expect("incomparable");
        reduce(&lo, sign, out);
        reduce(&hi, sign, out);
        return;
    }
    let order = p.linear_extension();
    let weights: Vec<u32> = order.iter().map(|&x| p.weight(x)).collect();
    let kinds: Vec<EdgeKind> = order.windows(2).map(|w| p.edge_kind(w[0], w[1])).collect();
    let Some(j) = kinds.iter().position(|&k| k == EdgeKind::Strict) else {
        out.push(ChainTerm {
            sign,
            chain: p.clone(),
            weights: Composition::new(weights).expect("positive weights"),
        });
        return;
    };
    let mut merged_weights = weights.clone();
    merged_weights[j] += merged_weights.remove(j + 1);
    let mut merged_kinds = kinds.clone();
    merged_kinds.remove(j);
    let merged = chain_with_pattern(&merged_weights, &merged_kinds);
    let split = split_weight(&merged, j, weights[j], weights[j + 1]).expect("valid split");
    debug_assert_eq!(chain_pattern(&split.p_doubleprime), kinds);
    reduce(&split.p_prime, sign, out);
    reduce(&merged, -sign, out);
}

fn first_incomparable_pair(p: &LabeledPoset) -> Option<(usize, usize)> {
    let n = p.len();
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .find(|&(a, b)| !p.comparable(a, b))
}

/// Chain `0 < 1 < …` with the given weights and edge kinds; labels are
/// assigned so that maximal weak runs increase and later runs take smaller
/// labels, which makes exactly the requested edges strict.
pub fn chain_with_pattern(weights: &[u32], kinds: &[EdgeKind]) -> LabeledPoset {
    assert_eq!(kinds.len() + 1, weights.len());
    let mut runs: Vec<Vec<usize>> = alloc::vec![alloc::vec![0]];
    for (i, k) in kinds.iter().enumerate() {
        match k {
            EdgeKind::Weak => runs.last_mut().unwrap().push(i + 1),
            EdgeKind::Strict => runs.push(alloc::vec![i + 1]),
        }
    }
    let mut labels = alloc::vec![0u32; weights.len()];
    let mut next = 1;
    for run in runs.iter().rev() {
        for &x in run {
            labels[x] = next;
            next += 1;
        }
    }
    LabeledPoset::chain(&labels, weights).expect("valid chain")
}

/// Edge kinds of a chain, bottom to top.
pub fn chain_pattern(chain: &LabeledPoset) -> Vec<EdgeKind> {
    let order = chain.linear_extension();
    order
        .windows(2)
        .map(|w| chain.edge_kind(w[0], w[1]))
        .collect()
}

/// `Σ_{β ≥ d} M_β`, the generating function of a naturally labeled chain with
/// weights `d`.
pub fn natural_chain_monomial(d: &Composition) -> QsymExpr {
    QsymExpr::from_terms(
        Basis::Monomial,
        d.coarsenings()
            .into_iter()
            .map(|b| (b, Rational::from_integer(1.into()))),
    )
}

/// Signed sum of the leaves' generating functions.
pub fn chain_terms_monomial(terms: &[ChainTerm]) -> QsymExpr {
    let mut total = QsymExpr::zero(Basis::Monomial);
    for t in terms {
        let e = natural_chain_monomial(&t.weights);
        let e = if t.sign < 0 { -&e } else { e };
        total.add_expr(&e);
    }
    total
}

/// Signed sum of the leaves, each expanded by brute force.
pub fn chain_terms_monomial_brute(terms: &[ChainTerm]) -> QsymExpr {
    let mut total = QsymExpr::zero(Basis::Monomial);
    for t in terms {
        let e = monomial_expansion(&t.chain);
        let e = if t.sign < 0 { -&e } else { e };
        total.add_expr(&e);
    }
    total
}
