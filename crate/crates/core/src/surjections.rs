//! Order-preserving surjections `f: P → [ℓ]` and the brute-force monomial
//! expansion of `K^d_{(P,ω)}`.
//!
//! Two families are enumerated. Plain order-preserving surjections only need
//! `a <_P b ⇒ f(a) ≤ f(b)`; partition surjections additionally need
//! `f(a) < f(b)` whenever `ω(a) > ω(b)`. The latter, summed over `ℓ`, are the
//! `(P,ω)`-partitions with image `{1..ℓ}`, so counting them by weight profile
//! gives the monomial coefficients directly.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::compositions::Composition;
use crate::poset::{bits, ElementSet, LabeledPoset};
use crate::qsym::{Basis, QsymExpr};
use crate::Error;

/// Refuses posets above a size limit before any exponential enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeGuard {
    pub max_n: usize,
}

impl SizeGuard {
    pub const DEFAULT_MAX_N: usize = 10;

    pub fn new(max_n: usize) -> Self {
        SizeGuard { max_n }
    }

    pub fn check(&self, p: &LabeledPoset) -> Result<(), Error> {
        if p.len() > self.max_n {
            Err(Error::SizeGuard {
                n: p.len(),
                max: self.max_n,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard::new(Self::DEFAULT_MAX_N)
    }
}

/// A surjective level assignment `f: P → {1..ℓ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderSurjection {
    levels: Vec<u32>,
    blocks: Vec<ElementSet>,
    wt: Composition,
    wtd: Composition,
}

impl OrderSurjection {
    /// Builds the surjection from 1-based levels.
    ///
    /// # Panics
    ///
    /// If some level in `1..=max` is unused.
    pub fn from_levels(p: &LabeledPoset, levels: Vec<u32>) -> Self {
        let ell = levels.iter().copied().max().unwrap_or(0) as usize;
        let mut blocks = alloc::vec![0; ell];
        for (a, &l) in levels.iter().enumerate() {
            blocks[l as usize - 1] |= 1 << a;
        }
        assert!(
            blocks.iter().all(|&b| b != 0),
            "level map is not surjective"
        );
        Self::from_blocks(p, levels, blocks)
    }

    pub(crate) fn from_blocks(p: &LabeledPoset, levels: Vec<u32>, blocks: Vec<ElementSet>) -> Self {
        let wt = blocks.iter().map(|b| b.count_ones()).collect();
        let wtd = blocks
            .iter()
            .map(|&b| bits(b).map(|a| p.weight(a)).sum())
            .collect();
        OrderSurjection {
            levels,
            blocks,
            wt: Composition::new(wt).expect("nonempty blocks"),
            wtd: Composition::new(wtd).expect("positive weights"),
        }
    }

    /// `f(a)` for every element, 1-based.
    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn ell(&self) -> usize {
        self.blocks.len()
    }

    /// Preimages `f⁻¹(1), …, f⁻¹(ℓ)` as element sets.
    pub fn blocks(&self) -> &[ElementSet] {
        &self.blocks
    }

    pub fn block_elements(&self, i: usize) -> Vec<usize> {
        bits(self.blocks[i]).collect()
    }

    /// Block sizes.
    pub fn wt(&self) -> &Composition {
        &self.wt
    }

    /// Block weight totals.
    pub fn wtd(&self) -> &Composition {
        &self.wtd
    }

    pub fn is_order_preserving(&self, p: &LabeledPoset) -> bool {
        (0..p.len()).all(|a| bits(p.up_set(a)).all(|b| self.levels[a] <= self.levels[b]))
    }

    pub fn respects_strict_relations(&self, p: &LabeledPoset) -> bool {
        (0..p.len()).all(|a| {
            bits(p.up_set(a))
                .filter(|&b| p.label(a) > p.label(b))
                .all(|b| self.levels[a] < self.levels[b])
        })
    }
}

/// Depth-first level assignment along a linear extension. Every element gets
/// a level at least that of its predecessors (strictly above a predecessor
/// with a larger label when `strict`); surjectivity is pruned by counting
/// unused levels against remaining elements.
fn for_each_level_map<F: FnMut(&[u32])>(p: &LabeledPoset, ell: usize, strict: bool, mut visit: F) {
    let n = p.len();
    if ell == 0 || ell > n {
        return;
    }
    let order = p.linear_extension();
    let mut levels = alloc::vec![0u32; n];
    let mut used = alloc::vec![0u32; ell + 1];
    let mut unused = ell;

    struct Ctx<'a, F> {
        p: &'a LabeledPoset,
        order: &'a [usize],
        ell: u32,
        strict: bool,
        visit: F,
    }

    fn go<F: FnMut(&[u32])>(
        cx: &mut Ctx<'_, F>,
        pos: usize,
        levels: &mut [u32],
        used: &mut [u32],
        unused: &mut usize,
    ) {
        let remaining = cx.order.len() - pos;
        if *unused > remaining {
            return;
        }
        if remaining == 0 {
            (cx.visit)(levels);
            return;
        }
        let a = cx.order[pos];
        let mut lo = 1;
        for b in bits(cx.p.down_set(a)) {
            let bump = u32::from(cx.strict && cx.p.label(b) > cx.p.label(a));
            lo = lo.max(levels[b] + bump);
        }
        for l in lo..=cx.ell {
            levels[a] = l;
            used[l as usize] += 1;
            if used[l as usize] == 1 {
                *unused -= 1;
            }
            go(cx, pos + 1, levels, used, unused);
            if used[l as usize] == 1 {
                *unused += 1;
            }
            used[l as usize] -= 1;
        }
        levels[a] = 0;
    }

    let mut cx = Ctx {
        p,
        order: &order,
        ell: ell as u32,
        strict,
        visit: &mut visit,
    };
    go(&mut cx, 0, &mut levels, &mut used, &mut unused);
}

/// All order-preserving surjections onto `{1..ell}`. Strict edges impose no
/// strict inequality here.
pub fn enumerate_order_surjections(p: &LabeledPoset, ell: usize) -> Vec<OrderSurjection> {
    let mut out = Vec::new();
    for_each_level_map(p, ell, false, |lv| {
        out.push(OrderSurjection::from_levels(p, lv.to_vec()))
    });
    out
}

/// Order-preserving surjections onto `{1..ell}` that also increase strictly
/// across every relation `a <_P b` with `ω(a) > ω(b)`.
pub fn enumerate_partition_surjections(p: &LabeledPoset, ell: usize) -> Vec<OrderSurjection> {
    let mut out = Vec::new();
    for_each_level_map(p, ell, true, |lv| {
        out.push(OrderSurjection::from_levels(p, lv.to_vec()))
    });
    out
}

/// Every order-preserving surjection, over all `ℓ` in `1..=n`.
pub fn all_order_surjections(p: &LabeledPoset) -> Vec<OrderSurjection> {
    (1..=p.len())
        .flat_map(|ell| enumerate_order_surjections(p, ell))
        .collect()
}

fn weight_profile(p: &LabeledPoset, levels: &[u32], ell: usize) -> Vec<u32> {
    let mut wtd = alloc::vec![0u32; ell];
    for (a, &l) in levels.iter().enumerate() {
        wtd[l as usize - 1] += p.weight(a);
    }
    wtd
}

/// `K^d_{(P,ω)}` in the monomial basis: the coefficient of `M_β` counts the
/// partition surjections whose block weights are `β`.
pub fn monomial_expansion(p: &LabeledPoset) -> QsymExpr {
    let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    for ell in 1..=p.len() {
        for_each_level_map(p, ell, true, |lv| {
            *counts.entry(weight_profile(p, lv, ell)).or_insert(0) += 1;
        });
    }
    QsymExpr::from_integer_terms(
        Basis::Monomial,
        counts
            .into_iter()
            .map(|(k, v)| (Composition::new(k).unwrap(), BigInt::from(v))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::example_strip;
    use crate::Rational;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    #[test]
    fn small_counts() {
        let chain = LabeledPoset::chain(&[1, 2], &[1, 1]).unwrap();
        assert_eq!(enumerate_order_surjections(&chain, 2).len(), 1);
        assert_eq!(enumerate_order_surjections(&chain, 2)[0].levels(), &[1, 2]);
        let anti = LabeledPoset::antichain(&[1, 1]).unwrap();
        assert_eq!(enumerate_order_surjections(&anti, 2).len(), 2);
        assert_eq!(enumerate_order_surjections(&anti, 1).len(), 1);
        assert_eq!(enumerate_partition_surjections(&chain, 1).len(), 1);
        let strict = LabeledPoset::chain(&[2, 1], &[1, 1]).unwrap();
        assert_eq!(enumerate_partition_surjections(&strict, 1).len(), 0);
        assert_eq!(
            enumerate_partition_surjections(&example_strip(), 1).len(),
            0
        );
        assert!(enumerate_order_surjections(&chain, 3).is_empty());
    }

    #[test]
    fn monomial_examples() {
        let strict = LabeledPoset::chain(&[2, 1], &[1, 1]).unwrap();
        assert_eq!(
            monomial_expansion(&strict),
            QsymExpr::basis_element(Basis::Monomial, c("1,1"))
        );
        let anti = LabeledPoset::antichain(&[1, 1]).unwrap();
        let want = QsymExpr::from_terms(
            Basis::Monomial,
            [
                (c("1,1"), Rational::from_integer(2.into())),
                (c("2"), Rational::from_integer(1.into())),
            ],
        );
        assert_eq!(monomial_expansion(&anti), want);
        // natural weighted chain: every coarsening of d with coefficient 1
        let chain = LabeledPoset::chain(&[1, 2, 3], &[2, 1, 3]).unwrap();
        let want = QsymExpr::from_terms(
            Basis::Monomial,
            c("2,1,3")
                .coarsenings()
                .into_iter()
                .map(|b| (b, Rational::from_integer(1.into()))),
        );
        assert_eq!(monomial_expansion(&chain), want);
        assert_eq!(monomial_expansion(&example_strip()).degree(), Some(8));
    }

    #[test]
    fn surjection_data() {
        let p = example_strip();
        let f = OrderSurjection::from_levels(&p, alloc::vec![1, 2, 2, 2, 3, 3]);
        assert_eq!(f.wt(), &c("1,3,2"));
        assert_eq!(f.wtd(), &c("1,5,2"));
        assert!(f.is_order_preserving(&p));
        assert!(!f.respects_strict_relations(&p));
        assert_eq!(f.block_elements(1), alloc::vec![1, 2, 3]);
    }

    #[test]
    fn guard() {
        let g = SizeGuard::default();
        assert!(g.check(&example_strip()).is_ok());
        assert_eq!(
            SizeGuard::new(5).check(&example_strip()),
            Err(Error::SizeGuard { n: 6, max: 5 })
        );
    }
}
