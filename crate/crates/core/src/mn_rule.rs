//! Generalized border strips, their element tags, and the weighted
//! Murnaghan–Nakayama expansion
//!
//! ```text
//! K^d_{(P,ω)} = Σ_α ψ̂_α Σ_{f rooted, wt(f,d) = α} Π_i sgn(f⁻¹(i)) · d(root(f⁻¹(i)))
//! ```
//!
//! A labeled poset is a generalized border strip when no chain `a < b < c`
//! has `ω(a) < ω(b) > ω(c)`. Tags are read from the Hasse diagram of the
//! (sub)poset itself: bottoms of strict edges get `-1`, tops of natural edges
//! get `+1`, everything else is a `1*`. A strip is rooted when exactly one
//! element is `1*`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::compositions::Composition;
use crate::poset::{bits, full_set, ElementSet, LabeledPoset};
use crate::qsym::{Basis, QsymExpr};
use crate::surjections::{all_order_surjections, OrderSurjection};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tag {
    MinusOne,
    PlusOne,
    Star,
}

/// Root element and sign of a rooted strip.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Root {
    pub element: usize,
    pub sign: i8,
}

/// Tagging data of a labeled poset. `tags` is present iff the poset is a
/// generalized border strip; `root` iff it is moreover rooted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StripData {
    pub tags: Option<Vec<Tag>>,
    pub root: Option<Root>,
}

impl StripData {
    pub fn is_gbs(&self) -> bool {
        self.tags.is_some()
    }

    pub fn is_rooted(&self) -> bool {
        self.root.is_some()
    }

    pub fn sign(&self) -> Option<i8> {
        self.root.map(|r| r.sign)
    }

    pub fn root(&self) -> Option<usize> {
        self.root.map(|r| r.element)
    }
}

/// Checks every chain `a < b < c` for `ω(a) < ω(b) > ω(c)`.
pub fn is_generalized_border_strip(p: &LabeledPoset) -> bool {
    for b in 0..p.len() {
        let lb = p.label(b);
        let below_smaller = bits(p.down_set(b)).any(|a| p.label(a) < lb);
        let above_smaller = bits(p.up_set(b)).any(|c| p.label(c) < lb);
        if below_smaller && above_smaller {
            return false;
        }
    }
    true
}

/// Hasse-diagram criterion: no element is both the top of a natural edge and
/// the bottom of a strict edge.
pub fn is_gbs_via_hasse(p: &LabeledPoset) -> bool {
    block_tags(p, full_set(p.len())).is_some()
}

/// Per-element `(top of natural, bottom of strict)` flags inside `block`,
/// using the Hasse diagram of the induced order. `None` when some element has
/// both, i.e. the block is not a generalized border strip.
fn block_tags(p: &LabeledPoset, block: ElementSet) -> Option<Vec<(usize, Tag)>> {
    let mut out = Vec::with_capacity(block.count_ones() as usize);
    for x in bits(block) {
        let lx = p.label(x);
        let above = p.up_set(x) & block;
        let below = p.down_set(x) & block;
        let covered_by = |y: usize| above & p.down_set(y) == 0;
        let covers = |y: usize| below & p.up_set(y) == 0;
        let bottom_of_strict = bits(above).any(|y| p.label(y) < lx && covered_by(y));
        let top_of_natural = bits(below).any(|y| p.label(y) < lx && covers(y));
        let tag = match (bottom_of_strict, top_of_natural) {
            (true, true) => return None,
            (true, false) => Tag::MinusOne,
            (false, true) => Tag::PlusOne,
            (false, false) => Tag::Star,
        };
        out.push((x, tag));
    }
    Some(out)
}

fn root_of(tags: &[(usize, Tag)]) -> Option<Root> {
    let mut stars = tags.iter().filter(|t| t.1 == Tag::Star);
    let (element, _) = *stars.next()?;
    if stars.next().is_some() {
        return None;
    }
    let minus = tags.iter().filter(|t| t.1 == Tag::MinusOne).count();
    Some(Root {
        element,
        sign: if minus % 2 == 0 { 1 } else { -1 },
    })
}

/// Root (ambient index) and sign of the sub-poset induced on `block`, if it
/// is a rooted strip.
fn block_root(p: &LabeledPoset, block: ElementSet) -> Option<Root> {
    root_of(&block_tags(p, block)?)
}

/// Full tagging, rootedness, sign and root of `p`.
pub fn strip_data(p: &LabeledPoset) -> StripData {
    if !is_generalized_border_strip(p) {
        return StripData {
            tags: None,
            root: None,
        };
    }
    let tagged = block_tags(p, full_set(p.len())).expect("generalized border strip");
    let root = root_of(&tagged);
    StripData {
        tags: Some(tagged.into_iter().map(|t| t.1).collect()),
        root,
    }
}

/// A rooted surjection together with the strip data of each block, computed
/// on the induced sub-poset (element indices refer to the block's own
/// numbering, i.e. block members in increasing ambient index order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedSurjection {
    pub surjection: OrderSurjection,
    pub strips: Vec<StripData>,
}

impl RootedSurjection {
    /// Ambient element that roots block `i`.
    pub fn root_element(&self, i: usize) -> usize {
        let local = self.strips[i].root().expect("rooted");
        bits(self.surjection.blocks()[i]).nth(local).unwrap()
    }

    pub fn sign(&self) -> i8 {
        self.strips.iter().map(|s| s.sign().unwrap()).product()
    }

    /// `Π_i sgn(block_i) · d(root(block_i))`.
    pub fn coefficient(&self, p: &LabeledPoset) -> BigInt {
        let mut c = BigInt::from(self.sign());
        for i in 0..self.strips.len() {
            c *= p.weight(self.root_element(i));
        }
        c
    }
}

/// Walks chains of down-sets `∅ ⊂ D₁ ⊂ … ⊂ P`; each step's difference is a
/// block, kept only if it is a rooted strip. Candidate blocks are visited in
/// descending bitmask order.
fn for_each_rooted<F: FnMut(&[ElementSet], &[Root])>(p: &LabeledPoset, mut visit: F) {
    fn go<F: FnMut(&[ElementSet], &[Root])>(
        p: &LabeledPoset,
        done: ElementSet,
        full: ElementSet,
        blocks: &mut Vec<ElementSet>,
        roots: &mut Vec<Root>,
        visit: &mut F,
    ) {
        if done == full {
            visit(blocks, roots);
            return;
        }
        let rest = full & !done;
        let mut sub = rest;
        loop {
            if sub != 0 && is_next_block(p, done, sub) {
                if let Some(root) = block_root(p, sub) {
                    blocks.push(sub);
                    roots.push(root);
                    go(p, done | sub, full, blocks, roots, visit);
                    blocks.pop();
                    roots.pop();
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    let full = full_set(p.len());
    go(p, 0, full, &mut Vec::new(), &mut Vec::new(), &mut visit);
}

fn is_next_block(p: &LabeledPoset, done: ElementSet, block: ElementSet) -> bool {
    let upto = done | block;
    bits(block).all(|a| p.down_set(a) & !upto == 0)
}

/// All rooted order-preserving surjections with per-block strip data.
pub fn rooted_surjections(p: &LabeledPoset) -> Vec<RootedSurjection> {
    let mut out = Vec::new();
    for_each_rooted(p, |blocks, _| {
        let mut levels = alloc::vec![0u32; p.len()];
        for (i, &b) in blocks.iter().enumerate() {
            for a in bits(b) {
                levels[a] = i as u32 + 1;
            }
        }
        let surjection = OrderSurjection::from_blocks(p, levels, blocks.to_vec());
        let strips = blocks
            .iter()
            .map(|&b| strip_data(&p.induced_subposet(b).expect("nonempty")))
            .collect();
        out.push(RootedSurjection { surjection, strips });
    });
    out
}

/// Rooted surjections recovered by filtering every order-preserving
/// surjection; the slow reference for [`rooted_surjections`].
pub fn rooted_surjections_by_filter(p: &LabeledPoset) -> Vec<RootedSurjection> {
    all_order_surjections(p)
        .into_iter()
        .filter_map(|f| {
            let strips: Vec<StripData> = f
                .blocks()
                .iter()
                .map(|&b| strip_data(&p.induced_subposet(b).unwrap()))
                .collect();
            strips
                .iter()
                .all(StripData::is_rooted)
                .then_some(RootedSurjection {
                    surjection: f,
                    strips,
                })
        })
        .collect()
}

/// `K^d_{(P,ω)}` in the `ψ̂` basis via signed rooted surjections.
pub fn mn_expansion(p: &LabeledPoset) -> QsymExpr {
    let mut acc: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    for_each_rooted(p, |blocks, roots| {
        let mut coeff = BigInt::one();
        let mut wtd = Vec::with_capacity(blocks.len());
        for (&b, r) in blocks.iter().zip(roots) {
            wtd.push(bits(b).map(|a| p.weight(a)).sum());
            coeff *= i32::from(r.sign) * p.weight(r.element) as i32;
        }
        *acc.entry(wtd).or_default() += coeff;
    });
    QsymExpr::from_integer_terms(
        Basis::PsiHat,
        acc.into_iter()
            .map(|(k, v)| (Composition::new(k).unwrap(), v)),
    )
}

/// Expansion for naturally labeled posets through pointed surjections (every
/// block has a unique minimum), weighted by the product of the minima's
/// weights. No tags or signs are involved.
pub fn natural_mn_expansion(p: &LabeledPoset) -> Result<QsymExpr, Error> {
    if !p.is_naturally_labeled() {
        return Err(Error::NotNaturallyLabeled);
    }
    let mut acc: BTreeMap<Composition, BigInt> = BTreeMap::new();
    for f in all_order_surjections(p) {
        let mut coeff = BigInt::one();
        let mut pointed = true;
        for &b in f.blocks() {
            let mut minima = bits(b).filter(|&a| p.down_set(a) & b == 0);
            match (minima.next(), minima.next()) {
                (Some(m), None) => coeff *= p.weight(m),
                _ => {
                    pointed = false;
                    break;
                }
            }
        }
        if pointed {
            *acc.entry(f.wtd().clone()).or_default() += coeff;
        }
    }
    Ok(QsymExpr::from_integer_terms(Basis::PsiHat, acc))
}

/// True if some block of a rooted surjection of `p` induces a disconnected
/// sub-poset.
pub fn has_disconnected_rooted_block(p: &LabeledPoset) -> bool {
    let mut found = false;
    for_each_rooted(p, |blocks, _| {
        found |= blocks.iter().any(|&b| !is_connected(p, b));
    });
    found
}

fn is_connected(p: &LabeledPoset, block: ElementSet) -> bool {
    let start = block & block.wrapping_neg();
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let mut next = 0;
        for a in bits(frontier) {
            next |= (p.up_set(a) | p.down_set(a)) & block;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == block
}
