//! Skew Schur functions as `K_{(P,ω)}` of a diagram poset, and symmetric
//! group characters two ways: read off the `ψ̂` expansion, and by border strip
//! tableaux.
//!
//! Diagrams use English notation, row 0 on top. A cell is below its right
//! neighbour (weakly) and below the cell underneath it (strictly), so the
//! `(P,ω)`-partitions are exactly the semistandard fillings.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::compositions::{partitions_of, Composition, Partition};
use crate::mn_rule::mn_expansion;
use crate::poset::LabeledPoset;
use crate::{Error, Rational};

/// The skew diagram `outer / inner`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

/// A cell `(row, column)`, both 0-based.
pub type Cell = (usize, usize);

/// How the diagram poset is labeled. Both choices make rows natural and
/// columns strict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Labeling {
    /// Bottom row first, each row left to right.
    #[default]
    RowsFromBottom,
    /// Leftmost column first, each column bottom to top.
    ColumnsFromLeft,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self, Error> {
        if inner.len() > outer.len() || (0..inner.len()).any(|i| inner.part(i) > outer.part(i)) {
            return Err(Error::InvalidShape);
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(outer: Partition) -> Self {
        SkewShape {
            outer,
            inner: Partition::empty(),
        }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn size(&self) -> u32 {
        self.outer.size() - self.inner.size()
    }

    pub fn contains(&self, (r, c): Cell) -> bool {
        (self.inner.part(r) as usize..self.outer.part(r) as usize).contains(&c)
    }

    /// Cells in reading order: top row first, left to right.
    pub fn cells(&self) -> Vec<Cell> {
        (0..self.outer.len())
            .flat_map(|r| {
                (self.inner.part(r) as usize..self.outer.part(r) as usize).map(move |c| (r, c))
            })
            .collect()
    }
}

/// The diagram poset with the default labeling.
pub fn shape_to_poset(shape: &SkewShape) -> LabeledPoset {
    shape_to_poset_with(shape, Labeling::default())
}

/// The diagram poset: one element per cell (in [`SkewShape::cells`] order),
/// `(r, c) < (r, c+1)` and `(r, c) < (r+1, c)`, unit weights.
pub fn shape_to_poset_with(shape: &SkewShape, labeling: Labeling) -> LabeledPoset {
    let cells = shape.cells();
    let index: BTreeMap<Cell, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut covers = Vec::new();
    for (i, &(r, c)) in cells.iter().enumerate() {
        for next in [(r, c + 1), (r + 1, c)] {
            if let Some(&j) = index.get(&next) {
                covers.push((i, j));
            }
        }
    }
    let mut ordered = cells.clone();
    match labeling {
        Labeling::RowsFromBottom => ordered.sort_by_key(|&(r, c)| (core::cmp::Reverse(r), c)),
        Labeling::ColumnsFromLeft => ordered.sort_by_key(|&(r, c)| (c, core::cmp::Reverse(r))),
    }
    let mut labels = alloc::vec![0u32; cells.len()];
    for (pos, cell) in ordered.iter().enumerate() {
        labels[index[cell]] = pos as u32 + 1;
    }
    LabeledPoset::from_covers(cells.len(), &covers, &labels, &alloc::vec![1; cells.len()])
        .expect("diagram posets are acyclic")
}

fn check_size(shape: &SkewShape, weight: u32) -> Result<(), Error> {
    if shape.size() != weight {
        return Err(Error::SizeMismatch {
            left: shape.size(),
            right: weight,
        });
    }
    Ok(())
}

/// `χ(α)`: the coefficient of `ψ̂_α` in the expansion of the diagram poset.
pub fn chi_composition(shape: &SkewShape, alpha: &Composition) -> Result<i64, Error> {
    check_size(shape, alpha.weight())?;
    let c = mn_expansion(&shape_to_poset(shape)).coefficient(alpha);
    debug_assert!(c.is_integer());
    Ok(c.to_integer().to_i64().expect("character value fits"))
}

/// `χ_λ(μ)` read from the weighted border strip expansion.
pub fn chi(shape: &SkewShape, mu: &Partition) -> Result<i64, Error> {
    match mu.as_composition() {
        Some(alpha) => chi_composition(shape, &alpha),
        None => {
            check_size(shape, 0)?;
            Ok(1)
        }
    }
}

/// Border strip tableau: cells labeled by the index of their strip in `μ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorderStripTableau {
    pub assignment: BTreeMap<Cell, usize>,
    /// Rows spanned minus one, per strip.
    pub heights: Vec<u32>,
}

impl BorderStripTableau {
    pub fn height(&self) -> u32 {
        self.heights.iter().sum()
    }

    pub fn sign(&self) -> i64 {
        if self.height().is_even() {
            1
        } else {
            -1
        }
    }
}

/// Removes border strips of sizes `μ_k, …, μ_1` from the outer rim, keeping the
/// inner shape, and records every way to do so.
pub fn border_strip_tableaux(
    shape: &SkewShape,
    mu: &Partition,
) -> Result<Vec<BorderStripTableau>, Error> {
    check_size(shape, mu.size())?;
    let mut out = Vec::new();
    let mut partial = BorderStripTableau {
        assignment: BTreeMap::new(),
        heights: alloc::vec![0; mu.len()],
    };
    strip_off(
        shape.outer.parts().to_vec(),
        &shape.inner,
        mu.parts(),
        &mut partial,
        &mut out,
    );
    Ok(out)
}

fn strip_off(
    outer: Vec<u32>,
    inner: &Partition,
    sizes: &[u32],
    partial: &mut BorderStripTableau,
    out: &mut Vec<BorderStripTableau>,
) {
    let Some((&m, rest)) = sizes.split_last() else {
        out.push(partial.clone());
        return;
    };
    let k = rest.len();
    for smaller in rim_hook_removals(&outer, m) {
        if (0..inner.len()).any(|i| smaller.get(i).copied().unwrap_or(0) < inner.part(i)) {
            continue;
        }
        let cells: Vec<Cell> = (0..outer.len())
            .flat_map(|r| {
                let lo = smaller.get(r).copied().unwrap_or(0) as usize;
                (lo..outer[r] as usize).map(move |c| (r, c))
            })
            .collect();
        let first_row = cells.iter().map(|c| c.0).min().unwrap();
        let last_row = cells.iter().map(|c| c.0).max().unwrap();
        for &cell in &cells {
            partial.assignment.insert(cell, k);
        }
        partial.heights[k] = (last_row - first_row) as u32;
        strip_off(smaller, inner, rest, partial, out);
        for cell in &cells {
            partial.assignment.remove(cell);
        }
    }
}

/// Partitions `κ ⊂ λ` with `λ/κ` a border strip of size `m`, found on the
/// abacus: slide one bead of the first-column hook lengths down by `m`.
fn rim_hook_removals(outer: &[u32], m: u32) -> Vec<Vec<u32>> {
    let len = outer.len();
    let beads: Vec<i64> = outer
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + (len - 1 - i) as i64)
        .collect();
    let mut out = Vec::new();
    for (i, &b) in beads.iter().enumerate() {
        let target = b - m as i64;
        if target < 0 || beads.contains(&target) {
            continue;
        }
        let mut moved = beads.clone();
        moved[i] = target;
        moved.sort_unstable_by(|x, y| y.cmp(x));
        let parts: Vec<u32> = moved
            .iter()
            .enumerate()
            .map(|(j, &x)| (x - (len - 1 - j) as i64) as u32)
            .take_while(|&p| p > 0)
            .collect();
        out.push(parts);
    }
    out
}

/// `χ_λ(μ) = Σ_T (−1)^{height(T)}` over border strip tableaux.
pub fn chi_bst(shape: &SkewShape, mu: &Partition) -> Result<i64, Error> {
    Ok(border_strip_tableaux(shape, mu)?
        .iter()
        .map(BorderStripTableau::sign)
        .sum())
}

/// Full character table of `S_n`, rows indexed by `λ` and columns by `μ`, both
/// in [`partitions_of`] order. Values come from the border strip expansion of
/// each diagram poset (one expansion per `λ`).
pub fn character_table(n: u32) -> Vec<(Partition, Partition, i64)> {
    let parts = partitions_of(n);
    let mut out = Vec::with_capacity(parts.len() * parts.len());
    for lambda in &parts {
        let e = mn_expansion(&shape_to_poset(&SkewShape::straight(lambda.clone())));
        for mu in &parts {
            let c = e.coefficient(&mu.as_composition().unwrap());
            out.push((lambda.clone(), mu.clone(), c.to_integer().to_i64().unwrap()));
        }
    }
    out
}

/// `Σ_μ χ_λ(μ) χ_ν(μ) / z_μ` for two rows of a character table.
pub fn inner_product(row_a: &[(Partition, i64)], row_b: &[(Partition, i64)]) -> Rational {
    let mut total = Rational::zero();
    for ((mu, a), (nu, b)) in row_a.iter().zip(row_b) {
        assert_eq!(mu, nu);
        total += Rational::new((a * b).into(), mu.z().into());
    }
    total
}
