use std::collections::BTreeSet;

use qmn_core::compositions::{partitions_of, rearrangements};
use qmn_core::mn_rule::rooted_surjections;
use qmn_core::schur::{
    border_strip_tableaux, character_table, chi, chi_bst, shape_to_poset, shape_to_poset_with,
    Labeling, SkewShape,
};
use qmn_core::{mn_expansion, monomial_expansion, Partition};

/// All partitions contained in `outer`.
fn sub_partitions(outer: &Partition) -> Vec<Partition> {
    let mut out = vec![vec![]];
    for &bound in outer.parts() {
        let mut next = Vec::new();
        for v in &out {
            let cap = v.last().copied().unwrap_or(bound).min(bound);
            for x in 0..=cap {
                let mut w: Vec<u32> = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|v| Partition::new(v.into_iter().filter(|&x| x > 0).collect()).unwrap())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

#[test]
fn skew_characters_match_tableaux() {
    for n in 1..=6 {
        for outer in partitions_of(n) {
            for inner in sub_partitions(&outer) {
                if inner.size() == n {
                    continue;
                }
                let shape = SkewShape::new(outer.clone(), inner).unwrap();
                for mu in partitions_of(shape.size()) {
                    assert_eq!(
                        chi(&shape, &mu).unwrap(),
                        chi_bst(&shape, &mu).unwrap(),
                        "{shape:?} {mu}"
                    );
                }
            }
        }
    }
}

#[test]
fn expansion_is_symmetric() {
    for n in 1..=6 {
        for lambda in partitions_of(n) {
            let e = mn_expansion(&shape_to_poset(&SkewShape::straight(lambda.clone())));
            for mu in partitions_of(n) {
                let values: BTreeSet<_> = rearrangements(&mu)
                    .iter()
                    .map(|a| e.coefficient(a))
                    .collect();
                assert_eq!(values.len(), 1, "{lambda} {mu}");
            }
        }
    }
}

#[test]
fn heights_are_strict_edge_counts() {
    for n in 1..=5 {
        for lambda in partitions_of(n) {
            let shape = SkewShape::straight(lambda.clone());
            let cells = shape.cells();
            let p = shape_to_poset(&shape);
            for mu in partitions_of(n) {
                let alpha = mu.as_composition().unwrap();
                let mut from_tableaux: Vec<(Vec<usize>, u32)> = border_strip_tableaux(&shape, &mu)
                    .unwrap()
                    .into_iter()
                    .map(|t| (cells.iter().map(|c| t.assignment[c]).collect(), t.height()))
                    .collect();
                let mut from_rule: Vec<(Vec<usize>, u32)> = rooted_surjections(&p)
                    .into_iter()
                    .filter(|f| f.surjection.wtd() == &alpha)
                    .map(|f| {
                        let levels: Vec<usize> = f
                            .surjection
                            .levels()
                            .iter()
                            .map(|&l| l as usize - 1)
                            .collect();
                        let strict = p
                            .hasse_edges()
                            .filter(|&(a, b, k)| {
                                levels[a] == levels[b] && k == qmn_core::EdgeKind::Strict
                            })
                            .count() as u32;
                        assert_eq!(f.sign(), if strict.is_multiple_of(2) { 1 } else { -1 });
                        (levels, strict)
                    })
                    .collect();
                from_tableaux.sort();
                from_rule.sort();
                assert_eq!(from_tableaux, from_rule, "{lambda} {mu}");
            }
        }
    }
}

#[test]
fn labelings_agree() {
    for n in 1..=7 {
        for lambda in partitions_of(n) {
            let shape = SkewShape::straight(lambda);
            let rows = shape_to_poset_with(&shape, Labeling::RowsFromBottom);
            let cols = shape_to_poset_with(&shape, Labeling::ColumnsFromLeft);
            if n <= 6 {
                assert_eq!(monomial_expansion(&rows), monomial_expansion(&cols));
            }
            assert_eq!(mn_expansion(&rows), mn_expansion(&cols));
        }
    }
}

#[test]
fn first_column_and_row() {
    for n in 1..=7 {
        for (lambda, mu, v) in character_table(n) {
            if lambda.parts() == [n] {
                assert_eq!(v, 1);
            }
            if mu.parts() == vec![1; n as usize] {
                assert!(v > 0, "dimension of {lambda}");
            }
        }
    }
}
