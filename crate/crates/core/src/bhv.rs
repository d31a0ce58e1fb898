//! The link-of-the-origin complex of the space of rooted metric trees with
//! `n` labeled leaves: orthants indexed by tree topologies, one coordinate
//! per internal edge. The root is treated as leaf label `0`, so splits are
//! bipartitions of `{0, ..., n}` with both sides of size at least two.
//!
//! Simplices are the split sets realized by actual trees, so the flag
//! verdict is a genuine theorem check: every pairwise-compatible set of
//! splits must fit in a single tree.

use thiserror::Error;

use crate::complex::{is_flag, FlagVerdict, SimplicialComplex};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BhvError {
    #[error("n must be between 3 and 7, got {0}")]
    OutOfRange(usize),
}

#[derive(Debug, Clone)]
pub struct BhvReport {
    pub complex: SimplicialComplex,
    pub verdict: FlagVerdict,
    /// Number of binary tree topologies enumerated (= maximal faces).
    pub tree_count: usize,
}

/// Unrooted binary trees on leaves `0..n_leaves`, as edge lists. Built by
/// inserting each new leaf into every edge of every smaller tree.
fn enumerate_trees(n_leaves: usize) -> Vec<Vec<(usize, usize)>> {
    assert!(n_leaves >= 3);
    let mut trees = vec![vec![(0, n_leaves), (1, n_leaves), (2, n_leaves)]];
    let mut next_internal = n_leaves + 1;
    for leaf in 3..n_leaves {
        let mut bigger = Vec::new();
        for tree in &trees {
            for (i, &(u, v)) in tree.iter().enumerate() {
                let w = next_internal;
                let mut t = Vec::with_capacity(tree.len() + 2);
                for (j, &e) in tree.iter().enumerate() {
                    if j != i {
                        t.push(e);
                    }
                }
                t.push((u, w));
                t.push((w, v));
                t.push((w, leaf));
                bigger.push(t);
            }
        }
        trees = bigger;
        next_internal += 1;
    }
    trees
}

/// Splits of one tree: for every internal edge, the leaf set on the side
/// away from leaf 0, as a bitmask. Both sides must have >= 2 leaves.
fn tree_splits(tree: &[(usize, usize)], n_leaves: usize) -> Vec<u64> {
    let mut adj: std::collections::HashMap<usize, Vec<usize>> = std::collections::HashMap::new();
    for &(u, v) in tree {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    let mut splits = Vec::new();
    for &(u, v) in tree {
        // Leaves reachable from v without crossing the edge (u, v).
        let mut stack = vec![v];
        let mut seen = std::collections::HashSet::from([u, v]);
        let mut side = 0u64;
        while let Some(w) = stack.pop() {
            if w < n_leaves {
                side |= 1 << w;
            }
            for &x in &adj[&w] {
                if seen.insert(x) {
                    stack.push(x);
                }
            }
        }
        let size = side.count_ones() as usize;
        if size < 2 || n_leaves - size < 2 {
            continue;
        }
        // Canonical side: the one not containing leaf 0.
        let canon = if side & 1 == 1 { ((1u64 << n_leaves) - 1) & !side } else { side };
        splits.push(canon);
    }
    splits.sort_unstable();
    splits.dedup();
    splits
}

/// Compatibility of two splits: some pair of opposite sides is disjoint.
pub fn splits_compatible(a: u64, b: u64, n_leaves: usize) -> bool {
    let all = (1u64 << n_leaves) - 1;
    let (ac, bc) = (all & !a, all & !b);
    a & b == 0 || a & bc == 0 || ac & b == 0 || ac & bc == 0
}

/// Builds the split complex for trees with `n` labeled leaves plus the root
/// label `0`, with the flag verdict for it.
pub fn bhv_link_complex(n: usize) -> Result<BhvReport, BhvError> {
    if !(3..=7).contains(&n) {
        return Err(BhvError::OutOfRange(n));
    }
    let n_leaves = n + 1;
    let trees = enumerate_trees(n_leaves);
    let mut universe: Vec<u64> = trees
        .iter()
        .flat_map(|t| tree_splits(t, n_leaves))
        .collect();
    universe.sort_unstable();
    universe.dedup();
    let index: std::collections::HashMap<u64, usize> =
        universe.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let faces: Vec<Vec<usize>> = trees
        .iter()
        .map(|t| tree_splits(t, n_leaves).iter().map(|s| index[s]).collect())
        .collect();
    let tree_count = faces.len();
    let labels: Vec<String> = universe
        .iter()
        .map(|&s| {
            let members: Vec<String> = (0..n_leaves)
                .filter(|&i| s >> i & 1 == 1)
                .map(|i| i.to_string())
                .collect();
            format!("{{{}}}", members.join(","))
        })
        .collect();
    let complex = SimplicialComplex::from_faces(universe.len(), &faces)
        .expect("split universe fits in 128 vertices for n <= 7")
        .with_labels(labels)
        .expect("one label per split");
    let verdict = is_flag(&complex);
    Ok(BhvReport { complex, verdict, tree_count })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::mask_vertices;

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(bhv_link_complex(2), Err(BhvError::OutOfRange(2))));
        assert!(matches!(bhv_link_complex(8), Err(BhvError::OutOfRange(8))));
    }

    #[test]
    fn n3_is_three_isolated_vertices() {
        let r = bhv_link_complex(3).unwrap();
        assert_eq!(r.complex.vertex_count(), 3);
        assert_eq!(r.tree_count, 3);
        assert!(r.complex.maximal_faces_as_lists().iter().all(|f| f.len() == 1));
        assert!(r.verdict.flag);
    }

    #[test]
    fn n4_is_the_petersen_split_complex() {
        let r = bhv_link_complex(4).unwrap();
        assert_eq!(r.complex.vertex_count(), 10);
        assert_eq!(r.tree_count, 15);
        let faces = r.complex.maximal_faces_as_lists();
        assert_eq!(faces.len(), 15);
        assert!(faces.iter().all(|f| f.len() == 2));
        // Triangle-free with every vertex of degree 3.
        let adj = r.complex.adjacency();
        assert!(adj.iter().all(|a| a.count_ones() == 3));
        assert!(r.verdict.flag);
    }

    #[test]
    fn n5_is_flag() {
        let r = bhv_link_complex(5).unwrap();
        assert_eq!(r.complex.vertex_count(), 25);
        assert_eq!(r.tree_count, 105);
        assert!(r.verdict.flag);
    }

    #[test]
    fn skeleton_edges_are_exactly_compatible_pairs() {
        for n in 3..=5 {
            let r = bhv_link_complex(n).unwrap();
            let n_leaves = n + 1;
            // Recover the split masks from the labels.
            let masks: Vec<u64> = (0..r.complex.vertex_count())
                .map(|v| {
                    r.complex.label(v)
                        .trim_matches(|c| c == '{' || c == '}')
                        .split(',')
                        .map(|t| t.parse::<usize>().unwrap())
                        .fold(0u64, |m, i| m | (1 << i))
                })
                .collect();
            for u in 0..masks.len() {
                for v in (u + 1)..masks.len() {
                    let edge = r.complex.contains(1u128 << u | 1u128 << v);
                    let compat = splits_compatible(masks[u], masks[v], n_leaves);
                    assert_eq!(edge, compat, "n={n}, splits {u},{v}");
                }
            }
        }
    }

    #[test]
    fn every_simplex_lists_only_pairwise_compatible_splits() {
        let r = bhv_link_complex(5).unwrap();
        for f in r.complex.maximal_faces() {
            let vs = mask_vertices(*f);
            assert_eq!(vs.len(), 3, "trees with 6 leaves have 3 internal edges");
        }
    }
}
