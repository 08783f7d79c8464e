//! Brute-force ground truth: enumerate every spanning tree of a small graph
//! in lexicographic order and tally the balanced ones.

use crate::error::{Error, Result};
use crate::grid::{is_connected, SpanningTree, SubtreeScratch, Topology};
use num_bigint::BigUint;
use std::io::Write;

/// Default ceiling on the number of trees an enumeration may produce.
pub const DEFAULT_TREE_CAP: u64 = 1_000_000;

/// Tallies from a full enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationResult {
    pub total_trees: BigUint,
    pub balanced_trees: BigUint,
    /// The enumerated trees themselves, present when the total stayed
    /// within the cap (always the case on success).
    pub trees: Option<Vec<SpanningTree>>,
}

impl EnumerationResult {
    /// Writes one line per tree: comma-separated canonical edge ids.
    pub fn write_tree_lines<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        if let Some(trees) = &self.trees {
            for tree in trees {
                writeln!(out, "{}", tree.to_canonical_string())?;
            }
        }
        Ok(())
    }
}

/// Union-find with an undo stack so the backtracking search can roll back.
struct RewindableSets {
    parent: Vec<u32>,
    size: Vec<u32>,
    joins: Vec<(u32, u32)>,
}

impl RewindableSets {
    fn new(n: usize) -> Self {
        RewindableSets {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            joins: Vec::with_capacity(n),
        }
    }

    // No path compression: finds must stay reversible.
    fn find(&self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra as usize] >= self.size[rb as usize] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small as usize] = big;
        self.size[big as usize] += self.size[small as usize];
        self.joins.push((small, big));
        true
    }

    fn undo(&mut self) {
        let (small, big) = self.joins.pop().expect("nothing to undo");
        self.parent[small as usize] = small;
        self.size[big as usize] -= self.size[small as usize];
    }
}

struct Enumeration<'g, F: FnMut(&[u32])> {
    edges: &'g [(u32, u32)],
    vertex_count: usize,
    cap: u64,
    emitted: u64,
    chosen: Vec<u32>,
    excluded: Vec<bool>,
    sets: RewindableSets,
    visit: F,
}

impl<F: FnMut(&[u32])> Enumeration<'_, F> {
    /// Decide edges in ascending id order, include-branch first. The first
    /// position where two trees differ is then the smaller id held by the
    /// earlier-emitted tree, which makes the output order lexicographic over
    /// sorted edge-id sets.
    fn run(&mut self, next_edge: usize) -> Result<()> {
        if self.chosen.len() == self.vertex_count - 1 {
            self.emitted += 1;
            if self.emitted > self.cap {
                return Err(Error::limit(format!(
                    "spanning-tree cap of {} trees exceeded",
                    self.cap
                )));
            }
            (self.visit)(&self.chosen);
            return Ok(());
        }
        let needed = self.vertex_count - 1 - self.chosen.len();
        if next_edge + needed > self.edges.len() {
            return Ok(());
        }
        let (a, b) = self.edges[next_edge];
        if self.sets.union(a, b) {
            self.chosen.push(next_edge as u32);
            self.run(next_edge + 1)?;
            self.chosen.pop();
            self.sets.undo();
        }
        self.excluded[next_edge] = true;
        if self.still_spannable() {
            self.run(next_edge + 1)?;
        }
        self.excluded[next_edge] = false;
        Ok(())
    }

    /// Can the non-excluded edges still connect every vertex?
    fn still_spannable(&self) -> bool {
        let n = self.vertex_count;
        let mut seen = vec![false; n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut visited = 1;
        while let Some(v) = stack.pop() {
            for (id, &(a, b)) in self.edges.iter().enumerate() {
                if self.excluded[id] {
                    continue;
                }
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    visited += 1;
                    stack.push(w);
                }
            }
        }
        visited == n
    }
}

/// Calls `visit` once per spanning tree with the ascending edge-id slice,
/// in lexicographic order, and returns the number of trees. Errors if the
/// graph is disconnected or more than `cap` trees exist.
pub fn for_each_spanning_tree<G, F>(graph: &G, cap: u64, visit: F) -> Result<u64>
where
    G: Topology + ?Sized,
    F: FnMut(&[u32]),
{
    if !is_connected(graph) {
        return Err(Error::invalid("graph is not connected"));
    }
    let mut enumeration = Enumeration {
        edges: graph.edges(),
        vertex_count: graph.vertex_count(),
        cap,
        emitted: 0,
        chosen: Vec::with_capacity(graph.vertex_count()),
        excluded: vec![false; graph.edge_count()],
        sets: RewindableSets::new(graph.vertex_count()),
        visit,
    };
    enumeration.run(0)?;
    Ok(enumeration.emitted)
}

/// Every spanning tree of `graph`, lexicographic by sorted edge-id set.
pub fn enumerate_spanning_trees<G: Topology + ?Sized>(graph: &G) -> Result<Vec<SpanningTree>> {
    enumerate_spanning_trees_capped(graph, DEFAULT_TREE_CAP)
}

pub fn enumerate_spanning_trees_capped<G: Topology + ?Sized>(
    graph: &G,
    cap: u64,
) -> Result<Vec<SpanningTree>> {
    let n = graph.vertex_count();
    let mut trees = Vec::new();
    for_each_spanning_tree(graph, cap, |edge_ids| {
        trees.push(SpanningTree::from_sorted_unchecked(n, edge_ids.to_vec()));
    })?;
    Ok(trees)
}

/// Enumerates all spanning trees and tallies the balanced ones.
pub fn count_balanced_brute<G: Topology + ?Sized>(graph: &G) -> Result<EnumerationResult> {
    count_balanced_brute_capped(graph, DEFAULT_TREE_CAP)
}

pub fn count_balanced_brute_capped<G: Topology + ?Sized>(
    graph: &G,
    cap: u64,
) -> Result<EnumerationResult> {
    let n = graph.vertex_count();
    if n % 2 != 0 {
        return Err(Error::invalid(
            "balance is undefined for an odd vertex count",
        ));
    }
    let edges = graph.edges();
    let mut scratch = SubtreeScratch::new();
    let mut balanced = 0u64;
    let mut trees = Vec::new();
    let total = for_each_spanning_tree(graph, cap, |edge_ids| {
        if scratch.has_balanced_cut(edges, n, edge_ids) {
            balanced += 1;
        }
        trees.push(SpanningTree::from_sorted_unchecked(n, edge_ids.to_vec()));
    })?;
    Ok(EnumerationResult {
        total_trees: BigUint::from(total),
        balanced_trees: BigUint::from(balanced),
        trees: Some(trees),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{GridGraph, SmallGraph};
    use crate::sequences::{balanced_count, tree_count};

    #[test]
    fn single_column_has_one_tree() {
        let g = GridGraph::new(1).unwrap();
        let trees = enumerate_spanning_trees(&g).unwrap();
        assert_eq!(trees.len(), 1);
        assert_eq!(trees[0].edge_ids(), &[0]);
    }

    #[test]
    fn four_cycle_has_four_trees_in_lexicographic_order() {
        let g = GridGraph::new(2).unwrap();
        let trees = enumerate_spanning_trees(&g).unwrap();
        let ids: Vec<&[u32]> = trees.iter().map(|t| t.edge_ids()).collect();
        assert_eq!(
            ids,
            vec![&[0, 1, 2][..], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]
        );
    }

    #[test]
    fn three_columns_have_fifteen_trees() {
        let g = GridGraph::new(3).unwrap();
        assert_eq!(enumerate_spanning_trees(&g).unwrap().len(), 15);
    }

    #[test]
    fn enumeration_is_deterministic() {
        let g = GridGraph::new(4).unwrap();
        let first = enumerate_spanning_trees(&g).unwrap();
        let second = enumerate_spanning_trees(&g).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn every_tree_is_valid() {
        let g = GridGraph::new(5).unwrap();
        let trees = enumerate_spanning_trees(&g).unwrap();
        for tree in &trees {
            assert_eq!(tree.edge_ids().len(), g.vertex_count() - 1);
            SpanningTree::new(&g, tree.edge_ids().to_vec()).unwrap();
        }
    }

    #[test]
    fn disconnected_graph_is_rejected() {
        let g = SmallGraph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            enumerate_spanning_trees(&g),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn cap_violation_names_the_cap() {
        let g = GridGraph::new(3).unwrap();
        let err = enumerate_spanning_trees_capped(&g, 3).unwrap_err();
        match err {
            Error::ResourceLimit(msg) => assert!(msg.contains('3'), "{msg}"),
            other => panic!("expected resource limit, got {other:?}"),
        }
    }

    #[test]
    fn balanced_tallies_match_published_counts() {
        let cases = [(2usize, 4u64, 4u64), (3, 15, 9), (5, 209, 111)];
        for (n, total, balanced) in cases {
            let g = GridGraph::new(n).unwrap();
            let result = count_balanced_brute(&g).unwrap();
            assert_eq!(result.total_trees, BigUint::from(total), "total at n={n}");
            assert_eq!(
                result.balanced_trees,
                BigUint::from(balanced),
                "balanced at n={n}"
            );
        }
    }

    #[test]
    fn tallies_match_formulas_up_to_six() {
        for n in 1..=6usize {
            let g = GridGraph::new(n).unwrap();
            let result = count_balanced_brute(&g).unwrap();
            assert_eq!(result.total_trees, tree_count(n), "T_{n}");
            assert_eq!(result.balanced_trees, balanced_count(n), "S_{n}");
        }
    }

    #[test]
    fn tree_lines_dump_is_canonical() {
        let g = GridGraph::new(2).unwrap();
        let result = count_balanced_brute(&g).unwrap();
        let mut buf = Vec::new();
        result.write_tree_lines(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "0,1,2\n0,1,3\n0,2,3\n1,2,3\n"
        );
    }
}
