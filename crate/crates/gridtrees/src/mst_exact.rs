//! Exact MST-distribution balance probabilities.
//!
//! A spanning tree is the minimum spanning tree of a weight order exactly
//! when every non-tree edge outranks all tree edges on its fundamental
//! cycle. The edge orders that produce a given tree are therefore the
//! linear extensions of a poset in which each non-tree edge must come after
//! the tree edges on its cycle; counting those extensions per tree and
//! summing over balanced trees gives the exact probability that Kruskal on
//! a uniform random edge permutation outputs a balanced tree. Raw
//! permutation enumeration is kept alongside as the oracle.

use crate::enumerate::enumerate_spanning_trees;
use crate::error::{Error, Result};
use crate::grid::{SpanningTree, SubtreeScratch, Topology};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

/// Default ceiling on poset size for the downset DP (memory: 16 bytes per
/// subset). 22 edges covers the 2-by-8 grid.
pub const DEFAULT_EXTENSION_LIMIT: usize = 22;

/// Hard ceiling; beyond this the DP table alone would pass 16 GiB.
const EXTENSION_LIMIT_CEILING: usize = 30;

/// Default ceiling on m! for raw permutation enumeration (m <= 10).
pub const DEFAULT_PERMUTATION_CAP: u64 = 4_000_000;

/// Precedence constraints from the fundamental cycles of one spanning tree.
///
/// Elements are the graph's edges. Tree edges have empty predecessor sets;
/// each non-tree edge's predecessors are the tree edges on the unique tree
/// path between its endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclePoset {
    element_count: usize,
    predecessors: Vec<u64>,
}

impl CyclePoset {
    /// Builds a poset from explicit predecessor bitmasks.
    pub fn from_masks(element_count: usize, predecessors: Vec<u64>) -> Result<Self> {
        if element_count > 64 {
            return Err(Error::limit(format!(
                "cycle posets support at most 64 elements, got {element_count}"
            )));
        }
        if predecessors.len() != element_count {
            return Err(Error::invalid(format!(
                "need {element_count} predecessor masks, got {}",
                predecessors.len()
            )));
        }
        let universe = if element_count == 64 {
            u64::MAX
        } else {
            (1u64 << element_count) - 1
        };
        if predecessors.iter().any(|&mask| mask & !universe != 0) {
            return Err(Error::invalid("predecessor mask names a missing element"));
        }
        Ok(CyclePoset {
            element_count,
            predecessors,
        })
    }

    pub fn element_count(&self) -> usize {
        self.element_count
    }

    pub fn predecessors(&self) -> &[u64] {
        &self.predecessors
    }
}

/// Constructs the fundamental-cycle poset of `tree` inside `graph`.
pub fn fundamental_cycle_poset<G: Topology + ?Sized>(
    graph: &G,
    tree: &SpanningTree,
) -> Result<CyclePoset> {
    let n = graph.vertex_count();
    let m = graph.edge_count();
    if tree.vertex_count() != n || tree.edge_ids().len() != n - 1 {
        return Err(Error::invalid("tree does not span the graph"));
    }
    if m > 64 {
        return Err(Error::limit(format!(
            "cycle posets support at most 64 edges, got {m}"
        )));
    }
    let edges = graph.edges();
    let mut in_tree = vec![false; m];
    let mut adjacency: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
    for &id in tree.edge_ids() {
        let Some(&(a, b)) = edges.get(id as usize) else {
            return Err(Error::invalid(format!("edge id {id} out of range")));
        };
        in_tree[id as usize] = true;
        adjacency[a as usize].push((b, id));
        adjacency[b as usize].push((a, id));
    }
    let mut predecessors = vec![0u64; m];
    let mut parent = vec![u32::MAX; n];
    let mut parent_edge = vec![u32::MAX; n];
    let mut stack = Vec::with_capacity(n);
    for (id, &(from, to)) in edges.iter().enumerate() {
        if in_tree[id] {
            continue;
        }
        // walk the tree from `from` until `to` is reached
        parent.fill(u32::MAX);
        parent[from as usize] = from;
        stack.clear();
        stack.push(from);
        while let Some(v) = stack.pop() {
            if v == to {
                break;
            }
            for &(w, via) in &adjacency[v as usize] {
                if parent[w as usize] == u32::MAX {
                    parent[w as usize] = v;
                    parent_edge[w as usize] = via;
                    stack.push(w);
                }
            }
        }
        debug_assert_ne!(parent[to as usize], u32::MAX, "tree must connect endpoints");
        let mut mask = 0u64;
        let mut v = to;
        while v != from {
            mask |= 1u64 << parent_edge[v as usize];
            v = parent[v as usize];
        }
        predecessors[id] = mask;
    }
    Ok(CyclePoset {
        element_count: m,
        predecessors,
    })
}

/// Reusable table for the downset dynamic program.
struct ExtensionCounter {
    table: Vec<u128>,
}

impl ExtensionCounter {
    fn new() -> Self {
        ExtensionCounter { table: Vec::new() }
    }

    /// Downset DP: f(empty) = 1 and f(D) sums f(D \ {e}) over the elements
    /// e of D whose predecessors all lie in D \ {e}. Subsets are visited in
    /// ascending numeric order, which visits every subset after all of its
    /// subsets; non-downsets accumulate zero and drop out on their own.
    fn count(&mut self, poset: &CyclePoset) -> u128 {
        let m = poset.element_count;
        if m == 0 {
            return 1;
        }
        let full: usize = (1 << m) - 1;
        self.table.clear();
        self.table.resize(1 << m, 0);
        self.table[0] = 1;
        for set in 1..=full {
            let mut acc = 0u128;
            let mut rest = set;
            while rest != 0 {
                let element = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let without = set & !(1usize << element);
                let preds = poset.predecessors[element] as usize;
                if preds & without == preds {
                    acc += self.table[without];
                }
            }
            self.table[set] = acc;
        }
        self.table[full]
    }
}

/// Number of linear extensions of `poset`, under the default element limit.
pub fn count_linear_extensions(poset: &CyclePoset) -> Result<BigUint> {
    count_linear_extensions_with_limit(poset, DEFAULT_EXTENSION_LIMIT)
}

pub fn count_linear_extensions_with_limit(poset: &CyclePoset, limit: usize) -> Result<BigUint> {
    check_extension_limit(poset.element_count, limit)?;
    let mut counter = ExtensionCounter::new();
    Ok(biguint_from_u128(counter.count(poset)))
}

fn check_extension_limit(element_count: usize, limit: usize) -> Result<()> {
    let limit = limit.min(EXTENSION_LIMIT_CEILING);
    if element_count > limit {
        return Err(Error::limit(format!(
            "linear-extension limit of {limit} elements exceeded ({element_count} edges)"
        )));
    }
    Ok(())
}

fn biguint_from_u128(value: u128) -> BigUint {
    BigUint::from(value)
}

fn factorial(m: usize) -> BigUint {
    (1..=m as u64).map(BigUint::from).fold(BigUint::one(), |a, b| a * b)
}

/// Probability that Kruskal on a uniform random edge permutation outputs
/// exactly this tree: linear extensions of the cycle poset divided by m!.
pub fn mst_tree_probability<G: Topology + ?Sized>(
    graph: &G,
    tree: &SpanningTree,
) -> Result<BigRational> {
    mst_tree_probability_with_limit(graph, tree, DEFAULT_EXTENSION_LIMIT)
}

pub fn mst_tree_probability_with_limit<G: Topology + ?Sized>(
    graph: &G,
    tree: &SpanningTree,
    limit: usize,
) -> Result<BigRational> {
    let poset = fundamental_cycle_poset(graph, tree)?;
    let extensions = count_linear_extensions_with_limit(&poset, limit)?;
    Ok(BigRational::new(
        BigInt::from(extensions),
        BigInt::from(factorial(graph.edge_count())),
    ))
}

/// Exact probability that an MST-distribution tree is balanced, summed as
/// extensions-of-balanced-trees / m! over the full tree enumeration.
pub fn mst_balance_probability_exact<G>(graph: &G) -> Result<BigRational>
where
    G: Topology + Sync + ?Sized,
{
    mst_balance_probability_exact_with_limit(graph, DEFAULT_EXTENSION_LIMIT)
}

pub fn mst_balance_probability_exact_with_limit<G>(
    graph: &G,
    limit: usize,
) -> Result<BigRational>
where
    G: Topology + Sync + ?Sized,
{
    if graph.vertex_count() % 2 != 0 {
        return Err(Error::invalid(
            "balance is undefined for an odd vertex count",
        ));
    }
    check_extension_limit(graph.edge_count(), limit)?;
    let trees = enumerate_spanning_trees(graph)?;
    let edges = graph.edges();
    let n = graph.vertex_count();
    // Per-tree DP runs are independent; each worker keeps one table.
    let balanced_extensions: u128 = trees
        .par_iter()
        .map_init(
            || (ExtensionCounter::new(), SubtreeScratch::new()),
            |(counter, scratch), tree| {
                if !scratch.has_balanced_cut(edges, n, tree.edge_ids()) {
                    return Ok(0u128);
                }
                let poset = fundamental_cycle_poset(graph, tree)?;
                Ok(counter.count(&poset))
            },
        )
        .try_reduce(|| 0u128, |a, b| Ok(a + b))?;
    Ok(BigRational::new(
        BigInt::from(biguint_from_u128(balanced_extensions)),
        BigInt::from(factorial(graph.edge_count())),
    ))
}

/// Lexicographic next permutation; false once the order is descending.
fn next_permutation(items: &mut [u32]) -> bool {
    if items.len() < 2 {
        return false;
    }
    let mut i = items.len() - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = items.len() - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}

/// Oracle route: enumerate every permutation of the edge ids, run Kruskal's
/// scan on each, and tally the balanced outcomes exactly.
pub fn mst_balance_probability_bruteforce<G: Topology + ?Sized>(
    graph: &G,
) -> Result<BigRational> {
    mst_balance_probability_bruteforce_capped(graph, DEFAULT_PERMUTATION_CAP)
}

pub fn mst_balance_probability_bruteforce_capped<G: Topology + ?Sized>(
    graph: &G,
    cap: u64,
) -> Result<BigRational> {
    let n = graph.vertex_count();
    if n % 2 != 0 {
        return Err(Error::invalid(
            "balance is undefined for an odd vertex count",
        ));
    }
    let m = graph.edge_count();
    let total = factorial(m);
    if total > BigUint::from(cap) {
        return Err(Error::limit(format!(
            "{m}! permutations exceed the cap of {cap}; use the linear-extension method"
        )));
    }
    let edges = graph.edges();
    let mut permutation: Vec<u32> = (0..m as u32).collect();
    let mut sets = crate::grid::DisjointSets::new(n);
    let mut picked: Vec<u32> = Vec::with_capacity(n - 1);
    let mut scratch = SubtreeScratch::new();
    let mut balanced = 0u64;
    loop {
        sets.reset();
        picked.clear();
        for &id in &permutation {
            if picked.len() == n - 1 {
                break;
            }
            let (a, b) = edges[id as usize];
            if sets.union(a as usize, b as usize) {
                picked.push(id);
            }
        }
        if picked.len() != n - 1 {
            return Err(Error::invalid("graph is not connected"));
        }
        if scratch.has_balanced_cut(edges, n, &picked) {
            balanced += 1;
        }
        if !next_permutation(&mut permutation) {
            break;
        }
    }
    Ok(BigRational::new(
        BigInt::from(balanced),
        BigInt::from(total),
    ))
}

/// The method used to produce an exact MST probability.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MstMethod {
    Extensions,
    Bruteforce,
}

impl std::fmt::Display for MstMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MstMethod::Extensions => write!(f, "extensions"),
            MstMethod::Bruteforce => write!(f, "bruteforce"),
        }
    }
}
