//! The 2-by-n grid graph, small oracle graphs, spanning trees, and
//! balanced-cut-edge queries.
//!
//! Vertex and edge numbering is fixed so that serialized trees, golden
//! files, and seeds are portable: vertex (row r, column c) has id `2c + r`;
//! the edge list holds the n vertical edges first (column order), then for
//! each column the top and bottom horizontals.

use crate::error::{Error, Result};

/// Read access to a graph's vertices and edge list.
pub trait Topology {
    fn vertex_count(&self) -> usize;
    fn edges(&self) -> &[(u32, u32)];

    fn edge_count(&self) -> usize {
        self.edges().len()
    }
}

/// The 2-by-n grid graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridGraph {
    columns: usize,
    edges: Vec<(u32, u32)>,
}

impl GridGraph {
    /// Builds the grid with `columns >= 1` columns: `2*columns` vertices and
    /// `3*columns - 2` edges in canonical order.
    pub fn new(columns: usize) -> Result<Self> {
        if columns == 0 {
            return Err(Error::invalid("grid must have at least one column"));
        }
        // vertex ids are u32: the last id is 2*columns - 1
        if columns > (u32::MAX / 2) as usize {
            return Err(Error::invalid(format!(
                "grid of {columns} columns overflows 32-bit vertex ids"
            )));
        }
        let mut edges = Vec::with_capacity(3 * columns - 2);
        for c in 0..columns as u32 {
            edges.push((2 * c, 2 * c + 1));
        }
        for c in 0..(columns as u32).saturating_sub(1) {
            edges.push((2 * c, 2 * c + 2));
            edges.push((2 * c + 1, 2 * c + 3));
        }
        Ok(GridGraph { columns, edges })
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    /// Canonical id of the vertex at (row, column).
    pub fn vertex_id(row: usize, column: usize) -> u32 {
        (2 * column + row) as u32
    }
}

impl Topology for GridGraph {
    fn vertex_count(&self) -> usize {
        2 * self.columns
    }

    fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }
}

/// Maximum vertex count accepted by [`SmallGraph`].
pub const SMALL_GRAPH_MAX_VERTICES: usize = 24;
/// Maximum edge count accepted by [`SmallGraph`].
pub const SMALL_GRAPH_MAX_EDGES: usize = 32;

/// An arbitrary simple graph small enough for brute-force oracles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallGraph {
    vertex_count: usize,
    edges: Vec<(u32, u32)>,
}

impl SmallGraph {
    /// Validates endpoint ranges, loop freedom, and parallel-edge freedom.
    /// Endpoints are stored normalized as (min, max).
    pub fn new(vertex_count: usize, edges: Vec<(u32, u32)>) -> Result<Self> {
        if vertex_count == 0 || vertex_count > SMALL_GRAPH_MAX_VERTICES {
            return Err(Error::invalid(format!(
                "small graph needs 1..={SMALL_GRAPH_MAX_VERTICES} vertices, got {vertex_count}"
            )));
        }
        if edges.len() > SMALL_GRAPH_MAX_EDGES {
            return Err(Error::invalid(format!(
                "small graph supports at most {SMALL_GRAPH_MAX_EDGES} edges, got {}",
                edges.len()
            )));
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for &(a, b) in &edges {
            if a as usize >= vertex_count || b as usize >= vertex_count {
                return Err(Error::invalid(format!(
                    "edge ({a}, {b}) has an endpoint outside 0..{vertex_count}"
                )));
            }
            if a == b {
                return Err(Error::invalid(format!("self-loop at vertex {a}")));
            }
            normalized.push((a.min(b), a.max(b)));
        }
        let mut seen = normalized.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("parallel edges are not allowed"));
        }
        Ok(SmallGraph {
            vertex_count,
            edges: normalized,
        })
    }

    pub fn is_connected(&self) -> bool {
        is_connected(self)
    }
}

impl Topology for SmallGraph {
    fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }
}

/// Per-vertex neighbor lists with the connecting edge ids.
#[derive(Clone, Debug)]
pub struct Adjacency {
    pub neighbors: Vec<Vec<(u32, u32)>>,
}

impl Adjacency {
    pub fn build<G: Topology + ?Sized>(graph: &G) -> Self {
        let mut neighbors = vec![Vec::new(); graph.vertex_count()];
        for (id, &(a, b)) in graph.edges().iter().enumerate() {
            neighbors[a as usize].push((b, id as u32));
            neighbors[b as usize].push((a, id as u32));
        }
        Adjacency { neighbors }
    }
}

/// Breadth-first connectivity over the full edge list.
pub fn is_connected<G: Topology + ?Sized>(graph: &G) -> bool {
    let n = graph.vertex_count();
    if n == 0 {
        return false;
    }
    let adj = Adjacency::build(graph);
    let mut seen = vec![false; n];
    let mut stack = vec![0u32];
    seen[0] = true;
    let mut visited = 1;
    while let Some(v) = stack.pop() {
        for &(w, _) in &adj.neighbors[v as usize] {
            if !seen[w as usize] {
                seen[w as usize] = true;
                visited += 1;
                stack.push(w);
            }
        }
    }
    visited == n
}

/// A spanning tree of some graph, stored as ascending canonical edge ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpanningTree {
    vertex_count: usize,
    edge_ids: Vec<u32>,
}

impl SpanningTree {
    /// Validates that `edge_ids` names exactly `vertex_count - 1` distinct
    /// edges of `graph` forming a connected acyclic subgraph.
    pub fn new<G: Topology + ?Sized>(graph: &G, mut edge_ids: Vec<u32>) -> Result<Self> {
        let n = graph.vertex_count();
        if n == 0 {
            return Err(Error::invalid("graph has no vertices"));
        }
        edge_ids.sort_unstable();
        if edge_ids.len() != n - 1 {
            return Err(Error::invalid(format!(
                "a spanning tree of {n} vertices needs {} edges, got {}",
                n - 1,
                edge_ids.len()
            )));
        }
        if edge_ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate edge id in spanning tree"));
        }
        let edges = graph.edges();
        let mut dsu = DisjointSets::new(n);
        for &id in &edge_ids {
            let Some(&(a, b)) = edges.get(id as usize) else {
                return Err(Error::invalid(format!("edge id {id} out of range")));
            };
            if !dsu.union(a as usize, b as usize) {
                return Err(Error::invalid("edge set contains a cycle"));
            }
        }
        // n-1 successful unions on n vertices leave a single component.
        Ok(SpanningTree {
            vertex_count: n,
            edge_ids,
        })
    }

    pub(crate) fn from_sorted_unchecked(vertex_count: usize, edge_ids: Vec<u32>) -> Self {
        debug_assert!(edge_ids.windows(2).all(|w| w[0] < w[1]));
        SpanningTree {
            vertex_count,
            edge_ids,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_ids(&self) -> &[u32] {
        &self.edge_ids
    }

    /// Canonical serialization: ascending edge ids, decimal, comma-separated.
    pub fn to_canonical_string(&self) -> String {
        let parts: Vec<String> = self.edge_ids.iter().map(|id| id.to_string()).collect();
        parts.join(",")
    }

    /// Parses the canonical serialization and validates against `graph`.
    pub fn from_canonical_string<G: Topology + ?Sized>(graph: &G, s: &str) -> Result<Self> {
        let ids = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::invalid(format!("bad edge id {tok:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        SpanningTree::new(graph, ids)
    }
}

/// Union-find with union by size.
#[derive(Clone, Debug)]
pub(crate) struct DisjointSets {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i as u32;
        }
        self.size.fill(1);
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grandparent = self.parent[self.parent[x] as usize];
            self.parent[x] = grandparent;
            x = grandparent as usize;
        }
        x
    }

    /// Returns false when the endpoints were already connected.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big as u32;
        self.size[big] += self.size[small];
        true
    }
}

/// Reusable buffers for rooted subtree-size computation over a tree.
#[derive(Clone, Debug, Default)]
pub(crate) struct SubtreeScratch {
    head: Vec<i32>,
    next: Vec<i32>,
    target: Vec<u32>,
    via_edge: Vec<u32>,
    parent: Vec<u32>,
    parent_edge: Vec<u32>,
    order: Vec<u32>,
    size: Vec<u32>,
}

impl SubtreeScratch {
    pub(crate) fn new() -> Self {
        SubtreeScratch::default()
    }

    /// Computes subtree sizes for the tree rooted at vertex 0.
    ///
    /// After the call, `order` holds a root-first traversal, and for each
    /// non-root vertex v, `size[v]` is the number of vertices in the subtree
    /// below the edge `parent_edge[v]`.
    fn compute(&mut self, edges: &[(u32, u32)], vertex_count: usize, tree: &[u32]) {
        let half_edges = 2 * tree.len();
        self.head.clear();
        self.head.resize(vertex_count, -1);
        self.next.clear();
        self.next.resize(half_edges, -1);
        self.target.clear();
        self.target.resize(half_edges, 0);
        self.via_edge.clear();
        self.via_edge.resize(half_edges, 0);
        let mut slot = 0usize;
        for &id in tree {
            let (a, b) = edges[id as usize];
            for (from, to) in [(a, b), (b, a)] {
                self.target[slot] = to;
                self.via_edge[slot] = id;
                self.next[slot] = self.head[from as usize];
                self.head[from as usize] = slot as i32;
                slot += 1;
            }
        }
        self.parent.clear();
        self.parent.resize(vertex_count, u32::MAX);
        self.parent_edge.clear();
        self.parent_edge.resize(vertex_count, u32::MAX);
        self.order.clear();
        self.order.reserve(vertex_count);
        self.order.push(0);
        self.parent[0] = 0;
        let mut cursor = 0;
        while cursor < self.order.len() {
            let v = self.order[cursor];
            cursor += 1;
            let mut h = self.head[v as usize];
            while h >= 0 {
                let w = self.target[h as usize];
                if self.parent[w as usize] == u32::MAX {
                    self.parent[w as usize] = v;
                    self.parent_edge[w as usize] = self.via_edge[h as usize];
                    self.order.push(w);
                }
                h = self.next[h as usize];
            }
        }
        debug_assert_eq!(self.order.len(), vertex_count);
        self.size.clear();
        self.size.resize(vertex_count, 1);
        for &v in self.order.iter().skip(1).rev() {
            let p = self.parent[v as usize];
            self.size[p as usize] += self.size[v as usize];
        }
    }

    /// True when some tree edge splits the vertices into two equal halves.
    pub(crate) fn has_balanced_cut(
        &mut self,
        edges: &[(u32, u32)],
        vertex_count: usize,
        tree: &[u32],
    ) -> bool {
        debug_assert_eq!(vertex_count % 2, 0);
        self.compute(edges, vertex_count, tree);
        let half = (vertex_count / 2) as u32;
        self.order
            .iter()
            .skip(1)
            .any(|&v| self.size[v as usize] == half)
    }

    /// Edge ids of every balanced cut edge, ascending.
    pub(crate) fn balanced_cut_edges(
        &mut self,
        edges: &[(u32, u32)],
        vertex_count: usize,
        tree: &[u32],
    ) -> Vec<u32> {
        self.compute(edges, vertex_count, tree);
        let half = (vertex_count / 2) as u32;
        let mut cuts: Vec<u32> = self
            .order
            .iter()
            .skip(1)
            .filter(|&&v| self.size[v as usize] == half)
            .map(|&v| self.parent_edge[v as usize])
            .collect();
        cuts.sort_unstable();
        cuts
    }
}

fn check_balance_preconditions<G: Topology + ?Sized>(
    graph: &G,
    tree: &SpanningTree,
) -> Result<()> {
    if graph.vertex_count() != tree.vertex_count() {
        return Err(Error::invalid(format!(
            "tree has {} vertices but graph has {}",
            tree.vertex_count(),
            graph.vertex_count()
        )));
    }
    if graph.vertex_count() % 2 != 0 {
        return Err(Error::invalid(
            "balance is undefined for an odd vertex count",
        ));
    }
    Ok(())
}

/// Tree edges whose removal splits the vertices into two equal halves,
/// in ascending edge-id order. Computed from subtree sizes after rooting
/// the tree at vertex 0.
pub fn balanced_cut_edges<G: Topology + ?Sized>(
    graph: &G,
    tree: &SpanningTree,
) -> Result<Vec<u32>> {
    check_balance_preconditions(graph, tree)?;
    let mut scratch = SubtreeScratch::new();
    Ok(scratch.balanced_cut_edges(graph.edges(), graph.vertex_count(), tree.edge_ids()))
}

/// True iff the tree has at least one balanced cut edge.
pub fn is_balanced<G: Topology + ?Sized>(graph: &G, tree: &SpanningTree) -> Result<bool> {
    check_balance_preconditions(graph, tree)?;
    let mut scratch = SubtreeScratch::new();
    Ok(scratch.has_balanced_cut(graph.edges(), graph.vertex_count(), tree.edge_ids()))
}

/// Independent slow route used by the verification suite: delete each tree
/// edge in turn and count both component sizes by search.
pub fn balanced_cut_edges_by_deletion<G: Topology + ?Sized>(
    graph: &G,
    tree: &SpanningTree,
) -> Result<Vec<u32>> {
    check_balance_preconditions(graph, tree)?;
    let n = graph.vertex_count();
    let edges = graph.edges();
    let mut cuts = Vec::new();
    for &removed in tree.edge_ids() {
        let mut seen = vec![false; n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut component = 1usize;
        while let Some(v) = stack.pop() {
            for &id in tree.edge_ids() {
                if id == removed {
                    continue;
                }
                let (a, b) = edges[id as usize];
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    component += 1;
                    stack.push(w);
                }
            }
        }
        if component == n / 2 {
            cuts.push(removed);
        }
    }
    cuts.sort_unstable();
    Ok(cuts)
}
