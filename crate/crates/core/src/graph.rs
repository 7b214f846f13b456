//! Immutable simple undirected graphs with bitset adjacency rows.
//!
//! Vertices are dense ids `0..n`. The adjacency rows double as the working
//! representation for all set-valued neighborhood queries.

use crate::set::VertexSet;

#[derive(Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Builds a graph from an edge list. Self-loops are dropped and parallel
    /// edges collapse through the set representation.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut adj = vec![VertexSet::empty(n); n];
        for (u, v) in edges {
            assert!((u as usize) < n && (v as usize) < n, "edge endpoint out of range");
            if u != v {
                adj[u as usize].insert(v);
                adj[v as usize].insert(u);
            }
        }
        Graph { n, adj }
    }

    pub(crate) fn from_adjacency(adj: Vec<VertexSet>) -> Self {
        Graph { n: adj.len(), adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.card()).sum::<usize>() / 2
    }

    #[inline]
    pub fn adj(&self, v: u32) -> &VertexSet {
        &self.adj[v as usize]
    }

    pub(crate) fn adjacency(&self) -> &[VertexSet] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].contains(v)
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].card()
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::empty(self.n)
    }

    /// Open neighborhood of a vertex set: all outside vertices adjacent to it.
    pub fn neighborhood(&self, u: &VertexSet) -> VertexSet {
        let mut nb = VertexSet::empty(self.n);
        for v in u {
            nb.union_with(&self.adj[v as usize]);
        }
        nb.subtract(u);
        nb
    }

    /// Closed neighborhood `u ∪ N(u)`.
    pub fn closed_neighborhood(&self, u: &VertexSet) -> VertexSet {
        let mut nb = self.neighborhood(u);
        nb.union_with(u);
        nb
    }

    /// Connected components of the subgraph induced by `V ∖ removed`,
    /// in ascending order of their smallest vertex.
    pub fn components(&self, removed: &VertexSet) -> Vec<VertexSet> {
        let mut allowed = self.full_set();
        allowed.subtract(removed);
        self.components_in(&allowed)
    }

    /// Connected components of the subgraph induced by `allowed`.
    pub fn components_in(&self, allowed: &VertexSet) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let mut remaining = allowed.clone();
        while let Some(seed) = remaining.first() {
            let comp = self.spread(seed, &remaining);
            remaining.subtract(&comp);
            out.push(comp);
        }
        out
    }

    /// The component of `g[allowed]` containing `seed`.
    pub fn component_of(&self, seed: u32, allowed: &VertexSet) -> VertexSet {
        debug_assert!(allowed.contains(seed));
        self.spread(seed, allowed)
    }

    fn spread(&self, seed: u32, allowed: &VertexSet) -> VertexSet {
        let mut comp = VertexSet::empty(self.n);
        comp.insert(seed);
        let mut frontier = comp.clone();
        loop {
            let mut next = VertexSet::empty(self.n);
            for v in &frontier {
                next.union_with(&self.adj[v as usize]);
            }
            next.intersect_with(allowed);
            next.subtract(&comp);
            if next.is_empty() {
                return comp;
            }
            comp.union_with(&next);
            frontier = next;
        }
    }

    /// True iff all pairs in `s` are adjacent.
    pub fn is_clique(&self, s: &VertexSet) -> bool {
        for v in s {
            let mut missing = s.clone();
            missing.subtract(&self.adj[v as usize]);
            missing.remove(v);
            if !missing.is_empty() {
                return false;
            }
        }
        true
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.component_of(0, &self.full_set()).card() == self.n
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count())
    }
}
