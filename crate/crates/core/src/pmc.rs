//! Minimal separators, blocks, local graphs and potential maximal cliques.
//!
//! A vertex set is a potential maximal clique (PMC) when no component of its
//! removal sees all of it and its local graph is complete. PMCs are the bag
//! candidates everything downstream works with.

use crate::graph::Graph;
use crate::set::VertexSet;

/// A minimally separated connected set together with its neighborhood.
/// Either the separator is a minimal separator of the graph, or the
/// component is the whole vertex set and the separator is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub component: VertexSet,
    pub separator: VertexSet,
}

/// True iff at least two components of `g ∖ s` have neighborhood exactly `s`.
/// The empty set is a minimal separator of a disconnected graph.
pub fn is_minimal_separator(g: &Graph, s: &VertexSet) -> bool {
    let mut full = 0;
    for c in g.components(s) {
        if g.neighborhood(&c) == *s {
            full += 1;
            if full == 2 {
                return true;
            }
        }
    }
    false
}

/// The components of `g ∖ s` whose neighborhood is exactly `s`.
pub fn full_components(g: &Graph, s: &VertexSet) -> Vec<VertexSet> {
    g.components(s)
        .into_iter()
        .filter(|c| g.neighborhood(c) == *s)
        .collect()
}

/// `s` crosses `u` iff at least two components of `g ∖ s` intersect `u`.
pub fn crosses(g: &Graph, s: &VertexSet, u: &VertexSet) -> bool {
    let mut hit = 0;
    for c in g.components(s) {
        if c.intersects(u) {
            hit += 1;
            if hit == 2 {
                return true;
            }
        }
    }
    false
}

/// A graph on a vertex subset, remembering the original ids.
#[derive(Clone, Debug)]
pub struct LocalGraph {
    pub graph: Graph,
    /// Original vertex id of each local vertex, ascending.
    pub vertices: Vec<u32>,
}

impl LocalGraph {
    pub fn to_global(&self, local: &VertexSet, n: usize) -> VertexSet {
        VertexSet::from_iter_n(n, local.iter().map(|v| self.vertices[v as usize]))
    }

    pub fn to_local(&self, global: &VertexSet) -> Option<VertexSet> {
        let mut s = VertexSet::empty(self.vertices.len());
        for v in global {
            let i = self.vertices.binary_search(&v).ok()?;
            s.insert(i as u32);
        }
        Some(s)
    }
}

/// The local graph on `s`: the induced subgraph plus, for every component of
/// `g ∖ s`, its neighborhood filled into a clique.
pub fn local_graph(g: &Graph, s: &VertexSet) -> LocalGraph {
    let vertices: Vec<u32> = s.iter().collect();
    let k = vertices.len();
    let mut index = vec![u32::MAX; g.n()];
    for (i, &v) in vertices.iter().enumerate() {
        index[v as usize] = i as u32;
    }
    let to_local = |set: &VertexSet, out: &mut VertexSet| {
        for v in set {
            out.insert(index[v as usize]);
        }
    };
    let mut adj = vec![VertexSet::empty(k); k];
    for (i, &v) in vertices.iter().enumerate() {
        let nb = g.adj(v).intersection(s);
        to_local(&nb, &mut adj[i]);
    }
    for c in g.components(s) {
        let nb = g.neighborhood(&c);
        let mut local_nb = VertexSet::empty(k);
        to_local(&nb, &mut local_nb);
        for v in &local_nb {
            let mut others = local_nb.clone();
            others.remove(v);
            adj[v as usize].union_with(&others);
        }
    }
    LocalGraph {
        graph: Graph::from_adjacency(adj),
        vertices,
    }
}

/// Potential maximal clique test: no full component, local graph complete.
pub fn is_pmc(g: &Graph, x: &VertexSet) -> bool {
    if x.is_empty() {
        return false;
    }
    // cover[v] accumulates everything v is adjacent to after filling each
    // outside component's neighborhood; the local graph is complete iff each
    // cover contains the rest of x.
    let mut cover: Vec<VertexSet> = x.iter().map(|v| g.adj(v).intersection(x)).collect();
    let order: Vec<u32> = x.iter().collect();
    let mut pos = vec![u32::MAX; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v as usize] = i as u32;
    }
    for c in g.components(x) {
        let nb = g.neighborhood(&c);
        if nb == *x {
            return false;
        }
        for v in &nb {
            cover[pos[v as usize] as usize].union_with(&nb);
        }
    }
    for (i, &v) in order.iter().enumerate() {
        let mut missing = x.clone();
        missing.subtract(&cover[i]);
        missing.remove(v);
        if !missing.is_empty() {
            return false;
        }
    }
    true
}

/// The blocks a PMC decomposes the graph into: each component of `g ∖ x`
/// with its neighborhood (always a minimal separator).
pub fn blocks_of_pmc(g: &Graph, x: &VertexSet) -> Vec<Block> {
    g.components(x)
        .into_iter()
        .map(|component| {
            let separator = g.neighborhood(&component);
            Block {
                component,
                separator,
            }
        })
        .collect()
}

/// `x` caps the block `c` when `N(C) ⊆ x ⊆ N[C]`.
pub fn is_cap(g: &Graph, x: &VertexSet, c: &Block) -> bool {
    let closed = g.closed_neighborhood(&c.component);
    c.separator.is_subset(x) && x.is_subset(&closed)
}

/// Up to `limit` distinct minimal separators crossing `x0`, found through
/// the components left by removing closed vertex neighborhoods of `x0`'s
/// members. Empty when `x0` cannot be crossed (e.g. in a complete graph).
pub fn crossing_minimal_separators(g: &Graph, x0: &VertexSet, limit: usize) -> Vec<VertexSet> {
    let mut out: Vec<VertexSet> = Vec::new();
    for v in x0 {
        let closed = g.closed_neighborhood(&VertexSet::singleton(g.n(), v));
        for c in g.components(&closed) {
            let s = g.neighborhood(&c);
            if s.is_empty() || out.contains(&s) {
                continue;
            }
            debug_assert!(is_minimal_separator(g, &s));
            if crosses(g, &s, x0) {
                out.push(s);
                if out.len() >= limit {
                    return out;
                }
            }
        }
    }
    out
}
