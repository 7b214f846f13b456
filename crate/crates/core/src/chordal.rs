//! Chordality testing and clique structure of chordal graphs.
//!
//! The chordality test is maximum cardinality search followed by the
//! standard elimination verification; both run on raw adjacency slices so
//! the triangulation code can reuse them on working copies.

use crate::graph::Graph;
use crate::set::VertexSet;
use crate::td::TreeDecomposition;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("graph is not chordal")]
pub struct NotChordal;

/// Maximum cardinality search visit order, reversed into an elimination
/// order (index 0 is eliminated first). A perfect elimination ordering
/// exactly when the graph is chordal.
pub(crate) fn mcs_adj(adj: &[VertexSet]) -> Vec<u32> {
    let n = adj.len();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    // Buckets by weight with lazy deletion.
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    buckets[0].extend((0..n as u32).rev());
    let mut max_w = 0usize;
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = loop {
            while max_w > 0 && buckets[max_w].is_empty() {
                max_w -= 1;
            }
            let cand = buckets[max_w].pop().expect("bucket exhausted");
            if !visited[cand as usize] && weight[cand as usize] == max_w {
                break cand;
            }
        };
        visited[v as usize] = true;
        visit.push(v);
        for u in &adj[v as usize] {
            if !visited[u as usize] {
                let w = weight[u as usize] + 1;
                weight[u as usize] = w;
                buckets[w].push(u);
                max_w = max_w.max(w);
            }
        }
    }
    visit.reverse();
    visit
}

/// Elimination verification: for each vertex, its later neighbors minus the
/// earliest of them must lie in that earliest neighbor's adjacency.
pub(crate) fn verify_peo_adj(adj: &[VertexSet], order: &[u32]) -> bool {
    let n = adj.len();
    let mut pos = vec![0u32; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v as usize] = i as u32;
    }
    let mut remaining = VertexSet::full(n);
    for &v in order {
        remaining.remove(v);
        let later = adj[v as usize].intersection(&remaining);
        if let Some(p) = later.iter().min_by_key(|&u| pos[u as usize]) {
            let mut rest = later;
            rest.remove(p);
            if !rest.is_subset(&adj[p as usize]) {
                return false;
            }
        }
    }
    true
}

pub(crate) fn peo_adj(adj: &[VertexSet]) -> Option<Vec<u32>> {
    let order = mcs_adj(adj);
    verify_peo_adj(adj, &order).then_some(order)
}

/// A perfect elimination ordering, present exactly when `g` is chordal.
pub fn peo(g: &Graph) -> Option<Vec<u32>> {
    peo_adj(g.adjacency())
}

pub fn is_chordal(g: &Graph) -> bool {
    peo(g).is_some()
}

/// For each vertex of a PEO: (later neighbors, earliest later neighbor).
fn elimination_structure(adj: &[VertexSet], order: &[u32]) -> (Vec<VertexSet>, Vec<Option<u32>>) {
    let n = adj.len();
    let mut pos = vec![0u32; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v as usize] = i as u32;
    }
    let mut later = vec![VertexSet::empty(n); n];
    let mut parent = vec![None; n];
    let mut remaining = VertexSet::full(n);
    for &v in order {
        remaining.remove(v);
        let r = adj[v as usize].intersection(&remaining);
        parent[v as usize] = r.iter().min_by_key(|&u| pos[u as usize]);
        later[v as usize] = r;
    }
    (later, parent)
}

pub(crate) fn maximal_cliques_adj(adj: &[VertexSet], order: &[u32]) -> Vec<VertexSet> {
    let n = adj.len();
    let (later, parent) = elimination_structure(adj, order);
    let mut dominated = vec![false; n];
    for &u in order {
        if let Some(p) = parent[u as usize] {
            if later[u as usize].card() == later[p as usize].card() + 1 {
                dominated[p as usize] = true;
            }
        }
    }
    let mut cliques = Vec::new();
    for &v in order {
        if !dominated[v as usize] {
            let mut c = later[v as usize].clone();
            c.insert(v);
            cliques.push(c);
        }
    }
    cliques
}

/// The maximal cliques of a chordal graph, one entry each, at most `n` total.
pub fn maximal_cliques(g: &Graph) -> Result<Vec<VertexSet>, NotChordal> {
    let order = peo(g).ok_or(NotChordal)?;
    Ok(maximal_cliques_adj(g.adjacency(), &order))
}

/// A clique tree: a tree decomposition whose bags are exactly the maximal
/// cliques, adjacent bags intersecting in minimal separators. Disconnected
/// graphs yield per-component trees chained together.
pub fn clique_tree(g: &Graph) -> Result<TreeDecomposition, NotChordal> {
    let order = peo(g).ok_or(NotChordal)?;
    Ok(clique_tree_adj(g.adjacency(), &order))
}

pub(crate) fn clique_tree_adj(adj: &[VertexSet], order: &[u32]) -> TreeDecomposition {
    let n = adj.len();
    if n == 0 {
        return TreeDecomposition {
            bags: vec![],
            edges: vec![],
        };
    }
    let bags = maximal_cliques_adj(adj, order);
    let q = bags.len();
    // A tree over the maximal cliques is a clique tree exactly when its
    // total intersection weight is maximum, so build a maximum-weight
    // spanning forest. Only pairs sharing a vertex can carry weight.
    let mut holding: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, bag) in bags.iter().enumerate() {
        for v in bag {
            holding[v as usize].push(i);
        }
    }
    let mut cand: Vec<(usize, usize)> = Vec::new();
    for list in &holding {
        for (ai, &a) in list.iter().enumerate() {
            for &b in &list[ai + 1..] {
                cand.push((a.min(b), a.max(b)));
            }
        }
    }
    cand.sort_unstable();
    cand.dedup();
    let mut weighted: Vec<(usize, usize, usize)> = cand
        .into_iter()
        .map(|(a, b)| (bags[a].intersection_card(&bags[b]), a, b))
        .collect();
    weighted.sort_by(|x, y| y.0.cmp(&x.0).then_with(|| (x.1, x.2).cmp(&(y.1, y.2))));

    let mut parent: Vec<usize> = (0..q).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut edges = Vec::new();
    for (_, a, b) in weighted {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            edges.push((a, b));
        }
    }
    // Chain the per-component trees into one tree.
    let mut anchors = Vec::new();
    for i in 0..q {
        if find(&mut parent, i) == i {
            anchors.push(i);
        }
    }
    for w in anchors.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition { bags, edges }
}
