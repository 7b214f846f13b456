//! Minimal triangulation by greedy minimum-average-fill elimination
//! followed by fill-edge minimalization.

use crate::chordal::{is_chordal, peo_adj};
use crate::graph::Graph;
use crate::set::VertexSet;
use rand::seq::SliceRandom;
use rand::Rng;

/// A chordal supergraph of some base graph together with the edges added.
#[derive(Clone, Debug)]
pub struct Triangulation {
    /// Added edges in the order the greedy elimination created them.
    pub fill_edges: Vec<(u32, u32)>,
    /// Base graph plus the fill edges; always chordal.
    pub result: Graph,
}

/// Greedy elimination score of a vertex: non-adjacent pairs in its current
/// neighborhood, normalized by degree. Isolated vertices score zero and go
/// first. Comparison avoids the division via cross-multiplication.
#[derive(Clone, Copy, PartialEq, Eq)]
struct Score {
    fill: u64,
    degree: u64,
}

impl Score {
    fn better_than(&self, tb: u32, other: &Score, other_tb: u32) -> bool {
        let lhs = self.fill as u128 * other.degree as u128;
        let rhs = other.fill as u128 * self.degree as u128;
        (lhs, self.fill, self.degree, tb) < (rhs, other.fill, other.degree, other_tb)
    }
}

fn vertex_score(work: &[VertexSet], v: u32) -> Score {
    let nbrs = &work[v as usize];
    let degree = nbrs.card() as u64;
    let mut missing = 0u64;
    for u in nbrs {
        let mut gap = nbrs.clone();
        gap.subtract(&work[u as usize]);
        gap.remove(u);
        missing += gap.card() as u64;
    }
    Score {
        fill: missing / 2,
        degree,
    }
}

/// Eliminates vertices greedily by minimum average fill, filling each chosen
/// vertex's remaining neighborhood into a clique. The result is chordal by
/// construction. Ties on the fill-per-degree ratio are broken uniformly at
/// random, so different seeds explore different minimal triangulations;
/// runs are deterministic per seed.
pub fn maf_triangulate(g: &Graph, rng: &mut impl Rng) -> Triangulation {
    let n = g.n();
    let mut work: Vec<VertexSet> = g.adjacency().to_vec();
    let mut alive: Vec<u32> = (0..n as u32).collect();
    let mut tiebreak: Vec<u32> = (0..n as u32).collect();
    tiebreak.shuffle(rng);

    let mut scores: Vec<Score> = (0..n as u32).map(|v| vertex_score(&work, v)).collect();
    let mut fill_edges = Vec::new();
    let mut ties: Vec<u32> = Vec::new();

    while !alive.is_empty() {
        let mut best = alive[0];
        for &v in &alive[1..] {
            if scores[v as usize].better_than(
                tiebreak[v as usize],
                &scores[best as usize],
                tiebreak[best as usize],
            ) {
                best = v;
            }
        }
        let bs = scores[best as usize];
        ties.clear();
        for &v in &alive {
            let s = scores[v as usize];
            let tied = if bs.fill == 0 {
                s.fill == 0
            } else {
                s.degree > 0 && s.fill as u128 * bs.degree as u128 == bs.fill as u128 * s.degree as u128
            };
            if tied {
                ties.push(v);
            }
        }
        let v = ties[rng.gen_range(0..ties.len())];
        let nbrs = work[v as usize].clone();
        // Fill the neighborhood into a clique, tracking which scores go stale.
        let mut dirty = nbrs.clone();
        for a in &nbrs {
            let mut missing = nbrs.clone();
            missing.subtract(&work[a as usize]);
            missing.remove(a);
            for b in missing.iter().filter(|&b| b > a) {
                fill_edges.push((a, b));
                // Common neighbors lose a non-adjacent pair.
                dirty.union_with(&work[a as usize].intersection(&work[b as usize]));
                work[a as usize].insert(b);
                work[b as usize].insert(a);
            }
        }
        for u in &nbrs {
            work[u as usize].remove(v);
        }
        work[v as usize].clear();
        alive.retain(|&u| u != v);
        for u in &dirty {
            if u != v {
                scores[u as usize] = vertex_score(&work, u);
            }
        }
    }

    let mut adj = g.adjacency().to_vec();
    for &(a, b) in &fill_edges {
        adj[a as usize].insert(b);
        adj[b as usize].insert(a);
    }
    let result = Graph::from_adjacency(adj);
    debug_assert!(peo_adj(result.adjacency()).is_some());
    Triangulation { fill_edges, result }
}

/// A fill edge of a chordal graph can go exactly when the common
/// neighborhood of its endpoints is a clique (otherwise the removal exposes
/// a chordless four-cycle through the two non-adjacent common neighbors).
fn removable(work: &[VertexSet], u: u32, v: u32) -> bool {
    let common = work[u as usize].intersection(&work[v as usize]);
    for a in &common {
        let mut gap = common.clone();
        gap.subtract(&work[a as usize]);
        gap.remove(a);
        if !gap.is_empty() {
            return false;
        }
    }
    true
}

/// Shrinks a triangulation to a minimal one: repeatedly drop fill edges
/// (most recently added first) whose removal keeps the graph chordal, until
/// a full pass removes nothing. No single removable fill edge remains, which
/// certifies inclusion-minimality.
pub fn minimalize(g: &Graph, tri: &Triangulation) -> Triangulation {
    debug_assert!(is_chordal(&tri.result));
    debug_assert!((0..g.n() as u32).all(|v| g.adj(v).is_subset(tri.result.adj(v))));
    let mut work: Vec<VertexSet> = tri.result.adjacency().to_vec();
    let mut fill = tri.fill_edges.clone();
    loop {
        let mut removed_any = false;
        let mut keep = Vec::with_capacity(fill.len());
        for &(u, v) in fill.iter().rev() {
            if removable(&work, u, v) {
                work[u as usize].remove(v);
                work[v as usize].remove(u);
                removed_any = true;
            } else {
                keep.push((u, v));
            }
        }
        keep.reverse();
        fill = keep;
        if !removed_any {
            break;
        }
    }
    let result = Graph::from_adjacency(work);
    debug_assert!(is_chordal(&result));
    Triangulation {
        fill_edges: fill,
        result,
    }
}

/// Minimum-average-fill triangulation followed by minimalization.
pub fn mmaf(g: &Graph, rng: &mut impl Rng) -> Triangulation {
    let tri = maf_triangulate(g, rng);
    if tri.fill_edges.is_empty() {
        return tri;
    }
    minimalize(g, &tri)
}
