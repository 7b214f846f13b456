//! Independent oracles for small graphs: exact treewidth by elimination
//! subset DP, complete enumeration of minimal triangulations, brute-force
//! clique and decomposition enumeration. None of this shares algorithms
//! with the library under test.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::rc::Rc;
use treewidth_core::graph::Graph;
use treewidth_core::set::VertexSet;
use treewidth_core::width::Width;

/// Tiny graphs as adjacency bitmasks, for exhaustive work at n ≤ 16.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MaskGraph {
    pub n: usize,
    pub adj: Vec<u32>,
}

impl MaskGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        assert!(n <= 16);
        let mut adj = vec![0u32; n];
        for &(u, v) in edges {
            if u != v {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        MaskGraph { n, adj }
    }

    pub fn from_graph(g: &Graph) -> Self {
        let n = g.n();
        assert!(n <= 16);
        let mut adj = vec![0u32; n];
        for u in 0..n as u32 {
            for v in g.adj(u).iter() {
                adj[u as usize] |= 1 << v;
            }
        }
        MaskGraph { n, adj }
    }

    pub fn to_graph(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adj[u] >> v & 1 == 1 {
                    edges.push((u as u32, v as u32));
                }
            }
        }
        Graph::from_edges(self.n, edges)
    }

    pub fn full_mask(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    fn neighbors_of_set(&self, set: u32) -> u32 {
        let mut nb = 0;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            nb |= self.adj[v];
        }
        nb & !set
    }

    fn component_of(&self, v: usize, allowed: u32) -> u32 {
        let mut comp = 1u32 << v;
        loop {
            let grow = self.neighbors_of_set(comp) & allowed;
            if grow == 0 {
                return comp;
            }
            comp |= grow;
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.component_of(0, self.full_mask()).count_ones() as usize == self.n
    }

    /// Fill graph of an elimination order, with the added edges.
    pub fn fill_graph(&self, order: &[usize]) -> (MaskGraph, Vec<(usize, usize)>) {
        let mut work = self.adj.clone();
        let mut alive = self.full_mask();
        let mut fill = Vec::new();
        for &v in order {
            let nb = work[v] & alive & !(1 << v);
            let mut rest = nb;
            while rest != 0 {
                let a = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let missing = nb & !work[a] & !(1 << a);
                let mut miss = missing;
                while miss != 0 {
                    let b = miss.trailing_zeros() as usize;
                    miss &= miss - 1;
                    if b > a {
                        fill.push((a, b));
                    }
                    work[a] |= 1 << b;
                    work[b] |= 1 << a;
                }
            }
            alive &= !(1 << v);
            for w in work.iter_mut() {
                *w &= !(1 << v);
            }
            work[v] = 0;
        }
        let mut result = self.adj.clone();
        for &(a, b) in &fill {
            result[a] |= 1 << b;
            result[b] |= 1 << a;
        }
        (
            MaskGraph {
                n: self.n,
                adj: result,
            },
            fill,
        )
    }

    /// Chordality by trying every elimination order is hopeless even here;
    /// simplicial elimination works: repeatedly remove a vertex whose
    /// neighborhood is a clique.
    pub fn is_chordal(&self) -> bool {
        let mut work = self.adj.clone();
        let mut alive = self.full_mask();
        for _ in 0..self.n {
            if alive == 0 {
                return true;
            }
            let mut found = false;
            let mut rest = alive;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let nb = work[v] & alive;
                let mut clique = true;
                let mut scan = nb;
                while scan != 0 {
                    let a = scan.trailing_zeros() as usize;
                    scan &= scan - 1;
                    if nb & !work[a] & !(1 << a) != 0 {
                        clique = false;
                        break;
                    }
                }
                if clique {
                    alive &= !(1 << v);
                    let mut nbs = nb;
                    while nbs != 0 {
                        let a = nbs.trailing_zeros() as usize;
                        nbs &= nbs - 1;
                        work[a] &= !(1 << v);
                    }
                    work[v] = 0;
                    found = true;
                    break;
                }
            }
            if !found {
                return false;
            }
        }
        true
    }

    /// All maximal cliques, as masks.
    pub fn maximal_cliques(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for mask in 1u32..=self.full_mask() {
            let mut is_clique = true;
            let mut common = self.full_mask();
            let mut scan = mask;
            while scan != 0 {
                let v = scan.trailing_zeros() as usize;
                scan &= scan - 1;
                if mask & !self.adj[v] & !(1 << v) != 0 {
                    is_clique = false;
                    break;
                }
                common &= self.adj[v];
            }
            if is_clique && common & !mask == 0 {
                out.push(mask);
            }
        }
        out
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    fn heap(k: usize, arr: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(arr.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, arr, out);
            if k.is_multiple_of(2) {
                arr.swap(i, k - 1);
            } else {
                arr.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut current, &mut out);
    out
}

/// Every minimal triangulation of `g`, by running all elimination orders and
/// keeping the fill graphs from which no single fill edge can be dropped.
/// Complete: a minimal triangulation is the fill graph of any of its own
/// perfect elimination orders.
pub fn minimal_triangulations(g: &MaskGraph) -> Vec<MaskGraph> {
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut out = Vec::new();
    for order in permutations(g.n) {
        let (h, fill) = g.fill_graph(&order);
        if !seen.insert(h.adj.clone()) {
            continue;
        }
        let minimal = fill.iter().all(|&(a, b)| {
            let mut adj = h.adj.clone();
            adj[a] &= !(1 << b);
            adj[b] &= !(1 << a);
            !MaskGraph { n: g.n, adj }.is_chordal()
        });
        if minimal {
            out.push(h);
        }
    }
    out
}

/// Minimal triangulations by enumerating all chordal supergraphs directly;
/// only feasible for very small graphs, used to cross-check the
/// order-enumeration oracle.
pub fn minimal_triangulations_by_supergraphs(g: &MaskGraph) -> Vec<MaskGraph> {
    let mut missing = Vec::new();
    for u in 0..g.n {
        for v in u + 1..g.n {
            if !g.has_edge(u, v) {
                missing.push((u, v));
            }
        }
    }
    assert!(missing.len() <= 20, "too many absent edges to enumerate");
    let mut out = Vec::new();
    for choice in 0u32..1 << missing.len() {
        let mut adj = g.adj.clone();
        let mut fill = Vec::new();
        for (i, &(u, v)) in missing.iter().enumerate() {
            if choice >> i & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
                fill.push((u, v));
            }
        }
        let h = MaskGraph { n: g.n, adj };
        if !h.is_chordal() {
            continue;
        }
        let minimal = fill.iter().all(|&(a, b)| {
            let mut adj = h.adj.clone();
            adj[a] &= !(1 << b);
            adj[b] &= !(1 << a);
            !MaskGraph { n: g.n, adj }.is_chordal()
        });
        if minimal {
            out.push(h);
        }
    }
    out
}

/// The potential maximal cliques of `g` as the maximal cliques of its
/// minimal triangulations (the definition, made exhaustive).
pub fn pmcs_by_definition(g: &MaskGraph) -> BTreeSet<u32> {
    minimal_triangulations(g)
        .iter()
        .flat_map(|h| h.maximal_cliques())
        .collect()
}

/// Exact treewidth by dynamic programming over elimination prefixes.
pub fn exact_treewidth(g: &Graph) -> u32 {
    let mg = MaskGraph::from_graph(g);
    let n = mg.n;
    if n == 0 {
        return 0;
    }
    let full = mg.full_mask();
    // cost of eliminating v after the set `done` is gone: neighbors of v
    // reachable through done.
    let cost = |done: u32, v: usize| -> u32 {
        let comp = mg.component_of(v, done);
        (mg.neighbors_of_set(comp) & !done).count_ones()
    };
    let mut f = vec![u32::MAX; 1 << n];
    f[0] = 0;
    for s in 1u32..=full {
        let mut best = u32::MAX;
        let mut scan = s;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            let prev = s & !(1 << v);
            let candidate = f[prev as usize].max(cost(prev, v));
            best = best.min(candidate);
        }
        f[s as usize] = best;
    }
    f[full as usize]
}

pub fn mask_to_set(n: usize, mask: u32) -> VertexSet {
    VertexSet::from_iter_n(n, (0..n as u32).filter(|&v| mask >> v & 1 == 1))
}

/// G(n, p), resampled until connected.
pub fn random_connected_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let g = random_graph(n, p, rng);
        if g.is_connected() {
            return g;
        }
    }
}

pub fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// All decompositions assembled from caps in `pi`, block by block, with
/// largest bag capped at `kcap + 1`. Returns (width, bag index set) pairs.
/// Independent of the library's cap index and dynamic program.
pub fn enumerate_decompositions(
    g: &Graph,
    pi: &[VertexSet],
    kcap: u32,
) -> Vec<(Width, BTreeSet<usize>)> {
    type Memo = HashMap<VertexSet, Rc<Vec<(Width, BTreeSet<usize>)>>>;
    const LIMIT: usize = 400_000;

    fn rec(g: &Graph, pi: &[VertexSet], kcap: u32, c: &VertexSet, memo: &mut Memo) -> Rc<Vec<(Width, BTreeSet<usize>)>> {
        if let Some(hit) = memo.get(c) {
            return hit.clone();
        }
        let sep = g.neighborhood(c);
        let mut closed = c.clone();
        closed.union_with(&sep);
        let mut results: HashSet<(Width, Vec<usize>)> = HashSet::new();
        for (i, x) in pi.iter().enumerate() {
            if x.card() as u32 > kcap + 1 {
                continue;
            }
            if !sep.is_subset(x) || !x.is_subset(&closed) {
                continue;
            }
            let mut interior = c.clone();
            interior.subtract(x);
            let children = g.components_in(&interior);
            let mut combos: Vec<(Width, BTreeSet<usize>)> =
                vec![(Width::of_bag_size(x.card()), BTreeSet::from([i]))];
            for child in &children {
                let sub = rec(g, pi, kcap, child, memo);
                if sub.is_empty() {
                    combos.clear();
                    break;
                }
                let mut next = Vec::new();
                for (w, bags) in &combos {
                    for (sw, sbags) in sub.iter() {
                        let tw = *w + *sw;
                        if tw.k <= kcap {
                            let mut nb = bags.clone();
                            nb.extend(sbags.iter().copied());
                            next.push((tw, nb));
                        }
                    }
                    assert!(next.len() < LIMIT, "decomposition enumeration exploded");
                }
                combos = next;
            }
            for (w, bags) in combos {
                results.insert((w, bags.into_iter().collect()));
            }
        }
        let vec: Vec<(Width, BTreeSet<usize>)> = results
            .into_iter()
            .map(|(w, b)| (w, b.into_iter().collect()))
            .collect();
        let rc = Rc::new(vec);
        memo.insert(c.clone(), rc.clone());
        rc
    }

    let mut memo = Memo::new();
    let root = g.full_set();
    rec(g, pi, kcap, &root, &mut memo).as_ref().clone()
}

/// Brute-force Π(G) through the library's recognizer over all subsets.
pub fn pmcs_by_recognizer(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    assert!(n <= 16);
    let mut out = Vec::new();
    for mask in 1u32..1 << n {
        let s = mask_to_set(n, mask);
        if treewidth_core::pmc::is_pmc(g, &s) {
            out.push(s);
        }
    }
    out
}
