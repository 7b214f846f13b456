//! The main improvement loop.
//!
//! State is a PMC set Π known to support a decomposition of the best width
//! so far. Each iteration grows Π — connection strategies bridge promising
//! block pairs, diversification re-triangulates a local patch around a
//! largest bag — until the dynamic program certifies a strictly smaller
//! width, at which point Π shrinks back to its core.

use crate::chordal::{clique_tree_adj, maximal_cliques_adj, peo_adj};
use crate::dp::{self, BlockId, DpTable, PmcSet};
use crate::graph::Graph;
use crate::pmc::{self, local_graph, LocalGraph};
use crate::set::VertexSet;
use crate::td::TreeDecomposition;
use crate::triangulate::mmaf;
use crate::width::Width;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::Instant;

/// When to stop working. Wall-clock and iteration budgets may both be set;
/// whichever trips first wins. The cancel flag is set by timers or signal
/// handlers and only ever read here.
#[derive(Clone, Default)]
pub struct Budget {
    pub deadline: Option<Instant>,
    pub max_iterations: Option<u64>,
    pub cancel: Option<Arc<AtomicBool>>,
}

impl Budget {
    fn expired(&self, iterations: u64) -> bool {
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                return true;
            }
        }
        if let Some(m) = self.max_iterations {
            if iterations >= m {
                return true;
            }
        }
        if let Some(c) = &self.cancel {
            if c.load(Ordering::Relaxed) {
                return true;
            }
        }
        false
    }
}

const PROMISING_LIMIT: usize = 64;
const CROSSING_SEPARATOR_LIMIT: usize = 32;
const SUBTREE_BAG_CAP: usize = 24;
const PATH_DEPTH_LIMIT: usize = 20;
const PATH_NODE_BUDGET: usize = 256;
const GROWTH_FACTOR: usize = 4;
const STAGNATION_RESTART: u32 = 8;
const MAX_BATCHES_PER_ITERATION: usize = 32;

/// A nested block pair whose external width promises an improvement: if the
/// region between the outer separator and the inner block can be
/// re-decomposed within the current width, the overall width drops.
#[derive(Clone, Debug)]
pub struct PromisingPair {
    pub outer: BlockId,
    pub inner: BlockId,
    pub xtw: Width,
}

/// Bounded DFS for a nested chain of caps. The path tracks the caps chosen
/// so far; the deepest dead-end survives as the consolation additions.
struct PathSearch<'a> {
    g: &'a Graph,
    target: &'a VertexSet,
    max_cap: usize,
    nodes_left: usize,
    seen: Vec<VertexSet>,
    path: Vec<VertexSet>,
    deepest: Vec<VertexSet>,
}

impl PathSearch<'_> {
    fn dfs(&mut self, current: &VertexSet, depth: usize) -> bool {
        if depth > PATH_DEPTH_LIMIT || self.nodes_left == 0 {
            return false;
        }
        let sep = self.g.neighborhood(current);
        // Candidate caps: the separator plus one interior vertex, or plus a
        // whole closed interior neighborhood.
        let mut cands: Vec<VertexSet> = Vec::new();
        let interior = current.difference(self.target);
        for v in &interior {
            let mut single = sep.clone();
            single.insert(v);
            if !cands.contains(&single) {
                cands.push(single);
            }
            let mut absorbed = self.g.adj(v).intersection(current);
            absorbed.insert(v);
            absorbed.union_with(&sep);
            if !absorbed.intersects(self.target) && !cands.contains(&absorbed) {
                cands.push(absorbed);
            }
        }
        cands.sort_by(|a, b| a.card().cmp(&b.card()).then_with(|| a.cmp(b)));
        for x in cands {
            if self.nodes_left == 0 {
                return false;
            }
            self.nodes_left -= 1;
            if x.card() > self.max_cap || !pmc::is_pmc(self.g, &x) {
                continue;
            }
            let mut inside = current.clone();
            inside.subtract(&x);
            let comps = self.g.components_in(&inside);
            if comps.len() != 1 {
                continue;
            }
            let next = comps.into_iter().next().unwrap();
            if !self.target.is_subset(&next) {
                continue;
            }
            self.path.push(x);
            if next == *self.target {
                return true;
            }
            if !self.seen.contains(&next) {
                self.seen.push(next.clone());
                if self.dfs(&next, depth + 1) {
                    return true;
                }
            }
            if self.path.len() > self.deepest.len() {
                self.deepest = self.path.clone();
            }
            self.path.pop();
        }
        false
    }
}

pub struct SolverState<'g> {
    g: &'g Graph,
    pub pi: PmcSet,
    pub best_width: Width,
    pub best_td: TreeDecomposition,
    pub iterations: u64,
    core_size: usize,
    failures: u32,
    rng: ChaCha8Rng,
}

impl<'g> SolverState<'g> {
    /// Seeds the solver: a minimal triangulation's maximal cliques form Π₀,
    /// its clique tree is the first decomposition.
    pub fn initialize(g: &'g Graph, mut rng: ChaCha8Rng) -> SolverState<'g> {
        debug_assert!(g.is_connected());
        let tri = mmaf(g, &mut rng);
        let order = peo_adj(tri.result.adjacency()).expect("triangulation must be chordal");
        let cliques = maximal_cliques_adj(tri.result.adjacency(), &order);
        let best_td = clique_tree_adj(tri.result.adjacency(), &order);
        let best_width = best_td.width();
        debug_assert!(best_td.validate(g).is_ok());
        let mut pi = PmcSet::new(g);
        for c in cliques {
            pi.add(g, c);
        }
        let core_size = pi.len();
        SolverState {
            g,
            pi,
            best_width,
            best_td,
            iterations: 0,
            core_size,
            failures: 0,
            rng,
        }
    }

    pub fn graph(&self) -> &Graph {
        self.g
    }

    /// All nested block pairs with defined external width below `w`,
    /// best first, at most `limit` of them.
    pub fn enumerate_promising(&self, table: &DpTable, w: Width, limit: usize) -> Vec<PromisingPair> {
        let g = self.g;
        let blocks: Vec<BlockId> = self
            .pi
            .block_ids()
            .filter(|&b| self.pi.block(b).from_pi)
            .collect();
        // External width of a block: the widths of everything outside it,
        // i.e. of the other components around its separator. Blocks often
        // share separators, so the component split is cached per separator.
        let mut sep_comps: HashMap<VertexSet, Vec<(VertexSet, Option<Width>)>> = HashMap::new();
        let mut ext: Vec<Option<Width>> = Vec::with_capacity(blocks.len());
        for &b in &blocks {
            let sep = &self.pi.block(b).separator;
            let entries = sep_comps.entry(sep.clone()).or_insert_with(|| {
                g.components(sep)
                    .into_iter()
                    .map(|comp| {
                        let w = self.pi.find_block(&comp).and_then(|o| table.width_of(o));
                        (comp, w)
                    })
                    .collect()
            });
            let mut total = Some(Width::new(0, 0));
            for (comp, term) in entries.iter() {
                if *comp == self.pi.block(b).component {
                    continue;
                }
                total = match (total, term) {
                    (Some(acc), Some(t)) => Some(acc + *t),
                    _ => None,
                };
                if total.is_none() {
                    break;
                }
            }
            ext.push(total);
        }
        // Candidate inner blocks, cheap filters first: the subset test only
        // runs for pairs that would already be promising.
        let mut inner_sorted: Vec<(usize, u32, BlockId, Width)> = blocks
            .iter()
            .filter_map(|&d| {
                let b = self.pi.block(d);
                table
                    .width_of(d)
                    .map(|ctw| (b.card, b.component.first().unwrap_or(0), d, ctw))
            })
            .collect();
        inner_sorted.sort_by_key(|&(card, _, _, _)| card);

        let mut pairs = Vec::new();
        for (ci, &c) in blocks.iter().enumerate() {
            let Some(ext_c) = ext[ci] else { continue };
            if ext_c >= w {
                continue;
            }
            let c_block = self.pi.block(c);
            for &(d_card, d_first, d, ctw_d) in &inner_sorted {
                if d_card >= c_block.card {
                    break;
                }
                let xtw = ctw_d + ext_c;
                if xtw >= w || !c_block.component.contains(d_first) {
                    continue;
                }
                if !self.pi.block(d).component.is_subset(&c_block.component) {
                    continue;
                }
                pairs.push(PromisingPair {
                    outer: c,
                    inner: d,
                    xtw,
                });
            }
        }
        // Ties on xtw are broken towards small gaps (big inner blocks):
        // those are the pairs a local triangulation has a chance to bridge.
        let key = |p: &PromisingPair| {
            let gap = self.pi.block(p.outer).card + self.pi.block(p.outer).separator.card()
                - self.pi.block(p.inner).card;
            (p.xtw, gap)
        };
        let cmp = |a: &PromisingPair, b: &PromisingPair| {
            key(a).cmp(&key(b)).then_with(|| {
                (&self.pi.block(a.outer).component, &self.pi.block(a.inner).component).cmp(&(
                    &self.pi.block(b.outer).component,
                    &self.pi.block(b.inner).component,
                ))
            })
        };
        if pairs.len() > limit && limit > 0 {
            pairs.select_nth_unstable_by(limit - 1, cmp);
            pairs.truncate(limit);
        }
        pairs.sort_by(cmp);
        pairs.truncate(limit);
        pairs
    }

    /// Triangulates cliques straight out of the pair's joint separator
    /// region. Returns how many PMCs were added.
    pub fn direct_connect(&mut self, pair: &PromisingPair, w: Width) -> usize {
        let g = self.g;
        let k = w.k as usize;
        let s = self
            .pi
            .block(pair.outer)
            .separator
            .union(&self.pi.block(pair.inner).separator);
        if s.is_empty() {
            return 0;
        }
        if pmc::is_pmc(g, &s) {
            if s.card() <= k && self.pi.add(g, s) {
                return 1;
            }
            return 0;
        }
        let lg = local_graph(g, &s);
        let tri = mmaf(&lg.graph, &mut self.rng);
        let order = peo_adj(tri.result.adjacency()).expect("triangulation must be chordal");
        let mut added = 0;
        for clique in maximal_cliques_adj(tri.result.adjacency(), &order) {
            if clique.card() > k {
                continue;
            }
            let global = lg.to_global(&clique, g.n());
            if pmc::is_pmc(g, &global) && self.pi.add(g, global) {
                added += 1;
            }
        }
        added
    }

    /// Triangulates the whole gap between the outer block's closed
    /// neighborhood and the inner block. Fulfilled when the triangulation's
    /// clique number already fits under the current width.
    pub fn greedy_remote_connect(&mut self, pair: &PromisingPair, w: Width) -> (bool, usize) {
        let g = self.g;
        let k = w.k as usize;
        let mut u = g.closed_neighborhood(&self.pi.block(pair.outer).component);
        u.subtract(&self.pi.block(pair.inner).component);
        if u.is_empty() {
            return (false, 0);
        }
        let lg = local_graph(g, &u);
        let tri = mmaf(&lg.graph, &mut self.rng);
        let order = peo_adj(tri.result.adjacency()).expect("triangulation must be chordal");
        let cliques = maximal_cliques_adj(tri.result.adjacency(), &order);
        let max_clique = cliques.iter().map(|c| c.card()).max().unwrap_or(0);
        let mut added = 0;
        for clique in cliques {
            if clique.card() > k + 1 {
                continue;
            }
            let global = lg.to_global(&clique, g.n());
            if pmc::is_pmc(g, &global) && self.pi.add(g, global) {
                added += 1;
            }
        }
        (max_clique <= k, added)
    }

    /// Depth-first search for a chain of caps that peels the outer block
    /// down to the inner one; every cap on the way is a small PMC. Returns
    /// whether the chain reached the inner block exactly.
    pub fn path_connect(&mut self, pair: &PromisingPair, w: Width) -> (bool, usize) {
        let g = self.g;
        let target = self.pi.block(pair.inner).component.clone();
        let start = self.pi.block(pair.outer).component.clone();
        let mut search = PathSearch {
            g,
            target: &target,
            max_cap: w.k as usize,
            nodes_left: PATH_NODE_BUDGET,
            seen: Vec::new(),
            path: Vec::new(),
            deepest: Vec::new(),
        };
        let connected = search.dfs(&start, 0);
        let additions = if connected { search.path } else { search.deepest };
        let mut added = 0;
        for x in additions {
            if self.pi.add(g, x) {
                added += 1;
            }
        }
        (connected, added)
    }

    /// One diversification round: re-triangulate the region of a random
    /// subtree around a random largest bag, forcing a separator that crosses
    /// the bag so the new triangulations avoid it. Returns PMCs added;
    /// zero when the bag cannot be crossed in its region.
    pub fn diversify(&mut self, table: &DpTable) -> usize {
        let g = self.g;
        let Some(td) = dp::random_td(&self.pi, table, &mut self.rng) else {
            return 0;
        };
        let max_card = td.bags.iter().map(|b| b.card()).max().unwrap_or(0);
        let largest: Vec<usize> = (0..td.bags.len())
            .filter(|&i| td.bags[i].card() == max_card)
            .collect();
        let x0_node = largest[self.rng.gen_range(0..largest.len())];

        // Random subtree around the chosen bag.
        let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); td.bags.len()];
        for &(a, b) in &td.edges {
            nbrs[a].push(b);
            nbrs[b].push(a);
        }
        let mut in_subtree = vec![false; td.bags.len()];
        in_subtree[x0_node] = true;
        let mut picked = vec![x0_node];
        let mut frontier: Vec<usize> = nbrs[x0_node].clone();
        // Random patch size: small patches triangulate differently and keep
        // the local graphs cheap; the cap only bounds the worst case.
        let target = self
            .rng
            .gen_range(2..=SUBTREE_BAG_CAP.min(td.bags.len()).max(2));
        while picked.len() < target && !frontier.is_empty() {
            let i = self.rng.gen_range(0..frontier.len());
            let node = frontier.swap_remove(i);
            if in_subtree[node] {
                continue;
            }
            in_subtree[node] = true;
            picked.push(node);
            frontier.extend(nbrs[node].iter().copied().filter(|&m| !in_subtree[m]));
        }

        let mut u = g.empty_set();
        for &i in &picked {
            u.union_with(&td.bags[i]);
        }
        let lg = local_graph(g, &u);
        let x0_local = lg
            .to_local(&td.bags[x0_node])
            .expect("bag lies inside its subtree's union");

        let separators =
            pmc::crossing_minimal_separators(&lg.graph, &x0_local, CROSSING_SEPARATOR_LIMIT);
        if separators.is_empty() {
            return 0;
        }
        let mut added = 0;
        for s in separators {
            let mut adj = lg.graph.adjacency().to_vec();
            for a in &s {
                for b in s.iter().filter(|&b| b > a) {
                    adj[a as usize].insert(b);
                    adj[b as usize].insert(a);
                }
            }
            let filled = Graph::from_adjacency(adj);
            let tri = mmaf(&filled, &mut self.rng);
            let order = peo_adj(tri.result.adjacency()).expect("triangulation must be chordal");
            for clique in maximal_cliques_adj(tri.result.adjacency(), &order) {
                let global = lg.to_global(&clique, g.n());
                if pmc::is_pmc(g, &global) && self.pi.add(g, global) {
                    added += 1;
                }
            }
        }
        added
    }

    fn commit(&mut self, table: &DpTable, width: Width) {
        self.best_width = width;
        self.best_td = dp::extract_td(&self.pi, table).expect("defined width must trace back");
        debug_assert_eq!(self.best_td.validate(self.g), Ok(width));
        let marks = dp::extract_core(&self.pi, table).expect("defined width must have a core");
        self.pi.retain_and_compact(self.g, &marks);
        self.core_size = self.pi.len();
        #[cfg(debug_assertions)]
        {
            let check = dp::run_dp(self.g, &self.pi);
            debug_assert_eq!(dp::dp_width(&self.pi, &check), Some(width));
        }
    }

    fn shrink_to_core(&mut self, table: &DpTable) {
        if let Some(marks) = dp::extract_core(&self.pi, table) {
            self.pi.retain_and_compact(self.g, &marks);
            self.core_size = self.pi.len();
        }
    }

    /// Runs strategy batches until the width strictly improves (true) or the
    /// iteration's budget is spent (false). Each batch is one connection
    /// sweep or one diversification round, with the DP re-run in between.
    pub fn improve_once(&mut self, budget: &Budget) -> bool {
        self.iterations += 1;
        let w_prev = self.best_width;
        let growth_cap = GROWTH_FACTOR * self.core_size.max(1);

        for batch in 0..MAX_BATCHES_PER_ITERATION {
            let table = dp::run_dp(self.g, &self.pi);
            let w_cur = dp::dp_width(&self.pi, &table).expect("Π always supports the best width");
            debug_assert!(w_cur <= w_prev);
            if w_cur < w_prev {
                self.commit(&table, w_cur);
                self.failures = 0;
                return true;
            }
            if self.pi.len() > growth_cap {
                self.shrink_to_core(&table);
                break;
            }
            if budget.expired(self.iterations) {
                break;
            }

            if batch % 2 == 0 {
                let pairs = self.enumerate_promising(&table, w_prev, PROMISING_LIMIT);
                if pairs.is_empty() {
                    continue;
                }
                // Gap triangulation cost scales with the gap, so a batch
                // spends a bounded amount of it; later batches re-enumerate.
                let mut gap_work = 3 * self.g.n();
                for pair in &pairs {
                    let (connected, _) = self.path_connect(pair, w_prev);
                    if connected {
                        break;
                    }
                    let gap_size = self.pi.block(pair.outer).card
                        + self.pi.block(pair.outer).separator.card()
                        - self.pi.block(pair.inner).card;
                    if gap_size <= gap_work {
                        gap_work -= gap_size;
                        let (fulfilled, _) = self.greedy_remote_connect(pair, w_prev);
                        if fulfilled {
                            break;
                        }
                        self.direct_connect(pair, w_prev);
                    }
                    if self.pi.len() > growth_cap
                        || budget.expired(self.iterations)
                        || gap_work == 0
                    {
                        break;
                    }
                }
            } else {
                self.diversify(&table);
            }
        }
        self.failures += 1;
        false
    }

    /// Stagnation escape: merge the cliques of a fresh random triangulation.
    fn restart(&mut self) {
        let tri = mmaf(self.g, &mut self.rng);
        let order = peo_adj(tri.result.adjacency()).expect("triangulation must be chordal");
        for c in maximal_cliques_adj(tri.result.adjacency(), &order) {
            self.pi.add(self.g, c);
        }
        self.failures = 0;
    }
}

/// Outcome of a solve: the refined width, a decomposition achieving it, and
/// the trace of committed widths (strictly decreasing).
pub struct Solution {
    pub width: Width,
    pub td: TreeDecomposition,
    pub trace: Vec<Width>,
}

pub struct SolveOptions {
    pub seed: u64,
    pub budget: Budget,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            seed: 1,
            budget: Budget::default(),
        }
    }
}

/// Solves each connected component independently and joins the resulting
/// decompositions. `on_commit` fires whenever the overall width improves.
pub fn solve(g: &Graph, opts: &SolveOptions, mut on_commit: impl FnMut(Width)) -> Solution {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    if g.n() == 0 {
        return Solution {
            width: Width::new(0, 0),
            td: TreeDecomposition {
                bags: vec![],
                edges: vec![],
            },
            trace: vec![],
        };
    }

    let comps = g.components(&g.empty_set());
    let locals: Vec<LocalGraph> = comps.iter().map(|c| local_graph(g, c)).collect();
    let mut states: Vec<SolverState> = locals
        .iter()
        .map(|lg| {
            let child = ChaCha8Rng::seed_from_u64(rng.gen());
            SolverState::initialize(&lg.graph, child)
        })
        .collect();

    let overall = |states: &[SolverState]| -> Width {
        states
            .iter()
            .map(|s| s.best_width)
            .fold(Width::new(0, 0), |a, b| a + b)
    };

    let mut trace = Vec::new();
    let mut report = |w: Width, trace: &mut Vec<Width>| {
        if trace.last() != Some(&w) {
            trace.push(w);
            on_commit(w);
        }
    };
    report(overall(&states), &mut trace);

    let mut iterations = 0u64;
    loop {
        let mut any_active = false;
        for state in states.iter_mut() {
            if state.best_width.k <= 1 {
                continue; // trees and edgeless parts are already optimal
            }
            if opts.budget.expired(iterations) {
                break;
            }
            any_active = true;
            iterations += 1;
            state.improve_once(&Budget {
                deadline: opts.budget.deadline,
                max_iterations: None,
                cancel: opts.budget.cancel.clone(),
            });
        }
        let w = overall(&states);
        if trace.last().is_none_or(|&last| w < last) {
            report(w, &mut trace);
        }
        for state in states.iter_mut() {
            if state.failures >= STAGNATION_RESTART {
                state.restart();
            }
        }
        if opts.budget.expired(iterations) || !any_active {
            break;
        }
    }

    let tds: Vec<TreeDecomposition> = states
        .iter()
        .zip(&locals)
        .map(|(s, lg)| TreeDecomposition {
            bags: s
                .best_td
                .bags
                .iter()
                .map(|b| lg.to_global(b, g.n()))
                .collect(),
            edges: s.best_td.edges.clone(),
        })
        .collect();
    let td = TreeDecomposition::join(tds);
    let width = overall(&states);
    debug_assert_eq!(td.validate(g), Ok(width));
    Solution { width, td, trace }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i as u32, ((i + 1) % n) as u32)))
    }

    fn iter_budget(n: u64) -> Budget {
        Budget {
            max_iterations: Some(n),
            ..Budget::default()
        }
    }

    #[test]
    fn initialize_on_chordal_graph_is_optimal() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]);
        let state = SolverState::initialize(&g, ChaCha8Rng::seed_from_u64(1));
        assert_eq!(state.best_width, Width::new(2, 2));
        assert_eq!(state.pi.len(), 2);
    }

    #[test]
    fn improve_once_false_at_optimum_on_trees() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]);
        let mut state = SolverState::initialize(&g, ChaCha8Rng::seed_from_u64(1));
        assert_eq!(state.best_width.k, 1);
        for _ in 0..3 {
            assert!(!state.improve_once(&iter_budget(u64::MAX)));
        }
    }

    #[test]
    fn c6_sits_at_its_optimum() {
        // Every decomposition of C6 over its PMCs has width exactly (2, 4)
        // (exhaustive enumeration), so initialization is already optimal and
        // no iteration can commit an improvement.
        let g = cycle(6);
        let mut state = SolverState::initialize(&g, ChaCha8Rng::seed_from_u64(3));
        assert_eq!(state.best_width, Width::new(2, 4));
        for _ in 0..4 {
            assert!(!state.improve_once(&iter_budget(u64::MAX)));
        }
        assert_eq!(state.best_width, Width::new(2, 4));
        assert!(state.best_td.validate(&g).is_ok());
    }

    #[test]
    fn diversify_reaches_other_c6_triangulations() {
        // Π₀ holds one triangulation's four triangles; diversification pulls
        // in triangles from the other rotations.
        let g = cycle(6);
        let mut state = SolverState::initialize(&g, ChaCha8Rng::seed_from_u64(3));
        assert_eq!(state.pi.len(), 4);
        let mut added = 0;
        for _ in 0..8 {
            let table = dp::run_dp(&g, &state.pi);
            added += state.diversify(&table);
        }
        assert!(added > 0, "diversification never found a new PMC on C6");
    }

    #[test]
    fn solve_tree_reports_treewidth_one() {
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (2, 4), (4, 5), (0, 6)]);
        let sol = solve(
            &g,
            &SolveOptions {
                seed: 1,
                budget: iter_budget(4),
            },
            |_| {},
        );
        assert_eq!(sol.width.k, 1);
        assert_eq!(sol.td.validate(&g), Ok(sol.width));
    }

    #[test]
    fn solve_disconnected_joins_components() {
        let g = Graph::from_edges(9, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (6, 7)]);
        let sol = solve(
            &g,
            &SolveOptions {
                seed: 2,
                budget: iter_budget(6),
            },
            |_| {},
        );
        assert_eq!(sol.width.k, 2);
        assert_eq!(sol.td.validate(&g), Ok(sol.width));
    }

    // P5 0-1-2-3-4. Blocks {2,3,4} (separator {1}), {3,4} ({2}) and {4}
    // ({3}) enter Π's block index through the PMCs {0,1}, {1,2} and {2,3}.
    fn p5_state() -> (Graph, ChaCha8Rng) {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]);
        (g, ChaCha8Rng::seed_from_u64(1))
    }

    fn pair_for(state: &SolverState, outer: &[u32], inner: &[u32]) -> PromisingPair {
        let n = state.graph().n();
        let outer = state
            .pi
            .find_block(&VertexSet::from_iter_n(n, outer.iter().copied()))
            .expect("outer block not interned");
        let inner = state
            .pi
            .find_block(&VertexSet::from_iter_n(n, inner.iter().copied()))
            .expect("inner block not interned");
        PromisingPair {
            outer,
            inner,
            xtw: Width::new(0, 1),
        }
    }

    #[test]
    fn direct_connect_rejects_non_pmc_joint_separator() {
        let (g, rng) = p5_state();
        let mut state = SolverState::initialize(&g, rng);
        for x in [[0u32, 1], [1, 2], [2, 3], [3, 4]] {
            state.pi.add(&g, VertexSet::from_iter_n(5, x));
        }
        // S = N({2,3,4}) ∪ N({4}) = {1, 3}: component {2} sees all of it,
        // so S is no PMC and the local triangulation yields nothing new.
        let pair = pair_for(&state, &[2, 3, 4], &[4]);
        assert_eq!(state.direct_connect(&pair, Width::new(2, 1)), 0);
    }

    #[test]
    fn path_connect_single_cap_reaches_inner_block() {
        let (g, rng) = p5_state();
        let mut state = SolverState::initialize(&g, rng);
        for x in [[0u32, 1], [1, 2], [2, 3], [3, 4]] {
            state.pi.add(&g, VertexSet::from_iter_n(5, x));
        }
        // {2,3} caps {3,4} and peels it straight down to {4}.
        let pair = pair_for(&state, &[3, 4], &[4]);
        let (connected, _) = state.path_connect(&pair, Width::new(2, 1));
        assert!(connected);
        // Longer chain: {2,3,4} needs two caps to reach {4}.
        let pair = pair_for(&state, &[2, 3, 4], &[4]);
        let (connected, _) = state.path_connect(&pair, Width::new(2, 1));
        assert!(connected);
    }

    #[test]
    fn greedy_remote_fulfills_on_chordal_gap() {
        let (g, rng) = p5_state();
        let mut state = SolverState::initialize(&g, rng);
        for x in [[0u32, 1], [1, 2], [2, 3], [3, 4]] {
            state.pi.add(&g, VertexSet::from_iter_n(5, x));
        }
        // gap({3,4}, {4}) is the local graph on {2,3}: a single edge,
        // already chordal with clique number 2 <= k.
        let pair = pair_for(&state, &[3, 4], &[4]);
        let (fulfilled, _) = state.greedy_remote_connect(&pair, Width::new(2, 1));
        assert!(fulfilled);
        assert!(state.pi.contains(&VertexSet::from_iter_n(5, [2, 3])));
    }

    #[test]
    fn promising_pairs_respect_limit() {
        let g = cycle(8);
        let mut state = SolverState::initialize(&g, ChaCha8Rng::seed_from_u64(2));
        for _ in 0..3 {
            state.improve_once(&iter_budget(u64::MAX));
        }
        let table = dp::run_dp(&g, &state.pi);
        let w = dp::dp_width(&state.pi, &table).unwrap();
        for limit in [0, 1, 5] {
            assert!(state.enumerate_promising(&table, w, limit).len() <= limit);
        }
    }

    #[test]
    fn diversify_additions_are_pmcs() {
        // The insertion path debug-asserts each added set; this exercises it
        // across random graphs.
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        for trial in 0..20 {
            let mut edges = Vec::new();
            for u in 0..20u32 {
                for v in u + 1..20 {
                    if rng.gen_bool(0.18) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(20, edges);
            if !g.is_connected() {
                continue;
            }
            let mut state = SolverState::initialize(&g, ChaCha8Rng::seed_from_u64(trial));
            for _ in 0..3 {
                let table = dp::run_dp(&g, &state.pi);
                state.diversify(&table);
            }
        }
    }

    #[test]
    fn committed_trace_strictly_decreases() {
        let g = cycle(8);
        let sol = solve(
            &g,
            &SolveOptions {
                seed: 5,
                budget: iter_budget(24),
            },
            |_| {},
        );
        for w in sol.trace.windows(2) {
            assert!(w[1] < w[0], "trace not strictly decreasing: {:?}", sol.trace);
        }
        assert_eq!(sol.td.validate(&g), Ok(sol.width));
    }
}
