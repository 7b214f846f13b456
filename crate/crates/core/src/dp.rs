//! Dynamic programming over a set of potential maximal cliques.
//!
//! The table is keyed by blocks: minimally separated connected sets. A PMC
//! `X` caps a block `C` when `N(C) ⊆ X ⊆ N[C]`; the width achievable inside
//! `C` is the best over its caps of the cap's own bag width plus the widths
//! of the sub-blocks the cap leaves behind. The root block is the whole
//! vertex set, whose value is the width of the best decomposition with bags
//! in Π — or undefined when no cap chain completes.

use crate::graph::Graph;
use crate::pmc::is_pmc;
use crate::set::VertexSet;
use crate::td::TreeDecomposition;
use crate::width::Width;
use rand::Rng;
use std::collections::HashMap;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct PmcId(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct BlockId(pub u32);

struct PmcData {
    vertices: VertexSet,
    card: usize,
    /// Blocks left by removing this PMC: the components of `g ∖ X`.
    comps: Vec<BlockId>,
    active: bool,
}

pub struct BlockData {
    pub component: VertexSet,
    pub separator: VertexSet,
    pub card: usize,
    /// PMCs capping this block (the root's caps are implicit: all of Π).
    caps: Vec<PmcId>,
    /// Whether this block arose as a component of a member of Π.
    pub from_pi: bool,
}

/// The evolving Π with its block and cap index, grown incrementally as PMCs
/// are added. Deactivated entries (core shrinking) keep their index slots
/// until `compact` rebuilds everything.
pub struct PmcSet {
    pmcs: Vec<PmcData>,
    index: HashMap<VertexSet, PmcId>,
    blocks: Vec<BlockData>,
    block_index: HashMap<VertexSet, BlockId>,
    active_count: usize,
    root: BlockId,
}

impl PmcSet {
    pub fn new(g: &Graph) -> Self {
        let mut set = PmcSet {
            pmcs: Vec::new(),
            index: HashMap::new(),
            blocks: Vec::new(),
            block_index: HashMap::new(),
            active_count: 0,
            root: BlockId(0),
        };
        let full = g.full_set();
        set.root = set.intern_block(full, g.empty_set(), false);
        set
    }

    pub fn root(&self) -> BlockId {
        self.root
    }

    pub fn len(&self) -> usize {
        self.active_count
    }

    pub fn is_empty(&self) -> bool {
        self.active_count == 0
    }

    pub fn block(&self, id: BlockId) -> &BlockData {
        &self.blocks[id.0 as usize]
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_ids(&self) -> impl Iterator<Item = BlockId> + '_ {
        (0..self.blocks.len()).map(|i| BlockId(i as u32))
    }

    pub fn pmc_vertices(&self, id: PmcId) -> &VertexSet {
        &self.pmcs[id.0 as usize].vertices
    }

    pub fn is_active(&self, id: PmcId) -> bool {
        self.pmcs[id.0 as usize].active
    }

    pub fn active_ids(&self) -> impl Iterator<Item = PmcId> + '_ {
        self.pmcs
            .iter()
            .enumerate()
            .filter(|(_, p)| p.active)
            .map(|(i, _)| PmcId(i as u32))
    }

    pub fn contains(&self, x: &VertexSet) -> bool {
        self.index.get(x).is_some_and(|&id| self.pmcs[id.0 as usize].active)
    }

    pub fn find_block(&self, component: &VertexSet) -> Option<BlockId> {
        self.block_index.get(component).copied()
    }

    /// Inserts a PMC, returning whether Π actually grew. Reinserting a
    /// deactivated set revives it.
    pub fn add(&mut self, g: &Graph, x: VertexSet) -> bool {
        debug_assert!(is_pmc(g, &x), "inserted set is not a potential maximal clique");
        if let Some(&id) = self.index.get(&x) {
            let data = &mut self.pmcs[id.0 as usize];
            if data.active {
                return false;
            }
            data.active = true;
            self.active_count += 1;
            return true;
        }
        let id = PmcId(self.pmcs.len() as u32);
        let mut comps = Vec::new();
        for component in g.components(&x) {
            let separator = g.neighborhood(&component);
            comps.push(self.intern_block(component, separator, true));
        }
        // Register this PMC as a cap: for each separator S around X, the cap
        // target is the full component of S on the X side.
        for &cid in &comps {
            let sep = self.blocks[cid.0 as usize].separator.clone();
            let seed_set = x.difference(&sep);
            let seed = seed_set.first().expect("PMC equals one of its separators");
            let mut allowed = g.full_set();
            allowed.subtract(&sep);
            let target = g.component_of(seed, &allowed);
            let target_sep = g.neighborhood(&target);
            debug_assert_eq!(target_sep, sep);
            let tid = self.intern_block(target, target_sep, false);
            self.blocks[tid.0 as usize].caps.push(id);
        }
        self.pmcs.push(PmcData {
            card: x.card(),
            vertices: x.clone(),
            comps,
            active: true,
        });
        self.index.insert(x, id);
        self.active_count += 1;
        true
    }

    fn intern_block(&mut self, component: VertexSet, separator: VertexSet, from_pi: bool) -> BlockId {
        if let Some(&id) = self.block_index.get(&component) {
            if from_pi {
                self.blocks[id.0 as usize].from_pi = true;
            }
            return id;
        }
        let id = BlockId(self.blocks.len() as u32);
        self.blocks.push(BlockData {
            card: component.card(),
            component: component.clone(),
            separator,
            caps: Vec::new(),
            from_pi,
        });
        self.block_index.insert(component, id);
        id
    }

    /// Keeps only the marked PMCs and rebuilds the index from scratch.
    pub fn retain_and_compact(&mut self, g: &Graph, keep: &[bool]) {
        let kept: Vec<VertexSet> = self
            .pmcs
            .iter()
            .enumerate()
            .filter(|(i, p)| p.active && keep[*i])
            .map(|(_, p)| p.vertices.clone())
            .collect();
        *self = PmcSet::new(g);
        for x in kept {
            self.add(g, x);
        }
    }

    /// Caps of a block in deterministic evaluation order (size, then set
    /// order), filtered to the active Π. The root is capped by all of Π.
    fn sorted_caps(&self, block: BlockId) -> Vec<PmcId> {
        let mut ids: Vec<PmcId> = if block == self.root {
            self.active_ids().collect()
        } else {
            self.blocks[block.0 as usize]
                .caps
                .iter()
                .copied()
                .filter(|&id| self.pmcs[id.0 as usize].active)
                .collect()
        };
        ids.sort_by(|&a, &b| {
            let pa = &self.pmcs[a.0 as usize];
            let pb = &self.pmcs[b.0 as usize];
            pa.card.cmp(&pb.card).then_with(|| pa.vertices.cmp(&pb.vertices))
        });
        ids
    }

    /// Blocks in ascending (cardinality, set order); the scan order of the DP.
    fn sorted_blocks(&self) -> Vec<BlockId> {
        let mut ids: Vec<BlockId> = (0..self.blocks.len() as u32).map(BlockId).collect();
        ids.sort_by(|&a, &b| {
            let ba = &self.blocks[a.0 as usize];
            let bb = &self.blocks[b.0 as usize];
            ba.card.cmp(&bb.card).then_with(|| ba.component.cmp(&bb.component))
        });
        ids
    }

    /// The blocks a cap splits `block` into: the cap's components lying
    /// inside the block. Components never straddle the block boundary, so a
    /// single membership bit decides containment.
    fn children_of(&self, block: BlockId, cap: PmcId) -> impl Iterator<Item = BlockId> + '_ {
        let host = &self.blocks[block.0 as usize];
        let is_root = block == self.root;
        self.pmcs[cap.0 as usize].comps.iter().copied().filter(move |&c| {
            is_root || {
                let comp = &self.blocks[c.0 as usize].component;
                let inside = comp
                    .first()
                    .is_some_and(|v| host.component.contains(v));
                debug_assert_eq!(inside, comp.is_subset(&host.component));
                inside
            }
        })
    }
}

pub struct DpTable {
    /// Component treewidth per block; `None` when no cap chain completes.
    pub value: Vec<Option<Width>>,
    /// The minimizing cap per block, for traceback.
    pub best: Vec<Option<PmcId>>,
    order: Vec<BlockId>,
}

impl DpTable {
    pub fn width_of(&self, block: BlockId) -> Option<Width> {
        self.value[block.0 as usize]
    }
}

/// Runs the dynamic program, filling every block bottom-up. The root value
/// is the treewidth of `g` within Π.
pub fn run_dp(g: &Graph, pi: &PmcSet) -> DpTable {
    debug_assert_eq!(pi.block(pi.root()).component, g.full_set());
    let order = pi.sorted_blocks();
    let mut value: Vec<Option<Width>> = vec![None; pi.blocks.len()];
    let mut best: Vec<Option<PmcId>> = vec![None; pi.blocks.len()];
    for &bid in &order {
        let mut cur: Option<(Width, PmcId)> = None;
        for cap in pi.sorted_caps(bid) {
            let bag_k = pi.pmcs[cap.0 as usize].card as u32 - 1;
            if let Some((w, _)) = cur {
                if bag_k > w.k {
                    break; // caps are size-sorted; nothing better follows
                }
            }
            let mut total = Some(Width::new(bag_k, 1));
            for child in pi.children_of(bid, cap) {
                total = match (total, value[child.0 as usize]) {
                    (Some(acc), Some(w)) => Some(acc + w),
                    _ => None,
                };
                if total.is_none() {
                    break;
                }
            }
            let Some(w) = total else { continue };
            let better = match cur {
                None => true,
                Some((cw, cid)) => {
                    let cand = (
                        w,
                        pi.pmcs[cap.0 as usize].card,
                        &pi.pmcs[cap.0 as usize].vertices,
                    );
                    let incumbent = (cw, pi.pmcs[cid.0 as usize].card, &pi.pmcs[cid.0 as usize].vertices);
                    cand < incumbent
                }
            };
            if better {
                cur = Some((w, cap));
            }
        }
        if let Some((w, cap)) = cur {
            value[bid.0 as usize] = Some(w);
            best[bid.0 as usize] = Some(cap);
        }
    }
    DpTable { value, best, order }
}

/// Width of the best decomposition over Π, when defined.
pub fn dp_width(pi: &PmcSet, table: &DpTable) -> Option<Width> {
    table.value[pi.root().0 as usize]
}

/// Traces the table back into a tree decomposition with bags from Π.
pub fn extract_td(pi: &PmcSet, table: &DpTable) -> Option<TreeDecomposition> {
    assert_eq!(table.value.len(), pi.blocks.len(), "stale DP table");
    table.value[pi.root().0 as usize]?;
    let mut bags = Vec::new();
    let mut edges = Vec::new();
    let mut stack: Vec<(BlockId, Option<usize>)> = vec![(pi.root(), None)];
    while let Some((bid, parent)) = stack.pop() {
        let cap = table.best[bid.0 as usize].expect("defined block lost its cap");
        let idx = bags.len();
        bags.push(pi.pmcs[cap.0 as usize].vertices.clone());
        if let Some(p) = parent {
            edges.push((p, idx));
        }
        for child in pi.children_of(bid, cap) {
            stack.push((child, Some(idx)));
        }
    }
    Some(TreeDecomposition { bags, edges })
}

/// Like `extract_td` but breaking ties uniformly at random among the caps
/// achieving each block's minimum, sampling a random optimal decomposition.
pub fn random_td(pi: &PmcSet, table: &DpTable, rng: &mut impl Rng) -> Option<TreeDecomposition> {
    assert_eq!(table.value.len(), pi.blocks.len(), "stale DP table");
    table.value[pi.root().0 as usize]?;
    let mut bags = Vec::new();
    let mut edges = Vec::new();
    let mut stack: Vec<(BlockId, Option<usize>)> = vec![(pi.root(), None)];
    while let Some((bid, parent)) = stack.pop() {
        let target = table.value[bid.0 as usize].expect("reached an undefined block");
        let mut ties: Vec<PmcId> = Vec::new();
        for cap in pi.sorted_caps(bid) {
            let bag_k = pi.pmcs[cap.0 as usize].card as u32 - 1;
            if bag_k > target.k {
                break;
            }
            let mut total = Some(Width::new(bag_k, 1));
            for child in pi.children_of(bid, cap) {
                total = match (total, table.value[child.0 as usize]) {
                    (Some(acc), Some(w)) => Some(acc + w),
                    _ => None,
                };
            }
            if total == Some(target) {
                ties.push(cap);
            }
        }
        let cap = ties[rng.gen_range(0..ties.len())];
        let idx = bags.len();
        bags.push(pi.pmcs[cap.0 as usize].vertices.clone());
        if let Some(p) = parent {
            edges.push((p, idx));
        }
        for child in pi.children_of(bid, cap) {
            stack.push((child, Some(idx)));
        }
    }
    Some(TreeDecomposition { bags, edges })
}

/// Marks the PMCs usable in at least one optimal decomposition over Π: a
/// top-down pass hands each block the largest count of width-defining bags
/// its subtree may still spend; caps fitting the budget are core members.
pub fn extract_core(pi: &PmcSet, table: &DpTable) -> Option<Vec<bool>> {
    assert_eq!(table.value.len(), pi.blocks.len(), "stale DP table");
    let w = table.value[pi.root().0 as usize]?;
    let level = w.k;
    let nblocks = pi.blocks.len();
    let mut budget: Vec<Option<u64>> = vec![None; nblocks];
    budget[pi.root().0 as usize] = Some(w.f);
    let mut marks = vec![false; pi.pmcs.len()];
    for &bid in table.order.iter().rev() {
        let Some(phi) = budget[bid.0 as usize] else {
            continue;
        };
        for cap in pi.sorted_caps(bid) {
            let bag_k = pi.pmcs[cap.0 as usize].card as u32 - 1;
            if bag_k > level {
                break;
            }
            let mut total = Some(Width::new(bag_k, 1));
            for child in pi.children_of(bid, cap) {
                total = match (total, table.value[child.0 as usize]) {
                    (Some(acc), Some(w)) => Some(acc + w),
                    _ => None,
                };
            }
            let Some(val) = total else { continue };
            if val.k > level || (val.k == level && val.f > phi) {
                continue;
            }
            marks[cap.0 as usize] = true;
            let used_at_level = if val.k == level { val.f } else { 0 };
            for child in pi.children_of(bid, cap) {
                let cw = table.value[child.0 as usize].expect("summed child undefined");
                let contrib = if cw.k == level { cw.f } else { 0 };
                let avail = phi - (used_at_level - contrib);
                let slot = &mut budget[child.0 as usize];
                *slot = Some(slot.map_or(avail, |b| b.max(avail)));
            }
        }
    }
    Some(marks)
}
