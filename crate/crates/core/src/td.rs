//! Tree decompositions and their validation.

use crate::graph::Graph;
use crate::set::VertexSet;
use crate::width::Width;
use thiserror::Error;

#[derive(Clone, Debug)]
pub struct TreeDecomposition {
    pub bags: Vec<VertexSet>,
    /// Tree edges over bag indices.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TdError {
    #[error("vertex {0} appears in no bag")]
    MissingVertex(u32),
    #[error("edge {{{0}, {1}}} not covered by any bag")]
    UncoveredEdge(u32, u32),
    #[error("bags containing vertex {0} do not induce a subtree")]
    DisconnectedOccupancy(u32),
    #[error("bags {0} and {1} are identical")]
    DuplicateBag(usize, usize),
    #[error("bag graph is not a tree ({0} bags, {1} edges)")]
    NotATree(usize, usize),
    #[error("decomposition has no bags but the graph has vertices")]
    Empty,
}

impl TreeDecomposition {
    /// Width without validation; requires at least one bag.
    pub fn width(&self) -> Width {
        let max = self.bags.iter().map(|b| b.card()).max().unwrap_or(0);
        let f = self.bags.iter().filter(|b| b.card() == max).count() as u64;
        Width::new(max.max(1) as u32 - 1, f)
    }

    /// Checks the three decomposition conditions plus bag distinctness and
    /// tree shape, returning the width on success.
    pub fn validate(&self, g: &Graph) -> Result<Width, TdError> {
        let nbags = self.bags.len();
        if nbags == 0 {
            return if g.n() == 0 {
                Ok(Width::new(0, 0))
            } else {
                Err(TdError::Empty)
            };
        }
        if self.edges.len() + 1 != nbags {
            return Err(TdError::NotATree(nbags, self.edges.len()));
        }
        // Connectivity of the bag tree.
        let mut adj = vec![Vec::new(); nbags];
        for &(a, b) in &self.edges {
            if a >= nbags || b >= nbags || a == b {
                return Err(TdError::NotATree(nbags, self.edges.len()));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; nbags];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        if count != nbags {
            return Err(TdError::NotATree(nbags, self.edges.len()));
        }
        // Distinct bags.
        let mut sorted: Vec<(usize, &VertexSet)> = self.bags.iter().enumerate().collect();
        sorted.sort_by(|a, b| a.1.cmp(b.1));
        for w in sorted.windows(2) {
            if w[0].1 == w[1].1 {
                return Err(TdError::DuplicateBag(w[0].0.min(w[1].0), w[0].0.max(w[1].0)));
            }
        }
        // Vertex coverage and connected occupancy.
        let n = g.n();
        let mut occupancy: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, bag) in self.bags.iter().enumerate() {
            for v in bag {
                occupancy[v as usize].push(i);
            }
        }
        for (v, occ) in occupancy.iter().enumerate() {
            if occ.is_empty() {
                return Err(TdError::MissingVertex(v as u32));
            }
            // Subtree test: the occupancy nodes induce |occ| - 1 tree edges.
            let inside: Vec<bool> = {
                let mut m = vec![false; nbags];
                for &i in occ {
                    m[i] = true;
                }
                m
            };
            let induced = self
                .edges
                .iter()
                .filter(|&&(a, b)| inside[a] && inside[b])
                .count();
            if induced + 1 != occ.len() {
                return Err(TdError::DisconnectedOccupancy(v as u32));
            }
        }
        // Edge coverage.
        for u in 0..n as u32 {
            for v in g.adj(u).iter().filter(|&v| v > u) {
                if !occupancy[u as usize]
                    .iter()
                    .any(|&i| self.bags[i].contains(v))
                {
                    return Err(TdError::UncoveredEdge(u, v));
                }
            }
        }
        Ok(self.width())
    }

    /// Joins decompositions of disjoint parts into one tree by linking the
    /// first bag of each part to the first bag of the previous one.
    pub fn join(parts: Vec<TreeDecomposition>) -> TreeDecomposition {
        let mut bags = Vec::new();
        let mut edges = Vec::new();
        let mut anchors = Vec::new();
        for part in parts {
            let offset = bags.len();
            if part.bags.is_empty() {
                continue;
            }
            anchors.push(offset);
            bags.extend(part.bags);
            edges.extend(part.edges.iter().map(|&(a, b)| (a + offset, b + offset)));
        }
        for w in anchors.windows(2) {
            edges.push((w[0], w[1]));
        }
        TreeDecomposition { bags, edges }
    }
}
