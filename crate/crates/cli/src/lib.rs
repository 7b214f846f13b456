//! PACE 2017 file formats: `.gr` graphs in, `.td` tree decompositions out.
//!
//! Vertices in the files are 1-based labels; internally everything is dense
//! 0-based ids. The label map is carried alongside the graph so emitted
//! decompositions speak the file's language.

use thiserror::Error;
use treewidth_core::graph::Graph;
use treewidth_core::set::VertexSet;
use treewidth_core::td::TreeDecomposition;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {0}: expected header \"p tw <n> <m>\"")]
    MalformedHeader(usize),
    #[error("no \"p tw\" header found")]
    MissingHeader,
    #[error("line {0}: second header")]
    DuplicateHeader(usize),
    #[error("line {0}: vertex {1} out of range 1..={2}")]
    VertexOutOfRange(usize, i64, usize),
    #[error("line {0}: cannot parse \"{1}\"")]
    BadLine(usize, String),
    #[error("line {0}: expected header \"s td <bags> <maxbag> <n>\"")]
    MalformedTdHeader(usize),
    #[error("line {0}: bag index {1} out of range 1..={2}")]
    BagOutOfRange(usize, i64, usize),
    #[error("bag {0} declared more than once")]
    DuplicateBagLine(usize),
    #[error("bag {0} never declared")]
    MissingBag(usize),
}

/// A graph read from a `.gr` file plus the original 1-based labels.
pub struct ParsedGraph {
    pub graph: Graph,
    /// labels[v] is the file label of internal vertex v.
    pub labels: Vec<u32>,
}

/// Parses PACE `.gr` text: comments (`c`) skipped, one `p tw <n> <m>`
/// header, then `u v` edge lines. Self-loops and repeated edges are
/// dropped silently.
pub fn parse_gr(text: &str) -> Result<ParsedGraph, ParseError> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if n.is_some() {
                return Err(ParseError::DuplicateHeader(lineno));
            }
            let mut it = line.split_whitespace();
            let (p, tw) = (it.next(), it.next());
            let nv = it.next().and_then(|t| t.parse::<usize>().ok());
            let ne = it.next().and_then(|t| t.parse::<usize>().ok());
            if p != Some("p") || tw != Some("tw") || nv.is_none() || ne.is_none() || it.next().is_some() {
                return Err(ParseError::MalformedHeader(lineno));
            }
            n = Some(nv.unwrap());
            continue;
        }
        let nv = n.ok_or(ParseError::MissingHeader)?;
        let mut it = line.split_whitespace();
        let u = it
            .next()
            .and_then(|t| t.parse::<i64>().ok())
            .ok_or_else(|| ParseError::BadLine(lineno, line.to_string()))?;
        let v = it
            .next()
            .and_then(|t| t.parse::<i64>().ok())
            .ok_or_else(|| ParseError::BadLine(lineno, line.to_string()))?;
        if it.next().is_some() {
            return Err(ParseError::BadLine(lineno, line.to_string()));
        }
        for &x in &[u, v] {
            if x < 1 || x as usize > nv {
                return Err(ParseError::VertexOutOfRange(lineno, x, nv));
            }
        }
        edges.push((u as u32 - 1, v as u32 - 1));
    }
    let n = n.ok_or(ParseError::MissingHeader)?;
    Ok(ParsedGraph {
        graph: Graph::from_edges(n, edges),
        labels: (1..=n as u32).collect(),
    })
}

/// Renders a tree decomposition in `.td` format with original labels,
/// bags first, then the tree edges, 1-based throughout.
pub fn emit_td(td: &TreeDecomposition, labels: &[u32], n: usize) -> String {
    let max_bag = td.bags.iter().map(|b| b.card()).max().unwrap_or(0);
    let mut out = format!("s td {} {} {}\n", td.bags.len(), max_bag, n);
    for (i, bag) in td.bags.iter().enumerate() {
        let mut names: Vec<u32> = bag.iter().map(|v| labels[v as usize]).collect();
        names.sort_unstable();
        out.push_str(&format!("b {}", i + 1));
        for name in names {
            out.push_str(&format!(" {name}"));
        }
        out.push('\n');
    }
    let mut edges = td.edges.clone();
    edges.sort_unstable();
    for (a, b) in edges {
        out.push_str(&format!("{} {}\n", a.min(b) + 1, a.max(b) + 1));
    }
    out
}

/// A `.td` file: declared sizes plus label-space bags and 1-based tree edges.
pub struct ParsedTd {
    pub bag_count: usize,
    pub max_bag: usize,
    pub n: usize,
    pub bags: Vec<Vec<u32>>,
    pub edges: Vec<(usize, usize)>,
}

pub fn parse_td(text: &str) -> Result<ParsedTd, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<u32>>> = Vec::new();
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('s') {
            if header.is_some() {
                return Err(ParseError::DuplicateHeader(lineno));
            }
            let mut it = line.split_whitespace();
            let (s, td) = (it.next(), it.next());
            let counts: Vec<Option<usize>> = (0..3).map(|_| it.next().and_then(|t| t.parse().ok())).collect();
            if s != Some("s") || td != Some("td") || counts.iter().any(|c| c.is_none()) || it.next().is_some() {
                return Err(ParseError::MalformedTdHeader(lineno));
            }
            header = Some((counts[0].unwrap(), counts[1].unwrap(), counts[2].unwrap()));
            bags = vec![None; counts[0].unwrap()];
            continue;
        }
        let (bag_count, _, n) = header.ok_or(ParseError::MissingHeader)?;
        if let Some(rest) = line.strip_prefix("b ").or(if line == "b" { Some("") } else { None }) {
            let mut it = rest.split_whitespace();
            let i = it
                .next()
                .and_then(|t| t.parse::<i64>().ok())
                .ok_or_else(|| ParseError::BadLine(lineno, line.to_string()))?;
            if i < 1 || i as usize > bag_count {
                return Err(ParseError::BagOutOfRange(lineno, i, bag_count));
            }
            let mut verts = Vec::new();
            for tok in it {
                let v = tok
                    .parse::<i64>()
                    .map_err(|_| ParseError::BadLine(lineno, line.to_string()))?;
                if v < 1 || v as usize > n {
                    return Err(ParseError::VertexOutOfRange(lineno, v, n));
                }
                verts.push(v as u32);
            }
            let slot = &mut bags[i as usize - 1];
            if slot.is_some() {
                return Err(ParseError::DuplicateBagLine(i as usize));
            }
            *slot = Some(verts);
            continue;
        }
        let mut it = line.split_whitespace();
        let a = it
            .next()
            .and_then(|t| t.parse::<i64>().ok())
            .ok_or_else(|| ParseError::BadLine(lineno, line.to_string()))?;
        let b = it
            .next()
            .and_then(|t| t.parse::<i64>().ok())
            .ok_or_else(|| ParseError::BadLine(lineno, line.to_string()))?;
        if it.next().is_some() {
            return Err(ParseError::BadLine(lineno, line.to_string()));
        }
        for &x in &[a, b] {
            if x < 1 || x as usize > bag_count {
                return Err(ParseError::BagOutOfRange(lineno, x, bag_count));
            }
        }
        edges.push((a as usize - 1, b as usize - 1));
    }
    let (bag_count, max_bag, n) = header.ok_or(ParseError::MissingHeader)?;
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or(ParseError::MissingBag(i + 1)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ParsedTd {
        bag_count,
        max_bag,
        n,
        bags,
        edges,
    })
}

/// Turns a parsed `.td` back into an internal decomposition over the given
/// label map (labels[v] must enumerate 1..=n).
pub fn td_from_parsed(parsed: &ParsedTd, n: usize) -> TreeDecomposition {
    let bags = parsed
        .bags
        .iter()
        .map(|labels| VertexSet::from_iter_n(n, labels.iter().map(|&l| l - 1)))
        .collect();
    TreeDecomposition {
        bags,
        edges: parsed.edges.clone(),
    }
}
