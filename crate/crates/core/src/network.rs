//! Weighted acyclic networks with ordered sources and sinks.
//!
//! [`lah_network`] builds the layered network whose weight matrix is the Lah
//! matrix. Row `r` holds grid vertices `u[r,1], ..., u[r,r]`, the last of which
//! is the sink `b_r`. The source `a_r` feeds `u[r,1]` through a weight-1 stub.
//! Horizontal edges `u[r,c] -> u[r,c+1]` have weight 1 and diagonal edges
//! `u[r,c] -> u[r-1,c]` have weight `r`, so a path `a_m -> b_k` crosses
//! diagonals of weight `m, m-1, ..., k+1`. [`unit_network`] is the same graph
//! with every weight set to 1, and its weight matrix is Pascal's triangle.
//!
//! Path weight is the product of edge weights along the path. Planarity is a
//! property of the builders' layered layout and is not checked.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Axis, Error, Result};
use crate::linalg::ExactMatrix;

/// Largest path count [`enumerate_paths`] will materialize.
pub const DEFAULT_PATH_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

/// Display label of a vertex: `a5`, `u[3,2]`, `b2`, or a free-form name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexLabel {
    Source(usize),
    Inner { row: usize, col: usize },
    Sink(usize),
    Named(String),
}

impl VertexLabel {
    /// `(row, col)` of a grid vertex in the layered layout; the sink `b_r`
    /// sits at `(r, r)`.
    pub fn grid_position(&self) -> Option<(usize, usize)> {
        match *self {
            VertexLabel::Inner { row, col } => Some((row, col)),
            VertexLabel::Sink(r) => Some((r, r)),
            _ => None,
        }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Source(r) => write!(f, "a{r}"),
            VertexLabel::Inner { row, col } => write!(f, "u[{row},{col}]"),
            VertexLabel::Sink(r) => write!(f, "b{r}"),
            VertexLabel::Named(name) => f.write_str(name),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
    pub weight: BigUint,
}

/// A directed acyclic network with positive integer edge weights.
///
/// Construction checks: unique labels, valid endpoints, no parallel edges,
/// weights at least 1, acyclicity, sources with in-degree 0, sinks with
/// out-degree 0, and equally many distinct sources and sinks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    labels: Vec<VertexLabel>,
    edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
    by_label: BTreeMap<VertexLabel, VertexId>,
    sources: Vec<VertexId>,
    sinks: Vec<VertexId>,
    topo: Vec<VertexId>,
}

impl Network {
    pub fn new(
        labels: Vec<VertexLabel>,
        edges: Vec<Edge>,
        sources: Vec<VertexId>,
        sinks: Vec<VertexId>,
    ) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidNetwork(msg));
        let v = labels.len();
        let mut by_label = BTreeMap::new();
        for (id, label) in labels.iter().enumerate() {
            if by_label.insert(label.clone(), VertexId(id)).is_some() {
                return invalid(format!("duplicate vertex label {label}"));
            }
        }
        let mut out = vec![Vec::new(); v];
        let mut in_degree = vec![0usize; v];
        let mut seen = BTreeMap::new();
        for (e, edge) in edges.iter().enumerate() {
            if edge.tail.0 >= v || edge.head.0 >= v {
                return invalid(format!("edge {e} has an endpoint outside 0..{v}"));
            }
            if edge.weight.is_zero() {
                return invalid(format!(
                    "edge {} -> {} has weight 0",
                    labels[edge.tail.0], labels[edge.head.0]
                ));
            }
            if seen.insert((edge.tail, edge.head), e).is_some() {
                return invalid(format!(
                    "parallel edges {} -> {}",
                    labels[edge.tail.0], labels[edge.head.0]
                ));
            }
            out[edge.tail.0].push(e);
            in_degree[edge.head.0] += 1;
        }
        if sources.is_empty() || sources.len() != sinks.len() {
            return invalid(format!(
                "need equally many sources and sinks, got {} and {}",
                sources.len(),
                sinks.len()
            ));
        }
        for (what, list) in [("source", &sources), ("sink", &sinks)] {
            let mut sorted: Vec<_> = list.clone();
            sorted.sort();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return invalid(format!("duplicate {what}"));
            }
            if let Some(bad) = list.iter().find(|x| x.0 >= v) {
                return invalid(format!("{what} {} is not a vertex", bad.0));
            }
        }
        if let Some(s) = sources.iter().find(|s| in_degree[s.0] > 0) {
            return invalid(format!("source {} has incoming edges", labels[s.0]));
        }
        if let Some(t) = sinks.iter().find(|t| !out[t.0].is_empty()) {
            return invalid(format!("sink {} has outgoing edges", labels[t.0]));
        }

        // Kahn's algorithm; vertices left over lie on a cycle.
        let mut remaining = in_degree;
        let mut queue: VecDeque<usize> = (0..v).filter(|&x| remaining[x] == 0).collect();
        let mut topo = Vec::with_capacity(v);
        while let Some(x) = queue.pop_front() {
            topo.push(VertexId(x));
            for &e in &out[x] {
                let h = edges[e].head.0;
                remaining[h] -= 1;
                if remaining[h] == 0 {
                    queue.push_back(h);
                }
            }
        }
        if topo.len() != v {
            return invalid("graph has a directed cycle".into());
        }

        Ok(Network {
            labels,
            edges,
            out,
            by_label,
            sources,
            sinks,
            topo,
        })
    }

    /// Number of source/sink pairs.
    pub fn n(&self) -> usize {
        self.sources.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &VertexLabel {
        &self.labels[v.0]
    }

    pub fn vertex(&self, label: &VertexLabel) -> Option<VertexId> {
        self.by_label.get(label).copied()
    }

    /// Grid vertex `u[row,col]` of a layered network (`b_r` when `col == row`).
    pub fn grid_vertex(&self, row: usize, col: usize) -> Option<VertexId> {
        let label = if row == col {
            VertexLabel::Sink(row)
        } else {
            VertexLabel::Inner { row, col }
        };
        self.vertex(&label)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = &Edge> {
        self.out[v.0].iter().map(|&e| &self.edges[e])
    }

    pub fn edge_between(&self, tail: VertexId, head: VertexId) -> Option<&Edge> {
        self.out_edges(tail).find(|e| e.head == head)
    }

    pub fn sources(&self) -> &[VertexId] {
        &self.sources
    }

    pub fn sinks(&self) -> &[VertexId] {
        &self.sinks
    }

    /// Source `a_i`, 1-based.
    pub fn source(&self, i: usize) -> Result<VertexId> {
        check(Axis::Row, i, self.n())?;
        Ok(self.sources[i - 1])
    }

    /// Sink `b_j`, 1-based.
    pub fn sink(&self, j: usize) -> Result<VertexId> {
        check(Axis::Column, j, self.n())?;
        Ok(self.sinks[j - 1])
    }

    pub fn topological_order(&self) -> &[VertexId] {
        &self.topo
    }

    /// A copy with the weight of edge `tail -> head` replaced.
    pub fn with_edge_weight(
        &self,
        tail: VertexId,
        head: VertexId,
        weight: BigUint,
    ) -> Result<Self> {
        let Some(e) = self.out[tail.0]
            .iter()
            .copied()
            .find(|&e| self.edges[e].head == head)
        else {
            return Err(self.missing_edge(tail, head));
        };
        if weight.is_zero() {
            return Err(Error::InvalidNetwork(
                "edge weights must be at least 1".into(),
            ));
        }
        let mut copy = self.clone();
        copy.edges[e].weight = weight;
        Ok(copy)
    }

    fn missing_edge(&self, tail: VertexId, head: VertexId) -> Error {
        let name = |v: VertexId| {
            self.labels
                .get(v.0)
                .map(|l| format!("{l}"))
                .unwrap_or_else(|| format!("#{}", v.0))
        };
        Error::MissingEdge {
            tail: name(tail),
            head: name(head),
        }
    }

    // Backward accumulation towards `sink` over reverse topological order:
    // value[v] = sum over edges v -> w of edge_value(e) * value[w].
    fn accumulate(&self, sink: VertexId, edge_value: impl Fn(&Edge) -> BigUint) -> Vec<BigUint> {
        let mut value = vec![BigUint::zero(); self.vertex_count()];
        value[sink.0] = BigUint::one();
        for &v in self.topo.iter().rev() {
            if v == sink {
                continue;
            }
            let mut acc = BigUint::zero();
            for e in self.out_edges(v) {
                if !value[e.head.0].is_zero() {
                    acc += edge_value(e) * &value[e.head.0];
                }
            }
            value[v.0] = acc;
        }
        value
    }

    fn source_by_sink(&self, edge_value: impl Fn(&Edge) -> BigUint) -> ExactMatrix {
        let n = self.n();
        let mut columns = Vec::with_capacity(n);
        for &sink in &self.sinks {
            let value = self.accumulate(sink, &edge_value);
            columns.push(
                self.sources
                    .iter()
                    .map(|s| value[s.0].clone())
                    .collect::<Vec<_>>(),
            );
        }
        ExactMatrix::from_fn(n, n, |i, j| BigInt::from(columns[j - 1][i - 1].clone()))
    }
}

fn check(axis: Axis, index: usize, bound: usize) -> Result<()> {
    if index == 0 || index > bound {
        return Err(Error::IndexOutOfRange { axis, index, bound });
    }
    Ok(())
}

fn layered(n: usize, diagonal_weight: impl Fn(usize) -> BigUint) -> Network {
    assert!(n >= 1, "network needs n >= 1");
    let mut labels = Vec::new();
    let mut grid: Vec<Vec<VertexId>> = vec![Vec::new()];
    let mut sources = Vec::with_capacity(n);
    for r in 1..=n {
        sources.push(VertexId(labels.len()));
        labels.push(VertexLabel::Source(r));
        let mut row = Vec::with_capacity(r);
        for c in 1..=r {
            row.push(VertexId(labels.len()));
            labels.push(if c == r {
                VertexLabel::Sink(r)
            } else {
                VertexLabel::Inner { row: r, col: c }
            });
        }
        grid.push(row);
    }
    let sinks = (1..=n).map(|r| grid[r][r - 1]).collect();

    let mut edges = Vec::new();
    let edge = |tail, head, weight| Edge { tail, head, weight };
    for r in 1..=n {
        edges.push(edge(sources[r - 1], grid[r][0], BigUint::one()));
        for c in 1..r {
            edges.push(edge(grid[r][c - 1], grid[r][c], BigUint::one()));
            edges.push(edge(grid[r][c - 1], grid[r - 1][c - 1], diagonal_weight(r)));
        }
    }
    Network::new(labels, edges, sources, sinks).expect("layered network is well formed")
}

/// The network whose weight matrix is the `n x n` Lah matrix.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn lah_network(n: usize) -> Network {
    layered(n, BigUint::from)
}

/// [`lah_network`] with every edge weight 1.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn unit_network(n: usize) -> Network {
    layered(n, |_| BigUint::one())
}

/// `W[i][j]` = sum over paths `a_i -> b_j` of the product of edge weights,
/// by dynamic programming (one backward pass per sink).
pub fn weight_matrix(network: &Network) -> ExactMatrix {
    network.source_by_sink(|e| e.weight.clone())
}

/// Number of paths `a_i -> b_j`, by the same dynamic programming with unit weights.
pub fn path_count_matrix(network: &Network) -> ExactMatrix {
    network.source_by_sink(|_| BigUint::one())
}

/// A walk through the network, stored as its vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    vertices: Vec<VertexId>,
}

impl Path {
    pub fn new(vertices: Vec<VertexId>) -> Self {
        Path { vertices }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    /// Consecutive `(tail, head)` pairs.
    pub fn steps(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn display<'a>(&'a self, network: &'a Network) -> impl fmt::Display + 'a {
        DisplayPath {
            path: self,
            network,
        }
    }
}

struct DisplayPath<'a> {
    path: &'a Path,
    network: &'a Network,
}

impl fmt::Display for DisplayPath<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, &v) in self.path.vertices.iter().enumerate() {
            if t > 0 {
                f.write_str(" -> ")?;
            }
            write!(f, "{}", self.network.label(v))?;
        }
        Ok(())
    }
}

/// All paths `a_i -> b_j` in depth-first order (out-edges in insertion order).
/// Fails if there are more than [`DEFAULT_PATH_LIMIT`] of them.
pub fn enumerate_paths(network: &Network, i: usize, j: usize) -> Result<Vec<Path>> {
    enumerate_paths_with_limit(network, i, j, DEFAULT_PATH_LIMIT)
}

pub fn enumerate_paths_with_limit(
    network: &Network,
    i: usize,
    j: usize,
    limit: u64,
) -> Result<Vec<Path>> {
    let (source, sink) = (network.source(i)?, network.sink(j)?);
    let counts = network.accumulate(sink, |_| BigUint::one());
    let total = &counts[source.0];
    if *total > BigUint::from(limit) {
        return Err(Error::GuardExceeded {
            what: "path enumeration",
            estimate: total.clone(),
            limit: BigUint::from(limit),
            advice: "use weight_matrix for weighted path sums",
        });
    }
    let reaches: Vec<bool> = counts.iter().map(|c| !c.is_zero()).collect();
    let mut out = Vec::new();
    if reaches[source.0] {
        let mut stack = vec![source];
        walk(network, sink, &reaches, &mut stack, &mut |p| {
            out.push(Path::new(p.to_vec()))
        });
    }
    Ok(out)
}

// Depth-first extension of `stack` towards `sink`, only through vertices that
// can still reach it. The graph is acyclic, so every walk is simple.
pub(crate) fn walk(
    network: &Network,
    sink: VertexId,
    allowed: &[bool],
    stack: &mut Vec<VertexId>,
    emit: &mut dyn FnMut(&[VertexId]),
) {
    let v = *stack.last().expect("walk starts from a vertex");
    if v == sink {
        emit(stack);
        return;
    }
    for e in network.out_edges(v) {
        if allowed[e.head.0] {
            stack.push(e.head);
            walk(network, sink, allowed, stack, emit);
            stack.pop();
        }
    }
}

/// Checks that `path` runs from a source to a sink along existing edges
/// without repeating a vertex.
pub fn validate_path(network: &Network, path: &Path) -> Result<()> {
    let vs = path.vertices();
    let (Some(&first), Some(&last)) = (vs.first(), vs.last()) else {
        return Err(Error::InvalidPath("path has no vertices".into()));
    };
    if let Some(v) = vs.iter().find(|v| v.0 >= network.vertex_count()) {
        return Err(Error::InvalidPath(format!(
            "vertex #{} does not exist",
            v.0
        )));
    }
    if !network.sources.contains(&first) {
        return Err(Error::InvalidPath(format!(
            "{} is not a source",
            network.label(first)
        )));
    }
    if !network.sinks.contains(&last) {
        return Err(Error::InvalidPath(format!(
            "{} is not a sink",
            network.label(last)
        )));
    }
    let mut seen = vec![false; network.vertex_count()];
    for &v in vs {
        if core::mem::replace(&mut seen[v.0], true) {
            return Err(Error::InvalidPath(format!("{} repeats", network.label(v))));
        }
    }
    for (t, h) in path.steps() {
        if network.edge_between(t, h).is_none() {
            return Err(network.missing_edge(t, h));
        }
    }
    Ok(())
}

/// Product of edge weights along `path`.
pub fn path_weight(network: &Network, path: &Path) -> Result<BigUint> {
    validate_path(network, path)?;
    Ok(path
        .steps()
        .map(|(t, h)| &network.edge_between(t, h).expect("validated").weight)
        .fold(BigUint::one(), |acc, w| acc * w))
}
