//! Simple graphs on labeled nodes, their graphical building sets, and
//! enumerators for the graph classes that appear in the bound theorems.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::building_sets::{BuildingSet, MAX_GROUND};
use crate::node_set::{NodeSet, MAX_LABEL};

/// Largest `m` accepted by the exhaustive graph enumerators.
pub const MAX_ENUMERATION_NODES: usize = 7;
/// Largest `m` accepted by [`enumerate_trees`].
pub const MAX_TREE_NODES: usize = 10;
/// Largest node count accepted by [`SimpleGraph::is_hamiltonian`].
pub const MAX_HAMILTONIAN_NODES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("{kind} graph needs at least {min} nodes, got {m}")]
    MTooSmall { kind: &'static str, m: usize, min: usize },
    #[error("{kind} enumeration supports at most {max} nodes, got {m}")]
    MTooLarge { kind: &'static str, m: usize, max: usize },
    #[error("graph on {0} nodes exceeds the supported maximum of {MAX_GROUND}")]
    GroundTooLarge(usize),
    #[error("Hamiltonicity check supports at most {MAX_HAMILTONIAN_NODES} nodes, got {0}")]
    TooLargeForHamiltonicity(usize),
    #[error("{0} does not induce a connected subgraph")]
    SNotConnected(NodeSet),
    #[error("contracting every node leaves an empty graph")]
    EmptyQuotient,
    #[error("invalid edge ({0}, {1})")]
    InvalidEdge(usize, usize),
    #[error("invalid graph: {0}")]
    Parse(String),
}

/// A loopless graph without multiple edges on a set of labeled nodes.
///
/// Graphs built by the constructors live on `[m]`; quotients keep the
/// original labels of the surviving nodes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    nodes: NodeSet,
    // adj[label - 1] = neighbours of `label`
    adj: [NodeSet; MAX_LABEL],
}

impl SimpleGraph {
    /// The edgeless graph on `[m]`.
    pub fn empty(m: usize) -> Result<Self, GraphError> {
        if m > MAX_GROUND {
            return Err(GraphError::GroundTooLarge(m));
        }
        Ok(Self::on_nodes(NodeSet::interval(m)))
    }

    /// The edgeless graph on an arbitrary label set.
    pub fn on_nodes(nodes: NodeSet) -> Self {
        SimpleGraph {
            nodes,
            adj: [NodeSet::EMPTY; MAX_LABEL],
        }
    }

    pub fn from_edges(m: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(m)?;
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<(), GraphError> {
        if i == j || !self.nodes.contains(i) || !self.nodes.contains(j) {
            return Err(GraphError::InvalidEdge(i, j));
        }
        self.adj[i - 1].insert(j);
        self.adj[j - 1].insert(i);
        Ok(())
    }

    pub fn nodes(&self) -> NodeSet {
        self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn neighbors(&self, v: usize) -> NodeSet {
        if self.nodes.contains(v) {
            self.adj[v - 1]
        } else {
            NodeSet::EMPTY
        }
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.neighbors(i).contains(j)
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.nodes
            .iter()
            .flat_map(|i| {
                self.adj[i - 1]
                    .iter()
                    .filter(move |&j| j > i)
                    .map(move |j| (i, j))
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.nodes.iter().map(|v| self.adj[v - 1].len()).sum::<usize>() / 2
    }

    /// Union of the neighbourhoods of the members of `s`.
    pub fn neighborhood(&self, s: NodeSet) -> NodeSet {
        s.iter().fold(NodeSet::EMPTY, |acc, v| acc.union(self.neighbors(v)))
    }

    /// Whether the subgraph induced on `s` is connected. The empty set is not.
    pub fn is_connected_set(&self, s: NodeSet) -> bool {
        let Some(start) = s.min() else {
            return false;
        };
        let mut reached = NodeSet::singleton(start);
        let mut frontier = reached;
        while !frontier.is_empty() {
            let next = self.neighborhood(frontier).intersection(s).difference(reached);
            reached = reached.union(next);
            frontier = next;
        }
        reached == s
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_set(self.nodes)
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count() + 1 == self.node_count()
    }

    /// Exact Hamiltonian-cycle test by dynamic programming over
    /// `(visited set, endpoint)` states. Graphs with fewer than 3 nodes have
    /// no cycle.
    pub fn is_hamiltonian(&self) -> Result<bool, GraphError> {
        let k = self.node_count();
        if k > MAX_HAMILTONIAN_NODES {
            return Err(GraphError::TooLargeForHamiltonicity(k));
        }
        if k < 3 {
            return Ok(false);
        }
        let labels = self.nodes.to_vec();
        // local adjacency over indices 0..k
        let local: Vec<u32> = labels
            .iter()
            .map(|&v| {
                labels
                    .iter()
                    .enumerate()
                    .filter(|&(_, &u)| self.has_edge(v, u))
                    .fold(0u32, |acc, (idx, _)| acc | (1 << idx))
            })
            .collect();
        let full = (1usize << k) - 1;
        // ends[mask] = endpoints of paths from index 0 visiting exactly `mask`
        let mut ends = vec![0u32; full + 1];
        ends[1] = 1;
        for mask in 1..=full {
            if mask & 1 == 0 || ends[mask] == 0 {
                continue;
            }
            let mut e = ends[mask];
            while e != 0 {
                let v = e.trailing_zeros() as usize;
                e &= e - 1;
                let mut out = local[v] & !(mask as u32);
                while out != 0 {
                    let w = out.trailing_zeros() as usize;
                    out &= out - 1;
                    ends[mask | (1 << w)] |= 1 << w;
                }
            }
        }
        Ok(ends[full] & local[0] != 0)
    }

    /// `Γ|_S`.
    pub fn induced(&self, s: NodeSet) -> SimpleGraph {
        let nodes = s.intersection(self.nodes);
        let mut g = SimpleGraph::on_nodes(nodes);
        for v in nodes {
            g.adj[v - 1] = self.adj[v - 1].intersection(nodes);
        }
        g
    }

    /// Contracts the connected node set `s` into the single node `min s`.
    /// Loops and parallel edges produced by the contraction are dropped.
    pub fn quotient(&self, s: NodeSet) -> Result<SimpleGraph, GraphError> {
        if !s.is_subset(self.nodes) || !self.is_connected_set(s) {
            return Err(GraphError::SNotConnected(s));
        }
        let hub = s.min().expect("connected set is nonempty");
        let image = |v: usize| if s.contains(v) { hub } else { v };
        let mut g = SimpleGraph::on_nodes(self.nodes.difference(s).union(NodeSet::singleton(hub)));
        for (i, j) in self.edges() {
            let (a, b) = (image(i), image(j));
            if a != b {
                g.add_edge(a, b).expect("images are nodes of the quotient");
            }
        }
        Ok(g)
    }

    /// The graph on `nodes \ s` whose graphical building set is the
    /// contraction `B(Γ)/S`: the contracted node is eliminated and its
    /// neighbours are joined into a clique.
    pub fn contraction_graph(&self, s: NodeSet) -> Result<SimpleGraph, GraphError> {
        if !s.is_subset(self.nodes) || !self.is_connected_set(s) {
            return Err(GraphError::SNotConnected(s));
        }
        let rest = self.nodes.difference(s);
        if rest.is_empty() {
            return Err(GraphError::EmptyQuotient);
        }
        let mut g = self.induced(rest);
        let touching = self.neighborhood(s).intersection(rest);
        for v in touching {
            g.adj[v - 1] = g.adj[v - 1].union(touching.difference(NodeSet::singleton(v)));
        }
        Ok(g)
    }

    /// Every nonempty node set inducing a connected subgraph.
    pub fn graphical_building_set(&self) -> Result<BuildingSet, GraphError> {
        if self.node_count() > MAX_GROUND {
            return Err(GraphError::GroundTooLarge(self.node_count()));
        }
        Ok(BuildingSet::from_trusted(
            self.nodes,
            self.nodes.subsets().filter(|&s| self.is_connected_set(s)),
        ))
    }

    /// Same node set and every edge of `self` present in `other`.
    pub fn is_subgraph_of(&self, other: &SimpleGraph) -> bool {
        self.nodes == other.nodes
            && self
                .nodes
                .iter()
                .all(|v| self.adj[v - 1].is_subset(other.adj[v - 1]))
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.nodes.max().unwrap_or(0),
            edges: self.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<SimpleGraph, GraphError> {
        let mut g = SimpleGraph::empty(json.n)?;
        for &[i, j] in &json.edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    /// Parses a named spec (`path:5`, `cycle:6`, `complete:4`, `star:7`).
    pub fn from_spec(spec: &str) -> Result<SimpleGraph, GraphError> {
        let (kind, count) = spec
            .split_once(':')
            .ok_or_else(|| GraphError::Parse(format!("expected `<kind>:<m>`, got `{spec}`")))?;
        let m: usize = count
            .trim()
            .parse()
            .map_err(|_| GraphError::Parse(format!("invalid node count `{count}`")))?;
        match kind.trim() {
            "path" => path_graph(m),
            "cycle" => cycle_graph(m),
            "complete" => complete_graph(m),
            "star" => star_graph(m),
            other => Err(GraphError::Parse(format!("unknown graph kind `{other}`"))),
        }
    }

    /// Reads a graph JSON file.
    pub fn read_json(path: &Path) -> Result<SimpleGraph, GraphError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GraphError::Parse(format!("{}: {e}", path.display())))?;
        let json: GraphJson =
            serde_json::from_str(&text).map_err(|e| GraphError::Parse(e.to_string()))?;
        SimpleGraph::from_json(&json)
    }
}

/// Wire format `{"n": m, "edges": [[i, j], ...]}` with 1-indexed nodes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph(nodes={}, edges={:?})", self.nodes, self.edges())
    }
}

impl fmt::Display for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(&self.to_json()).map_err(|_| fmt::Error)?)
    }
}

fn check_min(kind: &'static str, m: usize, min: usize) -> Result<(), GraphError> {
    if m < min {
        return Err(GraphError::MTooSmall { kind, m, min });
    }
    Ok(())
}

/// `1 - 2 - ... - m`.
pub fn path_graph(m: usize) -> Result<SimpleGraph, GraphError> {
    check_min("path", m, 1)?;
    let edges: Vec<_> = (1..m).map(|i| (i, i + 1)).collect();
    SimpleGraph::from_edges(m, &edges)
}

/// `1 - 2 - ... - m - 1`.
pub fn cycle_graph(m: usize) -> Result<SimpleGraph, GraphError> {
    check_min("cycle", m, 3)?;
    let mut g = path_graph(m)?;
    g.add_edge(m, 1)?;
    Ok(g)
}

pub fn complete_graph(m: usize) -> Result<SimpleGraph, GraphError> {
    check_min("complete", m, 1)?;
    let edges: Vec<_> = (1..=m)
        .flat_map(|i| ((i + 1)..=m).map(move |j| (i, j)))
        .collect();
    SimpleGraph::from_edges(m, &edges)
}

/// `K_{1, m-1}` with centre 1.
pub fn star_graph(m: usize) -> Result<SimpleGraph, GraphError> {
    check_min("star", m, 1)?;
    let edges: Vec<_> = (2..=m).map(|j| (1, j)).collect();
    SimpleGraph::from_edges(m, &edges)
}

/// All unordered pairs of `[m]` in lexicographic order; bit `k` of an edge
/// mask refers to `pairs(m)[k]`.
pub fn pairs(m: usize) -> Vec<(usize, usize)> {
    (1..=m)
        .flat_map(|i| ((i + 1)..=m).map(move |j| (i, j)))
        .collect()
}

/// Graph on `[m]` whose edges are the pairs selected by `mask`.
pub fn graph_from_mask(m: usize, pairs: &[(usize, usize)], mask: u64) -> SimpleGraph {
    let mut g = SimpleGraph::on_nodes(NodeSet::interval(m));
    for (k, &(i, j)) in pairs.iter().enumerate() {
        if mask >> k & 1 == 1 {
            g.adj[i - 1].insert(j);
            g.adj[j - 1].insert(i);
        }
    }
    g
}

/// Edge mask of a graph on `[m]` relative to [`pairs`].
pub fn edge_mask(g: &SimpleGraph, pairs: &[(usize, usize)]) -> u64 {
    pairs
        .iter()
        .enumerate()
        .filter(|&(_, &(i, j))| g.has_edge(i, j))
        .fold(0u64, |acc, (k, _)| acc | (1 << k))
}

/// Labeled connected graphs on `[m]`, in ascending edge-mask order.
#[derive(Clone)]
pub struct ConnectedGraphs {
    m: usize,
    pairs: Vec<(usize, usize)>,
    next: u64,
    end: u64,
}

impl Iterator for ConnectedGraphs {
    type Item = SimpleGraph;

    fn next(&mut self) -> Option<SimpleGraph> {
        while self.next < self.end {
            let g = graph_from_mask(self.m, &self.pairs, self.next);
            self.next += 1;
            if g.is_connected() {
                return Some(g);
            }
        }
        None
    }
}

/// Every labeled connected graph on `[m]` exactly once, `1 <= m <= 7`.
pub fn enumerate_connected_graphs(m: usize) -> Result<ConnectedGraphs, GraphError> {
    check_min("connected", m, 1)?;
    if m > MAX_ENUMERATION_NODES {
        return Err(GraphError::MTooLarge {
            kind: "connected graph",
            m,
            max: MAX_ENUMERATION_NODES,
        });
    }
    let pairs = pairs(m);
    let end = 1u64 << pairs.len();
    Ok(ConnectedGraphs {
        m,
        pairs,
        next: 0,
        end,
    })
}

/// Labeled trees on `[m]` decoded from Prüfer sequences in lexicographic order.
#[derive(Clone)]
pub struct Trees {
    m: usize,
    sequence: Vec<usize>,
    done: bool,
}

impl Iterator for Trees {
    type Item = SimpleGraph;

    fn next(&mut self) -> Option<SimpleGraph> {
        if self.done {
            return None;
        }
        let tree = prufer_decode(self.m, &self.sequence);
        // odometer increment over [1, m]^(m-2)
        self.done = true;
        for digit in self.sequence.iter_mut().rev() {
            if *digit < self.m {
                *digit += 1;
                self.done = false;
                break;
            }
            *digit = 1;
        }
        Some(tree)
    }
}

/// Decodes a Prüfer sequence of length `m - 2` over `[m]` into a tree on `[m]`.
pub fn prufer_decode(m: usize, sequence: &[usize]) -> SimpleGraph {
    let mut g = SimpleGraph::on_nodes(NodeSet::interval(m));
    if m < 2 {
        return g;
    }
    debug_assert_eq!(sequence.len(), m - 2);
    let mut degree = vec![1usize; m + 1];
    for &v in sequence {
        degree[v] += 1;
    }
    for &v in sequence {
        let leaf = (1..=m).find(|&u| degree[u] == 1).expect("a leaf always exists");
        g.add_edge(leaf, v).expect("valid Prüfer edge");
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let last: Vec<usize> = (1..=m).filter(|&u| degree[u] == 1).collect();
    g.add_edge(last[0], last[1]).expect("two nodes remain");
    g
}

/// All `m^(m-2)` labeled trees on `[m]`, `1 <= m <= 10`.
pub fn enumerate_trees(m: usize) -> Result<Trees, GraphError> {
    check_min("tree", m, 1)?;
    if m > MAX_TREE_NODES {
        return Err(GraphError::MTooLarge {
            kind: "tree",
            m,
            max: MAX_TREE_NODES,
        });
    }
    Ok(Trees {
        m,
        sequence: vec![1; m.saturating_sub(2)],
        done: false,
    })
}

/// Labeled graphs on `[m]` containing a Hamiltonian cycle, `m <= 7`.
pub fn enumerate_hamiltonian_graphs(
    m: usize,
) -> Result<impl Iterator<Item = SimpleGraph>, GraphError> {
    if m > MAX_ENUMERATION_NODES {
        return Err(GraphError::MTooLarge {
            kind: "Hamiltonian graph",
            m,
            max: MAX_ENUMERATION_NODES,
        });
    }
    Ok(enumerate_connected_graphs(m)?
        .filter(|g| g.is_hamiltonian().expect("m is within the Hamiltonicity bound")))
}
