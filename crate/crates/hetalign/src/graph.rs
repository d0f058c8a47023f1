//! Node-colored undirected simple graphs: data model, validation, text I/O,
//! and seeded G(n, m) random generation.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::io::{self, Write};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Dense node index, unique within one graph. External string labels map
/// bijectively to ids via the graph's label table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Dense color index. The external color name lives in the graph's color
/// table; within one graph equal indices mean equal colors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(pub u32);

impl Color {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Parameters for seeded G(n, m) generation: exactly `edges` distinct edges
/// sampled uniformly, one color per node drawn uniformly over `num_colors`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphSpec {
    pub nodes: usize,
    pub edges: usize,
    pub num_colors: u32,
    pub rng_seed: u64,
}

impl GraphSpec {
    /// Maximum edge count of a simple undirected graph on `n` nodes.
    pub fn max_edges(n: usize) -> usize {
        (n as u128 * n.saturating_sub(1) as u128 / 2).min(usize::MAX as u128) as usize
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        if self.num_colors == 0 {
            return Err(GraphError::InfeasibleSpec(
                "color count must be at least 1".into(),
            ));
        }
        let max = Self::max_edges(self.nodes);
        if self.edges > max {
            return Err(GraphError::InfeasibleSpec(format!(
                "{} edges exceed the maximum {} for {} nodes",
                self.edges, max, self.nodes
            )));
        }
        Ok(())
    }
}

/// Undirected simple graph with one color per node.
///
/// Invariants, checked on construction: adjacency is symmetric and sorted,
/// no self-loops or duplicate edges, every node has exactly one color, and
/// every color index points into the color table.
#[derive(Clone, Debug, PartialEq)]
pub struct ColoredGraph {
    adjacency: Vec<Vec<NodeId>>,
    colors: Vec<Color>,
    edge_count: usize,
    node_labels: Vec<String>,
    node_index: HashMap<String, NodeId>,
    color_labels: Vec<String>,
    color_index: HashMap<String, Color>,
}

impl ColoredGraph {
    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Number of distinct colors in the color table.
    pub fn color_count(&self) -> usize {
        self.color_labels.len()
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v.index()]
    }

    pub fn color(&self, v: NodeId) -> Color {
        self.colors[v.index()]
    }

    pub fn node_label(&self, v: NodeId) -> &str {
        &self.node_labels[v.index()]
    }

    pub fn node_id(&self, label: &str) -> Option<NodeId> {
        self.node_index.get(label).copied()
    }

    pub fn color_label(&self, c: Color) -> &str {
        &self.color_labels[c.index()]
    }

    pub fn color_id(&self, label: &str) -> Option<Color> {
        self.color_index.get(label).copied()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency[u.index()].binary_search(&v).is_ok()
    }

    /// All edges as (u, v) with u < v, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nbrs)| {
            let u = NodeId(u as u32);
            nbrs.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Node count per color, indexed by color id.
    pub fn color_histogram(&self) -> Vec<usize> {
        let mut hist = vec![0usize; self.color_labels.len()];
        for c in &self.colors {
            hist[c.index()] += 1;
        }
        hist
    }

    /// Full-scan check of every structural invariant. Intended for tests and
    /// debugging; construction paths already guarantee these hold.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.node_count();
        if self.colors.len() != n || self.node_labels.len() != n {
            return Err("colors/labels length differs from node count".into());
        }
        let mut m = 0usize;
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            let u = NodeId(u as u32);
            if !nbrs.windows(2).all(|w| w[0] < w[1]) {
                return Err(format!("adjacency of {u} not sorted or has duplicates"));
            }
            for &v in nbrs {
                if v.index() >= n {
                    return Err(format!("neighbor {v} of {u} out of range"));
                }
                if v == u {
                    return Err(format!("self-loop at {u}"));
                }
                if !self.has_edge(v, u) {
                    return Err(format!("asymmetric edge {u}-{v}"));
                }
                if u < v {
                    m += 1;
                }
            }
        }
        if m != self.edge_count {
            return Err(format!(
                "stored edge count {} differs from scan {m}",
                self.edge_count
            ));
        }
        for (v, c) in self.colors.iter().enumerate() {
            if c.index() >= self.color_labels.len() {
                return Err(format!("color of node {v} out of range"));
            }
        }
        for (label, &id) in &self.node_index {
            if self.node_labels[id.index()] != *label {
                return Err(format!("label table mismatch for '{label}'"));
            }
        }
        Ok(())
    }

    fn from_parts(
        node_labels: Vec<String>,
        node_index: HashMap<String, NodeId>,
        color_labels: Vec<String>,
        color_index: HashMap<String, Color>,
        colors: Vec<Color>,
        mut adjacency: Vec<Vec<NodeId>>,
        edge_count: usize,
    ) -> Self {
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        ColoredGraph {
            adjacency,
            colors,
            edge_count,
            node_labels,
            node_index,
            color_labels,
            color_index,
        }
    }
}

/// Which input stream an error refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stream {
    Edges,
    Colors,
}

impl fmt::Display for Stream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stream::Edges => write!(f, "edge stream"),
            Stream::Colors => write!(f, "color stream"),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("{stream} line {line}: malformed record, expected {expected}")]
    MalformedLine {
        stream: Stream,
        line: usize,
        expected: &'static str,
    },
    #[error("edge stream line {line}: unknown node '{label}' (absent from color stream)")]
    UnknownNode { line: usize, label: String },
    #[error("edge stream line {line}: duplicate edge {a} {b}")]
    DuplicateEdge { line: usize, a: String, b: String },
    #[error("edge stream line {line}: self-loop at '{label}'")]
    SelfLoop { line: usize, label: String },
    #[error("color stream line {line}: duplicate color assignment for '{label}'")]
    DuplicateColorAssignment { line: usize, label: String },
    #[error("infeasible graph spec: {0}")]
    InfeasibleSpec(String),
}

/// Splits a record line into fields; returns None for blank and '#' comment
/// lines. Fields are TAB-or-space separated.
fn record_fields(raw: &str) -> Option<Vec<&str>> {
    let trimmed = raw.trim();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return None;
    }
    Some(trimmed.split_whitespace().collect())
}

/// Parses a colored graph from an edge list and a node-color list.
///
/// Node ids are assigned in first-appearance order of the color stream, so a
/// parse of [`write_colored_graph`] output reproduces the graph exactly.
/// Duplicate edges and self-loops are rejected rather than dropped.
pub fn parse_colored_graph(edge_text: &str, color_text: &str) -> Result<ColoredGraph, GraphError> {
    let mut node_labels: Vec<String> = Vec::new();
    let mut node_index: HashMap<String, NodeId> = HashMap::new();
    let mut color_labels: Vec<String> = Vec::new();
    let mut color_index: HashMap<String, Color> = HashMap::new();
    let mut colors: Vec<Color> = Vec::new();

    for (lineno, raw) in color_text.lines().enumerate() {
        let line = lineno + 1;
        let Some(fields) = record_fields(raw) else {
            continue;
        };
        let [label, color_label] = fields[..] else {
            return Err(GraphError::MalformedLine {
                stream: Stream::Colors,
                line,
                expected: "<node> <color>",
            });
        };
        if node_index.contains_key(label) {
            return Err(GraphError::DuplicateColorAssignment {
                line,
                label: label.to_string(),
            });
        }
        let id = NodeId(node_labels.len() as u32);
        node_labels.push(label.to_string());
        node_index.insert(label.to_string(), id);
        let color = *color_index.entry(color_label.to_string()).or_insert_with(|| {
            let c = Color(color_labels.len() as u32);
            color_labels.push(color_label.to_string());
            c
        });
        colors.push(color);
    }

    let n = node_labels.len();
    let mut adjacency: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    let mut seen: HashSet<(NodeId, NodeId)> = HashSet::new();

    for (lineno, raw) in edge_text.lines().enumerate() {
        let line = lineno + 1;
        let Some(fields) = record_fields(raw) else {
            continue;
        };
        let [a, b] = fields[..] else {
            return Err(GraphError::MalformedLine {
                stream: Stream::Edges,
                line,
                expected: "<node> <node>",
            });
        };
        let resolve = |label: &str| {
            node_index
                .get(label)
                .copied()
                .ok_or_else(|| GraphError::UnknownNode {
                    line,
                    label: label.to_string(),
                })
        };
        let u = resolve(a)?;
        let v = resolve(b)?;
        if u == v {
            return Err(GraphError::SelfLoop {
                line,
                label: a.to_string(),
            });
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(GraphError::DuplicateEdge {
                line,
                a: a.to_string(),
                b: b.to_string(),
            });
        }
        adjacency[u.index()].push(v);
        adjacency[v.index()].push(u);
    }

    Ok(ColoredGraph::from_parts(
        node_labels,
        node_index,
        color_labels,
        color_index,
        colors,
        adjacency,
        seen.len(),
    ))
}

/// Generates a G(n, m)-model colored graph: exactly `spec.edges` distinct
/// edges sampled uniformly without replacement, node colors drawn uniformly
/// over `spec.num_colors`. A pure function of the spec; the same seed yields
/// a byte-identical graph after serialization.
///
/// Edge sampling uses rejection over uniform node pairs, which is efficient
/// as long as m stays well below the n(n-1)/2 ceiling.
pub fn generate_er_colored(spec: &GraphSpec) -> Result<ColoredGraph, GraphError> {
    spec.validate()?;
    let n = spec.nodes;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.rng_seed);

    // Colors first, in node order, so the draw sequence is independent of
    // edge sampling. Color ids are densified in first-appearance order to
    // mirror what a parse of the serialized graph would produce.
    let mut color_labels: Vec<String> = Vec::new();
    let mut color_index: HashMap<String, Color> = HashMap::new();
    let mut colors: Vec<Color> = Vec::with_capacity(n);
    for _ in 0..n {
        let pick = rng.gen_range(0..spec.num_colors);
        let label = format!("c{pick}");
        let color = *color_index.entry(label.clone()).or_insert_with(|| {
            let c = Color(color_labels.len() as u32);
            color_labels.push(label);
            c
        });
        colors.push(color);
    }

    let mut adjacency: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    let mut seen: HashSet<u64> = HashSet::with_capacity(spec.edges * 2);
    while seen.len() < spec.edges {
        let u = rng.gen_range(0..n as u32);
        let v = rng.gen_range(0..n as u32);
        if u == v {
            continue;
        }
        let (a, b) = (u.min(v), u.max(v));
        if seen.insert((a as u64) << 32 | b as u64) {
            adjacency[a as usize].push(NodeId(b));
            adjacency[b as usize].push(NodeId(a));
        }
    }

    let mut node_labels = Vec::with_capacity(n);
    let mut node_index = HashMap::with_capacity(n);
    for i in 0..n {
        let label = format!("n{i}");
        node_index.insert(label.clone(), NodeId(i as u32));
        node_labels.push(label);
    }

    Ok(ColoredGraph::from_parts(
        node_labels,
        node_index,
        color_labels,
        color_index,
        colors,
        adjacency,
        spec.edges,
    ))
}

/// Writes the graph as an edge list and a color list, TAB separated, in a
/// form that [`parse_colored_graph`] round-trips to an equal graph.
pub fn write_colored_graph(
    g: &ColoredGraph,
    edge_sink: &mut dyn Write,
    color_sink: &mut dyn Write,
) -> io::Result<()> {
    let mut colors = io::BufWriter::new(color_sink);
    for v in 0..g.node_count() {
        let v = NodeId(v as u32);
        writeln!(colors, "{}\t{}", g.node_label(v), g.color_label(g.color(v)))?;
    }
    colors.flush()?;
    let mut edges = io::BufWriter::new(edge_sink);
    for (u, v) in g.edges() {
        writeln!(edges, "{}\t{}", g.node_label(u), g.node_label(v))?;
    }
    edges.flush()
}
