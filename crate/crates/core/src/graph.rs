//! Simple undirected graphs with string labels.
//!
//! Vertex order is the order in which labels first appear; every neighbor
//! list is kept sorted lexicographically by label, so traversals that walk
//! neighbor lists break ties the same way on every run.
//!
//! The text format is one item per line: `u v` declares an edge, a single
//! token declares a vertex, and `#` starts a comment. A comment of the form
//! `# order: a b c` declares vertices in that order; [`Graph::to_edge_list`]
//! emits it so that a round trip keeps the original vertex order.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// An unordered vertex pair, stored with the lexicographically smaller label first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge(pub String, pub String);

impl Edge {
    pub fn new(u: impl Into<String>, v: impl Into<String>) -> Self {
        let (u, v) = (u.into(), v.into());
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.0, self.1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GraphClass {
    Tree,
    Forest,
    Unicyclic,
    UnicyclicForest,
    Unsupported,
}

impl GraphClass {
    /// True for every class the solvers accept.
    pub fn is_supported(self) -> bool {
        self != GraphClass::Unsupported
    }

    pub fn is_acyclic(self) -> bool {
        matches!(self, GraphClass::Tree | GraphClass::Forest)
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GraphClass::Tree => "Tree",
            GraphClass::Forest => "Forest",
            GraphClass::Unicyclic => "Unicyclic",
            GraphClass::UnicyclicForest => "UnicyclicForest",
            GraphClass::Unsupported => "Unsupported",
        };
        f.write_str(s)
    }
}

/// Immutable simple undirected graph.
#[derive(Clone)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
    /// Vertex ids sorted by label.
    lex: Vec<usize>,
    /// Position of each vertex in `lex`.
    rank: Vec<usize>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.labels)
            .field("edges", &self.edges())
            .finish()
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.edges() == other.edges()
    }
}

impl Eq for Graph {}

/// Incremental construction with validation of every edge.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a vertex; repeated declarations are no-ops.
    pub fn add_vertex(&mut self, label: &str) -> usize {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        self.adj.push(Vec::new());
        id
    }

    pub fn add_edge(&mut self, u: &str, v: &str) -> Result<()> {
        if u == v {
            return Err(Error::InvalidInput(format!("self-loop on `{u}`")));
        }
        let a = self.add_vertex(u);
        let b = self.add_vertex(v);
        if self.adj[a].contains(&b) {
            return Err(Error::InvalidInput(format!("duplicate edge `{u} {v}`")));
        }
        self.adj[a].push(b);
        self.adj[b].push(a);
        Ok(())
    }

    pub fn build(self) -> Graph {
        Graph::from_parts(self.labels, self.index, self.adj)
    }
}

impl Graph {
    fn from_parts(labels: Vec<String>, index: HashMap<String, usize>, mut adj: Vec<Vec<usize>>) -> Graph {
        let n = labels.len();
        let mut lex: Vec<usize> = (0..n).collect();
        lex.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
        let mut rank = vec![0; n];
        for (r, &v) in lex.iter().enumerate() {
            rank[v] = r;
        }
        for list in adj.iter_mut() {
            list.sort_by_key(|&w| rank[w]);
        }
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { labels, index, adj, lex, rank, m }
    }

    /// Builds a graph from an edge list; vertex order is first appearance.
    pub fn from_edges<S: AsRef<str>>(edges: &[(S, S)]) -> Result<Graph> {
        let mut b = GraphBuilder::new();
        for (u, v) in edges {
            b.add_edge(u.as_ref(), v.as_ref())?;
        }
        Ok(b.build())
    }

    /// Builds a graph with an explicit vertex list (isolated vertices allowed).
    pub fn from_vertices_and_edges<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Graph> {
        let mut b = GraphBuilder::new();
        for v in vertices {
            b.add_vertex(v.as_ref());
        }
        for (u, v) in edges {
            b.add_edge(u.as_ref(), v.as_ref())?;
        }
        Ok(b.build())
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> impl Iterator<Item = &str> + '_ {
        self.labels.iter().map(String::as_str)
    }

    pub fn contains(&self, v: &str) -> bool {
        self.index.contains_key(v)
    }

    pub fn neighbors(&self, v: &str) -> Result<Vec<&str>> {
        let id = self.id(v)?;
        Ok(self.adj[id].iter().map(|&w| self.labels[w].as_str()).collect())
    }

    pub fn degree(&self, v: &str) -> Result<usize> {
        Ok(self.adj[self.id(v)?].len())
    }

    pub fn has_edge(&self, u: &str, v: &str) -> bool {
        match (self.index.get(u), self.index.get(v)) {
            (Some(&a), Some(&b)) => self.adj[a].contains(&b),
            _ => false,
        }
    }

    /// All edges, sorted lexicographically.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = (0..self.order())
            .flat_map(|u| {
                self.adj[u]
                    .iter()
                    .filter(move |&&w| self.rank[u] < self.rank[w])
                    .map(move |&w| Edge(self.labels[u].clone(), self.labels[w].clone()))
            })
            .collect();
        out.sort();
        out
    }

    pub(crate) fn id(&self, v: &str) -> Result<usize> {
        self.index.get(v).copied().ok_or_else(|| Error::UnknownVertex(v.to_owned()))
    }

    pub(crate) fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub(crate) fn adj(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub(crate) fn lex_order(&self) -> &[usize] {
        &self.lex
    }

    pub(crate) fn label_set<I: IntoIterator<Item = usize>>(&self, ids: I) -> BTreeSet<String> {
        ids.into_iter().map(|v| self.labels[v].clone()).collect()
    }

    pub(crate) fn edge_ids(&self, e: &Edge) -> Result<(usize, usize)> {
        let a = self.id(&e.0)?;
        let b = self.id(&e.1)?;
        if !self.adj[a].contains(&b) {
            return Err(Error::UnknownEdge(e.0.clone(), e.1.clone()));
        }
        Ok((a, b))
    }

    /// Induced subgraph on the vertices flagged in `keep`, order preserved.
    pub(crate) fn induced(&self, keep: &[bool]) -> Graph {
        let mut b = GraphBuilder::new();
        for (label, _) in self.labels.iter().zip(keep).filter(|(_, &k)| k) {
            b.add_vertex(label);
        }
        for v in 0..self.order() {
            if !keep[v] {
                continue;
            }
            for &w in &self.adj[v] {
                if keep[w] && self.rank[v] < self.rank[w] {
                    b.add_edge(&self.labels[v], &self.labels[w]).expect("edge of a simple graph");
                }
            }
        }
        b.build()
    }

    /// `G − W`: the subgraph induced by the remaining vertices.
    pub fn delete_vertices<S: AsRef<str>>(&self, w: &[S]) -> Result<Graph> {
        let mut keep = vec![true; self.order()];
        for v in w {
            keep[self.id(v.as_ref())?] = false;
        }
        Ok(self.induced(&keep))
    }

    /// `G − e`: same vertex set, one edge fewer.
    pub fn delete_edge(&self, u: &str, v: &str) -> Result<Graph> {
        let (a, b) = self.edge_ids(&Edge::new(u, v))?;
        let mut adj = self.adj.clone();
        adj[a].retain(|&x| x != b);
        adj[b].retain(|&x| x != a);
        Ok(Graph::from_parts(self.labels.clone(), self.index.clone(), adj))
    }

    /// `N[v] = {v} ∪ N(v)`.
    pub fn closed_neighborhood(&self, v: &str) -> Result<BTreeSet<String>> {
        let id = self.id(v)?;
        Ok(self.label_set(std::iter::once(id).chain(self.adj[id].iter().copied())))
    }

    /// `N[A]` for a vertex set.
    pub fn closed_neighborhood_of_set<'a, I>(&self, set: I) -> Result<BTreeSet<String>>
    where
        I: IntoIterator<Item = &'a String>,
    {
        let mut out = BTreeSet::new();
        for v in set {
            out.extend(self.closed_neighborhood(v)?);
        }
        Ok(out)
    }

    /// Connected components as induced subgraphs, ordered by smallest label.
    pub fn components(&self) -> Vec<Graph> {
        let comps = View::new(self).components();
        comps
            .comps
            .iter()
            .map(|c| {
                let mut keep = vec![false; self.order()];
                for &v in &c.vertices {
                    keep[v] = true;
                }
                self.induced(&keep)
            })
            .collect()
    }

    pub fn classify(&self) -> GraphClass {
        View::new(self).classify()
    }

    /// Locates the unique cycle, the attachment set `N₁(C)` and the pendant trees.
    pub fn find_cycle(&self) -> Result<CycleInfo> {
        let class = self.classify();
        if class != GraphClass::Unicyclic {
            return Err(Error::NotUnicyclic(class));
        }
        let view = View::new(self);
        let residue = view.cycle_residue();
        let cycle = view.canonical_cycle(&residue, self.lex.iter().copied().find(|&v| residue[v]).expect("cycle"));

        let mut outside = vec![true; self.order()];
        for &c in &cycle {
            outside[c] = false;
        }
        let mut n1 = Vec::new();
        for v in 0..self.order() {
            if !outside[v] {
                continue;
            }
            let on_cycle: Vec<usize> = self.adj[v].iter().copied().filter(|&w| !outside[w]).collect();
            match on_cycle.len() {
                0 => {}
                1 => n1.push((v, on_cycle[0])),
                // Impossible in a unicyclic graph: a second cycle would exist.
                _ => return Err(Error::NotUnicyclic(class)),
            }
        }
        n1.sort_by_key(|&(x, _)| self.rank[x]);

        let mut pendant_trees = Vec::with_capacity(n1.len());
        for &(x, y) in &n1 {
            let mut keep = vec![false; self.order()];
            let mut queue = VecDeque::from([x]);
            keep[x] = true;
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if outside[w] && !keep[w] {
                        keep[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            pendant_trees.push(PendantTree {
                x: self.labels[x].clone(),
                y: self.labels[y].clone(),
                tree: self.induced(&keep),
            });
        }

        let k = cycle.len();
        let cycle_edges = (0..k)
            .map(|i| Edge::new(self.labels[cycle[i]].clone(), self.labels[cycle[(i + 1) % k]].clone()))
            .collect();
        Ok(CycleInfo {
            cycle_vertices: cycle.iter().map(|&v| self.labels[v].clone()).collect(),
            cycle_edges,
            n1: n1.iter().map(|&(x, _)| self.labels[x].clone()).collect(),
            pendant_trees,
        })
    }

    /// Serializes to the edge-list format: a header comment, the vertex
    /// order, edges sorted lexicographically, then isolated vertices.
    pub fn to_edge_list(&self) -> String {
        self.to_edge_list_with_header(&[])
    }

    pub fn to_edge_list_with_header(&self, extra: &[String]) -> String {
        let mut out = format!("# unicore edge-list n={} m={}\n", self.order(), self.size());
        for line in extra {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
        out.push_str("# order:");
        for l in &self.labels {
            out.push(' ');
            out.push_str(l);
        }
        out.push('\n');
        for e in self.edges() {
            out.push_str(&format!("{e}\n"));
        }
        for &v in &self.lex {
            if self.adj[v].is_empty() {
                out.push_str(&self.labels[v]);
                out.push('\n');
            }
        }
        out
    }
}

/// Parses the edge-list text format. The empty graph is rejected.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut b = GraphBuilder::new();
    for (lineno, raw) in text.lines().enumerate() {
        let (content, comment) = match raw.find('#') {
            Some(i) => (&raw[..i], Some(&raw[i + 1..])),
            None => (raw, None),
        };
        if let Some(order) = comment.and_then(|c| c.trim_start().strip_prefix("order:")) {
            if content.trim().is_empty() {
                for v in order.split_whitespace() {
                    b.add_vertex(v);
                }
            }
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            [v] => {
                b.add_vertex(v);
            }
            [u, v] => b.add_edge(u, v).map_err(|e| match e {
                Error::InvalidInput(msg) => Error::InvalidInput(format!("line {}: {msg}", lineno + 1)),
                other => other,
            })?,
            _ => {
                return Err(Error::InvalidInput(format!(
                    "line {}: expected `u v` or `v`, found {} tokens",
                    lineno + 1,
                    tokens.len()
                )))
            }
        }
    }
    if b.labels.is_empty() {
        return Err(Error::InvalidInput("empty graph".into()));
    }
    Ok(b.build())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PendantTree {
    /// The attachment vertex, an element of `N₁(C)`.
    pub x: String,
    /// The unique cycle neighbor of `x`.
    pub y: String,
    /// `T_x`, the component of `G − xy` containing `x`.
    pub tree: Graph,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleInfo {
    /// The cycle walk, starting at its smallest label and continuing
    /// towards the smaller of that vertex's two cycle neighbors.
    pub cycle_vertices: Vec<String>,
    /// Consecutive pairs of the walk, including the closing pair.
    pub cycle_edges: Vec<Edge>,
    pub n1: BTreeSet<String>,
    /// One tree per element of `n1`, ordered by `x`.
    pub pendant_trees: Vec<PendantTree>,
}

impl CycleInfo {
    pub fn cycle_set(&self) -> BTreeSet<String> {
        self.cycle_vertices.iter().cloned().collect()
    }
}

pub(crate) const NONE: usize = usize::MAX;

/// A graph with some vertices removed and at most one edge cut. All
/// algorithms run on views so that `G − v` and `G − e` cost no copies.
#[derive(Clone)]
pub(crate) struct View<'g> {
    pub(crate) g: &'g Graph,
    alive: Vec<bool>,
    cut: Option<(usize, usize)>,
}

pub(crate) struct Component {
    /// BFS order from `vertices[0]`, the smallest label of the component.
    pub(crate) vertices: Vec<usize>,
    pub(crate) edges: usize,
}

pub(crate) struct Components {
    pub(crate) comps: Vec<Component>,
    /// Component index per vertex (`NONE` for removed vertices).
    pub(crate) comp_of: Vec<usize>,
    /// BFS parent per vertex (`NONE` for roots and removed vertices).
    pub(crate) parent: Vec<usize>,
}

impl<'g> View<'g> {
    pub(crate) fn new(g: &'g Graph) -> Self {
        View { g, alive: vec![true; g.order()], cut: None }
    }

    pub(crate) fn without(g: &'g Graph, removed: &[usize]) -> Self {
        let mut v = View::new(g);
        for &r in removed {
            v.alive[r] = false;
        }
        v
    }

    pub(crate) fn remove(&mut self, v: usize) {
        self.alive[v] = false;
    }

    pub(crate) fn cut(mut self, u: usize, v: usize) -> Self {
        self.cut = Some((u, v));
        self
    }

    pub(crate) fn set_cut(&mut self, cut: Option<(usize, usize)>) {
        self.cut = cut;
    }

    fn is_cut(&self, u: usize, v: usize) -> bool {
        matches!(self.cut, Some((a, b)) if (a == u && b == v) || (a == v && b == u))
    }

    pub(crate) fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.g.adj[v].iter().copied().filter(move |&w| self.alive[w] && !self.is_cut(v, w))
    }

    pub(crate) fn components(&self) -> Components {
        let n = self.g.order();
        let mut comp_of = vec![NONE; n];
        let mut parent = vec![NONE; n];
        let mut comps = Vec::new();
        for &root in &self.g.lex {
            if !self.alive[root] || comp_of[root] != NONE {
                continue;
            }
            let id = comps.len();
            comp_of[root] = id;
            let mut vertices = vec![root];
            let mut degree_sum = 0;
            let mut head = 0;
            while head < vertices.len() {
                let u = vertices[head];
                head += 1;
                for w in self.neighbors(u) {
                    degree_sum += 1;
                    if comp_of[w] == NONE {
                        comp_of[w] = id;
                        parent[w] = u;
                        vertices.push(w);
                    }
                }
            }
            comps.push(Component { vertices, edges: degree_sum / 2 });
        }
        Components { comps, comp_of, parent }
    }

    pub(crate) fn classify(&self) -> GraphClass {
        classify_components(&self.components())
    }

    /// Strips vertices of degree ≤ 1 until none remain. For a graph whose
    /// components each hold at most one cycle, the residue is the union of
    /// those cycles.
    pub(crate) fn cycle_residue(&self) -> Vec<bool> {
        let n = self.g.order();
        let mut degree = vec![0usize; n];
        let mut residue = self.alive.clone();
        let mut stack = Vec::new();
        for v in (0..n).filter(|&v| self.alive[v]) {
            degree[v] = self.neighbors(v).count();
            if degree[v] <= 1 {
                stack.push(v);
            }
        }
        while let Some(v) = stack.pop() {
            if !residue[v] {
                continue;
            }
            residue[v] = false;
            for w in self.neighbors(v) {
                if residue[w] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        stack.push(w);
                    }
                }
            }
        }
        residue
    }

    /// Walks the cycle through `start` in canonical direction.
    pub(crate) fn canonical_cycle(&self, residue: &[bool], start: usize) -> Vec<usize> {
        let mut cycle = vec![start];
        let mut prev = start;
        let mut cur = self.neighbors(start).find(|&w| residue[w]).expect("cycle vertex has cycle neighbors");
        while cur != start {
            cycle.push(cur);
            let next = self
                .neighbors(cur)
                .find(|&w| residue[w] && w != prev)
                .expect("cycle vertex has two cycle neighbors");
            prev = cur;
            cur = next;
        }
        cycle
    }
}

pub(crate) fn classify_components(c: &Components) -> GraphClass {
    let mut cyclic = 0;
    for comp in &c.comps {
        let nv = comp.vertices.len();
        if comp.edges > nv {
            return GraphClass::Unsupported;
        }
        if comp.edges == nv {
            cyclic += 1;
        }
    }
    match (c.comps.len(), cyclic) {
        (1, 0) => GraphClass::Tree,
        (1, 1) => GraphClass::Unicyclic,
        (_, 0) => GraphClass::Forest,
        _ => GraphClass::UnicyclicForest,
    }
}
