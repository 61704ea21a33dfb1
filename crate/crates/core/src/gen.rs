//! Seeded instance generators and the pinned fixture graphs.
//!
//! Randomness comes from ChaCha8 (`rand_chacha` 0.3) seeded with
//! `seed_from_u64`; the seed-to-graph mapping is part of the output
//! contract and is tagged by [`GENERATOR_ID`].

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const GENERATOR_ID: &str = "unicore-gen/1 chacha8 (rand_chacha 0.3, seed_from_u64)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GenKind {
    Tree,
    Unicyclic,
    Forest,
}

impl GenKind {
    pub fn min_order(self) -> usize {
        match self {
            GenKind::Unicyclic => 3,
            GenKind::Tree | GenKind::Forest => 1,
        }
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenKind::Tree => "tree",
            GenKind::Unicyclic => "unicyclic",
            GenKind::Forest => "forest",
        })
    }
}

impl FromStr for GenKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tree" => Ok(GenKind::Tree),
            "unicyclic" => Ok(GenKind::Unicyclic),
            "forest" => Ok(GenKind::Forest),
            other => Err(Error::InvalidSpec(format!("unknown kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn generate(&self) -> Result<Graph> {
        match self.kind {
            GenKind::Tree => gen_tree(self.n, self.seed),
            GenKind::Unicyclic => gen_unicyclic(self.n, self.seed),
            GenKind::Forest => gen_forest(self.n, self.seed),
        }
    }

    /// Header lines recorded alongside generated edge lists.
    pub fn header(&self) -> Vec<String> {
        vec![
            format!("generator: {GENERATOR_ID}"),
            format!("kind={} n={} seed={}", self.kind, self.n, self.seed),
        ]
    }

    /// The generated graph in edge-list format, header included.
    pub fn to_edge_list(&self) -> Result<String> {
        Ok(self.generate()?.to_edge_list_with_header(&self.header()))
    }
}

fn label(i: usize) -> String {
    format!("v{i}")
}

/// Decodes a random Prüfer sequence into the edge list of a labeled tree.
fn random_tree_edges(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = degree.iter().position(|&d| d == 1).expect("a leaf exists");
    let mut leaf = ptr;
    for &c in &code {
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 && c < ptr {
            leaf = c;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    edges
}

fn assemble(n: usize, edges: &[(usize, usize)]) -> Graph {
    let vertices: Vec<String> = (0..n).map(label).collect();
    let edges: Vec<(String, String)> = edges.iter().map(|&(u, v)| (label(u), label(v))).collect();
    Graph::from_vertices_and_edges(&vertices, &edges).expect("generated edges are simple")
}

/// Uniform random labeled tree on `v0 … v{n-1}`.
pub fn gen_tree(n: usize, seed: u64) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidSpec("tree needs n >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(assemble(n, &random_tree_edges(n, &mut rng)))
}

/// Random tree plus one uniformly chosen non-edge. Not uniform over
/// unicyclic graphs.
pub fn gen_unicyclic(n: usize, seed: u64) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidSpec("unicyclic graph needs n >= 3".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = random_tree_edges(n, &mut rng);
    let mut adjacent = std::collections::HashSet::new();
    for &(u, v) in &edges {
        adjacent.insert((u.min(v), u.max(v)));
    }
    loop {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && !adjacent.contains(&(u.min(v), u.max(v))) {
            edges.push((u, v));
            break;
        }
    }
    Ok(assemble(n, &edges))
}

/// Random tree with a random number (up to half) of its edges removed.
pub fn gen_forest(n: usize, seed: u64) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidSpec("forest needs n >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = random_tree_edges(n, &mut rng);
    let drop = rng.gen_range(0..=edges.len() / 2);
    edges.shuffle(&mut rng);
    edges.truncate(edges.len() - drop);
    edges.sort_unstable();
    Ok(assemble(n, &edges))
}

pub const FIXTURES: &[&str] = &[
    "fig1_G", "fig2_G", "fig2_Tx", "fig3_H1", "fig3_H2", "fig4_H1", "fig4_H2", "fig5_G1", "fig5_G2",
];

fn fixture_edges(name: &str) -> Option<&'static [(&'static str, &'static str)]> {
    Some(match name {
        "fig1_G" => &[("a", "u"), ("u", "c"), ("c", "v"), ("v", "y"), ("u", "b"), ("v", "x"), ("x", "y")],
        "fig2_G" => &[
            ("u", "v"),
            ("v", "x"),
            ("x", "y"),
            ("a", "x"),
            ("b", "x"),
            ("y", "w"),
            ("w", "c"),
            ("c", "t"),
            ("t", "d"),
            ("d", "y"),
        ],
        "fig2_Tx" => &[("u", "v"), ("v", "x"), ("a", "x"), ("b", "x")],
        // fig3..fig5 are hand transcriptions; unlabeled vertices get
        // p, q, r, s, e, f names.
        "fig3_H1" => &[
            ("a", "c"),
            ("c", "p"),
            ("p", "s"),
            ("s", "d"),
            ("c", "b"),
            ("p", "q"),
            ("q", "r"),
            ("r", "s"),
            ("d", "e"),
        ],
        "fig3_H2" => &[
            ("p", "q"),
            ("q", "u"),
            ("u", "v"),
            ("v", "z"),
            ("p", "r"),
            ("r", "s"),
            ("s", "u"),
            ("u", "x"),
            ("v", "y"),
        ],
        "fig4_H1" => &[
            ("a", "p"),
            ("p", "q"),
            ("q", "r"),
            ("r", "s"),
            ("p", "b"),
            ("q", "e"),
            ("e", "f"),
            ("r", "f"),
            ("s", "g"),
        ],
        "fig4_H2" => &[
            ("x", "w"),
            ("w", "t"),
            ("y", "w"),
            ("w", "z"),
            ("z", "r"),
            ("r", "s"),
            ("t", "r"),
            ("q", "s"),
        ],
        "fig5_G1" => &[
            ("a", "p"),
            ("p", "q"),
            ("q", "r"),
            ("r", "s"),
            ("s", "c"),
            ("p", "b"),
            ("q", "e"),
            ("e", "f"),
            ("f", "s"),
        ],
        "fig5_G2" => &[("t", "p"), ("p", "y"), ("y", "q"), ("q", "z"), ("p", "r"), ("r", "s"), ("q", "s")],
        _ => return None,
    })
}

/// One of the pinned fixture graphs, by name (see [`FIXTURES`]).
pub fn fixture(name: &str) -> Result<Graph> {
    let edges = fixture_edges(name).ok_or_else(|| Error::UnknownFixture(name.to_owned()))?;
    Graph::from_edges(edges)
}
