//! Exact independence and matching numbers for graphs whose components
//! each contain at most one cycle.
//!
//! Trees are handled by linear-time dynamic programs. A component with a
//! cycle is reduced to trees: for the independence number by branching on
//! its first canonical cycle vertex `v` (`α = max(α(G−v), 1 + α(G−N[v]))`),
//! for the matching number by deleting each cycle edge in turn and keeping
//! the best tree matching. Some cycle edge is never μ-critical, so the best
//! tree matching is maximum in the whole component.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{classify_components, Components, Edge, Graph, GraphClass, View, NONE};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingResult {
    pub edges: BTreeSet<Edge>,
    pub saturated: BTreeSet<String>,
}

impl MatchingResult {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// The partner of `v` under this matching, if `v` is saturated.
    pub fn mate(&self, v: &str) -> Option<&str> {
        self.edges.iter().find_map(|e| {
            if e.0 == v {
                Some(e.1.as_str())
            } else if e.1 == v {
                Some(e.0.as_str())
            } else {
                None
            }
        })
    }
}

fn check_supported(comps: &Components) -> Result<()> {
    match classify_components(comps) {
        GraphClass::Unsupported => Err(Error::UnsupportedClass(GraphClass::Unsupported)),
        _ => Ok(()),
    }
}

/// First canonical cycle vertex of every cyclic component, indexed by component.
fn branch_vertices(view: &View, comps: &Components) -> Vec<usize> {
    let residue = view.cycle_residue();
    let mut branch = vec![NONE; comps.comps.len()];
    for &v in view.g.lex_order() {
        if residue[v] {
            let c = comps.comp_of[v];
            if branch[c] == NONE {
                branch[c] = v;
            }
        }
    }
    branch
}

/// Include/exclude tree DP over forest components. Each tree's
/// independence number is added to `acc[owner(root)]`.
fn forest_dp(comps: &Components, n: usize, owner: impl Fn(usize) -> usize, acc: &mut [usize]) {
    let mut inc = vec![0usize; n];
    let mut exc = vec![0usize; n];
    for comp in &comps.comps {
        debug_assert_eq!(comp.edges + 1, comp.vertices.len(), "forest component");
        for &v in comp.vertices.iter().rev() {
            inc[v] += 1;
            let p = comps.parent[v];
            if p != NONE {
                inc[p] += exc[v];
                exc[p] += inc[v].max(exc[v]);
            }
        }
        let root = comp.vertices[0];
        acc[owner(root)] += inc[root].max(exc[root]);
    }
}

/// Independence number of a view whose components each hold at most one cycle.
pub(crate) fn alpha_view(view: &View) -> Result<usize> {
    let comps = view.components();
    check_supported(&comps)?;
    let n = view.g.order();
    let k = comps.comps.len();
    if comps.comps.iter().all(|c| c.edges < c.vertices.len()) {
        let mut acc = [0usize];
        forest_dp(&comps, n, |_| 0, &mut acc);
        return Ok(acc[0]);
    }
    let branch = branch_vertices(view, &comps);

    // Both branches live in the forest `view − {branch vertices}`: skipping v
    // is a plain DP there, taking v is the same DP with N(v) forced out.
    let mut forest = view.clone();
    let mut forced_out = vec![false; n];
    for &v in branch.iter().filter(|&&v| v != NONE) {
        forest.remove(v);
        for w in view.neighbors(v) {
            forced_out[w] = true;
        }
    }
    let mut skip = vec![0usize; k];
    let mut take = vec![0usize; k];
    for (root, s, t) in paired_forest_dp(&forest.components(), &forced_out) {
        skip[comps.comp_of[root]] += s;
        take[comps.comp_of[root]] += t;
    }
    Ok((0..k)
        .map(|c| if branch[c] == NONE { skip[c] } else { skip[c].max(1 + take[c]) })
        .sum())
}

/// Tree DP run twice at once: per tree, `(root, α, α with forced_out
/// vertices excluded)`.
fn paired_forest_dp(sub: &Components, forced_out: &[bool]) -> Vec<(usize, usize, usize)> {
    let n = forced_out.len();
    let (mut inc, mut exc) = (vec![0usize; n], vec![0usize; n]);
    // Constrained pair; `None` marks an impossible inclusion.
    let (mut inc_c, mut exc_c) = (vec![Some(0usize); n], vec![0usize; n]);
    let mut out = Vec::with_capacity(sub.comps.len());
    for comp in &sub.comps {
        for &v in comp.vertices.iter().rev() {
            inc[v] += 1;
            inc_c[v] = if forced_out[v] { None } else { inc_c[v].map(|x| x + 1) };
            let p = sub.parent[v];
            if p != NONE {
                inc[p] += exc[v];
                exc[p] += inc[v].max(exc[v]);
                inc_c[p] = inc_c[p].map(|x| x + exc_c[v]);
                exc_c[p] += inc_c[v].map_or(exc_c[v], |x| x.max(exc_c[v]));
            }
        }
        let root = comp.vertices[0];
        out.push((root, inc[root].max(exc[root]), inc_c[root].map_or(exc_c[root], |x| x.max(exc_c[root]))));
    }
    out
}

/// `α(view)` when removing the single vertex `b` leaves a forest. Skips the
/// cycle search, which matters inside quadratic deletion loops.
pub(crate) fn alpha_branched(view: &View, b: usize) -> usize {
    let mut forest = view.clone();
    forest.remove(b);
    let mut forced_out = vec![false; view.g.order()];
    for w in view.neighbors(b) {
        forced_out[w] = true;
    }
    let (skip, take) = paired_forest_dp(&forest.components(), &forced_out)
        .into_iter()
        .fold((0, 0), |(s, t), (_, a, b)| (s + a, t + b));
    skip.max(1 + take)
}

/// Greedy leaf matching on the tree of `view` containing `root`: in reverse
/// BFS order, a vertex is matched to its parent when both are free.
fn greedy_tree_matching(view: &View, root: usize, mate: &mut [usize]) -> Vec<(usize, usize)> {
    let mut order = vec![(root, NONE)];
    let mut head = 0;
    while head < order.len() {
        let (u, p) = order[head];
        head += 1;
        for w in view.neighbors(u) {
            if w != p {
                order.push((w, u));
            }
        }
    }
    let mut pairs = Vec::new();
    for &(v, p) in order.iter().rev() {
        if p != NONE && mate[v] == NONE && mate[p] == NONE {
            mate[v] = p;
            mate[p] = v;
            pairs.push((p, v));
        }
    }
    pairs
}

/// Maximum matching of a view whose components each hold at most one cycle.
pub(crate) fn matching_view(view: &View) -> Result<Vec<(usize, usize)>> {
    let comps = view.components();
    check_supported(&comps)?;
    let branch = branch_vertices(view, &comps);
    let residue = view.cycle_residue();
    let mut mate = vec![NONE; view.g.order()];
    let mut pairs = Vec::new();

    for (c, comp) in comps.comps.iter().enumerate() {
        let root = comp.vertices[0];
        if branch[c] == NONE {
            pairs.extend(greedy_tree_matching(view, root, &mut mate));
            continue;
        }
        let cycle = view.canonical_cycle(&residue, branch[c]);
        let mut best: Option<Vec<(usize, usize)>> = None;
        let mut trial = view.clone();
        for i in 0..cycle.len() {
            let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            trial.set_cut(Some((a, b)));
            let found = greedy_tree_matching(&trial, root, &mut mate);
            for &v in &comp.vertices {
                mate[v] = NONE;
            }
            if best.as_ref().is_none_or(|b| found.len() > b.len()) {
                best = Some(found);
            }
        }
        let best = best.expect("cycle has edges");
        for &(u, v) in &best {
            mate[u] = v;
            mate[v] = u;
        }
        pairs.extend(best);
    }
    Ok(pairs)
}

pub fn alpha(g: &Graph) -> Result<usize> {
    alpha_view(&View::new(g)).map_err(|e| with_class(e, g))
}

pub fn mu(g: &Graph) -> Result<usize> {
    matching_view(&View::new(g)).map(|p| p.len()).map_err(|e| with_class(e, g))
}

/// An explicit maximum matching; deterministic for a given graph.
pub fn max_matching(g: &Graph) -> Result<MatchingResult> {
    let pairs = matching_view(&View::new(g)).map_err(|e| with_class(e, g))?;
    Ok(matching_result(g, &pairs))
}

pub(crate) fn matching_result(g: &Graph, pairs: &[(usize, usize)]) -> MatchingResult {
    let edges = pairs
        .iter()
        .map(|&(u, v)| Edge::new(g.label(u), g.label(v)))
        .collect();
    let saturated = g.label_set(pairs.iter().flat_map(|&(u, v)| [u, v]));
    MatchingResult { edges, saturated }
}

fn with_class(e: Error, g: &Graph) -> Error {
    match e {
        Error::UnsupportedClass(_) => Error::UnsupportedClass(g.classify()),
        other => other,
    }
}

/// `α(G) + μ(G) = n`.
pub fn is_koenig_egervary(g: &Graph) -> Result<bool> {
    Ok(alpha(g)? + mu(g)? == g.order())
}

/// `α(G − e) > α(G)`.
pub fn is_alpha_critical(g: &Graph, e: &Edge) -> Result<bool> {
    let (u, v) = g.edge_ids(e)?;
    let base = alpha(g)?;
    Ok(alpha_view(&View::new(g).cut(u, v))? > base)
}

/// The α-critical edges of the unique cycle, in cycle order.
pub fn cycle_alpha_critical_edges(g: &Graph) -> Result<Vec<Edge>> {
    let info = g.find_cycle()?;
    let base = alpha(g)?;
    let mut out = Vec::new();
    for e in info.cycle_edges {
        let (u, v) = g.edge_ids(&e)?;
        if alpha_view(&View::new(g).cut(u, v))? > base {
            out.push(e);
        }
    }
    Ok(out)
}
