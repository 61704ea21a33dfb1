//! `core(G)`, the intersection of all maximum independent sets.
//!
//! Three routes are provided:
//!
//! * **vertex deletion**: `v ∈ core(G)` iff `α(G − v) = α(G) − 1`; valid
//!   for every supported graph, quadratic time;
//! * **tree matching**: on forests (bipartite), `v ∈ core` iff some maximum
//!   matching leaves `v` unsaturated; computed in linear time by alternating
//!   search from the unsaturated vertices of one maximum matching;
//! * **structural decomposition**: for a unicyclic graph with
//!   `α + μ = n − 1`, the core is the union of the cores of its pendant trees.
//!
//! Unicyclic graphs with `α + μ = n` have no such formula and fall back to
//! vertex deletion.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, GraphClass, View, NONE};
use crate::solver::{self, alpha_branched, alpha_view, matching_view};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CoreMethod {
    VertexDeletion,
    TreeMatching,
    StructuralDecomposition,
    KEFallback,
}

impl std::fmt::Display for CoreMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

/// Pendant-tree breakdown `x → core(T_x)`.
pub type Certificate = BTreeMap<String, BTreeSet<String>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoreResult {
    pub core: BTreeSet<String>,
    pub method: CoreMethod,
    pub certificate: Option<Certificate>,
}

impl CoreResult {
    fn plain(core: BTreeSet<String>, method: CoreMethod) -> Self {
        CoreResult { core, method, certificate: None }
    }
}

fn require_supported(g: &Graph) -> Result<GraphClass> {
    let class = g.classify();
    if class.is_supported() {
        Ok(class)
    } else {
        Err(Error::UnsupportedClass(class))
    }
}

/// `{ v : α(G − v) = α(G) − 1 }`. Vertices are tested independently in parallel.
pub fn core_by_deletion(g: &Graph) -> Result<CoreResult> {
    require_supported(g)?;
    let base = solver::alpha(g)?;
    // In a unicyclic graph, G − v keeps the cycle unless v is on it, so the
    // branch vertex is known once for all deletions.
    let branch = match g.classify() {
        GraphClass::Unicyclic => g.find_cycle().ok().and_then(|c| c.cycle_vertices.into_iter().min()),
        _ => None,
    }
    .and_then(|b| g.id(&b).ok());
    let in_core = (0..g.order())
        .into_par_iter()
        .map(|v| {
            let view = View::without(g, &[v]);
            let a = match branch {
                Some(b) if b != v => alpha_branched(&view, b),
                _ => alpha_view(&view)?,
            };
            Ok(a + 1 == base)
        })
        .collect::<Result<Vec<bool>>>()?;
    let core = g.label_set((0..g.order()).filter(|&v| in_core[v]));
    Ok(CoreResult::plain(core, CoreMethod::VertexDeletion))
}

/// Vertices left unsaturated by at least one maximum matching of a forest:
/// those reachable from an unsaturated vertex by an even alternating path.
fn unsaturated_by_some_matching(g: &Graph) -> Result<Vec<bool>> {
    let view = View::new(g);
    let mut mate = vec![NONE; g.order()];
    for (u, v) in matching_view(&view)? {
        mate[u] = v;
        mate[v] = u;
    }
    let mut even = vec![false; g.order()];
    let mut queue = VecDeque::new();
    for v in 0..g.order() {
        if mate[v] == NONE {
            even[v] = true;
            queue.push_back(v);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &w in g.adj(u) {
            if w == mate[u] {
                continue;
            }
            let next = mate[w];
            // An unsaturated `w` here would mean an augmenting path.
            debug_assert_ne!(next, NONE, "matching is maximum");
            if next != NONE && !even[next] {
                even[next] = true;
                queue.push_back(next);
            }
        }
    }
    Ok(even)
}

/// Core of a forest via maximum matchings: `{ v : μ(T − v) = μ(T) }`.
pub fn core_tree_by_matching(t: &Graph) -> Result<CoreResult> {
    let class = t.classify();
    if !class.is_acyclic() {
        return Err(Error::UnsupportedClass(class));
    }
    let even = unsaturated_by_some_matching(t)?;
    let core = t.label_set((0..t.order()).filter(|&v| even[v]));
    Ok(CoreResult::plain(core, CoreMethod::TreeMatching))
}

/// `{ v : μ(G − v) = μ(G) }` by explicit deletion; a cross-check for
/// [`core_tree_by_matching`] that shares nothing with the alternating search.
pub fn core_tree_by_matching_deletion(t: &Graph) -> Result<BTreeSet<String>> {
    let class = t.classify();
    if !class.is_acyclic() {
        return Err(Error::UnsupportedClass(class));
    }
    let base = solver::mu(t)?;
    let keep = (0..t.order())
        .into_par_iter()
        .map(|v| Ok(matching_view(&View::without(t, &[v]))?.len() == base))
        .collect::<Result<Vec<bool>>>()?;
    Ok(t.label_set((0..t.order()).filter(|&v| keep[v])))
}

/// Union of the pendant-tree cores with its certificate.
pub fn pendant_core_union(g: &Graph) -> Result<(BTreeSet<String>, Certificate)> {
    let info = g.find_cycle()?;
    let mut core = BTreeSet::new();
    let mut certificate = Certificate::new();
    for pt in &info.pendant_trees {
        let tree_core = core_tree_by_matching(&pt.tree)?.core;
        core.extend(tree_core.iter().cloned());
        certificate.insert(pt.x.clone(), tree_core);
    }
    Ok((core, certificate))
}

/// Core of a unicyclic graph: the pendant-tree union when `α + μ = n − 1`,
/// vertex deletion otherwise.
pub fn core_unicyclic(g: &Graph) -> Result<CoreResult> {
    let class = g.classify();
    if class != GraphClass::Unicyclic {
        return Err(Error::NotUnicyclic(class));
    }
    if solver::is_koenig_egervary(g)? {
        let mut r = core_by_deletion(g)?;
        r.method = CoreMethod::KEFallback;
        return Ok(r);
    }
    let (core, certificate) = pendant_core_union(g)?;
    Ok(CoreResult { core, method: CoreMethod::StructuralDecomposition, certificate: Some(certificate) })
}

/// Core of any supported graph, dispatched on its class.
///
/// For a disconnected graph with a cycle, each component is solved on its
/// own. The reported method is the common method when all components agree;
/// otherwise the most expensive one used (`KEFallback` over
/// `StructuralDecomposition` over `TreeMatching`), without a certificate.
pub fn core(g: &Graph) -> Result<CoreResult> {
    match require_supported(g)? {
        GraphClass::Tree | GraphClass::Forest => core_tree_by_matching(g),
        GraphClass::Unicyclic => core_unicyclic(g),
        _ => {
            let parts = g.components().iter().map(core).collect::<Result<Vec<_>>>()?;
            let methods: BTreeSet<_> = parts.iter().map(|p| p.method).collect();
            let mut core = BTreeSet::new();
            let mut certificate = Certificate::new();
            for p in parts {
                core.extend(p.core);
                certificate.extend(p.certificate.into_iter().flatten());
            }
            if methods.len() == 1 {
                let method = *methods.iter().next().expect("nonempty");
                let certificate = (method == CoreMethod::StructuralDecomposition).then_some(certificate);
                return Ok(CoreResult { core, method, certificate });
            }
            let method = [CoreMethod::KEFallback, CoreMethod::StructuralDecomposition, CoreMethod::TreeMatching]
                .into_iter()
                .find(|m| methods.contains(m))
                .expect("component methods");
            Ok(CoreResult::plain(core, method))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantCheck {
    pub name: &'static str,
    pub holds: bool,
}

fn check(name: &'static str, holds: bool) -> InvariantCheck {
    InvariantCheck { name, holds }
}

/// Evaluates the structural facts that must hold for `g` and its core.
///
/// Every supported graph gets the per-edge monotonicity bounds, the
/// `n − p ≤ α + μ ≤ n` bound, the matching witness check, the
/// α-critical-edge/core separation and, when `α + μ = n`, the two
/// König–Egerváry matching properties. Unicyclic graphs additionally get
/// the cycle-specific facts.
pub fn invariant_checks(g: &Graph, core: &BTreeSet<String>) -> Result<Vec<InvariantCheck>> {
    let class = require_supported(g)?;
    let n = g.order();
    let alpha = solver::alpha(g)?;
    let matching = solver::max_matching(g)?;
    let mu = solver::mu(g)?;
    let ke = alpha + mu == n;
    let closed_core = g.closed_neighborhood_of_set(core)?;
    let mut out = Vec::new();

    out.push(check(
        "matching_witness_is_maximum",
        matching.len() == mu
            && matching.saturated.len() == 2 * mu
            && matching.edges.iter().all(|e| g.has_edge(&e.0, &e.1)),
    ));

    let p = g.components().len();
    out.push(check("alpha_mu_component_bounds", n - p <= alpha + mu && alpha + mu <= n));

    let mut edge_bounds = true;
    let mut critical = Vec::new();
    for e in g.edges() {
        let (u, v) = g.edge_ids(&e)?;
        let cut = View::new(g).cut(u, v);
        let a = alpha_view(&cut)?;
        let m = matching_view(&cut)?.len();
        edge_bounds &= alpha <= a && a <= alpha + 1 && mu <= m + 1 && m <= mu;
        if a > alpha {
            critical.push(e);
        }
    }
    out.push(check("edge_deletion_bounds", edge_bounds));
    out.push(check(
        "critical_edges_avoid_closed_core",
        critical.iter().all(|e| !closed_core.contains(&e.0) && !closed_core.contains(&e.1)),
    ));

    if ke {
        let open: BTreeSet<&String> = closed_core.iter().filter(|v| !core.contains(*v)).collect();
        out.push(check(
            "ke_matching_matches_neighbors_into_core",
            open.iter().all(|v| matching.mate(v).is_some_and(|w| core.contains(w))),
        ));
        let rest = g.delete_vertices(&closed_core.iter().collect::<Vec<_>>())?;
        out.push(check("ke_remainder_has_perfect_matching", 2 * solver::mu(&rest)? == rest.order()));
    }

    if class == GraphClass::Unicyclic {
        let info = g.find_cycle()?;
        let cycle = info.cycle_set();
        out.push(check("unicyclic_alpha_mu_bounds", n - 1 <= alpha + mu));

        let cycle_critical: Vec<&Edge> = info.cycle_edges.iter().filter(|e| critical.contains(e)).collect();
        out.push(check(
            "deficient_iff_all_cycle_edges_critical",
            (alpha + mu == n - 1) == (cycle_critical.len() == info.cycle_edges.len()),
        ));

        let mut some_not_mu_critical = false;
        for e in &info.cycle_edges {
            let (u, v) = g.edge_ids(e)?;
            some_not_mu_critical |= matching_view(&View::new(g).cut(u, v))?.len() == mu;
        }
        out.push(check("some_cycle_edge_not_mu_critical", some_not_mu_critical));

        if !ke {
            out.push(check(
                "non_ke_cycle_avoids_closed_core",
                closed_core.iter().all(|v| !cycle.contains(v)),
            ));
        }

        let mut attached_in_core = false;
        for pt in &info.pendant_trees {
            attached_in_core |= core_tree_by_matching(&pt.tree)?.core.contains(&pt.x);
        }
        out.push(check("attachment_in_pendant_core_implies_ke", !attached_in_core || ke));
    }
    Ok(out)
}

/// Outcome of computing a unicyclic core by two independent routes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    /// The structural answer (or the KE fallback).
    pub fast: CoreResult,
    pub deletion: CoreResult,
    pub agree: bool,
    pub koenig_egervary: bool,
    /// Whether the pendant-tree union matches the core; exploratory only
    /// when `koenig_egervary` holds.
    pub union_formula_agrees: bool,
    pub invariants: Vec<InvariantCheck>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.agree && self.invariants.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out: Vec<&'static str> = self.invariants.iter().filter(|c| !c.holds).map(|c| c.name).collect();
        if !self.agree {
            out.insert(0, "structural_equals_deletion");
        }
        out
    }
}

pub fn check_structural_consistency(g: &Graph) -> Result<ConsistencyReport> {
    let fast = core_unicyclic(g)?;
    let deletion = core_by_deletion(g)?;
    let koenig_egervary = fast.method == CoreMethod::KEFallback;
    let (union, _) = pendant_core_union(g)?;
    let invariants = invariant_checks(g, &deletion.core)?;
    Ok(ConsistencyReport {
        agree: fast.core == deletion.core,
        union_formula_agrees: union == deletion.core,
        koenig_egervary,
        fast,
        deletion,
        invariants,
    })
}
