//! Seeded differential campaigns: every fast path against the slower
//! definitional routes, and against the exhaustive oracle for small orders.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::core::{
    check_structural_consistency, core, core_by_deletion, core_tree_by_matching, core_tree_by_matching_deletion,
    invariant_checks, pendant_core_union, CoreMethod,
};
use crate::error::{Error, Result};
use crate::gen::{GenKind, GenSpec};
use crate::graph::{Graph, GraphClass};
use crate::oracle::{oracle_analyze, DEFAULT_LIMIT};
use crate::solver;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyKind {
    Tree,
    Unicyclic,
    Forest,
    Mixed,
}

impl FromStr for VerifyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tree" => Ok(VerifyKind::Tree),
            "unicyclic" => Ok(VerifyKind::Unicyclic),
            "forest" => Ok(VerifyKind::Forest),
            "mixed" => Ok(VerifyKind::Mixed),
            other => Err(Error::InvalidSpec(format!("unknown campaign kind `{other}`"))),
        }
    }
}

impl std::fmt::Display for VerifyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            VerifyKind::Tree => "tree",
            VerifyKind::Unicyclic => "unicyclic",
            VerifyKind::Forest => "forest",
            VerifyKind::Mixed => "mixed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    pub count: usize,
    /// Smallest order drawn; defaults to the generator minimum.
    pub min_n: Option<usize>,
    pub max_n: usize,
    pub seed: u64,
    pub kind: VerifyKind,
    pub oracle_limit: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { count: 100, min_n: None, max_n: 14, seed: 0, kind: VerifyKind::Mixed, oracle_limit: DEFAULT_LIMIT }
    }
}

impl VerifyConfig {
    fn kind_of(&self, index: usize) -> GenKind {
        match self.kind {
            VerifyKind::Tree => GenKind::Tree,
            VerifyKind::Unicyclic => GenKind::Unicyclic,
            VerifyKind::Forest => GenKind::Forest,
            VerifyKind::Mixed => [GenKind::Tree, GenKind::Unicyclic, GenKind::Forest][index % 3],
        }
    }

    fn bounds(&self, kind: GenKind) -> (usize, usize) {
        (self.min_n.unwrap_or(1).max(kind.min_order()), self.max_n)
    }

    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::InvalidSpec("count must be at least 1".into()));
        }
        for i in 0..self.count.min(3) {
            let (lo, hi) = self.bounds(self.kind_of(i));
            if lo > hi {
                return Err(Error::InvalidSpec(format!("empty order range {lo}..={hi}")));
            }
        }
        Ok(())
    }

    /// The generator input of instance `index`; its seed is `seed + index`.
    pub fn instance_spec(&self, index: usize) -> GenSpec {
        let seed = self.seed.wrapping_add(index as u64);
        let kind = self.kind_of(index);
        let (lo, hi) = self.bounds(kind);
        let n = ChaCha8Rng::seed_from_u64(seed).gen_range(lo..=hi);
        GenSpec { kind, n, seed }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceOutcome {
    pub index: usize,
    pub spec: GenSpec,
    pub n: usize,
    pub m: usize,
    pub class: GraphClass,
    pub alpha: usize,
    pub mu: usize,
    pub koenig_egervary: bool,
    pub core: BTreeSet<String>,
    pub method: CoreMethod,
    pub oracle_checked: bool,
    pub failures: Vec<String>,
}

impl InstanceOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs every applicable cross-check on `g`; failures are returned by name.
pub fn check_graph(g: &Graph, oracle_limit: usize) -> Result<(Vec<String>, bool)> {
    let mut failures = Vec::new();
    let mut fail = |cond: bool, name: &str| {
        if !cond {
            failures.push(name.to_owned());
        }
    };
    let class = g.classify();
    let fast = core(g)?;
    let deletion = core_by_deletion(g)?;
    fail(fast.core == deletion.core, "core_equals_deletion_core");

    if class.is_acyclic() {
        let by_mu = core_tree_by_matching_deletion(g)?;
        fail(core_tree_by_matching(g)?.core == by_mu, "tree_matching_core_equals_mu_deletion");
        fail(by_mu == deletion.core, "mu_deletion_equals_alpha_deletion");
    }

    let checks = if class == GraphClass::Unicyclic {
        let report = check_structural_consistency(g)?;
        fail(report.agree, "structural_equals_deletion");
        report.invariants
    } else {
        invariant_checks(g, &deletion.core)?
    };
    for c in checks.iter().filter(|c| !c.holds) {
        failures.push(c.name.to_owned());
    }

    let oracle_checked = g.order() <= oracle_limit;
    if oracle_checked {
        let o = oracle_analyze(g, oracle_limit)?;
        let alpha = solver::alpha(g)?;
        let mu = solver::mu(g)?;
        let mut fail = |cond: bool, name: &str| {
            if !cond {
                failures.push(name.to_owned());
            }
        };
        fail(o.alpha == alpha, "oracle_alpha");
        fail(o.mu == mu, "oracle_mu");
        fail(o.core == fast.core, "oracle_core");
        fail(o.core == deletion.core, "oracle_deletion_core");
        fail(o.omega_sample.iter().all(|s| fast.core.is_subset(s)), "core_inside_sampled_mis");
        // The core is a maximum independent set exactly when there is only one.
        fail((o.core.len() == o.alpha) == (o.num_mis == 1), "core_is_mis_iff_unique_mis");
        if class == GraphClass::Unicyclic && alpha + mu < g.order() {
            let (union, _) = pendant_core_union(g)?;
            fail(union == o.core && union == deletion.core, "pendant_union_equals_oracle_core");
        }
    }
    Ok((failures, oracle_checked))
}

pub fn run_instance(cfg: &VerifyConfig, index: usize) -> Result<InstanceOutcome> {
    let spec = cfg.instance_spec(index);
    let g = spec.generate()?;
    let (failures, oracle_checked) = check_graph(&g, cfg.oracle_limit)?;
    let alpha = solver::alpha(&g)?;
    let mu = solver::mu(&g)?;
    let c = core(&g)?;
    Ok(InstanceOutcome {
        index,
        spec,
        n: g.order(),
        m: g.size(),
        class: g.classify(),
        alpha,
        mu,
        koenig_egervary: alpha + mu == g.order(),
        core: c.core,
        method: c.method,
        oracle_checked,
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CampaignSummary {
    pub config: VerifyConfig,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub oracle_checked: usize,
    pub non_ke: usize,
    /// Lowest-index failing instance with its serialization.
    pub first_failure: Option<(InstanceOutcome, String)>,
    pub outcomes: Vec<InstanceOutcome>,
}

impl CampaignSummary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn render(&self, list: bool) -> String {
        let c = &self.config;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "verify kind={} count={} min-n={} max-n={} seed={} oracle-limit={}",
            c.kind,
            c.count,
            c.min_n.map_or("auto".to_string(), |v| v.to_string()),
            c.max_n,
            c.seed,
            c.oracle_limit
        );
        if list {
            for o in &self.outcomes {
                let core: Vec<&str> = o.core.iter().map(String::as_str).collect();
                let _ = writeln!(
                    out,
                    "instance {} kind={} n={} m={} seed={} class={} alpha={} mu={} ke={} core=[{}] method={} {}",
                    o.index,
                    o.spec.kind,
                    o.n,
                    o.m,
                    o.spec.seed,
                    o.class,
                    o.alpha,
                    o.mu,
                    o.koenig_egervary,
                    core.join(","),
                    o.method,
                    if o.passed() { "pass" } else { "FAIL" }
                );
            }
        }
        let _ = writeln!(out, "instances: {}", self.instances);
        let _ = writeln!(out, "passed: {}", self.passed);
        let _ = writeln!(out, "failed: {}", self.failed);
        let _ = writeln!(out, "oracle-checked: {}", self.oracle_checked);
        let _ = writeln!(out, "non-ke: {}", self.non_ke);
        if let Some((o, text)) = &self.first_failure {
            let _ = writeln!(out, "first failure: instance {} ({})", o.index, o.failures.join(", "));
            let _ = writeln!(out, "reproduce: --count 1 --seed {} --kind {} --min-n {} --max-n {}", o.spec.seed, o.spec.kind, o.n, o.n);
            out.push_str(text);
        }
        out
    }
}

/// Runs the campaign; instances are checked in parallel but reported in
/// index order, so the summary matches a sequential run.
pub fn run_campaign(cfg: &VerifyConfig) -> Result<CampaignSummary> {
    cfg.validate()?;
    let outcomes = (0..cfg.count)
        .into_par_iter()
        .map(|i| run_instance(cfg, i))
        .collect::<Result<Vec<_>>>()?;
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    let first_failure = match outcomes.iter().find(|o| !o.passed()) {
        Some(o) => Some((o.clone(), o.spec.to_edge_list()?)),
        None => None,
    };
    Ok(CampaignSummary {
        config: cfg.clone(),
        instances: outcomes.len(),
        passed: outcomes.len() - failed,
        failed,
        oracle_checked: outcomes.iter().filter(|o| o.oracle_checked).count(),
        non_ke: outcomes.iter().filter(|o| !o.koenig_egervary).count(),
        first_failure,
        outcomes,
    })
}
