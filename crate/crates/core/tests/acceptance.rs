//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Run with `cargo test --test acceptance`.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use unicore::cli::{self, analyze};
use unicore::core::{core_by_deletion, core_tree_by_matching, core_unicyclic, pendant_core_union};
use unicore::oracle::DEFAULT_LIMIT;
use unicore::verify::{run_campaign, CampaignSummary, VerifyConfig, VerifyKind};
use unicore::{
    alpha, core, cycle_alpha_critical_edges, fixture, gen_tree, gen_unicyclic, is_alpha_critical, max_matching, mu,
    oracle_analyze, CoreMethod, Edge, Graph, GraphClass,
};

type Check = Result<String, String>;

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn err(e: unicore::Error) -> String {
    e.to_string()
}

fn fig1_fixture() -> Check {
    let g = fixture("fig1_G").map_err(err)?;
    let r = analyze(&g).map_err(err)?;
    let got = (r.n, r.alpha, r.mu, r.koenig_egervary, r.core.clone());
    let want = (7, 4, 3, true, vec!["a".to_string(), "b".into(), "c".into()]);
    ensure(got == want, || format!("got {got:?}"))?;
    Ok("n=7 alpha=4 mu=3 ke=true core={a,b,c}".into())
}

fn fig2_fixture() -> Check {
    let g = fixture("fig2_G").map_err(err)?;
    let o = oracle_analyze(&g, DEFAULT_LIMIT).map_err(err)?;
    ensure((o.alpha, o.mu) == (5, 4), || format!("oracle alpha/mu {:?}", (o.alpha, o.mu)))?;
    let r = analyze(&g).map_err(err)?;
    ensure((r.alpha, r.mu) == (o.alpha, o.mu), || "solver disagrees with oracle".into())?;
    ensure(!r.koenig_egervary && r.alpha + r.mu == r.n - 1 && r.n == 10, || "expected alpha+mu = n-1 = 9".into())?;
    ensure(r.core == ["a", "b"], || format!("core {:?}", r.core))?;
    ensure(r.method == CoreMethod::StructuralDecomposition, || format!("method {:?}", r.method))?;
    let cert = r.certificate.clone().ok_or("missing certificate")?;
    ensure(cert.len() == 1 && cert.get("x") == Some(&set(&["a", "b"])), || format!("certificate {cert:?}"))?;
    let cycle: BTreeSet<String> = r.cycle.clone().unwrap_or_default().into_iter().collect();
    ensure(cycle == set(&["y", "d", "t", "c", "w"]), || format!("cycle {cycle:?}"))?;
    let critical = r.alpha_critical_cycle_edges.clone().unwrap_or_default();
    ensure(critical.len() == 5, || format!("{} critical cycle edges", critical.len()))?;
    ensure(is_alpha_critical(&g, &Edge::new("u", "v")).map_err(err)?, || "uv not alpha-critical".into())?;
    Ok("alpha=5 mu=4 (oracle) core={a,b} structural, cert x->{a,b}, 5/5 cycle edges + uv critical".into())
}

fn pendant_tree() -> Check {
    let t = fixture("fig2_Tx").map_err(err)?;
    let c = core_tree_by_matching(&t).map_err(err)?;
    ensure(c.core == set(&["a", "b"]), || format!("core {:?}", c.core))?;
    let base = mu(&t).map_err(err)?;
    for v in ["a", "b"] {
        let reduced = mu(&t.delete_vertices(&[v]).map_err(err)?).map_err(err)?;
        ensure(reduced == base, || format!("mu(Tx-{v}) = {reduced}, mu(Tx) = {base}"))?;
    }
    Ok(format!("core(Tx)={{a,b}}, mu(Tx-a)=mu(Tx-b)=mu(Tx)={base}"))
}

fn campaign_configs() -> [VerifyConfig; 2] {
    let base = VerifyConfig { count: 1000, max_n: 14, seed: 1, oracle_limit: DEFAULT_LIMIT, ..Default::default() };
    [
        VerifyConfig { kind: VerifyKind::Unicyclic, min_n: Some(3), ..base.clone() },
        VerifyConfig { kind: VerifyKind::Tree, min_n: Some(1), ..base },
    ]
}

fn oracle_campaign(elapsed: &mut Duration) -> Check {
    let start = Instant::now();
    let summaries = campaign_configs()
        .iter()
        .map(run_campaign)
        .collect::<Result<Vec<CampaignSummary>, _>>()
        .map_err(err)?;
    *elapsed = start.elapsed();
    for s in &summaries {
        ensure(s.all_passed(), || s.render(false))?;
        ensure(s.oracle_checked == s.instances, || "instance skipped the oracle".into())?;
    }
    ensure(*elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("1000 unicyclic + 1000 trees, 0 failures, {:.1}s", elapsed.as_secs_f64()))
}

fn campaign_graphs() -> Result<Vec<Graph>, String> {
    let mut out = Vec::new();
    for cfg in campaign_configs() {
        for i in 0..cfg.count {
            out.push(cfg.instance_spec(i).generate().map_err(err)?);
        }
    }
    Ok(out)
}

fn union_formula_equality(graphs: &[Graph]) -> Check {
    let mut non_ke = 0;
    for g in graphs.iter().filter(|g| g.classify() == GraphClass::Unicyclic) {
        if alpha(g).map_err(err)? + mu(g).map_err(err)? == g.order() {
            continue;
        }
        non_ke += 1;
        let (union, _) = pendant_core_union(g).map_err(err)?;
        let deletion = core_by_deletion(g).map_err(err)?.core;
        let oracle = oracle_analyze(g, DEFAULT_LIMIT).map_err(err)?.core;
        let structural = core_unicyclic(g).map_err(err)?.core;
        ensure(union == deletion && deletion == oracle && oracle == structural, || {
            format!("union {union:?} deletion {deletion:?} oracle {oracle:?}\n{}", g.to_edge_list())
        })?;
    }
    ensure(non_ke > 0, || "campaign produced no non-KE instance".into())?;
    Ok(format!("{non_ke} non-KE instances, union = deletion = oracle"))
}

fn structural_equivalences(g: &Graph) -> Result<(), String> {
    let n = g.order();
    let (a, m) = (alpha(g).map_err(err)?, mu(g).map_err(err)?);
    let ke = a + m == n;
    let c = core(g).map_err(err)?.core;
    let closed = g.closed_neighborhood_of_set(&c).map_err(err)?;
    let show = || g.to_edge_list();

    for e in g.edges() {
        if is_alpha_critical(g, &e).map_err(err)? {
            ensure(!closed.contains(&e.0) && !closed.contains(&e.1), || format!("critical {e} touches N[core]\n{}", show()))?;
        }
    }

    if g.classify() == GraphClass::Unicyclic {
        let info = g.find_cycle().map_err(err)?;
        let critical = cycle_alpha_critical_edges(g).map_err(err)?;
        ensure((a + m == n - 1) == (critical.len() == info.cycle_edges.len()), || {
            format!("deficiency vs all-critical mismatch\n{}", show())
        })?;
        if !ke {
            ensure(info.cycle_set().is_disjoint(&closed), || format!("N[core] meets the cycle\n{}", show()))?;
        }
        for pt in &info.pendant_trees {
            if core_tree_by_matching(&pt.tree).map_err(err)?.core.contains(&pt.x) {
                ensure(ke, || format!("{} in its pendant core but not KE\n{}", pt.x, show()))?;
            }
        }
    }

    if ke {
        let matching = max_matching(g).map_err(err)?;
        for u in closed.difference(&c) {
            let into_core = matching.mate(u).is_some_and(|w| c.contains(w));
            ensure(into_core, || format!("{u} not matched into core\n{}", show()))?;
        }
        if closed.len() < n {
            let rest = g.delete_vertices(&closed.iter().collect::<Vec<_>>()).map_err(err)?;
            ensure(2 * mu(&rest).map_err(err)? == rest.order(), || format!("G-N[core] has no perfect matching\n{}", show()))?;
        }
    }
    Ok(())
}

fn equivalences(graphs: &[Graph]) -> Check {
    for g in graphs {
        structural_equivalences(g)?;
    }
    Ok(format!("{} instances, 0 exceptions", graphs.len()))
}

fn scale() -> Check {
    let g = gen_unicyclic(5000, 1).map_err(err)?;
    let start = Instant::now();
    let r = analyze(&g).map_err(err)?;
    let took = start.elapsed();
    ensure(r.n == 5000, || "wrong order".into())?;
    ensure(took < Duration::from_secs(5), || format!("analyze took {took:?}"))?;

    for seed in 0..200 {
        let t = gen_tree(2000, seed).map_err(err)?;
        let matching = core_tree_by_matching(&t).map_err(err)?.core;
        let deletion = core_by_deletion(&t).map_err(err)?.core;
        ensure(matching == deletion, || format!("tree seed {seed}: routes disagree"))?;
    }
    Ok(format!("n=5000 analyze {:.2}s ({:?}); 200 trees n=2000 agree", took.as_secs_f64(), r.method))
}

fn run_binary(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_unicore")).args(args).output().map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn determinism() -> Check {
    let commands: &[&[&str]] = &[
        &["analyze", "--fixture", "fig2_G", "--json"],
        &["analyze", "--fixture", "fig1_G", "--method", "both"],
        &["critical", "--fixture", "fig2_G", "--json"],
        &["gen", "--kind", "unicyclic", "--n", "300", "--seed", "7"],
        &["verify", "--count", "60", "--max-n", "12", "--seed", "3", "--kind", "mixed", "--list"],
    ];
    for args in commands {
        let first = run_binary(args)?;
        let second = run_binary(args)?;
        ensure(first.0 == 0, || format!("{args:?} exited {}", first.0))?;
        ensure(first == second, || format!("{args:?} differs between runs"))?;
    }

    // Parallel and single-threaded campaigns must render identically.
    let verify = ["unicore", "verify", "--count", "90", "--max-n", "14", "--seed", "11", "--kind", "mixed", "--list", "--json"];
    let render = |threads: usize| -> Result<String, String> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| e.to_string())?;
        Ok(pool.install(|| cli::run(verify)).stdout)
    };
    let single = render(1)?;
    ensure(!single.is_empty() && single == render(4)?, || "thread count changes verify output".into())?;
    Ok(format!("{} commands byte-identical across runs; verify identical on 1 and 4 threads", commands.len()))
}

fn main() -> ExitCode {
    let mut campaign_time = Duration::ZERO;
    let graphs = campaign_graphs();
    let results: Vec<(&str, Check)> = vec![
        ("1 fig1_G fixture", fig1_fixture()),
        ("2 fig2_G fixture", fig2_fixture()),
        ("3 fig2_Tx pendant tree", pendant_tree()),
        ("4 oracle differential campaign", oracle_campaign(&mut campaign_time)),
        ("5 union of pendant cores", graphs.clone().and_then(|g| union_formula_equality(&g))),
        ("6 structural equivalences", graphs.and_then(|g| equivalences(&g))),
        ("7 scale", scale()),
        ("8 determinism", determinism()),
    ];
    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
