"""Smoke test for the unicore Python extension.

Build and install the extension first:

    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/unicore-*.whl

then run ``python python/smoke_test.py``.
"""

import unicore


def check(cond, what):
    if not cond:
        raise AssertionError(what)
    print(f"ok  {what}")


def main():
    g = unicore.fixture("fig1_G")
    check((g.order(), g.alpha(), g.mu(), g.is_koenig_egervary()) == (7, 4, 3, True), "fig1_G numbers")
    check(g.core().core == ["a", "b", "c"], "fig1_G core")

    g = unicore.Graph.fixture("fig2_G")
    r = g.core()
    check(r.core == ["a", "b"] and r.method == "StructuralDecomposition", "fig2_G core by structure")
    check(r.certificate == [("x", ["a", "b"])], "fig2_G certificate")
    check(g.core("deletion").core == r.core, "deletion route agrees")
    check(len(g.alpha_critical_cycle_edges()) == 5, "all cycle edges critical")
    check(g.is_alpha_critical("u", "v"), "uv is critical")

    cyc = g.find_cycle()
    check(set(cyc["cycle"]) == {"y", "d", "t", "c", "w"} and cyc["n1"] == ["x"], "cycle and N1")
    y, tx = cyc["pendant_trees"]["x"]
    check(y == "y" and tx.core("tree_matching").core == ["a", "b"], "pendant tree core")

    report = g.analyze()
    check(report["koenig_egervary"] is False and report["alpha"] + report["mu"] == 9, "analysis report")

    oracle = g.oracle()
    check((oracle["alpha"], oracle["mu"], oracle["core"]) == (5, 4, ["a", "b"]), "oracle agrees")

    edge = unicore.Graph([("p", "q")])
    check(edge.core().core == [] and edge.analyze()["cycle"] is None, "single edge")
    check(unicore.parse(g.to_edge_list()) == g, "edge-list round trip")

    u = unicore.gen_unicyclic(500, 3)
    check(u.classify() == "Unicyclic" and len(u) == 500, "generated unicyclic graph")
    check(u.core().core == u.core("deletion").core, "large instance routes agree")

    summary = unicore.verify(count=30, max_n=12, seed=4, kind="mixed")
    check(summary["failed"] == 0 and summary["instances"] == 30, "verification campaign")

    try:
        unicore.parse("a b\na c\na d\nb c\nb d\nc d").alpha()
    except unicore.UnsupportedGraphError:
        check(True, "K4 rejected")
    else:
        check(False, "K4 rejected")

    try:
        unicore.parse("a a")
    except ValueError:
        check(True, "self-loop rejected")

    print("smoke test passed")


if __name__ == "__main__":
    main()
