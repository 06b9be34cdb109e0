"""End-to-end acceptance suite.

Each test prints exactly one PASS/FAIL line for its criterion (visible
even under output capture) and then asserts the same condition, so the
printed verdict and the pytest verdict can never disagree.
"""

import math
import random
import time

import numpy as np
import pytest

from cyclepack.bounds import (chernoff_split_check, prop3_lhs,
                              recursion_audit, small_case_bounds, threshold_x)
from cyclepack.contraction import (contract, find_witnessless_edge,
                                   is_witness_closed, lift_cycle,
                                   witness_closure)
from cyclepack.cycles import (check_cycle, find_any_cycle,
                              max_packing_bruteforce, verify_packing)
from cyclepack.digraph import (Digraph, complete_digraph,
                               random_exactly_r_out)
from cyclepack.solver import (SolveConfig, caro_wei_bound, solve,
                              two_disjoint_cycles, witness_turan_pack)

from naive_oracle import naive_max_packing_size


def report(capsys, num, label, ok, detail=""):
    verdict = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    with capsys.disabled():
        print(f"[acceptance {num:02d}] {label}: {verdict}{suffix}")
    assert ok, f"criterion {num} failed: {label} {detail}"


def bernoulli_digraph(n, p, seed, allow_loops=False):
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(n)
             if (u != v or allow_loops) and rng.random() < p]
    return Digraph.from_edges(n, edges)


def test_01_pair_extraction_sweep(capsys):
    """10,000 random exactly-3-out digraphs, zero failures, under 60 s."""
    start = time.monotonic()
    failures = 0
    for seed in range(10_000):
        n = random.Random(seed).randint(5, 60)
        g = random_exactly_r_out(n, 3, seed=seed)
        try:
            p = two_disjoint_cycles(g)
            if not verify_packing(g, p, 2):
                failures += 1
        except Exception:
            failures += 1
    elapsed = time.monotonic() - start
    ok = failures == 0 and elapsed < 60.0
    report(capsys, 1, "two disjoint cycles on 10k random 3-out graphs", ok,
           f"failures={failures}, {elapsed:.1f}s")


def test_02_lower_bound_family(capsys):
    """Complete digraph on 2k-1 vertices maxes out at k-1 cycles."""
    start = time.monotonic()
    got = {k: len(max_packing_bruteforce(complete_digraph(2 * k - 1)))
           for k in (2, 3, 4, 5, 6)}
    elapsed = time.monotonic() - start
    ok = all(got[k] == k - 1 for k in got) and elapsed < 30.0
    report(capsys, 2, "oracle matches 2k-1 lower-bound family", ok,
           f"sizes={got}, {elapsed:.1f}s")


def test_03_oracle_equivalence(capsys):
    """solve(strategy=oracle) equals the independent naive oracle, 500 cases."""
    mismatches = 0
    for case in range(500):
        rng = random.Random(case)
        n = rng.randint(3, 10)
        style = case % 3
        if style == 0:
            g = random_exactly_r_out(n, 1, seed=case)
        elif style == 1:
            g = random_exactly_r_out(n, min(2, n - 1), seed=case)
        else:
            g = bernoulli_digraph(n, 0.3, case, allow_loops=(case % 5 == 0))
        out = solve(g, SolveConfig(k=max(n, 1), strategy="oracle"))
        if out.achieved != naive_max_packing_size(g):
            mismatches += 1
    report(capsys, 3, "exact oracle equals naive enumeration on 500 graphs",
           mismatches == 0, f"mismatches={mismatches}")


def test_04_lift_correctness(capsys):
    """1,000 random valid contractions: contracted-graph cycles lift clean."""
    checked = 0
    bad = 0
    seed = 0
    while checked < 1000:
        seed += 1
        rng = random.Random(seed)
        n = rng.randint(5, 25)
        r = rng.choice((2, 3))
        g = random_exactly_r_out(n, r, seed=seed)
        e = find_witnessless_edge(g)
        if e is None or g.has_edge(e[1], e[0]):
            continue
        h, rec = contract(g, *e)
        c = find_any_cycle(h)
        if c is None:
            continue
        if check_cycle(g, lift_cycle(rec, c)) is not None:
            bad += 1
        checked += 1
    report(capsys, 4, "cycle lifting through 1000 random contractions",
           bad == 0, f"failures={bad}")


def test_05_witness_turan_guarantee(capsys):
    """On witness-closed inputs the packing meets the independence bound."""
    cases = 0
    violations = 0
    seed = 0
    while cases < 500 and seed < 20_000:
        seed += 1
        rng = random.Random(seed)
        n = rng.randint(12, 40)
        r = rng.choice((2, 3, 4))
        g = random_exactly_r_out(n, r, seed=seed)
        closed, _ = witness_closure(g, r)
        if not is_witness_closed(closed):
            continue
        adj = [set() for _ in range(closed.n)]
        for parent in range(closed.n):
            ch = closed.out_adj[parent]
            for i in range(len(ch)):
                for j in range(i + 1, len(ch)):
                    adj[ch[i]].add(ch[j])
                    adj[ch[j]].add(ch[i])
        k = closed.n
        promised = min(k, math.ceil(caro_wei_bound(adj) - 1e-9))
        p = witness_turan_pack(closed, k)
        if len(p) < promised or not verify_packing(closed, p, len(p)):
            violations += 1
        cases += 1
    ok = cases == 500 and violations == 0
    report(capsys, 5, "independence-bound guarantee on 500 closed graphs", ok,
           f"cases={cases}, violations={violations}")


def test_06_constant_reproduction(capsys):
    """Integer degree-bound chains, recursion audit, and the split bound."""
    start = time.monotonic()
    small_ok = all(rep.holds for rep in small_case_bounds())
    rec_ok = all(rep.holds
                 for rep in recursion_audit([2 ** 5, 2 ** 12, 2 ** 13, 2 ** 20]))
    ch = chernoff_split_check(32768, 32769)
    elapsed = time.monotonic() - start
    ok = small_ok and rec_ok and ch.holds and elapsed < 5.0
    report(capsys, 6, "exact constant reproduction", ok,
           f"smallcases={small_ok}, recursion={rec_ok}, "
           f"split-bound={ch.lhs:.4f}, {elapsed:.1f}s")


def test_07_threshold_reproduction(capsys):
    """Bisection thresholds land at or below 45 and 24."""
    big = threshold_x(2 ** 13 / 3 + 1)
    small = threshold_x(3.0)
    ok = big <= 45.0 and small <= 24.0
    report(capsys, 7, "crossing thresholds below 45 and 24", ok,
           f"x(2^13/3+1)={big:.6f}, x(3)={small:.6f}")


def test_08_union_bound_vs_monte_carlo(capsys):
    """prop3_lhs at (k,t,r)=(5,2,40) against a 10^6-trial reconstruction."""
    k, t, r = 5, 2, 40
    l = math.ceil((k + 1) / t)
    trials = 10 ** 6
    rng = np.random.default_rng(12345)
    start = time.monotonic()
    tail_hat = np.mean(rng.binomial(r, 1.0 / l, size=trials) <= 2 * t - 2)
    empty_hat = np.mean(
        np.all(rng.integers(0, l, size=(trials, r + 1)) != 0, axis=1))
    mc = k * (r * r - r + 1) * tail_hat + l * empty_hat
    sigma = math.sqrt(
        (k * (r * r - r + 1)) ** 2 * tail_hat * (1 - tail_hat) / trials
        + l ** 2 * empty_hat * (1 - empty_hat) / trials)
    elapsed = time.monotonic() - start
    exact = prop3_lhs(k, r, t)
    ok = abs(mc - exact) <= 3 * sigma and elapsed < 60.0
    report(capsys, 8, "union bound matches Monte Carlo within 3 sigma", ok,
           f"exact={exact:.6f}, mc={mc:.6f}, 3sigma={3 * sigma:.6f}, "
           f"{elapsed:.1f}s")


def test_09_large_graph_end_to_end(capsys):
    """Big exactly-r-out graphs: k=2 must never fall short, k=4 is logged."""
    shortfalls_k2 = 0
    for seed in range(50):
        g = random_exactly_r_out(2000, 36, seed=seed)
        out = solve(g, SolveConfig(k=2, seed=seed))
        if out.achieved < 2 or not verify_packing(g, out.packing, out.achieved):
            shortfalls_k2 += 1
    shortfalls_k4 = 0
    for seed in range(20):
        g = random_exactly_r_out(4000, 72, seed=seed + 1000)
        out = solve(g, SolveConfig(k=4, seed=seed))
        if not verify_packing(g, out.packing, out.achieved):
            shortfalls_k4 += 1000  # invalid packing is a hard failure
        elif out.achieved < 4:
            shortfalls_k4 += 1
    ok = shortfalls_k2 == 0 and shortfalls_k4 < 1000
    report(capsys, 9, "large-graph solves (k=2 strict, k=4 logged)", ok,
           f"k2-shortfalls={shortfalls_k2}, k4-shortfalls={shortfalls_k4}")


def test_10_cli_determinism(capsys, monkeypatch):
    """Repeated CLI invocations are byte-identical."""
    import io

    from cyclepack.cli import main

    invocations = [
        (["gen", "--kind", "random", "--n", "30", "--r", "3", "--seed", "4"],
         ""),
        (["gen", "--kind", "complete", "--n", "6"], ""),
        (["oracle"], "4 8\n0 1\n1 0\n1 2\n2 1\n2 3\n3 2\n3 0\n0 3\n"),
        (["bounds", "--check", "critical", "--k", "3"], ""),
        (["bounds", "--check", "recursion"], ""),
    ]
    # a solve pipeline on a generated graph
    monkeypatch.setattr("sys.stdin", io.StringIO(""))
    main(["gen", "--kind", "random", "--n", "50", "--r", "4", "--seed", "2"])
    graph = capsys.readouterr().out
    invocations.append((["solve", "--k", "2", "--seed", "2"], graph))

    diffs = 0
    for argv, stdin in invocations:
        outs = []
        for _ in range(2):
            monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
            main(argv)
            outs.append(capsys.readouterr().out)
        if outs[0] != outs[1]:
            diffs += 1
    report(capsys, 10, "byte-identical CLI output across repeat runs",
           diffs == 0, f"differing-invocations={diffs}")
