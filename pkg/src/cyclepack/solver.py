"""Constructive cycle-packing algorithms and the strategy-cascade driver.

The centerpiece is `two_disjoint_cycles`: an inductive algorithm that
always extracts two vertex-disjoint cycles from a 3-out digraph.  On top
of it sit a witness-graph/independent-set packer, randomized splitters
that cut a graph into several highly-out pieces, and `solve`, which
cascades through these strategies and never overclaims: the outcome
carries the verified number of cycles actually found.
"""

from __future__ import annotations

import json
import math
import random
from collections import deque
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from . import contraction as ctr
from .cycles import (Cycle, Packing, check_packing, find_any_cycle,
                     find_cycle_1out, max_packing_bruteforce)
from .digraph import (Digraph, induced_subgraph, is_k_out,
                      reduce_to_exactly_k_out)

STRATEGIES = ("auto", "three-out-pair", "witness-turan", "coloring",
              "halving", "oracle")


class ImpossibleCaseError(RuntimeError):
    """A case the correctness argument rules out was reached.

    Hitting this means the implementation (not the input) is wrong.
    """


@dataclass
class SolveConfig:
    k: int
    seed: int = 0
    max_color_retries: int = 1000
    oracle_threshold: int = 12
    strategy: str = "auto"
    t: int = 2

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.max_color_retries < 1 or self.oracle_threshold < 1:
            raise ValueError("caps must be positive")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.t < 2:
            raise ValueError("t must be at least 2")


@dataclass
class SolveOutcome:
    packing: Packing
    achieved: int
    guaranteed: bool
    trace: List[str] = field(default_factory=list)

    def to_json(self) -> str:
        payload = {
            "cycles": [list(c.vertices) for c in self.packing.cycles],
            "provenance": list(self.packing.provenance),
            "achieved": self.achieved,
            "guaranteed": self.guaranteed,
            "trace": list(self.trace),
        }
        return json.dumps(payload, sort_keys=True)


# -- two disjoint cycles in a 3-out digraph -----------------------------------


def _subset_walk(g: Digraph, excluded) -> Cycle:
    """1-out walk on g minus `excluded`, following smallest out-neighbors."""
    allowed = [v for v in range(g.n) if v not in excluded]
    if not allowed:
        raise ImpossibleCaseError("walk on empty vertex set")
    pos, walk = {}, []
    cur = allowed[0]
    while cur not in pos:
        nxt = min((x for x in g.out_adj[cur] if x not in excluded),
                  default=None)
        if nxt is None:
            raise ImpossibleCaseError(f"vertex {cur} lost all out-edges")
        pos[cur] = len(walk)
        walk.append(cur)
        cur = nxt
    return Cycle(tuple(walk[pos[cur]:]))


def _order_three(triple, out) -> Tuple[int, int, int]:
    a, b, c = triple
    if b in out[a] and c in out[b] and a in out[c]:
        return (a, b, c)
    if c in out[a] and b in out[c] and a in out[b]:
        return (a, c, b)
    raise ImpossibleCaseError(f"{triple} does not induce a 3-cycle")


def two_disjoint_cycles(g: Digraph) -> Packing:
    """Two vertex-disjoint cycles in any 3-out digraph with n >= 4.

    Induction on the vertex count after trimming to exactly 3-out:
    loops and bidirectional edges each pair with a cycle of the 1-out
    remainder; a witnessless edge is contracted and the cycles lifted
    back; once every edge is witnessed, a minimum in-degree vertex either
    leaves (in-degree 0) or forces in-degree 3 everywhere, in which case
    the parents and the children of any vertex form two disjoint
    3-cycles.  In-degrees 1 and 2 are impossible at that point; reaching
    them raises ImpossibleCaseError.
    """
    if not is_k_out(g, 3):
        raise ValueError("graph is not 3-out")
    if g.n < 4:
        raise ValueError("need at least 4 vertices")

    loops = g.loops()
    if loops:
        u = min(loops)
        rest = _subset_walk(g, {u})
        return Packing([Cycle((u,)), rest], ["loop", "one-out-walk"])

    base = reduce_to_exactly_k_out(g, 3)
    out = {v: set(base.out_adj[v]) for v in range(base.n)}
    inn = {v: set() for v in range(base.n)}
    for u, row in out.items():
        for v in row:
            inn[v].add(u)
    bidir = {(u, v) for u in out for v in out[u] if u < v and u in out[v]}
    queue = deque(sorted((u, v) for u in out for v in out[u]))
    ops = []
    fresh = base.n

    def engine_walk(excluded):
        allowed = sorted(set(out) - excluded)
        pos, walk = {}, []
        cur = allowed[0]
        while cur not in pos:
            pos[cur] = len(walk)
            walk.append(cur)
            cur = min(x for x in out[cur] if x not in excluded)
        return tuple(walk[pos[cur]:])

    cycles: List[tuple] = []
    tags: List[str] = []
    while True:
        if len(out) == 4:
            labels = sorted(out)
            if any(out[v] != set(labels) - {v} for v in labels):
                raise ImpossibleCaseError("4-vertex exactly-3-out not complete")
            cycles = [(labels[0], labels[1]), (labels[2], labels[3])]
            tags = ["base-complete", "base-complete"]
            break
        if bidir:
            a, b = min(bidir)
            cycles = [(a, b), engine_walk({a, b})]
            tags = ["bidirectional-pair", "one-out-walk"]
            break

        edge = None
        while queue:
            a, b = queue.popleft()
            if a in out and b in out.get(a, ()) and a != b \
                    and not (inn[a] & inn[b]):
                edge = (a, b)
                break
        if edge is None:
            # queue drained: rescan to guard the incremental bookkeeping
            for a in sorted(out):
                for b in sorted(out[a]):
                    if a != b and not (inn[a] & inn[b]):
                        edge = (a, b)
                        break
                if edge:
                    break

        if edge is not None:
            u, v = edge
            pu, pv = frozenset(inn[u]), frozenset(inn[v])
            w = fresh
            fresh += 1
            old_children_u = sorted(out[u])
            w_out = set(out[v]) - {u, v}
            w_in = (pu | pv) - {u, v}
            for p in pu:
                out[p].discard(u)
                out[p].add(w)
            for p in pv - {u}:
                out[p].discard(v)
                out[p].add(w)
            for c in out[u]:
                inn[c].discard(u)
            for c in out[v]:
                inn[c].discard(v)
            del out[u], out[v], inn[u], inn[v]
            out[w] = w_out
            inn[w] = set(w_in)
            for c in w_out:
                inn[c].add(w)
            for c in sorted(w_out & w_in):
                bidir.add((min(w, c), max(w, c)))
            for a in old_children_u:
                for b in old_children_u:
                    if a != b:
                        queue.append((a, b))
            for p in sorted(w_in):
                queue.append((p, w))
            for c in sorted(w_out):
                queue.append((w, c))
            ops.append(("contract", u, v, w, pu, pv))
            continue

        # every edge witnessed: branch on the minimum in-degree
        v = min(out, key=lambda x: (len(inn[x]), x))
        d = len(inn[v])
        if d == 0:
            children = sorted(out[v])
            for c in children:
                inn[c].discard(v)
            del out[v], inn[v]
            for a in children:
                for b in children:
                    if a != b:
                        queue.append((a, b))
            ops.append(("delete", v))
            continue
        if d in (1, 2):
            raise ImpossibleCaseError(
                f"witness-closed graph with minimum in-degree {d}")
        if any(len(inn[x]) != 3 for x in out):
            raise ImpossibleCaseError("minimum in-degree 3 but not uniform")
        x = min(out)
        parents, children = sorted(inn[x]), sorted(out[x])
        if set(parents) & set(children):
            raise ImpossibleCaseError("parents and children overlap")
        cycles = [_order_three(parents, out), _order_three(children, out)]
        tags = ["min-indegree-parents", "min-indegree-children"]
        break

    for op in reversed(ops):
        if op[0] != "contract":
            continue
        _, u, v, w, pu, _pv = op
        lifted = []
        for cy in cycles:
            if w not in cy:
                lifted.append(cy)
                continue
            i = cy.index(w)
            pred = cy[i - 1]
            repl = (u, v) if pred in pu else (v,)
            lifted.append(cy[:i] + repl + cy[i + 1:])
        cycles = lifted

    packing = Packing([Cycle(c) for c in cycles], tags)
    ok, reason = check_packing(g, packing, 2)
    if not ok:
        raise ImpossibleCaseError(f"produced packing failed to verify: {reason}")
    return packing


# -- witness graph + greedy independent set packer ----------------------------


def _witness_graph(g: Digraph):
    """Undirected adjacency: u ~ v iff they share a parent in g."""
    adj = [set() for _ in range(g.n)]
    for p in range(g.n):
        ch = g.out_adj[p]
        for i in range(len(ch)):
            for j in range(i + 1, len(ch)):
                a, b = ch[i], ch[j]
                adj[a].add(b)
                adj[b].add(a)
    return adj


def greedy_independent_set(adj) -> List[int]:
    """Minimum-degree greedy; size is at least sum 1/(deg(v)+1)."""
    alive = set(range(len(adj)))
    deg = {v: len(adj[v] & alive) for v in alive}
    chosen = []
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        chosen.append(v)
        dead = (adj[v] & alive) | {v}
        alive -= dead
        for d in dead:
            for nb in adj[d]:
                if nb in alive:
                    deg[nb] -= 1
    return chosen


def caro_wei_bound(adj) -> float:
    return sum(1.0 / (len(row) + 1) for row in adj)


def _in_neighborhood_cycle(g: Digraph, v: int) -> Optional[Cycle]:
    """A cycle inside N^-(v): walk parents backwards until one repeats.

    Works whenever the induced subgraph is 1-in, which holds for every
    vertex of a witness-closed graph; falls back to a DFS search.
    """
    scope = set(g.in_neighbors(v)) - {v}
    if not scope:
        return None
    pos, seq = {}, []
    cur = min(scope)
    while cur not in pos:
        par = min((p for p in g.in_neighbors(cur) if p in scope),
                  default=None)
        if par is None:
            return find_any_cycle(g, scope)
        pos[cur] = len(seq)
        seq.append(cur)
        cur = par
    return Cycle(tuple(reversed(seq[pos[cur]:])))


def witness_turan_pack(g: Digraph, k: int) -> Packing:
    """Disjoint cycles from disjoint in-neighborhoods.

    Contract until every edge has a witness, build the shared-parent
    graph H on the result, take a greedy independent set (size at least
    sum 1/(d_H+1)), pull one cycle out of each chosen vertex's
    in-neighborhood, and lift everything back.  Returns at most k cycles.
    """
    if g.n == 0:
        raise ValueError("empty graph")
    r = len(g.out_adj[0])
    if r < 1 or any(len(row) != r for row in g.out_adj):
        raise ValueError("graph is not exactly-r-out for any r >= 1")
    closed, records = ctr.witness_closure(g, r)
    adj = _witness_graph(closed)
    packing = Packing()
    for v in greedy_independent_set(adj):
        cyc = _in_neighborhood_cycle(closed, v)
        if cyc is None:
            continue
        lifted = ctr.lift_cycle_through(records, cyc)
        packing.add(lifted, "witness-turan")
        if len(packing) >= k:
            break
    ok, reason = check_packing(g, packing, 0)
    if not ok:
        raise ImpossibleCaseError(f"witness-turan packing invalid: {reason}")
    return packing


# -- randomized splitters ------------------------------------------------------


def _sample_classes(g: Digraph, l: int, need: int, rng: random.Random,
                    retries: int) -> Optional[List[List[int]]]:
    """Rejection-sample an l-coloring whose classes are nonempty and need-out.

    Every accepted coloring is re-verified directly, never trusted.
    """
    if l == 1:
        return [list(range(g.n))] if is_k_out(g, need) else None
    for _ in range(retries):
        classes = [[] for _ in range(l)]
        for v in range(g.n):
            classes[rng.randrange(l)].append(v)
        if all(cls and _class_is_k_out(g, cls, need) for cls in classes):
            return classes
    return None


def _class_is_k_out(g: Digraph, cls, k: int) -> bool:
    s = set(cls)
    return all(sum(1 for x in g.out_adj[v] if x in s) >= k for v in cls)


def coloring_split(g: Digraph, l: int, t: int, seed: int = 0,
                   retries: int = 1000) -> Optional[List[Digraph]]:
    """Split g into l induced subgraphs, each nonempty and (2t-1)-out.

    Rejection sampling over uniform colorings; None once retries run out
    (absence is a normal outcome, not an error).
    """
    if l < 1 or t < 1:
        raise ValueError("l and t must be positive")
    classes = _sample_classes(g, l, 2 * t - 1, random.Random(seed), retries)
    if classes is None:
        return None
    return [induced_subgraph(g, cls)[0] for cls in classes]


def halving_threshold(r: int) -> int:
    return math.ceil(r / 2 - r ** (2 / 3) / math.sqrt(2))


def halving_split(g: Digraph, seed: int = 0,
                  retries: int = 1000) -> Optional[Tuple[Digraph, Digraph]]:
    """Split an r-out graph into two ceil(r/2 - r^(2/3)/sqrt(2))-out halves.

    Random 2-coloring with rejection sampling; the threshold must come
    out positive or the request is rejected outright.
    """
    if g.n == 0:
        raise ValueError("empty graph")
    t = halving_threshold(g.min_out_degree())
    if t < 1:
        raise ValueError("minimum out-degree too small for a halving split")
    classes = _sample_classes(g, 2, t, random.Random(seed), retries)
    if classes is None:
        return None
    return (induced_subgraph(g, classes[0])[0],
            induced_subgraph(g, classes[1])[0])


# -- greedy peel fallback ------------------------------------------------------


def _trim_to_one_out(g: Digraph, vertices) -> set:
    """Largest subset of `vertices` whose induced subgraph is 1-out."""
    rem = set(vertices)
    while True:
        sinks = [v for v in rem
                 if not any(x in rem for x in g.out_adj[v])]
        if not sinks:
            return rem
        rem -= set(sinks)


def _peel_one_cycle(sub: Digraph) -> Tuple[Cycle, str]:
    """One short cycle of a 1-out graph: loop, then 2-cycle, then the
    in-neighborhood of a minimum in-degree vertex after witness closure,
    then a plain walk."""
    loops = sub.loops()
    if loops:
        return Cycle((min(loops),)), "peel-loop"
    pairs = sub.bidirectional_pairs()
    if pairs:
        return Cycle(min(pairs)), "peel-bidirectional"
    r = sub.min_out_degree()
    reduced = reduce_to_exactly_k_out(sub, r)
    closed, records = ctr.witness_closure(reduced, r)
    if ctr.is_witness_closed(closed):
        v = min(range(closed.n),
                key=lambda x: (closed.in_degree(x) or closed.n + 1, x))
        cyc = _in_neighborhood_cycle(closed, v)
        if cyc is not None:
            return ctr.lift_cycle_through(records, cyc), "peel-inneighborhood"
    return find_cycle_1out(reduced), "peel-walk"


def _greedy_peel(g: Digraph, packing: Packing, k: int, trace: List[str]):
    remaining = set(range(g.n)) - packing.vertices()
    while len(packing) < k:
        rem = _trim_to_one_out(g, remaining)
        if not rem:
            trace.append("peel: no cycles left")
            return
        sub, vmap = induced_subgraph(g, rem)
        cyc, tag = _peel_one_cycle(sub)
        mapped = Cycle(tuple(vmap[x] for x in cyc.vertices))
        packing.add(mapped, tag)
        trace.append(f"peel: {tag} length {len(cyc)}")
        remaining -= mapped.vertex_set()


# -- driver --------------------------------------------------------------------


def solve(g: Digraph, cfg: SolveConfig) -> SolveOutcome:
    """Strategy cascade; the result is always verified before returning.

    `guaranteed` is only ever set under the two proven-sufficient
    preconditions: k=1 on a 1-out graph, or k=2 on a 3-out graph with at
    least 4 vertices.  Shortfalls show up in `achieved`, never as
    fabricated cycles.
    """
    trace: List[str] = []
    rng = random.Random(cfg.seed)
    k = cfg.k
    packing = Packing()
    guaranteed = False

    if cfg.strategy == "oracle":
        packing = max_packing_bruteforce(g, limit=k)
        trace.append(f"oracle: found {len(packing)}")
    elif cfg.strategy == "three-out-pair":
        packing = two_disjoint_cycles(g)
        guaranteed = k <= 2
        trace.append("three-out-pair: 2 cycles")
    elif cfg.strategy == "witness-turan":
        r = g.min_out_degree() if g.n else 0
        if r < 1:
            raise ValueError("witness-turan needs a 1-out graph")
        packing = witness_turan_pack(reduce_to_exactly_k_out(g, r), k)
        trace.append(f"witness-turan: found {len(packing)}")
    elif cfg.strategy == "coloring":
        packing = _coloring_pack(g, cfg, rng, trace)
    elif cfg.strategy == "halving":
        packing = _halving_pack(g, cfg, rng, trace)
    else:  # auto
        if k == 1 and is_k_out(g, 1):
            packing = Packing([find_cycle_1out(g)], ["one-out-walk"])
            guaranteed = True
            trace.append("auto: 1-out walk")
        elif k == 2 and is_k_out(g, 3) and g.n >= 4:
            packing = two_disjoint_cycles(g)
            guaranteed = True
            trace.append("auto: three-out-pair")
        elif g.n <= cfg.oracle_threshold:
            packing = max_packing_bruteforce(g, limit=k)
            trace.append(f"auto: oracle on n={g.n}, found {len(packing)}")
        else:
            packing = _coloring_pack(g, cfg, rng, trace)
            if len(packing) == 0:
                r = g.min_out_degree()
                if r >= 1:
                    packing = witness_turan_pack(
                        reduce_to_exactly_k_out(g, r), k)
                    trace.append(f"auto: witness-turan found {len(packing)}")
            if len(packing) < k:
                _greedy_peel(g, packing, k, trace)

    ok, reason = check_packing(g, packing, 0)
    if not ok:
        raise ImpossibleCaseError(f"solver produced invalid packing: {reason}")
    return SolveOutcome(packing, len(packing), guaranteed, trace)


def _coloring_pack(g: Digraph, cfg: SolveConfig, rng: random.Random,
                   trace: List[str]) -> Packing:
    """Color-split into ceil(k/2) 3-out classes and take 2 cycles per class."""
    l = max(1, -(cfg.k // -2))
    need = 2 * cfg.t - 1
    classes = _sample_classes(g, l, need, rng, cfg.max_color_retries)
    packing = Packing()
    if classes is None:
        trace.append(f"coloring: no valid {l}-coloring within "
                     f"{cfg.max_color_retries} retries")
        return packing
    trace.append(f"coloring: split into {l} classes")
    for idx, cls in enumerate(classes):
        sub, vmap = induced_subgraph(g, cls)
        if cfg.t == 2 and sub.n >= 4:
            subpack = two_disjoint_cycles(sub)
        elif sub.n <= cfg.oracle_threshold:
            subpack = max_packing_bruteforce(sub, limit=2)
        else:
            r = sub.min_out_degree()
            subpack = witness_turan_pack(reduce_to_exactly_k_out(sub, r), 2)
        for cyc, tag in zip(subpack.cycles, subpack.provenance):
            packing.add(Cycle(tuple(vmap[x] for x in cyc.vertices)),
                        f"coloring-class-{idx}:{tag}")
        if len(packing) >= cfg.k:
            break
    return packing


def _halving_pack(g: Digraph, cfg: SolveConfig, rng: random.Random,
                  trace: List[str]) -> Packing:
    """Halve the graph and run the automatic cascade on each half."""
    packing = Packing()
    t = halving_threshold(g.min_out_degree())
    if t < 1:
        raise ValueError("minimum out-degree too small for a halving split")
    classes = _sample_classes(g, 2, t, rng, cfg.max_color_retries)
    if classes is None:
        trace.append("halving: no valid split")
        return packing
    trace.append(f"halving: split accepted, halves must be {t}-out")
    sub_k = -(cfg.k // -2)
    for idx, cls in enumerate(classes):
        sub, vmap = induced_subgraph(g, cls)
        sub_cfg = SolveConfig(k=sub_k, seed=rng.randrange(2 ** 62),
                              max_color_retries=cfg.max_color_retries,
                              oracle_threshold=cfg.oracle_threshold,
                              strategy="auto", t=cfg.t)
        outcome = solve(sub, sub_cfg)
        for cyc, tag in zip(outcome.packing.cycles,
                            outcome.packing.provenance):
            packing.add(Cycle(tuple(vmap[x] for x in cyc.vertices)),
                        f"half-{idx}:{tag}")
    return packing
