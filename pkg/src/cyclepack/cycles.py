"""Cycles, packings, and an exact branch-and-bound packing oracle.

A cycle of length 1 is a loop and a cycle of length 2 is a bidirectional
edge.  The oracle is exponential and meant for small graphs (n <= 14); it
validates everything else in the package.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .digraph import Digraph


class OracleBudgetExceeded(RuntimeError):
    """The branch-and-bound search exceeded its node budget."""


@dataclass(frozen=True)
class Cycle:
    """Vertex sequence v0, v1, ... with edge v_i -> v_{i+1 mod L}."""

    vertices: Tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) == 0:
            raise ValueError("a cycle has at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError(f"repeated vertex in cycle {self.vertices}")

    def __len__(self):
        return len(self.vertices)

    def vertex_set(self):
        return frozenset(self.vertices)


@dataclass
class Packing:
    """Pairwise vertex-disjoint cycles plus a per-cycle provenance tag."""

    cycles: List[Cycle] = field(default_factory=list)
    provenance: List[str] = field(default_factory=list)

    def __post_init__(self):
        if len(self.cycles) != len(self.provenance):
            raise ValueError("one provenance tag per cycle required")

    def __len__(self):
        return len(self.cycles)

    def add(self, cycle: Cycle, tag: str) -> None:
        self.cycles.append(cycle)
        self.provenance.append(tag)

    def vertices(self):
        used = set()
        for c in self.cycles:
            used |= c.vertex_set()
        return used

    def to_json(self) -> str:
        payload = {
            "cycles": [list(c.vertices) for c in self.cycles],
            "provenance": list(self.provenance),
        }
        return json.dumps(payload, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Packing":
        payload = json.loads(text)
        cycles = [Cycle(tuple(vs)) for vs in payload["cycles"]]
        prov = list(payload.get("provenance", ["unknown"] * len(cycles)))
        return cls(cycles, prov)


# -- validation ---------------------------------------------------------------


def check_cycle(g: Digraph, c: Cycle) -> Optional[str]:
    """None if c is a valid cycle of g, else a human-readable reason."""
    vs = c.vertices
    for v in vs:
        if not 0 <= v < g.n:
            return f"vertex {v} out of range"
    for i, u in enumerate(vs):
        v = vs[(i + 1) % len(vs)]
        if v not in g.out_sets[u]:
            return f"missing edge ({u},{v})"
    return None


def check_packing(g: Digraph, p: Packing, k: int):
    """(ok, reason): ok iff p has >= k cycles, all valid, pairwise disjoint."""
    if len(p.cycles) < k:
        return False, f"only {len(p.cycles)} cycles, need {k}"
    used = {}
    for idx, c in enumerate(p.cycles):
        reason = check_cycle(g, c)
        if reason is not None:
            return False, f"cycle {idx}: {reason}"
        for v in c.vertices:
            if v in used:
                return False, f"cycles {used[v]} and {idx} share vertex {v}"
            used[v] = idx
    return True, None


def verify_packing(g: Digraph, p: Packing, k: int) -> bool:
    ok, _ = check_packing(g, p, k)
    return ok


# -- cycle extraction ---------------------------------------------------------


def find_cycle_1out(g: Digraph) -> Cycle:
    """Walk first-listed out-edges from vertex 0 until a vertex repeats.

    Requires a nonempty 1-out graph; terminates within n steps.  On a
    violated precondition the error names a vertex of out-degree 0.
    """
    if g.n == 0:
        raise ValueError("empty graph contains no cycle")
    pos = {}
    walk = []
    cur = 0
    while cur not in pos:
        if g.out_degree(cur) == 0:
            raise ValueError(f"not 1-out: vertex {cur} has out-degree 0")
        pos[cur] = len(walk)
        walk.append(cur)
        cur = g.out_adj[cur][0]
    return Cycle(tuple(walk[pos[cur]:]))


def find_any_cycle(g: Digraph, allowed=None) -> Optional[Cycle]:
    """Some cycle within the allowed vertex set (default: all), or None.

    Iterative DFS with back-edge detection; loops and 2-cycles count.
    """
    if allowed is None:
        allowed = range(g.n)
    allowed = set(allowed)
    color = {v: 0 for v in allowed}  # 0 new, 1 on stack, 2 done
    parent = {}
    for start in sorted(allowed):
        if color[start] != 0:
            continue
        stack = [(start, iter(g.out_adj[start]))]
        color[start] = 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for u in it:
                if u not in allowed:
                    continue
                if u == v:
                    return Cycle((v,))
                if color[u] == 1:
                    # back edge v -> u closes a cycle along the DFS stack
                    path = [v]
                    while path[-1] != u:
                        path.append(parent[path[-1]])
                    return Cycle(tuple(reversed(path)))
                if color[u] == 0:
                    parent[u] = v
                    color[u] = 1
                    stack.append((u, iter(g.out_adj[u])))
                    advanced = True
                    break
            if not advanced:
                color[v] = 2
                stack.pop()
    return None


# -- exact maximum-packing oracle ---------------------------------------------


def _minimal_cycles_through(v, mask, out_mask, in_mask, loop_mask, n):
    """Chordless cycles through v inside mask, v the smallest member.

    A chord (including a loop on a cycle vertex) lets a cycle be replaced
    by a shorter one on a vertex subset, so chordless cycles suffice for
    maximum packing.  Yields cycles sorted by (length, vertex sequence).
    """
    found = []
    if (loop_mask >> v) & 1:
        return [(v,)]
    sub = mask & ~((1 << (v + 1)) - 1)  # candidates strictly above v

    def extend(path, path_bits, prefix_bits, last):
        cands = out_mask[last] & sub & ~path_bits & ~loop_mask
        while cands:
            low = cands & -cands
            x = low.bit_length() - 1
            cands ^= low
            # reject if any chord would exist: an in-edge from the path
            # prefix, or an out-edge back into the path (v excluded).
            if in_mask[x] & prefix_bits:
                continue
            if out_mask[x] & path_bits & ~(1 << v):
                continue
            if (out_mask[x] >> v) & 1:
                found.append(tuple(path) + (x,))
                continue  # extending past x would keep the chord x -> v
            extend(path + [x], path_bits | (1 << x), path_bits, x)

    extend([v], 1 << v, 0, v)
    found.sort(key=lambda c: (len(c), c))
    return found


def max_packing_bruteforce(g: Digraph, limit: Optional[int] = None,
                           node_budget: int = 5_000_000) -> Packing:
    """Exact maximum cycle packing by branch-and-bound on vertex inclusion.

    Exponential search, recommended for n <= 14.  If limit is given the
    search stops as soon as a packing of that size is found.  Deterministic:
    cycles are tried in increasing (length, lexicographic) order.
    """
    n = g.n
    out_mask = [0] * n
    in_mask = [0] * n
    loop_mask = 0
    for u, v in g.edges():
        out_mask[u] |= 1 << v
        in_mask[v] |= 1 << u
        if u == v:
            loop_mask |= 1 << u
    if loop_mask:
        min_len = 1
    elif g.bidirectional_pairs():
        min_len = 2
    else:
        min_len = 3

    best: List[tuple] = []
    nodes = 0
    done = False

    def rec(mask, acc):
        nonlocal best, nodes, done
        nodes += 1
        if nodes > node_budget:
            raise OracleBudgetExceeded(f"exceeded {node_budget} search nodes")
        if len(acc) > len(best):
            best = list(acc)
            if limit is not None and len(best) >= limit:
                done = True
        if done or mask == 0:
            return
        if len(acc) + bin(mask).count("1") // min_len <= len(best):
            return
        v = (mask & -mask).bit_length() - 1
        for cyc in _minimal_cycles_through(v, mask, out_mask, in_mask,
                                           loop_mask, n):
            used = 0
            for x in cyc:
                used |= 1 << x
            acc.append(cyc)
            rec(mask & ~used, acc)
            acc.pop()
            if done:
                return
        rec(mask & ~(1 << v), acc)

    rec((1 << n) - 1, [])
    cycles = [Cycle(c) for c in best]
    return Packing(cycles, ["oracle"] * len(cycles))
