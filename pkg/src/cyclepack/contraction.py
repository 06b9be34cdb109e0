"""Edge witnesses, contraction, and cycle lifting.

An edge u->v is *witnessed* when u and v have a common parent.  A
witnessless edge can be contracted: u and v are replaced by a merged
vertex w whose out-neighbors are v's and whose in-neighbors are the
union of u's and v's.  Because u and v share no parent, no vertex loses
out-degree, so a k-out graph stays k-out.  Cycles found after a
contraction lift back through a ContractionRecord.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .cycles import Cycle
from .digraph import Digraph


@dataclass(frozen=True)
class ContractionRecord:
    """Everything needed to lift a post-contraction cycle.

    u, v, w and the parent sets use pre-contraction identifiers except w,
    which is a post-contraction identifier.  renumbering[post_id] is the
    pre-contraction identifier, with None at position w (w is new).
    """

    u: int
    v: int
    w: int
    parents_of_u: frozenset
    parents_of_v: frozenset
    renumbering: Tuple[Optional[int], ...]


def witness(g: Digraph, u: int, v: int) -> Optional[int]:
    """Smallest common parent of u and v, or None.  Edge u->v must exist."""
    if not g.has_edge(u, v):
        raise ValueError(f"edge ({u},{v}) not present")
    common = set(g.in_neighbors(u)) & set(g.in_neighbors(v))
    return min(common) if common else None


def find_witnessless_edge(g: Digraph) -> Optional[Tuple[int, int]]:
    """Lexicographically least edge whose endpoints share no parent.

    Loops are never returned: a looped vertex is its own parent.
    """
    in_sets = [frozenset(row) for row in g.in_adj]
    for u, v in sorted(g.edges()):
        if not in_sets[u] & in_sets[v]:
            return (u, v)
    return None


def contract(g: Digraph, u: int, v: int) -> Tuple[Digraph, ContractionRecord]:
    """Contract edge u->v into a merged vertex w.

    Requires the edge to exist, to not be bidirectional, and u, v to have
    no common parent.  w takes the smallest freed identifier slot and the
    result is densely renumbered.
    """
    if u == v:
        raise ValueError("cannot contract a loop")
    if not g.has_edge(u, v):
        raise ValueError(f"edge ({u},{v}) not present")
    if g.has_edge(v, u):
        raise ValueError(f"edge ({u},{v}) is bidirectional")
    parents_u = frozenset(g.in_neighbors(u))
    parents_v = frozenset(g.in_neighbors(v))
    if parents_u & parents_v:
        raise ValueError(
            f"{u} and {v} have common parent {min(parents_u & parents_v)}")

    # Pre-graph slots in increasing order; w occupies slot min(u, v).
    slots = sorted([x for x in range(g.n) if x not in (u, v)] + [min(u, v)])
    post_of_slot = {slot: i for i, slot in enumerate(slots)}
    w = post_of_slot[min(u, v)]
    renumbering = tuple(None if i == w else slots[i] for i in range(g.n - 1))

    def post_id(x):
        return w if x in (u, v) else post_of_slot[x]

    adj = [[] for _ in range(g.n - 1)]
    for p in range(g.n):
        if p in (u, v):
            continue
        adj[post_id(p)] = sorted({post_id(x) for x in g.out_adj[p]})
    # w inherits v's out-edges; any u/v self references drop out.
    adj[w] = sorted({post_id(x) for x in g.out_adj[v] if x not in (u, v)})
    return Digraph(g.n - 1, adj), ContractionRecord(
        u, v, w, parents_u, parents_v, renumbering)


def lift_cycle(rec: ContractionRecord, c: Cycle) -> Cycle:
    """Map a post-contraction cycle back to pre-contraction identifiers.

    If the cycle avoids w it is only renumbered.  Otherwise w expands to
    the path u, v when its cycle in-edge comes from a parent of u, and to
    v alone when it comes from a parent of v (the parent sets are disjoint
    by the contraction precondition).
    """
    vs = c.vertices
    if rec.w not in vs:
        return Cycle(tuple(rec.renumbering[x] for x in vs))
    if len(vs) == 1:
        raise ValueError("merged vertex cannot carry a loop")
    i = vs.index(rec.w)
    pred = rec.renumbering[vs[i - 1]]
    if pred is None:
        raise ValueError("cycle visits the merged vertex twice")
    expansion = (rec.u, rec.v) if pred in rec.parents_of_u else (rec.v,)
    lifted = []
    for j, x in enumerate(vs):
        if j == i:
            lifted.extend(expansion)
        else:
            lifted.append(rec.renumbering[x])
    return Cycle(tuple(lifted))


def lift_cycle_through(records: List[ContractionRecord], c: Cycle) -> Cycle:
    """Lift through a whole contraction stack, most recent record first."""
    for rec in reversed(records):
        c = lift_cycle(rec, c)
    return c


def witness_closure(g: Digraph, k: int) -> Tuple[Digraph, List[ContractionRecord]]:
    """Contract witnessless edges until every edge has a witness.

    Requires an exactly-k-out input.  Edges that cannot be contracted
    (bidirectional, or with a looped endpoint) are skipped; if only such
    witnessless edges remain the closure stops early.  Each step removes
    one vertex, so at most n-1 iterations run.
    """
    if g.n == 0 or any(len(row) != k for row in g.out_adj):
        raise ValueError(f"graph is not exactly {k}-out")
    records: List[ContractionRecord] = []
    while True:
        in_sets = [frozenset(row) for row in g.in_adj]
        out_sets = g.out_sets
        candidate = None
        for u, v in sorted(g.edges()):
            if in_sets[u] & in_sets[v]:
                continue
            if u == v or u in out_sets[v]:
                continue  # loop or bidirectional: not contractible
            if u in out_sets[u] or v in out_sets[v]:
                continue  # looped endpoint would lose the loop edge
            candidate = (u, v)
            break
        if candidate is None:
            return g, records
        g, rec = contract(g, *candidate)
        records.append(rec)


def is_witness_closed(g: Digraph) -> bool:
    return find_witnessless_edge(g) is None
