"""Core digraph representation, generators, and edge-list serialization.

Vertices are dense 0-based integers.  Loops and bidirectional edges are
allowed, parallel edges are not.  Digraph values are immutable after
construction; every algorithm in this package builds new graphs instead
of mutating existing ones.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional


class ParseError(ValueError):
    """Malformed edge-list input; carries the offending 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class Digraph:
    """Simple directed graph on vertices ``0..n-1``.

    ``out_adj[v]`` is the ordered tuple of distinct out-neighbors of ``v``;
    a self-entry encodes a loop.  The in-adjacency is a lazily built cache
    that is always exactly the transpose of the out-adjacency.
    """

    __slots__ = ("n", "out_adj", "_out_sets", "_in_adj")

    def __init__(self, n: int, out_adj: Iterable[Iterable[int]]):
        adj = tuple(tuple(row) for row in out_adj)
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        if len(adj) != n:
            raise ValueError(f"expected {n} adjacency rows, got {len(adj)}")
        for v, row in enumerate(adj):
            if len(set(row)) != len(row):
                raise ValueError(f"parallel edges at vertex {v}")
            for u in row:
                if not 0 <= u < n:
                    raise ValueError(f"out-neighbor {u} of {v} out of range")
        self.n = n
        self.out_adj = adj
        self._out_sets = None
        self._in_adj = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple]) -> "Digraph":
        adj = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range")
            adj[u].append(v)
        return cls(n, adj)

    # -- basic accessors ---------------------------------------------------

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range for n={self.n}")

    @property
    def out_sets(self):
        if self._out_sets is None:
            self._out_sets = tuple(frozenset(row) for row in self.out_adj)
        return self._out_sets

    @property
    def in_adj(self):
        if self._in_adj is None:
            rows = [[] for _ in range(self.n)]
            for u, row in enumerate(self.out_adj):
                for v in row:
                    rows[v].append(u)
            self._in_adj = tuple(tuple(r) for r in rows)
        return self._in_adj

    def out_neighbors(self, v: int) -> tuple:
        self._check_vertex(v)
        return self.out_adj[v]

    def in_neighbors(self, v: int) -> tuple:
        self._check_vertex(v)
        return self.in_adj[v]

    def out_degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self.out_adj[v])

    def in_degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self.in_adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return v in self.out_sets[u]

    def edges(self):
        """All edges in out-adjacency listing order."""
        for u, row in enumerate(self.out_adj):
            for v in row:
                yield (u, v)

    @property
    def num_edges(self) -> int:
        return sum(len(row) for row in self.out_adj)

    def min_out_degree(self) -> int:
        if self.n == 0:
            raise ValueError("empty graph has no minimum out-degree")
        return min(len(row) for row in self.out_adj)

    def loops(self):
        return [v for v in range(self.n) if v in self.out_sets[v]]

    def bidirectional_pairs(self):
        """All pairs (u, v), u < v, joined by edges in both directions."""
        pairs = []
        for u in range(self.n):
            for v in self.out_adj[u]:
                if u < v and u in self.out_sets[v]:
                    pairs.append((u, v))
        return pairs

    def __eq__(self, other):
        return (
            isinstance(other, Digraph)
            and self.n == other.n
            and tuple(map(frozenset, self.out_adj))
            == tuple(map(frozenset, other.out_adj))
        )

    def __hash__(self):
        return hash((self.n, tuple(map(frozenset, self.out_adj))))

    def __repr__(self):
        return f"Digraph(n={self.n}, m={self.num_edges})"


# -- degree predicates and reductions --------------------------------------


def out_degree(g: Digraph, v: int) -> int:
    return g.out_degree(v)


def in_degree(g: Digraph, v: int) -> int:
    return g.in_degree(v)


def is_k_out(g: Digraph, k: int) -> bool:
    """True iff g is nonempty and every out-degree is at least k.

    The empty graph is never k-out: vacuous success is treated as failure.
    """
    if g.n == 0:
        return False
    return all(len(row) >= k for row in g.out_adj)


def is_exactly_k_out(g: Digraph, k: int) -> bool:
    return g.n > 0 and all(len(row) == k for row in g.out_adj)


def reduce_to_exactly_k_out(g: Digraph, k: int) -> Digraph:
    """Drop edges until every out-degree equals k exactly.

    For each vertex the k out-neighbors with smallest identifiers are kept,
    which makes the reduction deterministic.  Fails if g is not k-out.
    """
    if not is_k_out(g, k):
        raise ValueError(f"graph is not {k}-out")
    return Digraph(g.n, [sorted(row)[:k] for row in g.out_adj])


def induced_subgraph(g: Digraph, vertices: Iterable[int]):
    """Subgraph induced on `vertices`, densely renumbered.

    Returns (subgraph, mapping) where mapping[new_id] = old_id.
    """
    keep = sorted(set(vertices))
    for v in keep:
        g._check_vertex(v)
    new_id = {old: i for i, old in enumerate(keep)}
    adj = [[new_id[u] for u in g.out_adj[old] if u in new_id] for old in keep]
    return Digraph(len(keep), adj), keep


# -- generators -------------------------------------------------------------


@dataclass(frozen=True)
class GenSpec:
    """Reproducible generator request.

    kind is "complete" or "random-exactly-r-out"; the same seed always
    produces an identical graph.
    """

    kind: str
    n: int
    r: Optional[int] = None
    allow_loops: bool = False
    seed: int = 0


def complete_digraph(n: int) -> Digraph:
    """Complete digraph: every ordered pair (u, v), u != v, and no loops."""
    return Digraph(n, [[u for u in range(n) if u != v] for v in range(n)])


def random_exactly_r_out(n: int, r: int, seed: int = 0,
                         allow_loops: bool = False) -> Digraph:
    """Every vertex samples r distinct out-neighbors uniformly.

    Self-choices are excluded unless allow_loops is set.
    """
    cap = n if allow_loops else n - 1
    if r < 0 or r > cap:
        raise ValueError(f"r={r} infeasible for n={n}, allow_loops={allow_loops}")
    rng = random.Random(seed)
    adj = []
    for v in range(n):
        pool = list(range(n)) if allow_loops else [u for u in range(n) if u != v]
        adj.append(sorted(rng.sample(pool, r)))
    return Digraph(n, adj)


def generate(spec: GenSpec) -> Digraph:
    if spec.n < 0:
        raise ValueError("n must be non-negative")
    if spec.kind == "complete":
        return complete_digraph(spec.n)
    if spec.kind == "random-exactly-r-out":
        if spec.r is None:
            raise ValueError("random generation requires r")
        return random_exactly_r_out(spec.n, spec.r, spec.seed, spec.allow_loops)
    raise ValueError(f"unknown generator kind: {spec.kind!r}")


# -- edge-list serialization -------------------------------------------------

# Format: header "n m", then m lines "u v" (0-based, "u u" is a loop).
# Canonical form sorts edges lexicographically; duplicates are a parse error.


def read_edge_list(text: str) -> Digraph:
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise ParseError(1, "missing header")
    header = lines[0].split()
    if len(header) != 2:
        raise ParseError(1, f"expected 'n m' header, got {lines[0]!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise ParseError(1, f"non-integer header fields in {lines[0]!r}") from None
    if n < 0 or m < 0:
        raise ParseError(1, "negative counts in header")
    body = [(i + 2, ln) for i, ln in enumerate(lines[1:]) if ln.strip()]
    if len(body) != m:
        raise ParseError(len(lines) + 1,
                         f"header promises {m} edges, found {len(body)}")
    seen = set()
    edges = []
    for line_no, ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(line_no, f"expected 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(line_no, f"non-integer endpoint in {ln!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(line_no, f"edge ({u},{v}) out of range for n={n}")
        if (u, v) in seen:
            raise ParseError(line_no, f"duplicate edge ({u},{v})")
        seen.add((u, v))
        edges.append((u, v))
    return Digraph.from_edges(n, edges)


def write_edge_list(g: Digraph) -> str:
    edges = sorted(g.edges())
    out = [f"{g.n} {len(edges)}"]
    out.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(out) + "\n"
