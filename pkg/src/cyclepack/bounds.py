"""Numeric evaluation of the inequalities behind the packing guarantees.

Everything is double precision with log-space transforms where direct
evaluation would under- or overflow.  Each check returns a BoundReport
whose `holds` field is the verdict of the stated comparison.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Dict, List, Optional


@dataclass
class BoundReport:
    name: str
    inputs: Dict[str, float]
    lhs: float
    rhs: float
    holds: bool
    notes: str = ""

    def to_dict(self):
        return {
            "name": self.name,
            "inputs": self.inputs,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "holds": self.holds,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _l_of(k: int, t: int) -> int:
    return -((k + 1) // -t)  # ceil((k+1)/t)


def _kahan_sum(terms) -> float:
    total = 0.0
    comp = 0.0
    for x in terms:
        y = x - comp
        s = total + y
        comp = (s - total) - y
        total = s
    return total


def _log_binom(r: int, i: int) -> float:
    return math.lgamma(r + 1) - math.lgamma(i + 1) - math.lgamma(r - i + 1)


def binomial_tail_below(r: int, p: float, c: int) -> float:
    """P(Bin(r, p) <= c), summed in log space with compensation."""
    if c < 0:
        return 0.0
    if p == 0.0:
        return 1.0
    if p == 1.0:
        return 1.0 if c >= r else 0.0
    lp, lq = math.log(p), math.log1p(-p)
    terms = (math.exp(_log_binom(r, i) + i * lp + (r - i) * lq)
             for i in range(0, min(c, r) + 1))
    return min(1.0, _kahan_sum(terms))


def prop3_lhs(k: int, r: int, t: int) -> float:
    """Union-bound value for the random l-coloring of a dense witness graph.

    Computes k(r^2-r+1) * P(Bin(r, 1/l) <= 2t-2) + l(1-1/l)^(r+1) with
    l = ceil((k+1)/t).  When the bound is below 1 a coloring exists whose
    color classes are all nonempty and (2t-1)-out.
    """
    if k < 1 or r < 1 or t < 1:
        raise ValueError("k, r, t must be positive")
    l = _l_of(k, t)
    if l == 1:
        # single color: every child matches, so the tail is 0 unless the
        # whole out-neighborhood is smaller than 2t-1; the B term vanishes.
        tail = 1.0 if r < 2 * t - 1 else 0.0
        return k * (r * r - r + 1) * tail
    tail = binomial_tail_below(r, 1.0 / l, 2 * t - 2)
    b_term = l * math.exp((r + 1) * math.log1p(-1.0 / l))
    return k * (r * r - r + 1) * tail + b_term


def prop3_check(k: int, r: int, t: int) -> BoundReport:
    lhs = prop3_lhs(k, r, t)
    return BoundReport(
        name="coloring-union-bound",
        inputs={"k": k, "r": r, "t": t, "l": _l_of(k, t)},
        lhs=lhs,
        rhs=1.0,
        holds=lhs >= 1.0,
        notes="holds means the union bound does not rule out a critical graph",
    )


def prop4_check(k: int, r: int) -> BoundReport:
    """Approximate necessary condition e^((r-4)/l) <= r^6/(8l^3) + 3r^5/l^2.

    Uses l = ceil((k+1)/3); the derivation divides by l-1, so l >= 2 is
    required (k >= 3).  Comparison done in log space.
    """
    if k < 1 or r < 2:
        raise ValueError("need k >= 1 and r >= 2")
    l = _l_of(k, 3)
    if l < 2:
        raise ValueError("l = 1 unsupported: the derivation needs l >= 2")
    log_lhs = (r - 4) / l
    log_rhs = _logaddexp(6 * math.log(r) - math.log(8) - 3 * math.log(l),
                         math.log(3) + 5 * math.log(r) - 2 * math.log(l))
    return BoundReport(
        name="critical-necessary-condition",
        inputs={"k": k, "r": r, "l": l},
        lhs=log_lhs,
        rhs=log_rhs,
        holds=log_lhs <= log_rhs,
        notes="log-space; holds=false rules out a critical digraph at (k, r)",
    )


def _logaddexp(a: float, b: float) -> float:
    if a < b:
        a, b = b, a
    return a + math.log1p(math.exp(b - a))


def threshold_x(l_max: float) -> float:
    """Least x >= 4 with e^x / (x^6/8 + 3x^5) > l_max^3 * e^(4/l_max).

    The left side is increasing for x >= 4 and the right side is the
    largest value of l^3 e^(4/l) over 2 <= l <= l_max, so any x at or
    above the threshold rules out the corresponding critical graphs.
    Bisection to 1e-9.
    """
    if l_max < 2:
        raise ValueError("l_max must be at least 2")
    target = 3 * math.log(l_max) + 4.0 / l_max

    def phi(x):
        return x - _logaddexp(6 * math.log(x) - math.log(8),
                              math.log(3) + 5 * math.log(x))

    lo, hi = 4.0, 8.0
    while phi(hi) <= target:
        hi *= 2
    while hi - lo > 1e-9:
        mid = 0.5 * (lo + hi)
        if phi(mid) > target:
            hi = mid
        else:
            lo = mid
    return hi


def small_case_bounds(k_max: int = 2 ** 13 - 1) -> List[BoundReport]:
    """Integer replay of the small-k degree bounds.

    For every k < 2^13: 45*ceil((k+1)/3) <= 15(k+1)+30.  For k <= 3 the
    exact value 2k-1 is compared to 12k, and for 4 <= k <= 10 the chain
    24*ceil(k/3) <= 8k+16 <= 12k is replayed.
    """
    reports = []
    for k in range(1, k_max + 1):
        l = _l_of(k, 3)
        lhs = 45 * l
        rhs = 15 * (k + 1) + 30
        reports.append(BoundReport(
            name="degree-bound-15k+30",
            inputs={"k": k, "l": l},
            lhs=float(lhs), rhs=float(rhs), holds=lhs <= rhs,
            notes="integer arithmetic",
        ))
    for k in range(1, 11):
        if k <= 3:
            lhs, mid, rhs = 2 * k - 1, 2 * k - 1, 12 * k
            note = "exact small value 2k-1"
        else:
            lhs, mid, rhs = 24 * -(k // -3), 8 * k + 16, 12 * k
            note = "chain 24*ceil(k/3) <= 8k+16 <= 12k"
        reports.append(BoundReport(
            name="degree-bound-12k",
            inputs={"k": k},
            lhs=float(lhs), rhs=float(rhs),
            holds=lhs <= mid <= rhs,
            notes=note,
        ))
    return reports


def chernoff_split_check(r: int, n: int) -> BoundReport:
    """Evaluate 2*2^(-n) + (r^3/2) e^(-r^(1/3)) and compare with 1.

    Below 1, a random halving of an n-vertex exactly-r-out graph leaves
    both halves roughly (r/2 - r^(2/3)/sqrt(2))-out with positive
    probability.  The per-vertex tail bound e^(-r^(1/3)) is reported too.
    """
    if r < 1 or n < r + 1:
        raise ValueError("need r >= 1 and n >= r+1")
    tail = math.exp(3 * math.log(r) - math.log(2) - r ** (1.0 / 3.0))
    # 2^(-n) underflows to 0.0 for huge n, which is the correct limit
    value = 2.0 * math.exp(-n * math.log(2)) + tail
    return BoundReport(
        name="halving-split-failure-bound",
        inputs={"r": r, "n": n},
        lhs=value,
        rhs=1.0,
        holds=value < 1.0,
        notes=f"per-vertex tail e^(-r^(1/3)) = {math.exp(-r ** (1.0 / 3.0)):.6g}",
    )


def recursion_audit(h_values) -> List[BoundReport]:
    """Arithmetic facts behind the halving recursion, per h in [2^5, 2^20].

    (i) h^(2/3) - (h-1)^(2/3) < 1/3 for h >= 2^5;
    (ii) 15h+30 <= 18h - 45h^(2/3) for 2^12 <= h < 2^13;
    (iii) 18x - 45x^(2/3) increasing for x >= 5 and x - sqrt(2) x^(2/3)
    increasing for x >= 2^(3/2), by derivative sign along the range;
    (iv) 10 > sqrt(2) * 18^(2/3) and 2^(1/3) > 5/4.
    """
    reports = []
    for h in h_values:
        if not 2 ** 5 <= h <= 2 ** 20:
            raise ValueError(f"h={h} outside supported range [2^5, 2^20]")
        diff = h ** (2 / 3) - (h - 1) ** (2 / 3)
        reports.append(BoundReport(
            name="two-thirds-increment",
            inputs={"h": h}, lhs=diff, rhs=1 / 3, holds=diff < 1 / 3,
            notes="h^(2/3) - (h-1)^(2/3) < 1/3",
        ))
        if 2 ** 12 <= h < 2 ** 13:
            lhs = 15 * h + 30
            rhs = 18 * h - 45 * h ** (2 / 3)
            reports.append(BoundReport(
                name="linear-vs-corrected-linear",
                inputs={"h": h}, lhs=float(lhs), rhs=rhs, holds=lhs <= rhs,
                notes="15h+30 <= 18h-45h^(2/3)",
            ))
        # derivative sign checks sampled across [start, h]
        d1 = _min_on_samples(lambda x: 18 - 30 * x ** (-1 / 3), 5.0, float(h))
        reports.append(BoundReport(
            name="corrected-linear-increasing",
            inputs={"h": h}, lhs=d1, rhs=0.0, holds=d1 > 0.0,
            notes="d/dx (18x-45x^(2/3)) > 0 on [5, h]",
        ))
        d2 = _min_on_samples(
            lambda x: 1 - (2 * math.sqrt(2) / 3) * x ** (-1 / 3),
            2 ** 1.5, float(h))
        reports.append(BoundReport(
            name="shifted-identity-increasing",
            inputs={"h": h}, lhs=d2, rhs=0.0, holds=d2 > 0.0,
            notes="d/dx (x - sqrt(2) x^(2/3)) > 0 on [2^(3/2), h]",
        ))
    val = math.sqrt(2) * 18 ** (2 / 3)
    reports.append(BoundReport(
        name="closing-constant-10",
        inputs={}, lhs=val, rhs=10.0, holds=val < 10.0,
        notes="sqrt(2) * 18^(2/3) < 10",
    ))
    reports.append(BoundReport(
        name="closing-constant-cuberoot2",
        inputs={}, lhs=2 ** (1 / 3), rhs=1.25, holds=2 ** (1 / 3) > 1.25,
        notes="2^(1/3) > 5/4",
    ))
    return reports


def _min_on_samples(fn, lo: float, hi: float, samples: int = 64) -> float:
    if hi < lo:
        hi = lo
    xs = [lo + (hi - lo) * i / (samples - 1) for i in range(samples)]
    return min(fn(x) for x in xs)


def critical_vertex_bound(k: int, r: int) -> int:
    """Vertex-count cap k(r^2 - r + 1) for a graph with the critical properties."""
    if k < 1 or r < 1:
        raise ValueError("k and r must be positive")
    return k * (r * r - r + 1)


def critical_report(k: int, r: Optional[int] = None) -> BoundReport:
    """Compare the vertex cap at r (default 2k+1, the least possible) to 4k^3.

    The 4k^3 figure is a rounded claim; the report states the exact value
    and the per-k verdict without asserting either way.
    """
    if r is None:
        r = 2 * k + 1
    value = critical_vertex_bound(k, r)
    return BoundReport(
        name="critical-vertex-cap",
        inputs={"k": k, "r": r},
        lhs=float(value),
        rhs=float(4 * k ** 3),
        holds=value <= 4 * k ** 3,
        notes="exact cap k(r^2-r+1) vs the rounded 4k^3 figure",
    )
