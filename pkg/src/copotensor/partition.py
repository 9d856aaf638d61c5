"""Simplicial partitions of the standard simplex and the branch-and-bound
copositivity certifier.

All geometry is exact rational: vertices are Fraction points, longest-edge
selection compares squared edge lengths exactly, and every verdict-bearing
inequality is evaluated in rationals.  Floating point appears only in the
reported diameter.
"""

from __future__ import annotations

import enum
import itertools
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .tensor import (Scalar, SymTensor, canonical_tuples, eval_form,
                     multi_product, necessary_screen)

Point = tuple[Fraction, ...]


def _as_point(coords: Sequence[Scalar]) -> Point:
    return tuple(Fraction(c) for c in coords)


@dataclass(frozen=True)
class Simplex:
    vertices: tuple[Point, ...]
    depth: int = 0

    def __post_init__(self):
        for v in self.vertices:
            if any(c < 0 for c in v) or sum(v) != 1:
                raise ValueError(f"vertex {v} is not in the standard simplex")

    @property
    def n(self) -> int:
        return len(self.vertices[0])


def standard_simplex(n: int) -> Simplex:
    if n < 1:
        raise ValueError("n must be >= 1")
    verts = tuple(tuple(Fraction(1 if j == i else 0) for j in range(n))
                  for i in range(n))
    return Simplex(verts)


def _sq_dist(u: Point, v: Point) -> Fraction:
    return sum((a - b) ** 2 for a, b in zip(u, v))


def bisect_longest_edge(s: Simplex) -> tuple[Simplex, Simplex]:
    """Split at the midpoint of a longest edge; ties broken by the
    lexicographically smallest (sorted) vertex pair, for determinism.
    """
    if len(s.vertices) < 2:
        raise ValueError("cannot bisect a point")
    best = None
    best_len = Fraction(-1)
    for i, j in itertools.combinations(range(len(s.vertices)), 2):
        u, v = s.vertices[i], s.vertices[j]
        d2 = _sq_dist(u, v)
        key = (min(u, v), max(u, v))
        if d2 > best_len or (d2 == best_len and key < best[2]):
            best = (i, j, key)
            best_len = d2
    if best_len == 0:
        raise ValueError("degenerate simplex: longest edge has length 0")
    i, j, _ = best
    u, v = s.vertices[i], s.vertices[j]
    mid = tuple((a + b) / 2 for a, b in zip(u, v))
    child_i = tuple(mid if k == i else w for k, w in enumerate(s.vertices))
    child_j = tuple(mid if k == j else w for k, w in enumerate(s.vertices))
    return (Simplex(child_i, s.depth + 1), Simplex(child_j, s.depth + 1))


@dataclass
class Partition:
    simplices: list[Simplex]

    @property
    def vertex_set(self) -> list[Point]:
        seen: dict[Point, None] = {}
        for s in self.simplices:
            for v in s.vertices:
                seen.setdefault(v, None)
        return list(seen)

    @property
    def edge_set(self) -> list[tuple[Point, Point]]:
        seen: dict[tuple[Point, Point], None] = {}
        for s in self.simplices:
            for u, v in itertools.combinations(s.vertices, 2):
                seen.setdefault((min(u, v), max(u, v)), None)
        return list(seen)


def trivial_partition(n: int) -> Partition:
    return Partition([standard_simplex(n)])


def grid_partition(n: int, m: int) -> Partition:
    """Uniform triangulation of the standard simplex with every vertex on the
    denominator-m grid: segments for n = 2, the up/down triangle subdivision
    for n = 3.  This is the partition family whose vertex set matches the
    level-(m-d) rational grid, which the level-r coefficient cone embeds into.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if n == 1:
        return trivial_partition(1)
    if n == 2:
        pts = [(Fraction(k, m), Fraction(m - k, m)) for k in range(m + 1)]
        return Partition([Simplex((pts[k], pts[k + 1])) for k in range(m)])
    if n == 3:
        def pt(a: int, b: int, c: int) -> Point:
            return (Fraction(a, m), Fraction(b, m), Fraction(c, m))
        simplices = []
        for a in range(m):
            for b in range(m - a):
                c = m - 1 - a - b
                simplices.append(Simplex((pt(a + 1, b, c), pt(a, b + 1, c),
                                          pt(a, b, c + 1))))
                if a + b + c >= 1 and c >= 1:
                    simplices.append(Simplex((pt(a + 1, b + 1, c - 1),
                                              pt(a + 1, b, c), pt(a, b + 1, c))))
        return Partition(simplices)
    raise ValueError("grid_partition supports n <= 3")


def refine_once(P: Partition) -> Partition:
    """Bisect every simplex; the result is a refinement of P."""
    out: list[Simplex] = []
    for s in P.simplices:
        out.extend(bisect_longest_edge(s))
    return Partition(out)


def refine(P: Partition, rounds: int) -> Partition:
    for _ in range(rounds):
        P = refine_once(P)
    return P


def diameter_sq(P: Partition) -> Fraction:
    return max(_sq_dist(u, v) for u, v in P.edge_set)


def diameter(P: Partition) -> float:
    """max edge length; float is for reporting only, never for branching."""
    return math.sqrt(float(diameter_sq(P)))


def inner_test_full(A: SymTensor, s: Simplex) -> bool:
    """Full vertex-tuple condition: <A, v_{i1} (x) ... (x) v_{id}> >= 0 for
    every multiset of vertex indices.  Sufficient for non-negativity of the
    form on the simplex; exact rational arithmetic.
    """
    verts = s.vertices
    for key in canonical_tuples(len(verts), A.d):
        if multi_product(A, [verts[i - 1] for i in key]) < 0:
            return False
    return True


def _edge_products_nonneg(A: SymTensor, u: Point, v: Point) -> bool:
    # all splits a in 1..d-1 of <A, u^(x a) (x) v^(x (d-a))>
    for a in range(1, A.d):
        factors = [u] * a + [v] * (A.d - a)
        if multi_product(A, factors) < 0:
            return False
    return True


def member_I_P(A: SymTensor, P: Partition) -> bool:
    """Pairwise inner cone: vertex powers and all two-vertex splits along the
    partition's edges must pair non-negatively with A.  This reproduces the
    edge-based definition; for d > 2 it is weaker than
    :func:`inner_test_full`, which is what the certifier prunes with.
    """
    for v in P.vertex_set:
        if eval_form(A, v) < 0:
            return False
    for u, v in P.edge_set:
        if not _edge_products_nonneg(A, u, v):
            return False
    return True


def member_O_P(A: SymTensor, P: Partition) -> bool:
    """Outer cone: the form is non-negative at every partition vertex."""
    return all(eval_form(A, v) >= 0 for v in P.vertex_set)


class Verdict(enum.Enum):
    COPOSITIVE = "Copositive"
    NOT_COPOSITIVE = "NotCopositive"
    INDETERMINATE = "StrictlyIndeterminate"


@dataclass(frozen=True)
class PartitionStats:
    max_depth_reached: int
    simplices_processed: int
    unresolved: int
    diameter_unresolved: float | None = None


@dataclass(frozen=True)
class Certificate:
    verdict: Verdict
    witness: Point | None = None
    witness_value: Scalar | None = None
    stats: PartitionStats | None = None
    method: str = "partition"

    def recheck(self, A: SymTensor) -> bool:
        """NotCopositive witnesses must re-verify exactly."""
        if self.verdict is not Verdict.NOT_COPOSITIVE:
            return True
        if self.witness is None or any(c < 0 for c in self.witness):
            return False
        return eval_form(A, self.witness) < 0


def certify_copositivity(A: SymTensor, max_depth: int = 32,
                         simplex_budget: int = 100_000,
                         order: str = "fifo") -> Certificate:
    """Branch-and-bound over longest-edge bisections of the standard simplex.

    A negative form value at any encountered vertex refutes copositivity with
    that vertex as witness; a simplex passing the full vertex-tuple test is
    pruned; everything else is bisected.  An empty work list certifies
    copositivity, and running out of depth or simplex budget yields
    StrictlyIndeterminate (boundary tensors may never terminate otherwise).
    """
    if max_depth < 0 or simplex_budget < 1:
        raise ValueError("budgets must be positive")
    if order not in ("fifo", "lifo"):
        raise ValueError("order must be 'fifo' or 'lifo'")
    if A.d == 1:
        screen = necessary_screen(A)
        if screen.passed:
            return Certificate(Verdict.COPOSITIVE,
                               stats=PartitionStats(0, 0, 0), method="screen")
        i = screen.witness_index[0]
        witness = tuple(Fraction(1 if j == i - 1 else 0) for j in range(A.n))
        return Certificate(Verdict.NOT_COPOSITIVE, witness,
                           eval_form(A, witness),
                           PartitionStats(0, 0, 0), method="screen")

    work: deque[Simplex] = deque([standard_simplex(A.n)])
    pop = work.popleft if order == "fifo" else work.pop
    processed = 0
    max_depth_seen = 0
    unresolved: list[Simplex] = []
    evaluated: dict[Point, Scalar] = {}
    while work:
        if processed >= simplex_budget:
            unresolved.extend(work)
            break
        s = pop()
        processed += 1
        max_depth_seen = max(max_depth_seen, s.depth)
        for v in s.vertices:
            if v not in evaluated:
                evaluated[v] = eval_form(A, v)
            if evaluated[v] < 0:
                return Certificate(
                    Verdict.NOT_COPOSITIVE, v, evaluated[v],
                    PartitionStats(max_depth_seen, processed, len(work)))
        if inner_test_full(A, s):
            continue
        if s.depth >= max_depth:
            unresolved.append(s)
            continue
        work.extend(bisect_longest_edge(s))
    if unresolved:
        dia = max(math.sqrt(float(_sq_dist(u, v)))
                  for s in unresolved
                  for u, v in itertools.combinations(s.vertices, 2))
        return Certificate(
            Verdict.INDETERMINATE,
            stats=PartitionStats(max_depth_seen, processed, len(unresolved), dia))
    return Certificate(Verdict.COPOSITIVE,
                       stats=PartitionStats(max_depth_seen, processed, 0))
