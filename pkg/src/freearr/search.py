"""Inductive- and recursive-freeness searches over the free-move graph.

A move adds or deletes one line; a chain is a move sequence through free
arrangements only.  Inductive freeness (deletions only) is decided by a
memoized depth-first search; recursive freeness is probed by a bounded
best-first search over the move graph that prefers deletions and smaller
states, with a sound and complete negative certificate when the free
neighborhood of the input is empty.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Optional

from .freeness import FreenessResult, is_free
from .geometry import Arrangement, GeometryError, Line, Point, join
from .lattice import (
    LatticeData,
    compute_lattice,
    extend_lattice,
    restrict_lattice,
)

__all__ = [
    "SearchError",
    "SearchCache",
    "Move",
    "Chain",
    "RecursiveVerdict",
    "free_deletions",
    "free_additions",
    "is_inductively_free",
    "recursive_freeness_bounded",
    "verify_chain",
]


class SearchError(ValueError):
    """Invalid use of a search operation (e.g. non-free input)."""


@dataclass(frozen=True)
class Move:
    """One elementary step: add a line or delete the line at an index."""

    kind: str  # "add" | "delete"
    line: Line

    def __post_init__(self) -> None:
        if self.kind not in ("add", "delete"):
            raise SearchError(f"unknown move kind {self.kind!r}")


@dataclass(frozen=True)
class Chain:
    """A path of free arrangements from ``start`` by one-line moves.

    ``stages`` holds the exponent triple of the start arrangement followed by
    the exponents after each move.
    """

    start: Arrangement
    moves: tuple[Move, ...]
    stages: tuple[Optional[tuple[int, int, int]], ...]

    def __post_init__(self) -> None:
        if len(self.stages) != len(self.moves) + 1:
            raise SearchError("one exponent entry per stage is required")

    def end(self) -> Arrangement:
        A = self.start
        for mv in self.moves:
            if mv.kind == "add":
                A = A.add(mv.line)
            else:
                A = A.delete(A.lines.index(mv.line))
        return A


@dataclass(frozen=True)
class RecursiveVerdict:
    """Outcome of the bounded recursive-freeness search."""

    kind: str  # "yes" | "no" | "unknown"
    chain: Optional[Chain] = None
    certificate: dict = field(default_factory=dict)


class SearchCache:
    """Shared memo tables keyed by order-independent arrangement identity."""

    __slots__ = ("freeness", "inductive")

    def __init__(self) -> None:
        self.freeness: dict = {}
        self.inductive: dict = {}

    def is_free(self, A: Arrangement, lat: Optional[LatticeData] = None) -> FreenessResult:
        key = A.canonical_key()
        hit = self.freeness.get(key)
        if hit is None:
            hit = is_free(A, lat=lat)
            self.freeness[key] = hit
        return hit


def _require_free(A: Arrangement, cache: SearchCache, lat: Optional[LatticeData]) -> FreenessResult:
    r = cache.is_free(A, lat)
    if not r.is_free:
        raise SearchError("operation requires a free arrangement")
    return r


def free_deletions(
    A: Arrangement,
    lat: Optional[LatticeData] = None,
    cache: Optional[SearchCache] = None,
) -> list[tuple[int, tuple[int, int, int]]]:
    """Indices h with A minus line h free, with the deletion's exponents."""
    cache = cache or SearchCache()
    if lat is None:
        lat = compute_lattice(A)
    _require_free(A, cache, lat)
    out: list[tuple[int, tuple[int, int, int]]] = []
    for h in range(len(A)):
        sub = A.delete(h)
        r = cache.is_free(sub, restrict_lattice(lat, h))
        if r.is_free:
            out.append((h, r.exponents))
    return out


# ---------------------------------------------------------------------------
# Free additions via stratification


def _pencil_basis(P: Point) -> tuple[Line, Line]:
    """Two independent lines through the point (dual of a chart on a line)."""
    ctx = P.ctx
    c0, c1, c2 = P.coords
    if not c0.is_zero():
        return (
            Line(ctx, (-c1, c0, ctx.zero())),
            Line(ctx, (-c2, ctx.zero(), c0)),
        )
    if not c1.is_zero():
        return (
            Line(ctx, (ctx.one(), ctx.zero(), ctx.zero())),
            Line(ctx, (ctx.zero(), -c2, c1)),
        )
    return (
        Line(ctx, (ctx.one(), ctx.zero(), ctx.zero())),
        Line(ctx, (ctx.zero(), ctx.one(), ctx.zero())),
    )


def _pencil_representative(
    A: Arrangement, lat: LatticeData, P: Point
) -> Optional[Line]:
    """A line through P, through no other flat point, and not in A."""
    l1, l2 = _pencil_basis(P)
    ctx = A.ctx
    others = [fp.point for fp in lat.points if fp.point != P]
    for k in itertools.count():
        kk = ctx.scalar(k)
        coeffs = tuple(a + kk * b for a, b in zip(l1.coeffs, l2.coeffs))
        if all(c.is_zero() for c in coeffs):
            continue
        cand = Line(ctx, coeffs)
        if cand in A:
            continue
        if any(cand.eval_at(q).is_zero() for q in others):
            continue
        return cand
    return None


def _generic_representative(A: Arrangement, lat: LatticeData) -> Line:
    """A line through no flat point of A and not in A."""
    ctx = A.ctx
    pts = [fp.point for fp in lat.points]
    for k in itertools.count(1):
        kk = ctx.scalar(k)
        cand = Line(ctx, (ctx.one(), kk, kk * kk))
        if cand in A:
            continue
        if any(cand.eval_at(q).is_zero() for q in pts):
            continue
        return cand
    raise SearchError("unreachable")


def free_additions(
    A: Arrangement,
    lat: Optional[LatticeData] = None,
    cache: Optional[SearchCache] = None,
) -> list[Line]:
    """All lines L (up to strata) with A plus L free.

    Candidates are stratified by incidence with the flat points of A:
    (i) every line through at least two flat points (a finite set, enumerated
    as joins of point pairs); (ii) for each flat point, one generic pencil
    representative — its verdict holds for the whole pencil stratum since the
    stratum has constant intersection data; (iii) one fully generic line.
    Over a parametric field only stratum (i) is scanned.
    """
    cache = cache or SearchCache()
    if lat is None:
        lat = compute_lattice(A)
    _require_free(A, cache, lat)
    candidates: list[Line] = []
    seen: set[Line] = set(A.lines)
    pts = [fp.point for fp in lat.points]
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            try:
                cand = join(pts[i], pts[j])
            except GeometryError:
                continue
            if cand not in seen:
                seen.add(cand)
                candidates.append(cand)
    if not A.ctx.parametric:
        for fp in lat.points:
            rep = _pencil_representative(A, lat, fp.point)
            if rep is not None and rep not in seen:
                seen.add(rep)
                candidates.append(rep)
        if len(A) >= 1 and pts:
            rep = _generic_representative(A, lat)
            if rep not in seen:
                seen.add(rep)
                candidates.append(rep)
    out: list[Line] = []
    for cand in candidates:
        bigger = A.add(cand)
        r = cache.is_free(bigger, extend_lattice(lat, A, cand))
        if r.is_free:
            out.append(cand)
    return out


# ---------------------------------------------------------------------------
# Inductive freeness (deletions only)


def _if_search(
    A: Arrangement, lat: LatticeData, cache: SearchCache
) -> Optional[tuple[Line, ...]]:
    """Deletion order emptying A through free stages, or None."""
    key = A.canonical_key()
    if key in cache.inductive:
        return cache.inductive[key]
    result: Optional[tuple[Line, ...]] = None
    if len(A) == 0:
        result = ()
    else:
        r = cache.is_free(A, lat)
        if r.is_free:
            for h in range(len(A)):
                sub = A.delete(h)
                sublat = restrict_lattice(lat, h)
                if not cache.is_free(sub, sublat).is_free:
                    continue
                tail = _if_search(sub, sublat, cache)
                if tail is not None:
                    result = (A[h],) + tail
                    break
    cache.inductive[key] = result
    return result


def is_inductively_free(
    A: Arrangement,
    lat: Optional[LatticeData] = None,
    cache: Optional[SearchCache] = None,
) -> Optional[Chain]:
    """A deletion chain from A to the empty arrangement, or None."""
    cache = cache or SearchCache()
    if lat is None:
        lat = compute_lattice(A)
    order = _if_search(A, lat, cache)
    if order is None:
        return None
    return _chain_from_moves(A, [Move("delete", l) for l in order], cache)


def _chain_from_moves(
    A: Arrangement, moves: list[Move], cache: SearchCache
) -> Chain:
    stages = [cache.is_free(A).exponents]
    cur = A
    for mv in moves:
        if mv.kind == "add":
            cur = cur.add(mv.line)
        else:
            cur = cur.delete(cur.lines.index(mv.line))
        stages.append(cache.is_free(cur).exponents)
    return Chain(start=A, moves=tuple(moves), stages=tuple(stages))


def verify_chain(chain: Chain) -> bool:
    """Independently re-verify every stage of a chain with fresh freeness runs."""
    cur = chain.start
    if not is_free(cur).is_free:
        return False
    if is_free(cur).exponents != chain.stages[0]:
        return False
    for mv, expected in zip(chain.moves, chain.stages[1:]):
        if mv.kind == "add":
            if mv.line in cur:
                return False
            cur = cur.add(mv.line)
        else:
            if mv.line not in cur:
                return False
            cur = cur.delete(cur.lines.index(mv.line))
        r = is_free(cur)
        if not r.is_free or r.exponents != expected:
            return False
    return True


# ---------------------------------------------------------------------------
# Bounded recursive freeness


def recursive_freeness_bounded(
    A: Arrangement,
    max_size: Optional[int] = None,
    cache: Optional[SearchCache] = None,
) -> RecursiveVerdict:
    """Search the free-move graph for a chain from A down to the empty set.

    Yes carries a verified chain.  No is issued — soundly and completely,
    independent of the bound — when A has no free neighbor at all, so no
    chain can even start.  Otherwise the bounded search may return Unknown.
    """
    cache = cache or SearchCache()
    if max_size is None:
        max_size = len(A) + 3
    if max_size < len(A):
        raise SearchError("max_size must be at least the arrangement size")
    lat = compute_lattice(A)
    _require_free(A, cache, lat)
    if len(A) == 0:
        return RecursiveVerdict("yes", Chain(A, (), (cache.is_free(A).exponents,)))

    dels = free_deletions(A, lat, cache)
    adds = free_additions(A, lat, cache)
    if not dels and not adds:
        return RecursiveVerdict(
            "no",
            certificate={
                "free_deletions": [],
                "free_additions": [],
                "size": len(A),
            },
        )

    counter = itertools.count()
    heap: list[tuple[int, int, Arrangement, LatticeData, tuple[Move, ...]]] = []
    heapq.heappush(heap, (len(A), next(counter), A, lat, ()))
    visited = {A.canonical_key()}
    while heap:
        size, _, cur, curlat, path = heapq.heappop(heap)
        probe = is_inductively_free(cur, curlat, cache)
        if probe is not None:
            moves = list(path) + list(probe.moves)
            chain = _chain_from_moves(A, moves, cache)
            if not verify_chain(chain):
                raise SearchError("internal error: found chain fails re-verification")
            return RecursiveVerdict("yes", chain)
        for h, _exps in free_deletions(cur, curlat, cache):
            sub = cur.delete(h)
            key = sub.canonical_key()
            if key in visited:
                continue
            visited.add(key)
            heapq.heappush(
                heap,
                (
                    len(sub),
                    next(counter),
                    sub,
                    restrict_lattice(curlat, h),
                    path + (Move("delete", cur[h]),),
                ),
            )
        if size < max_size:
            for line in free_additions(cur, curlat, cache):
                sup = cur.add(line)
                key = sup.canonical_key()
                if key in visited:
                    continue
                visited.add(key)
                heapq.heappush(
                    heap,
                    (
                        len(sup),
                        next(counter),
                        sup,
                        extend_lattice(curlat, cur, line),
                        path + (Move("add", line),),
                    ),
                )
    return RecursiveVerdict("unknown", certificate={"size_bound": max_size})
