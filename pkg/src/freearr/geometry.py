"""Projective lines and points in P^2 over an exact scalar field.

Lines and points are homogeneous coefficient triples normalized so the first
nonzero entry is 1, which makes structural equality projective equality and
gives a canonical sort order.  Arrangements are ordered, duplicate-free line
sets; ``cone`` homogenizes an affine line arrangement and appends the
infinity line z = 0 last.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence, Union

from .scalar import FieldCtx, FieldMismatchError, Scalar

__all__ = [
    "GeometryError",
    "Line",
    "Point",
    "Arrangement",
    "meet",
    "join",
    "incident",
    "cone",
]


class GeometryError(ValueError):
    """Degenerate geometric operation (equal lines/points, zero triple)."""


def _normalize_triple(ctx: FieldCtx, raw: Sequence[object]) -> tuple[Scalar, ...]:
    if len(raw) != 3:
        raise GeometryError("expected a coefficient triple")
    vals = [v if hasattr(v, "is_zero") and getattr(v, "ctx", None) == ctx else ctx.scalar(v) for v in raw]
    pivot = None
    for v in vals:
        if not v.is_zero():
            pivot = v
            break
    if pivot is None:
        raise GeometryError("zero triple is not projective")
    inv = pivot.inverse()
    return tuple(v * inv for v in vals)


class _ProjTriple:
    """Shared implementation of normalized homogeneous triples."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: Sequence[object]) -> None:
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "coeffs", _normalize_triple(ctx, coeffs))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, type(self)):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.ctx, self.coeffs))

    def sort_key(self) -> tuple:
        return tuple(c.sort_key() for c in self.coeffs)

    def __repr__(self) -> str:
        inner = ", ".join(str(c) for c in self.coeffs)
        return f"{type(self).__name__}({inner})"


class Line(_ProjTriple):
    """Projective line c0*x + c1*y + c2*z = 0, first nonzero coefficient = 1."""

    def eval_at(self, p: "Point") -> Scalar:
        c = self.coeffs
        q = p.coords
        return c[0] * q[0] + c[1] * q[1] + c[2] * q[2]


class Point(_ProjTriple):
    """Projective point (x : y : z), first nonzero coordinate = 1."""

    @property
    def coords(self) -> tuple[Scalar, ...]:
        return self.coeffs

    def at_infinity(self) -> bool:
        return self.coeffs[2].is_zero()


def _cross(a: Sequence[Scalar], b: Sequence[Scalar]) -> list[Scalar]:
    return [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]


def meet(l1: Line, l2: Line) -> Point:
    """The unique projective point on both lines."""
    if l1.ctx != l2.ctx:
        raise FieldMismatchError("lines live in different fields")
    if l1 == l2:
        raise GeometryError("equal lines have no unique meet")
    return Point(l1.ctx, _cross(l1.coeffs, l2.coeffs))


def join(p1: Point, p2: Point) -> Line:
    """The line through both points."""
    if p1.ctx != p2.ctx:
        raise FieldMismatchError("points live in different fields")
    if p1 == p2:
        raise GeometryError("equal points have no unique join")
    return Line(p1.ctx, _cross(p1.coords, p2.coords))


def incident(p: Point, l: Line) -> bool:
    """Exact incidence test."""
    return l.eval_at(p).is_zero()


class Arrangement:
    """Ordered, duplicate-free set of projective lines over one field context."""

    __slots__ = ("ctx", "lines")

    def __init__(self, ctx: FieldCtx, lines: Iterable[object]) -> None:
        built: list[Line] = []
        seen: set[Line] = set()
        for l in lines:
            line = l if isinstance(l, Line) and l.ctx == ctx else Line(ctx, l.coeffs if isinstance(l, Line) else l)
            if line in seen:
                raise GeometryError(f"duplicate line {line!r}")
            seen.add(line)
            built.append(line)
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "lines", tuple(built))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Arrangement is immutable")

    @staticmethod
    def dedup(ctx: FieldCtx, lines: Iterable[object]) -> "Arrangement":
        """Build an arrangement, silently dropping repeated lines."""
        out: list[Line] = []
        seen: set[Line] = set()
        for l in lines:
            line = l if isinstance(l, Line) and l.ctx == ctx else Line(ctx, l.coeffs if isinstance(l, Line) else l)
            if line not in seen:
                seen.add(line)
                out.append(line)
        return Arrangement(ctx, out)

    def __len__(self) -> int:
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    def __getitem__(self, i: int) -> Line:
        return self.lines[i]

    def __contains__(self, line: Line) -> bool:
        return line in set(self.lines)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Arrangement):
            return NotImplemented
        return self.ctx == other.ctx and self.lines == other.lines

    def __hash__(self) -> int:
        return hash((self.ctx, self.lines))

    def add(self, line: Line) -> "Arrangement":
        """New arrangement with ``line`` appended."""
        return Arrangement(self.ctx, self.lines + (line,))

    def delete(self, index: int) -> "Arrangement":
        """New arrangement with the line at ``index`` removed."""
        return Arrangement(self.ctx, self.lines[:index] + self.lines[index + 1 :])

    def canonical_key(self) -> tuple:
        """Order-independent identity, used as memoization key."""
        return (self.ctx, tuple(sorted(l.sort_key() for l in self.lines)))

    def __repr__(self) -> str:
        return f"Arrangement({len(self.lines)} lines over {self.ctx})"


def cone(affine: Sequence[Sequence[object]], ctx: FieldCtx) -> Arrangement:
    """Homogenize affine lines a*x + b*y + c = 0 with z and append z = 0 last."""
    lines: list[Line] = []
    seen: set[Line] = set()
    for triple in affine:
        line = Line(ctx, triple)
        if line in seen:
            raise GeometryError(f"duplicate line after homogenization: {line!r}")
        seen.add(line)
        lines.append(line)
    infinity = Line(ctx, (0, 0, 1))
    if infinity in seen:
        raise GeometryError("affine input already contains the infinity line")
    lines.append(infinity)
    return Arrangement(ctx, lines)
