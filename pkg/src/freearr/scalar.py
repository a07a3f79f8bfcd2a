"""Exact arithmetic tower: rationals, quadratic extensions Q(sqrt(d)), and
univariate rational functions Q(sqrt(d))(t).

All values are immutable and kept in a canonical form, so structural equality
coincides with mathematical equality and every value can serve as a dict key.
A :class:`FieldCtx` pins down the coefficient field; mixing values from
different contexts is a :class:`FieldMismatchError`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

__all__ = [
    "FieldMismatchError",
    "FieldCtx",
    "RATIONAL",
    "QuadElem",
    "Poly",
    "RatFn",
    "Scalar",
    "field_arithmetic",
    "conjugate",
    "sqrt_rational",
    "squarefree_decompose",
    "QuadraticRootPair",
    "RootReport",
    "roots_low_degree",
]


class FieldMismatchError(ValueError):
    """Raised when two scalars from incompatible field contexts are combined."""


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write ``n = s*s*d`` with ``d`` squarefree and ``s > 0``; return ``(s, d)``."""
    if n == 0:
        return 1, 0
    sign = -1 if n < 0 else 1
    m = abs(n)
    s = 1
    d = 1
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    d *= m
    return s, sign * d


@dataclass(frozen=True)
class FieldCtx:
    """Coefficient field: Q, Q(sqrt(disc)), or the same with indeterminate t.

    Attributes:
        disc: squarefree integer d for Q(sqrt(d)), or None for plain Q.
        parametric: whether scalars are rational functions in t.
    """

    disc: Optional[int] = None
    parametric: bool = False

    def __post_init__(self) -> None:
        if self.disc is not None:
            if self.disc in (0, 1):
                raise ValueError(f"invalid quadratic discriminant {self.disc}")
            s, d = squarefree_decompose(self.disc)
            if s != 1:
                raise ValueError(f"discriminant {self.disc} is not squarefree")

    def base(self) -> "FieldCtx":
        """The non-parametric field underlying this context."""
        if not self.parametric:
            return self
        return FieldCtx(self.disc, False)

    def with_param(self) -> "FieldCtx":
        return FieldCtx(self.disc, True)

    # -- scalar constructors ------------------------------------------------

    def zero(self) -> "Scalar":
        return self.scalar(0)

    def one(self) -> "Scalar":
        return self.scalar(1)

    def sqrt_gen(self) -> "Scalar":
        """The generator sqrt(disc) of the quadratic extension."""
        if self.disc is None:
            raise FieldMismatchError("context has no quadratic discriminant")
        g = QuadElem(self.base(), Fraction(0), Fraction(1))
        return self.scalar(g)

    def t(self) -> "RatFn":
        """The indeterminate t (parametric contexts only)."""
        if not self.parametric:
            raise FieldMismatchError("context is not parametric")
        base = self.base()
        tp = Poly(self, (QuadElem.of(base, 0), QuadElem.of(base, 1)))
        return RatFn(self, tp, Poly.one(self))

    def scalar(self, x: object) -> "Scalar":
        """Coerce ``x`` (int/Fraction/QuadElem/Poly/RatFn) into this context."""
        base = self.base()
        if isinstance(x, RatFn):
            if x.ctx != self:
                raise FieldMismatchError(f"cannot coerce {x.ctx} into {self}")
            return x
        if isinstance(x, Poly):
            if not self.parametric or x.ctx.base() != base:
                raise FieldMismatchError("polynomial does not fit this context")
            return RatFn(self, Poly(self, x.coeffs), Poly.one(self))
        if isinstance(x, QuadElem):
            if x.ctx != base:
                if x.b != 0 or (x.ctx.disc is not None and base.disc is not None):
                    raise FieldMismatchError(
                        f"cannot coerce element of {x.ctx} into {self}"
                    )
                x = QuadElem(base, x.a, Fraction(0))
            q = x
        elif isinstance(x, (int, Fraction)):
            q = QuadElem.of(base, x)
        else:
            raise TypeError(f"cannot build a scalar from {type(x).__name__}")
        if not self.parametric:
            return q
        return RatFn(self, Poly(self, (q,)), Poly.one(self))


RATIONAL = FieldCtx()


class QuadElem:
    """Element a + b*sqrt(d) of Q(sqrt(d)) (b = 0 when the context is plain Q)."""

    __slots__ = ("ctx", "a", "b")

    def __init__(self, ctx: FieldCtx, a: Fraction, b: Fraction = Fraction(0)) -> None:
        if ctx.parametric:
            raise FieldMismatchError("QuadElem requires a non-parametric context")
        if ctx.disc is None and b != 0:
            raise FieldMismatchError("nonzero sqrt part in a rational context")
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "a", a if isinstance(a, Fraction) else Fraction(a))
        object.__setattr__(self, "b", b if isinstance(b, Fraction) else Fraction(b))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("QuadElem is immutable")

    @staticmethod
    def of(ctx: FieldCtx, x: Union[int, Fraction]) -> "QuadElem":
        return QuadElem(ctx, Fraction(x))

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other: object) -> Optional["QuadElem"]:
        if isinstance(other, QuadElem):
            if other.ctx != self.ctx:
                raise FieldMismatchError(
                    f"context mismatch: {self.ctx} vs {other.ctx}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem.of(self.ctx, other)
        return None

    def __add__(self, other: object) -> "QuadElem":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.ctx, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other: object) -> "QuadElem":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.ctx, self.a - o.a, self.b - o.b)

    def __rsub__(self, other: object) -> "QuadElem":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.ctx, o.a - self.a, o.b - self.b)

    def __neg__(self) -> "QuadElem":
        return QuadElem(self.ctx, -self.a, -self.b)

    def __mul__(self, other: object) -> "QuadElem":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.b == 0:
            if o.b == 0:
                return QuadElem(self.ctx, self.a * o.a)
            return QuadElem(self.ctx, self.a * o.a, self.a * o.b)
        if o.b == 0:
            return QuadElem(self.ctx, self.a * o.a, self.b * o.a)
        d = self.ctx.disc
        return QuadElem(
            self.ctx,
            self.a * o.a + self.b * o.b * d,
            self.a * o.b + self.b * o.a,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.b == 0:
            return QuadElem(self.ctx, 1 / self.a)
        d = self.ctx.disc
        norm = self.a * self.a - self.b * self.b * d
        return QuadElem(self.ctx, self.a / norm, -self.b / norm)

    def __truediv__(self, other: object) -> "QuadElem":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> "QuadElem":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def conjugate(self) -> "QuadElem":
        return QuadElem(self.ctx, self.a, -self.b)

    # -- structure ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, QuadElem):
            return NotImplemented
        return self.ctx == other.ctx and self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.ctx, self.a, self.b))

    def sort_key(self) -> tuple:
        return (0, self.a, self.b)

    def as_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError("not a rational value")
        return self.a

    def real_value(self) -> float:
        """Embed into R using the positive square root (requires disc > 0)."""
        if self.b == 0:
            return float(self.a)
        d = self.ctx.disc
        if d is None or d < 0:
            raise ValueError("no real embedding for this context")
        return float(self.a) + float(self.b) * d ** 0.5

    def real_sign(self) -> int:
        """Exact sign under the positive-root real embedding."""
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        d = self.ctx.disc
        if d is None or d < 0:
            raise ValueError("no real embedding for this context")
        if self.a == 0:
            return 1 if self.b > 0 else -1
        # sign(a + b*sqrt(d)): compare a^2 and b^2 d with the signs of a, b.
        if self.a > 0 and self.b > 0:
            return 1
        if self.a < 0 and self.b < 0:
            return -1
        lhs = self.a * self.a
        rhs = self.b * self.b * d
        if lhs == rhs:
            return 0
        if self.a > 0:
            return 1 if lhs > rhs else -1
        return -1 if lhs > rhs else 1

    def __repr__(self) -> str:
        if self.b == 0:
            return str(self.a)
        d = self.ctx.disc
        return f"({self.a}+{self.b}*sqrt({d}))"

    __str__ = __repr__


class Poly:
    """Univariate polynomial in t with QuadElem coefficients, ascending degree.

    The zero polynomial has an empty coefficient tuple.  ``ctx`` is the
    parametric context the polynomial lives under; coefficients live in
    ``ctx.base()``.
    """

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: Sequence[QuadElem]) -> None:
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Poly is immutable")

    @staticmethod
    def zero(ctx: FieldCtx) -> "Poly":
        return Poly(ctx, ())

    @staticmethod
    def one(ctx: FieldCtx) -> "Poly":
        return Poly(ctx, (QuadElem.of(ctx.base(), 1),))

    @staticmethod
    def from_rationals(ctx: FieldCtx, coeffs: Iterable[Union[int, Fraction]]) -> "Poly":
        base = ctx.base()
        return Poly(ctx, [QuadElem.of(base, c) for c in coeffs])

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def leading(self) -> QuadElem:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if self.ctx != other.ctx:
            raise FieldMismatchError("polynomial context mismatch")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.ctx, out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(self.ctx, [-c for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return Poly.zero(self.ctx)
        zero = QuadElem.of(self.ctx.base(), 0)
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ci in enumerate(self.coeffs):
            if ci.is_zero():
                continue
            for j, cj in enumerate(other.coeffs):
                if cj.is_zero():
                    continue
                out[i + j] = out[i + j] + ci * cj
        return Poly(self.ctx, out)

    def scale(self, c: QuadElem) -> "Poly":
        return Poly(self.ctx, [k * c for k in self.coeffs])

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead_inv = other.leading().inverse()
        rem = list(self.coeffs)
        dq = len(self.coeffs) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(self.ctx), self
        zero = QuadElem.of(self.ctx.base(), 0)
        quot = [zero] * (dq + 1)
        for k in range(dq, -1, -1):
            top = rem[k + other.degree]
            if top.is_zero():
                continue
            c = top * lead_inv
            quot[k] = c
            for j, oc in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - c * oc
        return Poly(self.ctx, quot), Poly(self.ctx, rem[: other.degree])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.leading()
        if lead == 1:
            return self
        return self.scale(lead.inverse())

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd via the Euclidean algorithm."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> "Poly":
        return Poly(
            self.ctx,
            [c * i for i, c in enumerate(self.coeffs)][1:],
        )

    def squarefree_part(self) -> "Poly":
        if self.degree <= 0:
            return self.monic()
        g = self.gcd(self.derivative())
        if g.degree <= 0:
            return self.monic()
        return (self // g).monic()

    def eval(self, x: QuadElem) -> QuadElem:
        acc = QuadElem.of(x.ctx, 0)
        for c in reversed(self.coeffs):
            cc = c if c.ctx == x.ctx else QuadElem(x.ctx, c.a, c.b)
            acc = acc * x + cc
        return acc

    def conjugate(self) -> "Poly":
        return Poly(self.ctx, [c.conjugate() for c in self.coeffs])

    # -- structure ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.ctx, self.coeffs))

    def sort_key(self) -> tuple:
        return (len(self.coeffs), tuple(c.sort_key() for c in self.coeffs))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if i == 0:
                parts.append(f"{c}")
            elif i == 1:
                parts.append(f"{c}*t")
            else:
                parts.append(f"{c}*t^{i}")
        return " + ".join(parts)

    __str__ = __repr__


class RatFn:
    """Rational function num/den over Q(sqrt(d)), gcd-reduced, monic denominator."""

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx: FieldCtx, num: Poly, den: Poly) -> None:
        if not ctx.parametric:
            raise FieldMismatchError("RatFn requires a parametric context")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = num.gcd(den)
        if g.degree > 0:
            num = num // g
            den = den // g
        lead = den.leading()
        if lead != 1:
            inv = lead.inverse()
            num = num.scale(inv)
            den = den.scale(inv)
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("RatFn is immutable")

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other: object) -> Optional["RatFn"]:
        if isinstance(other, RatFn):
            if other.ctx != self.ctx:
                raise FieldMismatchError("context mismatch")
            return other
        if isinstance(other, (int, Fraction, QuadElem, Poly)):
            return self.ctx.scalar(other)  # type: ignore[return-value]
        return None

    def __add__(self, other: object) -> "RatFn":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFn(self.ctx, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other: object) -> "RatFn":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFn(self.ctx, self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other: object) -> "RatFn":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self) -> "RatFn":
        return RatFn(self.ctx, -self.num, self.den)

    def __mul__(self, other: object) -> "RatFn":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFn(self.ctx, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFn":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFn(self.ctx, self.den, self.num)

    def __truediv__(self, other: object) -> "RatFn":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> "RatFn":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def conjugate(self) -> "RatFn":
        return RatFn(self.ctx, self.num.conjugate(), self.den.conjugate())

    def eval(self, x: QuadElem) -> QuadElem:
        """Specialize t = x; raises ZeroDivisionError at a pole."""
        dv = self.den.eval(x)
        if dv.is_zero():
            raise ZeroDivisionError("pole of rational function")
        return self.num.eval(x) / dv

    # -- structure ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return (
                self.den.degree == 0
                and self.num.degree <= 0
                and (self.num.coeffs[0] == other if self.num.coeffs else other == 0)
            )
        if not isinstance(other, RatFn):
            return NotImplemented
        return self.ctx == other.ctx and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.ctx, self.num, self.den))

    def sort_key(self) -> tuple:
        return (1, self.num.sort_key(), self.den.sort_key())

    def __repr__(self) -> str:
        if self.den.degree == 0:
            return f"{self.num}"
        return f"({self.num})/({self.den})"

    __str__ = __repr__


Scalar = Union[QuadElem, RatFn]


def field_arithmetic(x: Scalar, y: Scalar, op: str):
    """Uniform entry point for scalar arithmetic: add/sub/mul/div/eq/is_zero."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "eq":
        return x == y
    if op == "is_zero":
        return x.is_zero()
    raise ValueError(f"unknown operation {op!r}")


def conjugate(x: Scalar) -> Scalar:
    """Galois conjugation a + b*sqrt(d) -> a - b*sqrt(d), coefficient-wise."""
    if x.ctx.disc is None:
        raise FieldMismatchError("conjugate requires a quadratic context")
    return x.conjugate()


def sqrt_rational(ctx_or_disc: Union[FieldCtx, int], n: Union[int, Fraction]) -> QuadElem:
    """sqrt of a rational number as a QuadElem, normalizing the radicand.

    ``sqrt(12) -> 2*sqrt(3)``; the returned element lives in Q(sqrt(d)) for
    the squarefree part d, which must match ``ctx_or_disc`` when that is a
    FieldCtx.
    """
    n = Fraction(n)
    s_num, d_num = squarefree_decompose(n.numerator)
    s_den, d_den = squarefree_decompose(n.denominator)
    # sqrt(p/q) = (s_num/s_den) * sqrt(d_num*d_den) / d_den
    sd, d = squarefree_decompose(d_num * d_den)
    coef = Fraction(s_num * sd, s_den * d_den)
    if isinstance(ctx_or_disc, FieldCtx):
        ctx = ctx_or_disc.base()
    elif d not in (0, 1):
        ctx = FieldCtx(d)
    else:
        ctx = FieldCtx(ctx_or_disc) if ctx_or_disc not in (0, 1) else RATIONAL
    if d == 0:
        return QuadElem.of(ctx, 0)
    if d == 1:
        return QuadElem.of(ctx, coef)
    if ctx.disc != d:
        raise FieldMismatchError(f"sqrt({n}) needs disc {d}, context has {ctx.disc}")
    return QuadElem(ctx, Fraction(0), coef)


# ---------------------------------------------------------------------------
# Root extraction for rational polynomials


@dataclass(frozen=True)
class QuadraticRootPair:
    """Roots (center ± coef*sqrt(disc)) of an irreducible rational quadratic."""

    disc: int
    center: Fraction
    coef: Fraction

    def elements(self) -> tuple[QuadElem, QuadElem]:
        ctx = FieldCtx(self.disc)
        return (
            QuadElem(ctx, self.center, self.coef),
            QuadElem(ctx, self.center, -self.coef),
        )

    def __repr__(self) -> str:
        return f"{self.center} ± {self.coef}*sqrt({self.disc})"


@dataclass(frozen=True)
class RootReport:
    """Factorization of a rational polynomial into linear/quadratic parts."""

    leading: Fraction
    rational_roots: tuple[tuple[Fraction, int], ...]
    quadratic_factors: tuple[tuple[QuadraticRootPair, int], ...]
    residual: Optional[Poly]


def roots_low_degree(p: Poly) -> RootReport:
    """Complete factorization of a rational polynomial over Q.

    Linear factors become rational roots with multiplicity; irreducible
    quadratics are reported with their roots (center ± coef*sqrt(d)); any
    irreducible factor of degree >= 3 is returned as an unfactored residual.
    """
    import sympy

    if p.is_zero():
        raise ValueError("zero polynomial")
    coeffs = []
    for c in p.coeffs:
        if not c.is_rational():
            raise FieldMismatchError("roots_low_degree needs rational coefficients")
        coeffs.append(c.as_fraction())
    t = sympy.Symbol("t")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * t**i for i, c in enumerate(coeffs))
    lead, factors = sympy.Poly(expr, t).factor_list()
    leading = Fraction(int(lead.p), int(lead.q)) if lead.is_Rational else Fraction(1)
    rational_roots: list[tuple[Fraction, int]] = []
    quadratics: list[tuple[QuadraticRootPair, int]] = []
    residual = Poly.one(p.ctx)
    base = p.ctx.base()
    for fac, mult in factors:
        fc = [Fraction(int(c.p), int(c.q)) for c in reversed(fac.all_coeffs())]
        deg = len(fc) - 1
        if deg == 1:
            # fc[1]*t + fc[0]; sympy factors have integer content but keep it exact
            root = -fc[0] / fc[1]
            rational_roots.append((root, mult))
            leading *= fc[1] ** mult
        elif deg == 2:
            a, b, c2 = fc[2], fc[1], fc[0]
            disc_val = b * b - 4 * a * c2
            s_num, d_num = squarefree_decompose(disc_val.numerator)
            s_den, d_den = squarefree_decompose(disc_val.denominator)
            sd, d = squarefree_decompose(d_num * d_den)
            # sqrt(disc_val) = (s_num*s_den*sd/denominator) * sqrt(d)
            sqrt_disc_coef = Fraction(s_num * s_den * sd, disc_val.denominator)
            pair = QuadraticRootPair(d, -b / (2 * a), sqrt_disc_coef / (2 * a))
            quadratics.append((pair, mult))
            leading *= a**mult
        else:
            ppart = Poly(p.ctx, [QuadElem.of(base, c) for c in fc])
            for _ in range(mult):
                residual = residual * ppart
            leading *= fc[-1] ** mult
    res = None if residual.degree <= 0 else residual.monic()
    return RootReport(
        leading=leading,
        rational_roots=tuple(sorted(rational_roots)),
        quadratic_factors=tuple(
            sorted(quadratics, key=lambda q: (q[0].disc, q[0].center, q[0].coef))
        ),
        residual=res,
    )
