"""Text/JSON encodings for scalars, arrangements, and parameter values.

Scalars encode as: rational -> "p/q" string; quadratic a + b*sqrt(d) ->
{"a": "p/q", "b": "p/q"}; rational function -> {"num": [...], "den": [...]}
with ascending-degree coefficient lists of scalar encodings.

An arrangement file is a JSON object::

    {"field": {"sqrt": d, "param": false},
     "lines": [[s, s, s], ...],
     "affine": false}

``sqrt`` may be omitted or null for plain Q.  With ``"affine": true`` each
triple is an affine form a*x + b*y + c and the whole input is coned (an
infinity line z = 0 is appended).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .geometry import Arrangement, Line, cone
from .scalar import FieldCtx, FieldMismatchError, Poly, QuadElem, RatFn, Scalar

__all__ = [
    "ArrIOError",
    "encode_scalar",
    "decode_scalar",
    "encode_arrangement",
    "decode_arrangement",
    "encode_line",
    "parse_param",
]


class ArrIOError(ValueError):
    """Malformed arrangement or scalar encoding."""


def encode_scalar(x: Scalar) -> Union[str, dict]:
    """JSON-ready encoding of a QuadElem or RatFn."""
    if isinstance(x, QuadElem):
        if x.ctx.disc is None or x.b == 0:
            return str(x.a)
        return {"a": str(x.a), "b": str(x.b)}
    if isinstance(x, RatFn):
        return {
            "num": [encode_scalar(c) for c in x.num.coeffs],
            "den": [encode_scalar(c) for c in x.den.coeffs],
        }
    raise ArrIOError(f"cannot encode {type(x).__name__}")


def _decode_fraction(s: object) -> Fraction:
    if isinstance(s, str):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as e:
            raise ArrIOError(f"bad rational {s!r}") from e
    if isinstance(s, int):
        return Fraction(s)
    raise ArrIOError(f"bad rational {s!r}")


def _decode_quad(ctx: FieldCtx, obj: object) -> QuadElem:
    base = ctx.base()
    if isinstance(obj, (str, int)):
        return QuadElem.of(base, _decode_fraction(obj))
    if isinstance(obj, dict) and set(obj) <= {"a", "b"}:
        if base.disc is None and obj.get("b"):
            raise ArrIOError("sqrt part given but field has no sqrt")
        return QuadElem(
            base,
            _decode_fraction(obj.get("a", "0")),
            _decode_fraction(obj.get("b", "0")),
        )
    raise ArrIOError(f"bad scalar encoding {obj!r}")


def decode_scalar(ctx: FieldCtx, obj: object) -> Scalar:
    """Parse a scalar encoding in the given field context."""
    if isinstance(obj, dict) and ("num" in obj or "den" in obj):
        if not ctx.parametric:
            raise ArrIOError("rational-function scalar in a non-parametric field")
        num = Poly(ctx, [_decode_quad(ctx, c) for c in obj.get("num", [])])
        den = Poly(ctx, [_decode_quad(ctx, c) for c in obj.get("den", ["1"])])
        if den.is_zero():
            raise ArrIOError("zero denominator")
        return RatFn(ctx, num, den)
    return ctx.scalar(_decode_quad(ctx, obj))


def decode_arrangement(obj: dict) -> Arrangement:
    """Build an Arrangement from its JSON object form."""
    if not isinstance(obj, dict) or "lines" not in obj:
        raise ArrIOError("arrangement object needs a 'lines' list")
    fld = obj.get("field", {})
    if not isinstance(fld, dict):
        raise ArrIOError("'field' must be an object")
    disc = fld.get("sqrt")
    if disc is not None and not isinstance(disc, int):
        raise ArrIOError("'sqrt' must be an integer")
    ctx = FieldCtx(disc, bool(fld.get("param", False)))
    triples = []
    for raw in obj["lines"]:
        if not isinstance(raw, (list, tuple)) or len(raw) != 3:
            raise ArrIOError(f"line {raw!r} is not a coefficient triple")
        triples.append(tuple(decode_scalar(ctx, s) for s in raw))
    try:
        if obj.get("affine", False):
            return cone(triples, ctx)
        return Arrangement(ctx, triples)
    except (ValueError, ArithmeticError) as e:
        raise ArrIOError(str(e)) from e


def encode_line(line: Line) -> list:
    return [encode_scalar(c) for c in line.coeffs]


def encode_arrangement(A: Arrangement) -> dict:
    """JSON object form of an arrangement (always homogeneous)."""
    fld: dict = {"param": A.ctx.parametric}
    if A.ctx.disc is not None:
        fld["sqrt"] = A.ctx.disc
    return {"field": fld, "lines": [encode_line(l) for l in A.lines]}


def parse_param(text: str) -> QuadElem:
    """Parse a parameter value like "3", "-1/2", "sqrt(-1)", "(1+sqrt(5))/2".

    The value must lie in Q or a quadratic extension Q(sqrt(d)).
    """
    import sympy

    try:
        expr = sympy.nsimplify(sympy.sympify(text, rational=True))
        expr = sympy.expand(expr)
    except (sympy.SympifyError, SyntaxError, TypeError) as e:
        raise ArrIOError(f"cannot parse parameter {text!r}") from e
    from .scalar import squarefree_decompose

    a, b, rad = Fraction(0), Fraction(0), None
    terms = expr.as_ordered_terms() if expr.is_Add else [expr]
    for term in terms:
        coeff, radicand, has_i = sympy.Rational(1), Fraction(1), False
        for fac in term.as_ordered_factors():
            if fac.is_Rational:
                coeff *= fac
            elif fac is sympy.I:
                has_i = not has_i
            elif (
                fac.is_Pow
                and fac.exp == sympy.Rational(1, 2)
                and fac.base.is_Rational
                and fac.base > 0
            ):
                radicand *= Fraction(fac.base.p, fac.base.q)
            else:
                raise ArrIOError(f"parameter {text!r} is not in a quadratic field")
        # sqrt(p/q) = sqrt(p*q)/q; i*sqrt(p) = sqrt(-p)
        c = Fraction(coeff.p, coeff.q) / radicand.denominator
        n = radicand.numerator * radicand.denominator
        if has_i:
            n = -n
        s, d = squarefree_decompose(n)
        c *= s
        if d == 1:
            a += c
            continue
        if rad is None:
            rad = d
        elif rad != d:
            raise ArrIOError(f"parameter {text!r} mixes two square roots")
        b += c
    if rad is None or b == 0:
        return QuadElem.of(FieldCtx(), a)
    return QuadElem(FieldCtx(rad), a, b)
