"""Canonical text rendering of series, readable back by the parser."""

from __future__ import annotations

from fractions import Fraction
from itertools import groupby

from ..core import INF, Context, Order, Series, Word
from ..errors import InsufficientPrecisionError


def format_rational(c: Fraction) -> str:
    return str(c)


def format_word(w: Word) -> str:
    """Space-separated letters with runs collapsed, e.g. ``a x^2 b``; ``1`` for the empty word."""
    if not w:
        return "1"
    parts = []
    for sym, run in groupby(w):
        n = len(list(run))
        parts.append(sym.name if n == 1 else f"{sym.name}^{n}")
    return " ".join(parts)


def _term(word: Word, c: Fraction) -> str:
    if not word:
        return format_rational(c)
    if c == 1:
        return format_word(word)
    return f"{format_rational(c)} {format_word(word)}"


def print_series(f: Series, order_limit: Order | None = None) -> str:
    """Render ``f`` in graded-lex order, up to ``order_limit`` (default: its valid order).

    A finite limit is made explicit with a trailing ``+ O(deg>n)`` marker.
    """
    limit = f.valid_order if order_limit is None else order_limit
    if limit > f.valid_order:
        raise InsufficientPrecisionError(
            f"cannot print up to degree {limit}: series is valid only up to {f.valid_order}"
        )
    pieces: list[str] = []
    for w, c in f.sorted_terms():
        if w.degree > limit:
            continue
        body = _term(w, abs(c))
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    text = " ".join(pieces) if pieces else "0"
    if limit != INF:
        text += f" + O(deg>{limit})"
    return text


def format_program(context: Context, series: dict[str, Series]) -> str:
    """A source program declaring ``context`` and defining each named series."""
    lines = []
    consts = [s.name for s in context.constants]
    variables = [s.name for s in context.variables]
    if consts:
        lines.append("const " + " ".join(consts) + ";")
    if variables:
        lines.append("var " + " ".join(variables) + ";")
    for name, f in series.items():
        lines.append(f"{name} = {print_series(f)};")
    return "\n".join(lines) + "\n"
