"""Point-derivatives on the free power-series algebra.

``D_beta`` with respect to a variable ``x`` replaces, one occurrence at a
time, the letter ``x`` of each word by the series ``beta``.  Every other
letter, including the remaining variables, is left alone, so the same
routine gives partial derivatives in several variables.

Three independent algorithms are provided:

* :func:`point_derivative` works position by position (the production path);
* :func:`grouped_derivative` splits each word into constant blocks and runs
  of ``x`` and expands ``x^i`` as ``x^(i-1) beta + ... + beta x^(i-1)``;
* :func:`leibniz_oracle_derivative` unfolds the product rule letter by letter.

They are compared against each other by the uniqueness suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

from .core import (
    EMPTY_WORD,
    INF,
    Context,
    Order,
    Series,
    Symbol,
    Word,
    effective_min_degree,
    series_add,
    series_mul,
    truncate,
)
from .errors import PlaceholderCollisionError, SymbolKindError, UnknownSymbolError


@dataclass(frozen=True)
class DerivativeSpec:
    """A variable together with the series ``beta`` the derivative depends on."""

    variable: Symbol
    beta: Series

    def __post_init__(self):
        if not isinstance(self.variable, Symbol) or not self.variable.is_variable:
            raise SymbolKindError(f"{self.variable!r} is not a variable")


def spec(context: Context, variable: str, beta: Series | int | Fraction = 1) -> DerivativeSpec:
    """Convenience constructor: ``spec(ctx, "x", beta)``; scalars become constant series."""
    if not isinstance(beta, Series):
        beta = Series.scalar(context, beta)
    return DerivativeSpec(context.variable(variable), beta)


def _prepare(f: Series, ds: DerivativeSpec) -> tuple[Context, Order]:
    ctx = f.context.merge(ds.beta.context)
    if ds.variable not in ctx:
        raise UnknownSymbolError(f"variable {ds.variable.name!r} is not declared in {ctx!r}")
    if f.is_exact and not f._terms:
        return ctx, INF
    vo = min(f.valid_order - 1 + effective_min_degree(ds.beta), ds.beta.valid_order)
    return ctx, vo


def derivative_order(f: Series, ds: DerivativeSpec) -> Order:
    """Valid order of ``D_beta f``."""
    return _prepare(f, ds)[1]


def point_derivative(f: Series, ds: DerivativeSpec) -> Series:
    """The beta-derivative of ``f`` with respect to ``ds.variable``.

    Equivalently the partial derivative when ``f`` has several variables:
    non-designated variables behave as constants.
    """
    ctx, vo = _prepare(f, ds)
    x = ds.variable
    beta = [(w, w.degree, c) for w, c in ds.beta._terms.items()]
    out: dict[Word, mpq] = {}
    for w, c in f._terms.items():
        d = w.degree - 1
        for p, letter in enumerate(w):
            if letter != x:
                continue
            prefix = tuple.__getitem__(w, slice(0, p))
            suffix = tuple.__getitem__(w, slice(p + 1, None))
            for bw, bd, bc in beta:
                if d + bd > vo:
                    continue
                key = Word(prefix + bw + suffix)
                s = out.get(key, 0) + c * bc
                if s:
                    out[key] = s
                else:
                    del out[key]
    return Series._raw(ctx, out, vo)


def _runs(w: Word, x: Symbol) -> list[tuple[Word, int]]:
    """Split ``w`` as ``c1 x^i1 c2 x^i2 ... cn x^in c(n+1)``.

    Returns ``[(c1, i1), ..., (cn, in), (c(n+1), 0)]`` where every ``c`` is
    free of ``x`` and every ``i`` except the last is positive.
    """
    blocks: list[tuple[Word, int]] = []
    block: list[Symbol] = []
    i = 0
    for letter in w:
        if letter == x:
            i += 1
            continue
        if i:
            blocks.append((Word(block), i))
            block, i = [], 0
        block.append(letter)
    if i:
        blocks.append((Word(block), i))
        block = []
    blocks.append((Word(block), 0))
    return blocks


def _power_derivative(x_series: Series, beta: Series, i: int) -> Series:
    # x^(i-1) beta + x^(i-2) beta x + ... + beta x^(i-1)
    ctx = x_series.context
    total = Series.zero(ctx)
    for j in range(i):
        left = Series.one(ctx)
        for _ in range(j):
            left = series_mul(left, x_series)
        right = Series.one(ctx)
        for _ in range(i - 1 - j):
            right = series_mul(right, x_series)
        total = series_add(total, series_mul(series_mul(left, beta), right))
    return total


def grouped_derivative(f: Series, ds: DerivativeSpec) -> Series:
    """Same operator, evaluated through the block decomposition of each word."""
    ctx, vo = _prepare(f, ds)
    x = ds.variable
    beta = ds.beta if ds.beta.context == ctx else ds.beta.with_context(ctx)
    x_series = Series._word(ctx, Word((x,)))
    total = Series.zero(ctx)
    for w, c in f._terms.items():
        blocks = _runs(w, x)
        pieces = [b + Word((x,) * i) for b, i in blocks]
        for k, (block, i) in enumerate(blocks):
            if i == 0:
                continue
            left = Word(sum((tuple(p) for p in pieces[:k]), ())) + block
            right = Word(sum((tuple(p) for p in pieces[k + 1:]), ()))
            term = series_mul(
                series_mul(Series._word(ctx, left, c), _power_derivative(x_series, beta, i)),
                Series._word(ctx, right),
            )
            total = series_add(total, term)
    return truncate(total, vo)


def leibniz_oracle_derivative(f: Series, ds: DerivativeSpec) -> Series:
    """Same operator, by the product rule ``d(s w) = d(s) w + s d(w)``.

    Base cases: ``d(1) = 0``, ``d(x) = beta``, ``d(letter) = 0`` for every
    other letter.  Used only to cross-check the other two algorithms.
    """
    ctx, vo = _prepare(f, ds)
    x = ds.variable
    beta = ds.beta if ds.beta.context == ctx else ds.beta.with_context(ctx)
    zero = Series.zero(ctx)

    def d(word: Word) -> Series:
        if not word:
            return zero
        head, rest = word[:1], word[1:]
        d_head = beta if head[0] == x else zero
        return series_add(
            series_mul(d_head, Series._word(ctx, rest)),
            series_mul(Series._word(ctx, head), d(rest)),
        )

    total = zero
    for w, c in f._terms.items():
        total = series_add(total, series_mul(Series._word(ctx, EMPTY_WORD, c), d(w)))
    return truncate(total, vo)


def hausdorff_derivative(f: Series, variable: Symbol) -> Series:
    """The derivative at ``beta = 1``."""
    return point_derivative(f, DerivativeSpec(variable, Series.one(f.context)))


def second_partial(f: Series, outer: DerivativeSpec, inner: DerivativeSpec) -> Series:
    """``D_outer(D_inner f)``: ``inner`` is applied first."""
    return point_derivative(point_derivative(f, inner), outer)


def placeholder_derivative(f: Series, variable: Symbol, placeholder: Symbol) -> Series:
    """Derivative with a fresh constant ``placeholder`` marking each insertion site.

    The result lives in ``f``'s context extended by ``placeholder``;
    substituting a series for the placeholder yields the derivative at that
    series.
    """
    if placeholder.is_variable:
        raise SymbolKindError("placeholder must be a constant symbol")
    if placeholder.name in f.context and f.context[placeholder.name] != placeholder:
        raise PlaceholderCollisionError(f"{placeholder.name!r} is declared with another kind")
    if placeholder in f.symbols_used():
        raise PlaceholderCollisionError(f"placeholder {placeholder.name!r} already occurs in the series")
    ctx = f.context.extend(placeholder)
    delta = Series._word(ctx, Word((placeholder,)))
    return point_derivative(f.with_context(ctx), DerivativeSpec(variable, delta))


__all__ = [
    "DerivativeSpec",
    "spec",
    "derivative_order",
    "point_derivative",
    "grouped_derivative",
    "leibniz_oracle_derivative",
    "hausdorff_derivative",
    "second_partial",
    "placeholder_derivative",
]
