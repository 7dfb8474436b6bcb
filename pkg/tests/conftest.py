from __future__ import annotations

import pytest
from hypothesis import strategies as st

from ncpoint import INF, Context, Series, Word
from ncpoint.exprio import parse_series

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def ctx() -> Context:
    return Context.declare("a b", "x y")


@pytest.fixture
def S(ctx):
    """Parse an expression over the default alphabet."""

    def parse(text: str, order: int = 6) -> Series:
        return parse_series(text, ctx, order)

    return parse


CTX = Context.declare("a b", "x y")


def series_strategy(ctx: Context = CTX, max_len: int = 4, max_terms: int = 4, letters=None, truncated=False):
    pool = list(ctx) if letters is None else list(letters)
    words = st.lists(st.sampled_from(pool), max_size=max_len).map(Word)
    coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6).filter(bool)
    terms = st.dictionaries(words, coeffs, max_size=max_terms)
    base = terms.map(lambda t: Series(ctx, t))
    if not truncated:
        return base
    return st.tuples(base, st.integers(0, 4)).map(lambda p: p[0].truncate(p[1]))


def representative(f, tail):
    """An exact series agreeing with ``f`` up to its valid order, with ``tail`` above it."""
    if f.valid_order == INF:
        return f
    lift = Series.monomial(CTX, " ".join(["x"] * (f.valid_order + 1)))
    return Series(CTX, list(f.terms.items()) + list((lift * tail).terms.items()))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
