from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CTX, representative, series_strategy
from ncpoint import (
    INF,
    DerivativeSpec,
    Series,
    Symbol,
    enumerate_words,
    grouped_derivative,
    hausdorff_derivative,
    leibniz_oracle_derivative,
    placeholder_derivative,
    point_derivative,
    second_partial,
    spec,
    substitute,
    truncate,
)
from ncpoint.core import first_difference
from ncpoint.errors import PlaceholderCollisionError, SymbolKindError, UnknownSymbolError

ALGORITHMS = [point_derivative, grouped_derivative, leibniz_oracle_derivative]


@pytest.fixture
def beta(S):
    return S("b y + 2 a")


@pytest.mark.parametrize("D", ALGORITHMS)
def test_variable_maps_to_beta(D, S, ctx, beta):
    assert D(S("x"), spec(ctx, "x", beta)) == beta


@pytest.mark.parametrize("D", ALGORITHMS)
def test_constants_vanish(D, S, ctx, beta):
    ds = spec(ctx, "x", beta)
    assert D(S("a"), ds) == Series.zero(ctx)
    assert D(S("a b y"), ds) == Series.zero(ctx)
    assert D(S("1"), ds) == Series.zero(ctx)


@pytest.mark.parametrize("D", ALGORITHMS)
def test_square(D, S, ctx, beta):
    assert D(S("x^2"), spec(ctx, "x", beta)) == S("x (b y + 2 a) + (b y + 2 a) x")


def test_two_separated_occurrences(S, ctx):
    ds = spec(ctx, "x", S("b y"))
    f = S("a x b x")
    expected = S("a b y b x + a x b b y")
    assert point_derivative(f, ds) == expected
    assert leibniz_oracle_derivative(f, ds) == expected


def test_hausdorff_powers(S, ctx):
    x = ctx["x"]
    for n in range(1, 9):
        assert hausdorff_derivative(S(f"x^{n}"), x) == S(f"{n} x^{n - 1}")
    assert point_derivative(S("x"), spec(ctx, "x", 1)) == S("1")
    assert hausdorff_derivative(S("a"), x) == Series.zero(ctx)
    assert hausdorff_derivative(S("a x b"), x) == S("a b")
    assert leibniz_oracle_derivative(S("a x b"), spec(ctx, "x", 1)) == S("a b")


def test_other_variable_is_held_constant(S, ctx):
    ds = spec(ctx, "x", S("a"))
    assert point_derivative(S("y x y"), ds) == S("y a y")
    assert point_derivative(S("y^3"), ds) == Series.zero(ctx)


def test_leibniz_oracle_examples(S, ctx, beta):
    ds = spec(ctx, "x", beta)
    assert leibniz_oracle_derivative(S("a b"), ds) == Series.zero(ctx)
    assert leibniz_oracle_derivative(S("x^2"), ds) == S("x b y + 2 x a + b y x + 2 a x")


def test_second_partial_examples(S, ctx):
    one_x, one_y = spec(ctx, "x", 1), spec(ctx, "y", 1)
    assert second_partial(S("x y"), one_y, one_x) == S("1")
    assert second_partial(S("x y"), one_x, one_y) == S("1")
    assert second_partial(S("a"), one_y, one_x) == Series.zero(ctx)
    inner = spec(ctx, "x", S("a x + b"))
    outer = spec(ctx, "y", S("b a"))
    assert point_derivative(S("x^2"), inner) == S("x a x + x b + a x x + b x")
    assert second_partial(S("x^2"), outer, inner) == Series.zero(ctx)


def test_placeholder_derivative(S, ctx):
    x = ctx["x"]
    d = ctx.fresh_placeholder()
    got = placeholder_derivative(S("x"), x, d)
    assert [w.names for w in got.terms] == [(d.name,)]
    got = placeholder_derivative(S("x^2"), x, d)
    assert sorted(w.names for w in got.terms) == sorted([("x", d.name), (d.name, "x")])
    beta = S("a y + b").with_context(got.context)
    back = substitute(got, {d: beta}).with_context(ctx)
    assert back == point_derivative(S("x^2"), spec(ctx, "x", S("a y + b")))


def test_placeholder_collision(S, ctx):
    d = ctx.fresh_placeholder()
    marked = placeholder_derivative(S("x^2"), ctx["x"], d)
    with pytest.raises(PlaceholderCollisionError):
        placeholder_derivative(marked, ctx["x"], d)
    with pytest.raises(SymbolKindError):
        placeholder_derivative(S("x"), ctx["x"], ctx["y"])


def test_spec_errors(S, ctx):
    with pytest.raises(SymbolKindError):
        DerivativeSpec(ctx["a"], S("1"))
    with pytest.raises(SymbolKindError):
        spec(ctx, "a", 1)
    with pytest.raises(UnknownSymbolError):
        point_derivative(S("x"), DerivativeSpec(Symbol("z", "variable"), S("1")))


def test_zero_series_derivative_is_exact(ctx, S):
    d = point_derivative(Series.zero(ctx), spec(ctx, "x", truncate(S("x"), 2)))
    assert d == Series.zero(ctx) and d.valid_order == INF


def test_valid_order_rules(S, ctx):
    f = truncate(S("x + x^2 + x^5"), 4)
    assert point_derivative(f, spec(ctx, "x", 1)).valid_order == 3
    assert point_derivative(f, spec(ctx, "x", S("y^2"))).valid_order == 5
    assert point_derivative(S("x^3"), spec(ctx, "x", truncate(S("y + y^3"), 2))).valid_order == 2


# -- formula equivalence ------------------------------------------------------


def test_exhaustive_word_equivalence_short(ctx, S):
    betas = [S("1"), S("a"), S("b y - 1/2 x a"), S("x^2 + 3")]
    for w in enumerate_words(ctx, 4):
        f = Series.monomial(ctx, w)
        for var in ("x", "y"):
            for beta in betas:
                ds = spec(ctx, var, beta)
                ref = leibniz_oracle_derivative(f, ds)
                assert point_derivative(f, ds) == ref
                assert grouped_derivative(f, ds) == ref


series = series_strategy()
variables = st.sampled_from(["x", "y"])


@given(series, series, variables)
@settings(max_examples=80, deadline=None)
def test_algorithms_agree_on_series(f, beta, var):
    ds = spec(CTX, var, beta)
    ref = leibniz_oracle_derivative(f, ds)
    assert point_derivative(f, ds) == ref
    assert grouped_derivative(f, ds) == ref


@given(series, series, series, variables)
@settings(max_examples=80, deadline=None)
def test_leibniz_rule(f, g, beta, var):
    ds = spec(CTX, var, beta)
    D = lambda h: point_derivative(h, ds)  # noqa: E731
    assert D(f * g) == D(f) * g + f * D(g)


@given(series, series, series, series, st.fractions(max_denominator=7), variables)
@settings(max_examples=60, deadline=None)
def test_linearity(f, g, b1, b2, c, var):
    x = CTX[var]
    D = lambda h, b: point_derivative(h, DerivativeSpec(x, b))  # noqa: E731
    assert D(f + c * g, b1) == D(f, b1) + c * D(g, b1)
    assert D(f, b1 + b2) == D(f, b1) + D(f, b2)


@given(series, st.fractions(max_denominator=7), variables)
@settings(max_examples=60, deadline=None)
def test_scalar_center(f, c, var):
    one = Series.one(CTX)
    x = CTX[var]
    assert point_derivative(f, DerivativeSpec(x, c * one)) == c * point_derivative(f, DerivativeSpec(x, one))


x_only = series_strategy(letters=[CTX["x"]], max_len=6)


@given(x_only, x_only)
@settings(max_examples=60, deadline=None)
def test_commutative_consistency(f, beta):
    x = CTX["x"]
    assert point_derivative(f, DerivativeSpec(x, beta)) == beta * hausdorff_derivative(f, x)


@given(series, series, variables)
@settings(max_examples=60, deadline=None)
def test_degree_shift(f, beta, var):
    df = point_derivative(f, spec(CTX, var, beta))
    fd = {w.degree for w in f.terms if w.degree >= 1}
    bd = {w.degree for w in beta.terms}
    for w in df.terms:
        assert any(w.degree == d - 1 + m for d in fd for m in bd)


@given(
    series_strategy(truncated=True),
    series_strategy(truncated=True),
    series_strategy(),
    series_strategy(),
    variables,
)
@settings(max_examples=80, deadline=None)
def test_valid_order_is_sound(f, beta, tail_f, tail_b, var):
    # Unknown tails never influence coefficients the result claims to know.
    got = point_derivative(f, spec(CTX, var, beta))
    full = point_derivative(representative(f, tail_f), spec(CTX, var, representative(beta, tail_b)))
    if got.valid_order >= 0:
        assert first_difference(full, got, got.valid_order) is None


@given(series_strategy(truncated=True), series, variables)
@settings(max_examples=40, deadline=None)
def test_algorithms_agree_on_truncated_series(f, beta, var):
    ds = spec(CTX, var, beta)
    ref = leibniz_oracle_derivative(f, ds)
    assert point_derivative(f, ds) == ref
    assert grouped_derivative(f, ds) == ref


def test_fraction_scalars(S, ctx):
    ds = spec(ctx, "x", Fraction(2, 3))
    assert point_derivative(S("x^2"), ds) == S("4/3 x")
