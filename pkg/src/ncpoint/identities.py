"""Seeded random series and the suites that check the derivative identities.

Randomness comes from :class:`random.Random` seeded with the string
``"<seed>/<stream>"``; string seeds are hashed with SHA-512 by the standard
library, so streams are reproducible across runs and platforms.
"""

from __future__ import annotations

import random
import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .core import (
    Context,
    Series,
    Symbol,
    enumerate_words,
    first_difference,
    geometric_inverse,
)
from .derivation import (
    DerivativeSpec,
    grouped_derivative,
    leibniz_oracle_derivative,
    point_derivative,
)
from .errors import FeasibilityError, NCError
from .exprio.printer import format_word, print_series
from .report import CheckReport, Failure
from .substitution import chain_rule_residual, mixed_partial_sides

Derivative = Callable[[Series, DerivativeSpec], Series]

UNIQUENESS_MAX_LETTERS = 4


def default_alphabet() -> Context:
    return Context.declare("a b", "x y")


@dataclass(frozen=True)
class GenParams:
    seed: int = 0
    max_degree: int = 3
    max_terms: int = 4
    coeff_bound: int = 5
    alphabet: Context = field(default_factory=default_alphabet)
    max_constants: int = 2  # constant letters per generated word

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.max_degree < 0 or self.max_terms < 1 or self.coeff_bound < 1:
            raise ValueError("need max_degree >= 0, max_terms >= 1, coeff_bound >= 1")


def _rng(params: GenParams, stream: str | int) -> random.Random:
    return random.Random(f"{params.seed}/{stream}")


def random_rational(rng: random.Random, bound: int) -> Fraction:
    return Fraction(rng.randint(1, bound) * rng.choice((1, -1)), rng.randint(1, bound))


def random_series(
    params: GenParams,
    stream_index: int,
    letters: Sequence[Symbol] | None = None,
    max_degree: int | None = None,
) -> Series:
    """A random exact polynomial, fully determined by ``(params, stream_index)``.

    ``letters`` restricts the letters used (default: the whole alphabet).
    """
    ctx = params.alphabet
    pool = tuple(ctx) if letters is None else tuple(letters)
    if not pool:
        raise NCError("cannot generate series over an empty alphabet")
    variables = [s for s in pool if s.is_variable]
    constants = [s for s in pool if not s.is_variable]
    top = params.max_degree if max_degree is None else max_degree
    rng = _rng(params, stream_index)
    terms: dict = {}
    for _ in range(rng.randint(1, params.max_terms)):
        degree = rng.randint(0, top) if variables else 0
        n_const = rng.randint(0, params.max_constants) if constants else 0
        word = [rng.choice(variables) for _ in range(degree)]
        word += [rng.choice(constants) for _ in range(n_const)]
        rng.shuffle(word)
        key = tuple(word)
        if key not in terms:
            terms[key] = random_rational(rng, params.coeff_bound)
    return Series(ctx, terms)


# -- reporting helpers --------------------------------------------------------


def _describe(**named) -> str:
    parts = []
    for name, value in named.items():
        if isinstance(value, Series):
            value = print_series(value)
        elif isinstance(value, Symbol):
            value = value.name
        parts.append(f"{name} = {value}")
    return "; ".join(parts)


class _Recorder:
    def __init__(self):
        self.failures: list[Failure] = []

    def compare(self, label: str, expected: Series, actual: Series, inputs: Callable[[], str], upto=None):
        diff = first_difference(expected, actual, upto)
        if diff is not None:
            word, e, a = diff
            self.failures.append(Failure(f"{label}: {inputs()}", format_word(word), str(e), str(a)))

    def vanishes(self, label: str, residual: Series, inputs: Callable[[], str], upto=None):
        self.compare(label, Series.zero(residual.context), residual, inputs, upto)

    def report(self, name: str, trials: int, started: float) -> CheckReport:
        return CheckReport(name, trials, sorted(self.failures), time.perf_counter() - started)


def _variable(params: GenParams, name: str) -> Symbol:
    return params.alphabet.variable(name)


# -- suites -------------------------------------------------------------------


def run_axiom_suite(params: GenParams, trials: int, derivative: Derivative = point_derivative) -> CheckReport:
    """Derivation axioms: Leibniz, linearity in f and beta, scalar centre, constants, ``D x = beta``."""
    started = time.perf_counter()
    rec = _Recorder()
    ctx = params.alphabet
    variables = ctx.variables
    if not variables:
        raise NCError("the axiom suite needs at least one variable")
    one = Series.one(ctx)
    for t in range(trials):
        f, g, beta, beta2 = (random_series(params, 8 * t + k) for k in range(4))
        rng = _rng(params, f"axioms/{t}")
        x = rng.choice(variables)
        c = random_rational(rng, params.coeff_bound)

        def D(h: Series, b: Series = beta) -> Series:
            return derivative(h, DerivativeSpec(x, b))

        def inputs(**extra):
            return lambda: _describe(var=x, f=f, g=g, beta=beta, **extra)

        rec.compare("leibniz", D(f) * g + f * D(g), D(f * g), inputs())
        rec.compare("linearity-f", D(f) + c * D(g), D(f + c * g), inputs(c=c))
        rec.compare("linearity-beta", D(f) + D(f, beta2), D(f, beta + beta2), inputs(beta2=beta2))
        rec.compare("scalar-center", c * D(f, one), D(f, c * one), inputs(c=c))
        for a in ctx.constants:
            rec.compare("constant", Series.zero(ctx), D(Series.symbol(ctx, a.name)), inputs(constant=a))
        rec.compare("constant", Series.zero(ctx), D(one), inputs(constant=1))
        rec.compare("variable", beta, D(Series.symbol(ctx, x.name)), inputs())
    return rec.report("axioms", trials, started)


def run_uniqueness_suite(
    params: GenParams,
    trials: int = 5,
    max_length: int = 6,
    derivative: Derivative = point_derivative,
) -> CheckReport:
    """Agreement of the three derivative algorithms.

    Every word of length ``<= max_length`` and one random series are
    differentiated, for each variable and for ``trials`` random points
    ``beta``; the product-rule recursion is the reference.
    """
    ctx = params.alphabet
    if len(ctx) > UNIQUENESS_MAX_LETTERS:
        raise FeasibilityError(
            f"exhaustive enumeration needs at most {UNIQUENESS_MAX_LETTERS} letters, got {len(ctx)}"
        )
    started = time.perf_counter()
    rec = _Recorder()
    words = list(enumerate_words(ctx, max_length))
    for t in range(trials):
        beta = random_series(params, 8 * t)
        sample = random_series(params, 8 * t + 1)
        for x in ctx.variables:
            ds = DerivativeSpec(x, beta)
            cases = [Series.monomial(ctx, w) for w in words] + [sample]
            for f in cases:
                reference = leibniz_oracle_derivative(f, ds)

                def inputs(f=f, x=x, beta=beta):
                    return _describe(var=x, f=f, beta=beta)

                rec.compare("positional", reference, derivative(f, ds), inputs)
                rec.compare("grouped", reference, grouped_derivative(f, ds), inputs)
    return rec.report("uniqueness", trials, started)


def run_chain_rule_suite(
    params: GenParams,
    trials: int,
    order: int = 4,
    derivative: Derivative = point_derivative,
) -> CheckReport:
    """Chain rule for ``f(u, v)`` on random polynomials, plus one genuine series per trial.

    The series case uses ``u = (1 - x)^{-1} - 1`` and ``v = y`` and is
    checked up to variable degree ``order``.
    """
    started = time.perf_counter()
    rec = _Recorder()
    ctx = params.alphabet
    x, y = _variable(params, "x"), _variable(params, "y")
    f_letters = list(ctx.constants) + [x, y]
    u_series = geometric_inverse(Series.symbol(ctx, "x"), order + 1) - 1
    v_series = Series.symbol(ctx, "y")
    for t in range(trials):
        f = random_series(params, 8 * t, letters=f_letters)
        u, v, beta = (random_series(params, 8 * t + k) for k in (1, 2, 3))
        residual = chain_rule_residual(f, u, v, beta, x, y, derivative=derivative)
        rec.vanishes("chain", residual, lambda: _describe(f=f, u=u, v=v, beta=beta))

        residual = chain_rule_residual(f, u_series, v_series, beta, x, y, derivative=derivative)
        rec.vanishes(
            "chain-series",
            residual,
            lambda: _describe(f=f, u="inv1m(x) - 1", v=v_series, beta=beta, order=order),
            upto=order,
        )
    return rec.report("chain", trials, started)


def run_clairaut_suite(params: GenParams, trials: int, derivative: Derivative = point_derivative) -> CheckReport:
    """Mixed partials: commutator equals the first-order correction.

    Each trial also runs ``beta = gamma = 1``, where both sides must vanish
    and the two second partials coincide.
    """
    started = time.perf_counter()
    rec = _Recorder()
    ctx = params.alphabet
    x, y = _variable(params, "x"), _variable(params, "y")
    one = Series.one(ctx)
    for t in range(trials):
        f, beta, gamma = (random_series(params, 8 * t + k) for k in range(3))
        commutator, correction = mixed_partial_sides(f, beta, gamma, x, y, derivative=derivative)
        rec.compare("clairaut", correction, commutator, lambda: _describe(f=f, beta=beta, gamma=gamma))

        first_y = derivative(derivative(f, DerivativeSpec(x, one)), DerivativeSpec(y, one))
        first_x = derivative(derivative(f, DerivativeSpec(y, one)), DerivativeSpec(x, one))
        rec.compare("classical", first_x, first_y, lambda: _describe(f=f, beta=1, gamma=1))
        commutator, correction = mixed_partial_sides(f, one, one, x, y, derivative=derivative)
        rec.vanishes("classical-correction", correction, lambda: _describe(f=f, beta=1, gamma=1))
    return rec.report("clairaut", trials, started)


SUITES = ("axioms", "uniqueness", "chain", "clairaut")


def run_suite(
    name: str,
    params: GenParams,
    trials: int,
    order: int = 4,
    derivative: Derivative = point_derivative,
) -> CheckReport:
    if name == "axioms":
        return run_axiom_suite(params, trials, derivative)
    if name == "uniqueness":
        return run_uniqueness_suite(params, trials, derivative=derivative)
    if name == "chain":
        return run_chain_rule_suite(params, trials, order, derivative)
    if name == "clairaut":
        return run_clairaut_suite(params, trials, derivative)
    raise ValueError(f"unknown suite {name!r}")
