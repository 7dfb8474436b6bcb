"""Words over a declared alphabet and truncated noncommutative power series.

A :class:`Series` is a finitely supported map from words to exact rationals
together with a *valid order*: every coefficient of a word whose variable
degree is at most ``valid_order`` is known exactly, anything above it is
unknown.  Exact polynomials carry ``valid_order == INF``.  Ring operations
propagate the valid order so that no untrusted coefficient is ever reported.
"""

from __future__ import annotations

import itertools
import math
import re
from collections.abc import Iterable, Iterator, Mapping
from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import NamedTuple, Union

from gmpy2 import mpq

from .errors import (
    ContextMismatchError,
    InsufficientPrecisionError,
    NonconvergentSubstitutionError,
    SymbolKindError,
    UnknownSymbolError,
)

INF = math.inf

CONSTANT = "constant"
VARIABLE = "variable"

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_PLACEHOLDER_RE = re.compile(r"__delta[0-9]+\Z")

Order = Union[int, float]
Scalar = Union[int, Fraction, "mpq"]
Coefficient = type(mpq(0))
_SCALARS = (int, Fraction, Coefficient)
_ONE = mpq(1)


class _SymbolFields(NamedTuple):
    name: str
    kind: str


class Symbol(_SymbolFields):
    """One alphabet letter, either a constant or a variable.

    Names in the reserved ``__delta<n>`` namespace are accepted only for
    constants; the parser never produces them, which keeps placeholders fresh.
    """

    __slots__ = ()

    def __new__(cls, name: str, kind: str = CONSTANT) -> "Symbol":
        if kind not in (CONSTANT, VARIABLE):
            raise ValueError(f"unknown symbol kind {kind!r}")
        if not isinstance(name, str):
            raise TypeError("symbol name must be a string")
        if _PLACEHOLDER_RE.match(name):
            if kind != CONSTANT:
                raise ValueError("placeholder symbols must be constants")
        elif not _NAME_RE.match(name):
            raise ValueError(f"invalid symbol name {name!r}")
        return super().__new__(cls, name, kind)

    @property
    def is_variable(self) -> bool:
        return self.kind == VARIABLE

    @property
    def is_placeholder(self) -> bool:
        return _PLACEHOLDER_RE.match(self.name) is not None

    def __repr__(self) -> str:
        return f"Symbol({self.name!r}, {self.kind!r})"

    def __str__(self) -> str:
        return self.name


def placeholder_symbol(index: int) -> Symbol:
    return Symbol(f"__delta{index}", CONSTANT)


class Word(tuple):
    """An element of the free monoid: a tuple of :class:`Symbol`."""

    __slots__ = ()

    def __new__(cls, letters: Iterable[Symbol] = ()) -> "Word":
        return super().__new__(cls, letters)

    @property
    def degree(self) -> int:
        """Number of variable letters (the grading used throughout)."""
        d = _DEGREES.get(self)
        if d is None:
            d = _DEGREES[self] = sum(1 for s in self if s.kind == VARIABLE)
        return d

    def degree_in(self, variable: Symbol) -> int:
        return sum(1 for s in self if s == variable)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self)

    def __add__(self, other: tuple) -> "Word":
        return Word(tuple.__add__(self, other))

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(tuple.__getitem__(self, item))
        return tuple.__getitem__(self, item)

    def __str__(self) -> str:
        return " ".join(self.names) if self else "1"

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


_DEGREES: dict[Word, int] = {}

EMPTY_WORD = Word()


def graded_key(word: Word) -> tuple:
    """Sort key for the canonical graded-lexicographic term order."""
    return (word.degree, word.names)


class Context:
    """An ordered, finite alphabet with unique names."""

    __slots__ = ("_symbols", "_by_name")

    def __init__(self, symbols: Iterable[Symbol] = ()):
        syms = tuple(symbols)
        by_name: dict[str, Symbol] = {}
        for s in syms:
            if not isinstance(s, Symbol):
                raise TypeError(f"expected Symbol, got {s!r}")
            if s.name in by_name:
                raise ValueError(f"duplicate symbol name {s.name!r}")
            by_name[s.name] = s
        self._symbols = syms
        self._by_name = by_name

    @classmethod
    def declare(cls, constants: str | Iterable[str] = (), variables: str | Iterable[str] = ()) -> "Context":
        """Build a context from names, e.g. ``Context.declare("a b", "x y")``."""
        if isinstance(constants, str):
            constants = constants.split()
        if isinstance(variables, str):
            variables = variables.split()
        return cls([Symbol(n, CONSTANT) for n in constants] + [Symbol(n, VARIABLE) for n in variables])

    @property
    def symbols(self) -> tuple[Symbol, ...]:
        return self._symbols

    @property
    def constants(self) -> tuple[Symbol, ...]:
        return tuple(s for s in self._symbols if not s.is_variable)

    @property
    def variables(self) -> tuple[Symbol, ...]:
        return tuple(s for s in self._symbols if s.is_variable)

    def __getitem__(self, name: str) -> Symbol:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownSymbolError(f"symbol {name!r} is not declared") from None

    def get(self, name: str) -> Symbol | None:
        return self._by_name.get(name)

    def variable(self, name: str) -> Symbol:
        sym = self[name]
        if not sym.is_variable:
            raise SymbolKindError(f"{name!r} is a constant, not a variable")
        return sym

    def __contains__(self, item) -> bool:
        if isinstance(item, Symbol):
            return self._by_name.get(item.name) == item
        return item in self._by_name

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self._symbols)

    def __len__(self) -> int:
        return len(self._symbols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Context):
            return NotImplemented
        return self._symbols == other._symbols

    def __hash__(self) -> int:
        return hash(self._symbols)

    def __repr__(self) -> str:
        inner = ", ".join(f"{s.name}:{s.kind[0]}" for s in self._symbols)
        return f"Context({inner})"

    def extend(self, *symbols: Symbol) -> "Context":
        new = [s for s in symbols if s not in self]
        return Context(self._symbols + tuple(new)) if new else self

    def merge(self, other: "Context") -> "Context":
        """Return the larger of two contexts when one extends the other."""
        if self is other or self._symbols == other._symbols:
            return self
        n, m = len(self._symbols), len(other._symbols)
        if n < m and other._symbols[:n] == self._symbols:
            return other
        if m < n and self._symbols[:m] == other._symbols:
            return self
        raise ContextMismatchError(f"incompatible contexts {self!r} and {other!r}")

    def word(self, *names: str) -> Word:
        """``ctx.word("a", "x")`` or ``ctx.word("a x")``."""
        if len(names) == 1:
            names = tuple(names[0].split())
        return Word(self[n] for n in names)

    def fresh_placeholder(self) -> Symbol:
        for i in itertools.count():
            if f"__delta{i}" not in self._by_name:
                return placeholder_symbol(i)
        raise AssertionError("unreachable")


def word_concat(w1: Word, w2: Word, context: Context | None = None) -> Word:
    if context is not None:
        for s in itertools.chain(w1, w2):
            if s not in context:
                raise ContextMismatchError(f"letter {s.name!r} is not in {context!r}")
    else:
        seen: dict[str, str] = {}
        for s in itertools.chain(w1, w2):
            if seen.setdefault(s.name, s.kind) != s.kind:
                raise ContextMismatchError(f"letter {s.name!r} used with two kinds")
    return Word(tuple(w1) + tuple(w2))


def total_var_degree(w: Word) -> int:
    return sum(1 for s in w if s.kind == VARIABLE)


def _as_coeff(c) -> Coefficient:
    if isinstance(c, Coefficient):
        return c
    if isinstance(c, (int, Rational)) and not isinstance(c, bool):
        return mpq(c.numerator, c.denominator)
    raise TypeError(f"coefficients must be exact rationals, got {c!r}")


def _check_order(valid_order) -> Order:
    if valid_order == INF:
        return INF
    if isinstance(valid_order, bool) or not isinstance(valid_order, int):
        raise TypeError(f"valid_order must be an int or INF, got {valid_order!r}")
    if valid_order < -1:
        raise ValueError("valid_order must be >= -1")
    return valid_order


class Series:
    """Truncated noncommutative formal power series with rational coefficients.

    ``valid_order`` is the largest variable degree whose coefficients are
    trusted; ``-1`` means nothing is trusted and ``INF`` marks an exact
    polynomial.  Instances are immutable.
    """

    __slots__ = ("context", "_terms", "valid_order")

    def __init__(self, context: Context, terms: Mapping | Iterable = (), valid_order: Order = INF):
        vo = _check_order(valid_order)
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Word, Coefficient] = {}
        for w, c in items:
            w = Word(w)
            for s in w:
                if s not in context:
                    raise ContextMismatchError(f"letter {s!r} is not declared in {context!r}")
            if w.degree > vo:
                continue
            c = clean.get(w, 0) + _as_coeff(c)
            if c:
                clean[w] = c
            else:
                clean.pop(w, None)
        self.context = context
        self._terms = clean
        self.valid_order = vo

    @classmethod
    def _raw(cls, context: Context, terms: dict, valid_order: Order) -> "Series":
        # Caller guarantees: Word keys, nonzero mpq coefficients, degrees <= valid_order.
        obj = object.__new__(cls)
        obj.context = context
        obj._terms = terms
        obj.valid_order = valid_order
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, context: Context) -> "Series":
        return cls._raw(context, {}, INF)

    @classmethod
    def one(cls, context: Context) -> "Series":
        return cls.scalar(context, 1)

    @classmethod
    def scalar(cls, context: Context, c: Scalar) -> "Series":
        c = _as_coeff(c)
        return cls._raw(context, {EMPTY_WORD: c} if c else {}, INF)

    @classmethod
    def monomial(cls, context: Context, word: Word | str, coeff: Scalar = 1) -> "Series":
        if isinstance(word, str):
            word = context.word(word)
        return cls(context, {word: coeff})

    @classmethod
    def _word(cls, context: Context, word: Word, coeff=None) -> "Series":
        # Unchecked monomial for hot paths; ``word`` must already be a Word over ``context``.
        return cls._raw(context, {word: coeff if coeff is not None else _ONE}, INF)

    @classmethod
    def symbol(cls, context: Context, name: str) -> "Series":
        return cls._raw(context, {Word((context[name],)): mpq(1)}, INF)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Mapping[Word, Coefficient]:
        return MappingProxyType(self._terms)

    @property
    def is_exact(self) -> bool:
        return self.valid_order == INF

    def is_zero(self) -> bool:
        """True when no coefficient is stored (zero up to the valid order)."""
        return not self._terms

    @property
    def min_degree(self) -> Order:
        return series_min_degree(self)

    def max_degree(self) -> int:
        return max((w.degree for w in self._terms), default=0)

    def coefficient(self, word: Word) -> Coefficient:
        if word.degree > self.valid_order:
            raise InsufficientPrecisionError(
                f"coefficient of degree {word.degree} requested, valid only up to {self.valid_order}"
            )
        return self._terms.get(word, mpq(0))

    def sorted_terms(self) -> list[tuple[Word, Coefficient]]:
        return sorted(self._terms.items(), key=lambda kv: graded_key(kv[0]))

    def symbols_used(self) -> set[Symbol]:
        return {s for w in self._terms for s in w}

    def truncate(self, n: Order) -> "Series":
        return truncate(self, n)

    def with_context(self, context: Context) -> "Series":
        """Re-home this series into ``context``, which must declare every letter used."""
        for s in self.symbols_used():
            if s not in context:
                raise ContextMismatchError(f"letter {s!r} is not declared in {context!r}")
        return Series._raw(context, self._terms, self.valid_order)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Series | None":
        if isinstance(other, Series):
            return other
        if isinstance(other, _SCALARS) and not isinstance(other, bool):
            return Series.scalar(self.context, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else series_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return series_scale(self, -1)

    def __sub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else series_add(self, series_scale(other, -1))

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else series_add(other, series_scale(self, -1))

    def __mul__(self, other):
        if isinstance(other, _SCALARS) and not isinstance(other, bool):
            return series_scale(self, other)
        if isinstance(other, Series):
            return series_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, _SCALARS) and not isinstance(other, bool):
            return series_scale(self, other)
        return NotImplemented

    def __pow__(self, n: int) -> "Series":
        return series_power(self, n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return (
            self.valid_order == other.valid_order
            and self._terms == other._terms
            and self.context == other.context
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        from .exprio.printer import print_series

        return f"Series({print_series(self)!r})"


def _compatible(f: Series, g: Series) -> Context:
    return f.context.merge(g.context)


def series_min_degree(f: Series) -> Order:
    """Minimum variable degree over the stored support; INF for no terms."""
    return min((w.degree for w in f._terms), default=INF)


def effective_min_degree(f: Series) -> Order:
    """Lower bound on the degree of any nonzero coefficient, known or not.

    Equals :func:`series_min_degree` whenever some term is stored; for a
    series with no stored terms it is ``valid_order + 1``.
    """
    return min(series_min_degree(f), f.valid_order + 1)


def truncate(f: Series, n: Order) -> Series:
    n = _check_order(n)
    if n >= f.valid_order:
        return f
    return Series._raw(f.context, {w: c for w, c in f._terms.items() if w.degree <= n}, n)


def series_add(f: Series, g: Series) -> Series:
    ctx = _compatible(f, g)
    vo = min(f.valid_order, g.valid_order)
    if vo == INF:
        out = dict(f._terms)
        items = g._terms.items()
    else:
        out = {w: c for w, c in f._terms.items() if w.degree <= vo}
        items = [(w, c) for w, c in g._terms.items() if w.degree <= vo]
    for w, c in items:
        s = out.get(w, 0) + c
        if s:
            out[w] = s
        else:
            del out[w]
    return Series._raw(ctx, out, vo)


def series_scale(f: Series, c: Scalar) -> Series:
    c = _as_coeff(c)
    if not c:
        return Series.zero(f.context)
    return Series._raw(f.context, {w: c * v for w, v in f._terms.items()}, f.valid_order)


def mul_order(f: Series, g: Series) -> Order:
    if f.valid_order == INF and g.valid_order == INF:
        return INF
    return min(f.valid_order + effective_min_degree(g), g.valid_order + effective_min_degree(f))


def _graded(terms: Mapping[Word, Coefficient]) -> list[tuple[Word, int, Coefficient]]:
    return [(w, w.degree, c) for w, c in terms.items()]


def _convolve(left, right, limit: Order) -> dict[Word, Coefficient]:
    """Product of two (word, degree, coeff) lists, dropping degrees above ``limit``."""
    out: dict[Word, Coefficient] = {}
    bounded = limit != INF
    for w1, d1, c1 in left:
        for w2, d2, c2 in right:
            if bounded and d1 + d2 > limit:
                continue
            w = Word(tuple.__add__(w1, w2))
            s = out.get(w, 0) + c1 * c2
            if s:
                out[w] = s
            else:
                del out[w]
    return out


def series_mul(f: Series, g: Series) -> Series:
    """Noncommutative (Cauchy over concatenation) product with order propagation."""
    ctx = _compatible(f, g)
    vo = mul_order(f, g)
    if vo == INF:
        out: dict[Word, Coefficient] = {}
        for w1, c1 in f._terms.items():
            for w2, c2 in g._terms.items():
                w = Word(tuple.__add__(w1, w2))
                s = out.get(w, 0) + c1 * c2
                if s:
                    out[w] = s
                else:
                    del out[w]
        return Series._raw(ctx, out, INF)
    return Series._raw(ctx, _convolve(_graded(f._terms), _graded(g._terms), vo), vo)


def series_power(f: Series, n: int) -> Series:
    if n < 0:
        raise ValueError("negative powers are not supported; use geometric_inverse")
    result = Series.one(f.context)
    for _ in range(n):
        result = series_mul(result, f)
    return result


def geometric_inverse(g: Series, order: int) -> Series:
    """``(1 - g)^{-1} = sum_k g^k`` truncated at variable degree ``order``.

    ``g`` must have no degree-0 terms, otherwise the degree-0 part of the sum
    would be infinite.
    """
    if isinstance(order, bool) or not isinstance(order, int) or order < 0:
        raise ValueError("order must be a natural number")
    if series_min_degree(g) == 0:
        raise NonconvergentSubstitutionError(
            "geometric inverse needs a series without degree-0 terms"
        )
    vo = min(order, g.valid_order)
    one = Series.one(g.context)
    result = one
    power = one
    g_items = _graded(g._terms)
    for _ in range(vo):
        power = Series._raw(g.context, _convolve(_graded(power._terms), g_items, vo), vo)
        if not power._terms:
            break
        result = series_add(result, power)
    return truncate(result, vo)


def series_eq_up_to(f: Series, g: Series, n: int) -> bool:
    """Compare every coefficient of variable degree ``<= n``.

    Raises :class:`InsufficientPrecisionError` rather than comparing
    coefficients that either side does not trust.
    """
    _compatible(f, g)
    if n > f.valid_order or n > g.valid_order:
        raise InsufficientPrecisionError(
            f"cannot compare up to degree {n}: valid orders are {f.valid_order} and {g.valid_order}"
        )
    a = {w: c for w, c in f._terms.items() if w.degree <= n}
    b = {w: c for w, c in g._terms.items() if w.degree <= n}
    return a == b


def first_difference(expected: Series, actual: Series, n: Order | None = None):
    """First ``(word, expected_coeff, actual_coeff)`` that differs, in graded-lex order.

    ``n`` defaults to the common valid order.  Returns ``None`` on agreement.
    """
    if n is None:
        n = min(expected.valid_order, actual.valid_order)
    elif n > min(expected.valid_order, actual.valid_order):
        raise InsufficientPrecisionError(f"cannot compare up to degree {n}")
    words = {w for w in expected._terms if w.degree <= n} | {w for w in actual._terms if w.degree <= n}
    for w in sorted(words, key=graded_key):
        e = expected._terms.get(w, mpq(0))
        a = actual._terms.get(w, mpq(0))
        if e != a:
            return w, e, a
    return None


def enumerate_words(symbols: Iterable[Symbol], max_length: int) -> Iterator[Word]:
    """All words of length ``0..max_length`` over ``symbols``, shortest first."""
    letters = tuple(symbols)
    for length in range(max_length + 1):
        for combo in itertools.product(letters, repeat=length):
            yield Word(combo)
