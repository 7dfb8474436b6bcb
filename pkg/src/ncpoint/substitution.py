"""Composition of series and the residuals of the chain-rule and mixed-partial identities."""

from __future__ import annotations

from collections.abc import Callable, Mapping

from .core import (
    Coefficient,
    Context,
    Order,
    Series,
    Symbol,
    Word,
    effective_min_degree,
    series_add,
)
from .derivation import DerivativeSpec, placeholder_derivative, point_derivative
from .errors import ContextMismatchError, NonconvergentSubstitutionError, SymbolKindError

Derivative = Callable[[Series, DerivativeSpec], Series]


class Assignment(Mapping):
    """Read-only map from variable symbols to the series replacing them.

    Reserved placeholder constants (``__delta<n>``) are also accepted as keys;
    they are how derivatives at a composite are assembled internally.
    """

    def __init__(self, mapping: Mapping[Symbol, Series] | None = None, **by_name: Series):
        items = dict(mapping or {})
        if by_name:
            ctx = next(iter(by_name.values())).context
            for name, value in by_name.items():
                items[ctx[name]] = value
        for key, value in items.items():
            if not isinstance(key, Symbol):
                raise TypeError(f"assignment keys must be symbols, got {key!r}")
            if not (key.is_variable or key.is_placeholder):
                raise SymbolKindError(f"cannot substitute for constant {key.name!r}")
            if not isinstance(value, Series):
                raise TypeError(f"assignment values must be series, got {value!r}")
        self._items = items

    def __getitem__(self, key: Symbol) -> Series:
        return self._items[key]

    def __iter__(self):
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __repr__(self) -> str:
        inner = ", ".join(f"{k.name}: {v!r}" for k, v in self._items.items())
        return f"Assignment({{{inner}}})"


def substitution_order(f: Series, assignment: Mapping[Symbol, Series]) -> Order:
    return min([f.valid_order] + [u.valid_order for u in assignment.values()])


def substitute(f: Series, assignment: Mapping[Symbol, Series]) -> Series:
    """Replace every assigned letter of ``f`` by its series and expand.

    Unassigned letters stand for themselves.  A variable may be sent to a
    series with a degree-0 term only when ``f`` is an exact polynomial;
    otherwise infinitely many words of ``f`` would feed each degree.
    """
    a = assignment if isinstance(assignment, Assignment) else Assignment(assignment)
    ctx = f.context
    for key, u in a.items():
        ctx = ctx.merge(u.context)
    for key in a:
        if key not in ctx:
            raise ContextMismatchError(f"{key.name!r} is not declared in {ctx!r}")
    if not f.is_exact:
        for key, u in a.items():
            if key.is_variable and effective_min_degree(u) < 1:
                raise NonconvergentSubstitutionError(
                    f"{key.name} -> series with a degree-0 term; f must be an exact polynomial"
                )
    vo = substitution_order(f, a)
    images = {key: [(w, w.degree, c) for w, c in u._terms.items()] for key, u in a.items()}

    out: dict[Word, Coefficient] = {}
    for w, c in f._terms.items():
        partial: list[tuple[tuple, int, Coefficient]] = [((), 0, c)]
        for letter in w:
            image = images.get(letter)
            if image is None:
                bump = 1 if letter.is_variable else 0
                partial = [(pw + (letter,), pd + bump, pc) for pw, pd, pc in partial if pd + bump <= vo]
                continue
            grown: dict[tuple, list] = {}
            for pw, pd, pc in partial:
                for iw, idg, ic in image:
                    nd = pd + idg
                    if nd > vo:
                        continue
                    key = pw + iw
                    slot = grown.get(key)
                    if slot is None:
                        grown[key] = [nd, pc * ic]
                    else:
                        slot[1] += pc * ic
            partial = [(k, v[0], v[1]) for k, v in grown.items() if v[1]]
            if not partial:
                break
        for pw, _, pc in partial:
            key = Word(pw)
            s = out.get(key, 0) + pc
            if s:
                out[key] = s
            else:
                del out[key]
    return Series._raw(ctx, out, vo)


def _resolve(ctx: Context, name: Symbol | str | None, default: str) -> Symbol:
    if isinstance(name, Symbol):
        return name
    return ctx.variable(name or default)


def insertion_partial(
    f: Series,
    variable: Symbol,
    gamma: Series,
    assignment: Mapping[Symbol, Series],
) -> Series:
    """Derivative of the composite ``f(assignment)`` taken at the slots of ``variable``.

    Each occurrence of ``variable`` in a word of ``f`` contributes
    ``prefix(assignment) * gamma * suffix(assignment)``.
    """
    ctx = f.context.merge(gamma.context)
    for u in assignment.values():
        ctx = ctx.merge(u.context)
    delta = ctx.fresh_placeholder()
    marked = placeholder_derivative(f.with_context(ctx), variable, delta)
    full = dict(assignment)
    full[delta] = gamma
    result = substitute(marked, Assignment(full))
    return result.with_context(ctx)


def chain_rule_residual(
    f: Series,
    u: Series,
    v: Series,
    beta: Series,
    x: Symbol | str | None = None,
    y: Symbol | str | None = None,
    derivative: Derivative = point_derivative,
) -> Series:
    """``d f(u,v)/d_beta x`` minus the sum of the two slot insertions.

    Returns the difference so that a nonzero coefficient can be reported.
    """
    ctx = f.context.merge(u.context).merge(v.context).merge(beta.context)
    xs, ys = _resolve(ctx, x, "x"), _resolve(ctx, y, "y")
    a = Assignment({xs: u, ys: v})
    bx = DerivativeSpec(xs, beta)
    lhs = derivative(substitute(f, a), bx)
    rhs = series_add(
        insertion_partial(f, xs, derivative(u, bx), a),
        insertion_partial(f, ys, derivative(v, bx), a),
    )
    return lhs - rhs


def mixed_partial_sides(
    f: Series,
    beta: Series,
    gamma: Series,
    x: Symbol | str | None = None,
    y: Symbol | str | None = None,
    derivative: Derivative = point_derivative,
) -> tuple[Series, Series]:
    """The commutator of the two mixed second partials, and its first-order correction."""
    ctx = f.context.merge(beta.context).merge(gamma.context)
    xs, ys = _resolve(ctx, x, "x"), _resolve(ctx, y, "y")
    bx = DerivativeSpec(xs, beta)
    gy = DerivativeSpec(ys, gamma)
    commutator = derivative(derivative(f, bx), gy) - derivative(derivative(f, gy), bx)
    correction = derivative(f, DerivativeSpec(xs, derivative(beta, gy))) - derivative(
        f, DerivativeSpec(ys, derivative(gamma, bx))
    )
    return commutator, correction


def mixed_partial_residual(
    f: Series,
    beta: Series,
    gamma: Series,
    x: Symbol | str | None = None,
    y: Symbol | str | None = None,
    derivative: Derivative = point_derivative,
) -> Series:
    commutator, correction = mixed_partial_sides(f, beta, gamma, x, y, derivative)
    return commutator - correction


__all__ = [
    "Assignment",
    "substitute",
    "substitution_order",
    "insertion_partial",
    "chain_rule_residual",
    "mixed_partial_sides",
    "mixed_partial_residual",
]
