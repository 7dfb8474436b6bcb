"""Deliberately wrong derivative operators.

The verification suites must reject each of these; a suite that passes a
mutant is vacuous.
"""

from __future__ import annotations

from .core import EMPTY_WORD, Coefficient, Series, Word, series_add, series_mul, truncate
from .derivation import DerivativeSpec, _prepare


def _insert(f: Series, ds: DerivativeSpec, keep_prefix: bool, skip_last: bool) -> Series:
    ctx, vo = _prepare(f, ds)
    out: dict[Word, Coefficient] = {}
    for w, c in f._terms.items():
        sites = [p for p, letter in enumerate(w) if letter == ds.variable]
        if skip_last:
            sites = sites[:-1]
        for p in sites:
            prefix = tuple(w[:p]) if keep_prefix else ()
            suffix = tuple(w[p + 1:])
            for bw, bc in ds.beta._terms.items():
                key = Word(prefix + tuple(bw) + suffix)
                if key.degree > vo:
                    continue
                s = out.get(key, 0) + c * bc
                if s:
                    out[key] = s
                else:
                    del out[key]
    return Series._raw(ctx, out, vo)


def drop_last_insertion(f: Series, ds: DerivativeSpec) -> Series:
    """Skips the last occurrence of the variable in every word."""
    return _insert(f, ds, keep_prefix=True, skip_last=True)


def forget_prefix(f: Series, ds: DerivativeSpec) -> Series:
    """Keeps only ``beta * suffix`` at each insertion site."""
    return _insert(f, ds, keep_prefix=False, skip_last=False)


def swapped_leibniz(f: Series, ds: DerivativeSpec) -> Series:
    """Product rule with operands swapped: ``d(s w) = w d(s) + d(w) s``."""
    ctx, vo = _prepare(f, ds)
    beta = ds.beta.with_context(ctx)
    zero = Series.zero(ctx)

    def d(word: Word) -> Series:
        if not word:
            return zero
        head, rest = word[:1], word[1:]
        d_head = beta if head[0] == ds.variable else zero
        return series_add(
            series_mul(Series._word(ctx, rest), d_head),
            series_mul(d(rest), Series._word(ctx, head)),
        )

    total = zero
    for w, c in f._terms.items():
        total = series_add(total, series_mul(Series._word(ctx, EMPTY_WORD, c), d(w)))
    return truncate(total, vo)


MUTANTS = {
    "drop-last-insertion": drop_last_insertion,
    "forget-prefix": forget_prefix,
    "swap-leibniz-operands": swapped_leibniz,
}
