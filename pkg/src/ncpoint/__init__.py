"""Point-derivatives of noncommutative formal power series.

Exact rational arithmetic on truncated series over a declared alphabet of
constants and variables, the beta-dependent derivative operators and their
partial versions, composition, and suites that check the chain rule and
mixed-partial identities by direct computation.
"""

from .core import (
    CONSTANT,
    INF,
    VARIABLE,
    Context,
    Series,
    Symbol,
    Word,
    enumerate_words,
    geometric_inverse,
    series_add,
    series_eq_up_to,
    series_min_degree,
    series_mul,
    total_var_degree,
    truncate,
    word_concat,
)
from .derivation import (
    DerivativeSpec,
    grouped_derivative,
    hausdorff_derivative,
    leibniz_oracle_derivative,
    placeholder_derivative,
    point_derivative,
    second_partial,
    spec,
)
from .errors import NCError
from .substitution import (
    Assignment,
    chain_rule_residual,
    insertion_partial,
    mixed_partial_residual,
    substitute,
)

__version__ = "0.1.0"
