import pytest

from ncpoint import Context, Series, chain_rule_residual, point_derivative, spec
from ncpoint.core import first_difference
from ncpoint.errors import FeasibilityError, NCError
from ncpoint.exprio import decode_report, encode_report
from ncpoint.identities import (
    GenParams,
    random_series,
    run_axiom_suite,
    run_chain_rule_suite,
    run_clairaut_suite,
    run_uniqueness_suite,
)
from ncpoint.mutants import MUTANTS


@pytest.fixture
def params():
    return GenParams(seed=42, max_degree=3)


def test_random_series_degenerate_bounds():
    p = GenParams(seed=1, max_degree=0, max_terms=1)
    for i in range(20):
        f = random_series(p, i)
        assert len(f.terms) == 1
        (w,) = f.terms
        assert w.degree == 0


def test_random_series_is_deterministic(params):
    assert random_series(params, 7) == random_series(params, 7)
    assert random_series(params, 7) != random_series(params, 8)
    again = GenParams(seed=42, max_degree=3)
    assert [random_series(again, i) for i in range(10)] == [random_series(params, i) for i in range(10)]


def test_random_series_bounds():
    p = GenParams(seed=3, max_degree=2, max_terms=3, coeff_bound=1)
    for i in range(50):
        f = random_series(p, i)
        assert 1 <= len(f.terms) <= 3
        assert all(abs(c) == 1 for c in f.terms.values())
        assert all(w.degree <= 2 for w in f.terms)


def test_random_series_empty_alphabet():
    with pytest.raises(NCError):
        random_series(GenParams(alphabet=Context()), 0)


def test_genparams_validation():
    with pytest.raises(ValueError):
        GenParams(max_terms=0)
    with pytest.raises(ValueError):
        GenParams(seed=-1)


@pytest.mark.parametrize("suite", [run_axiom_suite, run_chain_rule_suite, run_clairaut_suite])
def test_zero_trials_pass(suite, params):
    r = suite(params, 0)
    assert r.passed and r.trials == 0 and r.failures == []


def test_suites_pass(params):
    for suite in (run_axiom_suite, run_chain_rule_suite, run_clairaut_suite):
        r = suite(params, 15)
        assert r.passed, r.summary()


def test_uniqueness_small():
    p = GenParams(seed=5, alphabet=Context.declare("a b", "x y"))
    r = run_uniqueness_suite(p, trials=2, max_length=3)
    assert r.passed, r.summary()


def test_uniqueness_feasibility():
    p = GenParams(alphabet=Context.declare("a b c", "x y"))
    with pytest.raises(FeasibilityError):
        run_uniqueness_suite(p, 1)


def test_single_slot_chain_rule(params):
    ctx = params.alphabet
    x = Series.symbol(ctx, "x")
    for i in range(10):
        u, v, beta = (random_series(params, 3 * i + k) for k in range(3))
        assert chain_rule_residual(x, u, v, beta).is_zero()


def test_reports_are_deterministic(params):
    a = run_axiom_suite(params, 10, MUTANTS["forget-prefix"])
    b = run_axiom_suite(params, 10, MUTANTS["forget-prefix"])
    assert a.failures == b.failures and a.failures
    doc_a, doc_b = encode_report(a), encode_report(b)
    doc_a.pop("elapsed"), doc_b.pop("elapsed")
    assert doc_a == doc_b


def test_report_roundtrip(params):
    r = run_axiom_suite(params, 5, MUTANTS["drop-last-insertion"])
    back = decode_report(encode_report(r))
    assert back.failures == r.failures and back.verdict == "fail"


@pytest.mark.parametrize("name", sorted(MUTANTS))
def test_every_suite_catches_every_mutant(name, params):
    mutant = MUTANTS[name]
    assert not run_axiom_suite(params, 20, mutant).passed
    assert not run_chain_rule_suite(params, 20, derivative=mutant).passed
    assert not run_clairaut_suite(params, 20, mutant).passed
    tiny = GenParams(seed=42, alphabet=Context.declare("a", "x"))
    assert not run_uniqueness_suite(tiny, 1, max_length=3, derivative=mutant).passed


def test_drop_last_mutant_on_the_square():
    # Correct: x^2 -> a x + x a at beta = a. The mutant keeps only the first site.
    ctx = Context.declare("a", "x")
    f, beta = Series.monomial(ctx, "x x"), Series.symbol(ctx, "a")
    ds = spec(ctx, "x", beta)
    got = MUTANTS["drop-last-insertion"](f, ds)
    assert got == Series.monomial(ctx, "a x")
    word, expected, actual = first_difference(point_derivative(f, ds), got)
    assert (word.names, expected, actual) == (("x", "a"), 1, 0)


def test_failures_carry_inputs_and_coefficients(params):
    r = run_axiom_suite(params, 3, MUTANTS["drop-last-insertion"])
    f = r.failures[0]
    assert "beta = " in f.inputs and "var = " in f.inputs
    assert f.expected != f.actual
