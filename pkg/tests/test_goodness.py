import math
from fractions import Fraction

import pytest

from diagcat.characters import char_closed_form, char_from_model
from diagcat.diagram import Diagram
from diagcat.endalg import quotient_algebra
from diagcat.goodness import (check_goodness, check_loyal, fit_rational,
                              trace_series)
from diagcat.models import endo_model
from diagcat.spans import (enumerate_generic, enumerate_partition,
                           enumerate_permutations)


def test_fit_fibonacci():
    fib = [0, 1]
    while len(fib) < 12:
        fib.append(fib[-1] + fib[-2])
    fit = fit_rational(fib)
    assert fit.is_rational
    assert fit.p == [Fraction(0), Fraction(1)]
    assert fit.q == [Fraction(1), Fraction(-1), Fraction(-1)]
    assert fit.recurrence == [Fraction(1), Fraction(1)]
    assert fit.good_function
    assert fit.loyal
    assert "P=[0, 1]" in fit.summary()


def test_fit_geometric():
    fit = fit_rational([3 * 2 ** k for k in range(10)])
    assert fit.p == [Fraction(3)]
    assert fit.q == [Fraction(1), Fraction(-2)]
    assert fit.good_function


def test_fit_finite_series_loyalty_cutoff():
    # affine polynomial part: loyal but not a good function
    fit = fit_rational([0, 2, 0, 0, 0, 0, 0])
    assert fit.is_rational
    assert fit.q == [Fraction(1)]
    assert not fit.deg_p_le_deg_q
    assert not fit.good_function
    assert fit.loyal
    # quadratic polynomial part: no longer loyal
    quad = fit_rational([0, 0, 3, 0, 0, 0, 0, 0])
    assert quad.is_rational and not quad.loyal


def test_fit_factorials_not_rational():
    fit = fit_rational([math.factorial(k) for k in range(10)])
    assert not fit.is_rational
    assert "no rational fit" in fit.summary()


def test_fit_double_pole_not_squarefree():
    fit = fit_rational([k + 1 for k in range(10)])
    assert fit.is_rational
    assert fit.q == [Fraction(1), Fraction(-2), Fraction(1)]
    assert not fit.q_squarefree
    assert fit.good_function is False
    assert not fit.loyal


def test_fit_all_ones():
    fit = fit_rational([1] * 8)
    assert fit.p == [Fraction(1)]
    assert fit.q == [Fraction(1), Fraction(-1)]
    assert fit.good_function and fit.loyal


def test_fit_needs_enough_terms():
    with pytest.raises(ValueError):
        fit_rational([1, 2, 3])


def test_trace_series_of_identity():
    for lam in (1, 2, 5, -3):
        chi = char_closed_form("gl", t=lam)
        ident = Diagram.identity(chi.sig, 1)
        series = trace_series(ident, chi, 6)
        assert series == [Fraction(lam)] * 7
        verdict = check_loyal(series)
        assert verdict["loyal"] == (lam != 0)


def test_trace_series_algebra_route_matches_direct():
    model = endo_model([[1, 1], [0, 2]])
    chi = char_from_model(model)
    sig = model.sig
    span_fn = lambda p, q, max_boxes: enumerate_generic(sig, p, q, max_boxes)
    algebra = quotient_algebra(chi, span_fn, 1)
    f = Diagram.box(sig, "f")
    direct = trace_series(f, chi, 8)
    through = trace_series(f, chi, 8, algebra=algebra)
    assert direct == through
    assert direct == [Fraction(2)] + [Fraction(1 + 2 ** k)
                                      for k in range(1, 9)]


def test_trace_series_arity():
    chi = char_closed_form("sym", t=2)
    span = enumerate_partition(chi.sig, 1, 2)
    with pytest.raises(ValueError):
        trace_series(list(span)[0], chi, 4)


def test_check_goodness_gl_passes():
    chi = char_closed_form("gl", t=5)
    span_fn = lambda p, q, max_boxes: enumerate_permutations(chi.sig, p)
    report = check_goodness(chi, span_fn, pq_list=((1, 1), (2, 2)), N=10,
                            samples=4, seed=3)
    assert report.verdict == "pass"
    assert report.witness is None
    assert all(entry["fit"].good_function for entry in report.fits)
    assert all(row["saturated"] for row in report.saturation)


def test_check_goodness_factorial_alpha_fails():
    chi = char_closed_form("frobenius",
                           alphas=[math.factorial(k) for k in range(16)])
    from diagcat.spans import enumerate_cobordism
    span_fn = lambda p, q, max_boxes: enumerate_cobordism(
        chi.sig, p, q, genus_cutoff=max_boxes)
    report = check_goodness(chi, span_fn, pq_list=((1, 1),), N=10, samples=2,
                            seed=0)
    assert report.verdict == "fail"
    assert report.witness is not None
    assert not report.witness["fit"].good_function


def test_check_goodness_rejects_symbolic():
    chi = char_closed_form("gl")
    span_fn = lambda p, q, max_boxes: enumerate_permutations(chi.sig, p)
    with pytest.raises(ValueError):
        check_goodness(chi, span_fn)


def test_check_loyal_verdict_strings():
    assert check_loyal([1] * 8)["verdict"] == "loyal"
    assert check_loyal([k + 1 for k in range(8)])["verdict"] == "not loyal"
    assert check_loyal([math.factorial(k) for k in range(10)])["verdict"] \
        == "not rational within cutoff"
