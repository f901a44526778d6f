from fractions import Fraction

import pytest

from diagcat.characters import char_closed_form
from diagcat.gram import (GramError, analyze, generic_rank_and_exceptionals,
                          gram_matrix, gram_rank_at, hom_dim, pair_diagrams,
                          probe_values)
from diagcat.diagram import Diagram
from diagcat.models import Model, orth_model, realized_rank, sep_algebra_model
from diagcat.poly import Poly
from diagcat.spans import (enumerate_brauer, enumerate_generic,
                           enumerate_partition, enumerate_permutations)


def _gl_report(p):
    chi = char_closed_form("gl")
    span = enumerate_permutations(chi.sig, p)
    return chi, analyze(gram_matrix(span, chi))


def _sym_report(p, q):
    chi = char_closed_form("sym")
    span = enumerate_partition(chi.sig, p, q)
    return chi, analyze(gram_matrix(span, chi))


def _orth_report(p, q):
    chi = char_closed_form("orth")
    span = enumerate_brauer(chi.sig, p, q)
    return chi, analyze(gram_matrix(span, chi))


def test_gl_two_strand_gram():
    _, report = _gl_report(2)
    assert report.size == 2
    assert report.generic_rank == 2
    assert report.exceptional_values == [(Fraction(-1), 1), (Fraction(0), 0),
                                         (Fraction(1), 1)]
    assert report.radical_basis == []
    assert not report.nonrational_locus
    entries = {str(e) for row in report.entries for e in row}
    assert entries == {"t^2", "t"}


def test_sym_one_strand_gram():
    _, report = _sym_report(1, 1)
    assert report.size == 2
    assert report.generic_rank == 2
    assert report.exceptional_values == [(Fraction(0), 0), (Fraction(1), 1)]


def test_orth_two_strand_gram():
    _, report = _orth_report(2, 2)
    assert report.size == 3
    assert report.generic_rank == 3
    assert report.exceptional_values == [(Fraction(-2), 2), (Fraction(0), 0),
                                         (Fraction(1), 1)]


def test_gram_rank_matches_realized_rank():
    chi, report = _gl_report(2)
    for n in (2, 3):
        model = Model(chi.sig, n, {})
        rank, _ = gram_rank_at(report, n)
        assert rank == realized_rank(model, report.basis)

    chi, report = _sym_report(1, 1)
    for n in (1, 2, 3):
        rank, _ = gram_rank_at(report, n)
        assert rank == realized_rank(sep_algebra_model(n), report.basis)

    chi, report = _orth_report(1, 1)
    for n in (1, 2):
        rank, _ = gram_rank_at(report, n)
        assert rank == realized_rank(orth_model(n), report.basis)


def test_radical_pairs_to_zero():
    chi, report = _sym_report(1, 1)
    rank, radical = gram_rank_at(report, 1)
    assert rank == 1 and len(radical) == 1
    at1 = chi.specialize({"t": 1})
    combo = radical[0]
    for y in report.dual_basis:
        assert pair_diagrams(combo, y, at1) == 0


def test_generic_rank_on_raw_entries():
    t = Poly.var("t")
    rank, exceptional, nonrational = generic_rank_and_exceptionals(
        [[t * t - 2]])
    assert rank == 1
    assert exceptional == []
    assert nonrational

    rank, exceptional, nonrational = generic_rank_and_exceptionals(
        [[t, Poly.const(1)], [Poly.const(1), t]])
    assert rank == 2
    assert exceptional == [(Fraction(-1), 1), (Fraction(1), 1)]
    assert not nonrational

    assert generic_rank_and_exceptionals([]) == (0, [], False)


def test_pair_diagrams_arity_check():
    chi = char_closed_form("sym")
    sig = chi.sig
    with pytest.raises(GramError):
        pair_diagrams(Diagram.identity(sig, 2), Diagram.identity(sig, 1), chi)


def test_gram_matrix_needs_square_or_dual():
    chi = char_closed_form("sym")
    span12 = enumerate_partition(chi.sig, 1, 2)
    with pytest.raises(GramError):
        gram_matrix(span12, chi)
    dual = enumerate_partition(chi.sig, 2, 1)
    report = gram_matrix(span12, chi, dual=dual)
    assert report.size == 5
    with pytest.raises(GramError):
        gram_matrix(span12, chi, dual=span12)


def test_hom_dim_family_span_saturates_immediately():
    chi = char_closed_form("sym")
    span_fn = lambda p, q, max_boxes: enumerate_partition(chi.sig, p, q)
    dim, evidence = hom_dim(chi, span_fn, 2, 2)
    assert dim == 15
    assert evidence["saturated"]
    assert evidence["kind"] == "partition"
    assert evidence["history"] == [(None, 15)]


def test_hom_dim_generic_span_converges():
    chi = char_closed_form("sym")
    span_fn = lambda p, q, max_boxes: enumerate_generic(chi.sig, p, q,
                                                        max_boxes)
    dim, evidence = hom_dim(chi, span_fn, 1, 1, cutoffs=(2, 3))
    assert dim == 2
    assert evidence["saturated"]
    assert evidence["kind"] == "generic"
    assert [rank for _, rank in evidence["history"]] == [2, 2]


def test_hom_dim_specialized_character():
    chi = char_closed_form("sym", t=1)
    span_fn = lambda p, q, max_boxes: enumerate_partition(chi.sig, p, q)
    dim, _ = hom_dim(chi, span_fn, 1, 1)
    assert dim == 1


def test_probe_values_deterministic_and_bounded():
    a = probe_values(3)
    b = probe_values(3)
    assert a == b
    assert len(set(a)) == len(a) == 3
    for value in a:
        assert 1000 <= value.numerator <= 8000 * 8
        assert 1000 <= value.denominator <= 8000 * 8
    assert probe_values(4) != a
    assert len(probe_values(5, count=7)) == 7
