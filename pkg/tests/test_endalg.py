from fractions import Fraction

import pytest

from diagcat.characters import char_closed_form, char_from_model
from diagcat.diagram import Diagram, LinCombo
from diagcat.endalg import (EndalgError, QuotientAlgebra, TraceCheck,
                            algebra_coords, check_associativity,
                            coords_product, generic_specializations,
                            is_semisimple, nilpotent_trace_check,
                            quotient_algebra, simple_count)
from diagcat.gram import probe_values
from diagcat.models import endo_model
from diagcat.spans import (enumerate_generic, enumerate_partition,
                           enumerate_permutations)


def _gl_algebra(t, p):
    chi = char_closed_form("gl", t=t)
    span_fn = lambda pp, qq, max_boxes: enumerate_permutations(chi.sig, pp)
    return quotient_algebra(chi, span_fn, p)


def _sym_algebra(t, p):
    chi = char_closed_form("sym", t=t)
    span_fn = lambda pp, qq, max_boxes: enumerate_partition(chi.sig, pp, qq)
    return quotient_algebra(chi, span_fn, p)


def test_gl_group_algebra_structure():
    alg = _gl_algebra(5, 2)
    assert alg.dim == 2
    assert alg.saturated
    assert check_associativity(alg) == []
    ok, witness = is_semisimple(alg)
    assert ok and witness is None
    assert simple_count(alg) == 2
    alg3 = _gl_algebra(5, 3)
    assert alg3.dim == 6
    assert simple_count(alg3) == 3


def test_partition_algebra_structure():
    alg = _sym_algebra(7, 1)
    assert alg.dim == 2
    assert is_semisimple(alg)[0]
    assert simple_count(alg) == 2
    big = _sym_algebra(7, 2)
    assert big.dim == 15
    assert is_semisimple(big)[0]
    assert simple_count(big) == 4


def test_unit_and_coords_round_trip():
    alg = _gl_algebra(5, 2)
    dim = alg.dim
    for i, b in enumerate(alg.basis):
        coords = algebra_coords(alg, b)
        assert coords == [Fraction(k == i) for k in range(dim)]
        assert coords_product(alg, alg.unit, coords) == coords
        assert coords_product(alg, coords, alg.unit) == coords


def test_structure_constants_match_coords_product():
    alg = _sym_algebra(7, 1)
    dim = alg.dim
    for i in range(dim):
        for j in range(dim):
            direct = algebra_coords(alg, alg.basis[i].compose(alg.basis[j]))
            ei = [Fraction(k == i) for k in range(dim)]
            ej = [Fraction(k == j) for k in range(dim)]
            assert coords_product(alg, ei, ej) == direct
            assert alg.structure[i][j] == direct


def test_quotient_needs_numeric_character():
    chi = char_closed_form("gl")
    span_fn = lambda p, q, max_boxes: enumerate_permutations(chi.sig, p)
    with pytest.raises(EndalgError):
        quotient_algebra(chi, span_fn, 2)


def test_nilpotent_jordan_block_passes():
    model = endo_model([[0, 1], [0, 0]])
    chi = char_from_model(model)
    sig = model.sig
    spanning = list(enumerate_generic(sig, 1, 1, max_boxes=3))
    check = nilpotent_trace_check(Diagram.box(sig, "f"), chi, spanning)
    assert check.status == "pass"
    assert check.trace_value == 0
    assert check.power is not None


def test_invertible_operator_is_inconclusive():
    model = endo_model([[1, 0], [0, 1]])
    chi = char_from_model(model)
    sig = model.sig
    spanning = list(enumerate_generic(sig, 1, 1, max_boxes=2))
    check = nilpotent_trace_check(Diagram.box(sig, "f"), chi, spanning,
                                  r_max=4)
    assert check.status == "inconclusive"
    assert "r_max" in check.detail


def test_negligibility_against_partial_span_can_fail():
    """A spanning set without the identity cannot see the trace, so a
    deliberately thin span produces the fail verdict."""
    model = endo_model([[2, -1], [2, 0]])      # trace 2, trace of square 0
    chi = char_from_model(model)
    sig = model.sig
    f = Diagram.box(sig, "f")
    check = nilpotent_trace_check(f, chi, [f], r_max=3)
    assert check.status == "fail"
    assert check.trace_value == 2
    assert "negligible" in check.detail


def test_nilpotent_check_arity():
    model = endo_model([[0, 1], [0, 0]])
    chi = char_from_model(model)
    sig = model.sig
    open_combo = LinCombo.wrap(Diagram.box(sig, "f")).tensor(
        LinCombo(sig, 1, 0, []))
    with pytest.raises(EndalgError):
        nilpotent_trace_check(open_combo, chi, [], r_max=2)


def test_simple_count_requires_semisimple():
    sig = endo_model([[0]]).sig
    f = Diagram.box(sig, "f")
    fake = QuotientAlgebra(p=1, basis=[f], structure=[[[Fraction(0)]]],
                           unit=[Fraction(0)], traces=[Fraction(0)],
                           regular_gram=[[Fraction(0)]], spanning_size=1,
                           saturated=True)
    ok, witness = is_semisimple(fake)
    assert not ok
    assert witness is not None
    with pytest.raises(EndalgError):
        simple_count(fake)


def test_generic_specializations_seeded():
    chi = char_closed_form("sym")
    specs = generic_specializations(chi, seed=1, count=2)
    assert [v for v, _ in specs] == probe_values(1, count=2)
    for value, spec in specs:
        assert spec.params == ()
        assert spec.value(Diagram.loop(chi.sig, 1)) == value
    with pytest.raises(EndalgError):
        generic_specializations(char_closed_form("dvr", r=2))


def test_trace_check_dataclass_defaults():
    check = TraceCheck(status="inconclusive")
    assert check.power is None and check.trace_value is None
