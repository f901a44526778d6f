import math
from fractions import Fraction

import pytest

from diagcat.characters import CharacterError, char_from_model
from diagcat.diagram import Diagram
from diagcat.gram import hom_dim
from diagcat.models import endo_model
from diagcat.poly import Poly
from diagcat.presets import (PRESET_NAMES, PresetError, bell_number,
                             check_agreement, double_factorial, dvr_character,
                             preset, sample_closed_diagrams, wreath_bar)


def test_bell_and_double_factorial():
    assert [bell_number(n) for n in range(7)] == [1, 1, 2, 5, 15, 52, 203]
    assert [double_factorial(2 * p - 1) for p in range(1, 5)] == \
        [1, 3, 15, 105]


def test_unknown_preset():
    with pytest.raises(PresetError):
        preset("nope")


def test_expected_tables():
    gl = preset("gl")
    assert gl.expected["hom_dims"][(4, 4)] == 24
    sym = preset("sym")
    assert sym.expected["hom_dims"][(2, 2)] == 15
    assert sym.expected["hom_dims"][(1, 2)] == 5
    orth = preset("orth")
    assert orth.expected["hom_dims"][(3, 3)] == 15
    dvr = preset("dvr")
    assert dvr.expected["exponents"] == {"T11": (1, 1), "T10": (1, 2)}


def test_summaries_are_plain_data():
    import json
    for name in PRESET_NAMES:
        summary = preset(name).summary()
        assert summary["name"] == name
        json.dumps(summary)


def test_hom_dims_match_expected_small():
    for name, pairs in (("gl", ((1, 1), (2, 2))),
                        ("sym", ((1, 1), (2, 2))),
                        ("orth", ((1, 1), (2, 2)))):
        bundle = preset(name)
        for pq in pairs:
            dim, info = hom_dim(bundle.char, bundle.span_fn, *pq)
            assert dim == bundle.expected["hom_dims"][pq]
            assert info["saturated"]


@pytest.mark.parametrize("name,point", [
    ("gl", 3),
    ("sym", 3),
    ("orth", 2),
    ("symp", 4),
    ("endo", ((2, 1),)),
    ("frobenius", "eps1"),
    ("frobenius", ("scalar", 2)),
    ("wreath", 2),
    ("dvr", (2, (1, 0))),
])
def test_agreement_at_special_points(name, point):
    bundle = preset(name)
    assert point in bundle.special_collection or name == "dvr"
    assert check_agreement(bundle, point, seed=1, count=6) == []


def test_dvr_exponent_table_matches_character():
    bundle = preset("dvr")
    chi = bundle.char
    sig = bundle.signature
    for name, exps in bundle.expected["exponents"].items():
        want = Poly.const(1)
        for j, e in enumerate(exps):
            want = want * Poly.var("t%d" % (j + 1)) ** e
        assert chi.value(Diagram.box(sig, name).trace_close()) == want


def test_dvr_family_is_multiplicative():
    two = dvr_character(1, values=(2,))
    three = dvr_character(1, values=(3,))
    six = dvr_character(1, values=(6,))
    bundle = preset("dvr", r=1)
    for d in sample_closed_diagrams(bundle.span_fn, seed=2, count=6,
                                    pq_list=((1, 1),)):
        try:
            v6 = six.value(d)
        except CharacterError:
            continue
        assert v6 == two.value(d) * three.value(d)


def test_dvr_character_point_forms():
    via_q = dvr_character(2, q=3, ranks=(1, 1))
    via_values = dvr_character(2, values=(3, 3))
    sig = via_q.sig
    # the trace of the scalar-one operator is the monomial t1 * t2^2
    d = Diagram.box(sig, "T10").trace_close()
    assert via_q.value(d) == via_values.value(d) == 27
    with pytest.raises(PresetError):
        dvr_character(2, values=(3,))
    with pytest.raises(PresetError):
        dvr_character(2, q=3, ranks=(1,))


def test_wreath_traces_and_scaling():
    bundle = preset("wreath")
    sig = bundle.signature
    circle = Diagram.identity(sig, 1).trace_close()
    proj = Diagram.box(sig, "P").trace_close()
    assert bundle.char.value(circle) == Poly.var("n")
    assert bundle.char.value(proj) == Poly.var("n")
    at3 = bundle.char_at(3)
    assert at3.value(circle) == 3
    assert at3.value(proj) == 3
    model_chi = char_from_model(bundle.model_at(3))
    assert model_chi.value(circle) == 3
    assert model_chi.value(proj) == 3
    with pytest.raises(PresetError):
        bundle.model_at(0)


def test_wreath_bar_needs_model():
    from diagcat.characters import char_closed_form
    with pytest.raises(PresetError):
        wreath_bar(char_closed_form("sym"))
    sig, chi = wreath_bar(char_from_model(endo_model([[2]])))
    circle = Diagram.identity(sig, 1).trace_close()
    assert chi.value(circle) == 2
    assert chi.value(Diagram.box(sig, "P").trace_close()) == 1
    assert chi.value(Diagram.box(sig, "f").trace_close()) == 2


def test_frobenius_point_validation():
    bundle = preset("frobenius")
    with pytest.raises(PresetError):
        bundle.char_at("zz")
    with pytest.raises(PresetError):
        bundle.model_at(("scalar", 0))
    assert bundle.expected["z_series"] == {"eps1": [0, 2], "eps2": [1, 2]}


def test_endo_model_needs_integer_multiplicities():
    bundle = preset("endo")
    with pytest.raises(PresetError):
        bundle.model_at(((2, Fraction(1, 2)),))
    model = bundle.model_at(((2, 2), (3, 1)))
    assert model.dim == 3


def test_symp_connected_closed_value():
    bundle = preset("symp")
    sig = bundle.signature
    theta = Diagram.box(sig, "c").compose(Diagram.box(sig, "d"))
    assert bundle.char.value(theta) == Poly.var("t")
    assert bundle.char_at(6).value(theta) == 6


def test_sample_closed_diagrams_deterministic():
    bundle = preset("sym")
    a = sample_closed_diagrams(bundle.span_fn, seed=5, count=10)
    b = sample_closed_diagrams(bundle.span_fn, seed=5, count=10)
    assert [d.canonical_key() for d in a] == [d.canonical_key() for d in b]
    assert len(a) <= 10
    for d in a:
        assert d.is_closed()
        assert len(d.connected_components()) == 1
    c = sample_closed_diagrams(bundle.span_fn, seed=6, count=10)
    assert [d.canonical_key() for d in c] != [d.canonical_key() for d in a]
