"""Bundled example families: signature, spanning strategy, character
constructors, model families, and the expected tables the acceptance
suite checks against.

Each bundle ties together a symbolic character (when the family has
one), a numeric character constructor ``char_at``, a model constructor
``model_at``, and a spanning-set strategy ``span_fn`` that all speak
the same signature, so ranks computed formally can be certified
against realized tensors.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .characters import (CharacterError, char_closed_form, char_from_model,
                         char_scale, interpolate_family)
from .diagram import Signature
from .models import (Model, endo_model, direct_sum, frobenius_model,
                     group_algebra_model, orth_model, sep_algebra_model,
                     symp_model, wreath_bar_model)
from .spans import (enumerate_brauer, enumerate_cobordism, enumerate_generic,
                    enumerate_partition)

__all__ = [
    "PRESET_NAMES",
    "PresetError",
    "PresetBundle",
    "preset",
    "wreath_bar",
    "dvr_character",
    "sample_closed_diagrams",
    "check_agreement",
    "bell_number",
    "double_factorial",
]

PRESET_NAMES = ("gl", "endo", "orth", "symp", "sym", "frobenius", "wreath",
                "dvr")


class PresetError(ValueError):
    pass


@dataclass
class PresetBundle:
    name: str
    signature: Signature
    params: tuple
    span_fn: object
    char: object
    char_at: object
    model_at: object
    special_collection: list
    expected: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def summary(self):
        return {
            "name": self.name,
            "generators": {name: list(arity) for name, arity
                           in sorted(self.signature.generators.items())},
            "params": list(self.params),
            "special_collection": [repr(pt) for pt in
                                   self.special_collection],
            "expected": {str(k): repr(v) for k, v in
                         sorted(self.expected.items())},
            "notes": list(self.notes),
        }


def bell_number(n):
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[0]


def double_factorial(n):
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def _generic_span(sig, default_boxes=4):
    def span_fn(p, q, max_boxes=None):
        return enumerate_generic(sig, p, q,
                                 max_boxes=default_boxes if max_boxes is None
                                 else max_boxes)
    return span_fn


def _family_span(enumerator, sig):
    def span_fn(p, q, max_boxes=None):
        return enumerator(sig, p, q)
    return span_fn


def _gl_bundle():
    chi = char_closed_form("gl")
    sig = chi.sig
    return PresetBundle(
        name="gl",
        signature=sig,
        params=("t",),
        span_fn=_generic_span(sig),
        char=chi,
        char_at=lambda t: char_closed_form("gl", t=Fraction(t)),
        model_at=lambda n: Model(Signature({}, ()), int(n), {}),
        special_collection=[0, 1, 2, 3, 4, 5, 6],
        expected={
            "hom_dims": {(p, p): math.factorial(p) for p in (1, 2, 3, 4)},
            "exceptional_values": {(2, 2): [Fraction(-1), Fraction(0),
                                            Fraction(1)]},
        },
        notes=["loops are the only closed diagrams; each contributes t"],
    )


def _endo_bundle(pairs=((1, 1), (2, 1))):
    pairs = tuple((lam, w) for lam, w in pairs)
    chi = char_closed_form("endo", pairs=pairs)
    sig = chi.sig

    def model_at(point):
        diag = []
        for lam, w in point:
            frac = Fraction(w)
            if frac.denominator != 1 or frac < 0:
                raise PresetError("model weights must be multiplicities, "
                                  "got %s" % (w,))
            diag.extend([Fraction(lam)] * frac.numerator)
        size = len(diag)
        matrix = [[diag[i] if i == j else Fraction(0) for j in range(size)]
                  for i in range(size)]
        return endo_model(matrix)

    return PresetBundle(
        name="endo",
        signature=sig,
        params=tuple(chi.params),
        span_fn=_generic_span(sig),
        char=chi,
        char_at=lambda point: char_closed_form("endo", pairs=tuple(point)),
        model_at=model_at,
        special_collection=[((1, 1),), ((2, 1),), ((1, 1), (2, 1)),
                           ((2, 2), (3, 1))],
        expected={},
        notes=["a cycle of k boxes evaluates to sum of w * lambda^k",
               "model points are (eigenvalue, multiplicity) lists"],
    )


def _orth_bundle():
    chi = char_closed_form("orth")
    sig = chi.sig
    return PresetBundle(
        name="orth",
        signature=sig,
        params=("t",),
        span_fn=_family_span(enumerate_brauer, sig),
        char=chi,
        char_at=lambda t: char_closed_form("orth", t=Fraction(t)),
        model_at=lambda n: orth_model(int(n)),
        special_collection=[1, 2, 3, 4, 5],
        expected={
            "hom_dims": {(p, p): double_factorial(2 * p - 1)
                         for p in (1, 2, 3)},
            "exceptional_values": {(2, 2): [Fraction(-2), Fraction(0),
                                            Fraction(1)]},
        },
        notes=["every connected closed matching is one loop worth t"],
    )


SYMP_POINTS = (2, 4, 6, 8, 10)


def _symp_bundle(points=SYMP_POINTS):
    models = [(n, symp_model(n)) for n in points]
    chi = interpolate_family(models, degree_bound_fn=lambda d: 1, var="t")
    sig = chi.sig
    return PresetBundle(
        name="symp",
        signature=sig,
        params=("t",),
        span_fn=_family_span(enumerate_brauer, sig),
        char=chi,
        char_at=lambda t: chi.specialize({"t": Fraction(t)}),
        model_at=lambda n: symp_model(int(n)),
        special_collection=list(points) + [12],
        expected={
            "hom_dims": {(p, p): double_factorial(2 * p - 1)
                         for p in (1, 2, 3)},
        },
        notes=["interpolated from symplectic models at even dimensions",
               "every remaining interpolation point is a witness"],
    )


def _sym_bundle():
    chi = char_closed_form("sym")
    sig = chi.sig
    dims = {}
    for p in range(0, 3):
        for q in range(0, 3):
            if 0 < p + q <= 4:
                dims[(p, q)] = bell_number(p + q)
    return PresetBundle(
        name="sym",
        signature=sig,
        params=("t",),
        span_fn=_family_span(enumerate_partition, sig),
        char=chi,
        char_at=lambda t: char_closed_form("sym", t=Fraction(t)),
        model_at=lambda n: sep_algebra_model(int(n)),
        special_collection=[0, 1, 2, 3, 4, 5, 6, 7],
        expected={
            "hom_dims": dims,
            "exceptional_values": {(1, 1): [Fraction(0), Fraction(1)]},
        },
        notes=["partition diagrams; generic dimension is a Bell number"],
    )


_DUAL_NUMBER_MULT = [[[1, 0], [0, 0]], [[0, 1], [1, 0]]]


def _frobenius_point(point):
    if point == "eps1":
        return {"z_num": [0, 2], "z_den": [1]}, \
            (_DUAL_NUMBER_MULT, [1, 0], [0, 1])
    if point == "eps2":
        return {"z_num": [1, 2], "z_den": [1]}, \
            (_DUAL_NUMBER_MULT, [1, 0], [1, 1])
    if isinstance(point, tuple) and len(point) == 2 and point[0] == "scalar":
        lam = Fraction(point[1])
        if lam == 0:
            raise PresetError("scalar Frobenius point needs lambda != 0")
        return {"z_num": [Fraction(1, 1) / lam], "z_den": [1, -lam]}, \
            ([[[1]]], [1], [Fraction(1, 1) / lam])
    raise PresetError("unknown frobenius point %r" % (point,))


def _frobenius_bundle(**params):
    alpha_keys = ("alphas", "recurrence", "z_num", "z_den")
    supplied = {k: params[k] for k in alpha_keys if k in params}
    if not supplied:
        supplied, _tensors = _frobenius_point("eps2")
    chi = char_closed_form("frobenius", **supplied)
    sig = chi.sig

    def span_fn(p, q, max_boxes=None):
        return enumerate_cobordism(sig, p, q, genus_cutoff=1)

    def char_at(point):
        spec, _tensors = _frobenius_point(point)
        return char_closed_form("frobenius", **spec)

    def model_at(point):
        _spec, tensors = _frobenius_point(point)
        mult, unit, counit = tensors
        return frobenius_model(mult, unit, counit)

    return PresetBundle(
        name="frobenius",
        signature=sig,
        params=(),
        span_fn=span_fn,
        char=chi,
        char_at=char_at,
        model_at=model_at,
        special_collection=["eps1", "eps2", ("scalar", 2)],
        expected={
            "z_series": {"eps1": [0, 2], "eps2": [1, 2]},
            "alpha_rule": "connected genus-g surface evaluates to alpha_g",
        },
        notes=["named points: eps1/eps2 are the dual-number counits,"
               " (scalar, lam) is the one-dimensional form 1/lam"],
    )


def _trivial_base_model():
    return Model(Signature({}, ()), 0, {})


def _wreath_bundle(base=None):
    if base is None:
        base = _trivial_base_model()
    if not isinstance(base, Model):
        raise PresetError("wreath preset needs a Model base, got %r"
                          % (base,))
    abar = wreath_bar_model(base)
    chibar = char_from_model(abar)
    sig = abar.sig
    kappa = char_scale("n", chibar)
    if base.dim == 0:
        # P realizes to the identity and eps to the trace of left
        # multiplication, so partition diagrams in m/u/c already span
        span_fn = _family_span(enumerate_partition, sig)
    else:
        span_fn = _generic_span(sig)

    def model_at(n):
        n = int(n)
        if n < 1:
            raise PresetError("wreath model points are n >= 1")
        total = abar
        for _ in range(n - 1):
            total = direct_sum(total, abar)
        return total

    return PresetBundle(
        name="wreath",
        signature=sig,
        params=("n",),
        span_fn=span_fn,
        char=kappa,
        char_at=lambda n: char_scale(Fraction(n), chibar),
        model_at=model_at,
        special_collection=[1, 2, 3],
        expected={
            "agrees_with": "sym",
            "points": (2, 3),
            "pq": ((1, 1), (2, 2)),
            "projection_trace": 1,
            "strand_trace": base.dim + 1,
        },
        notes=["default base is the zero module, so the bar construction"
               " is the one-dimensional trivial algebra",
               "n-fold direct sums realize the scaled character"],
    )


def _dvr_bundle(r=2):
    r = int(r)
    if not 1 <= r <= 3:
        raise PresetError("dvr preset supports 1 <= r <= 3, got %d" % r)
    chi = char_closed_form("dvr", r=r)
    sig = chi.sig
    points = []
    for prime in (2, 3):
        for ranks in itertools.product((0, 1), repeat=r):
            if sum(ranks) == 0:
                continue
            points.append((prime, ranks))

    def char_at(point):
        prime, ranks = point
        if len(ranks) != r:
            raise PresetError("need %d multiplicities, got %d"
                              % (r, len(ranks)))
        binding = {"t%d" % (j + 1): Fraction(prime) ** a
                   for j, a in enumerate(ranks)}
        return chi.specialize(binding)

    expected = {}
    if r == 2:
        expected["exponents"] = {"T11": (1, 1), "T10": (1, 2)}

    return PresetBundle(
        name="dvr",
        signature=sig,
        params=tuple(chi.params),
        span_fn=_generic_span(sig, default_boxes=2),
        char=chi,
        char_at=char_at,
        model_at=lambda point: group_algebra_model(point[0], r,
                                                   tuple(point[1])),
        special_collection=points,
        expected=expected,
        notes=["model points are (prime, multiplicities); the matching"
               " parameter values are t_j = prime ** a_j"],
    )


_BUILDERS = {
    "gl": _gl_bundle,
    "endo": _endo_bundle,
    "orth": _orth_bundle,
    "symp": _symp_bundle,
    "sym": _sym_bundle,
    "frobenius": _frobenius_bundle,
    "wreath": _wreath_bundle,
    "dvr": _dvr_bundle,
}


def preset(name, **kwargs):
    if name not in _BUILDERS:
        raise PresetError("unknown preset %r; choose from %s"
                          % (name, ", ".join(PRESET_NAMES)))
    return _BUILDERS[name](**kwargs)


def wreath_bar(chi_base):
    """Extend a model-backed character to the pointed structure 1 + A.

    The construction needs the concrete tensors, so characters that do
    not carry a model are rejected.
    """
    if getattr(chi_base, "model", None) is None:
        raise PresetError("wreath_bar needs a model-backed character; this "
                          "one has provenance %r and no model"
                          % (chi_base.provenance,))
    abar = wreath_bar_model(chi_base.model)
    return abar.sig, char_from_model(abar)


def dvr_character(r, values=None, q=None, ranks=None):
    """Monomial character on the Hopf-with-operators signature.

    With no point given the character is symbolic in t_1..t_r; a tuple
    of values, or a prime q with multiplicities, specializes it.
    """
    chi = char_closed_form("dvr", r=r)
    if values is None and q is None:
        return chi
    if values is None:
        if ranks is None or len(ranks) != r:
            raise PresetError("need %d multiplicities alongside q" % r)
        values = tuple(Fraction(q) ** a for a in ranks)
    values = tuple(Fraction(v) for v in values)
    if len(values) != r:
        raise PresetError("need %d parameter values, got %d"
                          % (r, len(values)))
    return chi.specialize({"t%d" % (j + 1): v
                           for j, v in enumerate(values)})


def sample_closed_diagrams(span_fn, seed=0, count=20, max_boxes=3,
                           pq_list=((1, 1), (2, 2))):
    """Connected closed diagrams harvested from traced compositions of
    spanning elements.  Deterministic for a fixed seed; may return fewer
    than count when the signature has few closed diagrams."""
    rng = random.Random(seed)
    pool = {}
    for p, q in pq_list:
        span = list(span_fn(p, q, max_boxes=max_boxes))
        if not span:
            continue
        for _ in range(6 * count):
            x = span[rng.randrange(len(span))]
            y = span[rng.randrange(len(span))]
            closed = x.compose(y).trace_close()
            for piece in closed.connected_components():
                pool.setdefault(piece.canonical_key(), piece)
            if len(pool) >= 3 * count:
                break
    ordered = [pool[key] for key in sorted(pool)]
    return ordered[:count]


def check_agreement(bundle, point, seed=0, count=20):
    """Compare the closed-form character with the realized model at one
    special-collection point; returns the list of disagreements.

    Diagrams outside the character's domain (partial characters reject
    them with CharacterError) are skipped, but at least one comparison
    must go through.
    """
    chi = bundle.char_at(point)
    model_chi = char_from_model(bundle.model_at(point))
    mismatches = []
    compared = 0
    for diagram in sample_closed_diagrams(bundle.span_fn, seed=seed,
                                          count=count):
        want = model_chi.value(diagram)
        try:
            got = chi.value(diagram)
        except CharacterError:
            continue
        compared += 1
        if got != want:
            mismatches.append((diagram, got, want))
    if compared == 0:
        raise PresetError("no sampled closed diagram was inside the "
                          "character's domain at point %r" % (point,))
    return mismatches
