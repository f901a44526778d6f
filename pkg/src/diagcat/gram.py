"""Trace pairing, Gram matrices, generic rank, and hom-space dimensions.

The pairing of x: (p, q) against y: (q, p) is the character value of the
trace closure of x composed with y.  Gram matrices over a spanning set
expose the radical (null combinations) and the dimension of the hom
space in the quotient category.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .diagram import LinCombo
from .linalg import poly_eliminate, poly_generic_nullspace, poly_rank_at, \
    qnullspace, qrank
from .poly import Poly, udeg, udivmod, uis_zero, urational_roots

__all__ = [
    "GramError",
    "GramReport",
    "pair_diagrams",
    "gram_matrix",
    "generic_rank_and_exceptionals",
    "gram_rank_at",
    "hom_dim",
]

PROBE_HEIGHT = 1000
PROBE_COUNT = 3


class GramError(ValueError):
    pass


def _norm(value):
    if isinstance(value, Poly) and value.is_const():
        return value.const_value()
    return value


def pair_diagrams(x, y, chi):
    """Character of trace_close(x . y); bilinear over combinations."""
    if isinstance(x, LinCombo) or isinstance(y, LinCombo):
        total = Fraction(0)
        for dx, cx in LinCombo.wrap(x).items():
            for dy, cy in LinCombo.wrap(y).items():
                total = pair_diagrams(dx, dy, chi) * (cx * cy) + total
        return _norm(total)
    if x.q != y.p or x.p != y.q:
        raise GramError("pairing needs dual arities, got (%d, %d) against "
                        "(%d, %d)" % (x.p, x.q, y.p, y.q))
    return chi.value(x.compose(y).trace_close())


@dataclass
class GramReport:
    p: int
    q: int
    basis: list
    dual_basis: list
    entries: list
    var: str | None = None
    spanning_kind: str = "unknown"
    generic_rank: int | None = None
    exceptional_values: list = field(default_factory=list)
    nonrational_locus: bool = False
    radical_basis: list | None = None
    saturation: bool | None = None
    cutoff_history: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def size(self):
        return len(self.basis)


def _entry_var(entries):
    names = set()
    for row in entries:
        for e in row:
            if isinstance(e, Poly):
                names.update(e._strip().vars)
    if len(names) > 1:
        raise GramError("Gram entries use several parameters: %s"
                        % sorted(names))
    return names.pop() if names else None


def gram_matrix(spanning, chi, dual=None):
    """Matrix stage of the report: basis, dual basis, pairing entries.

    dual defaults to the spanning set itself, which needs p == q; the
    matrix is then symmetric because the trace closure of x.y and of
    y.x wire up the same closed network.
    """
    basis = list(spanning)
    if dual is None:
        if spanning.p != spanning.q:
            raise GramError("square pairing needs p == q; supply a dual "
                            "spanning set for (%d, %d)"
                            % (spanning.p, spanning.q))
        dual_basis = basis
    else:
        dual_basis = list(dual)
        if dual.p != spanning.q or dual.q != spanning.p:
            raise GramError("dual spanning set has arity (%d, %d), need "
                            "(%d, %d)" % (dual.p, dual.q,
                                          spanning.q, spanning.p))
    entries = [[pair_diagrams(x, y, chi) for y in dual_basis]
               for x in basis]
    return GramReport(p=spanning.p, q=spanning.q, basis=basis,
                      dual_basis=dual_basis, entries=entries,
                      var=_entry_var(entries),
                      spanning_kind=spanning.kind)


def _coeff_matrix(entries):
    return [[Poly.coerce(e).univariate_coeffs() for e in row]
            for row in entries]


def _strip_rational_roots(poly):
    """Roots found by exact search, plus whatever nonconstant part remains."""
    roots = urational_roots(poly)
    rest = list(poly)
    for r in roots:
        while True:
            quo, rem = udivmod(rest, [-Fraction(r), Fraction(1)])
            if uis_zero(rem):
                rest = quo
            else:
                break
    return roots, rest


def generic_rank_and_exceptionals(entries):
    """(generic rank, [(value, smaller rank)], nonrational-locus flag).

    Fraction-free elimination gives the generic rank; rational roots of
    the pivot polynomials are the only places the rank can drop, up to
    the reported nonrational locus (nonconstant pivot factors with no
    rational root).
    """
    m = _coeff_matrix(entries)
    if not m or not m[0]:
        return 0, [], False
    elim = poly_eliminate(m)
    candidates = set()
    nonrational = False
    for piv in elim.pivots:
        if udeg(piv) == 0:
            continue
        roots, rest = _strip_rational_roots(piv)
        candidates.update(Fraction(r) for r in roots)
        if udeg(rest) > 0:
            nonrational = True
    exceptional = []
    for value in sorted(candidates):
        rank = poly_rank_at(m, value)
        if rank < elim.rank:
            exceptional.append((value, rank))
    return elim.rank, exceptional, nonrational


def analyze(report):
    """Fill the rank fields of a matrix-stage report, in place."""
    rank, exceptional, nonrational = \
        generic_rank_and_exceptionals(report.entries)
    report.generic_rank = rank
    report.exceptional_values = exceptional
    report.nonrational_locus = nonrational
    if rank < report.size and report.basis is report.dual_basis:
        report.radical_basis = _generic_radical(report)
    elif rank == report.size:
        report.radical_basis = []
    return report


def _generic_radical(report):
    sig = report.basis[0].sig
    vectors = poly_generic_nullspace(_coeff_matrix(report.entries))
    var = report.var or "t"
    out = []
    for vec in vectors:
        terms = [(d, Poly.from_univariate(coeffs, var))
                 for d, coeffs in zip(report.basis, vec)]
        out.append(LinCombo(sig, report.p, report.q, terms))
    return out


def gram_rank_at(report, value):
    """(rank, radical combinations) at one parameter specialization."""
    value = Fraction(value)
    rows = [[_eval_entry(e, report.var, value) for e in row]
            for row in report.entries]
    rank = qrank(rows)
    radical = []
    if report.basis is report.dual_basis or report.p == report.q:
        sig = report.basis[0].sig
        for vec in qnullspace(rows):
            terms = list(zip(report.basis, vec))
            radical.append(LinCombo(sig, report.p, report.q, terms))
    return rank, radical


def _eval_entry(entry, var, value):
    if isinstance(entry, Poly):
        return entry.eval({var: value} if var else {})
    return Fraction(entry)


def probe_values(seed, count=PROBE_COUNT, height=PROBE_HEIGHT):
    """Distinct random rationals with numerator and denominator >= height."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        num = rng.randint(height, 8 * height)
        den = rng.randint(height, 8 * height)
        value = Fraction(num, den)
        if value not in out:
            out.append(value)
    return out


def _rank_of_entries(entries, seed):
    """Exact rank over the parameter field.

    Specializing at random rationals only bounds the rank from below,
    so the probe is decisive just when it reaches the full size; the
    fraction-free elimination settles every other case.
    """
    if not entries or not entries[0]:
        return 0
    if _entry_var(entries) is None:
        return qrank([[Fraction(e) if not isinstance(e, Poly)
                       else e.const_value() for e in row]
                      for row in entries])
    m = _coeff_matrix(entries)
    full = min(len(m), len(m[0]))
    best = 0
    for value in probe_values(seed):
        best = max(best, poly_rank_at(m, value))
        if best == full:
            return full
    return poly_eliminate(m).rank


def hom_dim(chi, span_fn, p, q, cutoffs=(2, 3, 4), seed=0):
    """Dimension of the (p, q) hom space in the quotient, with evidence.

    span_fn(p, q, max_boxes) supplies the spanning set.  Complete
    family enumerators are saturated by construction; generic spans
    report the rank per cutoff and saturate when two successive
    cutoffs agree.
    """
    def spans_at(cutoff):
        span = span_fn(p, q, max_boxes=cutoff)
        dual = span if p == q else span_fn(q, p, max_boxes=cutoff)
        return span, dual

    history = []
    saturated = False
    span, dual = spans_at(cutoffs[0])
    if span.kind != "generic":
        rank = _hom_rank(chi, span, dual, seed)
        history.append((None, rank))
        return rank, {"history": history, "saturated": True,
                      "kind": span.kind, "size": span.size}
    rank = None
    for cutoff in cutoffs:
        span, dual = spans_at(cutoff)
        rank = _hom_rank(chi, span, dual, seed)
        history.append((cutoff, rank))
        if len(history) >= 2 and history[-1][1] == history[-2][1]:
            saturated = True
            break
    return rank, {"history": history, "saturated": saturated,
                  "kind": "generic", "size": span.size}


def _hom_rank(chi, span, dual, seed):
    basis = list(span)
    dual_basis = list(dual)
    if not basis or not dual_basis:
        return 0
    entries = [[pair_diagrams(x, y, chi) for y in dual_basis]
               for x in basis]
    return _rank_of_entries(entries, seed)
