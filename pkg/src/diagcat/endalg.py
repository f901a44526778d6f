"""Endomorphism algebras modulo the radical of the trace pairing.

Everything here runs at a numeric specialization of the character; the
generic story is probed through a few random rational points instead
of polynomial-valued structure constants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .diagram import Diagram, LinCombo
from .gram import pair_diagrams, probe_values
from .linalg import qdet, qnullspace, qrank, qrref, qsolve

__all__ = [
    "EndalgError",
    "QuotientAlgebra",
    "TraceCheck",
    "quotient_algebra",
    "algebra_coords",
    "coords_product",
    "is_semisimple",
    "simple_count",
    "check_associativity",
    "nilpotent_trace_check",
    "generic_specializations",
]


class EndalgError(ValueError):
    pass


@dataclass
class QuotientAlgebra:
    p: int
    basis: list
    structure: list
    unit: list
    traces: list
    regular_gram: list
    spanning_size: int
    saturated: bool
    warnings: list = field(default_factory=list)
    spanning: list = field(default_factory=list, repr=False)
    reduced: list = field(default_factory=list, repr=False)
    chi: object = field(default=None, repr=False)

    @property
    def dim(self):
        return len(self.basis)


def _numeric(chi):
    if chi.params:
        raise EndalgError("algebra construction needs a numeric character; "
                          "specialize parameters %s first" % (chi.params,))
    return chi


def _pair_vector(spanning, z, chi):
    return [Fraction(pair_diagrams(s, z, chi)) for s in spanning]


def quotient_algebra(chi, span_fn, p, cutoffs=(2, 3, 4)):
    """End(W^{otimes p}) modulo the chi-radical, with exact structure
    constants.

    The spanning set is reduced to the pivot columns of its Gram
    matrix; products of basis elements are re-expanded through the
    pairing, so a spanning set that is not multiplicatively saturated
    fails loudly.
    """
    _numeric(chi)
    spanning, saturated, warnings = _saturated_span(chi, span_fn, p, cutoffs)
    gram = [[Fraction(pair_diagrams(x, y, chi)) for y in spanning]
            for x in spanning]
    _, pivots = qrref(gram)
    basis = [spanning[k] for k in pivots]
    reduced = [[gram[l][k] for k in pivots] for l in range(len(spanning))]

    def coords(z):
        rhs = _pair_vector(spanning, z, chi)
        sol = qsolve(reduced, rhs)
        if sol is None:
            raise EndalgError(
                "product leaves the span: the spanning set is not "
                "multiplicatively saturated at this cutoff")
        return sol

    dim = len(basis)
    structure = [[coords(basis[i].compose(basis[j])) for j in range(dim)]
                 for i in range(dim)]
    unit = coords(Diagram.identity(spanning[0].sig, p))
    traces = [Fraction(chi.value(b.trace_close())) for b in basis]
    left_traces = [sum(structure[m][k][k] for k in range(dim))
                   for m in range(dim)]
    regular = [[sum(structure[i][j][m] * left_traces[m] for m in range(dim))
                for j in range(dim)] for i in range(dim)]
    return QuotientAlgebra(p=p, basis=basis, structure=structure, unit=unit,
                           traces=traces, regular_gram=regular,
                           spanning_size=len(spanning), saturated=saturated,
                           warnings=warnings, spanning=spanning,
                           reduced=reduced, chi=chi)


def algebra_coords(algebra, z):
    """Coordinates of a (p, p) element in the algebra basis, mod radical."""
    rhs = _pair_vector(algebra.spanning, z, algebra.chi)
    sol = qsolve(algebra.reduced, rhs)
    if sol is None:
        raise EndalgError("element leaves the span: the spanning set is not "
                          "saturated for this input")
    return sol


def coords_product(algebra, w, z):
    """Coordinates of the product of two coordinate vectors."""
    dim = algebra.dim
    out = [Fraction(0)] * dim
    for i in range(dim):
        if not w[i]:
            continue
        for j in range(dim):
            if not z[j]:
                continue
            cij = algebra.structure[i][j]
            scale = w[i] * z[j]
            for l in range(dim):
                if cij[l]:
                    out[l] += scale * cij[l]
    return out


def _saturated_span(chi, span_fn, p, cutoffs):
    span = span_fn(p, p, max_boxes=cutoffs[0])
    if span.kind != "generic":
        return list(span), True, []
    history = []
    best = None
    for cutoff in cutoffs:
        best = span_fn(p, p, max_boxes=cutoff)
        gram = [[Fraction(pair_diagrams(x, y, chi)) for y in best]
                for x in best]
        history.append(qrank(gram))
        if len(history) >= 2 and history[-1] == history[-2]:
            return list(best), True, []
    warnings = ["rank history %s over cutoffs %s never stabilized"
                % (history, list(cutoffs))]
    return list(best), False, warnings


def is_semisimple(algebra):
    """(verdict, witness): trace-form nondegeneracy, kernel element if not."""
    if algebra.dim == 0:
        return True, None
    if qdet(algebra.regular_gram) != 0:
        return True, None
    kernel = qnullspace(algebra.regular_gram)[0]
    witness = _combo(algebra, kernel)
    return False, witness


def _combo(algebra, vector):
    first = algebra.basis[0]
    out = LinCombo(first.sig, first.p, first.q, [])
    for b, c in zip(algebra.basis, vector):
        if c:
            out = out + LinCombo.wrap(b, c)
    return out


def simple_count(algebra):
    """Number of simple summands = dimension of the center."""
    ok, witness = is_semisimple(algebra)
    if not ok:
        raise EndalgError("simple_count needs a semisimple algebra; "
                          "radical witness: %r" % (witness,))
    dim = algebra.dim
    if dim == 0:
        return 0
    rows = []
    for j in range(dim):
        for l in range(dim):
            rows.append([algebra.structure[i][j][l]
                         - algebra.structure[j][i][l] for i in range(dim)])
    return len(qnullspace(rows))


def check_associativity(algebra, bound=None):
    """Triples (i, j, k) where the structure constants fail; empty is good."""
    dim = algebra.dim
    n = dim if bound is None else min(bound, dim)
    bad = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(dim):
                    lhs = sum(algebra.structure[i][j][m]
                              * algebra.structure[m][k][l]
                              for m in range(dim))
                    rhs = sum(algebra.structure[j][k][m]
                              * algebra.structure[i][m][l]
                              for m in range(dim))
                    if lhs != rhs:
                        bad.append((i, j, k))
                        break
    return bad


@dataclass
class TraceCheck:
    status: str
    power: int | None = None
    trace_value: Fraction | None = None
    detail: str = ""


def nilpotent_trace_check(T, chi, spanning, r_max=6):
    """Search for a negligible power of T; a hit forces trace zero.

    Negligibility is tested against the supplied spanning set: z is in
    the radical iff it pairs to zero with every spanning element.
    """
    _numeric(chi)
    T = LinCombo.wrap(T)
    if T.p != T.q:
        raise EndalgError("nilpotency needs a square arity, got (%d, %d)"
                          % (T.p, T.q))
    spanning = list(spanning)
    power = T
    for r in range(1, r_max + 1):
        if all(pair_diagrams(s, power, chi) == 0 for s in spanning):
            trace = Fraction(chi.value(T.trace_close()))
            if trace == 0:
                return TraceCheck(status="pass", power=r, trace_value=trace)
            return TraceCheck(
                status="fail", power=r, trace_value=trace,
                detail="T^%d is negligible but the trace is %s" % (r, trace))
        power = power.compose(T)
    return TraceCheck(status="inconclusive",
                      detail="no negligible power up to r_max=%d" % r_max)


def generic_specializations(chi, seed=0, count=3):
    """Numeric characters at random rational points of height >= 1000.

    Agreement of a computation across these stands in for the generic
    statement; the points are reported so a disagreement is a witness.
    """
    if len(chi.params) != 1:
        raise EndalgError("generic probing needs exactly one parameter, "
                          "got %s" % (chi.params,))
    name = chi.params[0]
    points = probe_values(seed, count=count)
    return [(value, chi.specialize({name: value})) for value in points]
