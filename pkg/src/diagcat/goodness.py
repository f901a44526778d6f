"""Rational trace series and the goodness / loyalty classifiers.

A character is tested on two fronts: hom-space dimensions must saturate
across enumeration cutoffs, and the trace series of sampled
endomorphisms must fit a rational function whose denominator is
squarefree and nonzero at the origin.  Rationality of a truncated
series is only ever "within cutoff": a fit counts when it is confirmed
by surplus coefficients beyond what determines it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .diagram import Diagram, LinCombo, format_diagram
from .endalg import algebra_coords, coords_product, quotient_algebra
from .gram import hom_dim
from .linalg import qsolve
from .poly import (udeg, udivmod, ueval, uexact_div, ugcd, uis_squarefree,
                   umul, utrim)
from .spans import EnumerationBudgetError

__all__ = [
    "RationalSeriesFit",
    "GoodnessReport",
    "fit_rational",
    "trace_series",
    "check_goodness",
    "check_loyal",
]

SURPLUS_REQUIRED = 3


@dataclass
class RationalSeriesFit:
    series: list
    recurrence: list | None
    p: list | None
    q: list | None
    surplus: int
    is_rational: bool
    deg_p_le_deg_q: bool = False
    q_squarefree: bool = False
    q_nonzero_at_0: bool = False
    loyal: bool = False

    @property
    def good_function(self):
        return (self.is_rational and self.deg_p_le_deg_q
                and self.q_squarefree and self.q_nonzero_at_0)

    def summary(self):
        if not self.is_rational:
            return "no rational fit within cutoff (surplus %d)" % self.surplus
        return "P=[%s] Q=[%s] surplus=%d" % (
            ", ".join(str(c) for c in self.p),
            ", ".join(str(c) for c in self.q), self.surplus)


def _taylor(p, q, n):
    out = []
    for k in range(n):
        acc = Fraction(p[k]) if k < len(p) else Fraction(0)
        for i in range(1, min(k, len(q) - 1) + 1):
            acc -= Fraction(q[i]) * out[k - i]
        out.append(acc / Fraction(q[0]))
    return out


def fit_rational(series, surplus_required=SURPLUS_REQUIRED):
    """Minimal rational function P/Q whose Taylor series extends the input.

    Search is by ascending denominator degree, then ascending numerator
    degree; the first consistent system whose surplus (equations beyond
    unknowns) reaches the threshold wins.  Q(0) = 1 normalization,
    gcd(P, Q) = 1.
    """
    a = [Fraction(x) for x in series]
    n = len(a)
    if n < 4:
        raise ValueError("need at least 4 series terms, got %d" % n)

    def term(k):
        return a[k] if 0 <= k < n else Fraction(0)

    for dq in range(0, n):
        for dp in range(0, n - 1):
            rows = list(range(dp + 1, n))
            surplus = len(rows) - dq
            if surplus < surplus_required:
                break
            matrix = [[term(k - i) for i in range(1, dq + 1)] for k in rows]
            rhs = [a[k] for k in rows]
            sol = qsolve(matrix, rhs)
            if sol is None:
                continue
            qpoly = utrim([Fraction(1)] + [-c for c in sol])
            ppoly = utrim(umul(qpoly, a)[:dp + 1])
            g = ugcd(ppoly, qpoly)
            if udeg(g) > 0:
                ppoly = uexact_div(ppoly, g)
                qpoly = uexact_div(qpoly, g)
            q0 = qpoly[0]
            ppoly = utrim([c / q0 for c in ppoly])
            qpoly = utrim([c / q0 for c in qpoly])
            if _taylor(ppoly, qpoly, n) != a:
                continue
            fit = RationalSeriesFit(series=a,
                                    recurrence=[-c for c in qpoly[1:]],
                                    p=ppoly, q=qpoly, surplus=surplus,
                                    is_rational=True)
            fit.deg_p_le_deg_q = udeg(ppoly) <= udeg(qpoly)
            fit.q_squarefree = uis_squarefree(qpoly)
            fit.q_nonzero_at_0 = ueval(qpoly, Fraction(0)) != 0
            quot, _rem = udivmod(ppoly, qpoly)
            fit.loyal = (fit.q_squarefree and fit.q_nonzero_at_0
                         and udeg(quot) <= 1)
            return fit
    return RationalSeriesFit(series=a, recurrence=None, p=None, q=None,
                             surplus=0, is_rational=False)


def trace_series(T, chi, N, algebra=None):
    """[chi(Tr(T^0)), ..., chi(Tr(T^N))] with T^0 the ambient identity.

    With an algebra the powers run through exact structure constants
    (radical terms carry no trace, so the quotient loses nothing);
    otherwise diagram powers are composed directly.
    """
    T = LinCombo.wrap(T)
    if T.p != T.q:
        raise ValueError("trace series needs a square arity, got (%d, %d)"
                         % (T.p, T.q))
    ident = Diagram.identity(T.sig, T.p)
    out = [Fraction(chi.value(ident.trace_close()))]
    if algebra is not None:
        z = algebra_coords(algebra, T)
        w = list(z)
        for _ in range(N):
            out.append(sum(c * t for c, t in zip(w, algebra.traces)))
            w = coords_product(algebra, w, z)
        return out[:N + 1]
    power = T
    for _ in range(N):
        out.append(Fraction(chi.value(power.trace_close())))
        power = power.compose(T)
    return out[:N + 1]


@dataclass
class GoodnessReport:
    verdict: str
    saturation: list
    fits: list
    witness: dict | None
    seed: int
    notes: list = field(default_factory=list)


def _sample_combos(basis, p, rng, count):
    """Random small-coefficient combinations of spanning diagrams."""
    combos = []
    for _ in range(count):
        size = rng.randint(min(2, len(basis)), min(3, len(basis)))
        picks = rng.sample(range(len(basis)), size)
        terms = []
        for k in picks:
            coeff = 0
            while coeff == 0:
                coeff = rng.randint(-2, 2)
            terms.append((basis[k], Fraction(coeff)))
        combo = LinCombo(basis[0].sig, p, p, terms)
        if combo.terms:
            combos.append(combo)
    return combos


def _describe(T):
    if isinstance(T, LinCombo):
        return repr(T)
    return format_diagram(T)


def check_goodness(chi, span_fn, pq_list=((1, 1), (2, 2)), cutoffs=(2, 3, 4),
                   N=12, seed=0, samples=16,
                   surplus_required=SURPLUS_REQUIRED):
    """Desk-scale goodness verdict: saturation plus rational trace fits.

    verdict: "pass" when every hom dimension saturates and every
    sampled endomorphism has a good rational trace series; "fail" with
    the first offending fit as witness; "inconclusive" when the budget
    (enumeration or saturation evidence) runs out first.
    """
    if chi.params:
        raise ValueError("check_goodness needs a numeric character; "
                         "specialize parameters %s first" % (chi.params,))
    saturation = []
    fits = []
    witness = None
    notes = []
    inconclusive = False
    rng = random.Random(seed)
    for p, q in pq_list:
        try:
            dim, info = hom_dim(chi, span_fn, p, q, cutoffs=cutoffs,
                                seed=seed)
        except EnumerationBudgetError as err:
            notes.append("enumeration budget exhausted at (%d, %d): %s"
                         % (p, q, err))
            inconclusive = True
            continue
        saturation.append({"p": p, "q": q, "dim": dim,
                           "saturated": info["saturated"],
                           "history": info["history"]})
        if not info["saturated"]:
            inconclusive = True
            notes.append("no saturation evidence at (%d, %d)" % (p, q))
        if p != q:
            continue
        algebra = quotient_algebra(chi, span_fn, p, cutoffs=cutoffs)
        endos = list(algebra.spanning) + _sample_combos(algebra.spanning, p,
                                                        rng, samples)
        for T in endos:
            series = trace_series(T, chi, N, algebra=algebra)
            fit = fit_rational(series, surplus_required=surplus_required)
            entry = {"p": p, "endomorphism": _describe(T),
                     "series": series, "fit": fit}
            fits.append(entry)
            if not fit.good_function:
                # one bad fit settles the verdict; skip the rest
                witness = entry
                break
        if witness is not None:
            break
    if witness is not None:
        verdict = "fail"
    elif inconclusive:
        verdict = "inconclusive"
    else:
        verdict = "pass"
    return GoodnessReport(verdict=verdict, saturation=saturation, fits=fits,
                          witness=witness, seed=seed, notes=notes)


def check_loyal(alpha, surplus_required=SURPLUS_REQUIRED):
    """Loyalty of a genus series: rational with squarefree denominator,
    nonzero at the origin, and affine polynomial part."""
    fit = fit_rational(alpha, surplus_required=surplus_required)
    if not fit.is_rational:
        verdict = "not rational within cutoff"
    elif fit.loyal:
        verdict = "loyal"
    else:
        verdict = "not loyal"
    return {"verdict": verdict, "loyal": fit.is_rational and fit.loyal,
            "fit": fit}
