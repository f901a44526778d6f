"""Characters: exact-valued functionals on closed diagrams.

A character assigns a value (a Fraction, or a Poly in the family
parameters) to every connected closed diagram over its signature.  The
extension to arbitrary closed diagrams is multiplicative over connected
components, and linear over formal combinations.  Values are memoized
per canonical key, so re-evaluation is free and deterministic.
"""

from __future__ import annotations

import threading
from fractions import Fraction

from .diagram import LinCombo, format_diagram
from .models import dvr_signature, evaluate_closed, group_algebra_model
from .poly import Poly, ueval, ulagrange

__all__ = [
    "Character",
    "CharacterError",
    "ConsistencyError",
    "char_from_model",
    "char_closed_form",
    "interpolate_family",
    "char_add",
    "char_mul",
    "char_scale",
]


class CharacterError(ValueError):
    pass


class ConsistencyError(CharacterError):
    """An interpolated value disagrees with a surplus sample point."""


def _normalize(value):
    if isinstance(value, Poly):
        return value.const_value() if value.is_const() else value
    return Fraction(value)


def default_degree_bound(diagram):
    """Parameter-degree ceiling: one per wire plus one per free loop."""
    return len(diagram.wires) + diagram.free_loops


class Character:
    """Multiplicative functional on closed diagrams.

    connected_fn supplies the value on a canonical connected closed
    diagram; everything else (components, combinations, memoization)
    is handled here.  Memo writes are lock-guarded so concurrent
    evaluations stay consistent.
    """

    def __init__(self, sig, connected_fn, params=(), provenance="custom",
                 degree_bound_fn=None, model=None):
        self.sig = sig
        self.params = tuple(params)
        self.provenance = provenance
        self.model = model
        self._connected_fn = connected_fn
        self._degree_bound_fn = degree_bound_fn
        self._memo = {}
        self._lock = threading.Lock()

    def degree_bound(self, diagram):
        if self._degree_bound_fn is None:
            return default_degree_bound(diagram)
        return self._degree_bound_fn(diagram)

    def connected_value(self, diagram):
        if not diagram.is_closed():
            raise CharacterError("character needs a closed diagram, got "
                                 "arity (%d, %d)" % (diagram.p, diagram.q))
        key = diagram.canonical_key()
        with self._lock:
            if key in self._memo:
                return self._memo[key]
        value = _normalize(self._connected_fn(diagram.canonicalize()))
        with self._lock:
            return self._memo.setdefault(key, value)

    def value(self, x):
        if isinstance(x, LinCombo):
            if x.p or x.q:
                raise CharacterError("character needs a closed combination, "
                                     "got arity (%d, %d)" % (x.p, x.q))
            total = Fraction(0)
            for diagram, coeff in x.items():
                total = self.value(diagram) * coeff + total
            return _normalize(total)
        if not x.is_closed():
            raise CharacterError("character needs a closed diagram, got "
                                 "arity (%d, %d)" % (x.p, x.q))
        out = Fraction(1)
        for piece in x.connected_components():
            out = out * self.connected_value(piece)
        return _normalize(out)

    def value_at(self, x, assignment=None):
        """Fully numeric value; assignment binds any symbolic parameters."""
        value = self.value(x)
        if isinstance(value, Poly):
            return value.eval({k: Fraction(v)
                               for k, v in (assignment or {}).items()})
        return value

    def specialize(self, assignment):
        """Bind some parameters to exact numbers; returns a new character."""
        bound = {k: Fraction(v) for k, v in assignment.items()}

        def fn(diagram):
            value = self.connected_value(diagram)
            if isinstance(value, Poly):
                return value.subs(bound)
            return value

        params = tuple(p for p in self.params if p not in bound)
        return Character(self.sig, fn, params=params,
                         provenance=self.provenance,
                         degree_bound_fn=self._degree_bound_fn,
                         model=self.model)

    def __repr__(self):
        return "Character(provenance=%r, params=%r)" % (
            self.provenance, self.params)


# ---------------------------------------------------------------------------
# constructors

def char_from_model(model):
    """Character of invariants of a concrete model."""
    return Character(model.sig,
                     lambda d: evaluate_closed(model, d),
                     params=(),
                     provenance="model",
                     degree_bound_fn=lambda d: 0,
                     model=model)


def _frobenius_alpha(params):
    """Genus -> value function from an explicit list (+ optional linear
    recurrence) or from the Taylor coefficients of a rational function."""
    alphas = params.get("alphas")
    recurrence = params.get("recurrence")
    z_num = params.get("z_num")
    z_den = params.get("z_den")
    if alphas is not None:
        known = [Fraction(a) for a in alphas]
        rec = [Fraction(c) for c in (recurrence or [])]

        def alpha(g):
            while g >= len(known):
                if not rec:
                    raise CharacterError(
                        "genus %d is past the supplied alpha list (length %d) "
                        "and no recurrence was given" % (g, len(known)))
                if len(known) < len(rec):
                    raise CharacterError(
                        "recurrence of order %d needs %d seed values, got %d"
                        % (len(rec), len(rec), len(known)))
                known.append(sum(c * known[-1 - i]
                                 for i, c in enumerate(rec)))
            return known[g]

        return alpha
    if z_num is not None and z_den is not None:
        num = [Fraction(c) for c in z_num]
        den = [Fraction(c) for c in z_den]
        if not den or den[0] == 0:
            raise CharacterError("rational alpha series needs Q(0) != 0")
        taylor = []

        def alpha(g):
            while g >= len(taylor):
                k = len(taylor)
                acc = num[k] if k < len(num) else Fraction(0)
                for i in range(1, min(k, len(den) - 1) + 1):
                    acc -= den[i] * taylor[k - i]
                taylor.append(acc / den[0])
            return taylor[g]

        return alpha
    raise CharacterError("frobenius closed form needs either alphas= "
                         "(optionally with recurrence=) or z_num= and z_den=")


def _frobenius_genus(diagram):
    # Wiring balance forces #m = #u + 2#c - #eps on closed diagrams, so
    # Euler characteristic gives genus = 1 + #c - #eps.
    if diagram.free_loops and not diagram.boxes:
        # snake moves turn the bare circle into cap after cup, a torus
        return 1
    counts = {}
    for name in diagram.boxes:
        counts[name] = counts.get(name, 0) + 1
    g = 1 + counts.get("c", 0) - counts.get("eps", 0)
    if diagram.free_loops or not diagram.boxes:
        raise CharacterError("frobenius character is defined on surface "
                             "diagrams; free loops have no genus")
    if g < 0:
        raise CharacterError("negative genus %d; diagram is not a connected "
                             "closed surface" % g)
    return g


def _power_log(value, base):
    v = Fraction(value)
    if v.denominator != 1 or v <= 0:
        return None
    n = v.numerator
    e = 0
    while n % base == 0:
        n //= base
        e += 1
    return e if n == 1 else None


def _dvr_connected_fn(r, params, primes=(2, 3)):
    """Monomial evaluator certified on finite module models.

    The exponent of t_j is read off as log_p of the value on the module
    with a single (Z/p^j)-summand; doing this for two primes, and
    checking the product formula on the all-ones module, certifies the
    monomial shape before any symbolic value is produced.
    """
    cache = {}

    def model_for(prime, ranks):
        key = (prime, ranks)
        if key not in cache:
            cache[key] = group_algebra_model(prime, r, ranks)
        return cache[key]

    def fn(diagram):
        exponents = None
        for prime in primes:
            exps = []
            for j in range(r):
                ranks = tuple(1 if i == j else 0 for i in range(r))
                got = evaluate_closed(model_for(prime, ranks), diagram)
                e = _power_log(got, prime)
                if e is None:
                    raise CharacterError(
                        "value %s on the rank-delta module (prime %d, slot "
                        "%d) is not a prime power; %s is outside the "
                        "monomial family" % (got, prime, j + 1,
                                             format_diagram(diagram)))
                exps.append(e)
            if exponents is None:
                exponents = exps
            elif exponents != exps:
                raise CharacterError(
                    "exponent vectors disagree across primes (%s vs %s) on "
                    "%s" % (exponents, exps, format_diagram(diagram)))
            # all-ones module stays materializable only for small orders
            if prime ** (r * (r + 1) // 2) <= 256:
                ones = tuple(1 for _ in range(r))
                got = evaluate_closed(model_for(prime, ones), diagram)
                want = Fraction(prime) ** sum(exponents)
                if got != want:
                    raise CharacterError(
                        "monomial check failed on the all-ones module "
                        "(prime %d): expected %s, got %s" % (prime, want, got))
        out = Poly.const(1)
        for j, e in enumerate(exponents):
            out = out * (Poly.var(params[j]) ** e)
        return out

    return fn


def _maybe_specialize(chi, var, params):
    value = params.get(var)
    if value is None:
        return chi
    return chi.specialize({var: Fraction(value)})


def char_closed_form(preset, **params):
    """Characters with a known evaluation rule.

    gl:         empty signature, each loop contributes the parameter.
    orth, sym:  every connected closed diagram evaluates to the parameter.
    frobenius:  connected genus-g surface evaluates to alpha_g; see
                _frobenius_alpha for how the sequence is supplied.
    endo:       a cycle of k generator boxes evaluates to
                sum_j weight_j * lambda_j^k (a loop is the k = 0 case).
    dvr:        connected closed diagram evaluates to a monomial in
                t_1..t_r with certified exponents.
    """
    if preset == "gl":
        var = params.get("var", "t")
        sig = params.get("sig") or _default_sig("gl", var)
        t = Poly.var(var)

        def fn(diagram):
            if diagram.boxes:
                raise CharacterError("gl character domain has no generators")
            return t

        chi = Character(sig, fn, params=(var,),
                        provenance="closed_form:gl",
                        degree_bound_fn=lambda d: d.free_loops)
        return _maybe_specialize(chi, var, params)
    if preset in ("orth", "sym"):
        var = params.get("var", "t")
        sig = params.get("sig") or _default_sig(preset, var)
        t = Poly.var(var)
        chi = Character(sig, lambda d: t, params=(var,),
                        provenance="closed_form:%s" % preset,
                        degree_bound_fn=lambda d:
                        len(d.connected_components()) or 1)
        return _maybe_specialize(chi, var, params)
    if preset == "frobenius":
        sig = params.get("sig") or _default_sig("frobenius", None)
        alpha = _frobenius_alpha(params)
        return Character(sig, lambda d: alpha(_frobenius_genus(d)),
                         params=(),
                         provenance="closed_form:frobenius")
    if preset == "endo":
        sig = params.get("sig") or _default_sig("endo", None)
        pairs = [(_coerce_value(lam), _coerce_value(w))
                 for lam, w in params["pairs"]]
        names = _poly_param_names(pairs)

        def fn(diagram):
            k = len(diagram.boxes)
            total = Fraction(0)
            for lam, weight in pairs:
                total = weight * _poly_pow(lam, k) + total
            return total

        return Character(sig, fn, params=tuple(names),
                         provenance="closed_form:endo",
                         degree_bound_fn=lambda d: len(d.boxes) + 1)
    if preset == "dvr":
        r = int(params["r"])
        if not 1 <= r <= 3:
            raise CharacterError("dvr closed form supports 1 <= r <= 3")
        sig = params.get("sig") or dvr_signature(r)
        names = sig.params
        return Character(sig, _dvr_connected_fn(r, names), params=names,
                         provenance="closed_form:dvr",
                         degree_bound_fn=default_degree_bound)
    raise CharacterError("unknown closed form %r" % (preset,))


def _default_sig(preset, var):
    from . import models
    if preset == "gl":
        return models.permutation_signature(params=(var,))
    if preset == "orth":
        return models.brauer_signature(params=(var,))
    if preset == "sym":
        return models.partition_signature(params=(var,))
    if preset == "frobenius":
        return models.frobenius_signature()
    if preset == "endo":
        return models.endo_signature()
    raise CharacterError("no default signature for %r" % (preset,))


def _coerce_value(x):
    if isinstance(x, str):
        return Poly.var(x)
    if isinstance(x, Poly):
        return x
    return Fraction(x)


def _poly_param_names(pairs):
    names = set()
    for lam, weight in pairs:
        for item in (lam, weight):
            if isinstance(item, Poly):
                names.update(item.vars)
    return sorted(names)


def _poly_pow(x, k):
    if isinstance(x, Poly):
        return x ** k
    return Fraction(x) ** k


def interpolate_family(models, degree_bound_fn=None, var="t"):
    """One-parameter character from integer-point models.

    Per connected diagram: Lagrange interpolation through the first
    degree_bound + 1 points; every remaining point is a consistency
    witness and a mismatch is fatal (it means the degree bound lies).
    """
    if len(models) < 2:
        raise CharacterError("interpolation needs at least two points")
    points = [(Fraction(point), model) for point, model in models]
    if len({point for point, _ in points}) != len(points):
        raise CharacterError("interpolation points must be distinct")
    sig = points[0][1].sig
    for _, model in points:
        if model.sig.generators != sig.generators:
            raise CharacterError("interpolation models must share one "
                                 "signature")
    bound_fn = degree_bound_fn or default_degree_bound

    def fn(diagram):
        bound = bound_fn(diagram)
        if bound + 1 > len(points):
            raise CharacterError(
                "degree bound %d needs %d points, only %d supplied for %s"
                % (bound, bound + 1, len(points), format_diagram(diagram)))
        nodes = points[:bound + 1]
        witnesses = points[bound + 1:]
        coeffs = ulagrange([(x, evaluate_closed(model, diagram))
                            for x, model in nodes])
        for x, model in witnesses:
            got = evaluate_closed(model, diagram)
            want = ueval(coeffs, x)
            if got != want:
                raise ConsistencyError(
                    "surplus point %s disagrees on %s: interpolant gives %s, "
                    "model gives %s (degree bound %d is wrong)"
                    % (x, format_diagram(diagram), want, got, bound))
        return Poly.from_univariate(coeffs, var)

    family_sig = type(sig)(sig.generators, params=(var,))
    return Character(family_sig, fn, params=(var,),
                     provenance="interpolated",
                     degree_bound_fn=bound_fn)


# ---------------------------------------------------------------------------
# the character algebra

def _require_same_generators(a, b):
    if a.sig.generators != b.sig.generators:
        raise CharacterError("characters live over different signatures: "
                             "%r vs %r" % (a.sig, b.sig))


def char_add(a, b):
    """Pointwise sum on connected keys (still multiplicative over
    components, so this is not the sum of the full functionals)."""
    _require_same_generators(a, b)
    return Character(a.sig,
                     lambda d: a.connected_value(d) + b.connected_value(d),
                     params=tuple(dict.fromkeys(a.params + b.params)),
                     provenance="algebraic combination",
                     degree_bound_fn=lambda d: max(a.degree_bound(d),
                                                   b.degree_bound(d)))


def char_mul(a, b):
    _require_same_generators(a, b)
    return Character(a.sig,
                     lambda d: a.connected_value(d) * b.connected_value(d),
                     params=tuple(dict.fromkeys(a.params + b.params)),
                     provenance="algebraic combination",
                     degree_bound_fn=lambda d: a.degree_bound(d)
                     + b.degree_bound(d))


def char_scale(factor, chi):
    """Scale every connected value; symbolic factors are allowed."""
    c = _coerce_value(factor)
    extra = tuple(c.vars) if isinstance(c, Poly) else ()
    return Character(chi.sig,
                     lambda d: c * chi.connected_value(d),
                     params=tuple(dict.fromkeys(extra + chi.params)),
                     provenance="algebraic combination",
                     degree_bound_fn=lambda d: chi.degree_bound(d)
                     + (c.total_degree() if isinstance(c, Poly) else 0))
