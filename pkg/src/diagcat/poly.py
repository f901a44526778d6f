"""Exact polynomial arithmetic over the rationals.

Two layers live here.  ``Poly`` is a small sparse multivariate polynomial
with ``Fraction`` coefficients, used for character values and linear-combo
coefficients.  The ``u*`` functions operate on dense univariate coefficient
lists (index = degree) and back the fraction-free elimination and the
series-fitting code, where speed and predictability matter more than
generality.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class Poly:
    """Sparse polynomial in named variables with Fraction coefficients.

    ``vars`` is an ordered tuple of names; ``terms`` maps exponent tuples
    (one slot per variable) to nonzero Fractions.  Arithmetic between
    polynomials over different variable sets promotes both to the sorted
    union, so values built independently combine predictably.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars=(), terms=None):
        self.vars = tuple(vars)
        clean = {}
        for expo, coeff in (terms or {}).items():
            c = Fraction(coeff)
            if c:
                clean[tuple(expo)] = c
        self.terms = clean

    @staticmethod
    def const(value):
        c = Fraction(value)
        return Poly((), {(): c} if c else {})

    @staticmethod
    def var(name):
        return Poly((name,), {(1,): Fraction(1)})

    @staticmethod
    def coerce(value):
        if isinstance(value, Poly):
            return value
        return Poly.const(value)

    def is_zero(self):
        return not self.terms

    def is_const(self):
        return all(all(e == 0 for e in expo) for expo in self.terms)

    def const_value(self):
        if not self.terms:
            return Fraction(0)
        if not self.is_const():
            raise ValueError("polynomial is not constant: %s" % self)
        return next(iter(self.terms.values()))

    def total_degree(self):
        if not self.terms:
            return 0
        return max(sum(expo) for expo in self.terms)

    def degree_in(self, name):
        if name not in self.vars:
            return 0
        i = self.vars.index(name)
        return max((expo[i] for expo in self.terms), default=0)

    def _promote(self, vars):
        if self.vars == vars:
            return self
        pos = [vars.index(v) for v in self.vars]
        terms = {}
        for expo, coeff in self.terms.items():
            new = [0] * len(vars)
            for p, e in zip(pos, expo):
                new[p] = e
            terms[tuple(new)] = coeff
        return Poly(vars, terms)

    def _unify(self, other):
        other = Poly.coerce(other)
        if self.vars == other.vars:
            return self, other
        vars = tuple(sorted(set(self.vars) | set(other.vars)))
        return self._promote(vars), other._promote(vars)

    def __add__(self, other):
        a, b = self._unify(other)
        terms = dict(a.terms)
        for expo, coeff in b.terms.items():
            terms[expo] = terms.get(expo, Fraction(0)) + coeff
        return Poly(a.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Poly.coerce(other))

    def __rsub__(self, other):
        return Poly.coerce(other) + (-self)

    def __mul__(self, other):
        a, b = self._unify(other)
        terms = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                expo = tuple(x + y for x, y in zip(e1, e2))
                terms[expo] = terms.get(expo, Fraction(0)) + c1 * c2
        return Poly(a.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        out = Poly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        a, b = self._unify(other)
        return a.terms == b.terms

    def __hash__(self):
        key = tuple(sorted(self._strip().terms.items()))
        return hash((self._strip().vars, key))

    def _strip(self):
        """Drop variables that do not actually occur."""
        used = [i for i, v in enumerate(self.vars)
                if any(expo[i] for expo in self.terms)]
        if len(used) == len(self.vars):
            return self
        vars = tuple(self.vars[i] for i in used)
        terms = {tuple(expo[i] for i in used): c for expo, c in self.terms.items()}
        return Poly(vars, terms)

    def subs(self, assignment):
        """Substitute Fractions (or Polys) for some variables."""
        out = Poly.const(0)
        for expo, coeff in sorted(self.terms.items()):
            term = Poly.const(coeff)
            for var, e in zip(self.vars, expo):
                if not e:
                    continue
                if var in assignment:
                    term = term * (Poly.coerce(assignment[var]) ** e)
                else:
                    term = term * (Poly.var(var) ** e)
            out = out + term
        return out

    def eval(self, assignment):
        """Full evaluation to a Fraction; every used variable must be bound."""
        value = self.subs(assignment)
        return value.const_value()

    def univariate_coeffs(self):
        """Dense coefficient list when at most one variable occurs."""
        me = self._strip()
        if len(me.vars) > 1:
            raise ValueError("polynomial in %d variables is not univariate"
                             % len(me.vars))
        if not me.terms:
            return [Fraction(0)]
        if not me.vars:
            return [me.const_value()]
        deg = max(e[0] for e in me.terms)
        out = [Fraction(0)] * (deg + 1)
        for (e,), c in me.terms.items():
            out[e] = c
        return out

    @staticmethod
    def from_univariate(coeffs, name):
        return Poly((name,), {(i,): c for i, c in enumerate(coeffs) if c})

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for expo, coeff in sorted(self.terms.items(), reverse=True):
            factors = []
            for var, e in zip(self.vars, expo):
                if e == 1:
                    factors.append(var)
                elif e > 1:
                    factors.append("%s^%d" % (var, e))
            if not factors:
                body = str(coeff)
            elif coeff == 1:
                body = "*".join(factors)
            elif coeff == -1:
                body = "-" + "*".join(factors)
            else:
                body = str(coeff) + "*" + "*".join(factors)
            bits.append(body)
        out = bits[0]
        for b in bits[1:]:
            out += " - " + b[1:] if b.startswith("-") else " + " + b
        return out

    def __repr__(self):
        return "Poly(%s)" % self


# ---------------------------------------------------------------------------
# univariate helpers on dense coefficient lists (low degree first)

def utrim(p):
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return list(p)


def uis_zero(p):
    return all(c == 0 for c in p)


def udeg(p):
    p = utrim(p)
    if uis_zero(p):
        return -1
    return len(p) - 1


def uadd(p, q):
    n = max(len(p), len(q))
    return utrim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
                  for i in range(n)])


def usub(p, q):
    n = max(len(p), len(q))
    return utrim([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0)
                  for i in range(n)])


def uscale(p, c):
    if c == 0:
        return [0]
    return [c * x for x in p]


def umul(p, q):
    if uis_zero(p) or uis_zero(q):
        return [0]
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] += a * b
    return utrim(out)


def udivmod(p, q):
    """Long division; works over Fraction or exact-int inputs (int only when
    the division happens to stay integral)."""
    p = utrim(p)
    q = utrim(q)
    if uis_zero(q):
        raise ZeroDivisionError("polynomial division by zero")
    quot = [0] * max(1, len(p) - len(q) + 1)
    rem = list(p)
    dq = len(q) - 1
    lead = q[-1]
    while not uis_zero(rem) and len(rem) - 1 >= dq:
        shift = len(rem) - 1 - dq
        c = Fraction(rem[-1], 1) / lead if not isinstance(rem[-1], Fraction) else rem[-1] / lead
        quot[shift] = quot[shift] + c
        for i in range(len(q)):
            rem[shift + i] -= c * q[i]
        rem = utrim(rem)
        if uis_zero(rem):
            break
    return utrim(quot), utrim(rem)


def uexact_div(p, q):
    quot, rem = udivmod(p, q)
    if not uis_zero(rem):
        raise ArithmeticError("inexact polynomial division")
    return quot


def ueval(p, x):
    out = Fraction(0)
    for c in reversed(p):
        out = out * x + c
    return out


def uderiv(p):
    if len(p) <= 1:
        return [0]
    return utrim([i * c for i, c in enumerate(p)][1:])


def ugcd(p, q):
    """Monic gcd over the rationals."""
    a = [Fraction(c) for c in utrim(p)]
    b = [Fraction(c) for c in utrim(q)]
    while not uis_zero(b):
        _, r = udivmod(a, b)
        a, b = b, [Fraction(c) for c in utrim(r)]
    if uis_zero(a):
        return [Fraction(0)]
    lead = a[-1]
    return [c / lead for c in a]


def uis_squarefree(p):
    if udeg(p) <= 0:
        return True
    g = ugcd(p, uderiv(p))
    return udeg(g) <= 0


def uprimitive(p):
    """Integer-coefficient primitive form (content removed), plus content."""
    p = utrim(p)
    den = 1
    for c in p:
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) if isinstance(c, Fraction) else c * den for c in p]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    if g == 0:
        return [0], Fraction(0)
    return [c // g for c in ints], Fraction(g, den)


def urational_roots(p):
    """All rational roots of p, exactly (rational root theorem).

    Returns a sorted list of Fractions.  Multiplicities are not reported.
    """
    ints, _ = uprimitive(p)
    if uis_zero(ints):
        raise ValueError("zero polynomial has every root")
    roots = set()
    k = 0
    while ints[k] == 0:
        k += 1
    if k:
        roots.add(Fraction(0))
        ints = ints[k:]
    if len(ints) == 1:
        return sorted(roots)
    a0, an = abs(ints[0]), abs(ints[-1])

    def divisors(n):
        out = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.append(d)
                out.append(n // d)
            d += 1
        return sorted(set(out))

    for num in divisors(a0):
        for den in divisors(an):
            for s in (1, -1):
                cand = Fraction(s * num, den)
                if ueval(ints, cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def ulagrange(points):
    """Interpolating polynomial through (x_i, y_i), exact, as coeff list."""
    xs = [Fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation points must be distinct")
    out = [Fraction(0)]
    for i, (xi, yi) in enumerate(points):
        num = [Fraction(1)]
        den = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            num = umul(num, [-Fraction(xj), Fraction(1)])
            den *= Fraction(xi) - Fraction(xj)
        out = uadd(out, uscale(num, Fraction(yi) / den))
    return utrim(out)
