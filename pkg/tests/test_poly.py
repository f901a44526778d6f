import random
from fractions import Fraction

import pytest

from diagcat.poly import (Poly, uadd, uderiv, udeg, udivmod, ueval,
                          uexact_div, ugcd, uis_squarefree, uis_zero,
                          ulagrange, umul, uprimitive, urational_roots,
                          uscale, usub, utrim)


def _random_poly(rng, names, max_deg=3, max_terms=4):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        expo = tuple(rng.randint(0, max_deg) for _ in names)
        terms[expo] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return Poly(names, terms)


def test_const_and_var():
    t = Poly.var("t")
    five = Poly.const(5)
    assert t.degree_in("t") == 1
    assert five.is_const()
    assert five.const_value() == 5
    assert (t * 0).is_zero()
    assert Poly.coerce(Fraction(1, 2)).const_value() == Fraction(1, 2)


def test_promotion_across_variable_sets():
    t = Poly.var("t")
    s = Poly.var("s")
    p = t + s
    assert p.vars == ("s", "t")
    assert p.eval({"s": 2, "t": 3}) == 5
    # same polynomial built in either order
    assert t * s == s * t
    assert (t + 1) * (s + 1) == s * t + s + t + 1


def test_ring_laws_random():
    rng = random.Random(7)
    for _ in range(30):
        a = _random_poly(rng, ("t", "s"))
        b = _random_poly(rng, ("s",))
        c = _random_poly(rng, ("t",))
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_subs_partial_and_eval():
    t, s = Poly.var("t"), Poly.var("s")
    p = t ** 2 * s + 3 * t
    half = p.subs({"s": Fraction(1, 2)})
    assert half.eval({"t": 2}) == 2 + 6
    with pytest.raises(ValueError):
        p.eval({"t": 1})
    assert p.subs({"t": s}) == s ** 3 + 3 * s


def test_pow_matches_repeated_mul():
    rng = random.Random(3)
    p = _random_poly(rng, ("t",))
    acc = Poly.const(1)
    for n in range(5):
        assert p ** n == acc
        acc = acc * p


def test_univariate_round_trip():
    coeffs = [Fraction(2), Fraction(0), Fraction(-1), Fraction(1, 3)]
    p = Poly.from_univariate(coeffs, "t")
    assert p.univariate_coeffs() == coeffs
    with pytest.raises(ValueError):
        (Poly.var("t") * Poly.var("s")).univariate_coeffs()
    # constants come back as singletons
    assert Poly.const(4).univariate_coeffs() == [Fraction(4)]


def test_str_is_readable():
    t = Poly.var("t")
    assert str(t ** 2 - t) == "t^2 - t"
    assert str(Poly.const(0)) == "0"
    assert str(2 * t + 1) == "2*t + 1"


# ---------------------------------------------------------------------------
# dense univariate helpers

def test_utrim_and_degree():
    assert utrim([0, 1, 0, 0]) == [0, 1]
    assert utrim([0, 0]) == [0]
    assert uis_zero([0, 0])
    assert udeg([0]) == -1
    assert udeg([5]) == 0
    assert udeg([1, 2, 3]) == 2


def test_udivmod_property_random():
    rng = random.Random(11)
    for _ in range(40):
        p = [Fraction(rng.randint(-6, 6)) for _ in range(rng.randint(1, 6))]
        q = [Fraction(rng.randint(-6, 6)) for _ in range(rng.randint(1, 4))]
        if uis_zero(q):
            continue
        quot, rem = udivmod(p, q)
        assert utrim(uadd(umul(quot, q), rem)) == utrim(p)
        assert uis_zero(rem) or udeg(rem) < udeg(q)


def test_uexact_div():
    prod = umul([1, 2], [3, 0, 1])
    assert utrim(uexact_div(prod, [1, 2])) == [3, 0, 1]
    with pytest.raises(ArithmeticError):
        uexact_div([1, 1, 1], [1, 1])


def test_ugcd_monic_and_divides():
    a = umul([1, 1], [2, 3])
    b = umul([1, 1], [5, 0, 1])
    g = ugcd(a, b)
    assert g == [1, 1]
    _, r1 = udivmod(a, g)
    _, r2 = udivmod(b, g)
    assert uis_zero(r1) and uis_zero(r2)


def test_squarefree_detection():
    assert uis_squarefree([1, 1])
    assert uis_squarefree([1, -3, 2])          # (1-x)(1-2x)
    assert not uis_squarefree(umul([1, 1], [1, 1]))
    assert not uis_squarefree([1, -2, 1])      # (1-x)^2


def test_uderiv_uscale_usub():
    p = [Fraction(1), Fraction(2), Fraction(3)]
    assert uderiv(p) == [Fraction(2), Fraction(6)]
    assert uscale(p, Fraction(2)) == [2, 4, 6]
    assert utrim(usub(p, p)) == [0]
    assert ueval(p, Fraction(2)) == 1 + 4 + 12


def test_uprimitive_removes_content():
    prim, content = uprimitive([Fraction(2), Fraction(4), Fraction(6)])
    assert prim == [1, 2, 3]
    assert content == 2
    prim, content = uprimitive([Fraction(1, 2), Fraction(3, 2)])
    assert prim == [1, 3]
    assert content == Fraction(1, 2)


def test_rational_roots():
    # (x - 1)(x + 2)(2x - 1) = -2 + 3x + 3x^2 + ... expand exactly
    p = umul(umul([-1, 1], [2, 1]), [-1, 2])
    roots = set(urational_roots(p))
    assert roots == {Fraction(1), Fraction(-2), Fraction(1, 2)}
    assert urational_roots([1]) == []


def test_lagrange_reproduces_points():
    rng = random.Random(5)
    xs = [Fraction(k) for k in range(5)]
    ys = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in xs]
    coeffs = ulagrange(list(zip(xs, ys)))
    for x, y in zip(xs, ys):
        assert ueval(coeffs, x) == y
    assert udeg(coeffs) <= len(xs) - 1
