import random
from fractions import Fraction

from diagcat.linalg import (PolyElimination, poly_det, poly_eliminate,
                            poly_generic_nullspace, poly_generic_rank,
                            poly_rank_at, qdet, qmatinv, qnullspace, qrank,
                            qrref, qsolve)
from diagcat.poly import Poly


def _f(rows):
    return [[Fraction(x) for x in row] for row in rows]


def _random_matrix(rng, n, m):
    return [[Fraction(rng.randint(-4, 4)) for _ in range(m)]
            for _ in range(n)]


def test_qrank_oracles():
    assert qrank(_f([[1, 2], [2, 4]])) == 1
    assert qrank(_f([[1, 0], [0, 1]])) == 2
    assert qrank([]) == 0
    assert qrank(_f([[0, 0], [0, 0]])) == 0
    assert qrank(_f([[1, 2, 3]])) == 1


def test_qrref_pivot_columns():
    reduced, pivots = qrref(_f([[0, 1, 2], [0, 2, 4], [1, 0, 0]]))
    assert pivots == [0, 1]
    for r, c in enumerate(pivots):
        assert reduced[r][c] == 1
        assert all(reduced[k][c] == 0 for k in range(len(reduced)) if k != r)


def test_qnullspace_annihilates():
    rng = random.Random(2)
    for _ in range(25):
        m = _random_matrix(rng, rng.randint(1, 4), rng.randint(1, 5))
        kernel = qnullspace(m)
        assert len(kernel) == len(m[0]) - qrank(m)
        for vec in kernel:
            assert all(sum(row[j] * vec[j] for j in range(len(vec))) == 0
                       for row in m)


def test_qsolve_random_and_inconsistent():
    rng = random.Random(9)
    for _ in range(25):
        m = _random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        x = [Fraction(rng.randint(-3, 3)) for _ in range(len(m[0]))]
        rhs = [sum(row[j] * x[j] for j in range(len(x))) for row in m]
        sol = qsolve(m, rhs)
        assert sol is not None
        assert [sum(row[j] * sol[j] for j in range(len(sol)))
                for row in m] == rhs
    assert qsolve(_f([[1, 1], [1, 1]]), [Fraction(0), Fraction(1)]) is None


def test_qsolve_zero_columns():
    # no unknowns: solvable iff the right-hand side vanishes
    assert qsolve([[], []], [Fraction(0), Fraction(0)]) == []
    assert qsolve([[], []], [Fraction(0), Fraction(1)]) is None


def test_qmatinv_round_trip():
    rng = random.Random(4)
    found = 0
    while found < 10:
        m = _random_matrix(rng, 3, 3)
        if qdet(m) == 0:
            continue
        found += 1
        inv = qmatinv(m)
        prod = [[sum(m[i][k] * inv[k][j] for k in range(3))
                 for j in range(3)] for i in range(3)]
        assert prod == _f([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def test_qdet_multiplicative():
    rng = random.Random(6)
    for _ in range(15):
        a = _random_matrix(rng, 3, 3)
        b = _random_matrix(rng, 3, 3)
        ab = [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)]
              for i in range(3)]
        assert qdet(ab) == qdet(a) * qdet(b)
    assert qdet(_f([[2, 0], [0, 3]])) == 6


# ---------------------------------------------------------------------------
# fraction-free elimination over Q[t]; entries are dense coefficient
# lists, low degree first: t = [0, 1]

T = [Fraction(0), Fraction(1)]
ONE = [Fraction(1)]


def test_poly_generic_rank_and_specialization():
    m = [[T, ONE], [ONE, T]]
    assert poly_generic_rank(m) == 2
    assert poly_rank_at(m, Fraction(1)) == 1
    assert poly_rank_at(m, Fraction(-1)) == 1
    assert poly_rank_at(m, Fraction(2)) == 2


def test_poly_det_matches_expansion():
    m = [[T, ONE], [ONE, T]]
    d = poly_det(m)
    assert d in ([-1, 0, 1], [1, 0, -1])       # t^2 - 1 up to sign


def test_poly_eliminate_reports():
    t2 = [Fraction(0), Fraction(0), Fraction(1)]
    elim = poly_eliminate([[t2, T], [T, t2]])
    assert isinstance(elim, PolyElimination)
    assert elim.rank == 2


def test_poly_eliminate_rank_deficit():
    t2 = [Fraction(0), Fraction(0), Fraction(1)]
    # second row is t times the first, identically
    m = [[ONE, T], [T, t2]]
    assert poly_generic_rank(m) == 1


def test_poly_generic_nullspace():
    t2 = [Fraction(0), Fraction(0), Fraction(1)]
    m = [[ONE, T], [T, t2]]
    vectors = poly_generic_nullspace(m)
    assert len(vectors) == 1
    vec = vectors[0]
    for row in m:
        residual = Poly.from_univariate(row[0], "t") \
            * Poly.from_univariate(vec[0], "t") \
            + Poly.from_univariate(row[1], "t") \
            * Poly.from_univariate(vec[1], "t")
        assert residual.is_zero()


def test_poly_rank_on_scalar_entries():
    m = [[ONE, [Fraction(2)]], [[Fraction(2)], [Fraction(4)]]]
    assert poly_generic_rank(m) == 1
