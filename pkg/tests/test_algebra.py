import itertools

import pytest
from hypothesis import given, settings, strategies as st

from frobdescent.algebra import (FieldError, FqMatrix, GF, MPoly, NotPthPower, Poly, RatFunc, field,
                                 least_irreducible, poly_gcd, poly_roots, roots_over_extension,
                                 solve_affine)

FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 3), (3, 2), (5, 2), (13, 1), (5, 4)]


def test_prime_field_basics():
    F = field(5)
    assert F.add(3, 4) == 2
    assert F.inv(2) == 3
    assert F.pth_root(4) == 4


def test_f25_with_explicit_modulus():
    F = GF(5, 2, modulus=(3, 0, 1))  # u^2 - 2
    u = F.gen()
    assert F.mul(u, u) == 2


def test_default_modulus_is_least_irreducible():
    assert least_irreducible(5, 2) == (2, 0, 1)
    assert field(5, 2).modulus == (2, 0, 1)


def test_caps_and_bad_moduli():
    with pytest.raises(FieldError):
        GF(4)
    with pytest.raises(FieldError):
        GF(17)
    with pytest.raises(FieldError):
        GF(5, 2, modulus=(4, 0, 1))  # u^2 - 1 splits


@pytest.mark.parametrize("p,k", FIELDS)
def test_field_axioms_exhaustive_small(p, k):
    F = field(p, k)
    els = list(range(F.q))[:40]
    for a, b in itertools.product(els, repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.sub(F.add(a, b), b) == a
        if b:
            assert F.mul(F.div(a, b), b) == a


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_distributivity_and_frobenius(pk, data):
    F = field(*pk)
    a, b, c = (data.draw(st.integers(0, F.q - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    # Frobenius is additive and the p-th root inverts it
    assert F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b))
    assert F.frob(F.pth_root(a)) == a


def test_poly_pth_root():
    F = field(5)
    f = Poly(F, [0] * 5 + [2] + [0] * 4 + [1])  # t^10 + 2 t^5
    assert f.pth_root() == Poly(F, [0, 2, 1])
    with pytest.raises(NotPthPower):
        Poly(F, [0, 0, 0, 1]).pth_root()


def test_roots():
    F5 = field(5)
    assert poly_roots(Poly(F5, [1, 0, 1])) == [2, 3]
    F2 = field(2)
    g = Poly(F2, [1, 1, 1])
    assert poly_roots(g) == []
    r = roots_over_extension(g, 2)
    F4 = field(2, 2)
    assert sorted(x.value for x in r) == [2, 3]
    assert all(F4.add(F4.add(F4.mul(x.value, x.value), x.value), 1) == 0 for x in r)


@pytest.mark.parametrize("p,k", [(5, 4), (3, 4), (7, 2), (13, 2)])
def test_roots_match_scan(p, k):
    """Cantor-Zassenhaus (or the table scan) against exhaustive evaluation."""
    F = field(p, k)
    import random
    rng = random.Random(p * 100 + k)
    for _ in range(5):
        f = Poly(F, [rng.randrange(F.q) for _ in range(5)] + [1])
        want = [a for a in range(F.q) if f(a) == 0]
        assert poly_roots(f) == want


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=1, max_size=6), st.lists(st.integers(0, 6), min_size=1, max_size=6))
def test_gcd_divides(a, b):
    F = field(7)
    A, B = Poly(F, a), Poly(F, b)
    if A.is_zero() or B.is_zero():
        return
    g = poly_gcd(A, B)
    assert (A % g).is_zero() and (B % g).is_zero()


def test_ratfunc_normalization():
    F = field(5)
    t = Poly.x(F)
    r = RatFunc(t * t - Poly.const(F, 1), (t - Poly.const(F, 1)).scale(2))
    assert r.den.lc() == 1 and r.den.deg == 0
    assert r == RatFunc((t + Poly.const(F, 1)).scale(3))
    assert (r / r) == RatFunc.const(F, 1)


def test_nullspace_examples():
    F = field(5)
    I3 = FqMatrix(F, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert I3.nullspace() == []
    Z = FqMatrix(F, [[0, 0, 0], [0, 0, 0]])
    assert len(Z.nullspace()) == 3


def _rank_by_minors(F, rows):
    m, n = len(rows), len(rows[0])
    best = 0
    for r in range(1, min(m, n) + 1):
        found = False
        for ri in itertools.combinations(range(m), r):
            for ci in itertools.combinations(range(n), r):
                if _det(F, [[rows[i][j] for j in ci] for i in ri]):
                    found = True
                    break
            if found:
                break
        if found:
            best = r
        else:
            break
    return best


def _det(F, M):
    n = len(M)
    if n == 1:
        return M[0][0]
    acc = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = F.mul(M[0][j], _det(F, minor))
        acc = F.add(acc, term) if j % 2 == 0 else F.sub(acc, term)
    return acc


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(st.integers(0, 6), min_size=8, max_size=8), min_size=5, max_size=5))
def test_rank_nullity_against_minors(rows):
    F = field(7)
    M = FqMatrix(F, rows)
    r = _rank_by_minors(F, rows)
    assert M.rank() == r
    ker = M.nullspace()
    assert len(ker) == 8 - r
    for v in ker:
        assert all(sum(F.mul(a, b) for a, b in zip(row, v)) % 7 == 0 for row in rows)


def test_solve_affine_inconsistent():
    F = field(5)
    assert solve_affine(F, [[1, 1], [1, 1]], [1, 2]) is None
    x, ker = solve_affine(F, [[1, 1]], [3])
    assert F.add(x[0], x[1]) == 3 and len(ker) == 1


def test_mpoly_eval_and_diff():
    F = field(5)
    X = MPoly.var(F, 3, 0)
    Y = MPoly.var(F, 3, 1)
    G = X * X * Y
    assert G.diff(0) == X * Y * 2
    assert G.is_homogeneous() and G.total_degree() == 3
