import pytest

from frobdescent.curves import CurveMorphism, function_field, places_up_to, points_over
from frobdescent.descent import ProjectiveMuClass, SymSquarePoint, mu_sym2
from frobdescent.quartic import quartic_base
from frobdescent.symsq import (bound_check, classify, constant_points, default_covers,
                               enumerate_points, horizontal_tangency, local_divisor,
                               monomial_basis, recover_point)


@pytest.fixture(scope="module")
def K5(quartic5):
    return function_field(quartic5)


def test_example_points_are_counted(ex5):
    labels = {n: classify(getattr(ex5, n)) for n in ("P_f", "P_g", "P_g_twin", "P_h")}
    assert all(lab.kind == "Counted" for lab in labels.values())
    assert labels["P_f"].gamma == labels["P_g"].gamma == labels["P_g_twin"].gamma
    assert labels["P_f"].gamma.constant_point() == (0, 0, 1)
    assert labels["P_h"].gamma.constant_point() == (0, 1, 0)


def test_double_and_horizontal(quartic5, K5):
    ident = CurveMorphism.affine(K5, quartic5, K5.x, K5.y)
    lab = classify(SymSquarePoint.split(ident, ident))
    assert lab.kind == "Double" and lab.double_of == ident
    P0 = CurveMorphism.constant(K5, points_over(quartic5, 1)[0])
    assert classify(SymSquarePoint.split(ident, P0)).kind == "Horizontal"


def test_frobenius_divisible_label(quartic5, K5):
    ident = CurveMorphism.affine(K5, quartic5, K5.x, K5.y)
    P = SymSquarePoint.split(ident.compose_frobenius(), ident.compose_frobenius(2))
    lab = classify(P)
    assert lab.kind == "FrobeniusDivisible" and lab.depth == 1
    assert str(lab) == "FrobeniusDivisible(1)"


def test_recover_point_inverts_gamma(quartic5, K5):
    from frobdescent.descent import mu_point
    from frobdescent.secant import CanonicalModel
    phi = CurveMorphism.affine(K5, quartic5, K5.x * K5.const(2), K5.y)
    g = ProjectiveMuClass.of(mu_point(phi))
    assert recover_point(g, CanonicalModel.of(quartic5), K5) == phi


def test_constant_points_count(quartic5, K5):
    n1 = len(points_over(quartic5, 1))
    n2 = len(points_over(quartic5, 2)) - n1
    assert len(constant_points(quartic5, K5)) == n1 * (n1 + 1) // 2 + n2 // 2


def test_monomial_basis_and_covers(ex5):
    K = ex5.K
    B = monomial_basis(K, 2)
    assert [e for e, _ in B][:3] == [(0, 0), (1, 0), (0, 1)]
    covers = default_covers(K, 1)
    assert any(Q.g == K.y for Q in covers) and all(not Q.g.is_zero() for Q in covers)


def test_enumeration_is_deterministic_and_deduplicated(ex5):
    a = enumerate_points(ex5.C, ex5.D, H=1)
    b = enumerate_points(ex5.C, ex5.D, H=1)
    assert [P.name for P in a] == [P.name for P in b]
    keys = [P.divisor_key() for P in a]
    assert len(keys) == len(set(keys))


def test_enumeration_finds_example_points(ex5):
    pts = enumerate_points(ex5.C, ex5.D, H=1)
    keys = {P.divisor_key() for P in pts}
    for name in ("P_f", "P_g", "P_h"):
        P = getattr(ex5, name)
        assert any(P.same_divisor(Q) for Q in pts if Q.kind == P.kind), name
    assert len(keys) == len(pts)


def test_enumeration_caps(ex5):
    with pytest.raises(ValueError):
        enumerate_points(ex5.C, ex5.D, H=5)


def test_local_divisor_is_frobenius_stable(ex5):
    for pl in places_up_to(ex5.D, 2):
        A, B = local_divisor(ex5.P_f, pl)
        assert {A.frobenius(pl.degree), B.frobenius(pl.degree)} == {A, B}


def test_horizontal_tangency_values(quartic5, K5):
    ident = CurveMorphism.affine(K5, quartic5, K5.x, K5.y)
    P0 = CurveMorphism.constant(K5, points_over(quartic5, 1)[0])
    res = horizontal_tangency(SymSquarePoint.split(ident, P0), places_up_to(quartic5, 1))
    assert set(res.values()) <= {True, False, None}
    assert any(v is not None for v in res.values())


def test_bound_check_collision_in_example(ex5):
    labelled = [(P, classify(P)) for P in (ex5.P_f, ex5.P_g, ex5.P_h)]
    rep = bound_check(labelled, r=1)
    assert rep.distinct_classes == 2 and rep.bound == 1 and rep.exceeded
    assert not rep.injective_counted
    (kind, _, names), = rep.collisions
    assert kind == "Counted" and len(names) == 2


def test_bound_formula():
    rep = bound_check([], r=3, p=5)
    assert rep.bound == 31 and rep.exceeded is False
    with pytest.raises(ValueError):
        bound_check([], r=2)


def test_mu_constant_on_enumerated_constants(quartic5):
    D = quartic_base(5)
    K = function_field(D)
    for P in constant_points(quartic5, K)[:12]:
        assert mu_sym2(P).is_zero()
