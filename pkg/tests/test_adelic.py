import json

import pytest

from frobdescent.adelic import (SurvivalUndecidable, TruncatedAdelicPoint, UnobstructedError,
                                alternating_partition, check_survival, construct_unobstructed,
                                from_json, global_scan, trichotomy_report, z_membership)
from frobdescent.curves import CurveMorphism, function_field, places_up_to, points_over
from frobdescent.descent import SymSquarePoint, mu_sym2


@pytest.fixture(scope="module")
def places(ex5):
    return places_up_to(ex5.D, 2)[:6]


@pytest.fixture(scope="module")
def twin_family(ex5, places):
    return construct_unobstructed(ex5.P_f, ex5.P_g_twin, places)


def test_partition_alternates(places):
    S1, S2 = alternating_partition(places)
    assert S1 and S2 and not set(S1) & set(S2)
    assert sorted(S1 + S2) == sorted(places)


def test_construction_refusals(ex5, places):
    with pytest.raises(UnobstructedError, match="single global point"):
        construct_unobstructed(ex5.P_f, ex5.P_f, places)
    with pytest.raises(UnobstructedError, match="not survive"):
        construct_unobstructed(ex5.P_f, ex5.P_g, places)
    with pytest.raises(UnobstructedError, match="nonempty"):
        construct_unobstructed(ex5.P_f, ex5.P_g_twin, places, (list(places), []))
    with pytest.raises(UnobstructedError, match="overlap"):
        construct_unobstructed(ex5.P_f, ex5.P_g_twin, places, (places[:3], places[2:]))


def test_twin_family_survives_and_is_unclassified(ex5, twin_family):
    assert "Mordell-Weil" in twin_family.note
    cert = check_survival(twin_family, mu_sym2(ex5.P_f))
    assert cert.passed and not cert.failures()
    rep = trichotomy_report(twin_family, cert, ex5.D)
    assert rep.outcome == "Unclassified"
    assert any("excluded" in d for d in rep.details)


def test_wrong_xi_fails_survival(ex5, twin_family):
    cert = check_survival(twin_family, -mu_sym2(ex5.P_f))
    assert not cert.passed and len(cert.failures()) == len(twin_family.places)
    with pytest.raises(ValueError):
        trichotomy_report(twin_family, cert, ex5.D)


def test_global_family(ex5, places):
    x = TruncatedAdelicPoint.of_global(ex5.P_f, places)
    cert = check_survival(x, mu_sym2(ex5.P_f))
    rep = trichotomy_report(x, cert, ex5.D)
    assert rep.outcome == "Global" and rep.witness == x.provenance_points()[0].name


def test_global_scan_matches_candidate_without_provenance(ex5, places):
    x = TruncatedAdelicPoint.of_global(ex5.P_f, places)
    raw = from_json(json.loads(json.dumps(x.to_json())), ex5.C, ex5.D)
    assert all(c.provenance is None for c in raw.components)
    assert global_scan(raw, ex5.D, [ex5.P_g, ex5.P_f]).witness is ex5.P_f
    with pytest.raises(SurvivalUndecidable):
        check_survival(raw, mu_sym2(ex5.P_f))


def test_json_roundtrip_with_catalogue(ex5, twin_family):
    data = json.loads(json.dumps(twin_family.to_json()))
    cat = {ex5.P_f.name: ex5.P_f, ex5.P_g_twin.name: ex5.P_g_twin}
    back = from_json(data, ex5.C, ex5.D, cat)
    assert back.to_json() == twin_family.to_json()
    assert check_survival(back, mu_sym2(ex5.P_f)).passed
    # a catalogue entry that does not reduce to the stored data is rejected
    with pytest.raises(ValueError):
        from_json(data, ex5.C, ex5.D, {ex5.P_f.name: ex5.P_h, ex5.P_g_twin.name: ex5.P_g_twin})


def test_reduced_family(quartic5):
    K = function_field(quartic5)
    pts = [CurveMorphism.constant(K, P) for P in points_over(quartic5, 1)]
    pls = places_up_to(quartic5, 1)[:4]
    fam = {pl: SymSquarePoint.split(pts[i], pts[i + 1]) for i, pl in enumerate(pls)}
    x = TruncatedAdelicPoint.of_family(fam)
    assert x.is_reduced()
    cert = check_survival(x, mu_sym2(fam[pls[0]]))
    assert cert.passed and all(d == 4 for _, _, d in cert.verdicts)
    assert trichotomy_report(x, cert, quartic5).outcome == "Reduced"


def test_z_family(quartic5):
    """y + (varying rational point) lands in Z with y the identity."""
    K = function_field(quartic5)
    ident = CurveMorphism.affine(K, quartic5, K.x, K.y)
    consts = [CurveMorphism.constant(K, P) for P in points_over(quartic5, 1)]
    pls = places_up_to(quartic5, 1)[:4]
    fam = {pl: SymSquarePoint.split(ident, consts[i]) for i, pl in enumerate(pls)}
    x = TruncatedAdelicPoint.of_family(fam)
    assert len({id(P) for P in x.provenance_points()}) == 4
    z = z_membership(x, quartic5, H=1)
    assert z is not None and z.y == ident
    cert = check_survival(x, mu_sym2(fam[pls[0]]))
    assert cert.passed
    assert trichotomy_report(x, cert, quartic5, h=1, H=1).outcome == "Z"


def test_frobenius_zero_xi_needs_depth(quartic5):
    K = function_field(quartic5)
    ident = CurveMorphism.affine(K, quartic5, K.x, K.y)
    P = SymSquarePoint.split(ident.compose_frobenius(), ident.compose_frobenius())
    x = TruncatedAdelicPoint.of_global(P, places_up_to(quartic5, 1)[:2])
    cert = check_survival(x, mu_sym2(P), N=4)
    assert mu_sym2(P).is_zero() and not cert.passed
    assert all(d == 1 for _, _, d in cert.verdicts)
