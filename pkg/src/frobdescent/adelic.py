"""Adelic points truncated to finitely many places.

A component at a place v is a degree-2 divisor on C over F_v, stored as two
points over the quadratic extension of F_v.  Each component remembers where
it came from: the reduction of a global point of C^(2), or raw residue data.
Survival is only decidable for the former.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .algebra import GF, field, solve_affine
from .curves import (CurveMorphism, CurvePoint, FunctionField, Place, PlaneCurve, function_field,
                     verify_morphism)
from .descent import MuValue, SymSquarePoint, frobenius_divisibility_depth, mu_sym2
from .symsq import describe, local_divisor, monomial_basis


class UnobstructedError(ValueError):
    pass


class SurvivalUndecidable(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class LocalComponent:
    place: Place
    divisor: tuple          # two CurvePoints over the quadratic extension of F_v
    provenance: SymSquarePoint | None = None

    def __post_init__(self):
        A, B = self.divisor
        if A.curve != B.curve:
            raise ValueError("component points lie on different curves")
        m = self.place.degree
        if A.L.k != 2 * m or B.L.k != 2 * m:
            raise ValueError("component points must live over the quadratic extension of F_v")
        if {A.frobenius(m), B.frobenius(m)} != {A, B}:
            raise ValueError("component is not defined over the residue field")

    @property
    def source(self) -> str:
        return "raw" if self.provenance is None else describe(self.provenance)

    def is_constant(self) -> bool:
        return self.provenance is not None and self.provenance.is_constant()


@dataclass(frozen=True, eq=False)
class TruncatedAdelicPoint:
    places: tuple
    components: tuple
    note: str = ""

    @classmethod
    def of_global(cls, P: SymSquarePoint, places: Sequence[Place]) -> "TruncatedAdelicPoint":
        return cls.of_family({pl: P for pl in places})

    @classmethod
    def of_family(cls, family: dict) -> "TruncatedAdelicPoint":
        places = tuple(sorted(family))
        comps = tuple(LocalComponent(pl, local_divisor(family[pl], pl), family[pl]) for pl in places)
        return cls(places, comps)

    @property
    def curve(self) -> PlaneCurve:
        return self.components[0].divisor[0].curve

    def is_reduced(self) -> bool:
        return all(c.is_constant() for c in self.components)

    def provenance_points(self) -> list[SymSquarePoint]:
        out = []
        for c in self.components:
            if c.provenance is not None and not any(c.provenance is o for o in out):
                out.append(c.provenance)
        return out

    def to_json(self) -> dict:
        return {
            "places": [place_json(pl) for pl in self.places],
            "components": [{"place": i, "divisor": [point_json(P) for P in c.divisor],
                            "provenance": c.source} for i, c in enumerate(self.components)],
        }


def place_json(pl: Place) -> dict:
    return {"degree": pl.degree, "point": point_json(pl.point)}


def point_json(P: CurvePoint) -> dict:
    return {"k": P.L.k, "coords": list(P.coords)}


def from_json(data: dict, C: PlaneCurve, D: PlaneCurve, catalogue: dict | None = None) -> TruncatedAdelicPoint:
    """Rebuild a truncated point; provenance names found in ``catalogue`` are
    re-attached (and checked), everything else becomes raw residue data."""
    catalogue = catalogue or {}
    places = []
    for rec in data["places"]:
        pt = rec["point"]
        P = CurvePoint.make(D, pt["coords"], field(D.p, pt["k"]))
        places.append(Place(rec["degree"], P))
    comps = []
    for rec in data["components"]:
        pl = places[rec["place"]]
        div = tuple(CurvePoint.make(C, q["coords"], field(C.p, q["k"])) for q in rec["divisor"])
        prov = catalogue.get(rec.get("provenance"))
        if prov is not None and tuple(local_divisor(prov, pl)) != div:
            raise ValueError(f"provenance {rec['provenance']} does not reduce to the stored divisor")
        comps.append(LocalComponent(pl, div, prov))
    order = sorted(range(len(comps)), key=lambda i: comps[i].place)
    return TruncatedAdelicPoint(tuple(comps[i].place for i in order), tuple(comps[i] for i in order))


# ---------------------------------------------------------------------------
# construction


def alternating_partition(places: Sequence[Place]) -> tuple[list, list]:
    pls = sorted(places)
    return pls[0::2], pls[1::2]


def construct_unobstructed(P1: SymSquarePoint, P2: SymSquarePoint, places: Sequence[Place],
                           partition: tuple | None = None) -> TruncatedAdelicPoint:
    """P1 on S1 and P2 on S2, for P1 != P2 with equal mu."""
    if P1.same_divisor(P2):
        raise UnobstructedError("P1 = P2: the family is the reduction of a single global point")
    if mu_sym2(P1) != mu_sym2(P2):
        raise UnobstructedError("mu(P1) != mu(P2): the family would not survive descent")
    S1, S2 = partition if partition is not None else alternating_partition(places)
    if not S1 or not S2:
        raise UnobstructedError("both parts of the partition must be nonempty")
    if set(S1) & set(S2):
        raise UnobstructedError("the parts of the partition overlap")
    fam = {pl: P1 for pl in S1}
    fam.update({pl: P2 for pl in S2})
    x = TruncatedAdelicPoint.of_family(fam)
    note = ("multiplication-by-n obstructions are not computed (they need Mordell-Weil generators)")
    return TruncatedAdelicPoint(x.places, x.components, note)


# ---------------------------------------------------------------------------
# survival


@dataclass
class SurvivalCertificate:
    xi: MuValue
    depth: int
    verdicts: list   # (place, passed, frobenius depth or None)

    @property
    def passed(self) -> bool:
        return all(v for _, v, _ in self.verdicts)

    def failures(self) -> list[Place]:
        return [pl for pl, v, _ in self.verdicts if not v]

    def to_json(self) -> dict:
        return {"xi": [c.serialize() for c in self.xi.comps], "depth": self.depth, "passed": self.passed,
                "places": [{"place": place_json(pl), "pass": v, "frobenius_depth": d}
                           for pl, v, d in self.verdicts]}


def check_survival(x: TruncatedAdelicPoint, xi: MuValue, N: int = 4) -> SurvivalCertificate:
    raw = [c.place for c in x.components if c.provenance is None]
    if raw:
        raise SurvivalUndecidable(f"survival undecidable in the truncation model: raw residue data at {raw[0]}")
    mus: dict = {}
    depths: dict = {}
    verdicts = []
    for c in x.components:
        P = c.provenance
        key = id(P)
        if key not in mus:
            mus[key] = mu_sym2(P)
        ok = mus[key] == xi
        d = None
        if xi.is_zero():
            if key not in depths:
                depths[key] = frobenius_divisibility_depth(P, N)
            d = depths[key]
            ok = ok and d >= N
        verdicts.append((c.place, ok, d))
    return SurvivalCertificate(xi, N, verdicts)


# ---------------------------------------------------------------------------
# interpolation over V_h = span{t^i s^j : j < n, i + j <= h}


def _place_ts(K: FunctionField, pl: Place, G: GF) -> tuple[int, int]:
    e = pl.residue_field.embedding(G)
    x, y = (e(a) for a in pl.point.affine())
    return (y, x) if K.swapped else (x, y)


def _rows_for(K: FunctionField, pl: Place, G: GF, h: int) -> list[int]:
    t, s = _place_ts(K, pl, G)
    return [G.mul(G.pow(t, i), G.pow(s, j)) for (i, j), _ in monomial_basis(K, h)]


def _expand(F: GF, G: GF, row: list[int], val: int) -> tuple[list[list[int]], list[int]]:
    """Split one G-linear equation with F_p unknowns into F_p equations."""
    cols = [G.coeffs(a) for a in row]
    rhs = G.coeffs(val)
    return [[c[i] for c in cols] for i in range(G.k)], rhs


class _Interp:
    """Incremental F_p-linear interpolation in V_h."""

    def __init__(self, K: FunctionField, h: int):
        self.K, self.h = K, h
        self.F = field(K.F.p)
        self.n = len(monomial_basis(K, h))
        self.rows, self.rhs = [], []

    def add(self, pl: Place, G: GF, val: int) -> None:
        r, b = _expand(self.F, G, _rows_for(self.K, pl, G, self.h), val)
        self.rows += r
        self.rhs += b

    def solve(self):
        if not self.rows:
            return [0] * self.n, [[1 if i == j else 0 for i in range(self.n)] for j in range(self.n)]
        return solve_affine(self.F, self.rows, self.rhs)

    def copy(self) -> "_Interp":
        c = _Interp.__new__(_Interp)
        c.K, c.h, c.F, c.n = self.K, self.h, self.F, self.n
        c.rows, c.rhs = list(self.rows), list(self.rhs)
        return c

    def element(self, coeffs: Sequence[int]):
        K = self.K
        acc = K.zero()
        for c, (_, m) in zip(coeffs, monomial_basis(K, self.h)):
            if c:
                acc = acc + m * K.const(c)
        return acc


SYMMETRIC = ("x1+x2", "x1*x2", "y1+y2", "y1*y2", "x1*y2+x2*y1")


def _symmetric_values(A: CurvePoint, B: CurvePoint) -> list[int] | None:
    if not (A.is_affine and B.is_affine):
        return None
    G = A.L
    (x1, y1), (x2, y2) = A.affine(), B.affine()
    return [G.add(x1, x2), G.mul(x1, x2), G.add(y1, y2), G.mul(y1, y2),
            G.add(G.mul(x1, y2), G.mul(x2, y1))]


@dataclass
class GlobalScan:
    verdict: str      # "global", "excluded", "consistent-unmatched"
    witness: SymSquarePoint | None
    height: int
    reason: str = ""


def global_scan(x: TruncatedAdelicPoint, D: PlaneCurve, candidates: Sequence[SymSquarePoint] = (),
                h: int = 2) -> GlobalScan:
    """Is the family the reduction of one global point of C^(2)?

    Candidates (provenance points first) are tested directly.  Otherwise the
    five symmetric functions of the local divisors are interpolated in V_h:
    inconsistency excludes every global point whose symmetric functions lie
    in V_h."""
    pool = x.provenance_points() + [P for P in candidates if not any(P is o for o in x.provenance_points())]
    for P in pool:
        try:
            if all(tuple(local_divisor(P, c.place)) == tuple(c.divisor) for c in x.components):
                return GlobalScan("global", P, h)
        except (ValueError, ArithmeticError):
            continue
    K = function_field(D)
    systems = [_Interp(K, h) for _ in SYMMETRIC]
    for c in x.components:
        vals = _symmetric_values(*c.divisor)
        if vals is None:
            return GlobalScan("excluded", None, h, f"non-affine local divisor at {c.place}")
        G = c.divisor[0].L
        for sysm, v in zip(systems, vals):
            sysm.add(c.place, G, v)
    for name, sysm in zip(SYMMETRIC, systems):
        if sysm.solve() is None:
            return GlobalScan("excluded", None, h, f"{name} does not interpolate in V_{h}")
    return GlobalScan("consistent-unmatched", None, h, "symmetric functions interpolate; no matching point known")


# ---------------------------------------------------------------------------
# the set Z


@dataclass
class ZWitness:
    y: CurveMorphism
    choices: list   # (place, chosen point)


def z_membership(x: TruncatedAdelicPoint, D: PlaneCurve, H: int = 2, limit: int = 20000) -> ZWitness | None:
    """Search y: D -> C with affine coordinates in V_H such that at every
    place the local divisor is y(v) plus an F_v-rational point."""
    K = function_field(D)
    C = x.curve
    comps = list(x.components)
    steps = [0]

    def options(c: LocalComponent) -> list[tuple[CurvePoint, int, int]]:
        m = c.place.degree
        A, B = c.divisor
        out = []
        for P, R in ((A, B), (B, A)):
            if not P.is_affine:
                continue
            if P.field_degree() > m or m % P.field_degree() or R.field_degree() > m or m % R.field_degree():
                continue
            if any(P == o[0] for o in out):
                continue
            out.append((P,) + P.affine())
        return out

    def rec(i: int, X: _Interp, Y: _Interp, chosen: list):
        steps[0] += 1
        if steps[0] > limit:
            raise RuntimeError("z-membership search limit reached")
        if X.solve() is None or Y.solve() is None:
            return None
        if i == len(comps):
            return _realize(K, C, X, Y, chosen)
        c = comps[i]
        for P, px, py in options(c):
            X2, Y2 = X.copy(), Y.copy()
            X2.add(c.place, P.L, px)
            Y2.add(c.place, P.L, py)
            got = rec(i + 1, X2, Y2, chosen + [(c.place, P)])
            if got is not None:
                return got
        return None

    return rec(0, _Interp(K, H), _Interp(K, H), [])


def _realize(K, C, X: _Interp, Y: _Interp, chosen) -> ZWitness | None:
    sx, sy = X.solve(), Y.solve()
    F = X.F
    for cx in _affine_space(F, *sx):
        for cy in _affine_space(F, *sy):
            phi = CurveMorphism.affine(K, C, X.element(cx), Y.element(cy))
            if verify_morphism(phi):
                return ZWitness(phi, chosen)
    return None


def _affine_space(F: GF, part: list[int], kernel: list[list[int]], cap: int = 4096):
    if F.q ** len(kernel) > cap:
        raise RuntimeError("interpolation underdetermined beyond the scan cap")
    for lam in itertools.product(range(F.q), repeat=len(kernel)):
        v = list(part)
        for l, k in zip(lam, kernel):
            if l:
                v = [F.add(a, F.mul(l, b)) for a, b in zip(v, k)]
        yield v


# ---------------------------------------------------------------------------
# trichotomy


@dataclass
class TrichotomyReport:
    outcome: str   # Global | Reduced | Z | Unclassified
    witness: str | None
    bounds: dict
    details: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {"outcome": self.outcome, "witness": self.witness, "bounds": self.bounds,
                "details": self.details}


def trichotomy_report(x: TruncatedAdelicPoint, cert: SurvivalCertificate, D: PlaneCurve,
                      candidates: Sequence[SymSquarePoint] = (), h: int = 2, H: int = 2) -> TrichotomyReport:
    if not cert.passed:
        raise ValueError("trichotomy needs a passing survival certificate")
    bounds = {"places": len(x.places), "max_place_degree": max(pl.degree for pl in x.places),
              "sym_height": h, "z_height": H, "depth": cert.depth}
    details = []
    g = global_scan(x, D, candidates, h)
    details.append(f"global: {g.verdict}" + (f" ({g.reason})" if g.reason else ""))
    if g.verdict == "global":
        return TrichotomyReport("Global", describe(g.witness), bounds, details)
    if x.is_reduced():
        return TrichotomyReport("Reduced", None, bounds, details)
    details.append("reduced: no")
    try:
        z = z_membership(x, D, H)
    except RuntimeError as e:
        z = None
        details.append(f"z: search aborted ({e})")
    if z is not None:
        aff = z.y.affine_coords()
        return TrichotomyReport("Z", f"({aff[0]!r}, {aff[1]!r})", bounds, details)
    details.append(f"z: no y with coordinates in V_{H}")
    return TrichotomyReport("Unclassified", None, bounds, details)
