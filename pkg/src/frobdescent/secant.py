"""Canonical-curve geometry: secant and tangent lines, geometric
Riemann-Roch via adjoint evaluation, g^1_d searches and the open set U."""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field as dc_field
from math import lcm
from typing import Iterable, Sequence

from .algebra import GF, FqMatrix, MPoly, Poly, field, poly_roots
from .curves import (CurvePoint, Divisor, Place, PlaneCurve, genus, local_coordinates,
                     normalize, place_of, places_up_to, points_over)
from .differentials import adjoint_monomials


class CapabilityError(NotImplementedError):
    pass


# ---------------------------------------------------------------------------
# canonical models


@dataclass(frozen=True)
class CanonicalModel:
    """Image of C in P^{g-1}.

    For a plane curve the embedding is by the adjoint monomials of degree
    d - 3 in the same order as the holomorphic basis, so canonical
    coordinates line up with mu-components.  For a quartic this is
    (X, Y, Z) -> (Z, X, Y) and the defining form is F(u1, u2, u0).
    """
    genus: int
    forms: tuple
    F: GF
    curve: PlaneCurve | None = None
    embedding: tuple = ()
    name: str = ""

    @classmethod
    def of(cls, C: PlaneCurve) -> "CanonicalModel":
        g = genus(C)
        if C.degree != 4:
            raise CapabilityError("canonical models of plane curves with d >= 5 are a stretch feature; "
                                  "build one with CanonicalModel.from_forms")
        mons = adjoint_monomials(C.degree)
        emb = []
        for i, j in mons:
            emb.append((i, j, C.degree - 3 - i - j))
        # u_k = X^i Y^j Z^l; invert the permutation for the quartic
        pos = {e: k for k, e in enumerate(emb)}
        terms = {}
        for (i, j, l), c in C.form.terms.items():
            u = [0, 0, 0]
            u[pos[(1, 0, 0)]] += i
            u[pos[(0, 1, 0)]] += j
            u[pos[(0, 0, 1)]] += l
            terms[tuple(u)] = c
        G = MPoly(C.F, 3, terms)
        return cls(g, (G,), C.F, C, tuple(emb), C.name)

    @classmethod
    def from_forms(cls, F: GF, g: int, forms: Sequence[MPoly], name: str = "") -> "CanonicalModel":
        if any(f.n != g for f in forms):
            raise ValueError("forms must be in g variables")
        return cls(g, tuple(forms), F, None, (), name)

    def embed(self, P: CurvePoint) -> tuple[int, ...]:
        if self.curve is None:
            return P.coords
        L = P.L
        out = []
        for e in self.embedding:
            v = 1
            for a, k in zip(P.coords, e):
                if k:
                    v = L.mul(v, L.pow(a, k))
            out.append(v)
        return normalize(out, L)

    def contains(self, R: Sequence[int], L: GF) -> bool:
        return all(_eval(G, R, L) == 0 for G in self.forms)

    def points(self, k: int) -> list[tuple[int, ...]]:
        """Canonical images of the points over F_{p^k}."""
        if self.curve is not None:
            return sorted(self.embed(P) for P in points_over(self.curve, k))
        L = field(self.F.p, k)
        if L.q ** (self.genus - 1) > 200_000:
            raise CapabilityError("brute-force point scan too large")
        out = []
        for R in projective_points(L, self.genus):
            if self.contains(R, L):
                out.append(R)
        return out


def _eval(G: MPoly, R: Sequence[int], L: GF) -> int:
    acc = 0
    for e, c in G.terms.items():
        v = c
        for a, k in zip(R, e):
            if k:
                v = L.mul(v, L.pow(a, k))
        acc = L.add(acc, v)
    return acc


def projective_points(L: GF, n: int):
    """Normalized points of P^{n-1}(L), first nonzero coordinate 1."""
    for lead in range(n):
        for rest in itertools.product(range(L.q), repeat=n - lead - 1):
            yield (0,) * lead + (1,) + rest


def _common(points: Sequence[tuple[Sequence[int], GF]]) -> tuple[GF, list[list[int]]]:
    p = points[0][1].p
    M = lcm(*(L.k for _, L in points))
    G = field(p, M)
    rows = []
    for R, L in points:
        emb = L.embedding(G)
        rows.append([emb(a) for a in R])
    return G, rows


# ---------------------------------------------------------------------------
# lines


@dataclass(frozen=True)
class ProjLine:
    """A line of P^{g-1}, stored as the RREF basis of its 2-dim row space."""
    L: GF
    basis: tuple

    @classmethod
    def through(cls, A: Sequence[int], B: Sequence[int], L: GF) -> "ProjLine":
        red, piv = FqMatrix(L, [list(A), list(B)]).rref()
        if len(piv) != 2:
            raise ValueError("points coincide; no unique line")
        return cls(L, tuple(tuple(r) for r in red))

    def contains(self, R: Sequence[int], L: GF | None = None) -> bool:
        G = self.L
        if L is not None and L != G:
            M = lcm(L.k, G.k)
            big = field(G.p, M)
            e1, e2 = G.embedding(big), L.embedding(big)
            rows = [[e1(a) for a in r] for r in self.basis] + [[e2(a) for a in R]]
            return FqMatrix(big, rows).rank() == 2
        return FqMatrix(G, [list(r) for r in self.basis] + [list(R)]).rank() == 2

    def is_frobenius_stable(self) -> bool:
        """Defined over F_p: the RREF basis is fixed by Frobenius."""
        return all(self.L.frob(a) == a for r in self.basis for a in r)


def secant_or_tangent_line(can: CanonicalModel, P: CurvePoint, Q: CurvePoint) -> ProjLine:
    """Line through the canonical images of P and Q; the embedded tangent line if P == Q."""
    if P == Q or (P.L != Q.L and P.embed(field(P.L.p, lcm(P.L.k, Q.L.k))) == Q.embed(field(P.L.p, lcm(P.L.k, Q.L.k)))):
        return tangent_line(can, P)
    G, rows = _common([(can.embed(P), P.L), (can.embed(Q), Q.L)])
    return ProjLine.through(rows[0], rows[1], G)


def tangent_line(can: CanonicalModel, P: CurvePoint) -> ProjLine:
    L = P.L
    R = can.embed(P)
    jac = [[_eval(G.diff(i), R, L) for i in range(can.genus)] for G in can.forms]
    if not any(any(r) for r in jac):
        raise ValueError(f"{P} is singular on the canonical model")
    ker = FqMatrix(L, jac).nullspace()
    if len(ker) != 2:
        raise ValueError("tangent space is not a line")
    red, _ = FqMatrix(L, ker).rref()
    return ProjLine(L, tuple(tuple(r) for r in red))


# ---------------------------------------------------------------------------
# Riemann-Roch


def vanishing_conditions(C: PlaneCurve, D: Divisor, degree: int) -> tuple[GF, list[list[int]]]:
    """Rows (one per condition) of the evaluation matrix of the degree-``degree``
    monomials against D: for each geometric point of each place with
    multiplicity e, the first e series coefficients of the form restricted to C."""
    mons = [(i, j, degree - i - j) for i, j in adjoint_monomials(degree + 3)]
    if not D.terms:
        return field(C.p), []
    M = lcm(*(pl.degree for pl, _ in D.terms))
    G = field(C.p, M)
    rows = []
    for pl, e in D.terms:
        if e < 0:
            raise ValueError("divisor must be effective")
        emb = pl.residue_field.embedding(G)
        for P in pl.orbit():
            X, Y, Z = local_coordinates(P, e + 1)
            ser = []
            for a, b, c in mons:
                s = X ** a * Y ** b * Z ** c
                ser.append([s.coeff(k) for k in range(e)])
            for k in range(e):
                rows.append([emb(ser[m][k]) for m in range(len(mons))])
    return G, rows


def riemann_roch_dim(C: PlaneCurve, D: Divisor) -> int:
    """l(D) = deg D - g + 1 + dim{adjoint forms of degree d-3 vanishing on D}."""
    if not C.smooth:
        raise ValueError("riemann_roch_dim needs a smooth plane curve")
    g = genus(C)
    G, rows = vanishing_conditions(C, D, C.degree - 3)
    r = FqMatrix(G, rows, g).rank() if rows else 0
    return D.degree - g + 1 + (g - r)


def effective_divisors(places: Sequence[Place], d: int) -> Iterable[Divisor]:
    """All effective divisors of degree d on the given places, deterministic order."""
    places = sorted(places)

    def rec(i: int, remaining: int, acc: list):
        if remaining == 0:
            yield Divisor.of(acc)
            return
        if i == len(places):
            return
        pl = places[i]
        for m in range(remaining // pl.degree, -1, -1):
            yield from rec(i + 1, remaining - m * pl.degree, acc + ([(pl, m)] if m else []))

    yield from rec(0, d, [])


# ---------------------------------------------------------------------------
# line sections (independent route via binary forms)


def line_section(C: PlaneCurve, line: Sequence[int]) -> Divisor | None:
    """The intersection divisor of C with the F_p-line a X + b Y + c Z = 0,
    or None if the line is a component."""
    F = C.F
    a = list(line)
    # two F_p points spanning the line
    null = FqMatrix(F, [a]).nullspace()
    A, B = null[0], null[1]
    # F(lam*A + B) as a polynomial in lam; mu = 0 gives A itself
    coeffs = _restrict(C.form, A, B, F)
    f = Poly(F, coeffs)
    if f.is_zero():
        return None
    terms = []
    inf_mult = C.degree - f.deg
    if inf_mult:
        terms.append((place_of(CurvePoint.make(C, A, F)), inf_mult))
    seen = set()
    for k in range(1, f.deg + 1):
        L = field(F.p, k)
        fk = f.map_coeffs(F.embedding(L), L)
        for r in poly_roots(fk):
            if L.contains_degree(r) != k:
                continue
            pt = normalize([L.add(L.mul(r, x), y) for x, y in zip(A, B)], L)
            pl = place_of(CurvePoint.make(C, pt, L))
            if pl in seen:
                continue
            seen.add(pl)
            terms.append((pl, _root_mult(fk, r)))
    return Divisor.of(terms)


def _restrict(form: MPoly, A, B, F: GF) -> list[int]:
    lam = Poly.x(F)
    lin = [lam.scale(A[i]) + Poly.const(F, B[i]) for i in range(3)]
    acc = Poly(F)
    for e, c in form.terms.items():
        term = Poly.const(F, c)
        for l, k in zip(lin, e):
            term = term * (l ** k)
        acc = acc + term
    return list(acc.c)


def _root_mult(f: Poly, r: int) -> int:
    lin = Poly.x(f.F) - Poly.const(f.F, r)
    m = 0
    while f.deg > 0:
        q, rem = f.divmod(lin)
        if not rem.is_zero():
            break
        f, m = q, m + 1
    return m


# ---------------------------------------------------------------------------
# secant intersections and g^1_4


@dataclass
class SecantReport:
    status: str  # "meet", "same line", "disjoint"
    intersection: tuple | None
    l_value: int | None
    field_degree: int


def _vec(can: CanonicalModel, P) -> tuple:
    """A curve point, or a raw coordinate tuple over F_p for models given by forms."""
    if isinstance(P, CurvePoint):
        return can.embed(P), P.L
    if not can.contains(P, can.F):
        raise ValueError(f"{P} is not on the canonical curve")
    return tuple(P), can.F


def secants_intersect_implies_g14(can: CanonicalModel, pts: Sequence[CurvePoint]) -> SecantReport:
    if len(pts) != 4 or len(set(pts)) != 4:
        raise ValueError("need four distinct points")
    G, rows = _common([_vec(can, P) for P in pts])
    r = FqMatrix(G, rows).rank()
    if r == 4:
        return SecantReport("disjoint", None, None, G.k)
    if FqMatrix(G, rows[:2]).rank() == 2 and FqMatrix(G, rows[:2] + rows[2:3]).rank() == 2 \
            and FqMatrix(G, rows[:2] + rows[3:4]).rank() == 2:
        status = "same line"
        R = None
    else:
        status = "meet"
        # a P1 + b P2 = c P3 + d P4
        cols = [rows[0], rows[1], [G.neg(a) for a in rows[2]], [G.neg(a) for a in rows[3]]]
        ker = FqMatrix(G, [list(c) for c in zip(*cols)]).nullspace()
        a, b = ker[0][0], ker[0][1]
        R = normalize([G.add(G.mul(a, x), G.mul(b, y)) for x, y in zip(rows[0], rows[1])], G)
    if can.curve is not None:
        # a place of degree m contributes once per full orbit of m points
        counts = Counter(place_of(P) for P in pts)
        if any(c % pl.degree for pl, c in counts.items()):
            l = 4 + 1 - r  # not defined over the base field; geometric count
        else:
            l = riemann_roch_dim(can.curve, Divisor.of([(pl, c // pl.degree) for pl, c in counts.items()]))
    else:
        l = 4 + 1 - r  # geometric Riemann-Roch for reduced divisors on a canonical curve
    return SecantReport(status, R, l, G.k)


# ---------------------------------------------------------------------------
# gonality


@dataclass
class GonalityReport:
    curve: str
    d: int
    found: bool
    witness: Divisor | None
    witness_l: int | None
    place_bound: int
    divisors_scanned: int
    trisecant_agreement: bool | None = None
    notes: list = dc_field(default_factory=list)

    def to_text(self) -> str:
        head = f"g^1_{self.d}: {'yes' if self.found else 'no'}"
        lines = [head, f"  places of degree <= {self.place_bound}; divisors scanned: {self.divisors_scanned}"]
        if self.witness is not None:
            lines.append(f"  witness: {divisor_text(self.witness)}  l = {self.witness_l}")
        if self.trisecant_agreement is not None:
            lines.append(f"  trisecant cross-check: {'agrees' if self.trisecant_agreement else 'DISAGREES'}")
        lines += [f"  {n}" for n in self.notes]
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"d": self.d, "found": self.found,
                "witness": None if self.witness is None else divisor_json(self.witness),
                "witness_l": self.witness_l, "place_bound": self.place_bound,
                "divisors_scanned": self.divisors_scanned,
                "trisecant_agreement": self.trisecant_agreement}


def place_text(pl: Place) -> str:
    return f"deg{pl.degree}{pl.point!r}"


def divisor_text(D: Divisor) -> str:
    return " + ".join(f"{m}*{place_text(pl)}" if m != 1 else place_text(pl) for pl, m in D.terms)


def divisor_json(D: Divisor) -> list:
    return [{"degree": pl.degree, "point": [repr_elem(pl.residue_field, a) for a in pl.point.coords],
             "mult": m} for pl, m in D.terms]


def repr_elem(L: GF, a: int) -> str:
    from .algebra import FqElem
    return repr(FqElem(L, a))


def all_lines(F: GF) -> list[tuple[int, int, int]]:
    return list(projective_points(F, 3))


def contained_in_line_section(C: PlaneCurve, D: Divisor, sections: dict) -> bool:
    want = dict(D.terms)
    for sec in sections.values():
        if sec is None:
            continue
        have = dict(sec.terms)
        if all(have.get(pl, 0) >= m for pl, m in want.items()):
            return True
    return False


def has_g1d(C: PlaneCurve, d: int, place_bound: int = 2) -> GonalityReport:
    if d not in (2, 3, 4):
        raise ValueError("d must be 2, 3 or 4")
    if place_bound > 2:
        raise ValueError("place bound above 2 is beyond desk scale for divisor scans")
    places = places_up_to(C, place_bound)
    found, witness, wl, n = False, None, None, 0
    sections = None
    agree = None
    if d == 3 and C.degree == 4:
        sections = {ln: line_section(C, ln) for ln in all_lines(C.F)}
        agree = True
    for D in effective_divisors(places, d):
        n += 1
        l = riemann_roch_dim(C, D)
        if sections is not None:
            # for a plane quartic: l(D) >= 2 on a degree-3 divisor iff D lies on a line
            if (l >= 2) != contained_in_line_section(C, D, sections):
                agree = False
        if l >= 2 and not found:
            found, witness, wl = True, D, l
            if sections is None:
                break
    rep = GonalityReport(C.name or "C", d, found, witness, wl, place_bound, n, agree)
    if not found:
        rep.notes.append(f"exhaustion certificate: all {n} effective divisors of degree {d} have l = 1")
    return rep


# ---------------------------------------------------------------------------
# the set U


@dataclass
class UReport:
    status: str  # "in-U", "on-C", "multiple-pairs", "no-pair"
    pairs: list
    bound: int

    def __repr__(self):
        return f"UReport({self.status}, {len(self.pairs)} pair(s), up to degree {self.bound})"


def is_in_U(can: CanonicalModel, R: Sequence[int], RL: GF, bound: int = 2) -> UReport:
    """Classify R against secants of points of C over F_{p^k}, k <= bound.

    Uniqueness is relative to the bound."""
    M = lcm(*range(1, bound + 1), RL.k)
    if M > 4:
        raise ValueError("scan field exceeds the desk-scale cap")
    G = field(RL.p, M)
    embR = RL.embedding(G)
    Rg = normalize([embR(a) for a in R], G)
    if can.contains(Rg, G):
        return UReport("on-C", [], bound)
    pts = set()
    for k in range(1, bound + 1):
        L = field(RL.p, k)
        e = L.embedding(G)
        for P in can.points(k):
            pts.add(normalize([e(a) for a in P], G))
    groups: dict = {}
    for P in sorted(pts):
        line = ProjLine.through(Rg, P, G)
        groups.setdefault(line.basis, []).append(P)
    pairs = []
    for key in sorted(groups):
        members = groups[key]
        for a, b in itertools.combinations(members, 2):
            pairs.append((a, b))
    if not pairs:
        return UReport("no-pair", [], bound)
    if len(pairs) == 1:
        return UReport("in-U", pairs, bound)
    return UReport("multiple-pairs", pairs, bound)
