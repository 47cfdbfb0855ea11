"""K-points of the symmetric square C^(2): bounded search, classification
through mu and gamma, and the injectivity check on gamma classes."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .algebra import FqMatrix, field
from .curves import (CurveMorphism, CurvePoint, FFElem, FunctionField, IndeterminateError, Place,
                     PlaneCurve, PoleError, QuadExt, function_field, points_over,
                     quadratic_extension, reduce_morphism, reduce_pair, verify_morphism)
from .descent import (GammaUndefined, MuValue, ProjectiveMuClass, SymSquarePoint,
                      frobenius_divisibility_depth, gamma_image_in_curve, mu_sym2)
from .secant import CanonicalModel, _common, secant_or_tangent_line, secants_intersect_implies_g14


# ---------------------------------------------------------------------------
# local data


def local_divisor(P: SymSquarePoint, place: Place) -> tuple[CurvePoint, CurvePoint]:
    """The reduction of P at a place as two points over the quadratic
    extension of the residue field, sorted."""
    L = place.residue_field
    G = field(L.p, 2 * L.k)
    if P.kind == "conjugate":
        return reduce_pair(P.branches[0], place)
    pts = sorted(reduce_morphism(b, place).embed(G) for b in P.branches)
    return pts[0], pts[1]


# ---------------------------------------------------------------------------
# search space


def monomial_basis(K: FunctionField, H: int) -> list[tuple[tuple[int, int], FFElem]]:
    """t^i s^j with j < n and i + j <= H, ordered by total degree then j."""
    out = []
    for tot in range(H + 1):
        for j in range(min(tot, K.n - 1) + 1):
            out.append(((tot - j, j), K.t ** (tot - j) * K.s ** j))
    return out


def _sample_points(D: PlaneCurve, max_k: int = 2) -> list[CurvePoint]:
    out = []
    for k in range(1, max_k + 1):
        for P in points_over(D, k):
            if P.is_affine and P.field_degree() == k and P.is_smooth():
                out.append(P)
    return out


class _Sampler:
    """Values of monomials t^i s^j at affine sample points of D, in a common field."""

    def __init__(self, K: FunctionField, pts: list[CurvePoint], G):
        self.G = G
        self.vals = []
        for P in pts:
            e = P.L.embedding(G)
            x, y = (e(a) for a in P.affine())
            t, s = (y, x) if K.swapped else (x, y)
            self.vals.append((t, s))

    def monomial(self, i: int, j: int) -> list[int]:
        G = self.G
        return [G.mul(G.pow(t, i), G.pow(s, j)) for t, s in self.vals]


def _form_vanishes(C: PlaneCurve, xs: list[int], ys: list[int], G) -> bool:
    for x, y in zip(xs, ys):
        acc = 0
        for (i, j, l), c in C.form.terms.items():
            acc = G.add(acc, G.mul(c, G.mul(G.pow(x, i), G.pow(y, j))))
        if acc:
            return False
    return True


def monomial_morphisms(C: PlaneCurve, K: FunctionField, H: int) -> list[CurveMorphism]:
    """Nonconstant K-morphisms D -> C with affine coordinates each 0 or c*t^i s^j,
    i + j <= H, sorted deterministically."""
    F = C.F
    G = field(F.p, 2)
    S = _Sampler(K, _sample_points(K.curve), G)
    terms = [(None, 0, None)]
    for e, m in monomial_basis(K, H):
        v = S.monomial(*e)
        for c in range(1, F.p):
            terms.append((e, c, [G.mul(c, a) for a in v]))
    zero = [0] * len(S.vals)
    out = []
    for (ex, cx, vx), (ey, cy, vy) in itertools.product(terms, repeat=2):
        if (ex is None or ex == (0, 0)) and (ey is None or ey == (0, 0)):
            continue
        if not _form_vanishes(C, vx or zero, vy or zero, G):
            continue
        X = K.zero() if ex is None else K.t ** ex[0] * K.s ** ex[1] * K.const(cx)
        Y = K.zero() if ey is None else K.t ** ey[0] * K.s ** ey[1] * K.const(cy)
        phi = CurveMorphism.affine(K, C, X, Y)
        if verify_morphism(phi):
            out.append(phi)
    return out


def conjugate_monomial_points(C: PlaneCurve, Q: QuadExt, H: int) -> list[SymSquarePoint]:
    """Conjugate points over Q = K(w) whose branch coordinates are each 0,
    c*m or c*m*w with m = t^i s^j, i + j <= H, and not both w-free."""
    K, F = Q.K, C.F
    pts = _sample_points(K.curve)
    G = field(F.p, 4)
    S = _Sampler(K, pts, G)
    gvals = _eval_elem(Q.g, S)
    keep = [k for k, v in enumerate(gvals) if v is not None and v != 0]
    ws = [G.sqrt(gvals[k]) for k in keep]
    terms = [(None, 0, False, None)]
    for e, m in monomial_basis(K, H):
        v = [S.monomial(*e)[k] for k in keep]
        for c in range(1, F.p):
            cv = [G.mul(c, a) for a in v]
            terms.append((e, c, False, cv))
            terms.append((e, c, True, [G.mul(a, w) for a, w in zip(cv, ws)]))
    zero = [0] * len(keep)
    found: list[SymSquarePoint] = []
    keys: set = set()
    for tx, ty in itertools.product(terms, repeat=2):
        if not (tx[2] or ty[2]):
            continue
        if not _form_vanishes(C, tx[3] or zero, ty[3] or zero, G):
            continue
        X, Y = (_qterm(Q, t) for t in (tx, ty))
        phi = CurveMorphism.affine(Q, C, X, Y)
        if not verify_morphism(phi):
            continue
        P = SymSquarePoint.conjugate(phi)
        if P.divisor_key() not in keys:
            keys.add(P.divisor_key())
            found.append(P)
    return found


def _qterm(Q: QuadExt, term):
    e, c, has_w, _ = term
    if e is None:
        return Q.zero()
    K = Q.K
    m = Q.lift(K.t ** e[0] * K.s ** e[1] * K.const(c))
    return m * Q.w if has_w else m


def _eval_elem(f: FFElem, S: _Sampler) -> list[int | None]:
    """Values of f at the sample points (None at poles)."""
    G = S.G
    out = []
    for t, s in S.vals:
        acc, spow, bad = 0, 1, False
        for r in f.c:
            if r:
                num, den = r.num, r.den
                dv = _poly_at(den, t, G)
                if dv == 0:
                    bad = True
                    break
                acc = G.add(acc, G.mul(G.div(_poly_at(num, t, G), dv), spow))
            spow = G.mul(spow, s)
        out.append(None if bad else acc)
    return out


def _poly_at(p, x, G) -> int:
    acc = 0
    for a in reversed(p.c):
        acc = G.add(G.mul(acc, x), a)
    return acc


def _nonresidue(F) -> int:
    return next(a for a in range(1, F.q) if not F.is_square(a))


def default_covers(K: FunctionField, H: int) -> list[QuadExt]:
    """w^2 = c*m for nonconstant monomials m of degree <= H with c in {1, a
    fixed non-residue}, skipping evident squares, plus w^2 = non-residue."""
    F = K.F
    nr = _nonresidue(F)
    out = [quadratic_extension(K, K.const(nr))]
    for (i, j), m in monomial_basis(K, H)[1:]:
        for c in (1, nr):
            if c == 1 and i % 2 == 0 and j % 2 == 0:
                continue
            out.append(quadratic_extension(K, m * K.const(c)))
    return out


def constant_points(C: PlaneCurve, K: FunctionField) -> list[SymSquarePoint]:
    """Every point of C^(2)(F_p): pairs of F_p-points and conjugate F_{p^2}-pairs."""
    F = C.F
    rat = [CurveMorphism.constant(K, P) for P in points_over(C, 1)]
    out = [SymSquarePoint.split(a, b, f"const{{{_pt(a)}, {_pt(b)}}}")
           for a, b in itertools.combinations_with_replacement(rat, 2)]
    nr = _nonresidue(F)
    Q = quadratic_extension(K, K.const(nr))
    G = field(F.p, 2)
    r = G.sqrt(nr)
    emb = F.embedding(G)
    # a + b*sqrt(nr) -> (a, b)
    split = {G.add(emb(a), G.mul(emb(b), r)): (a, b) for a in range(F.q) for b in range(F.q)}
    seen = set()
    for P in points_over(C, 2):
        if P.field_degree() != 2 or P in seen:
            continue
        seen.update({P, P.frobenius()})
        coords = []
        for v in P.coords:
            a, b = split[v]
            coords.append(Q.const(a) + Q.lift(K.const(b)) * Q.w)
        phi = CurveMorphism(Q, C, tuple(coords))
        out.append(SymSquarePoint.conjugate(phi, f"const{{{P!r} + conj}}"))
    return out


def _pt(phi: CurveMorphism) -> str:
    return "(" + " : ".join(str(c.const_value()) for c in phi.coords) + ")"


def enumerate_points(C: PlaneCurve, D: PlaneCurve, H: int = 1, covers=None,
                     include_constant: bool = True, frobenius_translates: int = 0) -> list[SymSquarePoint]:
    """Points of C^(2)(K), K = F(D), in the searched class:

    * all constant points;
    * split points whose branches are monomial morphisms or constants;
    * conjugate points over the given covers (default: ``default_covers``)
      with monomial branch coordinates;
    * y + F^n(y) for each monomial morphism y and 1 <= n <= frobenius_translates.

    Completeness holds within that class only.
    """
    if H > 4 or C.p > 7:
        raise ValueError("enumeration beyond desk scale (H <= 4, p <= 7)")
    K = function_field(D)
    out = constant_points(C, K) if include_constant else []
    seen = {P.divisor_key() for P in out}

    def push(P):
        key = P.divisor_key()
        if key not in seen:
            seen.add(key)
            out.append(P)

    morph = monomial_morphisms(C, K, H)
    consts = [CurveMorphism.constant(K, P) for P in points_over(C, 1)]
    for i, a in enumerate(morph):
        for b in morph[i:] + consts:
            push(SymSquarePoint.split(a, b))
    for a in morph:
        for n in range(1, frobenius_translates + 1):
            push(SymSquarePoint.split(a, a.compose_frobenius(n)))
    for Q in (default_covers(K, H) if covers is None else covers):
        for P in conjugate_monomial_points(C, Q, H):
            push(P)
    named = []
    for P in out:
        named.append(P if P.name else SymSquarePoint(P.kind, P.branches, describe(P)))
    return named


def describe(P: SymSquarePoint) -> str:
    if P.name:
        return P.name
    if P.kind == "split":
        a, b = P.branches
        return f"{{{_aff(a)}, {_aff(b)}}}"
    phi = P.branches[0]
    return f"{_aff(phi)} + conj, w^2 = {phi.source.g!r}"


def _aff(phi: CurveMorphism) -> str:
    aff = phi.affine_coords()
    if aff is None:
        return "(" + " : ".join(repr(c) for c in phi.coords) + ")"
    return f"({aff[0]!r}, {aff[1]!r})"


# ---------------------------------------------------------------------------
# classification


@dataclass
class ClassificationLabel:
    kind: str  # Horizontal | FrobeniusDivisible | Counted | Double
    mu: MuValue
    gamma: ProjectiveMuClass | None
    gamma_in_C: bool | None
    depth: int | None = None
    double_of: CurveMorphism | None = None

    def __str__(self):
        if self.kind == "FrobeniusDivisible":
            return f"FrobeniusDivisible({self.depth})"
        if self.kind == "Double":
            return f"Double({_aff(self.double_of)})"
        return self.kind


def _canonical(C: PlaneCurve) -> CanonicalModel:
    return CanonicalModel.of(C)


def classify(P: SymSquarePoint, N: int = 4) -> ClassificationLabel:
    m = mu_sym2(P)
    if m.is_zero():
        return ClassificationLabel("FrobeniusDivisible", m, None, None, frobenius_divisibility_depth(P, N))
    g = ProjectiveMuClass.of(m)
    can = _canonical(P.target)
    inside = gamma_image_in_curve(g, can.forms)
    if not inside:
        return ClassificationLabel("Counted", m, g, False)
    Q = recover_point(g, can, P.K)
    if P.kind == "split" and all(b == Q for b in P.branches):
        return ClassificationLabel("Double", m, g, True, double_of=Q)
    return ClassificationLabel("Horizontal", m, g, True)


def recover_point(g: ProjectiveMuClass, can: CanonicalModel, K: FunctionField) -> CurveMorphism:
    """The morphism D -> C whose canonical image is gamma (gamma(D) inside C)."""
    pos = {e: k for k, e in enumerate(can.embedding)}
    coords = tuple(g.coords[pos[e]] for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    phi = CurveMorphism(K, can.curve, coords)
    if not verify_morphism(phi):
        raise ValueError("gamma does not define a point of C")
    return phi


def horizontal_tangency(P: SymSquarePoint, places: list[Place]) -> dict:
    """Per place: does gamma(v) lie on the secant (or tangent) line of the
    local divisor?  None where the check is not computable."""
    m = mu_sym2(P)
    out = {}
    if m.is_zero():
        return {pl: None for pl in places}
    g = ProjectiveMuClass.of(m)
    can = _canonical(P.target)
    for pl in places:
        try:
            A, B = local_divisor(P, pl)
            gv = g.at(pl)
            line = secant_or_tangent_line(can, A, B)
            out[pl] = line.contains(gv, pl.residue_field)
        except (IndeterminateError, PoleError, GammaUndefined, ValueError):
            out[pl] = None
    return out


@dataclass
class CollisionWitness:
    """gamma(v) lies on the secant lines of both local divisors at ``place``,
    so the two secants meet and the four points move in a pencil."""
    place: Place
    status: str
    l_value: int | None

    def to_json(self) -> dict:
        return {"place": {"degree": self.place.degree, "coords": list(self.place.point.coords)},
                "secants": self.status, "l": self.l_value}


def collision_witness(P1: SymSquarePoint, P2: SymSquarePoint, places: list[Place]) -> CollisionWitness | None:
    g = ProjectiveMuClass.of(mu_sym2(P1))
    can = _canonical(P1.target)
    for pl in places:
        try:
            A, B = local_divisor(P1, pl)
            C, D = local_divisor(P2, pl)
            gv = g.at(pl)
        except (IndeterminateError, PoleError, GammaUndefined, ValueError):
            continue
        union = sorted({A, B, C, D})
        if len(union) < 3:
            continue
        L = pl.residue_field
        if not (secant_or_tangent_line(can, A, B).contains(gv, L)
                and secant_or_tangent_line(can, C, D).contains(gv, L)):
            continue
        if len(union) == 3:
            # a shared point: both secants are one line through three points of C
            G, rows = _common([(can.embed(P), P.L) for P in union])
            r = FqMatrix(G, rows).rank()
            if r == 2:
                return CollisionWitness(pl, "trisecant", 3 + 1 - r)
            continue
        rep = secants_intersect_implies_g14(can, union)
        if rep.status == "disjoint":
            continue
        return CollisionWitness(pl, rep.status, rep.l_value)
    return None


# ---------------------------------------------------------------------------
# gamma-class counting


@dataclass
class BoundReport:
    entries: list            # (name, kind, gamma class)
    collisions: list         # (kind, class, [names])
    injective_counted: bool
    injective_double: bool
    p: int
    rank: int | None = None
    bound: int | None = None
    distinct_classes: int = 0
    exceeded: bool | None = None
    notes: list = dc_field(default_factory=list)
    witnesses: list = dc_field(default_factory=list)   # (first, other, CollisionWitness | None)

    @property
    def unexplained(self) -> list:
        return [(a, b) for a, b, w in self.witnesses if w is None]

    def to_json(self) -> dict:
        return {
            "points": [{"point": n, "label": k, "gamma": _class_json(c)} for n, k, c in self.entries],
            "distinct_classes": self.distinct_classes,
            "injective_counted": self.injective_counted,
            "injective_double": self.injective_double,
            "collisions": [{"label": k, "gamma": _class_json(c), "points": names}
                           for k, c, names in self.collisions],
            "rank": self.rank,
            "bound": self.bound,
            "bound_exceeded": self.exceeded,
            "collision_witnesses": [{"points": [a, b], "witness": None if w is None else w.to_json()}
                                    for a, b, w in self.witnesses],
        }


def _class_json(c: ProjectiveMuClass) -> list[str]:
    return [x.serialize() for x in c.coords]


def bound_check(labelled: list[tuple[SymSquarePoint, ClassificationLabel]], r: int | None = None,
                p: int | None = None, places: list[Place] | None = None) -> BoundReport:
    """Count gamma classes of Counted and Double points.  With ``places``,
    every collision is checked member by member against the first point."""
    entries = []
    groups: dict = {}
    for P, lab in labelled:
        p = p or P.target.p
        if lab.kind not in ("Counted", "Double"):
            continue
        entries.append((describe(P), lab.kind, lab.gamma))
        groups.setdefault((lab.kind, lab.gamma), []).append(P)
    collisions = [(k, c, [describe(P) for P in pts]) for (k, c), pts in groups.items() if len(pts) > 1]
    inj_c = not any(k == "Counted" for k, _, _ in collisions)
    inj_d = not any(k == "Double" for k, _, _ in collisions)
    distinct = len({c for _, _, c in entries})
    rep = BoundReport(entries, collisions, inj_c, inj_d, p or 0, r, None, distinct)
    if places is not None:
        for (k, c), pts in groups.items():
            for Q in pts[1:]:
                w = collision_witness(pts[0], Q, places)
                rep.witnesses.append((describe(pts[0]), describe(Q), w))
    if r is not None:
        if not p:
            raise ValueError("the bound needs the characteristic p")
        rep.bound = (p ** r - 1) // (p - 1)
        rep.exceeded = distinct > rep.bound
    return rep
