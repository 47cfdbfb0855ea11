"""Plane curves over prime fields, their points and places, function fields
K = F(D) and quadratic extensions K(w), w^2 = g, morphisms, and reduction of
global objects at places via local power-series expansions.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Sequence

from .algebra import (GF, FqElem, MPoly, NotPthPower, Poly, RatFunc, field, is_prime,
                      poly_roots, solve_generic)
from .series import Laurent, PrecisionError


class CurveParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line, self.col = line, col


class SingularPointError(ValueError):
    pass


class IndeterminateError(ValueError):
    """All projective coordinates vanish at the place even after rescaling."""


class PoleError(ValueError):
    pass


# ---------------------------------------------------------------------------
# curves and points


@dataclass(frozen=True)
class PlaneCurve:
    F: GF
    form: MPoly
    smooth: bool = True
    name: str = ""

    def __post_init__(self):
        if self.form.n != 3 or not self.form.is_homogeneous() or not self.form:
            raise ValueError("plane curve needs a nonzero homogeneous form in X, Y, Z")
        if self.F.k != 1:
            raise ValueError("curves are supported over prime fields only")

    @property
    def degree(self) -> int:
        return self.form.total_degree()

    @property
    def p(self) -> int:
        return self.F.p

    def affine_equation(self) -> MPoly:
        """F(x, y, 1) as a polynomial in (x, y)."""
        t: dict = {}
        for (i, j, _l), c in self.form.terms.items():
            t[(i, j)] = self.F.add(t.get((i, j), 0), c)
        return MPoly(self.F, 2, t)

    def contains(self, coords: Sequence[int], L: GF) -> bool:
        return _eval_form(self.form, coords, L) == 0

    def gradient(self, coords: Sequence[int], L: GF) -> tuple[int, int, int]:
        return tuple(_eval_form(self.form.diff(i), coords, L) for i in range(3))

    def __repr__(self):
        return f"PlaneCurve({self.name or self.form!r} over {self.F})"

    def __hash__(self):
        return hash((self.F, self.form, self.smooth))


def _eval_form(form: MPoly, coords: Sequence[int], L: GF) -> int:
    # base coefficients are F_p ints, valid in any extension of F_p
    acc = 0
    for e, c in form.terms.items():
        v = c
        for x, k in zip(coords, e):
            if k:
                v = L.mul(v, L.pow(x, k))
        acc = L.add(acc, v)
    return acc


def normalize(coords: Sequence[int], L: GF) -> tuple[int, ...]:
    """Scale so the last coordinate is 1, or, on the hyperplane where it
    vanishes, the first nonzero one (affine-chart convention)."""
    order = [coords[-1]] + list(coords[:-1])
    for a in order:
        if a:
            inv = L.inv(a)
            return tuple(L.mul(x, inv) for x in coords)
    raise ValueError("projective point with all coordinates zero")


@dataclass(frozen=True, order=True)
class CurvePoint:
    """A point of a plane curve with coordinates in L, normalized as in ``normalize``."""
    coords: tuple
    L: GF = dc_field(compare=False)
    curve: PlaneCurve = dc_field(compare=False, repr=False)

    @classmethod
    def make(cls, curve: PlaneCurve, coords, L: GF) -> "CurvePoint":
        c = normalize([x.value if isinstance(x, FqElem) else x for x in coords], L)
        if not curve.contains(c, L):
            raise ValueError(f"{c} is not on {curve}")
        return cls(c, L, curve)

    def __hash__(self):
        return hash((self.coords, self.L.k))

    def __eq__(self, o):
        return isinstance(o, CurvePoint) and self.coords == o.coords and self.L == o.L

    @property
    def is_affine(self) -> bool:
        return self.coords[2] != 0

    def affine(self) -> tuple[int, int]:
        x, y, z = self.coords
        iz = self.L.inv(z)
        return self.L.mul(x, iz), self.L.mul(y, iz)

    def frobenius(self, times: int = 1) -> "CurvePoint":
        return CurvePoint(tuple(self.L.frob(a, times) for a in self.coords), self.L, self.curve)

    def field_degree(self) -> int:
        """Degree of the field generated by the coordinates over F_p."""
        return max(self.L.contains_degree(a) for a in self.coords)

    def embed(self, G: GF) -> "CurvePoint":
        if G == self.L:
            return self
        emb = self.L.embedding(G)
        return CurvePoint(tuple(emb(a) for a in self.coords), G, self.curve)

    def is_smooth(self) -> bool:
        return any(self.curve.gradient(self.coords, self.L))

    def __repr__(self):
        def fmt(a):
            return repr(FqElem(self.L, a))
        return "(" + " : ".join(fmt(a) for a in self.coords) + ")"


def genus(C: PlaneCurve) -> int:
    if not C.smooth:
        raise ValueError("genus formula needs a curve flagged smooth")
    d = C.degree
    return (d - 1) * (d - 2) // 2


def points_over(C: PlaneCurve, k: int) -> list[CurvePoint]:
    """All projective points of C over F_{p^k}, sorted."""
    L = field(C.p, k)
    pts = set()
    aff = C.affine_equation()
    ydeg = aff.degree_in(1)
    for x in range(L.q):
        coeffs = [0] * (ydeg + 1)
        for (i, j), c in aff.terms.items():
            coeffs[j] = L.add(coeffs[j], L.mul(c, L.pow(x, i)))
        f = Poly(L, coeffs)
        if f.is_zero():
            raise ValueError("curve contains a vertical line")
        for y in poly_roots(f):
            pts.add((x, y, 1))
    # line at infinity Z = 0
    inf = MPoly(C.F, 1, {(j,): c for (i, j, l), c in C.form.terms.items() if l == 0})
    f = Poly(L, [inf.terms.get((j,), 0) for j in range(C.degree + 1)])
    if f.is_zero():
        raise ValueError("curve contains the line at infinity")
    for y in poly_roots(f):
        pts.add((1, y, 0))
    if C.contains((0, 1, 0), L):
        pts.add((0, 1, 0))
    return [CurvePoint(c, L, C) for c in sorted(pts)]


def check_smooth(C: PlaneCurve, max_k: int = 2) -> bool:
    """Jacobian criterion on all points over F_{p^k}, k <= max_k."""
    return all(P.is_smooth() for k in range(1, max_k + 1) for P in points_over(C, k))


@dataclass(frozen=True, order=True)
class Place:
    """A closed point: the q-Frobenius orbit of ``point``, which lives over F_{p^degree}."""
    degree: int
    point: CurvePoint

    @property
    def curve(self) -> PlaneCurve:
        return self.point.curve

    @property
    def residue_field(self) -> GF:
        return self.point.L

    def orbit(self) -> list[CurvePoint]:
        return [self.point.frobenius(i) for i in range(self.degree)]

    def __repr__(self):
        return f"Place(deg {self.degree}, {self.point!r})"


def place_of(P: CurvePoint) -> Place:
    d = P.field_degree()
    Q = P
    if d != P.L.k:
        # move down to the subfield F_{p^d}
        sub = field(P.L.p, d)
        emb = sub.embedding(P.L)
        back = {emb(a): a for a in range(sub.q)}
        Q = CurvePoint(tuple(back[a] for a in P.coords), sub, P.curve)
    orbit = [Q.frobenius(i) for i in range(d)]
    return Place(d, min(orbit))


def places_up_to(D: PlaneCurve, B: int) -> list[Place]:
    """Places of degree <= B, sorted by (degree, representative coordinates).

    Curves flagged singular contribute only their smooth affine points.
    """
    if B > 4:
        raise ValueError("place degree bound above the desk-scale cap 4")
    out = []
    for m in range(1, B + 1):
        seen = set()
        for P in points_over(D, m):
            if P.field_degree() != m:
                continue
            if not D.smooth and (not P.is_affine or not P.is_smooth()):
                continue
            pl = place_of(P)
            if pl not in seen:
                seen.add(pl)
                out.append(pl)
    return sorted(out)


# ---------------------------------------------------------------------------
# function fields


class FunctionField:
    """K = F(t)[s]/(E(t,s)) for the affine equation of a plane curve.

    t is the separating coordinate x (or y when dE/dy vanishes identically).
    Elements are vectors of rational functions in t against 1, s, ..., s^(n-1).
    """

    def __init__(self, curve: PlaneCurve):
        F = curve.F
        self.curve, self.F = curve, F
        E = curve.affine_equation()
        self.swapped = not E.diff(1)
        if self.swapped:
            E = MPoly(F, 2, {(j, i): c for (i, j), c in E.terms.items()})
        if not E.diff(1):
            raise ValueError("no separating affine coordinate")
        self.E = E
        n = E.degree_in(1)
        self.n = n
        ecoef = [Poly(F) for _ in range(n + 1)]
        for (i, j), c in E.terms.items():
            ecoef[j] = ecoef[j] + Poly.monomial(F, i, c)
        if ecoef[n].deg != 0:
            raise ValueError("leading coefficient in the second affine coordinate must be constant")
        inv = F.inv(ecoef[n].c[0])
        self._tail = [RatFunc(e.scale(inv)) for e in ecoef[:n]]
        self._ds = None

    def __repr__(self):
        return f"F({self.curve.name or 'D'})"

    def zero(self) -> "FFElem":
        return FFElem(self, (RatFunc.zero(self.F),) * self.n)

    def one(self) -> "FFElem":
        return self.const(1)

    def const(self, a: int) -> "FFElem":
        z = RatFunc.zero(self.F)
        return FFElem(self, (RatFunc.const(self.F, a % self.F.p if isinstance(a, int) and self.F.k == 1 else a),) + (z,) * (self.n - 1))

    def from_ratfunc(self, r: RatFunc) -> "FFElem":
        return FFElem(self, (r,) + (RatFunc.zero(self.F),) * (self.n - 1))

    @property
    def t(self) -> "FFElem":
        return self.from_ratfunc(RatFunc(Poly.x(self.F)))

    @property
    def s(self) -> "FFElem":
        if self.n == 1:
            return self.from_ratfunc(-self._tail[0])
        z = RatFunc.zero(self.F)
        v = [z] * self.n
        v[1] = RatFunc.const(self.F, 1)
        return FFElem(self, tuple(v))

    @property
    def x(self) -> "FFElem":
        """The curve's affine coordinate x = X/Z."""
        return self.s if self.swapped else self.t

    @property
    def y(self) -> "FFElem":
        return self.t if self.swapped else self.s

    def from_poly(self, P: MPoly) -> "FFElem":
        """Element given by a polynomial in the curve's affine (x, y)."""
        return P.evaluate([self.x, self.y], ring_one=self.one(),
                          add=lambda a, b: a + b, mul=lambda a, b: a * b,
                          const=self.const)

    def ds_dt(self) -> "FFElem":
        if self._ds is None:
            E = self.E
            Et = self._from_ts_poly(E.diff(0))
            Es = self._from_ts_poly(E.diff(1))
            self._ds = -(Et / Es)
        return self._ds

    def _from_ts_poly(self, P: MPoly) -> "FFElem":
        return P.evaluate([self.t, self.s], ring_one=self.one(),
                          add=lambda a, b: a + b, mul=lambda a, b: a * b, const=self.const)

    def _reduce(self, c: list[RatFunc]) -> tuple[RatFunc, ...]:
        n = self.n
        c = list(c)
        for k in range(len(c) - 1, n - 1, -1):
            ck = c[k]
            if ck:
                for j in range(n):
                    if self._tail[j]:
                        c[k - n + j] = c[k - n + j] - ck * self._tail[j]
        c = c[:n] + [RatFunc.zero(self.F)] * (n - len(c))
        return tuple(c)

    @lru_cache(maxsize=None)
    def pth_basis(self) -> list["FFElem"]:
        sp = self.s ** self.F.p
        out = [self.one()]
        for _ in range(self.n - 1):
            out.append(out[-1] * sp)
        return out


class FFElem:
    """Element of a FunctionField, canonical as a coefficient vector."""

    __slots__ = ("K", "c")

    def __init__(self, K: FunctionField, coeffs: tuple):
        self.K, self.c = K, tuple(coeffs)

    # ring structure
    def __add__(self, o):
        if isinstance(o, int):
            o = self.K.const(o)
        return FFElem(self.K, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return FFElem(self.K, tuple(-a for a in self.c))

    def __sub__(self, o):
        if isinstance(o, int):
            o = self.K.const(o)
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        K = self.K
        if isinstance(o, int):
            return FFElem(K, tuple(a * (o % K.F.p) for a in self.c))
        if isinstance(o, RatFunc):
            return FFElem(K, tuple(a * o for a in self.c))
        n = K.n
        out = [RatFunc.zero(K.F)] * (2 * n - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return FFElem(K, K._reduce(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.K.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def inverse(self) -> "FFElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in function field")
        K = self.K
        n = K.n
        if n == 1 or all(not a for a in self.c[1:]):
            return K.from_ratfunc(self.c[0].inverse())
        cols = []
        basis = K.one()
        for _ in range(n):
            cols.append((self * basis).c)
            basis = basis * K.s
        rows = [[cols[j][i] for j in range(n)] for i in range(n)]
        z = RatFunc.zero(K.F)
        sol = solve_generic(rows, [RatFunc.const(K.F, 1)] + [z] * (n - 1), z, RatFunc.const(K.F, 1))
        if sol is None:
            raise ZeroDivisionError("element is a zero divisor: curve equation reducible?")
        return FFElem(K, tuple(sol))

    def __truediv__(self, o):
        if isinstance(o, int):
            o = self.K.const(o)
        return self * o.inverse()

    def __eq__(self, o):
        if isinstance(o, int):
            o = self.K.const(o)
        return isinstance(o, FFElem) and self.K is o.K and self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self):
        return not self.is_zero()

    def is_const(self) -> bool:
        return self.c[0].is_const() and not any(self.c[1:])

    def const_value(self) -> int:
        if not self.is_const():
            raise ValueError("not a constant")
        return self.c[0].num.c[0] if self.c[0].num.c else 0

    # calculus
    def deriv(self) -> "FFElem":
        """d/dt through the curve equation."""
        K = self.K
        out = FFElem(K, tuple(a.deriv() for a in self.c))
        lower = [RatFunc.zero(K.F)] * K.n
        any_lower = False
        for i in range(1, K.n):
            if self.c[i]:
                lower[i - 1] = self.c[i] * (i % K.F.p)
                any_lower = True
        if any_lower:
            out = out + FFElem(K, tuple(lower)) * K.ds_dt()
        return out

    def pth_root(self) -> "FFElem":
        """g with g^p = self, or NotPthPower."""
        K = self.K
        if self.is_zero():
            return self
        if self.deriv():
            raise NotPthPower("element has nonzero differential")
        basis = K.pth_basis()
        n = K.n
        rows = [[basis[j].c[i] for j in range(n)] for i in range(n)]
        z = RatFunc.zero(K.F)
        sol = solve_generic(rows, list(self.c), z, RatFunc.const(K.F, 1))
        if sol is None:
            raise NotPthPower("no representation over F(t^p)(s^p)")
        return FFElem(K, tuple(r.pth_root() for r in sol))

    # representation
    @property
    def denominator(self) -> Poly:
        d = Poly.const(self.K.F, 1)
        for r in self.c:
            from .algebra import poly_gcd
            g = poly_gcd(d, r.den)
            d = d * (r.den // g)
        return d

    @property
    def numerator(self) -> MPoly:
        """Polynomial N(t, s) with self = N / denominator."""
        d = self.denominator
        terms = {}
        for j, r in enumerate(self.c):
            q = r.num * (d // r.den)
            for i, a in enumerate(q.c):
                if a:
                    terms[(i, j)] = a
        return MPoly(self.K.F, 2, terms)

    def height(self) -> int:
        return max((r.height() for r in self.c), default=0)

    def __repr__(self):
        parts = []
        for j, r in enumerate(self.c):
            if not r:
                continue
            mon = "" if j == 0 else "s" if j == 1 else f"s^{j}"
            rs = repr(r)
            if mon:
                parts.append(f"({rs})*{mon}" if (" " in rs) else f"{rs}*{mon}")
            else:
                parts.append(rs)
        return " + ".join(parts) or "0"

    def serialize(self) -> str:
        """``num / den`` with num in t, s."""
        num = self.numerator
        den = self.denominator
        return f"{_fmt_ts(num)} / {_fmt_poly(den)}"


def _fmt_poly(p: Poly) -> str:
    return repr(p) if p.c else "0"


def _fmt_ts(P: MPoly) -> str:
    if not P.terms:
        return "0"
    parts = []
    for (i, j), c in sorted(P.terms.items(), key=lambda kv: (-kv[0][1], -kv[0][0])):
        mon = "*".join(x for x in (("t" if i == 1 else f"t^{i}") if i else "",
                                   ("s" if j == 1 else f"s^{j}") if j else "") if x)
        cs = repr(FqElem(P.F, c))
        parts.append(mon if c == 1 and mon else f"{cs}*{mon}" if mon else cs)
    return " + ".join(parts)


@lru_cache(maxsize=None)
def function_field(curve: PlaneCurve) -> FunctionField:
    return FunctionField(curve)


# ---------------------------------------------------------------------------
# quadratic extensions K(w), w^2 = g


class QuadExt:
    """K' = K[w]/(w^2 - g), g a non-square of K, odd characteristic."""

    def __init__(self, K: FunctionField, g: FFElem):
        if K.F.p == 2:
            raise ValueError("inseparable or Artin-Schreier quadratic extensions are out of scope")
        if g.is_zero():
            raise ValueError("w^2 = 0 is not a field extension")
        self.K, self.g = K, g
        self._dg_over_2g = None

    def __repr__(self):
        return f"{self.K!r}(w), w^2 = {self.g!r}"

    @property
    def F(self) -> GF:
        return self.K.F

    def zero(self) -> "QElem":
        return QElem(self, self.K.zero(), self.K.zero())

    def one(self) -> "QElem":
        return QElem(self, self.K.one(), self.K.zero())

    def const(self, a: int) -> "QElem":
        return QElem(self, self.K.const(a), self.K.zero())

    def lift(self, a: FFElem) -> "QElem":
        return QElem(self, a, self.K.zero())

    @property
    def w(self) -> "QElem":
        return QElem(self, self.K.zero(), self.K.one())

    def half_log_deriv(self) -> FFElem:
        if self._dg_over_2g is None:
            self._dg_over_2g = self.g.deriv() / (self.g * 2)
        return self._dg_over_2g


class QElem:
    __slots__ = ("Q", "a", "b")

    def __init__(self, Q: QuadExt, a: FFElem, b: FFElem):
        self.Q, self.a, self.b = Q, a, b

    def _c(self, o):
        if isinstance(o, QElem):
            return o
        if isinstance(o, int):
            return self.Q.const(o)
        if isinstance(o, FFElem):
            return self.Q.lift(o)
        return NotImplemented

    def __add__(self, o):
        o = self._c(o)
        return QElem(self.Q, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QElem(self.Q, -self.a, -self.b)

    def __sub__(self, o):
        return self + (-self._c(o))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._c(o)
        a, b, c, d = self.a, self.b, o.a, o.b
        return QElem(self.Q, a * c + b * d * self.Q.g, a * d + b * c)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.Q.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def norm(self) -> FFElem:
        return self.a * self.a - self.b * self.b * self.Q.g

    def inverse(self) -> "QElem":
        n = self.norm()
        if n.is_zero():
            raise ZeroDivisionError("zero norm: g is a square or element is zero")
        ni = n.inverse()
        return QElem(self.Q, self.a * ni, -(self.b * ni))

    def __truediv__(self, o):
        return self * self._c(o).inverse()

    def __eq__(self, o):
        o = self._c(o)
        return isinstance(o, QElem) and o.Q is self.Q and self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def is_const(self) -> bool:
        """Algebraic over F; w counts as constant when g is."""
        if self.b.is_zero():
            return self.a.is_const()
        return self.Q.g.is_const() and self.a.is_const() and self.b.is_const()

    def const_value(self) -> int:
        if not self.b.is_zero():
            raise ValueError("not a constant")
        return self.a.const_value()

    def conjugate(self) -> "QElem":
        return QElem(self.Q, self.a, -self.b)

    def trace(self) -> FFElem:
        return self.a * 2

    def deriv(self) -> "QElem":
        # d(w)/dt = w * g'/(2g)
        return QElem(self.Q, self.a.deriv(), self.b.deriv() + self.b * self.Q.half_log_deriv())

    def pth_root(self) -> "QElem":
        """(c + d w)^p = c^p + d^p g^((p-1)/2) w."""
        p = self.Q.F.p
        c = self.a.pth_root()
        d = (self.b / self.Q.g ** ((p - 1) // 2)).pth_root()
        return QElem(self.Q, c, d)

    def height(self) -> int:
        return max(self.a.height(), self.b.height())

    def __repr__(self):
        if self.b.is_zero():
            return repr(self.a)
        if self.a.is_zero():
            return f"({self.b!r})*w"
        return f"{self.a!r} + ({self.b!r})*w"


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class CurveMorphism:
    """D -> C given by projective coordinate functions in K = F(D) or a quadratic K'."""
    source: object  # FunctionField or QuadExt
    target: PlaneCurve
    coords: tuple

    @classmethod
    def affine(cls, source, target: PlaneCurve, x, y) -> "CurveMorphism":
        return cls(source, target, (x, y, source.one()))

    @classmethod
    def constant(cls, source, P: CurvePoint) -> "CurveMorphism":
        if P.L.k != 1:
            raise ValueError("constant morphisms need an F_p-rational point")
        return cls(source, P.curve, tuple(source.const(a) for a in P.coords))

    def is_constant(self) -> bool:
        nz = [c for c in self.coords if not c.is_zero()]
        if not nz:
            return False
        ref = nz[0]
        return all((c / ref).is_const() for c in self.coords)

    def affine_coords(self):
        """(x, y) = (X/Z, Y/Z); None when Z vanishes identically."""
        X, Y, Z = self.coords
        if Z.is_zero():
            return None
        return X / Z, Y / Z

    def compose_frobenius(self, n: int = 1) -> "CurveMorphism":
        """Coordinatewise p^n-th powers: the p-power Frobenius composed n times."""
        e = self.target.p ** n
        return CurveMorphism(self.source, self.target, tuple(c ** e for c in self.coords))

    def __eq__(self, o):
        if not isinstance(o, CurveMorphism) or o.target != self.target:
            return False
        # projective equality: cross ratios
        a, b = self.coords, o.coords
        return all((a[i] * b[j] - a[j] * b[i]).is_zero() for i in range(3) for j in range(i + 1, 3))

    def __hash__(self):
        return hash(self.target)


def verify_morphism(phi: CurveMorphism) -> bool:
    """True iff F_C(phi_0, phi_1, phi_2) vanishes in the source field."""
    src = phi.source
    if all(c.is_zero() for c in phi.coords):
        return False
    val = phi.target.form.evaluate(list(phi.coords), ring_one=src.one(),
                                   add=lambda a, b: a + b, mul=lambda a, b: a * b,
                                   const=src.const)
    return val.is_zero()


# ---------------------------------------------------------------------------
# local expansions


@lru_cache(maxsize=4096)
def local_coordinates(P: CurvePoint, prec: int) -> tuple[Laurent, Laurent, Laurent]:
    """Series for the projective coordinates (X, Y, Z) of the curve near a
    smooth point P, in a local parameter pi, with the chart coordinate = 1."""
    C, L = P.curve, P.L
    c = next(i for i, a in enumerate(P.coords) if a == 1) if 1 in P.coords else 0
    if P.is_affine:
        c = 2
    others = [i for i in range(3) if i != c]
    scale = L.inv(P.coords[c])
    pt = [L.mul(a, scale) for a in P.coords]
    i, j = others
    Gi = _eval_form(C.form.diff(i), pt, L)
    Gj = _eval_form(C.form.diff(j), pt, L)
    if Gj:
        free, dep = i, j
        Gdep = C.form.diff(j)
    elif Gi:
        free, dep = j, i
        Gdep = C.form.diff(i)
    else:
        raise SingularPointError(f"{P} is singular")
    coords = [None, None, None]
    coords[c] = Laurent.const(L, 1, prec)
    coords[free] = Laurent.const(L, pt[free], prec) + Laurent.param(L, prec)
    coords[dep] = Laurent.const(L, pt[dep], prec)
    ring = dict(ring_one=Laurent.const(L, 1, prec), add=lambda a, b: a + b,
                mul=lambda a, b: a * b, const=lambda a: Laurent.const(L, a, prec))
    steps = max(1, prec.bit_length()) + 1
    for _ in range(steps):
        val = C.form.evaluate(coords, **ring)
        if val.is_zero():
            break
        der = Gdep.evaluate(coords, **ring)
        coords[dep] = coords[dep] - val / der
    return tuple(coords)


def _ratfunc_series(r: RatFunc, t: Laurent, L: GF, prec: int) -> Laurent:
    def horner(p: Poly) -> Laurent:
        acc = Laurent.const(L, 0, prec)
        for a in reversed(p.c):
            acc = acc * t + Laurent.const(L, a, prec)
        return acc
    num = horner(r.num)
    if r.den.deg == 0:
        return num.scale(L.inv(r.den.c[0]))
    return num / horner(r.den)


def expand(f, place: Place, prec: int = 16) -> Laurent:
    """Series expansion of a function-field element at a place of its curve."""
    K = f.K
    P = place.point
    L = P.L
    X, Y, Z = local_coordinates(P, prec)
    x, y = X / Z, Y / Z
    t, s = (y, x) if K.swapped else (x, y)
    acc = Laurent.const(L, 0, prec)
    spow = Laurent.const(L, 1, prec)
    for j, r in enumerate(f.c):
        if r:
            acc = acc + _ratfunc_series(r, t, L, prec) * spow
        if j < K.n - 1:
            spow = spow * s
    return acc


def expand_exact(f, place: Place, start: int = 12, cap: int = 768) -> Laurent:
    """Expand a nonzero element with enough precision to see its leading term."""
    if f.is_zero():
        raise ValueError("zero element has no leading term")
    prec = start
    while prec <= cap:
        try:
            s = expand(f, place, prec)
            if not s.is_zero():
                return s
        except PrecisionError:
            pass
        prec *= 2
    raise PrecisionError("could not determine the leading term")


def reduce_element(f: FFElem, place: Place) -> FqElem:
    L = place.residue_field
    if f.is_zero():
        return FqElem(L, 0)
    s = expand_exact(f, place)
    if s.val < 0:
        raise PoleError(f"pole of order {-s.val} at {place}")
    return FqElem(L, s.c[0] if s.val == 0 else 0)


def _leading_point(series: Sequence[Laurent], target: PlaneCurve, L: GF) -> CurvePoint:
    nz = [s for s in series if not s.is_zero()]
    if not nz:
        raise IndeterminateError("all coordinates vanish")
    m = min(s.val for s in nz)
    coords = [0 if s.is_zero() else s.coeff(m) for s in series]
    if not any(coords):
        raise IndeterminateError("leading coefficients vanish")
    return CurvePoint.make(target, coords, L)


def reduce_morphism(phi: CurveMorphism, place: Place) -> CurvePoint:
    """Reduction of a K-rational morphism at a place (a point over F_v)."""
    if isinstance(phi.source, QuadExt):
        raise TypeError("use reduce_pair for morphisms over a quadratic extension")
    L = place.residue_field
    series = [Laurent.const(L, 0, 1) if c.is_zero() else expand_exact(c, place) for c in phi.coords]
    # bring all series to a common enough precision relative to the minimum valuation
    return _leading_point(series, phi.target, L)


def reduce_pair(phi: CurveMorphism, place: Place) -> tuple[CurvePoint, CurvePoint]:
    """Reductions of the two conjugate branches of a morphism over K(w).

    Points are returned over the quadratic extension of the residue field,
    sorted.  At ramified places both branches give the same point.
    """
    Q: QuadExt = phi.source
    L = place.residue_field
    m = L.k
    G = field(L.p, 2 * m)
    emb = L.embedding(G)
    gser = expand_exact(Q.g, place)
    ramified = gser.val % 2 == 1
    # enough precision to cover cancellations between a and b*w parts
    for prec in (16, 32, 64, 128, 256):
        try:
            a_ser = [None if c.a.is_zero() else expand(c.a, place, prec) for c in phi.coords]
            b_ser = [None if c.b.is_zero() else expand(c.b, place, prec) for c in phi.coords]
            g_ser = expand(Q.g, place, prec)
            if ramified:
                a_ser = [None if s is None else s.subs_square() for s in a_ser]
                b_ser = [None if s is None else s.subs_square() for s in b_ser]
                g_ser = g_ser.subs_square()
            a_ser = [None if s is None else s.map_field(emb, G) for s in a_ser]
            b_ser = [None if s is None else s.map_field(emb, G) for s in b_ser]
            g_ser = g_ser.map_field(emb, G)
            w = g_ser.sqrt()
            if w is None:
                raise PrecisionError("square root failed")
            branches = []
            for sign in (1, -1):
                ws = w if sign == 1 else -w
                coords = []
                for a, b in zip(a_ser, b_ser):
                    v = Laurent.const(G, 0, prec)
                    if a is not None:
                        v = v + a
                    if b is not None:
                        v = v + b * ws
                    coords.append(v)
                if all(c.is_zero() for c in coords):
                    raise PrecisionError("need more precision")
                branches.append(_leading_point(coords, phi.target, G))
            return tuple(sorted(branches))
        except (PrecisionError, IndeterminateError):
            continue
    raise IndeterminateError(f"could not reduce branches at {place}")


def reduce_at_place(obj, place: Place):
    """Reduction of a function-field element (-> FqElem) or morphism
    (-> CurvePoint, or a pair of CurvePoints for morphisms over K(w))."""
    if isinstance(obj, FFElem):
        return reduce_element(obj, place)
    if isinstance(obj, CurveMorphism):
        if isinstance(obj.source, QuadExt):
            return reduce_pair(obj, place)
        return reduce_morphism(obj, place)
    raise TypeError(f"cannot reduce {type(obj).__name__}")


# ---------------------------------------------------------------------------
# divisors


@dataclass(frozen=True)
class Divisor:
    """Finite formal sum of places; stored as a sorted tuple of (place, multiplicity)."""
    terms: tuple

    @classmethod
    def of(cls, mapping) -> "Divisor":
        acc: dict = {}
        items = mapping.items() if isinstance(mapping, dict) else mapping
        for pl, m in items:
            acc[pl] = acc.get(pl, 0) + m
        return cls(tuple(sorted((pl, m) for pl, m in acc.items() if m)))

    @property
    def degree(self) -> int:
        return sum(pl.degree * m for pl, m in self.terms)

    def is_effective(self) -> bool:
        return all(m > 0 for _, m in self.terms)

    def support(self) -> list[Place]:
        return [pl for pl, _ in self.terms]

    def __add__(self, o: "Divisor") -> "Divisor":
        return Divisor.of(list(self.terms) + list(o.terms))

    def __repr__(self):
        return " + ".join(f"{m}*{pl!r}" if m != 1 else repr(pl) for pl, m in self.terms) or "0"


# ---------------------------------------------------------------------------
# curve files


def parse_curve(text: str, name: str = "") -> PlaneCurve:
    """Three-line format: ``p k`` / ``c i j l c i j l ...`` / ``smooth|singular-ok``.

    Line 2 is a flat list of quadruples ``coeff i j l`` (coeff*X^i Y^j Z^l);
    groups may also be separated by commas or semicolons.
    """
    lines = [ln for ln in text.splitlines()]
    body = [(i + 1, ln) for i, ln in enumerate(lines) if ln.strip() and not ln.lstrip().startswith("#")]
    if len(body) < 3:
        raise CurveParseError("expected 3 lines: field, form, smoothness flag", len(lines) or 1, 1)
    (l1, f1), (l2, f2), (l3, f3) = body[:3]
    toks = _tokens(f1)
    if len(toks) != 2:
        raise CurveParseError("expected 'p k'", l1, 1)
    try:
        p, k = (int(t) for _, t in toks)
    except ValueError:
        raise CurveParseError("field line must be two integers", l1, toks[0][0])
    if not is_prime(p):
        raise CurveParseError(f"{p} is not prime", l1, toks[0][0])
    if k != 1:
        raise CurveParseError("only prime base fields (k = 1) are supported", l1, toks[1][0])
    F = field(p, 1)
    toks = _tokens(f2.replace(",", " ").replace(";", " "))
    if not toks or len(toks) % 4:
        raise CurveParseError("form must be a list of 'coeff i j l' quadruples",
                              l2, toks[-1][0] if toks else 1)
    terms: dict = {}
    deg = None
    for q in range(0, len(toks), 4):
        grp = toks[q:q + 4]
        try:
            c, i, j, l = (int(t) for _, t in grp)
        except ValueError:
            bad = next(col for col, t in grp if not t.lstrip("-").isdigit())
            raise CurveParseError("non-integer token", l2, bad)
        if min(i, j, l) < 0:
            raise CurveParseError("negative exponent", l2, grp[1][0])
        if deg is None:
            deg = i + j + l
        elif i + j + l != deg:
            raise CurveParseError("form is not homogeneous", l2, grp[0][0])
        e = (i, j, l)
        terms[e] = F.add(terms.get(e, 0), c % p)
    flag = f3.strip()
    if flag not in ("smooth", "singular-ok"):
        raise CurveParseError("third line must be 'smooth' or 'singular-ok'", l3, 1)
    form = MPoly(F, 3, terms)
    if not form:
        raise CurveParseError("form is zero modulo p", l2, 1)
    return PlaneCurve(F, form, flag == "smooth", name)


def _tokens(line: str) -> list[tuple[int, str]]:
    out = []
    i = 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace():
            j += 1
        out.append((i + 1, line[i:j]))
        i = j
    return out


def format_curve(C: PlaneCurve) -> str:
    terms = "  ".join(f"{c} {i} {j} {l}" for (i, j, l), c in sorted(C.form.terms.items(), reverse=True))
    return f"{C.p} 1\n{terms}\n{'smooth' if C.smooth else 'singular-ok'}\n"


def curve_from_terms(p: int, terms: dict, smooth: bool = True, name: str = "") -> PlaneCurve:
    F = field(p)
    return PlaneCurve(F, MPoly(F, 3, {e: c % p for e, c in terms.items()}), smooth, name)


@lru_cache(maxsize=None)
def quadratic_extension(K: FunctionField, g: FFElem) -> QuadExt:
    """Shared K(w), w^2 = g; points built over the same g then compare equal."""
    return QuadExt(K, g)
