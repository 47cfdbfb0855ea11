"""Kähler differentials written as f*dt against the separating coordinate t."""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import MPoly, Poly, RatFunc
from .curves import (CurveMorphism, FFElem, FunctionField, PlaneCurve, QElem, QuadExt,
                     function_field, genus)


class NonSeparatingError(ValueError):
    pass


class PoleNormalizationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Differential:
    """coeff * dt on the field ``ring`` (a FunctionField or QuadExt)."""
    ring: object
    coeff: object

    def __add__(self, o: "Differential") -> "Differential":
        return Differential(self.ring, self.coeff + o.coeff)

    def __mul__(self, f) -> "Differential":
        return Differential(self.ring, self.coeff * f)

    __rmul__ = __mul__

    def __neg__(self):
        return Differential(self.ring, -self.coeff)

    def __eq__(self, o):
        return isinstance(o, Differential) and o.ring is self.ring and self.coeff == o.coeff

    def __hash__(self):
        return hash(self.coeff)

    def is_zero(self) -> bool:
        return self.coeff.is_zero()

    def __repr__(self):
        return f"({self.coeff!r}) dt"

    def serialize(self) -> str:
        return f"{self.coeff.serialize()} dt"


def zero_differential(ring) -> Differential:
    return Differential(ring, ring.zero())


def differentiate(f) -> Differential:
    """d(f) = (df/dt) dt, by implicit differentiation through the curve equation."""
    ring = f.K if isinstance(f, FFElem) else f.Q
    return Differential(ring, f.deriv())


@dataclass(frozen=True)
class HolomorphicBasis:
    """x^i y^j dx / (dF/dy normalized monic), i + j <= d - 3, ordered 1, x, y, x^2, xy, y^2, ..."""
    curve: PlaneCurve
    monomials: tuple  # (i, j) exponents
    denominator: MPoly  # in affine (x, y)

    def __len__(self):
        return len(self.monomials)

    def numerator(self, idx: int) -> MPoly:
        i, j = self.monomials[idx]
        return MPoly(self.curve.F, 2, {(i, j): 1})

    def differentials(self) -> list[Differential]:
        """The basis as differentials on F(C)."""
        K = function_field(self.curve)
        dx = K.x.deriv()
        den = K.from_poly(self.denominator)
        return [Differential(K, K.from_poly(self.numerator(k)) * dx / den) for k in range(len(self))]

    def labels(self) -> list[str]:
        out = []
        den = _fmt_xy(self.denominator)
        for i, j in self.monomials:
            num = "*".join(m for m in (("x" if i == 1 else f"x^{i}") if i else "",
                                       ("y" if j == 1 else f"y^{j}") if j else "") if m) or "1"
            out.append(f"{num} dx / ({den})")
        return out


def _fmt_xy(P: MPoly) -> str:
    parts = []
    for (i, j), c in sorted(P.terms.items(), reverse=True):
        mon = "*".join(m for m in (("x" if i == 1 else f"x^{i}") if i else "",
                                   ("y" if j == 1 else f"y^{j}") if j else "") if m)
        parts.append(mon if c == 1 and mon else f"{c}*{mon}" if mon else str(c))
    return " + ".join(parts)


def adjoint_monomials(d: int) -> tuple:
    """Exponents (i, j) with i + j <= d - 3 by total degree, x before y."""
    out = []
    for tot in range(d - 2):
        for j in range(tot + 1):
            out.append((tot - j, j))
    return tuple(out)


def holomorphic_basis(C: PlaneCurve) -> HolomorphicBasis:
    if not C.smooth:
        raise ValueError("holomorphic basis needs a smooth plane curve")
    E = C.affine_equation()
    Fy = E.diff(1)
    if not Fy:
        raise NonSeparatingError("dF/dy vanishes identically")
    lead = max(Fy.terms)  # lexicographic leading term, monic normalization
    Fy = Fy * C.F.inv(Fy.terms[lead])
    mons = adjoint_monomials(C.degree) if C.degree >= 3 else ()
    assert len(mons) == genus(C)
    return HolomorphicBasis(C, mons, Fy)


def _ring_of(phi: CurveMorphism):
    return phi.source


def _subst(f: FFElem, tx, sx, ring):
    """f(t, s) with t, s replaced by ring elements."""
    acc = ring.zero()
    spow = ring.one()
    for j, r in enumerate(f.c):
        if r:
            acc = acc + _ratfunc_at(r, tx, ring) * spow
        if j < f.K.n - 1:
            spow = spow * sx
    return acc


def _ratfunc_at(r: RatFunc, x, ring):
    def horner(p: Poly):
        acc = ring.zero()
        for a in reversed(p.c):
            acc = acc * x + ring.const(a)
        return acc
    den = horner(r.den)
    if den.is_zero():
        raise PoleNormalizationError("denominator vanishes identically after substitution")
    return horner(r.num) / den


def pullback(omega: Differential, phi: CurveMorphism) -> Differential:
    """phi^*(f dt_C) = (f o phi) d(t_C o phi), as coeff * dt on the source."""
    ring = _ring_of(phi)
    KC: FunctionField = omega.ring
    if KC.curve != phi.target:
        raise ValueError("differential does not live on the morphism's target")
    aff = phi.affine_coords()
    if aff is None:
        if phi.is_constant():
            return zero_differential(ring)
        raise PoleNormalizationError("morphism lands in the line at infinity")
    X, Y = aff
    tC, sC = (Y, X) if KC.swapped else (X, Y)
    dt = tC.deriv()
    if dt.is_zero():
        return zero_differential(ring)
    if omega.coeff.is_zero():
        return zero_differential(ring)
    return Differential(ring, _subst(omega.coeff, tC, sC, ring) * dt)


def pullback_form(basis: HolomorphicBasis, idx: int, phi: CurveMorphism) -> Differential:
    """Pull back the idx-th basis form straight from its x, y expression."""
    ring = _ring_of(phi)
    aff = phi.affine_coords()
    if aff is None:
        # C has no line components, so such a morphism is constant
        return zero_differential(ring)
    X, Y = aff
    dX = X.deriv()
    if dX.is_zero():
        return zero_differential(ring)
    ev = dict(ring_one=ring.one(), add=lambda a, b: a + b, mul=lambda a, b: a * b, const=ring.const)
    den = basis.denominator.evaluate([X, Y], **ev)
    if den.is_zero():
        raise PoleNormalizationError("image lies in the polar locus of the form")
    num = basis.numerator(idx).evaluate([X, Y], **ev)
    return Differential(ring, num * dX / den)


def trace_to_K(omega: Differential) -> Differential:
    """Tr_{K'/K} of a differential on a quadratic extension K' = K(w).

    dt is the same symbol on K and K', so the trace acts on the coefficient.
    """
    Q = omega.ring
    if not isinstance(Q, QuadExt):
        raise TypeError("trace_to_K needs a differential on a quadratic extension")
    return Differential(Q.K, omega.coeff.trace())
