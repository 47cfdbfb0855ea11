"""The Fermat quartic x^4 + y^4 = 1 over D: x^4 + z^2 = 1 and its fiber points."""
from __future__ import annotations

from dataclasses import dataclass

from .curves import (CurveMorphism, FunctionField, PlaneCurve, QuadExt, curve_from_terms,
                     function_field, quadratic_extension)
from .descent import SymSquarePoint


class HypothesisError(ValueError):
    """A construction was asked for outside its stated hypotheses."""


def fermat_quartic(p: int) -> PlaneCurve:
    return curve_from_terms(p, {(4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): -1}, True, "x^4 + y^4 = 1")


def quartic_base(p: int) -> PlaneCurve:
    """x^4 + z^2 = 1; singular at its point at infinity."""
    return curve_from_terms(p, {(4, 0, 0): 1, (0, 2, 2): 1, (0, 0, 4): -1}, False, "x^4 + z^2 = 1")


@dataclass(frozen=True, eq=False)
class QuarticExample:
    p: int
    C: PlaneCurve
    D: PlaneCurve
    K: FunctionField
    cover: QuadExt          # K(w), w^2 = z
    twin_cover: QuadExt     # K(w'), w'^2 = -z
    P_f: SymSquarePoint     # fiber of (x, y) -> (x, y^2) over (x, z)
    P_g: SymSquarePoint     # the same fiber over (-x, z)
    P_g_twin: SymSquarePoint  # fiber over (-x, -z)
    P_h: SymSquarePoint     # fiber of (x, y) -> (y, x^2) over (x, z)


def example_quartic(p: int = 5) -> QuarticExample:
    if p == 2:
        raise HypothesisError("the construction assumes odd characteristic (p = 2 refused)")
    if p not in (3, 5, 7, 11, 13):
        raise ValueError("p must be an odd prime at most 13")
    C, D = fermat_quartic(p), quartic_base(p)
    K = function_field(D)
    x, z = K.x, K.y
    Q = quadratic_extension(K, z)
    Q2 = quadratic_extension(K, -z)
    P_f = SymSquarePoint.conjugate(CurveMorphism.affine(Q, C, Q.lift(x), Q.w), "P_f")
    P_g = SymSquarePoint.conjugate(CurveMorphism.affine(Q, C, Q.lift(-x), Q.w), "P_g")
    P_t = SymSquarePoint.conjugate(CurveMorphism.affine(Q2, C, Q2.lift(-x), Q2.w), "P_g'")
    P_h = SymSquarePoint.conjugate(CurveMorphism.affine(Q, C, Q.w, Q.lift(x)), "P_h")
    return QuarticExample(p, C, D, K, Q, Q2, P_f, P_g, P_t, P_h)
