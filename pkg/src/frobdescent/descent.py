"""The Frobenius descent map mu (pullback of holomorphic forms), its
projectivization gamma, and Frobenius-divisibility of points."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import MPoly, NotPthPower
from .curves import (CurveMorphism, FunctionField, Place, QuadExt,
                     expand_exact, verify_morphism)
from .differentials import HolomorphicBasis, holomorphic_basis, pullback_form


class GammaUndefined(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class MuValue:
    """(f_1, ..., f_g) standing for (f_1 dt, ..., f_g dt) in Omega_K^g."""
    K: FunctionField
    comps: tuple

    @property
    def genus(self) -> int:
        return len(self.comps)

    def __add__(self, o: "MuValue") -> "MuValue":
        return MuValue(self.K, tuple(a + b for a, b in zip(self.comps, o.comps)))

    def __neg__(self):
        return MuValue(self.K, tuple(-a for a in self.comps))

    def __sub__(self, o):
        return self + (-o)

    def scale(self, lam) -> "MuValue":
        return MuValue(self.K, tuple(a * lam for a in self.comps))

    def __eq__(self, o):
        return isinstance(o, MuValue) and self.K is o.K and self.comps == o.comps

    def __hash__(self):
        return hash(self.comps)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def __repr__(self):
        return "(" + ", ".join(repr(c) for c in self.comps) + ") dt"

    def serialize(self) -> str:
        lines = [f"# mu in Omega^{self.genus}, coefficients of dt, t = first affine coordinate of D"]
        lines += [c.serialize() for c in self.comps]
        return "\n".join(lines)


def zero_mu(K: FunctionField, g: int) -> MuValue:
    return MuValue(K, (K.zero(),) * g)


@dataclass(frozen=True, eq=False)
class ProjectiveMuClass:
    """[xi] in P^{g-1}(K), first nonzero coordinate scaled to 1."""
    coords: tuple

    @classmethod
    def of(cls, m: MuValue) -> "ProjectiveMuClass":
        lead = next((c for c in m.comps if not c.is_zero()), None)
        if lead is None:
            raise GammaUndefined("gamma undefined for xi = 0")
        inv = lead.inverse()
        return cls(tuple(c * inv for c in m.comps))

    def __eq__(self, o):
        return isinstance(o, ProjectiveMuClass) and self.coords == o.coords

    def __hash__(self):
        return hash(self.coords)

    @property
    def K(self) -> FunctionField:
        return self.coords[0].K

    def is_constant(self) -> bool:
        return all(c.is_const() for c in self.coords)

    def constant_point(self) -> tuple[int, ...] | None:
        if not self.is_constant():
            return None
        return tuple(c.const_value() if not c.is_zero() else 0 for c in self.coords)

    def at(self, place: Place) -> tuple[int, ...]:
        """gamma(v): the reduction of the class at a place, normalized."""
        from .curves import normalize
        L = place.residue_field
        series = [None if c.is_zero() else expand_exact(c, place) for c in self.coords]
        m = min(s.val for s in series if s is not None)
        coords = [0 if s is None else s.coeff(m) for s in series]
        return normalize(coords, L)

    def __repr__(self):
        return "(" + " : ".join(repr(c) for c in self.coords) + ")"

    def serialize(self) -> list[str]:
        return [c.serialize() for c in self.coords]


# ---------------------------------------------------------------------------
# points of the symmetric square


@dataclass(frozen=True, eq=False)
class SymSquarePoint:
    """A K-point of C^(2): a split pair of morphisms D -> C, or one morphism
    over a quadratic extension K(w) whose conjugate is the other branch."""
    kind: str
    branches: tuple
    name: str = ""

    @classmethod
    def split(cls, phi1: CurveMorphism, phi2: CurveMorphism, name: str = "") -> "SymSquarePoint":
        if isinstance(phi1.source, QuadExt) or isinstance(phi2.source, QuadExt):
            raise ValueError("split points have K-rational branches")
        if phi1.target != phi2.target:
            raise ValueError("branches map to different curves")
        return cls("split", (phi1, phi2), name)

    @classmethod
    def conjugate(cls, phi: CurveMorphism, name: str = "") -> "SymSquarePoint":
        if not isinstance(phi.source, QuadExt):
            raise ValueError("conjugate points need a morphism over a quadratic extension")
        if phi == conjugate_morphism(phi):
            raise ValueError("branch is invariant under the involution; store it as a split point")
        return cls("conjugate", (phi,), name)

    @property
    def target(self):
        return self.branches[0].target

    @property
    def K(self) -> FunctionField:
        src = self.branches[0].source
        return src.K if isinstance(src, QuadExt) else src

    def all_branches(self) -> list[CurveMorphism]:
        if self.kind == "split":
            return list(self.branches)
        return [self.branches[0], conjugate_morphism(self.branches[0])]

    def is_double(self) -> bool:
        return self.kind == "split" and self.branches[0] == self.branches[1]

    def is_constant(self) -> bool:
        return all(b.is_constant() for b in self.branches)

    def same_divisor(self, o: "SymSquarePoint") -> bool:
        if self.kind != o.kind:
            return False
        if self.kind == "split":
            a, b = self.branches
            c, d = o.branches
            return (a == c and b == d) or (a == d and b == c)
        if self.branches[0].source is not o.branches[0].source:
            return False
        return self.branches[0] == o.branches[0] or self.branches[0] == conjugate_morphism(o.branches[0])

    def divisor_key(self) -> tuple:
        """Hashable key shared exactly by points with the same divisor."""
        branches = self.all_branches()
        src = id(branches[0].source)
        return (self.kind, src, frozenset(_canonical_coords(b) for b in branches),
                self.is_double())

    def __repr__(self):
        return self.name or f"SymSquarePoint({self.kind})"


def _canonical_coords(phi: CurveMorphism) -> tuple:
    lead = next(c for c in phi.coords if not c.is_zero())
    inv = lead.inverse()
    return tuple(c * inv for c in phi.coords)


def conjugate_morphism(phi: CurveMorphism) -> CurveMorphism:
    return CurveMorphism(phi.source, phi.target, tuple(c.conjugate() for c in phi.coords))


# ---------------------------------------------------------------------------
# mu and gamma


def mu_point(phi: CurveMorphism, basis: HolomorphicBasis | None = None, check: bool = True) -> MuValue:
    """phi^*(omega_1, ..., omega_g) for a K-rational morphism D -> C."""
    if isinstance(phi.source, QuadExt):
        raise TypeError("mu_point takes K-rational morphisms; use mu_sym2 for conjugate points")
    if check and not verify_morphism(phi):
        raise ValueError("coordinates do not satisfy the target equation")
    basis = basis or holomorphic_basis(phi.target)
    return MuValue(phi.source, tuple(pullback_form(basis, i, phi).coeff for i in range(len(basis))))


def mu_sym2(P: SymSquarePoint, basis: HolomorphicBasis | None = None) -> MuValue:
    """mu of a degree-2 divisor: the sum over its two branches (a trace for conjugate pairs)."""
    basis = basis or holomorphic_basis(P.target)
    if P.kind == "split":
        return mu_point(P.branches[0], basis) + mu_point(P.branches[1], basis)
    phi = P.branches[0]
    if not verify_morphism(phi):
        raise ValueError("branch does not satisfy the target equation")
    return MuValue(P.K, tuple(pullback_form(basis, i, phi).coeff.trace() for i in range(len(basis))))


def gamma_of(m: MuValue) -> ProjectiveMuClass:
    return ProjectiveMuClass.of(m)


def gamma_image_in_curve(gamma: ProjectiveMuClass, forms: Sequence[MPoly]) -> bool:
    """True iff every defining form vanishes identically on gamma's coordinates."""
    K = gamma.K
    ev = dict(ring_one=K.one(), add=lambda a, b: a + b, mul=lambda a, b: a * b, const=K.const)
    return all(G.evaluate(list(gamma.coords), **ev).is_zero() for G in forms)


# ---------------------------------------------------------------------------
# Frobenius divisibility


def _coordinate_functions(phi: CurveMorphism) -> list:
    idx = 2 if not phi.coords[2].is_zero() else next(i for i, c in enumerate(phi.coords) if not c.is_zero())
    inv = phi.coords[idx].inverse()
    return [c * inv for i, c in enumerate(phi.coords) if i != idx]


def frobenius_divisibility_depth(P: SymSquarePoint | CurveMorphism, N: int = 4) -> int:
    """Largest n <= N with every affine coordinate function a p^n-th power."""
    if N > 8:
        raise ValueError("depth above the desk-scale cap 8")
    branches = P.branches if isinstance(P, SymSquarePoint) else (P,)
    funcs = [f for b in branches for f in _coordinate_functions(b)]
    depth = 0
    while depth < N:
        try:
            funcs = [f.pth_root() for f in funcs]
        except NotPthPower:
            break
        depth += 1
    return depth
