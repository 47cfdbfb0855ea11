"""Brute-force references used to check the library.

Nothing here touches the series or evaluation-matrix code.  Field arithmetic
and point lists come from the package, everything else is recomputed
directly.
"""
from __future__ import annotations

import itertools
from math import lcm

from frobdescent.algebra import field


def _pmul(G, a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = G.add(out[i + j], G.mul(x, y))
    return out


def _padd(G, a, b):
    n = max(len(a), len(b))
    a, b = a + [0] * (n - len(a)), b + [0] * (n - len(b))
    return [G.add(x, y) for x, y in zip(a, b)]


def restrict_to_line(form_terms: dict, P, B, G) -> list[int]:
    """Coefficients in lam of F(P + lam*B)."""
    lin = [[P[i], B[i]] for i in range(3)]
    acc = [0]
    for (i, j, l), c in form_terms.items():
        term = [c]
        for lv, e in zip(lin, (i, j, l)):
            for _ in range(e):
                term = _pmul(G, term, lv)
        acc = _padd(G, acc, term)
    return acc


def line_multiplicity(form_terms: dict, line, P, G, F) -> int:
    """Intersection multiplicity of the F_p-line a.X = 0 with the curve at P (over G)."""
    emb = F.embedding(G)
    a = [emb(v) for v in line]
    if any(G.add(G.add(G.mul(a[0], P[0]), G.mul(a[1], P[1])), G.mul(a[2], P[2])) for _ in [0]):
        return 0
    # a second point of the line over F_p, not proportional to P
    for B in itertools.product(range(F.q), repeat=3):
        if not any(B):
            continue
        if sum(v * w for v, w in zip(line, B)) % F.p:
            continue
        Bg = [emb(v) for v in B]
        # not proportional to P
        cross = [G.sub(G.mul(P[i], Bg[j]), G.mul(P[j], Bg[i])) for i in range(3) for j in range(i + 1, 3)]
        if any(cross):
            break
    f = restrict_to_line(form_terms, list(P), Bg, G)
    for k, c in enumerate(f):
        if c:
            return k
    return 10 ** 6  # the line is a component


def orbit_points(place):
    """Geometric points of a place as raw coordinate tuples with their field."""
    P = place.point
    L = P.L
    return [tuple(L.frob(a, i) for a in P.coords) for i in range(place.degree)], L


def vanishing_form_count(C, D) -> int:
    """Number of nonzero linear forms (as vectors over F_p) whose line meets C
    in a divisor containing D."""
    F = C.F
    terms = dict(C.form.terms)
    M = lcm(*(pl.degree for pl, _ in D.terms)) if D.terms else 1
    G = field(F.p, M)
    need = []
    for pl, e in D.terms:
        pts, L = orbit_points(pl)
        emb = L.embedding(G)
        for P in pts:
            need.append(([emb(a) for a in P], e))
    count = 0
    for line in itertools.product(range(F.q), repeat=3):
        if not any(line):
            continue
        if all(line_multiplicity(terms, line, P, G, F) >= e for P, e in need):
            count += 1
    return count


def rr_dim_oracle(C, D) -> int:
    """l(D) on a smooth plane quartic via l(D) = deg D - 2 + dim{lines containing D}."""
    N = vanishing_form_count(C, D)
    q = C.F.q
    dim = 0
    while q ** dim - 1 < N:
        dim += 1
    assert q ** dim - 1 == N, "the vanishing forms do not form a subspace"
    return D.degree - 2 + dim


def cut_by_line(C, D) -> bool:
    """True iff a single line meets C in exactly D (degree 4, full multiplicity)."""
    return vanishing_form_count(C, D) > 0 and D.degree == 4


def brute_points(forms, F, n):
    """All points of P^{n-1}(F) on which every form vanishes."""
    out = []
    for v in itertools.product(range(F.q), repeat=n):
        if not any(v):
            continue
        lead = next(x for x in v if x)
        if lead != 1:
            continue
        ok = True
        for G_ in forms:
            acc = 0
            for e, c in G_.terms.items():
                t = c
                for x, k in zip(v, e):
                    t = F.mul(t, F.pow(x, k))
                acc = F.add(acc, t)
            if acc:
                ok = False
                break
        if ok:
            out.append(v)
    return out
