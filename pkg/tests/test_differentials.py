from frobdescent.algebra import MPoly
from frobdescent.curves import CurveMorphism, QuadExt, curve_from_terms, function_field, points_over
from frobdescent.differentials import (differentiate, holomorphic_basis, pullback, pullback_form,
                                       trace_to_K)
from frobdescent.quartic import quartic_base


def test_quartic_basis_is_dx_over_y3_family(quartic5):
    B = holomorphic_basis(quartic5)
    K = function_field(quartic5)
    x, y = K.x, K.y
    dx = x.deriv()
    want = [dx / y ** 3, x * dx / y ** 3, dx / y ** 2]
    got = [w.coeff for w in B.differentials()]
    assert got == want
    assert B.labels() == ["1 dx / (y^3)", "x dx / (y^3)", "y dx / (y^3)"]


def test_cubic_and_conic_bases():
    cubic = curve_from_terms(5, {(0, 2, 1): 1, (3, 0, 0): -1, (1, 0, 2): 1})
    B = holomorphic_basis(cubic)
    assert len(B) == 1
    K = function_field(cubic)
    assert B.differentials()[0].coeff == K.x.deriv() / K.y  # proportional to dx / 2y
    conic = curve_from_terms(5, {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): -1})
    assert len(holomorphic_basis(conic)) == 0


def test_differentiate_examples():
    K = function_field(quartic_base(5))
    assert differentiate(K.t).coeff == K.one()
    assert differentiate(K.const(2)).is_zero()
    assert differentiate(K.s).coeff == -(K.t ** 3) * K.const(2) / K.s


def test_pullback_constant_and_frobenius(quartic5):
    K = function_field(quartic5)
    B = holomorphic_basis(quartic5)
    const = CurveMorphism.constant(K, points_over(quartic5, 1)[0])
    frob = CurveMorphism.affine(K, quartic5, K.x ** 5, K.y ** 5)
    for i in range(3):
        assert pullback_form(B, i, const).is_zero()
        assert pullback_form(B, i, frob).is_zero()


def test_pullback_fiber_branch_gives_dx_over_z(ex5):
    B = holomorphic_basis(ex5.C)
    phi = ex5.P_f.branches[0]
    w3 = pullback_form(B, 2, phi)
    K = ex5.K
    assert w3.coeff == ex5.cover.lift(K.one() / K.y)   # dx/y^2 -> dx/z on one branch
    assert trace_to_K(w3).coeff == K.const(2) / K.y
    # dx/y^3 is anti-invariant, so its trace vanishes
    assert trace_to_K(pullback_form(B, 0, phi)).is_zero()


def test_general_pullback_agrees_with_form_pullback(quartic5):
    """pullback() goes through the function-field element, pullback_form through x, y."""
    K = function_field(quartic5)
    B = holomorphic_basis(quartic5)
    swap = CurveMorphism.affine(K, quartic5, K.y * K.const(2), K.x)
    for i, w in enumerate(B.differentials()):
        assert pullback(w, swap) == pullback_form(B, i, swap)


def test_pullback_functorial_under_composition(ex5):
    """(phi o sigma)^* = sigma^* phi^* for the automorphism sigma(x, z) = (-x, z) of D."""
    K = ex5.K
    Q = ex5.cover
    B = holomorphic_basis(ex5.C)
    # phi o sigma is the branch of P_g; sigma^* acts on K by x -> -x
    phi_sigma = ex5.P_g.branches[0]
    direct = [pullback_form(B, i, phi_sigma).coeff for i in range(3)]
    phi = ex5.P_f.branches[0]
    via = []
    for i in range(3):
        c = pullback_form(B, i, phi).coeff
        # substitute x -> -x in both K-parts; dt picks up the factor -1
        sub = lambda f: _neg_t(f)
        via.append(type(c)(Q, sub(c.a), sub(c.b)) * Q.const(-1))
    assert direct == via


def _neg_t(f):
    K = f.K
    num = f.numerator
    den = f.denominator
    flip = MPoly(K.F, 2, {(i, j): (c if i % 2 == 0 else K.F.neg(c)) for (i, j), c in num.terms.items()})
    top = flip.evaluate([K.t, K.s], ring_one=K.one(), add=lambda a, b: a + b,
                        mul=lambda a, b: a * b, const=K.const)
    bot = K.zero()
    for i, c in enumerate(den.c):
        if c:
            bot = bot + K.t ** i * K.const(c if i % 2 == 0 else K.F.neg(c))
    return top / bot


def test_trace_of_invariant_form(ex5):
    Q = ex5.cover
    K = ex5.K
    from frobdescent.differentials import Differential
    w = Differential(Q, Q.lift(K.t))
    assert trace_to_K(w).coeff == K.t * 2
    anti = Differential(Q, Q.lift(K.t) * Q.w)
    assert trace_to_K(anti).is_zero()


def test_qext_derivative_of_w(ex5):
    Q: QuadExt = ex5.cover
    w = Q.w
    # w^2 = z, so 2 w w' = z'
    assert (w * w.deriv() * 2) == Q.lift(ex5.K.y.deriv())
