import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from isotwist.algebra import DegreeVector, involution, multiply, quantize, star_involution, star_product
from isotwist.parsing import fixture_path, load_fixture_action, load_presentation
from isotwist.scalars import ONE, DegreeForm, L, degree_variables, form_identity_check, lam
from isotwist.symmetry import H, K, X
from isotwist.twist import (
    CARTAN_TWIST, R_MATRIX, SLOT_VARS, CoproductExpr, Tensor, TwistedSymmetry, TwistOperator,
    check_antipode_axiom, check_antipode_u, check_coassociativity, check_cocycle, check_coproduct_conjugation,
    check_counit, check_module_algebra, check_module_algebra_negative, check_star_compat, cocycle_forms,
    generator_level_identity, module_algebra_pair, psi_apply, r_matrix_checks, u_exponent,
)

from .strategies import homogeneous

C3_ = load_presentation(fixture_path("C3.alg")).source
HOPF = TwistedSymmetry(load_fixture_action())


# -- the twist ---------------------------------------------------------------------


def test_psi_examples(T2):
    u, v = T2.gen("u"), T2.gen("v")
    assert psi_apply("psi_inv", u, v) == Tensor.of(u, v).scale(L)
    assert psi_apply("psi", T2.one(), v) == Tensor.of(T2.one(), v)
    t = psi_apply("psi", u * v, v)
    assert CARTAN_TWIST.inverse().apply(t) == Tensor.of(u * v, v)


def test_cocycle_cartan():
    assert check_cocycle()
    lhs, rhs = cocycle_forms()
    p1, p2, q1, q2, r1, r2 = degree_variables(lhs.variables)
    assert lhs == rhs == -p1 * q2 - p1 * r2 - q1 * r2


def sympy_cocycle(phi):
    """Independent oracle: expand both sides of the cocycle condition in sympy."""
    p1, p2, q1, q2, r1, r2 = sympy.symbols("p1 p2 q1 q2 r1 r2")
    f = sympy.Lambda((sympy.Symbol("a1"), sympy.Symbol("a2"), sympy.Symbol("b1"), sympy.Symbol("b2")), phi)
    lhs = f(p1, p2, q1, q2) + f(p1 + q1, p2 + q2, r1, r2)
    rhs = f(q1, q2, r1, r2) + f(p1, p2, q1 + r1, q2 + r2)
    counit = sympy.expand(f(0, 0, q1, q2)) == 0 and sympy.expand(f(p1, p2, 0, 0)) == 0
    return sympy.expand(lhs - rhs) == 0 and counit


def as_form(expr_fn):
    p1, p2, q1, q2 = degree_variables(SLOT_VARS)
    return DegreeForm(SLOT_VARS) + expr_fn(p1, p2, q1, q2)


CANDIDATES = [
    lambda a1, a2, b1, b2: -a1 * b2,
    lambda a1, a2, b1, b2: 0 * a1,
    lambda a1, a2, b1, b2: -a1 * b1,
    lambda a1, a2, b1, b2: a2 * b1 - 3 * a1 * b2,
    lambda a1, a2, b1, b2: a1 * a2 * b2,
    lambda a1, a2, b1, b2: a1 * b1 * b1,
    lambda a1, a2, b1, b2: a1 * b2 + 1,
]


@pytest.mark.parametrize("phi", CANDIDATES)
def test_cocycle_agrees_with_sympy(phi):
    a1, a2, b1, b2 = sympy.symbols("a1 a2 b1 b2")
    assert check_cocycle(as_form(phi)) == sympy_cocycle(phi(a1, a2, b1, b2))


def test_every_bilinear_exponent_is_a_cocycle():
    p1, p2, q1, q2 = degree_variables(SLOT_VARS)
    assert check_cocycle(-p1 * q1)
    assert check_cocycle(DegreeForm(SLOT_VARS))
    assert not check_cocycle(p1 * p2 * q2)
    assert not check_cocycle(DegreeForm.constant(SLOT_VARS, 1))


def test_unitarity_forms():
    assert form_identity_check(CARTAN_TWIST.star().exponent, CARTAN_TWIST.inverse().exponent)
    p1, p2, _, _ = degree_variables(SLOT_VARS)
    assert u_exponent() == p1 * p2


def test_generator_level_exponents():
    assert generator_level_identity()


# -- Hopf structure --------------------------------------------------------------------


def test_coproduct_closed_form():
    got = HOPF.coproduct(X(1, 1))
    assert got == CoproductExpr(2, [(ONE, ((X(1, 1),), (K(2, -2),))), (ONE, ((K(1, 1),), (X(1, 1),)))])
    assert HOPF.coproduct(H(2)) == CoproductExpr(2, [(ONE, ((H(2),), ())), (ONE, ((), (H(2),)))])


def test_coproduct_classical_limit():
    """Dropping the Cartan exponentials (L = 1) leaves the primitive coproduct."""
    for s in HOPF.symbols():
        stripped = CoproductExpr(2, [(c, tuple(tuple(x for x in w if not isinstance(x, K)) for w in ws))
                                     for c, ws in HOPF.coproduct(s).terms])
        assert stripped == HOPF.classical_coproduct(s)


def test_antipode_examples():
    assert HOPF.antipode(X(1, 1)) == CoproductExpr(1, [(-ONE, ((K(1, -1), X(1, 1), K(2, 2)),))])
    assert HOPF.antipode(H(1)) == CoproductExpr(1, [(-ONE, ((H(1),),))])


def test_u_on_degree_one_one(T2):
    a = T2.gen("u") * T2.gen("v")
    th = TwistedSymmetry(load_fixture_action("T2.sym", "T2.alg"))
    assert th.act_u(a, -1) == a.scale(lam(-1))
    assert quantize(involution(th.act_u(a, -1))) == star_involution(quantize(a))


def test_act_twisted_examples(C3):
    z1, z2 = C3.gen("z1"), C3.gen("z2")
    assert HOPF.act((X(1, 1),), quantize(z2)) == quantize(z1)
    assert not HOPF.act((H(1),), quantize(z1 * z2))
    lhs, rhs = module_algebra_pair(HOPF, X(1, 1), z2, z2)
    assert lhs == rhs == HOPF.act((X(1, 1),), star_product(z2, z2))


def test_module_algebra_examples(C3):
    z2, z3 = C3.gen("z2"), C3.gen("z3")
    lhs, rhs = module_algebra_pair(HOPF, X(1, 1), z2, z3)
    assert lhs == rhs
    for s in HOPF.symbols():
        lhs, rhs = module_algebra_pair(HOPF, s, z2 * z3, C3.one())
        assert lhs == rhs == HOPF.act((s,), quantize(z2 * z3))


def test_untwisted_coproduct_fails_on_deformed_product(C3):
    z1, z2 = C3.gen("z1"), C3.gen("z2")
    lhs, rhs = module_algebra_pair(HOPF, X(1, 1), z2, z2, HOPF.classical_coproduct(X(1, 1)))
    assert lhs != rhs
    assert all(r.ok for r in check_module_algebra_negative(HOPF, trials=200))


def test_mutated_coproduct_is_caught():
    """Flipping the sign of one Cartan exponential breaks the module-algebra identity."""
    class Mutant(TwistedSymmetry):
        def coproduct(self, s):
            d = super().coproduct(s)
            if isinstance(s, X):
                return CoproductExpr(2, [(c, tuple(tuple(K(x.i, -x.c) if isinstance(x, K) else x for x in w)
                                                    for w in ws)) for c, ws in d.terms])
            return d

    mutant = Mutant(HOPF.action)
    assert not all(r.ok for r in check_module_algebra(mutant, trials=100))
    assert not all(r.ok for r in check_coproduct_conjugation(mutant, trials=50))


def test_mutated_antipode_is_caught():
    class Mutant(TwistedSymmetry):
        def antipode(self, s):
            return self.classical_antipode(s)

    mutant = Mutant(HOPF.action)
    assert not all(r.ok for r in check_antipode_axiom(mutant, trials=50))
    assert not all(r.ok for r in check_antipode_u(mutant, trials=50))


@pytest.mark.parametrize("check", [
    check_coproduct_conjugation, check_coassociativity, check_counit, check_antipode_axiom, check_antipode_u,
])
def test_hopf_axioms(check):
    results = check(HOPF, trials=30, max_degree=4, seed=7)
    assert results and all(r.ok for r in results), [r.id for r in results if not r.ok]


def test_star_compat():
    results = check_star_compat(HOPF, trials=40)
    assert all(r.ok for r in results), [r.id for r in results if not r.ok]


def test_star_compat_example(C3):
    a = quantize(C3.gen("z2") * C3.gen("z3"))
    op = HOPF.star_expr(HOPF.antipode_word((X(1, 1),)))
    assert HOPF.act((X(1, 1),), star_involution(a)) == star_involution(op.act_one(a, HOPF.act))


# -- R-matrix ----------------------------------------------------------------------------


def test_r_matrix_checks():
    results = r_matrix_checks(HOPF, trials=30)
    assert all(r.ok for r in results), [r.id for r in results if not r.ok]


def test_r_matrix_is_twist_quotient():
    p1, p2, q1, q2 = degree_variables(SLOT_VARS)
    assert R_MATRIX.exponent == p2 * q1 - p1 * q2
    assert form_identity_check(R_MATRIX.flipped().exponent, R_MATRIX.inverse().exponent)


def test_r_matrix_opposite_convention_fails(C3):
    """``R D = D^op R`` does not hold for this R (it holds for R_21)."""
    z2, z3 = quantize(C3.gen("z2")), quantize(C3.gen("z3"))
    d = HOPF.coproduct(X(1, 1))
    t = Tensor.of(z2, z3)
    lhs = R_MATRIX.apply(d.act(t, HOPF.act))
    rhs = d.flip().act(R_MATRIX.apply(t), HOPF.act)
    assert lhs != rhs
    r21 = R_MATRIX.flipped()
    assert r21.apply(d.act(t, HOPF.act)) == d.flip().act(r21.apply(t), HOPF.act)


def test_h1_intertwines_trivially(C3):
    z2, z3 = quantize(C3.gen("z2")), quantize(C3.gen("z3"))
    d = HOPF.coproduct(H(1))
    t = Tensor.of(z2, z3)
    assert R_MATRIX.apply(d.flip().act(t, HOPF.act)) == d.act(R_MATRIX.apply(t), HOPF.act)


# -- properties ----------------------------------------------------------------------------


@given(homogeneous(C3_, 4), homogeneous(C3_, 4), st.sampled_from(HOPF.symbols()))
def test_module_algebra_property(a, b, s):
    lhs, rhs = module_algebra_pair(HOPF, s, a, b)
    assert lhs == rhs


@given(homogeneous(C3_, 3), homogeneous(C3_, 3))
def test_psi_inverse(a, b):
    t = Tensor.of(a, b)
    assert CARTAN_TWIST.apply(CARTAN_TWIST.inverse().apply(t)) == t


@given(homogeneous(C3_, 4), st.sampled_from(HOPF.symbols()))
def test_twisted_action_star_compat(a, s):
    x = quantize(a)
    op = HOPF.star_expr(HOPF.antipode_word((s,)))
    assert HOPF.act((s,), star_involution(x)) == star_involution(op.act_one(x, HOPF.act))
