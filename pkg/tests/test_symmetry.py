import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from isotwist.algebra import Element, all_words, multiply, word_element
from isotwist.parsing import fixture_path, load_fixture_action, load_presentation, parse_symmetry
from isotwist.scalars import Scalar
from isotwist.symmetry import A2, CartanData, GeneratorAction, H, K, X, check_lie_relations, check_serre

from .strategies import homogeneous

C3_ = load_presentation(fixture_path("C3.alg")).source
SL3 = load_fixture_action()

# -- sympy oracle: sl3 as differential operators -----------------------------------

Z = sympy.symbols("z1 z2 z3")
W = sympy.symbols("w1 w2 w3")


def E(i, j):
    """``E_ij`` acting on z by ``z_i d/dz_j`` and on the dual w by ``-w_j d/dw_i``."""
    return lambda f: Z[i] * sympy.diff(f, Z[j]) - W[j] * sympy.diff(f, W[i])


ORACLE = {
    X(1, 1): E(0, 1), X(1, -1): E(1, 0),
    X(2, 1): E(1, 2), X(2, -1): E(2, 1),
}


def to_sympy(a: Element):
    syms = Z + W
    total = 0
    for w, s in a.terms.items():
        total += complex(s.at_one()).real * sympy.Mul(*[g ** e for g, e in zip(syms, w)])
    return sympy.expand(total)


def test_matrix_oracle_weights():
    """The fixture degrees are the (h1, h2) weights of the defining representation."""
    def e(i, j):
        m = np.zeros((3, 3), dtype=int)
        m[i, j] = 1
        return m

    h1 = e(0, 1) @ e(1, 0) - e(1, 0) @ e(0, 1)
    h2 = e(1, 2) @ e(2, 1) - e(2, 1) @ e(1, 2)
    for g, name in enumerate(("z1", "z2", "z3")):
        d = C3_.degrees[C3_.index(name)]
        assert (h1[g, g], h2[g, g]) == (d.n1, d.n2)
    # Cartan matrix from the root action: [h_i, e_j] = a_ij e_j
    for i, h in enumerate((h1, h2)):
        for j, x in enumerate((e(0, 1), e(1, 2))):
            comm = h @ x - x @ h
            assert (comm == A2.a(i + 1, j + 1) * x).all()


@pytest.mark.parametrize("sym", list(ORACLE))
def test_action_matches_differential_operators(sym):
    for w in all_words(C3_, 3):
        a = word_element(C3_, w)
        assert to_sympy(SL3.act((sym,), a)) == sympy.expand(ORACLE[sym](to_sympy(a)))


def test_examples(C3):
    z1, z2 = C3.gen("z1"), C3.gen("z2")
    assert SL3.act((X(1, 1),), z2) == z1
    assert SL3.act((X(1, 1),), z2 * z2) == (z1 * z2).scale(2)
    assert not SL3.act((H(1),), z1 * z2)


def test_lie_and_serre_pass():
    assert all(r.ok for r in check_lie_relations(SL3, 5))
    assert all(r.ok for r in check_serre(SL3, 5))


def test_broken_normalisation_detected(C3):
    z1, z2 = C3.gen("z1"), C3.gen("z2")
    bad = GeneratorAction(C3, A2, {(1, 1): {C3.index("z2"): z1.scale(2)}, (1, -1): {C3.index("z1"): z2}})
    failures = [r for r in check_lie_relations(bad, 3) if not r.ok]
    assert "lie.[X1+,X1-]" in [r.id for r in failures]
    report = next(r for r in failures if r.id == "lie.[X1+,X1-]")
    assert "z1" in report.counterexample


def test_wrong_degree_shift_rejected(C3):
    with pytest.raises(ValueError, match="degree-shift inconsistency"):
        GeneratorAction(C3, A2, {(2, 1): {C3.index("z3"): C3.gen("z1")}})


def test_unsigned_serre_fails():
    """Without the alternating sign the relation is not satisfied."""
    from isotwist.symmetry import _check_identity, serre_terms

    unsigned = [(Scalar.coerce(abs(c.at_one().re)), w) for c, w in serre_terms(A2, 1, 2, 1)]
    assert not _check_identity("x", unsigned, [], all_words(C3_, 3), SL3).ok


def test_torus_has_only_cartan(T2):
    torus = parse_symmetry("torus\n").bind(T2)
    assert torus.symbols() == [H(1), H(2)]
    assert all(r.ok for r in check_lie_relations(torus, 3))
    assert check_serre(torus, 3) == []
    with pytest.raises(KeyError):
        torus.act((X(1, 1),), T2.gen("u"))


def test_cartan_validation():
    with pytest.raises(ValueError):
        CartanData(((2, 1), (-1, 2)))
    with pytest.raises(ValueError):
        CartanData(((2, 0), (-1, 2)))
    with pytest.raises(ValueError):
        CartanData(((2, -1), (-1, 2)), pick=(1, 1))


def test_cartan_exponential_acts_by_weight(C3):
    z1 = C3.gen("z1")
    assert SL3.act((K(1, 3),), z1) == z1.scale(Scalar.monomial(3))


@given(homogeneous(C3_, 3), homogeneous(C3_, 3), st.sampled_from([H(1), H(2)] + SL3.x_symbols()))
def test_generators_are_derivations(a, b, s):
    lhs = SL3.act((s,), multiply(a, b))
    assert lhs == multiply(SL3.act((s,), a), b) + multiply(a, SL3.act((s,), b))


@given(homogeneous(C3_, 3), st.lists(st.sampled_from(SL3.symbols()), max_size=3),
       st.lists(st.sampled_from(SL3.symbols()), max_size=3))
def test_words_compose(a, w1, w2):
    assert SL3.act(tuple(w1) + tuple(w2), a) == SL3.act(w1, SL3.act(w2, a))
