from hypothesis import given
from hypothesis import strategies as st

from isotwist.algebra import quantize_presentation
from isotwist.calculus import (
    FormAction, FormElement, check_calculus, dequantize_form, exterior_d, quantize_form, random_form, wedge,
    wedge_deformed,
)
from isotwist.parsing import fixture_path, load_fixture_action, load_presentation
from isotwist.rng import SplitMix64
from isotwist.scalars import L, ONE
from isotwist.symmetry import H, X

from .strategies import seeds

T2_ = load_presentation(fixture_path("T2.alg")).source
SL3 = load_fixture_action()
C3_ = SL3.presentation
FA = FormAction(SL3)


def forms(p, max_length=3, terms=1):
    return seeds.map(lambda s: random_form(SplitMix64(s), p, max_length, 3, terms))


def gen(p, name):
    return FormElement.from_element(p.gen(name))


def d(p, name):
    return FormElement.d_generator(p, name)


def test_d_examples(T2):
    u, v = gen(T2, "u"), gen(T2, "v")
    assert exterior_d(u) == d(T2, "u")
    assert exterior_d(wedge(u, v)) == wedge(d(T2, "u"), v) + wedge(u, d(T2, "v"))
    assert not exterior_d(exterior_d(wedge(u, v)))


def test_relations(T2):
    q = quantize_presentation(T2)
    du, dv, v = d(q, "u"), d(q, "v"), gen(q, "v")
    assert wedge(du, dv) == wedge(dv, du).scale(-L)
    assert not wedge(du, du)
    assert wedge(du, v) == wedge(v, du).scale(L)


def test_wedge_deformed_examples(T2):
    du, dv = d(T2, "u"), d(T2, "v")
    assert wedge_deformed(du, dv) == quantize_form(wedge(du, dv)).scale(L)
    one = FormElement.from_element(T2.one())
    assert wedge_deformed(one, dv) == quantize_form(dv)
    assert not wedge_deformed(du, du)


def test_action_examples(C3, T2):
    assert FA.act(X(1, 1), d(C3, "z2")) == d(C3, "z1")
    torus = load_fixture_action("T2.sym", "T2.alg")
    assert FormAction(torus).act(H(1), d(T2, "u")) == d(T2, "u")
    uz2 = quantize_form(gen(C3, "z2"))
    assert FA.act_twisted(X(1, 1), exterior_d(uz2)) == exterior_d(FA.act_twisted(X(1, 1), uz2))


def test_rendering(T2):
    assert str(wedge(d(T2, "u"), d(T2, "v"))) == "du^dv"
    assert str(exterior_d(wedge(gen(T2, "u"), gen(T2, "v")))) == "v*du + u*dv"


def test_full_check_passes():
    results = check_calculus(SL3, trials=30, max_degree=2)
    assert all(r.ok for r in results), [(r.id, r.counterexample) for r in results if not r.ok]


@given(forms(C3_, terms=3))
def test_d_squared_zero(w):
    assert not exterior_d(exterior_d(w))
    assert not exterior_d(exterior_d(quantize_form(w)))


@given(forms(C3_), forms(C3_))
def test_deformed_graded_leibniz(w, r):
    uw, ur = quantize_form(w), quantize_form(r)
    sign = -1 if next(iter(w.form_degrees()), 0) % 2 else 1
    assert exterior_d(wedge(uw, ur)) == wedge(exterior_d(uw), ur) + wedge(uw, exterior_d(ur)).scale(sign)


@given(forms(C3_, 2), forms(C3_, 2), forms(C3_, 2))
def test_deformed_wedge_associative(a, b, c):
    a, b, c = quantize_form(a), quantize_form(b), quantize_form(c)
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@given(forms(C3_), forms(C3_))
def test_intrinsic_wedge_is_twisted_wedge(w, r):
    assert wedge(quantize_form(w), quantize_form(r)) == wedge_deformed(w, r)


@given(forms(C3_), st.sampled_from(SL3.symbols()))
def test_equivariance(w, s):
    assert FA.act(s, exterior_d(w)) == exterior_d(FA.act(s, w))


@given(forms(C3_, terms=2))
def test_form_quantization_roundtrip(w):
    assert dequantize_form(quantize_form(w)) == w
