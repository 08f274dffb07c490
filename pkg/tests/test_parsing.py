import pytest
from hypothesis import given

from isotwist.algebra import multiply, quantize_presentation
from isotwist.parsing import (
    ParseError, fixture_path, load_presentation, parse_expression, parse_presentation, parse_symmetry,
    render_element, render_presentation,
)
from isotwist.scalars import Gaussian, L, Scalar
from isotwist.symmetry import X

from .strategies import elements

T2_ = load_presentation(fixture_path("T2.alg")).source
C3_ = load_presentation(fixture_path("C3.alg")).source
Q3 = quantize_presentation(C3_)


def test_expression_examples(T2, C3):
    u, v = T2.gen("u"), T2.gen("v")
    assert parse_expression("L * u v^2", T2) == (u * v * v).scale(L)
    q = quantize_presentation(T2)
    assert not parse_expression("u*v - L v*u", q)
    assert parse_expression("(1+i)/2 * z1", C3) == C3.gen("z1").scale(Scalar({0: Gaussian(0.5, 0.5)}))


def test_precedence(T2):
    u, v = T2.gen("u"), T2.gen("v")
    assert parse_expression("-u^2 v", T2) == -(u * u * v)
    assert parse_expression("u - -v", T2) == u + v
    assert parse_expression("L^-2 u", T2) == u.scale(Scalar.monomial(-2))
    assert parse_expression("2 (u + v)", T2) == (u + v).scale(2)


@pytest.mark.parametrize("text,col,msg", [
    ("u + q", 5, "unknown generator"),
    ("u + ", 5, "unexpected end"),
    ("(u", 3, r"expected '\)'"),
    ("u / v", 3, "non-scalar"),
    ("u ^ x", 5, "integer exponent"),
    ("u $ v", 3, "unexpected character"),
    ("u^-1", 1, "negative powers"),
])
def test_expression_errors(T2, text, col, msg):
    with pytest.raises(ParseError, match=msg) as e:
        parse_expression(text, T2)
    assert (e.value.line, e.value.col) == (1, col)


def test_presentation_roundtrip():
    for name in ("T2.alg", "C3.alg"):
        pf = load_presentation(fixture_path(name))
        assert parse_presentation(render_presentation(pf)) == pf
    text = "algebra S\ngenerator a degree 1 0\ngenerator b degree 0 2\ncommute a b -3\ndeformed\n"
    pf = parse_presentation(text)
    assert pf.deformed and pf.presentation.source == pf.source
    assert pf.presentation.commutation[0][1] == -3 + 2
    assert parse_presentation(render_presentation(pf)) == pf


def test_presentation_errors():
    bad = "algebra B\ngenerator u degree 1 0\ngenerator v degree 0 1\ncommute u v 1\ncommute v u 1\n"
    with pytest.raises(ParseError) as e:
        parse_presentation(bad)
    assert e.value.line == 5
    with pytest.raises(ParseError, match="unknown directive"):
        parse_presentation("algebra A\ngenrator u degree 1 0\n")
    with pytest.raises(ParseError, match="negated degree"):
        parse_presentation("algebra A\ngenerator u degree 1 0 star v\ngenerator v degree 1 0\n")
    with pytest.raises(ParseError, match="expected integer"):
        parse_presentation("algebra A\ngenerator u degree one 0\n")


def test_symmetry_file(C3):
    sym = parse_symmetry(fixture_path("A2.sym").read_text())
    action = sym.bind(C3)
    assert action.act((X(1, 1),), C3.gen("w1")) == -C3.gen("w2")
    with pytest.raises(ParseError, match="degree-shift"):
        parse_symmetry("cartan 2\n2 -1\n-1 2\nx2+ : z3 -> z1\n").bind(C3)
    with pytest.raises(ParseError, match="unknown generator") as e:
        parse_symmetry("cartan 2\n2 -1\n-1 2\nx1+ : z2 -> y1\n").bind(C3)
    assert (e.value.line, e.value.col) == (4, 13)
    with pytest.raises(ParseError, match="Cartan row"):
        parse_symmetry("cartan 2\n2 -1 0\n-1 2\n")


@given(elements(C3_, 3))
def test_render_parse_roundtrip(a):
    assert parse_expression(render_element(a), C3_) == a


@given(elements(Q3, 3))
def test_render_parse_roundtrip_deformed(a):
    assert parse_expression(render_element(a), Q3) == a


@given(elements(T2_), elements(T2_))
def test_parsed_product_matches_kernel(a, b):
    text = f"({render_element(a)}) * ({render_element(b)})"
    assert parse_expression(text, T2_) == multiply(a, b)
