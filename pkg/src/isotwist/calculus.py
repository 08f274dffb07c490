"""Differential forms over an L-commutation presentation.

Omega(A) is generated by the ``g_i`` (even) and ``dg_i`` (odd) with

    dg_i g_j = L^{c_ij} g_j dg_i,    dg_i dg_j = -L^{c_ij} dg_j dg_i,    dg_i dg_i = 0.

A basis form is ``w dg_{s_1} .. dg_{s_k}`` with ``w`` a normal-ordered word and
``s_1 < .. < s_k``; it is keyed by ``(w, (s_1, .., s_k))``.  ``dg_i`` carries
the bidegree of ``g_i``.  The same code serves the undeformed and the
quantized presentation; on the latter the product is the deformed wedge.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .algebra import DegreeVector, Element, GradedPresentation, quantize_presentation, word_element
from .report import CheckResult, result
from .rng import SplitMix64, random_scalar, random_word
from .scalars import ONE, Scalar, lam
from .symmetry import GeneratorAction, H, K, X

Key = tuple  # (word, dgs)


class FormElement:
    __slots__ = ("presentation", "terms")

    def __init__(self, presentation: GradedPresentation, terms=None):
        self.presentation = presentation
        clean = {}
        for (w, s), v in (terms or {}).items():
            v = Scalar.coerce(v)
            if v:
                s = tuple(s)
                if list(s) != sorted(set(s)):
                    raise ValueError("dg indices must be strictly increasing")
                clean[(tuple(w), s)] = v
        self.terms = clean

    @classmethod
    def _raw(cls, p, terms):
        f = cls.__new__(cls)
        f.presentation, f.terms = p, terms
        return f

    @classmethod
    def from_element(cls, a: Element) -> "FormElement":
        return cls._raw(a.presentation, {(w, ()): s for w, s in a.terms.items()})

    @classmethod
    def d_generator(cls, p: GradedPresentation, g: int | str) -> "FormElement":
        i = p.index(g) if isinstance(g, str) else g
        return cls._raw(p, {(p.unit_word(), (i,)): ONE})

    @classmethod
    def basis(cls, p: GradedPresentation, word, dgs=(), coeff=ONE) -> "FormElement":
        return cls(p, {(tuple(word), tuple(dgs)): coeff})

    def zero(self) -> "FormElement":
        return FormElement._raw(self.presentation, {})

    def _check(self, other: "FormElement"):
        if other.presentation != self.presentation:
            raise ValueError("forms over different presentations")

    def __add__(self, other: "FormElement") -> "FormElement":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            if k in out:
                t = out[k] + v
                if t:
                    out[k] = t
                else:
                    del out[k]
            else:
                out[k] = v
        return FormElement._raw(self.presentation, out)

    def __neg__(self):
        return FormElement._raw(self.presentation, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "FormElement":
        s = Scalar.coerce(s)
        return FormElement(self.presentation, {k: v * s for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, FormElement):
            return wedge(self, other)
        return self.scale(other)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, FormElement):
            return NotImplemented
        return self.presentation == other.presentation and self.terms == other.terms

    __hash__ = None

    def key_degree(self, key: Key) -> DegreeVector:
        p = self.presentation
        d = p.word_degree(key[0])
        for s in key[1]:
            d = d + p.degrees[s]
        return d

    def form_degrees(self) -> set[int]:
        return {len(s) for _, s in self.terms}

    def homogeneous_parts(self) -> dict:
        """Split by (bidegree, form degree)."""
        parts: dict = {}
        for k, v in self.terms.items():
            parts.setdefault((self.key_degree(k), len(k[1])), {})[k] = v
        return {d: FormElement._raw(self.presentation, t) for d, t in parts.items()}

    def map_keys(self, fn: Callable[[Key], "FormElement"]) -> "FormElement":
        total = self.zero()
        for k, v in self.terms.items():
            total = total + fn(k).scale(v)
        return total

    def __str__(self):
        return render_form(self)

    def __repr__(self):
        return f"FormElement[{self.presentation.name}]({self})"


def render_form(f: FormElement) -> str:
    from .parsing import render_element

    if not f.terms:
        return "0"
    p = f.presentation
    pieces = []
    for (w, s), v in sorted(f.terms.items(), key=lambda kv: (len(kv[0][1]), sum(kv[0][0]), kv[0][1], kv[0][0])):
        coeff = render_element(word_element(p, w, v))
        if not s:
            pieces.append(coeff)
            continue
        dpart = "^".join(f"d{p.names[i]}" for i in s)
        if coeff == "1":
            pieces.append(dpart)
        elif coeff == "-1":
            pieces.append("-" + dpart)
        elif " " in coeff:
            pieces.append(f"({coeff})*{dpart}")
        else:
            pieces.append(f"{coeff}*{dpart}")
    out = pieces[0]
    for piece in pieces[1:]:
        out += " - " + piece[1:] if piece.startswith("-") else " + " + piece
    return out


# -- products ----------------------------------------------------------------------------


def _key_product(p: GradedPresentation, k1: Key, k2: Key):
    """``(w1 dS1)(w2 dS2) = coeff * key`` or ``None`` when a dg repeats."""
    w1, s1 = k1
    w2, s2 = k2
    if set(s1) & set(s2):
        return None
    c = p.commutation
    exponent = 0
    # dS1 past w2
    for s in s1:
        row = c[s]
        for j, e in enumerate(w2):
            if e:
                exponent += row[j] * e
    # w1 w2 into normal order
    for i, j, cij in p._pairs:
        if w1[i] and w2[j]:
            exponent += w1[i] * w2[j] * cij
    # dS1 dS2 into increasing order
    sign = 1
    for s in s1:
        for t in s2:
            if s > t:
                sign = -sign
                exponent += c[s][t]
    word = tuple(a + b for a, b in zip(w1, w2))
    dgs = tuple(sorted(s1 + s2))
    return (word, dgs), Scalar.monomial(exponent, sign)


def wedge(f: FormElement, g: FormElement) -> FormElement:
    """The product of Omega over ``f``'s presentation (deformed wedge on ``A_L``)."""
    f._check(g)
    p = f.presentation
    out: dict = {}
    for k1, v1 in f.terms.items():
        for k2, v2 in g.terms.items():
            hit = _key_product(p, k1, k2)
            if hit is None:
                continue
            key, s = hit
            val = v1 * v2 * s
            if key in out:
                t = out[key] + val
                if t:
                    out[key] = t
                else:
                    del out[key]
            else:
                out[key] = val
    return FormElement._raw(p, out)


def exterior_d(f: FormElement) -> FormElement:
    """Graded Leibniz extension of ``g -> dg``, with ``d(dg) = 0``."""
    p = f.presentation
    c = p.commutation
    out: dict = {}
    for (w, s), v in f.terms.items():
        for i, e in enumerate(w):
            if not e or i in s:
                continue
            # e * (w - e_i) dg_i, dg_i moved past the letters after g_i
            exponent = sum(c[i][j] * w[j] for j in range(i + 1, len(w)))
            sign = 1
            for t in s:
                if t < i:
                    sign = -sign
                    exponent += c[i][t]
            word = w[:i] + (e - 1,) + w[i + 1:]
            key = (word, tuple(sorted(s + (i,))))
            val = v * Scalar.monomial(exponent, sign * e)
            if key in out:
                t2 = out[key] + val
                if t2:
                    out[key] = t2
                else:
                    del out[key]
            else:
                out[key] = val
    return FormElement._raw(p, out)


# -- quantization of forms ------------------------------------------------------------------


def form_twist_exponent(p: GradedPresentation, key: Key) -> int:
    """``sum_{s<t} n1(x_s) n2(x_t)`` over the symbol sequence word, then dgs."""
    d = p.degrees
    total = 0
    running = 0
    for i, e in enumerate(key[0]):
        if e:
            total += running * e * d[i].n2 + (e * (e - 1) // 2) * d[i].n1 * d[i].n2
            running += e * d[i].n1
    for i in key[1]:
        total += running * d[i].n2
        running += d[i].n1
    return total


def quantize_form(f: FormElement) -> FormElement:
    p = f.presentation
    if p.source is not None:
        raise ValueError("quantize_form expects a form over the undeformed algebra")
    q = quantize_presentation(p)
    return FormElement._raw(q, {k: v * lam(-form_twist_exponent(p, k)) for k, v in f.terms.items()})


def dequantize_form(f: FormElement) -> FormElement:
    q = f.presentation
    if q.source is None:
        raise ValueError("dequantize_form expects a form over a quantized algebra")
    p = q.source
    return FormElement._raw(p, {k: v * lam(form_twist_exponent(p, k)) for k, v in f.terms.items()})


def wedge_deformed(f: FormElement, g: FormElement) -> FormElement:
    """``ul w ^ ul r = L^{n1(w) n2(r)} ul(w ^ r)`` on undeformed inputs, by homogeneous parts."""
    q = quantize_presentation(f.presentation)
    total = FormElement._raw(q, {})
    for (d1, _), a in f.homogeneous_parts().items():
        for (d2, _), b in g.homogeneous_parts().items():
            total = total + quantize_form(wedge(a, b)).scale(lam(d1.n1 * d2.n2))
    return total


# -- symmetry action on forms ---------------------------------------------------------------------


class FormAction:
    """Chevalley generators on Omega(A) with ``x |> dg = d(x |> g)``."""

    def __init__(self, action: GeneratorAction):
        self.action = action
        self.presentation = action.presentation
        self._cache: dict = {}

    def _symbol_images(self, s: X, g: int) -> tuple[FormElement, FormElement]:
        hit = self._cache.get((s, g))
        if hit is None:
            image = self.action.act_symbol(s, word_element(self.presentation, _unit(self.presentation, g)))
            f = FormElement.from_element(image)
            hit = (f, exterior_d(f))
            self._cache[(s, g)] = hit
        return hit

    def _on_key(self, s, key: Key) -> FormElement:
        p = self.presentation
        w, dgs = key
        if isinstance(s, (H, K)):
            weight = self.action.word_weight(w)[s.i - 1]
            weight += sum(self.action.weights[t][s.i - 1] for t in dgs)
            coeff = Scalar.coerce(weight) if isinstance(s, H) else lam(s.c * weight)
            return FormElement._raw(p, {key: coeff})
        letters = [(g, False) for g, e in enumerate(w) for _ in range(e)] + [(t, True) for t in dgs]
        factors = [
            FormElement.d_generator(p, g) if is_d else FormElement.basis(p, _unit(p, g))
            for g, is_d in letters
        ]
        total = FormElement._raw(p, {})
        for pos, (g, is_d) in enumerate(letters):
            if (s.i, s.sign) not in self.action.rules or g not in self.action.rules[(s.i, s.sign)]:
                continue
            image = self._symbol_images(s, g)[1 if is_d else 0]
            term = FormElement.basis(p, p.unit_word())
            for k, fac in enumerate(factors):
                term = wedge(term, image if k == pos else fac)
            total = total + term
        return total

    def act_symbol(self, s, f: FormElement) -> FormElement:
        self.action.check_symbol(s)
        if f.presentation != self.presentation:
            raise ValueError("form over the wrong presentation")
        return f.map_keys(lambda k: self._on_key(s, k))

    def act(self, word, f: FormElement) -> FormElement:
        if isinstance(word, (H, X, K)):
            word = (word,)
        for s in reversed(tuple(word)):
            f = self.act_symbol(s, f)
        return f

    def act_twisted(self, word, f: FormElement) -> FormElement:
        """``T |> ul w = ul(t |> w)`` on forms over the quantized algebra."""
        return quantize_form(self.act(word, dequantize_form(f)))


def _unit(p: GradedPresentation, g: int) -> tuple:
    w = [0] * p.ngens
    w[g] = 1
    return tuple(w)


def act_on_forms(action: GeneratorAction, word, f: FormElement) -> FormElement:
    """Classical action on undeformed forms, twisted action on quantized ones."""
    fa = FormAction(action)
    if f.presentation.source is not None:
        return fa.act_twisted(word, f)
    return fa.act(word, f)


# -- sampling and checks ----------------------------------------------------------------------------


def random_form(rng: SplitMix64, p: GradedPresentation, max_length: int, max_form_degree: int = 3,
                terms: int = 1) -> FormElement:
    """Sum of ``terms`` random basis forms; a single term is homogeneous."""
    total = FormElement._raw(p, {})
    for _ in range(terms):
        w = random_word(rng, p, max_length)
        k = rng.integer(0, min(max_form_degree, p.ngens))
        pool = list(range(p.ngens))
        dgs = []
        for _ in range(k):
            dgs.append(pool.pop(rng.below(len(pool))))
        s = random_scalar(rng)
        total = total + FormElement.basis(p, w, sorted(dgs), s)
    return total


def _sign(f: FormElement) -> int:
    degs = f.form_degrees()
    if len(degs) != 1:
        raise ValueError("graded Leibniz needs a form of pure degree")
    return -1 if degs.pop() % 2 else 1


def check_calculus(action: GeneratorAction, trials: int = 100, max_degree: int = 3, seed: int = 0,
                   max_form_degree: int = 3, twisted_symmetry=None) -> list[CheckResult]:
    """d^2 = 0, graded Leibniz, quantization compatibility and equivariance."""
    from .twist import TwistedSymmetry

    p = action.presentation
    q = quantize_presentation(p)
    fa = FormAction(action)
    hopf = twisted_symmetry or TwistedSymmetry(action)
    base = SplitMix64(seed)
    out = []

    def run(cid, test, arity, detail=None):
        rng = base.fork(cid)
        bad = None
        for _ in range(trials):
            forms = [random_form(rng, p, max_degree, max_form_degree) for _ in range(arity)]
            msg = test(*forms)
            if msg:
                bad = "; ".join(f"w{k}={f}" for k, f in enumerate(forms)) + f": {msg}"
                break
        out.append(result(cid, bad is None, bad, detail=detail or f"{trials} samples"))

    def d_squared(w):
        if exterior_d(exterior_d(w)) or exterior_d(exterior_d(quantize_form(w))):
            return "d(d w) != 0"

    def leibniz(w, r):
        sign = _sign(w)
        lhs = exterior_d(wedge(w, r))
        rhs = wedge(exterior_d(w), r) + wedge(w, exterior_d(r)).scale(sign)
        if lhs != rhs:
            return "undeformed Leibniz fails"

    def leibniz_deformed(w, r):
        uw, ur = quantize_form(w), quantize_form(r)
        sign = _sign(w)
        lhs = exterior_d(wedge(uw, ur))
        rhs = wedge(exterior_d(uw), ur) + wedge(uw, exterior_d(ur)).scale(sign)
        if lhs != rhs:
            return f"lhs - rhs = {lhs - rhs}"

    def d_quantized(w):
        if exterior_d(quantize_form(w)) != quantize_form(exterior_d(w)):
            return "d ul w != ul d w"

    def wedge_oracle(w, r):
        if wedge(quantize_form(w), quantize_form(r)) != wedge_deformed(w, r):
            return "intrinsic deformed wedge disagrees with L^{n1 n2} ul(w ^ r)"

    def associative(w, r, s):
        a, b, c = quantize_form(w), quantize_form(r), quantize_form(s)
        if wedge(wedge(a, b), c) != wedge(a, wedge(b, c)):
            return "deformed wedge not associative"

    run("calculus.d-squared", d_squared, 1)
    run("calculus.leibniz", leibniz, 2)
    run("calculus.leibniz-deformed", leibniz_deformed, 2)
    run("calculus.d-quantization", d_quantized, 1)
    run("calculus.wedge-deformed-oracle", wedge_oracle, 2)
    run("calculus.wedge-associativity", associative, 3)

    for s in action.symbols():
        def equivariant(w, s=s):
            if fa.act(s, exterior_d(w)) != exterior_d(fa.act(s, w)):
                return "classical action does not commute with d"
            uw = quantize_form(w)
            if fa.act_twisted(s, exterior_d(uw)) != exterior_d(fa.act_twisted(s, uw)):
                return "twisted action does not commute with d"

        def module_algebra(w, r, s=s):
            uw, ur = quantize_form(w), quantize_form(r)
            lhs = fa.act_twisted(s, wedge(uw, ur))
            rhs = FormElement._raw(q, {})
            for coeff, (w1, w2) in hopf.coproduct(s).terms:
                rhs = rhs + wedge(fa.act_twisted(w1, uw), fa.act_twisted(w2, ur)).scale(coeff)
            if lhs != rhs:
                return f"lhs - rhs = {lhs - rhs}"

        run(f"calculus.equivariance.{s}", equivariant, 1)
        run(f"calculus.module-algebra.{s}", module_algebra, 2)
    return out
