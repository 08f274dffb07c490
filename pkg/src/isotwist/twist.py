"""The Cartan twist ``Psi = L^(-H1 (x) H2)`` and the twisted Hopf structure.

On a homogeneous tensor ``a (x) b`` with bidegrees ``p`` and ``q`` the twist
acts by the scalar ``L^(phi(p, q))``, ``phi = -p1*q2``.  Every structure map
is built from this rule: the coproduct is conjugated, the deformed product
uses ``Psi^-1`` and the antipode is conjugated by ``U = L^(H1 H2)``.

Identities that reduce to L-exponents are checked exactly with
:class:`~isotwist.scalars.DegreeForm`; the rest are checked as operator
identities on sampled homogeneous elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .algebra import (
    DegreeVector,
    Element,
    GradedPresentation,
    dequantize,
    involution,
    multiply,
    quantize,
    quantize_presentation,
    star_involution,
    star_product,
    word_element,
)
from .report import CheckResult, result
from .rng import SplitMix64, random_homogeneous
from .scalars import ONE, ZERO, DegreeForm, Scalar, degree_variables, form_identity_check, lam
from .symmetry import GeneratorAction, H, K, Symbol, X, render_word, simplify_word

SLOT_VARS = ("p1", "p2", "q1", "q2")
TRIPLE_VARS = ("p1", "p2", "q1", "q2", "r1", "r2")


# -- tensors ---------------------------------------------------------------


class Tensor:
    """Element of ``A (x) ... (x) A`` in the product word basis."""

    __slots__ = ("presentations", "terms")

    def __init__(self, presentations: Sequence[GradedPresentation], terms=None):
        self.presentations = tuple(presentations)
        self.terms = {k: s for k, s in (terms or {}).items() if s}

    @classmethod
    def of(cls, *elements: Element) -> "Tensor":
        terms = {(): ONE}
        for e in elements:
            new = {}
            for key, s in terms.items():
                for w, t in e.terms.items():
                    new[key + (w,)] = s * t
            terms = new
        return cls([e.presentation for e in elements], terms)

    @property
    def slots(self) -> int:
        return len(self.presentations)

    def __add__(self, other: "Tensor") -> "Tensor":
        out = dict(self.terms)
        for k, s in other.terms.items():
            out[k] = out[k] + s if k in out else s
        return Tensor(self.presentations, out)

    def __neg__(self):
        return Tensor(self.presentations, {k: -s for k, s in self.terms.items()})

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def scale(self, s) -> "Tensor":
        s = Scalar.coerce(s)
        return Tensor(self.presentations, {k: v * s for k, v in self.terms.items()})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.presentations == other.presentations and self.terms == other.terms

    __hash__ = None

    def degrees(self, key) -> tuple[DegreeVector, ...]:
        return tuple(p.word_degree(w) for p, w in zip(self.presentations, key))

    def weighted(self, fn: Callable[[tuple], Scalar]) -> "Tensor":
        """Scale each basis tensor by ``fn(degrees)``."""
        return Tensor(
            self.presentations,
            {k: s * fn(self.degrees(k)) for k, s in self.terms.items()},
        )

    def apply_slots(self, ops: Sequence[Callable[[Element], Element]]) -> "Tensor":
        """Apply one linear map per slot."""
        total = Tensor(self.presentations)
        for key, s in self.terms.items():
            images = [op(word_element(p, w)) for op, p, w in zip(ops, self.presentations, key)]
            total = total + Tensor.of(*images).scale(s)
        return total

    def contract(self) -> Element:
        """Multiply the slots together (all slots in one presentation)."""
        p = self.presentations[0]
        total = p.zero()
        for key, s in self.terms.items():
            prod = p.one()
            for w in key:
                prod = multiply(prod, word_element(p, w))
            total = total + prod.scale(s)
        return total

    def __repr__(self):
        from .parsing import render_element

        if not self.terms:
            return "Tensor(0)"
        parts = []
        for key, s in self.terms.items():
            factors = " (x) ".join(
                render_element(word_element(p, w)) for p, w in zip(self.presentations, key)
            )
            parts.append(f"({s}) {factors}")
        return "Tensor(" + " + ".join(parts) + ")"


# -- the twist -------------------------------------------------------------


@dataclass(frozen=True)
class TwistOperator:
    """``L^(exponent(p, q))`` on homogeneous ``a (x) b``; exponent over ``SLOT_VARS``."""

    exponent: DegreeForm

    def scalar(self, p: DegreeVector, q: DegreeVector) -> Scalar:
        return lam(self.exponent.evaluate({"p1": p.n1, "p2": p.n2, "q1": q.n1, "q2": q.n2}))

    def inverse(self) -> "TwistOperator":
        return TwistOperator(-self.exponent)

    def star(self) -> "TwistOperator":
        """``Psi*``: ``L* = L^-1`` and real Cartan generators negate the exponent."""
        return TwistOperator(-self.exponent)

    def flipped(self) -> "TwistOperator":
        """``Psi_21``: the same element with tensor slots exchanged."""
        p1, p2, q1, q2 = degree_variables(SLOT_VARS)
        return TwistOperator(self.exponent.substitute({"p1": q1, "p2": q2, "q1": p1, "q2": p2}))

    def apply(self, t: Tensor) -> Tensor:
        return t.weighted(lambda d: self.scalar(d[0], d[1]))


def cartan_exponent() -> DegreeForm:
    p1, p2, q1, q2 = degree_variables(SLOT_VARS)
    return -p1 * q2


CARTAN_TWIST = TwistOperator(cartan_exponent())


def psi_apply(side: str, a: Element, b: Element, twist: TwistOperator = CARTAN_TWIST) -> Tensor:
    """``Psi (a (x) b)`` for ``side='psi'``, ``Psi^-1 (a (x) b)`` for ``side='psi_inv'``."""
    if side not in ("psi", "psi_inv"):
        raise ValueError("side must be 'psi' or 'psi_inv'")
    op = twist if side == "psi" else twist.inverse()
    return op.apply(Tensor.of(a, b))


def _embed(exponent: DegreeForm, x: Sequence, y: Sequence) -> DegreeForm:
    value = exponent.evaluate({"p1": x[0], "p2": x[1], "q1": y[0], "q2": y[1]})
    return DegreeForm(x[0].variables) + value


def cocycle_forms(exponent: DegreeForm | None = None) -> tuple[DegreeForm, DegreeForm]:
    """Exponents of ``Psi_12 (D (x) id) Psi`` and ``Psi_23 (id (x) D) Psi`` on ``a(x)b(x)c``.

    ``D`` of a Cartan generator is primitive, so the first slot of
    ``(D (x) id) Psi`` sees the total degree ``p + q``.
    """
    phi = cartan_exponent() if exponent is None else exponent
    p1, p2, q1, q2, r1, r2 = degree_variables(TRIPLE_VARS)
    P, Q, R = (p1, p2), (q1, q2), (r1, r2)
    PQ, QR = (p1 + q1, p2 + q2), (q1 + r1, q2 + r2)
    lhs = _embed(phi, P, Q) + _embed(phi, PQ, R)
    rhs = _embed(phi, Q, R) + _embed(phi, P, QR)
    return lhs, rhs


def check_cocycle(exponent: DegreeForm | None = None) -> bool:
    """Exact cocycle and counit conditions for ``L^(exponent)``, valid for all degrees."""
    phi = cartan_exponent() if exponent is None else exponent
    lhs, rhs = cocycle_forms(phi)
    zero = DegreeForm(SLOT_VARS)
    p1, p2, q1, q2 = degree_variables(SLOT_VARS)
    counit_left = phi.evaluate({"p1": 0, "p2": 0, "q1": q1, "q2": q2})
    counit_right = phi.evaluate({"p1": p1, "p2": p2, "q1": 0, "q2": 0})
    return (
        form_identity_check(lhs, rhs)
        and form_identity_check(zero + counit_left, zero)
        and form_identity_check(zero + counit_right, zero)
    )


def u_exponent(twist: TwistOperator = CARTAN_TWIST) -> DegreeForm:
    """Exponent of ``U = Psi_(1) S(Psi_(2))`` on an element of degree ``p``.

    Both legs act on the same element and ``S(H) = -H``, so the second slot
    degree becomes ``-p``.
    """
    p1, p2, _, _ = degree_variables(SLOT_VARS)
    return twist.exponent.substitute({"q1": -p1, "q2": -p2})


def r_exponent() -> DegreeForm:
    """``L^(H2 (x) H1 - H1 (x) H2)`` as printed, i.e. ``p2*q1 - p1*q2``."""
    p1, p2, q1, q2 = degree_variables(SLOT_VARS)
    return p2 * q1 - p1 * q2


R_MATRIX = TwistOperator(r_exponent())


# -- operator expressions ------------------------------------------------------


class CoproductExpr:
    """Sum of ``coeff * (w_1 (x) ... (x) w_k)`` with words of Chevalley symbols."""

    __slots__ = ("slots", "terms")

    def __init__(self, slots: int, terms: Iterable[tuple[Scalar, tuple]] = ()):
        self.slots = slots
        merged: dict[tuple, Scalar] = {}
        for c, words in terms:
            c = Scalar.coerce(c)
            words = tuple(simplify_word(w) for w in words)
            if len(words) != slots:
                raise ValueError("slot count mismatch")
            merged[words] = merged[words] + c if words in merged else c
        self.terms = tuple((c, w) for w, c in merged.items() if c)

    @classmethod
    def word(cls, *words) -> "CoproductExpr":
        return cls(len(words), [(ONE, tuple(tuple(w) for w in words))])

    def __add__(self, other: "CoproductExpr") -> "CoproductExpr":
        return CoproductExpr(self.slots, self.terms + other.terms)

    def __neg__(self):
        return self.scale(-ONE)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "CoproductExpr":
        s = Scalar.coerce(s)
        return CoproductExpr(self.slots, [(c * s, w) for c, w in self.terms])

    def __mul__(self, other: "CoproductExpr") -> "CoproductExpr":
        """Product in the Hopf algebra: slotwise concatenation."""
        if self.slots != other.slots:
            raise ValueError("slot count mismatch")
        return CoproductExpr(
            self.slots,
            [
                (c1 * c2, tuple(a + b for a, b in zip(w1, w2)))
                for c1, w1 in self.terms
                for c2, w2 in other.terms
            ],
        )

    def flip(self) -> "CoproductExpr":
        return CoproductExpr(self.slots, [(c, tuple(reversed(w))) for c, w in self.terms])

    def expand_slot(self, k: int, fn: Callable[[tuple], "CoproductExpr"]) -> "CoproductExpr":
        """Replace slot ``k`` by the multi-slot expression ``fn(word)``."""
        terms = []
        for c, words in self.terms:
            inner = fn(words[k])
            for c2, sub in inner.terms:
                terms.append((c * c2, words[:k] + sub + words[k + 1:]))
        width = self.slots - 1 + (fn(()).slots)
        return CoproductExpr(width, terms)

    def act(self, t: Tensor, act: Callable[[tuple, Element], Element]) -> Tensor:
        total = Tensor(t.presentations)
        for c, words in self.terms:
            ops = [lambda e, w=w: act(w, e) for w in words]
            total = total + t.apply_slots(ops).scale(c)
        return total

    def act_one(self, a: Element, act: Callable[[tuple, Element], Element]) -> Element:
        if self.slots != 1:
            raise ValueError("act_one needs a single-slot expression")
        total = a.presentation.zero()
        for c, (w,) in self.terms:
            total = total + act(w, a).scale(c)
        return total

    def __eq__(self, other):
        if not isinstance(other, CoproductExpr):
            return NotImplemented
        return self.slots == other.slots and dict((w, c) for c, w in self.terms) == dict(
            (w, c) for c, w in other.terms
        )

    __hash__ = None

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for c, words in self.terms:
            body = " (x) ".join(render_word(w) for w in words)
            if c == ONE:
                parts.append(body)
            elif c == -ONE:
                parts.append("-" + body)
            else:
                parts.append(f"({c}) {body}")
        return " + ".join(parts)

    __repr__ = __str__


# -- the twisted Hopf algebra -----------------------------------------------------


def act_twisted(word, x: Element, action: GeneratorAction) -> Element:
    """``T |> ul a = ul(t |> a)`` on elements of the quantized presentation."""
    if isinstance(word, (H, X, K)):
        word = (word,)
    q = x.presentation
    if q.source is None or q.source != action.presentation:
        raise ValueError("act_twisted expects an element of the quantized acted-upon algebra")
    return quantize(action.act(word, dequantize(x)))


class TwistedSymmetry:
    """Hopf structure of the twisted symmetry, acting through a GeneratorAction."""

    def __init__(self, action: GeneratorAction):
        self.action = action
        self.source = action.presentation
        self.deformed = quantize_presentation(action.presentation)
        self.h1, self.h2 = action.pick
        self._u = u_exponent()

    # structure maps on symbols ------------------------------------------------

    def coproduct(self, s: Symbol) -> CoproductExpr:
        """Closed form of ``Psi (D t) Psi^-1`` on generators."""
        self.action.check_symbol(s)
        if isinstance(s, H):
            return CoproductExpr(2, [(ONE, ((s,), ())), (ONE, ((), (s,)))])
        if isinstance(s, K):
            return CoproductExpr.word((s,), (s,))
        cd = self.action.cartan
        alpha, beta = cd.alpha(s.i), cd.beta(s.i)
        return CoproductExpr(
            2,
            [
                (ONE, ((s,), (K(self.h2, -s.sign * alpha),))),
                (ONE, ((K(self.h1, -s.sign * beta),), (s,))),
            ],
        )

    def classical_coproduct(self, s: Symbol) -> CoproductExpr:
        self.action.check_symbol(s)
        if isinstance(s, K):
            return CoproductExpr.word((s,), (s,))
        return CoproductExpr(2, [(ONE, ((s,), ())), (ONE, ((), (s,)))])

    def coproduct_word(self, word, classical: bool = False) -> CoproductExpr:
        out = CoproductExpr.word((), ())
        for s in word:
            out = out * (self.classical_coproduct(s) if classical else self.coproduct(s))
        return out

    def counit(self, word) -> Scalar:
        return ZERO if any(isinstance(s, (H, X)) for s in word) else ONE

    def antipode(self, s: Symbol) -> CoproductExpr:
        """``S H = -H``; ``S X^+- = -L^(+-beta H1) X^+- L^(+-alpha H2)``; ``S K = K^-1``."""
        self.action.check_symbol(s)
        if isinstance(s, H):
            return CoproductExpr(1, [(-ONE, ((s,),))])
        if isinstance(s, K):
            return CoproductExpr.word((K(s.i, -s.c),))
        cd = self.action.cartan
        alpha, beta = cd.alpha(s.i), cd.beta(s.i)
        word = (K(self.h1, s.sign * beta), s, K(self.h2, s.sign * alpha))
        return CoproductExpr(1, [(-ONE, (word,))])

    def classical_antipode(self, s: Symbol) -> CoproductExpr:
        if isinstance(s, K):
            return CoproductExpr.word((K(s.i, -s.c),))
        return CoproductExpr(1, [(-ONE, ((s,),))])

    def antipode_word(self, word, classical: bool = False) -> CoproductExpr:
        out = CoproductExpr.word(())
        for s in reversed(tuple(word)):
            out = out * (self.classical_antipode(s) if classical else self.antipode(s))
        return out

    def antipode_expr(self, expr: CoproductExpr, classical: bool = False) -> CoproductExpr:
        total = CoproductExpr(1)
        for c, (w,) in expr.terms:
            total = total + self.antipode_word(w, classical).scale(c)
        return total

    @staticmethod
    def star_symbol(s: Symbol) -> Symbol:
        """Compact real form: ``H* = H``, ``(X^+-)* = X^-+``, ``(L^(cH))* = L^(-cH)``."""
        if isinstance(s, X):
            return X(s.i, -s.sign)
        if isinstance(s, K):
            return K(s.i, -s.c)
        return s

    def star_expr(self, expr: CoproductExpr) -> CoproductExpr:
        if expr.slots != 1:
            raise ValueError("star_expr needs a single-slot expression")
        return CoproductExpr(
            1,
            [(c.conj(), (tuple(self.star_symbol(s) for s in reversed(w)),)) for c, (w,) in expr.terms],
        )

    # actions -------------------------------------------------------------------

    def act(self, word, x: Element) -> Element:
        """Twisted action on the deformed algebra (same images as classically)."""
        return act_twisted(word, x, self.action)

    def act_classical(self, word, a: Element) -> Element:
        return self.action.act(word, a)

    def act_u(self, x: Element, power: int = 1) -> Element:
        """``U^power`` with ``U = L^(H1 H2)`` acting by degree."""
        p = x.presentation
        out = {}
        for w, s in x.terms.items():
            d = p.word_degree(w)
            out[w] = s * lam(power * self._u.evaluate({"p1": d.n1, "p2": d.n2, "q1": 0, "q2": 0}))
        return Element(p, out)

    def symbols(self) -> list[Symbol]:
        return self.action.symbols()


# -- checks ----------------------------------------------------------------------


def _rng(seed: int, tag: str) -> SplitMix64:
    return SplitMix64(seed).fork(tag)


def _samples(hopf: TwistedSymmetry, seed: int, tag: str, trials: int, max_degree: int, arity: int):
    rng = _rng(seed, tag)
    p = hopf.source
    for _ in range(trials):
        yield tuple(random_homogeneous(rng, p, max_degree) for _ in range(arity))


def _fmt(*elements) -> str:
    return " (x) ".join(str(e) for e in elements)


def check_coproduct_conjugation(hopf: TwistedSymmetry, trials=50, max_degree=5, seed=0) -> list[CheckResult]:
    """Closed-form coproduct against ``Psi (D t) Psi^-1`` evaluated on tensors."""
    out = []
    psi, psi_inv = CARTAN_TWIST, CARTAN_TWIST.inverse()
    for s in hopf.symbols():
        cid = f"hopf.coproduct-conjugation.{s}"
        closed = hopf.coproduct(s)
        classical = hopf.classical_coproduct(s)
        bad = None
        for a, b in _samples(hopf, seed, cid, trials, max_degree, 2):
            t = Tensor.of(a, b)
            lhs = closed.act(t, hopf.act_classical)
            rhs = psi.apply(classical.act(psi_inv.apply(t), hopf.act_classical))
            if lhs != rhs:
                bad = f"on {_fmt(a, b)}"
                break
        out.append(result(cid, bad is None, bad, detail=str(closed)))
    return out


def _sample_symbols(hopf: TwistedSymmetry) -> list[Symbol]:
    return hopf.symbols() + [K(hopf.h1, 1), K(hopf.h2, -2)]


def check_coassociativity(hopf: TwistedSymmetry, trials=50, max_degree=5, seed=0) -> list[CheckResult]:
    out = []
    for s in _sample_symbols(hopf):
        cid = f"hopf.coassociativity.{s}"
        d = hopf.coproduct(s)
        left = d.expand_slot(0, hopf.coproduct_word)
        right = d.expand_slot(1, hopf.coproduct_word)
        bad = None
        for a, b, c in _samples(hopf, seed, cid, trials, max_degree, 3):
            t = Tensor.of(quantize(a), quantize(b), quantize(c))
            if left.act(t, hopf.act) != right.act(t, hopf.act):
                bad = f"on {_fmt(a, b, c)}"
                break
        out.append(result(cid, bad is None, bad))
    return out


def _counit_contract(hopf: TwistedSymmetry, d: CoproductExpr, slot: int) -> CoproductExpr:
    keep = 1 - slot
    return CoproductExpr(1, [(c * hopf.counit(w[slot]), (w[keep],)) for c, w in d.terms])


def check_counit(hopf: TwistedSymmetry, trials=50, max_degree=5, seed=0) -> list[CheckResult]:
    out = []
    for s in _sample_symbols(hopf):
        d = hopf.coproduct(s)
        for slot, name in ((0, "left"), (1, "right")):
            cid = f"hopf.counit-{name}.{s}"
            reduced = _counit_contract(hopf, d, slot)
            target = CoproductExpr.word((s,))
            bad = None
            for (a,) in _samples(hopf, seed, cid, trials, max_degree, 1):
                x = quantize(a)
                if reduced.act_one(x, hopf.act) != target.act_one(x, hopf.act):
                    bad = f"on {a}"
                    break
            out.append(result(cid, bad is None, bad))
    return out


def check_antipode_axiom(hopf: TwistedSymmetry, trials=50, max_degree=5, seed=0) -> list[CheckResult]:
    """``m(S (x) id) D T = eps(T) 1 = m(id (x) S) D T`` as operators."""
    out = []
    for s in _sample_symbols(hopf):
        d = hopf.coproduct(s)
        eps = hopf.counit((s,))
        for side in ("left", "right"):
            cid = f"hopf.antipode-{side}.{s}"
            total = CoproductExpr(1)
            for c, (w1, w2) in d.terms:
                if side == "left":
                    term = hopf.antipode_word(w1) * CoproductExpr.word(w2)
                else:
                    term = CoproductExpr.word(w1) * hopf.antipode_word(w2)
                total = total + term.scale(c)
            bad = None
            for (a,) in _samples(hopf, seed, cid, trials, max_degree, 1):
                x = quantize(a)
                if total.act_one(x, hopf.act) != x.scale(eps):
                    bad = f"on {a}"
                    break
            out.append(result(cid, bad is None, bad))
    return out


def check_antipode_u(hopf: TwistedSymmetry, trials=50, max_degree=5, seed=0) -> list[CheckResult]:
    """Closed-form antipode against ``U S(t) U^-1`` with ``U`` from the twist."""
    out = []
    for s in hopf.symbols():
        cid = f"hopf.antipode-U-conjugation.{s}"
        closed = hopf.antipode_word((s,))
        classical = hopf.classical_antipode(s)
        bad = None
        for (a,) in _samples(hopf, seed, cid, trials, max_degree, 1):
            lhs = closed.act_one(a, hopf.act_classical)
            rhs = hopf.act_u(classical.act_one(hopf.act_u(a, -1), hopf.act_classical), 1)
            if lhs != rhs:
                bad = f"on {a}"
                break
        out.append(result(cid, bad is None, bad, detail=str(closed)))
    p1, p2, _, _ = degree_variables(SLOT_VARS)
    out.append(result("hopf.U-closed-form", form_identity_check(u_exponent(), p1 * p2),
                      detail=f"U exponent {u_exponent()}"))
    return out


def module_algebra_pair(hopf: TwistedSymmetry, s: Symbol, a: Element, b: Element,
                        coproduct: CoproductExpr | None = None) -> tuple[Element, Element]:
    """Both sides of ``T |> (ul a * ul b) = (T_(1) |> ul a) * (T_(2) |> ul b)``."""
    d = hopf.coproduct(s) if coproduct is None else coproduct
    lhs = hopf.act((s,), star_product(a, b))
    rhs = d.act(Tensor.of(quantize(a), quantize(b)), hopf.act).contract()
    return lhs, rhs


def check_module_algebra(hopf: TwistedSymmetry, trials=500, max_degree=5, seed=0,
                         symbols: Sequence[Symbol] | None = None) -> list[CheckResult]:
    out = []
    for s in symbols or hopf.symbols():
        cid = f"hopf.module-algebra.{s}"
        bad = None
        for a, b in _samples(hopf, seed, cid, trials, max_degree, 2):
            lhs, rhs = module_algebra_pair(hopf, s, a, b)
            if lhs != rhs:
                bad = f"a={a}; b={b}: lhs - rhs = {lhs - rhs}"
                break
        out.append(result(cid, bad is None, bad, detail=f"{trials} pairs"))
    return out


def check_module_algebra_negative(hopf: TwistedSymmetry, trials=500, max_degree=5, seed=0) -> list[CheckResult]:
    """The untwisted coproduct must violate the module-algebra identity on ``A_L``.

    Passes when a violation is found, i.e. the check has power to detect it.
    """
    out = []
    for s in hopf.action.x_symbols():
        cid = f"hopf.module-algebra-negative-control.{s}"
        found = None
        for a, b in _samples(hopf, seed, cid, trials, max_degree, 2):
            lhs, rhs = module_algebra_pair(hopf, s, a, b, hopf.classical_coproduct(s))
            if lhs != rhs:
                found = f"untwisted coproduct fails on a={a}; b={b}"
                break
        out.append(result(cid, found is not None, detail=found or "no violation found"))
    return out


def generator_level_identity() -> bool:
    """Exponent chain of the generator-level module-algebra computation.

    For ``X^+-`` with shift ``(+-alpha, +-beta)`` and ``deg a = p``,
    ``deg b = q``: ``-+alpha q2 + (p1 +- alpha) q2 = p1 q2`` and
    ``-+beta p1 + p1 (q2 +- beta) = p1 q2``.
    """
    names = ("p1", "p2", "q1", "q2", "a", "b", "s")
    p1, p2, q1, q2, a, b, s = degree_variables(names)
    ok = True
    for sign in (1, -1):
        first = -sign * a * q2 + (p1 + sign * a) * q2
        second = -sign * b * p1 + p1 * (q2 + sign * b)
        ok &= form_identity_check(first, p1 * q2) and form_identity_check(second, p1 * q2)
    return ok


def check_star_compat(hopf: TwistedSymmetry, trials=100, max_degree=5, seed=0) -> list[CheckResult]:
    """Star compatibility of the classical and twisted actions, and the U consistency."""
    p = hopf.source
    out = []
    if p.star is None:
        return [CheckResult("star.compat", "error", detail="presentation has no involution pairing")]
    for s in hopf.symbols():
        cid = f"star.classical-compat.{s}"
        rhs_op = hopf.star_expr(hopf.antipode_expr(CoproductExpr.word((s,)), classical=True))
        bad = None
        for (a,) in _samples(hopf, seed, cid, trials, max_degree, 1):
            lhs = hopf.act_classical((s,), involution(a))
            rhs = involution(rhs_op.act_one(a, hopf.act_classical))
            if lhs != rhs:
                bad = f"on {a}"
                break
        out.append(result(cid, bad is None, bad))
    for s in hopf.symbols():
        cid = f"star.twisted-compat.{s}"
        rhs_op = hopf.star_expr(hopf.antipode_word((s,)))
        bad = None
        for (a,) in _samples(hopf, seed, cid, trials, max_degree, 1):
            x = quantize(a)
            lhs = hopf.act((s,), star_involution(x))
            rhs = star_involution(rhs_op.act_one(x, hopf.act))
            if lhs != rhs:
                bad = f"on {a}: lhs - rhs = {lhs - rhs}"
                break
        out.append(result(cid, bad is None, bad, detail=f"(ST)* = {rhs_op}"))
    cid = "star.U-consistency"
    bad = None
    for (a,) in _samples(hopf, seed, cid, trials, max_degree, 1):
        via_u = quantize(involution(hopf.act_u(a, -1)))
        if via_u != star_involution(quantize(a)):
            bad = f"on {a}"
            break
    out.append(result(cid, bad is None, bad, detail="ul(a)* = ul((U^-1 |> a)*)"))
    out.extend(unitarity_checks())
    return out


def unitarity_checks() -> list[CheckResult]:
    psi = CARTAN_TWIST
    u = TwistOperator(u_exponent())
    return [
        result("star.psi-unitary", form_identity_check(psi.star().exponent, psi.inverse().exponent),
               detail="Psi* = Psi^-1"),
        result("star.U-unitary", form_identity_check(u.star().exponent, u.inverse().exponent),
               detail="U* = U^-1"),
    ]


def r_matrix_checks(hopf: TwistedSymmetry | None = None, trials=50, max_degree=5, seed=0) -> list[CheckResult]:
    """Triangularity of ``R = L^(H2 (x) H1 - H1 (x) H2)`` and its intertwining property.

    With ``D_L = Psi D Psi^-1`` this ``R`` equals ``Psi Psi_21^-1`` and satisfies
    ``R D_L^op(T) = D_L(T) R``; equivalently ``R_21 D_L(T) = D_L^op(T) R_21``.
    """
    r = R_MATRIX
    out = [
        result("r-matrix.triangular", form_identity_check(r.flipped().exponent, r.inverse().exponent),
               detail="R_21 = R^-1"),
        result("r-matrix.from-twist",
               form_identity_check(r.exponent, CARTAN_TWIST.exponent + CARTAN_TWIST.flipped().inverse().exponent),
               detail="R = Psi Psi_21^-1"),
    ]
    if hopf is None:
        return out
    for s in _sample_symbols(hopf):
        d = hopf.coproduct(s)
        dop = d.flip()
        for cid, first, second, op in (
            (f"r-matrix.intertwine.{s}", dop, d, r),
            (f"r-matrix.intertwine-R21.{s}", d, dop, r.flipped()),
        ):
            bad = None
            for a, b in _samples(hopf, seed, cid, trials, max_degree, 2):
                t = Tensor.of(quantize(a), quantize(b))
                lhs = op.apply(first.act(t, hopf.act))
                rhs = second.act(op.apply(t), hopf.act)
                if lhs != rhs:
                    bad = f"on {_fmt(a, b)}"
                    break
            out.append(result(cid, bad is None, bad))
    return out


def check_cocycle_report() -> list[CheckResult]:
    lhs, rhs = cocycle_forms()
    return [
        result("twist.cocycle", check_cocycle(), detail=f"both sides {lhs}" if lhs == rhs else None),
        result("twist.generator-level-exponents", generator_level_identity()),
    ]
