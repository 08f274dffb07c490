"""Bi-graded algebras with L-commutation relations.

A presentation has generators ``g_0 .. g_{k-1}`` with bidegrees and an
antisymmetric integer matrix ``c`` such that ``g_i g_j = L^{c_ij} g_j g_i``.
Normal-ordered words (nondecreasing generator index) form a basis; a word is
stored as its exponent tuple ``(e_0, .., e_{k-1})``.

The deformed algebra ``A_L`` of an undeformed ``A`` is
``quantize_presentation(A)``.  Its elements are written in the same word basis,
each word meaning the ordered product of generators *in A_L*.  The
quantization map ``a -> ul(a)`` therefore carries a normalisation factor per
word; see :func:`quantize`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .scalars import ONE, ZERO, Scalar, lam, DegreeForm, degree_variables, form_identity_check

__all__ = [
    "DegreeVector",
    "GradedPresentation",
    "Element",
    "normal_order",
    "multiply",
    "quantize_presentation",
    "quantize",
    "dequantize",
    "star_product",
    "involution",
    "star_involution",
    "degree_of",
    "word_twist_exponent",
    "involution_identity_holds",
]

Word = tuple  # exponent tuple


@dataclass(frozen=True, order=True)
class DegreeVector:
    n1: int
    n2: int

    def __add__(self, other: "DegreeVector") -> "DegreeVector":
        return DegreeVector(self.n1 + other.n1, self.n2 + other.n2)

    def __sub__(self, other: "DegreeVector") -> "DegreeVector":
        return DegreeVector(self.n1 - other.n1, self.n2 - other.n2)

    def __neg__(self) -> "DegreeVector":
        return DegreeVector(-self.n1, -self.n2)

    def __iter__(self):
        yield self.n1
        yield self.n2

    def __str__(self):
        return f"({self.n1},{self.n2})"


ZERO_DEGREE = DegreeVector(0, 0)


@dataclass(frozen=True)
class GradedPresentation:
    """Generators with bidegrees, commutation exponents and optional star pairing.

    ``source`` is set exactly on presentations built by
    :func:`quantize_presentation` and points at the undeformed algebra.
    """

    name: str
    names: tuple[str, ...]
    degrees: tuple[DegreeVector, ...]
    commutation: tuple[tuple[int, ...], ...]
    star: tuple[int, ...] | None = None
    source: "GradedPresentation | None" = field(default=None, compare=True)

    def __post_init__(self):
        k = len(self.names)
        if len(set(self.names)) != k:
            raise ValueError("generator names must be distinct")
        if len(self.degrees) != k:
            raise ValueError("one degree per generator required")
        c = self.commutation
        if len(c) != k or any(len(row) != k for row in c):
            raise ValueError("commutation matrix must be square of generator count")
        for i in range(k):
            if c[i][i]:
                raise ValueError(f"commutation matrix has nonzero diagonal at {self.names[i]}")
            for j in range(i):
                if c[i][j] != -c[j][i]:
                    raise ValueError(
                        f"commutation matrix not antisymmetric at "
                        f"({self.names[i]},{self.names[j]})"
                    )
        if self.star is not None:
            s = self.star
            if len(s) != k:
                raise ValueError("star pairing must cover every generator")
            for i in range(k):
                if s[s[i]] != i:
                    raise ValueError(f"star pairing is not an involution at {self.names[i]}")
                if self.degrees[s[i]] != -self.degrees[i]:
                    raise ValueError(f"star of {self.names[i]} must have negated degree")
            for i in range(k):
                for j in range(k):
                    if c[s[i]][s[j]] != c[i][j]:
                        raise ValueError("commutation exponents incompatible with star pairing")
        pairs = tuple((i, j, c[i][j]) for i in range(k) for j in range(i) if c[i][j])
        object.__setattr__(self, "_pairs", pairs)
        object.__setattr__(self, "_quantized", None)

    # convenience -------------------------------------------------------

    @property
    def ngens(self) -> int:
        return len(self.names)

    @property
    def deformed(self) -> bool:
        return self.source is not None

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown generator {name!r} in {self.name}") from None

    def word_degree(self, word: Word) -> DegreeVector:
        n1 = n2 = 0
        for e, d in zip(word, self.degrees):
            if e:
                n1 += e * d.n1
                n2 += e * d.n2
        return DegreeVector(n1, n2)

    def unit_word(self) -> Word:
        return (0,) * self.ngens

    def gen(self, name: str) -> "Element":
        return Element.generator(self, name)

    def gens(self) -> tuple["Element", ...]:
        return tuple(Element.generator(self, n) for n in self.names)

    def one(self) -> "Element":
        return Element(self, {self.unit_word(): ONE})

    def zero(self) -> "Element":
        return Element(self, {})

    def __repr__(self):
        tag = " deformed" if self.deformed else ""
        return f"<GradedPresentation {self.name}{tag} {list(self.names)}>"


def _merge_exponent(p: GradedPresentation, a: Word, b: Word) -> int:
    """L-exponent picked up when sorting the concatenation of words a, b."""
    total = 0
    for i, j, cij in p._pairs:
        ai = a[i]
        if ai:
            bj = b[j]
            if bj:
                total += ai * bj * cij
    return total


def _add_word(a: Word, b: Word) -> Word:
    return tuple(x + y for x, y in zip(a, b))


class Element:
    """Finite combination of normal-ordered words with :class:`Scalar` coefficients."""

    __slots__ = ("presentation", "terms")

    def __init__(self, presentation: GradedPresentation, terms: Mapping[Word, Scalar] | None = None):
        self.presentation = presentation
        clean = {}
        for w, s in (terms or {}).items():
            s = Scalar.coerce(s)
            if s:
                clean[tuple(w)] = s
        self.terms = clean

    @classmethod
    def _raw(cls, presentation, terms):
        e = cls.__new__(cls)
        e.presentation = presentation
        e.terms = terms
        return e

    @classmethod
    def generator(cls, p: GradedPresentation, name: str | int) -> "Element":
        i = p.index(name) if isinstance(name, str) else name
        word = [0] * p.ngens
        word[i] = 1
        return cls._raw(p, {tuple(word): ONE})

    @classmethod
    def scalar(cls, p: GradedPresentation, s) -> "Element":
        s = Scalar.coerce(s)
        return cls._raw(p, {p.unit_word(): s} if s else {})

    # linear structure ---------------------------------------------------

    def _check(self, other: "Element"):
        if other.presentation is not self.presentation and other.presentation != self.presentation:
            raise ValueError(
                f"presentation mismatch: {self.presentation.name} vs {other.presentation.name}"
            )

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            self._check(other)
            return other
        return Element.scalar(self.presentation, other)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for w, s in other.terms.items():
            if w in out:
                t = out[w] + s
                if t:
                    out[w] = t
                else:
                    del out[w]
            else:
                out[w] = s
        return Element._raw(self.presentation, out)

    __radd__ = __add__

    def __neg__(self):
        return Element._raw(self.presentation, {w: -s for w, s in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, s) -> "Element":
        s = Scalar.coerce(s)
        if not s:
            return Element._raw(self.presentation, {})
        out = {}
        for w, t in self.terms.items():
            v = t * s
            if v:
                out[w] = v
        return Element._raw(self.presentation, out)

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = self.presentation.one()
        for _ in range(n):
            result = result * self
        return result

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Element):
            return (
                (other.presentation is self.presentation or other.presentation == self.presentation)
                and self.terms == other.terms
            )
        try:
            return self == Element.scalar(self.presentation, other)
        except TypeError:
            return NotImplemented

    __hash__ = None

    # grading --------------------------------------------------------------

    def homogeneous_parts(self) -> dict[DegreeVector, "Element"]:
        parts: dict[DegreeVector, dict] = {}
        p = self.presentation
        for w, s in self.terms.items():
            parts.setdefault(p.word_degree(w), {})[w] = s
        return {d: Element._raw(p, t) for d, t in parts.items()}

    def degree(self) -> DegreeVector | None:
        return degree_of(self)

    def map_words(self, fn) -> "Element":
        """Apply a linear map given on basis words (``fn(word) -> Element``)."""
        total = Element._raw(self.presentation, {})
        for w, s in self.terms.items():
            total = total + fn(w).scale(s)
        return total

    def length(self) -> int:
        """Maximal word length occurring (0 for scalars and for zero)."""
        return max((sum(w) for w in self.terms), default=0)

    def __repr__(self):
        return f"Element[{self.presentation.name}]({self})"

    def __str__(self):
        from .parsing import render_element

        return render_element(self)


def degree_of(a: Element) -> DegreeVector | None:
    """Common bidegree of a nonzero homogeneous element, else ``None``."""
    degs = {a.presentation.word_degree(w) for w in a.terms}
    if len(degs) == 1:
        return degs.pop()
    return None


def normal_order(p: GradedPresentation, word: Sequence[int | str]) -> Element:
    """Sort a generator sequence, collecting ``L^{c_ij}`` per transposed inversion."""
    seq = [p.index(g) if isinstance(g, str) else int(g) for g in word]
    for g in seq:
        if not 0 <= g < p.ngens:
            raise IndexError(f"generator index {g} out of range")
    c = p.commutation
    exponent = 0
    for a in range(len(seq)):
        ga = seq[a]
        for b in range(a + 1, len(seq)):
            gb = seq[b]
            if ga > gb:
                exponent += c[ga][gb]
    exps = [0] * p.ngens
    for g in seq:
        exps[g] += 1
    return Element._raw(p, {tuple(exps): lam(exponent)})


def multiply(a: Element, b: Element) -> Element:
    """Product in the presentation: concatenate words, then normal-order."""
    a._check(b)
    p = a.presentation
    out: dict[Word, Scalar] = {}
    for wa, sa in a.terms.items():
        for wb, sb in b.terms.items():
            k = _merge_exponent(p, wa, wb)
            s = sa * sb
            if k:
                s = s * lam(k)
            w = _add_word(wa, wb)
            if w in out:
                t = out[w] + s
                if t:
                    out[w] = t
                else:
                    del out[w]
            else:
                out[w] = s
    return Element._raw(p, out)


def quantize_presentation(p: GradedPresentation) -> GradedPresentation:
    """``c'_ij = c_ij + n1^i n2^j - n1^j n2^i``; degrees and star unchanged."""
    if p._quantized is not None:
        return p._quantized
    k = p.ngens
    d = p.degrees
    c = tuple(
        tuple(
            p.commutation[i][j] + d[i].n1 * d[j].n2 - d[j].n1 * d[i].n2
            for j in range(k)
        )
        for i in range(k)
    )
    q = GradedPresentation(
        name=p.name, names=p.names, degrees=p.degrees, commutation=c, star=p.star, source=p
    )
    object.__setattr__(p, "_quantized", q)
    return q


def word_twist_exponent(p: GradedPresentation, word: Word) -> int:
    """``sum_{s<t} n1(g_s) n2(g_t)`` over the positions of a sorted word."""
    d = p.degrees
    total = 0
    running_n1 = 0
    for i, e in enumerate(word):
        if not e:
            continue
        di = d[i]
        # copies of g_i after earlier generators, then pairs among the copies
        total += running_n1 * e * di.n2 + (e * (e - 1) // 2) * di.n1 * di.n2
        running_n1 += e * di.n1
    return total


def quantize(a: Element) -> Element:
    """The quantization map ``A -> A_L``, ``ul(w) = L^{-S(w)} w``.

    ``S(w)`` is :func:`word_twist_exponent`.  With this factor the identity
    ``ul a * ul b = L^{n1(a) n2(b)} ul(ab)`` holds for the intrinsic product of
    ``A_L``; when ``S`` vanishes on every basis word the map is the identity.
    """
    p = a.presentation
    q = quantize_presentation(p)
    out = {}
    for w, s in a.terms.items():
        k = word_twist_exponent(p, w)
        out[w] = s * lam(-k) if k else s
    return Element._raw(q, out)


def dequantize(x: Element) -> Element:
    """Inverse of :func:`quantize`."""
    q = x.presentation
    if q.source is None:
        raise ValueError(f"{q.name} is not a quantized presentation")
    p = q.source
    out = {}
    for w, s in x.terms.items():
        k = word_twist_exponent(p, w)
        out[w] = s * lam(k) if k else s
    return Element._raw(p, out)


def star_product(a: Element, b: Element) -> Element:
    """``ul a * ul b = L^{n1(a) n2(b)} ul(ab)``, extended over homogeneous parts.

    Inputs live in the undeformed algebra; the result lives in its quantization.
    """
    a._check(b)
    if a.presentation.deformed:
        raise ValueError("star_product expects elements of the undeformed source algebra")
    total = quantize_presentation(a.presentation).zero()
    for da, pa in a.homogeneous_parts().items():
        for db, pb in b.homogeneous_parts().items():
            total = total + quantize(multiply(pa, pb)).scale(lam(da.n1 * db.n2))
    return total


def involution(a: Element) -> Element:
    """Antilinear anti-automorphism generated by the star pairing of generators."""
    p = a.presentation
    if p.star is None:
        raise ValueError(f"{p.name} has no involution pairing")
    star = p.star
    total = p.zero()
    for w, s in a.terms.items():
        seq = [i for i, e in enumerate(w) for _ in range(e)]
        starred = [star[i] for i in reversed(seq)]
        total = total + normal_order(p, starred).scale(s.conj())
    return total


def star_involution(x: Element) -> Element:
    """Deformed involution on ``A_L``: ``(ul a)* = L^{n1 n2} ul(a*)`` per homogeneous part."""
    q = x.presentation
    if q.source is None:
        raise ValueError("star_involution acts on a quantized presentation")
    a = dequantize(x)
    total = q.zero()
    for d, part in a.homogeneous_parts().items():
        total = total + quantize(involution(part)).scale(lam(d.n1 * d.n2))
    return total


def involution_identity_holds() -> bool:
    """Exponent bookkeeping behind ``(ul a * ul b)* = (ul b)* * (ul a)*``.

    With ``deg a = (p1,p2)`` and ``deg b = (q1,q2)`` the left side carries
    ``-p1 q2 + (p1+q1)(p2+q2)`` and the right ``q1 q2 + p1 p2 + q1 p2``.
    """
    p1, p2, q1, q2 = degree_variables("p1 p2 q1 q2")
    lhs = -p1 * q2 + (p1 + q1) * (p2 + q2)
    rhs = q1 * q2 + p1 * p2 + q1 * p2
    return form_identity_check(lhs, rhs)


def all_words(p: GradedPresentation, max_length: int, min_length: int = 0) -> list[Word]:
    """Every normal-ordered word with length in ``[min_length, max_length]``."""
    k = p.ngens
    out: list[Word] = []

    def rec(prefix: list[int], remaining: int):
        if len(prefix) == k - 1:
            out.append(tuple(prefix) + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + [e], remaining - e)

    for n in range(min_length, max_length + 1):
        if k == 0:
            if n == 0:
                out.append(())
            continue
        rec([], n)
    return out


def word_element(p: GradedPresentation, word: Word, coeff=ONE) -> Element:
    return Element._raw(p, {tuple(word): Scalar.coerce(coeff)} if coeff else {})
