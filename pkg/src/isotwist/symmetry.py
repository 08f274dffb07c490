"""Classical Lie symmetry acting on a graded presentation.

Chevalley generators ``h_i`` act diagonally through weights, ``x_i^+-`` act as
derivations given on generators.  Words in the symbols act as operator
products: the rightmost symbol is applied first.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Mapping, Sequence

from .algebra import (
    DegreeVector, Element, GradedPresentation, all_words, degree_of, normal_order, word_element,
)
from .report import CheckResult, result
from .scalars import ONE, Scalar, lam

__all__ = [
    "CartanData",
    "H",
    "X",
    "K",
    "GeneratorAction",
    "act_classical",
    "apply_operator",
    "check_lie_relations",
    "check_serre",
    "render_word",
]


@dataclass(frozen=True)
class CartanData:
    """Cartan matrix with the two indices selecting ``h_1, h_2`` (1-based)."""

    matrix: tuple[tuple[int, ...], ...]
    pick: tuple[int, int] = (1, 2)

    def __post_init__(self):
        r = len(self.matrix)
        if r < 2:
            raise ValueError("rank must be at least 2")
        if any(len(row) != r for row in self.matrix):
            raise ValueError("Cartan matrix must be square")
        for i in range(r):
            if self.matrix[i][i] != 2:
                raise ValueError("Cartan matrix diagonal entries must be 2")
            for j in range(r):
                if i == j:
                    continue
                if self.matrix[i][j] > 0:
                    raise ValueError("off-diagonal Cartan entries must be nonpositive")
                if (self.matrix[i][j] == 0) != (self.matrix[j][i] == 0):
                    raise ValueError("a_ij = 0 must imply a_ji = 0")
        a, b = self.pick
        if a == b or not (1 <= a <= r and 1 <= b <= r):
            raise ValueError(f"invalid pick-h indices {self.pick}")

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def a(self, i: int, j: int) -> int:
        return self.matrix[i - 1][j - 1]

    def alpha(self, i: int) -> int:
        """``a_{1i}`` with respect to the picked ``h_1``."""
        return self.a(self.pick[0], i)

    def beta(self, i: int) -> int:
        return self.a(self.pick[1], i)

    def shift(self, i: int, sign: int) -> DegreeVector:
        return DegreeVector(sign * self.alpha(i), sign * self.beta(i))


A2 = CartanData(((2, -1), (-1, 2)))


# -- Chevalley symbols -------------------------------------------------------


@dataclass(frozen=True)
class H:
    i: int

    def __str__(self):
        return f"H{self.i}"


@dataclass(frozen=True)
class X:
    i: int
    sign: int

    def __str__(self):
        return f"X{self.i}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class K:
    """Cartan exponential ``L^(c*H_i)``."""

    i: int
    c: int

    def __str__(self):
        return f"L^({self.c}*H{self.i})"


Symbol = H | X | K


def render_word(word: Sequence[Symbol]) -> str:
    return " ".join(str(s) for s in word) if word else "1"


def simplify_word(word: Iterable[Symbol]) -> tuple:
    """Merge adjacent Cartan exponentials with the same index, drop trivial ones."""
    out: list = []
    for s in word:
        if isinstance(s, K):
            if out and isinstance(out[-1], K) and out[-1].i == s.i:
                merged = K(s.i, out[-1].c + s.c)
                out.pop()
                if merged.c:
                    out.append(merged)
                continue
            if not s.c:
                continue
        out.append(s)
    return tuple(out)


# -- the action --------------------------------------------------------------


class GeneratorAction:
    """Chevalley generators acting on a presentation.

    ``rules[(i, sign)]`` maps generator indices to their images (Elements).
    ``cartan=None`` gives the abelian torus case with only ``H1, H2``.
    ``weights[g]`` lists the ``h_i`` eigenvalues of generator ``g``; for rank 2
    they are read off the bidegree.
    """

    def __init__(
        self,
        presentation: GradedPresentation,
        cartan: CartanData | None = None,
        rules: Mapping[tuple[int, int], Mapping[int, Element]] | None = None,
        weights: Sequence[Sequence[int]] | None = None,
    ):
        self.presentation = presentation
        self.cartan = cartan
        self.rank = cartan.rank if cartan else 2
        self.pick = cartan.pick if cartan else (1, 2)
        if weights is None:
            if self.rank != 2:
                raise ValueError("explicit weights are required for rank > 2")
            weights = []
            for d in presentation.degrees:
                w = [0, 0]
                w[self.pick[0] - 1] = d.n1
                w[self.pick[1] - 1] = d.n2
                weights.append(tuple(w))
        self.weights = tuple(tuple(w) for w in weights)
        if len(self.weights) != presentation.ngens or any(len(w) != self.rank for w in self.weights):
            raise ValueError("one weight vector of length rank per generator required")
        for g, d in enumerate(presentation.degrees):
            w = self.weights[g]
            if (w[self.pick[0] - 1], w[self.pick[1] - 1]) != (d.n1, d.n2):
                raise ValueError(f"weights of {presentation.names[g]} disagree with its bidegree")
        self.rules: dict[tuple[int, int], dict[int, Element]] = {}
        for key, table in (rules or {}).items():
            if cartan is None:
                raise ValueError("x-generator rules need Cartan data")
            i, sign = key
            if not 1 <= i <= self.rank or sign not in (1, -1):
                raise ValueError(f"invalid Chevalley generator {key}")
            self.rules[(i, sign)] = {}
            for g, image in table.items():
                if image.presentation != presentation:
                    raise ValueError("rule image in the wrong presentation")
                self._validate_rule(i, sign, g, image)
                if image:
                    self.rules[(i, sign)][g] = image
        self._cache: dict = {}

    def _validate_rule(self, i: int, sign: int, g: int, image: Element):
        if not image:
            return
        p = self.presentation
        expected = p.degrees[g] + self.cartan.shift(i, sign)
        deg = degree_of(image)
        if deg != expected:
            raise ValueError(
                f"degree-shift inconsistency: x{i}{'+' if sign > 0 else '-'} maps "
                f"{p.names[g]} {p.degrees[g]} to an element of degree "
                f"{deg if deg is not None else 'mixed'}, expected {expected}"
            )
        column = [sign * self.cartan.a(j, i) for j in range(1, self.rank + 1)]
        for w in image.terms:
            got = self.word_weight(w)
            want = tuple(a + b for a, b in zip(self.weights[g], column))
            if got != want:
                raise ValueError(f"weight-shift inconsistency for x{i} on {p.names[g]}")

    # symbols -------------------------------------------------------------

    def symbols(self) -> list[Symbol]:
        syms: list[Symbol] = [H(i) for i in range(1, self.rank + 1)]
        if self.cartan is not None:
            for i in range(1, self.rank + 1):
                syms += [X(i, 1), X(i, -1)]
        return syms

    def x_symbols(self) -> list[X]:
        return [s for s in self.symbols() if isinstance(s, X)]

    def check_symbol(self, s: Symbol):
        if isinstance(s, (H, K)):
            if not 1 <= s.i <= self.rank:
                raise KeyError(f"undefined symbol {s}")
        elif isinstance(s, X):
            if self.cartan is None or not 1 <= s.i <= self.rank:
                raise KeyError(f"undefined symbol {s}")
        else:
            raise KeyError(f"undefined symbol {s!r}")

    def word_weight(self, word) -> tuple[int, ...]:
        out = [0] * self.rank
        for g, e in enumerate(word):
            if e:
                wg = self.weights[g]
                for k in range(self.rank):
                    out[k] += e * wg[k]
        return tuple(out)

    # action on basis words -------------------------------------------------

    def _on_word(self, s: Symbol, word) -> Element:
        p = self.presentation
        if isinstance(s, H):
            return word_element(p, word, self.word_weight(word)[s.i - 1])
        if isinstance(s, K):
            return word_element(p, word, lam(s.c * self.word_weight(word)[s.i - 1]))
        key = (s, word)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        table = self.rules.get((s.i, s.sign), {})
        seq = [g for g, e in enumerate(word) for _ in range(e)]
        total = p.zero()
        for pos, g in enumerate(seq):
            image = table.get(g)
            if image is None:
                continue
            left = normal_order(p, seq[:pos])
            right = normal_order(p, seq[pos + 1:])
            total = total + left * image * right
        self._cache[key] = total
        return total

    def act_symbol(self, s: Symbol, a: Element) -> Element:
        self.check_symbol(s)
        if a.presentation != self.presentation:
            raise ValueError("element does not belong to the acted-upon presentation")
        return a.map_words(lambda w: self._on_word(s, w))

    def act(self, word: Sequence[Symbol], a: Element) -> Element:
        for s in reversed(tuple(word)):
            a = self.act_symbol(s, a)
        return a


def act_classical(word: Sequence[Symbol] | Symbol, a: Element, action: GeneratorAction) -> Element:
    """Apply a word of Chevalley symbols (rightmost first) to an element of A."""
    if isinstance(word, (H, X, K)):
        word = (word,)
    return action.act(word, a)


OpTerms = Sequence[tuple[Scalar, tuple]]


def apply_operator(terms: OpTerms, a: Element, act) -> Element:
    """Apply a linear combination of symbol words using ``act(word, element)``."""
    total = a.presentation.zero()
    for coeff, word in terms:
        total = total + act(word, a).scale(coeff)
    return total


def _commutator(w1: tuple, w2: tuple) -> list:
    return [(ONE, w1 + w2), (-ONE, w2 + w1)]


def _check_identity(check_id: str, lhs: OpTerms, rhs: OpTerms, words, action: GeneratorAction) -> CheckResult:
    p = action.presentation
    combined = list(lhs) + [(-c, w) for c, w in rhs]
    for w in words:
        a = word_element(p, w)
        diff = apply_operator(combined, a, action.act)
        if diff:
            return result(check_id, False, counterexample=f"on {a}: lhs - rhs = {diff}")
    return result(check_id, True, detail=f"{len(words)} words")


def check_lie_relations(action: GeneratorAction, cutoff: int = 5) -> list[CheckResult]:
    """``[h_i,h_j]=0``, ``[h_i,x_j^+-]=+-a_ij x_j^+-``, ``[x_i^+,x_j^-]=delta_ij h_i``.

    Operator identities on all normal-ordered words of length at most ``cutoff``.
    """
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    words = all_words(action.presentation, cutoff)
    r = action.rank
    out = []
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            out.append(_check_identity(
                f"lie.[H{i},H{j}]", _commutator((H(i),), (H(j),)), [], words, action))
    if action.cartan is None:
        return out
    cd = action.cartan
    for i in range(1, r + 1):
        for j in range(1, r + 1):
            for sign in (1, -1):
                xj = X(j, sign)
                out.append(_check_identity(
                    f"lie.[H{i},{xj}]", _commutator((H(i),), (xj,)),
                    [(Scalar.coerce(sign * cd.a(i, j)), (xj,))], words, action))
    for i in range(1, r + 1):
        for j in range(1, r + 1):
            rhs = [(ONE, (H(i),))] if i == j else []
            out.append(_check_identity(
                f"lie.[X{i}+,X{j}-]", _commutator((X(i, 1),), (X(j, -1),)), rhs, words, action))
    return out


def serre_terms(cd: CartanData, i: int, j: int, sign: int) -> list:
    """``sum_k (-1)^k C(n,k) x_i^k x_j x_i^(n-k)`` with ``n = 1 - a_ij``."""
    n = 1 - cd.a(i, j)
    xi, xj = X(i, sign), X(j, sign)
    return [
        (Scalar.coerce((-1) ** k * comb(n, k)), (xi,) * k + (xj,) + (xi,) * (n - k))
        for k in range(n + 1)
    ]


def check_serre(action: GeneratorAction, cutoff: int = 5) -> list[CheckResult]:
    """Signed Serre relations for all ``i != j`` and both signs."""
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    if action.cartan is None:
        return []
    cd = action.cartan
    words = all_words(action.presentation, cutoff)
    out = []
    for i in range(1, cd.rank + 1):
        for j in range(1, cd.rank + 1):
            if i == j:
                continue
            for sign in (1, -1):
                tag = "+" if sign > 0 else "-"
                out.append(_check_identity(
                    f"serre.{i}{j}{tag}", serre_terms(cd, i, j, sign), [], words, action))
    return out
