"""Truncated spectral triple of the two-torus and its deformation.

Hilbert basis ``e_{n,m} (x) s`` with ``|n|, |m| <= N`` and spinor index
``s in {0, 1}``; ``D = n sigma_1 + m sigma_2``.  A word of degree ``(a1, a2)``
acts classically as the mode shift ``e_{n,m} -> e_{n+a1, m+a2}``; the deformed
representation composes with ``Psi^-1`` and picks up ``L^(a1 m)``.

Truncation is by window, not by wraparound: every operator carries the set of
basis columns on which its matrix agrees with the infinite-dimensional
operator, and identities are only asserted there.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import eigsh

from .algebra import (
    Element, GradedPresentation, dequantize, multiply, quantize, quantize_presentation, star_involution,
)
from .report import CheckResult, result
from .scalars import Scalar
from .symmetry import H, K

SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)

TOL = 1e-12


@dataclass(frozen=True)
class SpectralModel:
    """Window ``[-cutoff, cutoff]^2``; elements may shift modes by at most ``budget``."""

    presentation: GradedPresentation
    cutoff: int = 8
    theta: Fraction = Fraction(1, 5)
    deformed: bool = True
    budget: int | None = None

    def __post_init__(self):
        if self.cutoff < 1:
            raise ValueError("cutoff must be >= 1")
        object.__setattr__(self, "theta", Fraction(self.theta))
        if self.budget is None:
            object.__setattr__(self, "budget", self.cutoff // 2)
        p = self.presentation.source or self.presentation
        if any(any(row) for row in p.commutation):
            raise ValueError("the classical mode-shift representation needs a commutative algebra")

    @property
    def source(self) -> GradedPresentation:
        return self.presentation.source or self.presentation

    @property
    def side(self) -> int:
        return 2 * self.cutoff + 1

    @property
    def dim(self) -> int:
        return 2 * self.side ** 2

    def index(self, n: int, m: int, s: int) -> int:
        N = self.cutoff
        return ((n + N) * self.side + (m + N)) * 2 + s

    @cached_property
    def modes(self) -> np.ndarray:
        """``(n, m, s)`` for every basis index."""
        N = self.cutoff
        r = np.arange(-N, N + 1)
        n, m, s = np.meshgrid(r, r, np.arange(2), indexing="ij")
        return np.stack([n.ravel(), m.ravel(), s.ravel()], axis=1)

    def lam(self, k) -> np.ndarray:
        """``exp(2 pi i theta k)`` with the phase reduced exactly (k integer array)."""
        k = np.asarray(k, dtype=np.int64)
        num, den = self.theta.numerator, self.theta.denominator
        phase = np.mod(k * num, den) / den
        return np.exp(2j * np.pi * phase)

    def scalar(self, s: Scalar) -> complex:
        return s.evaluate(self.theta)

    @cached_property
    def dirac(self) -> "WindowedOperator":
        N = self.cutoff
        blocks = []
        for n in range(-N, N + 1):
            for m in range(-N, N + 1):
                blocks.append(n * SIGMA1 + m * SIGMA2)
        mat = sp.block_diag(blocks, format="csr")
        return WindowedOperator(mat, np.ones(self.dim, dtype=bool), self)

    def cartan(self, i: int) -> "WindowedOperator":
        """``h_i`` acting diagonally by the mode component."""
        diag = self.modes[:, i - 1].astype(complex)
        return WindowedOperator(sp.diags(diag, format="csr"), np.ones(self.dim, dtype=bool), self)

    def cartan_exp(self, i: int, c: int) -> "WindowedOperator":
        diag = self.lam(c * self.modes[:, i - 1])
        return WindowedOperator(sp.diags(diag, format="csr"), np.ones(self.dim, dtype=bool), self)

    def symbol(self, s) -> "WindowedOperator":
        if isinstance(s, H):
            return self.cartan(s.i)
        if isinstance(s, K):
            return self.cartan_exp(s.i, s.c)
        raise KeyError(f"{s} does not act on the torus Hilbert space")

    def basis_vector(self, n: int, m: int, s: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=complex)
        v[self.index(n, m, s)] = 1
        return v

    def shift(self, a1: int, a2: int, phase_per_m: int = 0, coeff: complex = 1) -> "WindowedOperator":
        """``e_{n,m} -> coeff * L^(phase_per_m * m) e_{n+a1, m+a2}``."""
        n, m, s = self.modes.T
        tn, tm = n + a1, m + a2
        N = self.cutoff
        ok = (np.abs(tn) <= N) & (np.abs(tm) <= N)
        cols = np.nonzero(ok)[0]
        rows = ((tn[ok] + N) * self.side + (tm[ok] + N)) * 2 + s[ok]
        vals = coeff * self.lam(phase_per_m * m[ok])
        mat = sp.csr_matrix((vals, (rows, cols)), shape=(self.dim, self.dim))
        return WindowedOperator(mat, ok, self)

    def rep(self, x: Element) -> "WindowedOperator":
        """Undeformed ``mu`` on ``A``, deformed ``mu(Psi^-1 .)`` on ``A_L``."""
        deformed = x.presentation.source is not None
        if deformed and not self.deformed:
            raise ValueError("deformed element in an undeformed model")
        a = dequantize(x) if deformed else x
        total = WindowedOperator(sp.csr_matrix((self.dim, self.dim), dtype=complex),
                                 np.ones(self.dim, dtype=bool), self)
        for w, s in a.terms.items():
            d = a.presentation.word_degree(w)
            if max(abs(d.n1), abs(d.n2)) > self.budget:
                raise ValueError(
                    f"shift {d} exceeds the budget {self.budget} of the window N={self.cutoff}"
                )
            total = total + self.shift(d.n1, d.n2, d.n1 if deformed else 0, self.scalar(s))
        return total


def rep_deformed(x: Element, model: SpectralModel) -> "WindowedOperator":
    if x.presentation.source is None:
        x = quantize(x)
    return model.rep(x)


@dataclass
class WindowedOperator:
    """Sparse matrix plus the columns on which it is exact."""

    matrix: sp.csr_matrix
    valid: np.ndarray
    model: SpectralModel = field(repr=False)

    def __add__(self, other: "WindowedOperator") -> "WindowedOperator":
        return WindowedOperator((self.matrix + other.matrix).tocsr(), self.valid & other.valid, self.model)

    def __sub__(self, other: "WindowedOperator") -> "WindowedOperator":
        return WindowedOperator((self.matrix - other.matrix).tocsr(), self.valid & other.valid, self.model)

    def scale(self, c: complex) -> "WindowedOperator":
        return WindowedOperator((self.matrix * c).tocsr(), self.valid.copy(), self.model)

    def __matmul__(self, other: "WindowedOperator") -> "WindowedOperator":
        """Product; a column stays valid when every basis vector it reaches is valid for ``self``."""
        mat = (self.matrix @ other.matrix).tocsr()
        pattern = other.matrix.copy().tocsc()
        pattern.data = np.ones_like(pattern.data, dtype=float)
        bad_rows = (~self.valid).astype(float)
        reaches_bad = np.asarray(pattern.T @ bad_rows).ravel() > 0
        return WindowedOperator(mat, other.valid & ~reaches_bad, self.model)

    def commutator(self, other: "WindowedOperator") -> "WindowedOperator":
        return (self @ other) - (other @ self)

    def adjoint(self) -> "WindowedOperator":
        return WindowedOperator(self.matrix.conj().T.tocsr(), self.valid.copy(), self.model)

    def restricted(self, mask: np.ndarray | None = None) -> sp.csr_matrix:
        mask = self.valid if mask is None else mask
        return self.matrix[:, np.nonzero(mask)[0]]

    def max_abs(self, mask: np.ndarray | None = None) -> float:
        m = self.restricted(mask)
        return float(np.abs(m.data).max()) if m.nnz else 0.0

    def norm(self, mask: np.ndarray | None = None) -> float:
        """Operator norm on the span of the valid columns."""
        m = self.restricted(mask)
        if m.nnz == 0:
            return 0.0
        gram = (m.conj().T @ m).tocsc()
        if gram.shape[0] <= 64:
            return float(np.sqrt(max(np.linalg.eigvalsh(gram.toarray()).max(), 0.0)))
        top = eigsh(gram, k=1, which="LA", return_eigenvectors=False, tol=1e-14)
        return float(np.sqrt(max(top[0], 0.0)))

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ v


# -- checks -------------------------------------------------------------------------


def _residual_result(cid, residual, ok, detail=None, counterexample=None):
    return CheckResult(cid, "pass" if ok else "fail", counterexample, residual, detail)


def check_isometry(model: SpectralModel, symbols=None) -> list[CheckResult]:
    """``[D, rep(T)] = 0`` for the twisted torus symmetry; mode shifts as negative control."""
    D = model.dirac
    symbols = symbols or [H(1), H(2), K(1, 1), K(2, -1)]
    out = []
    for s in symbols:
        r = D.commutator(model.symbol(s)).max_abs()
        out.append(_residual_result(f"spectral.isometry.{s}", r, r == 0.0))
    u = rep_deformed(model.source.gen(model.source.names[0]), model)
    r = D.commutator(u).max_abs()
    out.append(_residual_result(
        f"spectral.isometry-negative-control.{model.source.names[0]}", r, r >= 1 - TOL,
        detail="a mode shift must not commute with D",
    ))
    return out


def commutator_norm(model: SpectralModel, x: Element) -> float:
    return model.dirac.commutator(model.rep(x)).norm()


def check_boundedness_and_isospectrality(model: SpectralModel, generators=("u", "v"),
                                         cutoffs=(4, 8, 16)) -> list[CheckResult]:
    p = model.source
    out = []
    for g in generators:
        values = {}
        for N in cutoffs:
            dm = SpectralModel(p, N, model.theta, True)
            um = SpectralModel(p, N, model.theta, False)
            values[N] = (commutator_norm(dm, quantize(p.gen(g))), commutator_norm(um, p.gen(g)))
        if model.cutoff not in values:
            values[model.cutoff] = (
                commutator_norm(model, quantize(p.gen(g))),
                commutator_norm(SpectralModel(p, model.cutoff, model.theta, False), p.gen(g)),
            )
        deformed, undeformed = values[model.cutoff]
        r = max(abs(deformed - 1.0), abs(undeformed - 1.0))
        out.append(_residual_result(f"spectral.commutator-norm.{g}", r, r <= TOL,
                                    detail=f"||[D, rep(ul {g})]|| = {deformed:.15f} at N={model.cutoff}"))
        spread = max(abs(a - 1.0) for pair in values.values() for a in pair)
        out.append(_residual_result(f"spectral.commutator-norm-cutoffs.{g}", spread, spread <= TOL,
                                    detail="N in " + ",".join(map(str, cutoffs))))
    unit = commutator_norm(model, quantize(p.one()))
    out.append(_residual_result("spectral.commutator-norm.unit", unit, unit == 0.0))
    ev_def = np.sort(np.linalg.eigvalsh(model.dirac.matrix.toarray()))
    undeformed = SpectralModel(p, model.cutoff, model.theta, False)
    ev_und = np.sort(np.linalg.eigvalsh(undeformed.dirac.matrix.toarray()))
    N = model.cutoff
    closed = np.sort([sgn * np.hypot(n, m) for n in range(-N, N + 1) for m in range(-N, N + 1) for sgn in (1, -1)])
    r1 = float(np.abs(ev_def - ev_und).max())
    r2 = float(np.abs(ev_def - closed).max())
    out.append(_residual_result("spectral.isospectral", r1, r1 == 0.0,
                                detail=f"{len(ev_def)} eigenvalues"))
    out.append(_residual_result("spectral.dirac-spectrum-closed-form", r2, r2 <= 1e-10,
                                detail="+-sqrt(n^2+m^2)"))
    herm = abs(model.dirac.matrix - model.dirac.matrix.conj().T).max()
    out.append(_residual_result("spectral.dirac-hermitian", float(herm), herm == 0))
    return out


def check_torus_relation(model: SpectralModel, first="u", second="v") -> list[CheckResult]:
    """``rep(u) rep(v) = L rep(v) rep(u)`` with ``L`` taken from the quantized commutation matrix."""
    p = model.source
    q = quantize_presentation(p)
    c = q.commutation[q.index(first)][q.index(second)]
    a, b = model.rep(quantize(p.gen(first))), model.rep(quantize(p.gen(second)))
    diff = (a @ b) - (b @ a).scale(model.lam(c))
    r = diff.max_abs()
    return [_residual_result(f"spectral.torus-relation.{first}{second}", r, r <= TOL,
                             detail=f"rep({first})rep({second}) = L^{c} rep({second})rep({first})")]


def _random_words(p, rng, count, max_len):
    from .rng import random_homogeneous

    return [random_homogeneous(rng, p, max_len) for _ in range(count)]


def check_representation(model: SpectralModel, trials=50, max_degree=2, seed=0) -> list[CheckResult]:
    """Homomorphism and involution of ``rep`` on ``A_L``, plus the exact-vs-float oracle."""
    from .rng import SplitMix64, random_scalar

    p = model.source
    rng = SplitMix64(seed).fork("spectral.representation")
    hom = inv = 0.0
    bad_h = bad_i = None
    max_len = max(1, min(max_degree, model.budget // 2))
    for _ in range(trials):
        a, b = _random_words(p, rng, 2, max_len)
        x, y = quantize(a), quantize(b)
        lhs = model.rep(multiply(x, y))
        rhs = model.rep(x) @ model.rep(y)
        mask = lhs.valid & rhs.valid
        r = (lhs - rhs).max_abs(mask)
        if r > hom:
            hom = r
        if r > TOL and bad_h is None:
            bad_h = f"a={a}; b={b}"
        if p.star is not None:
            # the adjoint of a windowed shift is exact exactly where the reverse shift is
            s1 = model.rep(star_involution(x))
            r = (s1 - model.rep(x).adjoint()).max_abs(s1.valid)
            if r > inv:
                inv = r
            if r > TOL and bad_i is None:
                bad_i = f"a={a}"
    out = [
        _residual_result("spectral.rep-homomorphism", hom, hom <= TOL, counterexample=bad_h,
                         detail=f"{trials} pairs"),
    ]
    if p.star is not None:
        out.append(_residual_result("spectral.rep-involution", inv, inv <= TOL, counterexample=bad_i))
    worst = 0.0
    for _ in range(trials):
        s = random_scalar(rng, max_terms=3, max_power=40)
        exact = model.scalar(s)
        floaty = sum(complex(c) * np.exp(2j * np.pi * float(model.theta) * k) for k, c in s.terms.items())
        worst = max(worst, abs(exact - floaty))
    out.append(_residual_result("spectral.exact-vs-float", worst, worst <= TOL))
    return out


def vector_action(model: SpectralModel, word, v: np.ndarray) -> np.ndarray:
    for s in reversed(tuple(word)):
        v = model.symbol(s).apply(v)
    return v


def crossproduct_sides(model: SpectralModel, word, a: Element, n: int, m: int, s: int, hopf):
    """Three evaluations of ``T |> (ul a v)`` for ``v = e_{n,m} (x) s``.

    ``direct`` applies ``T`` after the deformed multiplication; ``lhs`` uses the
    classical coproduct after ``Psi^-1``; ``twisted`` uses the twisted coproduct
    on ``ul a (x) v`` followed by the deformed multiplication.
    """
    p = model.source
    v = model.basis_vector(n, m, s)
    x = quantize(a)
    direct = vector_action(model, word, model.rep(x).apply(v))
    lhs = np.zeros(model.dim, dtype=complex)
    for wa, ca in a.terms.items():
        d = p.word_degree(wa)
        psi_inv = model.lam(d.n1 * m)
        for c, (w1, w2) in hopf.coproduct_word(tuple(word), classical=True).terms:
            ta = hopf.act_classical(w1, Element(p, {wa: ca}))
            tv = vector_action(model, w2, v)
            classical = SpectralModel(p, model.cutoff, model.theta, False, model.budget)
            lhs += model.scalar(c) * psi_inv * classical.rep(ta).apply(tv)
    twisted = np.zeros(model.dim, dtype=complex)
    for c, (w1, w2) in hopf.coproduct_word(tuple(word)).terms:
        tx = hopf.act(w1, x)
        twisted += model.scalar(c) * model.rep(tx).apply(vector_action(model, w2, v))
    return direct, lhs, twisted


def check_crossproduct_equivariance(model: SpectralModel, hopf, words=None, elements=None,
                                    trials=20, seed=0) -> list[CheckResult]:
    from .rng import SplitMix64

    p = model.source
    words = words or [(H(1),), (H(2),), (H(1), H(2)), (K(1, 1), H(2))]
    elements = elements or [p.one(), p.gen(p.names[0]), p.gen(p.names[1]),
                            multiply(p.gen(p.names[0]), p.gen(p.names[1]))]
    rng = SplitMix64(seed).fork("spectral.crossproduct")
    lim = model.cutoff - model.budget
    out = []
    for word in words:
        worst = 0.0
        bad = None
        for a in elements:
            for _ in range(trials):
                n, m, s = rng.integer(-lim, lim), rng.integer(-lim, lim), rng.integer(0, 1)
                direct, lhs, twisted = crossproduct_sides(model, word, a, n, m, s, hopf)
                r = max(np.abs(direct - lhs).max(), np.abs(direct - twisted).max())
                if r > worst:
                    worst = float(r)
                if r > TOL and bad is None:
                    bad = f"a={a}, e_({n},{m}) spinor {s}"
        name = "".join(str(s) for s in word)
        out.append(_residual_result(f"spectral.crossproduct.{name}", worst, worst <= TOL, counterexample=bad))
    return out
