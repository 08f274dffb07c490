"""Exact coefficients: Laurent polynomials in a unimodular parameter L.

A :class:`Scalar` is a finite sum ``sum_k c_k L^k`` with Gaussian-rational
coefficients ``c_k = a + b i``.  Since ``|L| = 1`` the involution sends
``L`` to ``L^-1`` and conjugates the coefficients.

:class:`DegreeForm` is an integer polynomial in named degree variables.  It is
used for symbolic L-exponents, so that an identity between two forms holds for
every choice of integer degrees at once.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

__all__ = [
    "Gaussian",
    "Scalar",
    "DegreeForm",
    "L",
    "ONE",
    "ZERO",
    "I",
    "lam",
    "scalar_mul",
    "scalar_conj",
    "degree_variables",
    "form_identity_check",
]


class Gaussian:
    """Gaussian rational ``re + im*i`` with :class:`~fractions.Fraction` parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def coerce(cls, x) -> "Gaussian":
        if isinstance(x, Gaussian):
            return x
        if isinstance(x, (int, Rational)):
            return cls(x, 0)
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __add__(self, other):
        other = Gaussian.coerce(other)
        return Gaussian(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-Gaussian.coerce(other))

    def __mul__(self, other):
        other = Gaussian.coerce(other)
        return Gaussian(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "Gaussian":
        return Gaussian(self.re, -self.im)

    def inverse(self) -> "Gaussian":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("Gaussian rational division by zero")
        return Gaussian(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * Gaussian.coerce(other).inverse()

    def __eq__(self, other):
        try:
            other = Gaussian.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"Gaussian({self.re}, {self.im})"

    def __str__(self):
        return render_gaussian(self)


def _frac(x: Fraction) -> str:
    return str(x)


def render_gaussian(g: Gaussian) -> str:
    """Render in the expression grammar: ``3/2``, ``-i``, ``(1+2*i)``."""
    if not g.im:
        return _frac(g.re)
    if g.im == 1:
        imag = "i"
    elif g.im == -1:
        imag = "-i"
    else:
        imag = f"{_frac(g.im)}*i"
    if not g.re:
        return imag
    sign = "" if imag.startswith("-") else "+"
    return f"({_frac(g.re)}{sign}{imag})"


class Scalar:
    """Element of the Laurent ring ``Q(i)[L, L^-1]``, stored canonically.

    ``terms`` maps the exponent of ``L`` to a nonzero :class:`Gaussian`.
    Instances are treated as immutable.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean = {}
        if terms:
            for k, c in terms.items():
                c = Gaussian.coerce(c)
                if c:
                    clean[int(k)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Scalar":
        s = cls.__new__(cls)
        s.terms = terms
        s._hash = None
        return s

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        g = Gaussian.coerce(x)
        return cls._raw({0: g} if g else {})

    @classmethod
    def monomial(cls, k: int, coeff=1) -> "Scalar":
        return cls({k: coeff})

    # ring structure -----------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            if k in out:
                s = out[k] + c
                if s:
                    out[k] = s
                else:
                    del out[k]
            else:
                out[k] = c
        return Scalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if len(other.terms) == 1 and len(self.terms) == 1:
            (k1, c1), = self.terms.items()
            (k2, c2), = other.terms.items()
            c = c1 * c2
            return Scalar._raw({k1 + k2: c} if c else {})
        out: dict[int, Gaussian] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = k1 + k2
                out[k] = out[k] + c1 * c2 if k in out else c1 * c2
        return Scalar._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def inverse(self) -> "Scalar":
        """Inverse of a unit; only monomials ``c L^k`` are units."""
        if not self.is_monomial():
            raise ZeroDivisionError(f"{self} is not a unit of the Laurent ring")
        (k, c), = self.terms.items()
        return Scalar._raw({-k: c.inverse()})

    def __truediv__(self, other):
        return self * Scalar.coerce(other).inverse()

    def conj(self) -> "Scalar":
        return Scalar._raw({-k: c.conjugate() for k, c in self.terms.items()})

    # comparison ------------------------------------------------------------

    def __eq__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # evaluation ----------------------------------------------------------------

    def at_one(self) -> Gaussian:
        """Classical limit ``L = 1``."""
        total = Gaussian()
        for c in self.terms.values():
            total = total + c
        return total

    def evaluate(self, theta) -> complex:
        """Numeric value at ``L = exp(2 pi i theta)``.

        For rational ``theta`` the exponent is reduced exactly before calling
        ``exp`` so large powers cost nothing in accuracy.
        """
        total = 0j
        for k, c in self.terms.items():
            if isinstance(theta, Rational):
                phase = Fraction(k) * Fraction(theta)
                phase -= math.floor(phase)
                z = cmath.exp(2j * math.pi * float(phase))
            else:
                z = cmath.exp(2j * math.pi * k * theta)
            total += complex(c) * z
        return total

    # display ---------------------------------------------------------------------

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        return render_scalar(self)


def _render_term(k: int, c: Gaussian) -> str:
    if c.re < 0 or (not c.re and c.im < 0):
        return "-" + _render_term(k, -c)
    if k == 0:
        return render_gaussian(c)
    power = "L" if k == 1 else f"L^{k}"
    if c == 1:
        return power
    if c == -1:
        return "-" + power
    return f"{render_gaussian(c)}*{power}"


def render_scalar(s: Scalar) -> str:
    if not s.terms:
        return "0"
    out = ""
    for k in sorted(s.terms, reverse=True):
        piece = _render_term(k, s.terms[k])
        if not out:
            out = piece
        elif piece.startswith("-"):
            out += " - " + piece[1:]
        else:
            out += " + " + piece
    return out


ZERO = Scalar()
ONE = Scalar({0: 1})
I = Scalar({0: Gaussian(0, 1)})
L = Scalar({1: 1})


def lam(k: int) -> Scalar:
    """``L^k``."""
    return Scalar._raw({int(k): Gaussian(1)})


def scalar_mul(s: Scalar, t: Scalar) -> Scalar:
    return Scalar.coerce(s) * Scalar.coerce(t)


def scalar_conj(s: Scalar) -> Scalar:
    return Scalar.coerce(s).conj()


# ---------------------------------------------------------------------------
# symbolic degree forms


class DegreeForm:
    """Integer polynomial over a declared tuple of variable names.

    ``terms`` maps an exponent tuple (aligned with ``variables``) to a nonzero
    integer.  Forms over different variable tuples do not mix.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple, int] | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != n:
                raise ValueError("monomial length does not match variables")
            if c:
                clean[mono] = clean.get(mono, 0) + int(c)
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def constant(cls, variables, c: int) -> "DegreeForm":
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def var(cls, variables, name: str) -> "DegreeForm":
        variables = tuple(variables)
        mono = tuple(1 if v == name else 0 for v in variables)
        if name not in variables:
            raise ValueError(f"unknown degree variable {name!r}")
        return cls(variables, {mono: 1})

    def _lift(self, other) -> "DegreeForm":
        if isinstance(other, DegreeForm):
            if other.variables != self.variables:
                raise ValueError(
                    f"variable-set mismatch: {self.variables} vs {other.variables}"
                )
            return other
        if isinstance(other, int):
            return DegreeForm.constant(self.variables, other)
        raise TypeError(f"cannot combine DegreeForm with {type(other).__name__}")

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return DegreeForm(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return DegreeForm(self.variables, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: dict[tuple, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return DegreeForm(self.variables, out)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, (DegreeForm, int)):
            return NotImplemented
        try:
            other = self._lift(other)
        except ValueError:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def evaluate(self, values: Mapping[str, int]) -> int:
        """Evaluate at integers, or at forms of another ring (composition)."""
        total = 0
        for mono, c in self.terms.items():
            t = c
            for v, e in zip(self.variables, mono):
                for _ in range(e):
                    t = t * values[v]
            total = total + t
        return total

    def substitute(self, mapping: Mapping[str, "DegreeForm | int"]) -> "DegreeForm":
        """Replace variables by forms (over this form's variable tuple)."""
        result = DegreeForm(self.variables)
        for mono, c in self.terms.items():
            t = DegreeForm.constant(self.variables, c)
            for v, e in zip(self.variables, mono):
                if not e:
                    continue
                image = mapping.get(v, DegreeForm.var(self.variables, v))
                image = self._lift(image)
                for _ in range(e):
                    t = t * image
            result = result + t
        return result

    def __repr__(self):
        return f"DegreeForm({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for mono in sorted(self.terms, reverse=True):
            c = self.terms[mono]
            factors = []
            for v, e in zip(self.variables, mono):
                if e == 1:
                    factors.append(v)
                elif e:
                    factors.append(f"{v}^{e}")
            body = "*".join(factors)
            if not body:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(body)
            elif c == -1:
                pieces.append("-" + body)
            else:
                pieces.append(f"{c}*{body}")
        out = pieces[0]
        for p in pieces[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def degree_variables(names: str | Iterable[str]) -> tuple[DegreeForm, ...]:
    """Generators of a form ring, e.g. ``p1, p2 = degree_variables("p1 p2")``."""
    if isinstance(names, str):
        names = names.split()
    names = tuple(names)
    return tuple(DegreeForm.var(names, n) for n in names)


def form_identity_check(f: DegreeForm, g: DegreeForm) -> bool:
    """True iff ``f - g`` is the zero polynomial.

    Raises ``ValueError`` when the two forms live over different variable sets.
    """
    if f.variables != g.variables:
        raise ValueError(f"variable-set mismatch: {f.variables} vs {g.variables}")
    return not (f - g)
