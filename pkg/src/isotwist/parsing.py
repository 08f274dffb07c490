"""Expression syntax and the two line-oriented input formats.

Expressions::

    expr    := ['-'] product (('+' | '-') ['-'] product)*
    product := power (['*' | '/'] power)*        # juxtaposition multiplies
    power   := atom ['^' ['-'] INT]
    atom    := INT | NAME | '(' expr ')'

``NAME`` is a generator of the presentation, else ``i`` or ``L``.  Unary minus
binds weaker than products, ``^`` binds tightest, division is by invertible
scalars only.

Presentation files::

    algebra T2
    generator u degree 1 0 star us
    commute u v 0
    deformed

Symmetry files::

    cartan 2
    2 -1
    -1 2
    pick-h 1 2
    x1+ : z2 -> z1
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .algebra import DegreeVector, Element, GradedPresentation, multiply, quantize_presentation
from .scalars import I, ONE, Gaussian, Scalar, lam, render_scalar
from .symmetry import CartanData, GeneratorAction


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, col: int = 1, source: str | None = None):
        self.message, self.line, self.col, self.source = message, line, col, source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{col}: {message}")


# -- rendering ------------------------------------------------------------------


def _word_key(w):
    return (sum(w), tuple(-e for e in w))


def render_word_monomial(p: GradedPresentation, word) -> str:
    factors = []
    for name, e in zip(p.names, word):
        if e == 1:
            factors.append(name)
        elif e:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


def render_element(a: Element) -> str:
    """Canonical text: terms by word length, generator order; parses back to ``a``."""
    if not a.terms:
        return "0"
    p = a.presentation
    pieces = []
    for w in sorted(a.terms, key=_word_key):
        s = a.terms[w]
        mono = render_word_monomial(p, w)
        coeff = render_scalar(s)
        if not mono:
            piece = coeff if len(s.terms) == 1 else f"({coeff})"
        elif s == ONE:
            piece = mono
        elif s == -ONE:
            piece = "-" + mono
        elif len(s.terms) == 1:
            piece = f"{coeff}*{mono}"
        else:
            piece = f"({coeff})*{mono}"
        pieces.append(piece)
    out = pieces[0]
    for piece in pieces[1:]:
        out += " - " + piece[1:] if piece.startswith("-") else " + " + piece
    return out


# -- expression parser ------------------------------------------------------------------

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_']*)|(\S)")


def _tokenize(text: str, line: int, col0: int, source):
    tokens = []
    for m in _TOKEN.finditer(text):
        kind = "int" if m.group(1) else "name" if m.group(2) else "op"
        value = m.group()
        if kind == "op" and value not in "+-*/^()":
            raise ParseError(f"unexpected character {value!r}", line, col0 + m.start(), source)
        tokens.append((kind, value, col0 + m.start()))
    tokens.append(("end", "", col0 + len(text)))
    return tokens


class _ExprParser:
    def __init__(self, text, p: GradedPresentation, line=1, col0=1, source=None):
        self.p = p
        self.line, self.source = line, source
        self.tokens = _tokenize(text, line, col0, source)
        self.i = 0

    def error(self, msg, tok=None):
        tok = tok or self.tokens[self.i]
        raise ParseError(msg, self.line, tok[2], self.source)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value or tok[0] == "end":
            self.error(f"expected {value!r}", tok)
        return tok

    def parse(self) -> Element:
        if self.peek()[0] == "end":
            self.error("empty expression")
        e = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return e

    def expr(self) -> Element:
        neg = False
        if self.peek()[1] == "-" and self.peek()[0] == "op":
            self.take()
            neg = True
        total = self.product()
        if neg:
            total = -total
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            neg = False
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.take()
                neg = True
            term = self.product()
            if neg:
                term = -term
            total = total + term if op == "+" else total - term
        return total

    def _starts_atom(self, tok) -> bool:
        return tok[0] in ("int", "name") or (tok[0] == "op" and tok[1] == "(")

    def product(self) -> Element:
        value = self.power()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                value = multiply(value, self.power())
            elif tok[0] == "op" and tok[1] == "/":
                self.take()
                value = self._divide(value, self.power(), tok)
            elif self._starts_atom(tok):
                value = multiply(value, self.power())
            else:
                return value

    def _as_scalar(self, e: Element):
        unit = self.p.unit_word()
        if not e.terms:
            return Scalar()
        if set(e.terms) != {unit}:
            return None
        return e.terms[unit]

    def _divide(self, num: Element, den: Element, tok) -> Element:
        s = self._as_scalar(den)
        if s is None:
            self.error("division by a non-scalar", tok)
        if not s:
            self.error("division by zero", tok)
        if len(s.terms) != 1:
            self.error("division by a scalar that is not a monomial", tok)
        return num.scale(s.inverse())

    def power(self) -> Element:
        tok = self.peek()
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.take()
                sign = -1
            nt = self.take()
            if nt[0] != "int":
                self.error("expected integer exponent", nt)
            n = sign * int(nt[1])
            if n >= 0:
                return base ** n
            s = self._as_scalar(base)
            if s is None or len(s.terms) != 1:
                self.error("negative powers need a monomial scalar base", tok)
            return Element.scalar(self.p, s.inverse() ** (-n))
        return base

    def atom(self) -> Element:
        tok = self.take()
        kind, value, _ = tok
        if kind == "int":
            return Element.scalar(self.p, Scalar({0: Gaussian(Fraction(int(value)))}))
        if kind == "name":
            if value in self.p.names:
                return Element.generator(self.p, value)
            if value == "i":
                return Element.scalar(self.p, I)
            if value == "L":
                return Element.scalar(self.p, lam(1))
            self.error(f"unknown generator {value!r}", tok)
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        self.error("expected a term" if kind != "end" else "unexpected end of expression", tok)


def parse_expression(text: str, presentation: GradedPresentation, line: int = 1, col: int = 1,
                     source: str | None = None) -> Element:
    """Parse ``text`` to a canonical Element of ``presentation``."""
    return _ExprParser(text, presentation, line, col, source).parse()


# -- presentation files -----------------------------------------------------------------


@dataclass(frozen=True)
class PresentationFile:
    name: str
    source: GradedPresentation
    deformed: bool = False

    @property
    def presentation(self) -> GradedPresentation:
        """The algebra the file denotes: the quantization of ``source`` when deformed."""
        return quantize_presentation(self.source) if self.deformed else self.source


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield n, body


def _int(tok: str, line: int, col: int, source) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected integer, got {tok!r}", line, col, source) from None


def _fields(body: str):
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", body)]


def parse_presentation(text: str, source: str | None = None) -> PresentationFile:
    name = None
    names: list[str] = []
    degrees: list[DegreeVector] = []
    stars: dict[str, tuple[str, int, int]] = {}
    commutes: list[tuple[str, str, int, int, int]] = []
    deformed = False
    for n, body in _lines(text):
        f = _fields(body)
        head, hc = f[0]
        if head == "algebra":
            if len(f) != 2:
                raise ParseError("expected 'algebra <name>'", n, hc, source)
            if name is not None:
                raise ParseError("duplicate algebra line", n, hc, source)
            name = f[1][0]
        elif head == "generator":
            if len(f) not in (5, 7) or f[2][0] != "degree" or (len(f) == 7 and f[5][0] != "star"):
                raise ParseError("expected 'generator <g> degree <n1> <n2> [star <g'>]'", n, hc, source)
            g = f[1][0]
            if g in names:
                raise ParseError(f"duplicate generator {g!r}", n, f[1][1], source)
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", g) or g in ("i", "L"):
                raise ParseError(f"invalid generator name {g!r}", n, f[1][1], source)
            names.append(g)
            degrees.append(DegreeVector(_int(f[3][0], n, f[3][1], source),
                                        _int(f[4][0], n, f[4][1], source)))
            if len(f) == 7:
                stars[g] = (f[6][0], n, f[6][1])
        elif head == "commute":
            if len(f) not in (3, 4):
                raise ParseError("expected 'commute <g> <h> [<int>]'", n, hc, source)
            c = _int(f[3][0], n, f[3][1], source) if len(f) == 4 else 0
            commutes.append((f[1][0], f[2][0], c, n, f[1][1]))
        elif head == "deformed":
            if len(f) != 1:
                raise ParseError("unexpected tokens after 'deformed'", n, f[1][1], source)
            deformed = True
        else:
            raise ParseError(f"unknown directive {head!r}", n, hc, source)
    if name is None:
        raise ParseError("missing 'algebra <name>' line", 1, 1, source)
    k = len(names)
    c = [[0] * k for _ in range(k)]
    seen = {}
    for g, h, val, n, col in commutes:
        for x in (g, h):
            if x not in names:
                raise ParseError(f"unknown generator {x!r}", n, col, source)
        i, j = names.index(g), names.index(h)
        if i == j:
            if val:
                raise ParseError("a generator commutes with itself (exponent must be 0)", n, col, source)
            continue
        key = (min(i, j), max(i, j))
        if key in seen and seen[key] != (i, j, val):
            prev = seen[key]
            if not (prev[0] == j and prev[1] == i and prev[2] == -val):
                raise ParseError(f"conflicting commute lines for {g}, {h}", n, col, source)
        seen[key] = (i, j, val)
        c[i][j] = val
        c[j][i] = -val
    star = None
    if stars:
        pairing = [None] * k
        for g, (h, n, col) in stars.items():
            if h not in names:
                raise ParseError(f"unknown generator {h!r}", n, col, source)
            i, j = names.index(g), names.index(h)
            for a, b in ((i, j), (j, i)):
                if pairing[a] is not None and pairing[a] != b:
                    raise ParseError(f"conflicting star pairing for {names[a]}", n, col, source)
                pairing[a] = b
        missing = [names[i] for i in range(k) if pairing[i] is None]
        if missing:
            raise ParseError(f"no star partner for {', '.join(missing)}", 1, 1, source)
        star = tuple(pairing)
    try:
        p = GradedPresentation(name, tuple(names), tuple(degrees), tuple(map(tuple, c)), star)
    except ValueError as e:
        raise ParseError(str(e), 1, 1, source) from None
    return PresentationFile(name, p, deformed)


def render_presentation(pf: PresentationFile) -> str:
    p = pf.source
    lines = [f"algebra {pf.name}"]
    for g, d in enumerate(p.degrees):
        line = f"generator {p.names[g]} degree {d.n1} {d.n2}"
        if p.star is not None:
            line += f" star {p.names[p.star[g]]}"
        lines.append(line)
    for i in range(p.ngens):
        for j in range(i + 1, p.ngens):
            if p.commutation[i][j]:
                lines.append(f"commute {p.names[i]} {p.names[j]} {p.commutation[i][j]}")
    if pf.deformed:
        lines.append("deformed")
    return "\n".join(lines) + "\n"


# -- symmetry files --------------------------------------------------------------------------


@dataclass(frozen=True)
class SymmetryFile:
    """Cartan data (``None`` for the torus) and textual action rules.

    Rules are kept as text and bound to a presentation by :meth:`bind`.
    """

    cartan: CartanData | None
    rules: tuple  # ((i, sign, g, rhs_text, line, col), ...)
    weights: tuple = ()  # ((g, (w_1, .., w_r), line), ...)
    source: str | None = None

    def bind(self, presentation: GradedPresentation) -> GeneratorAction:
        p = presentation.source if presentation.source is not None else presentation
        table: dict = {}
        for i, sign, g, rhs, n, col in self.rules:
            if g not in p.names:
                raise ParseError(f"unknown generator {g!r}", n, col, self.source)
            image = parse_expression(rhs, p, n, col, self.source)
            slot = table.setdefault((i, sign), {})
            gi = p.index(g)
            if gi in slot:
                raise ParseError(f"duplicate rule for x{i}{'+' if sign > 0 else '-'} on {g}", n, col, self.source)
            slot[gi] = image
        weights = None
        if self.weights:
            given = {}
            for g, w, n in self.weights:
                if g not in p.names:
                    raise ParseError(f"unknown generator {g!r}", n, 1, self.source)
                given[p.index(g)] = w
            if set(given) != set(range(p.ngens)):
                raise ParseError("weight lines must cover every generator", 1, 1, self.source)
            weights = [given[g] for g in range(p.ngens)]
        try:
            return GeneratorAction(p, self.cartan, table, weights)
        except ValueError as e:
            raise ParseError(str(e), 1, 1, self.source) from None


_RULE = re.compile(r"x(\d+)([+-])\s*:\s*(\S+)\s*->\s*(.+)$")


def parse_symmetry(text: str, source: str | None = None) -> SymmetryFile:
    lines = list(_lines(text))
    matrix = None
    pick = None
    torus = False
    rules = []
    weights = []
    k = 0
    while k < len(lines):
        n, body = lines[k]
        f = _fields(body)
        head, hc = f[0]
        if head == "cartan":
            if len(f) != 2:
                raise ParseError("expected 'cartan <rank>'", n, hc, source)
            r = _int(f[1][0], n, f[1][1], source)
            if r < 2:
                raise ParseError("rank must be at least 2", n, f[1][1], source)
            rows = []
            for _ in range(r):
                k += 1
                if k >= len(lines):
                    raise ParseError("missing Cartan matrix rows", n, hc, source)
                rn, rbody = lines[k]
                rf = _fields(rbody)
                if len(rf) != r:
                    raise ParseError(f"Cartan row needs {r} integers", rn, 1, source)
                rows.append(tuple(_int(t, rn, c, source) for t, c in rf))
            matrix = tuple(rows)
        elif head == "torus":
            torus = True
        elif head == "pick-h":
            if len(f) != 3:
                raise ParseError("expected 'pick-h <i> <j>'", n, hc, source)
            pick = (_int(f[1][0], n, f[1][1], source), _int(f[2][0], n, f[2][1], source))
        elif head == "weight":
            if len(f) < 3:
                raise ParseError("expected 'weight <g> <w_1> .. <w_r>'", n, hc, source)
            weights.append((f[1][0], tuple(_int(t, n, c, source) for t, c in f[2:]), n))
        else:
            m = _RULE.match(body.strip())
            if not m:
                raise ParseError(f"unknown directive {head!r}", n, hc, source)
            offset = body.index(body.strip())
            rhs_col = offset + m.start(4) + 1
            rules.append((int(m.group(1)), 1 if m.group(2) == "+" else -1, m.group(3), m.group(4),
                          n, rhs_col))
        k += 1
    if torus and matrix is not None:
        raise ParseError("'torus' and 'cartan' are exclusive", 1, 1, source)
    cartan = None
    if matrix is not None:
        try:
            cartan = CartanData(matrix, pick or (1, 2))
        except ValueError as e:
            raise ParseError(str(e), 1, 1, source) from None
        for i, sign, g, rhs, n, col in rules:
            if not 1 <= i <= cartan.rank:
                raise ParseError(f"x{i} exceeds the rank {cartan.rank}", n, 1, source)
    elif rules:
        raise ParseError("action rules need a 'cartan' block", rules[0][4], 1, source)
    return SymmetryFile(cartan, tuple(rules), tuple(weights), source)


# -- loading -----------------------------------------------------------------------------------

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def load_presentation(path) -> PresentationFile:
    path = Path(path)
    return parse_presentation(path.read_text(), str(path))


def load_symmetry(path) -> SymmetryFile:
    path = Path(path)
    return parse_symmetry(path.read_text(), str(path))


def load_fixture_action(sym: str = "A2.sym", alg: str = "C3.alg") -> GeneratorAction:
    return load_symmetry(fixture_path(sym)).bind(load_presentation(fixture_path(alg)).source)
