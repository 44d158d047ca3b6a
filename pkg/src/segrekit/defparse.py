"""Parsing of defining equations written with ``conj``, ``Re``, ``Im`` and ``i``.

Equations are read into polynomials over the registry
``(z1, ..., zn, conj(z1), ..., conj(zn))``: the conjugate of each ambient
variable is an independent formal symbol.  Every stored generator is
real-valued on the diagonal up to the unit recorded next to it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .exactpoly import I_UNIT, ONE, GaussianRational, Polynomial

RESERVED = frozenset({"i", "conj", "Re", "Im"})
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class VarietyFormatError(ValueError):
    pass


def conj_name(name: str) -> str:
    return f"conj({name})"


def variety_registry(ambient_vars: Sequence[str]) -> tuple[str, ...]:
    return tuple(ambient_vars) + tuple(conj_name(v) for v in ambient_vars)


def bar(p: Polynomial) -> Polynomial:
    """Formal conjugation: conjugate coefficients and swap each z with its conjugate symbol.

    Works on any registry whose second half holds the conjugate symbols of
    the first half.
    """
    n = len(p.registry) // 2
    perm = {}
    for j in range(n):
        perm[j], perm[j + n] = j + n, j
    return p.conjugate_coeffs().permute_vars(perm)


def is_real_valued(p: Polynomial) -> bool:
    return bar(p) == p


def real_imag_parts(p: Polynomial) -> tuple[Polynomial, Polynomial]:
    b = bar(p)
    return (p + b) / 2, (p - b) / GaussianRational(0, 2)


# tokenizer -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # num, ident, op, end
    text: str
    col: int


def _tokenize(text: str, line: int) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        num, ident, op = m.groups()
        start = m.start(m.lastindex) + 1 if m.lastindex else pos + 1
        if num is not None:
            toks.append(_Tok("num", num, start))
        elif ident is not None:
            toks.append(_Tok("ident", ident, start))
        elif op is not None:
            if op not in "+-*/^()=":
                raise ParseError(f"unexpected character {op!r}", line, start)
            toks.append(_Tok("op", op, start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text) + 1))
    return toks


class _Parser:
    """Recursive descent; precedence ``^`` > unary minus > ``*``,``/`` > binary ``+``,``-``."""

    def __init__(self, text: str, ambient_vars: Sequence[str], line: int,
                 extra_vars: Sequence[str] = ()):
        self.text = text
        self.line = line
        self.ambient = tuple(ambient_vars)
        self.registry = variety_registry(ambient_vars) + tuple(extra_vars)
        self.extra = tuple(extra_vars)
        self.toks = _tokenize(text, line)
        self.pos = 0

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def take(self) -> _Tok:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise ParseError(message, self.line, tok.col)

    def expect(self, text: str):
        tok = self.peek()
        if tok.kind != "op" or tok.text != text:
            found = tok.text or "end of input"
            self.error(f"expected {text!r}, found {found!r}")
        return self.take()

    def constant(self, value) -> Polynomial:
        return Polynomial.constant(value, self.registry)

    def equation(self) -> Polynomial:
        lhs = self.expr()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "=":
            self.take()
            rhs = self.expr()
            lhs = lhs - rhs
        tok = self.peek()
        if tok.kind != "end":
            self.error(f"unexpected {tok.text!r}")
        return lhs

    def expr(self) -> Polynomial:
        value = self.term()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if tok.text == "+" else value - rhs
            else:
                return value

    def term(self) -> Polynomial:
        value = self.unary()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "*/":
                self.take()
                rhs = self.unary()
                if tok.text == "*":
                    value = value * rhs
                else:
                    if not rhs.is_constant() or rhs.is_zero():
                        self.error("division only by a nonzero constant", tok)
                    value = value / rhs.constant_value()
            else:
                return value

    def unary(self) -> Polynomial:
        tok = self.peek()
        if tok.kind == "op" and tok.text in "+-":
            self.take()
            inner = self.unary()
            return -inner if tok.text == "-" else inner
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.take()
            exp_tok = self.peek()
            if exp_tok.kind == "op" and exp_tok.text == "-":
                self.error("negative exponent", exp_tok)
            if exp_tok.kind == "op" and exp_tok.text == "(":
                self.take()
                inner = self.peek()
                if inner.kind == "op" and inner.text == "-":
                    self.error("negative exponent", inner)
                if inner.kind != "num":
                    self.error("exponent must be a nonnegative integer", inner)
                self.take()
                self._reject_fraction()
                self.expect(")")
                return base ** int(inner.text)
            if exp_tok.kind != "num":
                self.error("exponent must be a nonnegative integer", exp_tok)
            self.take()
            self._reject_fraction()
            nxt = self.peek()
            if nxt.kind == "op" and nxt.text == "^":
                self.error("chained exponents need parentheses", nxt)
            return base ** int(exp_tok.text)
        return base

    def _reject_fraction(self):
        tok = self.peek()
        if tok.kind == "op" and tok.text == "/" and self.toks[self.pos + 1].kind == "num":
            self.error("fractional exponent", tok)

    def atom(self) -> Polynomial:
        tok = self.peek()
        if tok.kind == "num":
            self.take()
            return self.constant(Fraction(int(tok.text)))
        if tok.kind == "op" and tok.text == "(":
            self.take()
            value = self.expr()
            self.expect(")")
            return value
        if tok.kind == "ident":
            self.take()
            name = tok.text
            if name == "i":
                return self.constant(I_UNIT)
            if name in ("conj", "Re", "Im"):
                self.expect("(")
                inner = self.expr()
                self.expect(")")
                if name == "conj":
                    return self._bar(inner)
                b = self._bar(inner)
                if name == "Re":
                    return (inner + b) / 2
                return (inner - b) / GaussianRational(0, 2)
            if name in self.ambient or name in self.extra:
                return Polynomial.var(name, self.registry)
            self.error(f"unknown identifier {name!r}", tok)
        found = tok.text or "end of input"
        self.error(f"unexpected {found!r}", tok)

    def _bar(self, p: Polynomial) -> Polynomial:
        if self.extra:
            # extra (real parameter) variables sit after the conjugate block
            n = len(self.ambient)
            perm = {}
            for j in range(n):
                perm[j], perm[j + n] = j + n, j
            return p.conjugate_coeffs().permute_vars(perm)
        return bar(p)


def parse_expression(text: str, ambient_vars: Sequence[str], line: int = 1,
                     extra_vars: Sequence[str] = ()) -> Polynomial:
    """Parse an expression or ``lhs = rhs`` into one polynomial (``lhs - rhs``).

    ``extra_vars`` are treated as real parameters: they get no conjugate symbol.
    """
    _check_names(ambient_vars)
    return _Parser(text, ambient_vars, line, extra_vars).equation()


def normalize_generator(p: Polynomial) -> tuple[Polynomial, GaussianRational]:
    """Make ``p`` monic in the session (lex) order; returns ``(monic, unit)``."""
    return p.monic()


def parse_generators(text: str, ambient_vars: Sequence[str],
                     line: int = 1) -> list[tuple[Polynomial, GaussianRational]]:
    """Parse one equation into real-valued generators, each as ``(monic, unit)``."""
    p = parse_expression(text, ambient_vars, line)
    if p.is_zero():
        raise ParseError("equation is identically zero", line, 1)
    if is_real_valued(p):
        parts = [p]
    else:
        parts = [q for q in real_imag_parts(p) if not q.is_zero()]
    return [normalize_generator(q) for q in parts]


def parse_equation(text: str, ambient_vars: Sequence[str], line: int = 1) -> list[Polynomial]:
    return [g for g, _ in parse_generators(text, ambient_vars, line)]


def _check_names(names: Sequence[str]):
    seen = set()
    for name in names:
        if not _IDENT.match(name):
            raise VarietyFormatError(f"invalid variable name {name!r}")
        if name in RESERVED:
            raise VarietyFormatError(f"variable name {name!r} is reserved")
        if name in seen:
            raise VarietyFormatError(f"duplicate variable name {name!r}")
        seen.add(name)


@dataclass(frozen=True)
class VarietyData:
    """A real-algebraic subvariety of C^n given by defining polynomials in z and conj(z)."""

    ambient_vars: tuple[str, ...]
    generators: tuple[Polynomial, ...]
    units: tuple[GaussianRational, ...] = ()
    name: str = ""
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        _check_names(self.ambient_vars)
        if not self.generators:
            raise VarietyFormatError("empty generator list")
        if not self.units:
            object.__setattr__(self, "units", tuple(ONE for _ in self.generators))
        if len(self.units) != len(self.generators):
            raise VarietyFormatError("one unit per generator required")
        reg = self.registry
        for g, u in zip(self.generators, self.units):
            if g.registry != reg:
                raise VarietyFormatError("generator registry does not match ambient variables")
            if not is_real_valued(g.scale(u)):
                raise VarietyFormatError(f"generator {g} is not real-valued")

    @property
    def n(self) -> int:
        return len(self.ambient_vars)

    @property
    def registry(self) -> tuple[str, ...]:
        return variety_registry(self.ambient_vars)

    @property
    def conj_vars(self) -> tuple[str, ...]:
        return tuple(conj_name(v) for v in self.ambient_vars)

    def real_generators(self) -> list[Polynomial]:
        """The generators scaled back to their real-valued form."""
        return [g.scale(u) for g, u in zip(self.generators, self.units)]


def format_variety(X: VarietyData) -> str:
    lines = []
    if X.name:
        lines.append(f"name {X.name}")
    lines.append("vars " + " ".join(X.ambient_vars))
    for g in X.real_generators():
        lines.append(f"eq {g.render()}")
    return "\n".join(lines) + "\n"


def parse_variety(text: str, name: str = "") -> VarietyData:
    ambient: tuple[str, ...] | None = None
    pending: list[tuple[int, str]] = []
    meta_name = name
    notes = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            notes.append(line[1:].strip())
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "vars":
            if ambient is not None:
                raise VarietyFormatError(f"line {lineno}: second 'vars' line")
            names = tuple(rest.split())
            if not names:
                raise VarietyFormatError(f"line {lineno}: 'vars' needs at least one name")
            try:
                _check_names(names)
            except VarietyFormatError as exc:
                raise VarietyFormatError(f"line {lineno}: {exc}") from None
            ambient = names
        elif head == "eq":
            if not rest:
                raise VarietyFormatError(f"line {lineno}: empty equation")
            pending.append((lineno, rest))
        elif head == "name":
            meta_name = rest
        else:
            raise VarietyFormatError(f"line {lineno}: unknown directive {head!r}")
    if ambient is None:
        raise VarietyFormatError("missing 'vars' line")
    if not pending:
        raise VarietyFormatError("empty generator list")
    gens, units = [], []
    for lineno, eq in pending:
        # column offsets are reported relative to the equation text
        for g, u in parse_generators(eq, ambient, line=lineno):
            gens.append(g)
            units.append(u)
    return VarietyData(ambient, tuple(gens), tuple(units), meta_name, tuple(notes))


def load_variety(source: str | Path) -> VarietyData:
    """Load a variety from a file path or from the text of a variety file."""
    if isinstance(source, Path):
        return parse_variety(source.read_text(encoding="utf-8"), name=source.stem)
    if "\n" not in source and not source.lstrip().startswith(("vars", "eq", "#", "name")):
        path = Path(source)
        return parse_variety(path.read_text(encoding="utf-8"), name=path.stem)
    return parse_variety(source)
