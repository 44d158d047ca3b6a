"""Exact arithmetic over the Gaussian rationals Q(i).

Two types carry everything: :class:`GaussianRational` for coefficients and
:class:`Polynomial` for sparse multivariate polynomials over a fixed, ordered
variable registry.  Nothing in this module touches floating point.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Mapping, Sequence


class RegistryMismatch(ValueError):
    """Raised when polynomials over different variable registries are combined."""


_GR_TOKEN = re.compile(r"\s*([+-]?)\s*(\d+(?:/\d+)?)?\s*(i?)\s*")


class GaussianRational:
    """An exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("cannot combine a GaussianRational with an imaginary part")
            self.re, self.im = re.re, re.im
            return
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Rational)):
            return cls(value)
        if isinstance(value, str):
            return cls.parse(value)
        raise TypeError(f"cannot convert {value!r} to GaussianRational")

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse ``a/b+c/di`` style literals: ``"-1"``, ``"1/2+1/3i"``, ``"i"``, ``"-2/5i"``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty number")
        pos = 0
        re_part = Fraction(0)
        im_part = Fraction(0)
        seen = 0
        while pos < len(s):
            m = _GR_TOKEN.match(s, pos)
            if not m or m.end() == pos:
                raise ValueError(f"malformed Gaussian rational {text!r}")
            sign, num, imag = m.groups()
            if not num and not imag:
                raise ValueError(f"malformed Gaussian rational {text!r}")
            if seen and not sign:
                raise ValueError(f"malformed Gaussian rational {text!r}")
            value = Fraction(num) if num else Fraction(1)
            if sign == "-":
                value = -value
            if imag:
                im_part += value
            else:
                re_part += value
            seen += 1
            pos = m.end()
        if seen > 2:
            raise ValueError(f"malformed Gaussian rational {text!r}")
        return cls(re_part, im_part)

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational(a * c)
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        if not self:
            raise ZeroDivisionError("GaussianRational division by zero")
        if not self.im:
            return GaussianRational(1 / self.re)
        n = self.re * self.re + self.im * self.im
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return not self.im

    def height(self) -> int:
        """Largest absolute numerator or denominator among both parts."""
        return max(abs(self.re.numerator), self.re.denominator,
                   abs(self.im.numerator), self.im.denominator)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({str(self)!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        im = self.im
        if abs(im) == 1:
            im_s = "i" if im > 0 else "-i"
        else:
            im_s = f"{im}i"
        if not self.re:
            return im_s
        return f"{self.re}{'' if im_s.startswith('-') else '+'}{im_s}"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I_UNIT = GaussianRational(0, 1)


def gaussian(value) -> GaussianRational:
    return GaussianRational.coerce(value)


class Monomial:
    """Sparse power product: a sorted tuple of ``(variable_index, exponent)`` pairs.

    Zero exponents are never stored, so the empty tuple is the monomial 1.
    """

    __slots__ = ("items", "_hash", "degree")

    def __init__(self, items: Iterable[tuple[int, int]] = ()):
        merged: dict[int, int] = {}
        for var, exp in items:
            if exp < 0:
                raise ValueError("negative exponent")
            if exp:
                merged[var] = merged.get(var, 0) + exp
        self.items = tuple(sorted(merged.items()))
        self._hash = hash(self.items)
        self.degree = sum(merged.values())

    @classmethod
    def _raw(cls, items: tuple[tuple[int, int], ...], degree: int) -> "Monomial":
        m = object.__new__(cls)
        m.items = items
        m._hash = hash(items)
        m.degree = degree
        return m

    @classmethod
    def from_exponents(cls, exps: Sequence[int]) -> "Monomial":
        return cls((i, e) for i, e in enumerate(exps) if e)

    def exponent(self, var: int) -> int:
        for v, e in self.items:
            if v == var:
                return e
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.items)

    def dense(self, nvars: int) -> tuple[int, ...]:
        out = [0] * nvars
        for v, e in self.items:
            out[v] = e
        return tuple(out)

    def support(self) -> frozenset[int]:
        return frozenset(v for v, _ in self.items)

    def __mul__(self, other: "Monomial") -> "Monomial":
        a, b = self.items, other.items
        if not a:
            return other
        if not b:
            return self
        out = []
        i = j = 0
        while i < len(a) and j < len(b):
            va, vb = a[i][0], b[j][0]
            if va == vb:
                out.append((va, a[i][1] + b[j][1]))
                i += 1
                j += 1
            elif va < vb:
                out.append(a[i])
                i += 1
            else:
                out.append(b[j])
                j += 1
        out.extend(a[i:])
        out.extend(b[j:])
        return Monomial._raw(tuple(out), self.degree + other.degree)

    def divides(self, other: "Monomial") -> bool:
        if self.degree > other.degree:
            return False
        od = dict(other.items)
        for v, e in self.items:
            if od.get(v, 0) < e:
                return False
        return True

    def __truediv__(self, other: "Monomial") -> "Monomial":
        d = dict(self.items)
        for v, e in other.items:
            r = d.get(v, 0) - e
            if r < 0:
                raise ValueError("monomial does not divide")
            if r:
                d[v] = r
            else:
                del d[v]
        return Monomial._raw(tuple(sorted(d.items())), self.degree - other.degree)

    def lcm(self, other: "Monomial") -> "Monomial":
        d = dict(self.items)
        for v, e in other.items:
            if d.get(v, 0) < e:
                d[v] = e
        items = tuple(sorted(d.items()))
        return Monomial._raw(items, sum(e for _, e in items))

    def gcd_is_one(self, other: "Monomial") -> bool:
        od = dict(other.items)
        return not any(v in od for v, _ in self.items)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.items == other.items

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Monomial({self.items!r})"

    def render(self, registry: Sequence[str]) -> str:
        if not self.items:
            return "1"
        parts = []
        for v, e in self.items:
            name = registry[v]
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)


ONE_MONOMIAL = Monomial()


def lex_key(m: Monomial, nvars: int):
    return m.dense(nvars)


def grevlex_key(m: Monomial, nvars: int):
    dense = m.dense(nvars)
    return (m.degree, tuple(-e for e in reversed(dense)))


class Polynomial:
    """Immutable sparse polynomial over Q(i) with a named variable registry.

    ``terms`` maps :class:`Monomial` to nonzero :class:`GaussianRational`.
    Iteration order is the session display order (lex on the registry,
    largest first), which keeps printing and hashing deterministic.
    """

    __slots__ = ("registry", "_terms", "_hash", "_sorted")

    def __init__(self, terms: Mapping[Monomial, object] | None = None,
                 registry: Sequence[str] = ()):
        self.registry = tuple(registry)
        clean: dict[Monomial, GaussianRational] = {}
        if terms:
            for m, c in terms.items():
                c = GaussianRational.coerce(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash = None
        self._sorted = None

    @classmethod
    def _from_clean(cls, terms: dict, registry: tuple) -> "Polynomial":
        p = object.__new__(cls)
        p.registry = registry
        p._terms = terms
        p._hash = None
        p._sorted = None
        return p

    # constructors

    @classmethod
    def zero(cls, registry: Sequence[str]) -> "Polynomial":
        return cls({}, registry)

    @classmethod
    def constant(cls, value, registry: Sequence[str]) -> "Polynomial":
        return cls({ONE_MONOMIAL: value}, registry)

    @classmethod
    def var(cls, name: str, registry: Sequence[str]) -> "Polynomial":
        registry = tuple(registry)
        try:
            idx = registry.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None
        return cls({Monomial(((idx, 1),)): ONE}, registry)

    @classmethod
    def gens(cls, registry: Sequence[str]) -> list["Polynomial"]:
        return [cls.var(name, registry) for name in registry]

    # basic accessors

    @property
    def terms(self) -> dict[Monomial, GaussianRational]:
        return dict(self._terms)

    @property
    def nvars(self) -> int:
        return len(self.registry)

    def items(self) -> list[tuple[Monomial, GaussianRational]]:
        if self._sorted is None:
            n = len(self.registry)
            self._sorted = sorted(self._terms.items(),
                                  key=lambda mc: lex_key(mc[0], n), reverse=True)
        return self._sorted

    def monomials(self) -> list[Monomial]:
        return [m for m, _ in self.items()]

    def coefficient(self, m: Monomial) -> GaussianRational:
        return self._terms.get(m, ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE_MONOMIAL in self._terms)

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get(ONE_MONOMIAL, ZERO)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(m.degree for m in self._terms)

    def support(self) -> frozenset[int]:
        out: set[int] = set()
        for m in self._terms:
            out.update(v for v, _ in m.items)
        return frozenset(out)

    def variables(self) -> list[str]:
        return [self.registry[i] for i in sorted(self.support())]

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    # ring operations

    def _check(self, other: "Polynomial"):
        if self.registry != other.registry:
            raise RegistryMismatch(
                f"registry mismatch: {list(self.registry)} vs {list(other.registry)}")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(other, self.registry)

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial._from_clean(out, self.registry)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._from_clean({m: -c for m, c in self._terms.items()}, self.registry)

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                c = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
            return self.scale(c)
        self._check(other)
        out: dict[Monomial, GaussianRational] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                c = c1 * c2
                s = out.get(m)
                out[m] = c if s is None else s + c
        return Polynomial._from_clean({m: c for m, c in out.items() if c}, self.registry)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = GaussianRational.coerce(c)
        if not c:
            return Polynomial.zero(self.registry)
        return Polynomial._from_clean({m: v * c for m, v in self._terms.items()}, self.registry)

    def mul_term(self, mono: Monomial, c: GaussianRational) -> "Polynomial":
        return Polynomial._from_clean(
            {m * mono: v * c for m, v in self._terms.items()}, self.registry)

    def __truediv__(self, other):
        c = GaussianRational.coerce(other)
        return self.scale(c.inverse())

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.constant(1, self.registry)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.registry == other.registry and self._terms == other._terms
        if isinstance(other, (int, Rational, GaussianRational)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.registry, frozenset(self._terms.items())))
        return self._hash

    # coefficient-level operations

    def conjugate_coeffs(self) -> "Polynomial":
        return Polynomial._from_clean(
            {m: c.conjugate() for m, c in self._terms.items()}, self.registry)

    def permute_vars(self, perm: Mapping[int, int]) -> "Polynomial":
        """Rename variable ``i`` to ``perm[i]`` (indices not listed stay put)."""
        out = {}
        for m, c in self._terms.items():
            nm = Monomial((perm.get(v, v), e) for v, e in m.items)
            out[nm] = c
        return Polynomial._from_clean(out, self.registry)

    def swap_vars(self, pairs: Iterable[tuple[str, str]]) -> "Polynomial":
        perm = {}
        for a, b in pairs:
            ia, ib = self.registry.index(a), self.registry.index(b)
            perm[ia], perm[ib] = ib, ia
        return self.permute_vars(perm)

    def with_registry(self, registry: Sequence[str],
                      rename: Mapping[str, str] | None = None) -> "Polynomial":
        """Move to another registry, mapping variables by name (optionally renamed)."""
        registry = tuple(registry)
        rename = rename or {}
        index = {name: i for i, name in enumerate(registry)}
        mapping = {}
        for v in self.support():
            name = rename.get(self.registry[v], self.registry[v])
            if name not in index:
                raise RegistryMismatch(f"variable {name!r} not in target registry")
            mapping[v] = index[name]
        out = {}
        for m, c in self._terms.items():
            out[Monomial((mapping[v], e) for v, e in m.items)] = c
        return Polynomial._from_clean(out, registry)

    def evaluate(self, assignment: Mapping[str, object]) -> "Polynomial":
        """Substitute exact values for some variables; the rest stay symbolic."""
        values: dict[int, GaussianRational] = {}
        for name, value in assignment.items():
            if name not in self.registry:
                raise KeyError(f"unknown variable {name!r}")
            values[self.registry.index(name)] = GaussianRational.coerce(value)
        if not values:
            return self
        out: dict[Monomial, GaussianRational] = {}
        power_cache: dict[tuple[int, int], GaussianRational] = {}
        for m, c in self._terms.items():
            keep = []
            coeff = c
            for v, e in m.items:
                if v in values:
                    key = (v, e)
                    pw = power_cache.get(key)
                    if pw is None:
                        pw = values[v] ** e
                        power_cache[key] = pw
                    coeff = coeff * pw
                    if not coeff:
                        break
                else:
                    keep.append((v, e))
            if not coeff:
                continue
            nm = Monomial._raw(tuple(keep), sum(e for _, e in keep))
            s = out.get(nm)
            out[nm] = coeff if s is None else s + coeff
        return Polynomial._from_clean({m: c for m, c in out.items() if c}, self.registry)

    def value_at(self, assignment: Mapping[str, object]) -> GaussianRational:
        """Full evaluation to a number; every variable in the support must be assigned."""
        return self.evaluate(assignment).constant_value()

    def substitute(self, images: Mapping[str, "Polynomial"],
                   registry: Sequence[str]) -> "Polynomial":
        """Compose: replace each variable by a polynomial over ``registry``.

        Variables without an image must exist by name in ``registry``.
        """
        registry = tuple(registry)
        imgs: dict[int, Polynomial] = {}
        for v in self.support():
            name = self.registry[v]
            if name in images:
                imgs[v] = images[name]
            else:
                imgs[v] = Polynomial.var(name, registry)
        power_cache: dict[tuple[int, int], Polynomial] = {}
        result = Polynomial.zero(registry)
        acc: dict[Monomial, GaussianRational] = {}
        for m, c in self._terms.items():
            term = Polynomial.constant(c, registry)
            for v, e in m.items:
                key = (v, e)
                pw = power_cache.get(key)
                if pw is None:
                    pw = imgs[v] ** e
                    power_cache[key] = pw
                term = term * pw
            for tm, tc in term._terms.items():
                s = acc.get(tm)
                acc[tm] = tc if s is None else s + tc
        result = Polynomial._from_clean({m: c for m, c in acc.items() if c}, registry)
        return result

    def derivative(self, name: str) -> "Polynomial":
        idx = self.registry.index(name)
        out: dict[Monomial, GaussianRational] = {}
        for m, c in self._terms.items():
            e = m.exponent(idx)
            if not e:
                continue
            nm = Monomial((v, ex - 1 if v == idx else ex) for v, ex in m.items)
            out[nm] = out.get(nm, ZERO) + c * e
        return Polynomial._from_clean({m: c for m, c in out.items() if c}, self.registry)

    def gradient(self) -> list["Polynomial"]:
        return [self.derivative(name) for name in self.registry]

    def collect_coefficients(self, names: Iterable[str]) -> dict[Monomial, "Polynomial"]:
        """Split into ``sum(mono * coeff)`` with ``mono`` over ``names`` only."""
        names = list(names)
        if not names:
            raise ValueError("variable subset must be nonempty")
        missing = [n for n in names if n not in self.registry]
        if missing:
            raise KeyError(f"not in registry: {missing}")
        block = {self.registry.index(n) for n in names}
        groups: dict[Monomial, dict[Monomial, GaussianRational]] = {}
        for m, c in self._terms.items():
            inside = tuple((v, e) for v, e in m.items if v in block)
            outside = tuple((v, e) for v, e in m.items if v not in block)
            km = Monomial._raw(inside, sum(e for _, e in inside))
            om = Monomial._raw(outside, sum(e for _, e in outside))
            groups.setdefault(km, {})[om] = c
        n = len(self.registry)
        ordered = sorted(groups, key=lambda m: lex_key(m, n), reverse=True)
        return {k: Polynomial._from_clean(groups[k], self.registry) for k in ordered}

    def homogeneity(self) -> int | None:
        """Common total degree of all terms, or ``None`` when degrees differ."""
        if not self._terms:
            raise ValueError("the zero polynomial has no degree")
        degrees = {m.degree for m in self._terms}
        return degrees.pop() if len(degrees) == 1 else None

    def leading(self, key: Callable[[Monomial, int], object] = lex_key):
        n = len(self.registry)
        m = max(self._terms, key=lambda t: key(t, n))
        return m, self._terms[m]

    def monic(self, key: Callable[[Monomial, int], object] = lex_key) -> tuple["Polynomial", GaussianRational]:
        """Scale so the leading coefficient is 1; returns ``(monic, unit)`` with ``self == unit*monic``."""
        if not self._terms:
            return self, ONE
        _, c = self.leading(key)
        return self.scale(c.inverse()), c

    # printing

    def __str__(self):
        return self.render()

    def render(self, names: Sequence[str] | None = None) -> str:
        names = tuple(names) if names is not None else self.registry
        if not self._terms:
            return "0"
        out = []
        for idx, (m, c) in enumerate(self.items()):
            mono = m.render(names)
            if mono == "1":
                body = _coeff_str(c)
                sign = ""
                if body.startswith("-"):
                    sign, body = "-", body[1:]
            elif c == 1:
                sign, body = "", mono
            elif c == -1:
                sign, body = "-", mono
            else:
                cs = _coeff_str(c)
                sign = ""
                if cs.startswith("-"):
                    sign, cs = "-", cs[1:]
                body = f"{cs}*{mono}"
            if idx == 0:
                out.append(f"{sign}{body}")
            else:
                out.append(f" {'-' if sign else '+'} {body}")
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({self.render()!r}, {list(self.registry)!r})"


def _coeff_str(c: GaussianRational) -> str:
    """Coefficient text that the expression parser reads back unchanged."""
    def frac(q: Fraction) -> str:
        return str(q)

    if not c.im:
        return frac(c.re)
    if not c.re:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{frac(c.im)}*i"
    im = c.im
    im_s = "i" if abs(im) == 1 else f"{frac(abs(im))}*i"
    sign = "+" if im > 0 else "-"
    return f"({frac(c.re)} {sign} {im_s})"


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if a.registry != b.registry:
        raise RegistryMismatch("operands live in different registries")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def evaluate(p: Polynomial, assignment: Mapping[str, object]) -> Polynomial:
    return p.evaluate(assignment)


def conjugate_coeffs(p: Polynomial) -> Polynomial:
    return p.conjugate_coeffs()


def collect_coefficients(p: Polynomial, names: Iterable[str]) -> dict[Monomial, Polynomial]:
    return p.collect_coefficients(names)


def homogeneity(p: Polynomial) -> int | None:
    return p.homogeneity()


def exact_quotient(p: Polynomial, d: Polynomial) -> Polynomial | None:
    """``p / d`` when ``d`` divides ``p`` exactly, else ``None`` (lex division)."""
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.registry != d.registry:
        raise RegistryMismatch("operands live in different registries")
    d_lm, d_lc = d.leading()
    inv = d_lc.inverse()
    rest = p
    quotient: dict[Monomial, GaussianRational] = {}
    while not rest.is_zero():
        m, c = rest.leading()
        if not d_lm.divides(m):
            return None
        q_m = m / d_lm
        q_c = c * inv
        quotient[q_m] = quotient.get(q_m, ZERO) + q_c
        rest = rest - d.mul_term(q_m, q_c)
    return Polynomial(quotient, p.registry)
