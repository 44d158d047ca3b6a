"""Worked examples as data: variety files, expectation files and point samplers.

Expectation files are line oriented::

    expect <key> <field> | <field> ... [TAG]
    asserted <free text>
    realvars <names>

``TAG`` is one of PAPER, DERIVED, TRIVIAL and records where the expected
value comes from. ``asserted`` lines are annotations only and never feed a
computation.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Callable, Iterable

from .defparse import VarietyData, parse_expression, parse_variety
from .exactpoly import GaussianRational, Polynomial
from .gb import Ideal, ideal_equal, krull_dimension
from .numprobe import ProbeConfig, curve_from_text, region_scan, semicontinuity_scan
from .segrecore import (
    ComplexificationIdeal, Point, ansatz_factor_homogeneous, classify_point, complex_registry,
    complexified_gradient_at, complexify, cone_certificate, degenerate_locus_full,
    point_on_variety, segre_dim_at, segre_ideal_at, sigma_check, xk_membership_at,
)

TAGS = ("PAPER", "DERIVED", "TRIVIAL")
_EXPECT = re.compile(r"expect\s+(\w+)\s*(.*?)\s*\[(\w+)\]\s*$")


class CorpusFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Expectation:
    key: str
    fields: tuple[str, ...]
    tag: str
    line: int


@dataclass
class CorpusEntry:
    name: str
    variety: VarietyData | None
    expectations: list[Expectation]
    asserted: list[str] = field(default_factory=list)
    real_vars: tuple[str, ...] = ()

    def value(self, key: str) -> str | None:
        for e in self.expectations:
            if e.key == key:
                return e.fields[0]
        return None

    @property
    def ambient_n(self) -> int | None:
        v = self.value("ambient_n")
        return int(v) if v is not None else None

    @property
    def stated_dim(self) -> int | None:
        v = self.value("stated_dim")
        return int(v) if v is not None else None

    @property
    def is_hypersurface(self) -> bool:
        return self.variety is not None and self.stated_dim == 2 * self.variety.n - 1


def parse_expectations(text: str, name: str = "") -> tuple[list[Expectation], list[str], tuple[str, ...]]:
    expectations, asserted, real_vars = [], [], ()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head = line.split(None, 1)[0]
        if head == "asserted":
            asserted.append(line[len(head):].strip())
        elif head == "realvars":
            real_vars = tuple(line.split()[1:])
        elif head == "expect":
            m = _EXPECT.match(line)
            if not m:
                raise CorpusFormatError(f"{name}:{lineno}: expectation needs a trailing provenance tag")
            key, body, tag = m.groups()
            if tag not in TAGS:
                raise CorpusFormatError(f"{name}:{lineno}: unknown tag [{tag}]")
            fields = tuple(f.strip() for f in body.split(" | "))
            expectations.append(Expectation(key, fields, tag, lineno))
        else:
            raise CorpusFormatError(f"{name}:{lineno}: unknown directive {head!r}")
    return expectations, asserted, real_vars


def _data_dir():
    return resources.files("segrekit") / "corpus_data"


def entry_names() -> list[str]:
    return sorted({p.name.rsplit(".", 1)[0] for p in _data_dir().iterdir()
                   if p.name.endswith(".expect")})


def load_entry(name: str) -> CorpusEntry:
    if name not in entry_names():
        raise KeyError(f"unknown corpus entry {name!r}; known: {', '.join(entry_names())}")
    base = _data_dir()
    var_file = base / f"{name}.var"
    variety = parse_variety(var_file.read_text(), name) if var_file.is_file() else None
    exps, asserted, real_vars = parse_expectations((base / f"{name}.expect").read_text(), name)
    return CorpusEntry(name, variety, exps, asserted, real_vars)


# checks ---------------------------------------------------------------------

def _split(field_text: str) -> list[str]:
    return [p.strip() for p in field_text.split(";") if p.strip()]


def _bool(text: str) -> bool:
    if text not in ("true", "false"):
        raise CorpusFormatError(f"expected true/false, got {text!r}")
    return text == "true"


def _monic_str(p: Polynomial) -> str:
    return p.monic()[0].render()


class _Context:
    """Lazily computed per-entry objects shared by the checks."""

    def __init__(self, entry: CorpusEntry, cfg: ProbeConfig):
        self.entry = entry
        self.cfg = cfg
        self._C = None
        self._L = None

    @property
    def X(self) -> VarietyData:
        if self.entry.variety is None:
            raise CorpusFormatError(f"{self.entry.name}: check needs a variety file")
        return self.entry.variety

    @property
    def C(self) -> ComplexificationIdeal:
        if self._C is None:
            self._C = complexify(self.X)
        return self._C

    @property
    def locus(self) -> Ideal:
        if self._L is None:
            self._L = degenerate_locus_full(self.C)
        return self._L

    def zpoly(self, text: str) -> Polynomial:
        return parse_expression(text, [], extra_vars=self.C.zvars).with_registry(self.C.zvars)

    def real_poly(self, text: str) -> Polynomial:
        if not self.entry.real_vars:
            raise CorpusFormatError(f"{self.entry.name}: realvars line required")
        return parse_expression(text, [], extra_vars=self.entry.real_vars)


def _check(ctx: _Context, e: Expectation):
    """Return ``(expected, actual)`` in comparable JSON-ready form."""
    f = e.fields
    k = e.key
    if k == "ambient_n":
        return int(f[0]), ctx.X.n
    if k == "stated_dim":
        d = int(f[0])
        return True, 0 <= d <= 2 * ctx.X.n
    if k == "sigma":
        return _bool(f[0]), sigma_check(ctx.C)
    if k == "complexification":
        reg = complex_registry(ctx.X.ambient_vars)
        gens = [parse_expression(t, [], extra_vars=reg).with_registry(reg) for t in _split(f[0])]
        return True, ideal_equal(ctx.C.ideal, Ideal(gens, reg))
    if k == "locus_basis":
        return _split(f[0]), ctx.locus.groebner().render()
    if k == "locus_dim":
        return int(f[0]), krull_dimension(ctx.locus)
    if k == "on_variety":
        return _bool(f[1]), point_on_variety(ctx.X, Point.parse(f[0]))
    if k == "segre_dim":
        return int(f[1]), segre_dim_at(ctx.C, Point.parse(f[0]))
    if k == "segre_basis":
        return _split(f[1]), segre_ideal_at(ctx.C, Point.parse(f[0])).groebner().render()
    if k == "xk":
        return _bool(f[2]), xk_membership_at(ctx.C, Point.parse(f[0]), int(f[1]))
    if k == "fully_degenerate":
        report = classify_point(ctx.C, Point.parse(f[0]), ctx.locus)
        return _bool(f[1]), report.fully_degenerate
    if k == "segre_factor":
        q = Point.parse(f[0])
        target = ctx.zpoly(f[1])
        if not segre_ideal_at(ctx.C, q).groebner().contains(target):
            return sorted(_split(f[2])), "generator not in the Segre ideal"
        pair = ansatz_factor_homogeneous(target)
        expected = sorted(_monic_str(ctx.zpoly(t)) for t in _split(f[2]))
        return expected, sorted(_monic_str(p) for p in pair) if pair else None
    if k == "semicontinuity":
        path = [Point.parse(p) for p in _split(f[0])]
        report = semicontinuity_scan(ctx.C, path, 0)
        expected = {"dims": [int(d) for d in f[1].split(",")], "violations": int(f[2])}
        return expected, {"dims": report.dims, "violations": len(report.violations)}
    if k == "region":
        curve = curve_from_text(f[0], ctx.X.ambient_vars)
        grid = [Fraction(t) for t in _split(f[1])]
        cands = [] if f[3] == "-" else [parse_expression(t, ctx.X.ambient_vars) for t in _split(f[3])]
        rows = region_scan(ctx.X, curve, grid, int(f[2]), cands, ctx.cfg)
        expected = {"membership": [_bool(b) for b in f[4].split(",")]}
        actual = {"membership": [r.exact_membership for r in rows]}
        if f[5] != "-":
            expected["verdicts"] = f[5].split(",")
            actual["verdicts"] = [r.probe_verdict for r in rows]
        return expected, actual
    if k == "gradient_zero":
        values = Point.parse(f[0]).coords
        grads = complexified_gradient_at(ctx.C, values)
        return _bool(f[1]), all(c == 0 for g in grads for c in g)
    if k == "homogeneity":
        expected = None if f[1] == "none" else int(f[1])
        return expected, ctx.real_poly(f[0]).homogeneity()
    if k == "certificate":
        cert = cone_certificate(ctx.real_poly(f[0]))
        expected_deg = None if f[1] == "none" else int(f[1])
        return ({"degree": expected_deg, "irreducibility": f[2]},
                {"degree": cert.homogeneous_degree, "irreducibility": cert.irreducibility})
    raise CorpusFormatError(f"{ctx.entry.name}:{e.line}: unknown expectation key {k!r}")


def run_entry(entry: CorpusEntry, cfg: ProbeConfig = ProbeConfig()) -> dict:
    ctx = _Context(entry, cfg)
    checks = []
    for e in entry.expectations:
        expected, actual = _check(ctx, e)
        checks.append({
            "key": e.key,
            "args": list(e.fields),
            "tag": e.tag,
            "expected": expected,
            "actual": actual,
            "pass": expected == actual,
        })
    return {
        "name": entry.name,
        "pass": all(c["pass"] for c in checks),
        "checks": checks,
        "asserted": entry.asserted,
    }


def run_corpus(names: Iterable[str] | None = None, cfg: ProbeConfig = ProbeConfig()) -> dict:
    """Run every expectation of the selected entries; report ordered by name."""
    selected = entry_names() if not names else sorted(set(names))
    entries = [load_entry(n) for n in selected]
    results = [run_entry(e, cfg) for e in entries]
    return {"entries": results, "pass": all(r["pass"] for r in results)}


# samplers ---------------------------------------------------------------------

def _q(rng: random.Random, bound: int = 5) -> Fraction:
    return Fraction(rng.randint(-bound * 4, bound * 4), rng.randint(1, 4))


def _unit(s: Fraction) -> GaussianRational:
    """Rational point of the unit circle."""
    d = 1 + s * s
    return GaussianRational((1 - s * s) / d, 2 * s / d)


def _g(re, im=0) -> GaussianRational:
    return GaussianRational(Fraction(re), Fraction(im))


def _sample_isol(rng):
    z, t = _g(_q(rng), _q(rng)), _q(rng)
    w = z * _g(t) * _unit(_q(rng))
    xi = z * _g(1, t) * _unit(_q(rng))
    return Point((z, w, xi))


def _sample_noncomplex(rng):
    z = _g(_q(rng), _q(rng))
    return Point((z, z * _unit(_q(rng)), _g(_q(rng))))


def _sample_mfld(rng):
    z = _g(_q(rng), _q(rng))
    return Point((z, z * z.conjugate()))


def _sample_mfld2(rng):
    z, xi = _g(_q(rng), _q(rng)), _g(_q(rng), _q(rng))
    w = z * z + z.conjugate() ** 2 + xi * xi + xi.conjugate() ** 2
    return Point((z, w, xi))


def _sample_regularSbad(rng):
    return Point((_g(0), _g(_q(rng), _q(rng))))


def _sample_nonvar(rng):
    if rng.random() < 0.2:
        return Point((_g(0), _g(0), _g(_q(rng), _q(rng))))
    t = _q(rng)
    s = (1 + t * t) / 2
    w = _g(_q(rng), _q(rng))
    return Point((w * _g(1, t) * _unit(_q(rng)), w, _g(s, _q(rng))))


def _sample_Sbadrealline(rng):
    branch = rng.randrange(3)
    if branch == 0:
        s = _q(rng)
        w = _g(s, 2 * s) * _unit(_q(rng))
        return Point((_g(-s, -s / 2), w, _g(s, _q(rng))))
    if branch == 1:
        return Point((_g(0, _q(rng)), _g(0), _g(_q(rng), _q(rng))))
    return Point((_g(0, _q(rng)), _g(_q(rng), _q(rng)), _g(0, _q(rng))))


SAMPLERS: dict[str, Callable[[random.Random], Point]] = {
    "isol": _sample_isol,
    "noncomplex": _sample_noncomplex,
    "mfld": _sample_mfld,
    "mfld2": _sample_mfld2,
    "regularSbad": _sample_regularSbad,
    "nonvar": _sample_nonvar,
    "Sbadrealline": _sample_Sbadrealline,
}


def sample_points(name: str, count: int, seed: int = 0) -> list[Point]:
    """Rational points on the named variety, reproducible from ``seed``."""
    rng = random.Random(f"{name}:{seed}")
    return [SAMPLERS[name](rng) for _ in range(count)]


def random_point(n: int, rng: random.Random) -> Point:
    """Rational point of C^n, mostly off any given variety."""
    return Point(tuple(_g(_q(rng, 3), _q(rng, 3)) for _ in range(n)))


def variety_entries() -> list[str]:
    return [n for n in entry_names() if n in SAMPLERS]
