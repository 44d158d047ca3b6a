"""Floating-point probes for germ-level questions the exact layer cannot settle.

Verdicts are evidence, not proofs: ``consistent`` only means the search
failed to find real points of X near the base point off the candidate set.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .defparse import VarietyData, conj_name
from .exactpoly import GaussianRational, Polynomial
from .segrecore import (
    ComplexificationIdeal, Point, complexify, point_on_variety, realify, segre_dim_at,
    xk_membership_at,
)

DEFAULT_SEED = 0x5EC2E


class ProbeError(ValueError):
    pass


@dataclass(frozen=True)
class ProbeConfig:
    radius: float = 0.25
    samples: int = 64
    zero_tol: float = 1e-9
    clearance_tol: float = 1e-4
    seed: int = DEFAULT_SEED
    max_iter: int = 200

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if not 0 < self.zero_tol < self.clearance_tol:
            raise ValueError("need 0 < zero_tol < clearance_tol")


@dataclass
class ProbeVerdict:
    kind: str  # consistent | refuted | inconclusive
    witness: tuple[float, ...] | None
    min_residual: float
    median_residual: float
    seed: int
    exact_witness: bool = False

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "witness": list(self.witness) if self.witness is not None else None,
            "min_residual": self.min_residual,
            "median_residual": self.median_residual,
            "seed": self.seed,
            "exact_witness": self.exact_witness,
        }


class _Compiled:
    """Real polynomials sharing one monomial table, evaluated with their exact Jacobian."""

    def __init__(self, polys: Sequence[Polynomial], nvars: int):
        table: dict = {}
        for p in polys:
            for d in [p, *p.gradient()]:
                for m, _ in d.items():
                    table.setdefault(m, len(table))
        self.exps = np.array([m.dense(nvars) for m in table], dtype=float).reshape(len(table), nvars)
        self.values = np.zeros((len(table), len(polys)))
        self.grads = np.zeros((nvars, len(table), len(polys)))
        for j, p in enumerate(polys):
            for m, c in p.items():
                self.values[table[m], j] = float(c.re)
            for v, d in enumerate(p.gradient()):
                for m, c in d.items():
                    self.grads[v, table[m], j] = float(c.re)

    def __len__(self):
        return self.values.shape[1]

    def monomials(self, x: np.ndarray) -> np.ndarray:
        return np.prod(x ** self.exps, axis=1)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.monomials(x) @ self.values

    def jacobian(self, x: np.ndarray) -> np.ndarray:
        return np.einsum("k,vkj->jv", self.monomials(x), self.grads)


def _real_system(polys: Iterable[Polynomial], n: int) -> _Compiled:
    parts = [part for p in polys for part in realify(p, n) if not part.is_zero()]
    return _Compiled(parts, 2 * n)


def _point_to_real(q: Point) -> np.ndarray:
    vals = []
    for c in q:
        vals += [float(c.re), float(c.im)]
    return np.array(vals)


class _Problem:
    def __init__(self, X: VarietyData, q: Point, candidate: Sequence[Polynomial], cfg: ProbeConfig):
        self.cfg = cfg
        self.center = _point_to_real(q)
        self.system = _real_system(X.generators, X.n)
        self.cand = _real_system(candidate, X.n)
        self.exclusion = cfg.radius / 10

    def residuals(self, x):
        return self.system(x)

    def jacobian(self, x):
        return self.system.jacobian(x)

    def norm(self, x) -> float:
        return float(np.linalg.norm(self.residuals(x)))

    def cand_distance(self, x) -> tuple[float, np.ndarray]:
        """Distance estimate ``2C/|grad C|`` for ``C = sum c_j^2``, with the outward direction."""
        if not len(self.cand):
            return np.inf, np.zeros_like(x)
        vals = self.cand(x)
        C = float(vals @ vals)
        gC = 2 * self.cand.jacobian(x).T @ vals
        gn = float(np.linalg.norm(gC))
        if gn == 0.0:
            return 0.0, np.zeros_like(x)
        return 2 * C / gn, gC / gn

    def project(self, x):
        for _ in range(8):
            moved = False
            d, direction = self.cand_distance(x)
            if d < self.exclusion:
                if not direction.any():
                    direction = np.zeros_like(x)
                    direction[0] = 1.0
                x = x + (self.exclusion - d) * (1 + 1e-9) * direction
                moved = True
            off = x - self.center
            r = float(np.linalg.norm(off))
            if r > self.cfg.radius:
                x = self.center + off * (self.cfg.radius / r)
                moved = True
            if not moved:
                break
        return x

    def start(self, rng: np.random.Generator):
        dim = len(self.center)
        for _ in range(1000):
            v = rng.standard_normal(dim)
            v /= np.linalg.norm(v)
            x = self.center + v * self.cfg.radius * rng.random() ** (1.0 / dim)
            if self.cand_distance(x)[0] >= self.exclusion:
                return x
        return self.project(x)

    def minimize(self, x):
        """Damped descent on ``sum f_j^2``; Gauss-Newton scaling of the exact gradient."""
        x = self.project(x)
        res = self.norm(x)
        history = [res]
        for _ in range(self.cfg.max_iter):
            if res < self.cfg.zero_tol * 1e-3:
                break
            F = self.residuals(x)
            J = self.jacobian(x)
            step, *_ = np.linalg.lstsq(J, -F, rcond=None)
            if not np.isfinite(step).all() or not step.any():
                break
            t = 1.0
            improved = False
            while t > 1e-8:
                y = self.project(x + t * step)
                r = self.norm(y)
                if r < res:
                    x, res, improved = y, r, True
                    break
                t *= 0.5
            history.append(res)
            # stalled: ten steps gained less than one percent (crawling along the exclusion boundary)
            if not improved or (len(history) > 10 and res > history[-11] * 0.99):
                break
        return x, res


def _to_registry(p: Polynomial, X: VarietyData) -> Polynomial:
    if p.registry == X.registry:
        return p
    if p.registry == X.ambient_vars:
        return p.with_registry(X.registry)
    raise ProbeError("candidate polynomials must use the variety's variables")


def _vanishes(p: Polynomial, X: VarietyData, q: Point) -> bool:
    assignment = {}
    for name, c in zip(X.ambient_vars, q):
        assignment[name] = c
        assignment[conj_name(name)] = c.conjugate()
    return p.value_at(assignment) == 0


def _exact_check(X: VarietyData, w: np.ndarray) -> bool:
    coords = []
    for j in range(X.n):
        re = Fraction(float(w[2 * j])).limit_denominator(10**12)
        im = Fraction(float(w[2 * j + 1])).limit_denominator(10**12)
        if abs(float(re) - w[2 * j]) > 1e-12 or abs(float(im) - w[2 * j + 1]) > 1e-12:
            return False
        coords.append(GaussianRational(re, im))
    return point_on_variety(X, Point(tuple(coords)))


def germ_consistency_probe(X: VarietyData, q, candidate: Sequence[Polynomial],
                           cfg: ProbeConfig = ProbeConfig()) -> ProbeVerdict:
    """Look for real points of X near ``q`` that stay away from the candidate zero set."""
    q = q if isinstance(q, Point) else Point(tuple(q))
    if len(q) != X.n:
        raise ProbeError(f"expected {X.n} coordinates, got {len(q)}")
    if not point_on_variety(X, q):
        raise ProbeError(f"point {q} is not on the variety")
    candidate = [_to_registry(c, X) for c in candidate]
    for c in candidate:
        if not _vanishes(c, X, q):
            raise ProbeError(f"candidate {c} does not vanish at {q}")
    problem = _Problem(X, q, candidate, cfg)
    best = None
    residuals = []
    for restart in range(cfg.samples):
        rng = np.random.default_rng([cfg.seed, restart])
        x, res = problem.minimize(problem.start(rng))
        residuals.append(res)
        if best is None or res < best[1]:
            best = (x, res)
    x, res = best
    median = float(np.median(residuals))
    if res < cfg.zero_tol and problem.cand_distance(x)[0] > cfg.zero_tol:
        w = tuple(float(v) for v in x)
        return ProbeVerdict("refuted", w, res, median, cfg.seed, _exact_check(X, x))
    if res > cfg.clearance_tol:
        return ProbeVerdict("consistent", None, res, median, cfg.seed)
    return ProbeVerdict("inconclusive", None, res, median, cfg.seed)


@dataclass
class SemicontinuityReport:
    dims: list[int]
    memberships: list[bool]
    violations: list[int] = field(default_factory=list)
    closure_violation: bool = False

    def to_dict(self) -> dict:
        return {
            "dims": self.dims,
            "memberships": self.memberships,
            "violations": self.violations,
            "closure_violation": self.closure_violation,
            "ok": not self.violations and not self.closure_violation,
        }


def semicontinuity_scan(X: VarietyData | ComplexificationIdeal, path: Sequence,
                        k: int) -> SemicontinuityReport:
    """Dimensions along a path whose last point is the limit.

    A violation is any sampled point whose Segre dimension exceeds the
    dimension at the limit point; ``closure_violation`` flags a path lying in
    X_{U[k]} whose limit does not.
    """
    C = X if isinstance(X, ComplexificationIdeal) else complexify(X)
    if not path:
        return SemicontinuityReport([], [])
    points = [p if isinstance(p, Point) else Point(tuple(p)) for p in path]
    dims = [segre_dim_at(C, p) for p in points]
    members = [d >= k for d in dims]
    limit = dims[-1]
    violations = [i for i, d in enumerate(dims[:-1]) if d > limit]
    closure = len(points) > 1 and all(members[:-1]) and not members[-1]
    return SemicontinuityReport(dims, members, violations, closure)


@dataclass
class RegionRow:
    t: Fraction
    point: Point
    exact_membership: bool
    probe_verdict: str | None = None
    min_residual: float | None = None

    def to_dict(self) -> dict:
        return {
            "t": str(self.t),
            "point": str(self.point),
            "exact_membership": self.exact_membership,
            "probe_verdict": self.probe_verdict,
            "min_residual": self.min_residual,
        }


def region_scan(X: VarietyData, curve: Callable[[Fraction], Point], t_grid: Iterable,
                k: int, candidate: Sequence[Polynomial] | None = None,
                cfg: ProbeConfig = ProbeConfig()) -> list[RegionRow]:
    C = complexify(X)
    rows = []
    for t in t_grid:
        t = Fraction(t)
        q = curve(t)
        row = RegionRow(t, q, xk_membership_at(C, q, k))
        if candidate:
            v = germ_consistency_probe(X, q, candidate, cfg)
            row.probe_verdict = v.kind
            row.min_residual = v.min_residual
        rows.append(row)
    return rows


def region_csv(rows: Sequence[RegionRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "exact_membership", "probe_verdict", "min_residual"])
    for r in rows:
        writer.writerow([str(r.t), str(r.exact_membership).lower(), r.probe_verdict or "",
                         "" if r.min_residual is None else repr(r.min_residual)])
    return buf.getvalue()


def curve_from_text(text: str, ambient_vars: Sequence[str], param: str = "t") -> Callable[[Fraction], Point]:
    """Curve from comma-separated coordinate expressions in one real parameter."""
    from .defparse import parse_expression

    parts = text.split(",")
    if len(parts) != len(ambient_vars):
        raise ValueError(f"expected {len(ambient_vars)} coordinates, got {len(parts)}")
    polys = [parse_expression(p, [], extra_vars=[param]) for p in parts]

    def curve(t):
        t = Fraction(t)
        return Point(tuple(p.value_at({param: t}) for p in polys))
    return curve
