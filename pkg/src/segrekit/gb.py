"""Buchberger's algorithm over Q(i) and the ideal operations built on it.

Polynomials are handled internally as ``{Monomial: GaussianRational}`` dicts;
the public surface speaks :class:`~segrekit.exactpoly.Polynomial`.
"""

from __future__ import annotations

import contextlib
import contextvars
import heapq
import itertools
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from .exactpoly import ONE, ONE_MONOMIAL, GaussianRational, Monomial, Polynomial, RegistryMismatch

DEFAULT_BUDGET = 200_000
BUDGET_ENV = "SEGREKIT_BUDGET"

_budget_var: contextvars.ContextVar[int | None] = contextvars.ContextVar("segrekit_budget", default=None)


class BudgetExceeded(RuntimeError):
    """The S-pair reduction budget ran out before the basis was complete."""


def default_budget() -> int:
    scoped = _budget_var.get()
    if scoped is not None:
        return scoped
    env = os.environ.get(BUDGET_ENV)
    if env:
        return int(env)
    return DEFAULT_BUDGET


@contextlib.contextmanager
def budget_scope(budget: int):
    token = _budget_var.set(budget)
    try:
        yield
    finally:
        _budget_var.reset(token)


@dataclass(frozen=True)
class MonomialOrder:
    """``lex``, ``grevlex``, or ``block``: grevlex on ``block`` names, then grevlex on the rest."""

    kind: str = "grevlex"
    block: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    @classmethod
    def elimination(cls, names: Iterable[str]) -> "MonomialOrder":
        return cls("block", tuple(names))

    def keyfunc(self, registry: Sequence[str]):
        """Return ``key(m)`` as a flat int tuple; larger tuple means larger monomial."""
        n = len(registry)
        if self.kind == "lex":
            def key(m: Monomial):
                return m.dense(n)
            return key
        if self.kind == "grevlex":
            def key(m: Monomial):
                d = m.dense(n)
                return (m.degree,) + tuple(-e for e in reversed(d))
            return key
        front = [registry.index(v) for v in self.block if v in registry]
        missing = [v for v in self.block if v not in registry]
        if missing:
            raise RegistryMismatch(f"block variables not in registry: {missing}")
        back = [i for i in range(n) if i not in set(front)]

        def key(m: Monomial):
            d = m.dense(n)
            fe = [d[i] for i in front]
            be = [d[i] for i in back]
            return ((sum(fe),) + tuple(-e for e in reversed(fe))
                    + (sum(be),) + tuple(-e for e in reversed(be)))
        return key

    def __str__(self):
        if self.kind == "block":
            return f"block({','.join(self.block)})"
        return self.kind


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


class _Ring:
    """Cached order keys for one (registry, order) pair."""

    def __init__(self, registry: tuple[str, ...], order: MonomialOrder):
        self.registry = registry
        self.order = order
        self._key = order.keyfunc(registry)
        self._cache: dict[Monomial, tuple] = {}
        self._neg: dict[Monomial, tuple] = {}

    def key(self, m: Monomial):
        k = self._cache.get(m)
        if k is None:
            k = self._key(m)
            self._cache[m] = k
        return k

    def negkey(self, m: Monomial):
        k = self._neg.get(m)
        if k is None:
            k = tuple(-x for x in self.key(m))
            self._neg[m] = k
        return k

    def lead(self, f: dict) -> Monomial:
        return max(f, key=self.key)


def _monic(f: dict, ring: _Ring) -> dict:
    lm = ring.lead(f)
    inv = f[lm].inverse()
    if inv == ONE:
        return f
    return {m: c * inv for m, c in f.items()}


def _reduce(f: dict, basis: list[tuple[Monomial, dict]], ring: _Ring,
            full: bool = True) -> dict:
    """Remainder of ``f`` on division by monic ``basis`` elements (list of ``(lm, terms)``)."""
    f = dict(f)
    heap = [(ring.negkey(m), m) for m in f]
    heapq.heapify(heap)
    remainder: dict[Monomial, GaussianRational] = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = f.get(m)
        if c is None:
            continue
        for g_lm, g_terms in basis:
            if g_lm.degree <= m.degree and g_lm.divides(m):
                q = m / g_lm
                for gm, gc in g_terms.items():
                    t = gm * q
                    old = f.get(t)
                    v = -(c * gc) if old is None else old - c * gc
                    if v:
                        if old is None:
                            heapq.heappush(heap, (ring.negkey(t), t))
                        f[t] = v
                    else:
                        f.pop(t, None)
                break
        else:
            remainder[m] = c
            del f[m]
            if not full:
                remainder.update(f)
                return remainder
    return remainder


def _spoly(a: tuple[Monomial, dict], b: tuple[Monomial, dict]) -> dict:
    lcm = a[0].lcm(b[0])
    qa, qb = lcm / a[0], lcm / b[0]
    out = {m * qa: c for m, c in a[1].items()}
    for m, c in b[1].items():
        t = m * qb
        v = out.get(t)
        v = -c if v is None else v - c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def _buchberger(polys: list[dict], ring: _Ring, budget: int) -> list[dict]:
    G: list[tuple[Monomial, dict]] = []
    for f in polys:
        if f:
            f = _monic(f, ring)
            G.append((ring.lead(f), f))
    if not G:
        return []
    for lm, _ in G:
        if lm == ONE_MONOMIAL:
            return [{ONE_MONOMIAL: ONE}]
    pairs: set[tuple[int, int]] = {(i, j) for i in range(len(G)) for j in range(i + 1, len(G))}
    reductions = 0

    def pair_key(p):
        i, j = p
        return (G[i][0].lcm(G[j][0]).degree, i, j)

    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        lm_i, lm_j = G[i][0], G[j][0]
        if lm_i.gcd_is_one(lm_j):
            continue
        lcm = lm_i.lcm(lm_j)
        chain = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            if (min(i, k), max(i, k)) in pairs or (min(j, k), max(j, k)) in pairs:
                continue
            if G[k][0].divides(lcm):
                chain = True
                break
        if chain:
            continue
        reductions += 1
        if reductions > budget:
            raise BudgetExceeded(f"S-pair budget of {budget} reductions exhausted")
        r = _reduce(_spoly(G[i], G[j]), G, ring)
        if r:
            r = _monic(r, ring)
            lm = ring.lead(r)
            if lm == ONE_MONOMIAL:
                return [{ONE_MONOMIAL: ONE}]
            new = len(G)
            G.append((lm, r))
            pairs.update((k, new) for k in range(new))
    # minimal basis: drop elements whose leading monomial another divides
    keep: list[tuple[Monomial, dict]] = []
    for idx, (lm, f) in enumerate(G):
        dominated = False
        for jdx, (lm2, _) in enumerate(G):
            if jdx == idx:
                continue
            if lm2.divides(lm) and (lm2 != lm or jdx < idx):
                dominated = True
                break
        if not dominated:
            keep.append((lm, f))
    # interreduce to the unique reduced basis
    reduced = []
    for idx, (lm, f) in enumerate(keep):
        others = [g for jdx, g in enumerate(keep) if jdx != idx]
        tail = {m: c for m, c in f.items() if m != lm}
        r = _reduce(tail, others, ring)
        r[lm] = ONE
        reduced.append((lm, r))
    reduced.sort(key=lambda g: ring.key(g[0]), reverse=True)
    return [f for _, f in reduced]


class GroebnerBasis:
    """Reduced, monic Gröbner basis for one registry and monomial order."""

    def __init__(self, elements: Sequence[Polynomial], order: MonomialOrder,
                 registry: Sequence[str]):
        self.registry = tuple(registry)
        self.order = order
        self.elements = tuple(elements) if elements else (Polynomial.zero(self.registry),)
        self._ring = _Ring(self.registry, order)
        self._internal = [(self._ring.lead(p._terms), p._terms)
                          for p in self.elements if not p.is_zero()]

    def is_zero_ideal(self) -> bool:
        return not self._internal

    def is_unit(self) -> bool:
        return any(lm == ONE_MONOMIAL for lm, _ in self._internal)

    def leading_monomials(self) -> list[Monomial]:
        return [lm for lm, _ in self._internal]

    def normal_form(self, p: Polynomial) -> Polynomial:
        if p.registry != self.registry:
            raise RegistryMismatch("polynomial and basis use different registries")
        if not self._internal:
            return p
        r = _reduce(p._terms, self._internal, self._ring)
        return Polynomial._from_clean(r, self.registry)

    def contains(self, p: Polynomial) -> bool:
        return self.normal_form(p).is_zero()

    def render(self) -> list[str]:
        return [str(g) for g in self.elements]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.registry == other.registry
                and self.order == other.order and self.elements == other.elements)

    def __repr__(self):
        return f"GroebnerBasis({self.render()!r}, order={self.order})"


class Ideal:
    """Ideal generated by a nonempty list of polynomials; bases are memoized per order."""

    def __init__(self, generators: Iterable[Polynomial], registry: Sequence[str] | None = None):
        gens = tuple(generators)
        if registry is None:
            if not gens:
                raise ValueError("an ideal needs at least one generator or an explicit registry")
            registry = gens[0].registry
        self.registry = tuple(registry)
        for g in gens:
            if g.registry != self.registry:
                raise RegistryMismatch("generators use different registries")
        self.generators = gens or (Polynomial.zero(self.registry),)
        self._bases: dict[MonomialOrder, GroebnerBasis] = {}

    @classmethod
    def unit(cls, registry: Sequence[str]) -> "Ideal":
        return cls([Polynomial.constant(1, registry)], registry)

    @property
    def nvars(self) -> int:
        return len(self.registry)

    def groebner(self, order: MonomialOrder = GREVLEX, budget: int | None = None) -> GroebnerBasis:
        gb = self._bases.get(order)
        if gb is None:
            gb = buchberger(self, order, budget)
            self._bases[order] = gb
        return gb

    def contains(self, p: Polynomial) -> bool:
        return self.groebner().contains(p)

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.registry != self.registry:
            raise RegistryMismatch("ideals use different registries")
        return Ideal(self.generators + other.generators, self.registry)

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]!r})"


def buchberger(I: Ideal, order: MonomialOrder = GREVLEX, budget: int | None = None) -> GroebnerBasis:
    budget = default_budget() if budget is None else budget
    ring = _Ring(I.registry, order)
    out = _buchberger([g._terms for g in I.generators], ring, budget)
    elements = [Polynomial._from_clean(f, I.registry) for f in out]
    return GroebnerBasis(elements, order, I.registry)


def normal_form(p: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.normal_form(p)


def ideal_membership(p: Polynomial, I: Ideal) -> bool:
    return I.contains(p)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    return all(J.contains(g) for g in I.generators) and all(I.contains(g) for g in J.generators)


def fresh_name(registry: Sequence[str], stem: str = "t") -> str:
    name = stem
    k = 0
    while name in registry:
        k += 1
        name = f"{stem}{k}"
    return name


def radical_membership(p: Polynomial, I: Ideal) -> bool:
    """Rabinowitsch: ``p`` vanishes on V(I) iff ``1`` lies in ``I + <1 - t p>``."""
    if p.registry != I.registry:
        raise RegistryMismatch("polynomial and ideal use different registries")
    if p.is_zero():
        return True
    t = fresh_name(I.registry)
    ext = I.registry + (t,)
    gens = [g.with_registry(ext) for g in I.generators]
    tv = Polynomial.var(t, ext)
    gens.append(Polynomial.constant(1, ext) - tv * p.with_registry(ext))
    return Ideal(gens, ext).is_unit()


def elimination_ideal(I: Ideal, keep: Iterable[str]) -> Ideal:
    """Generators of ``I`` intersected with the subring in ``keep`` (same registry)."""
    keep = list(keep)
    unknown = [v for v in keep if v not in I.registry]
    if unknown:
        raise RegistryMismatch(f"unknown variables {unknown}")
    eliminate = [v for v in I.registry if v not in keep]
    if not eliminate:
        return I
    G = I.groebner(MonomialOrder.elimination(eliminate))
    keep_idx = {I.registry.index(v) for v in keep}
    gens = [g for g in G.elements if not g.is_zero() and g.support() <= keep_idx]
    return Ideal(gens, I.registry)


def max_independent_set(leading: Sequence[Monomial], nvars: int) -> tuple[int, ...]:
    """Largest variable subset containing the support of no leading monomial."""
    supports = [m.support() for m in leading]
    for size in range(nvars, -1, -1):
        for subset in itertools.combinations(range(nvars), size):
            s = set(subset)
            if not any(sup <= s for sup in supports):
                return subset
    return ()


def krull_dimension(I: Ideal, order: MonomialOrder = GREVLEX) -> int:
    """Dimension of the complex zero set; -1 for the unit ideal."""
    G = I.groebner(order)
    if G.is_unit():
        return -1
    return len(max_independent_set(G.leading_monomials(), I.nvars))
