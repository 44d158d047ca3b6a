"""Complexification, Segre ideals at points, and the full-degeneracy locus.

Conventions: the complexified registry is ``(z1..zn, zeta1..zetan)`` where
``zetaj`` stands in for the conjugate of ``zj``.  Dimensions are complex
dimensions of zero sets, with ``-1`` for the empty set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .defparse import VarietyData, bar, conj_name
from .exactpoly import (
    GaussianRational, Monomial, Polynomial, RegistryMismatch, exact_quotient, lex_key,
)
from .gb import (
    LEX, BudgetExceeded, GroebnerBasis, Ideal, krull_dimension,
    radical_membership,
)

DEFAULT_ANSATZ_CAP = 6


class SigmaClosureError(RuntimeError):
    """A complexified generator's sigma-image fell outside the ideal."""


class AnsatzCapExceeded(BudgetExceeded):
    pass


class ConsistencyError(RuntimeError):
    """Two independent routes to the same answer disagreed."""


@dataclass(frozen=True)
class Point:
    coords: tuple[GaussianRational, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords",
                           tuple(GaussianRational.coerce(c) for c in self.coords))

    @classmethod
    def parse(cls, text: str) -> "Point":
        parts = [p for p in text.split(",")]
        if any(not p.strip() for p in parts):
            raise ValueError(f"malformed point {text!r}")
        return cls(tuple(GaussianRational.parse(p) for p in parts))

    @classmethod
    def of(cls, *values) -> "Point":
        return cls(tuple(values))

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def conjugate(self) -> "Point":
        return Point(tuple(c.conjugate() for c in self.coords))

    def is_real_origin(self) -> bool:
        return not any(self.coords)

    def __str__(self):
        return ",".join(str(c) for c in self.coords)


def zeta_names(n: int) -> tuple[str, ...]:
    return tuple(f"zeta{j + 1}" for j in range(n))


@dataclass
class ComplexificationIdeal:
    """Ideal in ``(z, zeta)`` generated by the complexified defining polynomials."""

    ideal: Ideal
    ambient_vars: tuple[str, ...]
    source: VarietyData | None = None
    sigma_proof: list[tuple[Polynomial, Polynomial]] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.ambient_vars)

    @property
    def registry(self) -> tuple[str, ...]:
        return self.ideal.registry

    @property
    def zvars(self) -> tuple[str, ...]:
        return self.registry[:self.n]

    @property
    def generators(self) -> tuple[Polynomial, ...]:
        return self.ideal.generators

    @classmethod
    def from_polynomials(cls, gens: Sequence[Polynomial],
                         ambient_vars: Sequence[str]) -> "ComplexificationIdeal":
        ambient_vars = tuple(ambient_vars)
        registry = ambient_vars + zeta_names(len(ambient_vars))
        if gens and gens[0].registry != registry:
            raise RegistryMismatch(f"expected registry {list(registry)}")
        return cls(Ideal(gens, registry), ambient_vars)


def complex_registry(ambient_vars: Sequence[str]) -> tuple[str, ...]:
    ambient_vars = tuple(ambient_vars)
    zetas = zeta_names(len(ambient_vars))
    clash = set(ambient_vars) & set(zetas)
    if clash:
        raise ValueError(f"ambient variable names clash with complexified names: {sorted(clash)}")
    return ambient_vars + zetas


def sigma_image(g: Polynomial) -> Polynomial:
    """Ideal-level involution: conjugate coefficients and swap z_j with zeta_j."""
    return bar(g)


def complexify(X: VarietyData) -> ComplexificationIdeal:
    registry = complex_registry(X.ambient_vars)
    rename = {conj_name(v): z for v, z in zip(X.ambient_vars, zeta_names(X.n))}
    gens = [g.with_registry(registry, rename) for g in X.generators]
    C = ComplexificationIdeal(Ideal(gens, registry), X.ambient_vars, X)
    G = C.ideal.groebner()
    proof = []
    for g in gens:
        img = sigma_image(g)
        nf = G.normal_form(img)
        if not nf.is_zero():
            raise SigmaClosureError(f"sigma-image of {g} has normal form {nf}")
        proof.append((img, nf))
    C.sigma_proof = proof
    return C


def sigma_check(C: ComplexificationIdeal) -> bool:
    G = C.ideal.groebner()
    return all(G.contains(sigma_image(g)) for g in C.generators)


def _as_point(q, n: int) -> Point:
    if not isinstance(q, Point):
        q = Point(tuple(q))
    if len(q) != n:
        raise ValueError(f"expected {n} coordinates, got {len(q)}")
    return q


def point_on_variety(X: VarietyData, q) -> bool:
    q = _as_point(q, X.n)
    assignment = {}
    for name, c in zip(X.ambient_vars, q):
        assignment[name] = c
        assignment[conj_name(name)] = c.conjugate()
    return all(g.value_at(assignment) == 0 for g in X.generators)


def segre_ideal_at(C: ComplexificationIdeal, q) -> Ideal:
    """Ideal in ``z`` of the relative Segre variety: substitute ``zeta = conj(q)``."""
    q = _as_point(q, C.n)
    zetas = C.registry[C.n:]
    assignment = {zname: c.conjugate() for zname, c in zip(zetas, q)}
    zreg = C.zvars
    gens = [g.evaluate(assignment).with_registry(zreg) for g in C.generators]
    return Ideal(gens, zreg)


def _vanishes_at(I: Ideal, q: Point) -> bool:
    assignment = dict(zip(I.registry, q))
    return all(g.value_at(assignment) == 0 for g in I.generators)


def segre_dim_at(C: ComplexificationIdeal, q) -> int:
    """Dimension of the relative Segre variety, or -1 when ``q`` is not on it.

    The value is the global dimension of the Segre ideal; the base point only
    decides the empty case.
    """
    q = _as_point(q, C.n)
    S = segre_ideal_at(C, q)
    if not _vanishes_at(S, q):
        return -1
    return krull_dimension(S)


def xk_membership_at(C: ComplexificationIdeal, q, k: int) -> bool:
    if not 0 <= k <= C.n:
        raise ValueError(f"k must lie in 0..{C.n}, got {k}")
    return segre_dim_at(C, q) >= k


def degenerate_locus_full(C: ComplexificationIdeal) -> Ideal:
    """Equations on ``q`` for ``F(z, conj(q)) == 0`` identically in ``z``, all generators ``F``."""
    zreg = C.zvars
    rename = {zeta: z for zeta, z in zip(C.registry[C.n:], zreg)}
    coeffs = []
    for g in C.generators:
        for _, c in g.collect_coefficients(zreg).items():
            coeffs.append(c.conjugate_coeffs().with_registry(zreg, rename))
    return Ideal(coeffs, zreg)


def point_in_locus(L: Ideal, q: Point) -> bool:
    """``q`` in V(L), decided by radical membership in the maximal ideal of ``q``."""
    zreg = L.registry
    m_q = Ideal([Polynomial.var(v, zreg) - c for v, c in zip(zreg, q)], zreg)
    return all(radical_membership(g, m_q) for g in L.generators)


@dataclass
class SegreReport:
    point: Point
    on_variety: bool
    segre_dim: int
    k_membership: list[bool]
    fully_degenerate: bool
    segre_basis: GroebnerBasis

    def to_dict(self) -> dict:
        return {
            "point": str(self.point),
            "on_variety": self.on_variety,
            "segre_dim": self.segre_dim,
            "k_membership": self.k_membership,
            "fully_degenerate": self.fully_degenerate,
            "segre_basis": self.segre_basis.render(),
        }


def classify_point(X: VarietyData | ComplexificationIdeal, q,
                   locus: Ideal | None = None) -> SegreReport:
    C = X if isinstance(X, ComplexificationIdeal) else complexify(X)
    q = _as_point(q, C.n)
    S = segre_ideal_at(C, q)
    on = _vanishes_at(S, q)
    dim = krull_dimension(S) if on else -1
    if C.source is not None and point_on_variety(C.source, q) != on:
        raise ConsistencyError("diagonal membership disagrees with Segre membership")
    memberships = [dim >= k for k in range(C.n + 1)]
    full = dim == C.n
    L = locus if locus is not None else degenerate_locus_full(C)
    if point_in_locus(L, q) != full:
        raise ConsistencyError("pointwise degeneracy disagrees with the locus ideal")
    return SegreReport(q, on, dim, memberships, full, S.groebner())


# realification -----------------------------------------------------------

def real_names(n: int) -> tuple[str, ...]:
    out = []
    for j in range(1, n + 1):
        out += [f"x{j}", f"y{j}"]
    return tuple(out)


def realify(p: Polynomial, n: int | None = None) -> tuple[Polynomial, Polynomial]:
    """Substitute ``z = x + i y``, ``zeta = x - i y``; return real and imaginary parts.

    The registry of ``p`` is either ``n`` holomorphic variables or ``2n``
    variables whose second half holds the conjugate symbols.
    """
    size = len(p.registry)
    if n is None:
        n = size // 2 if size % 2 == 0 else size
    if size not in (n, 2 * n):
        raise RegistryMismatch(f"registry of size {size} does not fit n={n}")
    rreg = real_names(n)
    images = {}
    for j in range(n):
        x = Polynomial.var(f"x{j + 1}", rreg)
        y = Polynomial.var(f"y{j + 1}", rreg)
        images[p.registry[j]] = x + y * GaussianRational(0, 1)
        if size == 2 * n:
            images[p.registry[n + j]] = x - y * GaussianRational(0, 1)
    full = p.substitute(images, rreg)
    re_terms = {m: c.re for m, c in full.terms.items()}
    im_terms = {m: c.im for m, c in full.terms.items()}
    return Polynomial(re_terms, rreg), Polynomial(im_terms, rreg)


# factorization ansatz ------------------------------------------------------

@dataclass
class AnsatzResult:
    """Outcome of the coefficient ansatz for ``P = G*H``.

    ``complex_reducible`` is decided exactly (a split whose system is not the
    unit ideal).  ``factorizations`` holds every exact Q(i) solution found.
    """

    complex_reducible: bool
    factorizations: list[tuple[Polynomial, Polynomial]]


def _monomials_of_degree(support: Sequence[int], degree: int) -> list[Monomial]:
    out = []
    for combo in itertools.combinations_with_replacement(support, degree):
        out.append(Monomial((v, 1) for v in combo))
    return out


def _rationalize(z: complex) -> list[GaussianRational]:
    cands = []
    for bound in (10, 1000, 10**6, 10**9):
        cands.append(GaussianRational(Fraction(z.real).limit_denominator(bound),
                                      Fraction(z.imag).limit_denominator(bound)))
    return cands


def _exact_roots(f: Polynomial, var: int) -> list[GaussianRational]:
    """Exact Q(i) roots of a univariate polynomial, found numerically and verified exactly."""
    deg = max(m.exponent(var) for m in f.terms)
    coeffs = [0j] * (deg + 1)
    for m, c in f.terms.items():
        coeffs[deg - m.exponent(var)] = complex(c)
    name = f.registry[var]
    found: list[GaussianRational] = []
    for r in np.roots(coeffs):
        for cand in _rationalize(complex(r)):
            if cand in found:
                break
            if f.value_at({name: cand}) == 0:
                found.append(cand)
                break
    return found


def _solve_zero_dim(eqs: list[Polynomial], unknowns: Sequence[str],
                    depth_budget: int = 64) -> list[dict[str, GaussianRational]]:
    """All exact Q(i) points of a zero-dimensional system, by lex back-substitution."""
    if not unknowns:
        return [{}] if all(e.is_zero() for e in eqs) else []
    registry = eqs[0].registry
    G = Ideal(eqs, registry).groebner(LEX)
    if G.is_unit():
        return []
    last = registry.index(unknowns[-1])
    univariate = [g for g in G.elements if not g.is_zero() and g.support() == {last}]
    if univariate:
        roots = _exact_roots(univariate[-1], last)
    elif all(last not in g.support() for g in G.elements):
        # unconstrained unknown; any value extends, take 0
        roots = [GaussianRational(0)]
    else:
        return []
    solutions = []
    for r in roots:
        sub = [g.evaluate({unknowns[-1]: r}) for g in G.elements]
        sub = [s for s in sub if not s.is_zero()]
        if any(s.is_constant() for s in sub):
            continue
        if not sub:
            sub = [Polynomial.zero(registry)]
        for sol in _solve_zero_dim(sub, unknowns[:-1], depth_budget - 1):
            sol = dict(sol)
            sol[unknowns[-1]] = r
            solutions.append(sol)
        if len(solutions) > depth_budget:
            break
    return solutions


def ansatz_search(P: Polynomial, cap: int = DEFAULT_ANSATZ_CAP) -> AnsatzResult:
    """Search ``P = G*H`` over Q(i) with undetermined coefficients, split by split."""
    if P.is_zero():
        raise ValueError("zero polynomial")
    m = P.homogeneity()
    if m is None:
        raise ValueError("polynomial is not homogeneous")
    if m > cap:
        raise AnsatzCapExceeded(f"degree {m} exceeds the ansatz cap {cap}")
    if m < 2:
        return AnsatzResult(False, [])
    reg = P.registry
    n = len(reg)
    support = sorted(P.support())
    lead, lead_c = P.leading()
    complex_reducible = False
    found: list[tuple[Polynomial, Polynomial]] = []
    for a in range(1, m // 2 + 1):
        divisors = [d for d in _monomials_of_degree(support, a) if d.divides(lead)]
        for L1 in sorted(set(divisors), key=lambda d: lex_key(d, n), reverse=True):
            L2 = lead / L1
            g_monos = [mu for mu in _monomials_of_degree(support, a)
                       if lex_key(mu, n) < lex_key(L1, n)]
            h_monos = [nu for nu in _monomials_of_degree(support, m - a)
                       if lex_key(nu, n) < lex_key(L2, n)]
            unknowns = [f"g{k}" for k in range(len(g_monos))] + [f"h{k}" for k in range(len(h_monos))]
            ureg = tuple(unknowns)
            one = Polynomial.constant(1, ureg) if ureg else None
            if not ureg:
                G = Polynomial({L1: 1}, reg)
                H = Polynomial({L2: lead_c}, reg)
                if G * H == P:
                    complex_reducible = True
                    found.append((G, H))
                continue
            g_coeffs = {L1: one}
            for k, mu in enumerate(g_monos):
                g_coeffs[mu] = Polynomial.var(f"g{k}", ureg)
            h_coeffs = {L2: one.scale(lead_c)}
            for k, nu in enumerate(h_monos):
                h_coeffs[nu] = Polynomial.var(f"h{k}", ureg)
            product: dict[Monomial, Polynomial] = {}
            for mu, gc in g_coeffs.items():
                for nu, hc in h_coeffs.items():
                    t = mu * nu
                    product[t] = product[t] + gc * hc if t in product else gc * hc
            eqs = []
            for t in set(product) | set(P.terms):
                lhs = product.get(t, Polynomial.zero(ureg))
                e = lhs - P.coefficient(t)
                if not e.is_zero():
                    eqs.append(e)
            if not eqs:
                eqs = [Polynomial.zero(ureg)]
            system = Ideal(eqs, ureg)
            if system.groebner().is_unit():
                continue
            complex_reducible = True
            for sol in _solve_zero_dim(list(system.groebner().elements), unknowns):
                G = Polynomial({mu: (c.evaluate(sol).constant_value()) for mu, c in g_coeffs.items()}, reg)
                H = Polynomial({nu: (c.evaluate(sol).constant_value()) for nu, c in h_coeffs.items()}, reg)
                if G * H == P and (G, H) not in found:
                    found.append((G, H))
    return AnsatzResult(complex_reducible, found)


def ansatz_factor_homogeneous(P: Polynomial, cap: int = DEFAULT_ANSATZ_CAP) -> tuple[Polynomial, Polynomial] | None:
    result = ansatz_search(P, cap)
    return result.factorizations[0] if result.factorizations else None


def _is_real_poly(p: Polynomial) -> bool:
    return all(c.is_real() for c in p.terms.values())


@dataclass
class ConeCertificate:
    polynomial: Polynomial
    homogeneous_degree: int | None
    irreducibility: str  # certified-irreducible | reducible-with-witness | indeterminate
    witness: tuple[Polynomial, Polynomial] | None = None
    reason: str = ""

    def __post_init__(self):
        if self.irreducibility == "reducible-with-witness":
            if self.witness is None or self.witness[0] * self.witness[1] != self.polynomial:
                raise ConsistencyError("reducibility witness does not multiply back")

    def to_dict(self) -> dict:
        return {
            "polynomial": str(self.polynomial),
            "homogeneous_degree": self.homogeneous_degree,
            "irreducibility": self.irreducibility,
            "witness": [str(w) for w in self.witness] if self.witness else None,
            "reason": self.reason,
        }


def cone_certificate(P: Polynomial, cap: int = DEFAULT_ANSATZ_CAP) -> ConeCertificate:
    """Homogeneity and irreducibility evidence for a real polynomial ``P``."""
    if P.is_zero():
        raise ValueError("zero polynomial")
    if any(name.startswith("conj(") or name.startswith("zeta") for name in P.variables()):
        raise ValueError("cone certificates take polynomials in real variables")
    degree = P.homogeneity()
    if degree is None:
        return ConeCertificate(P, None, "indeterminate", reason="not homogeneous")
    if degree == 0:
        return ConeCertificate(P, 0, "indeterminate", reason="constant polynomial")
    if degree == 1:
        return ConeCertificate(P, 1, "certified-irreducible", reason="linear")
    try:
        result = ansatz_search(P, cap)
    except BudgetExceeded as exc:
        return ConeCertificate(P, degree, "indeterminate", reason=str(exc))
    if not result.complex_reducible:
        return ConeCertificate(P, degree, "certified-irreducible",
                               reason="no factorization over the complex numbers")
    for G, H in result.factorizations:
        if _is_real_poly(G) and _is_real_poly(H):
            return ConeCertificate(P, degree, "reducible-with-witness", (G, H),
                                   reason="real factorization")
    for G, _ in result.factorizations:
        R = G * G.conjugate_coeffs()
        if R.total_degree() < degree:
            Q = exact_quotient(P, R)
            if Q is not None and _is_real_poly(Q):
                return ConeCertificate(P, degree, "reducible-with-witness", (R, Q),
                                       reason="real factorization from a conjugate pair")
    witness = result.factorizations[0] if result.factorizations else None
    return ConeCertificate(P, degree, "indeterminate", witness,
                           reason="factors over the complex numbers only")


def complexified_gradient_at(C: ComplexificationIdeal, values: Sequence) -> list[list[GaussianRational]]:
    """Exact gradients of every complexified generator at a point of C^{2n}."""
    values = [GaussianRational.coerce(v) for v in values]
    if len(values) != len(C.registry):
        raise ValueError(f"expected {len(C.registry)} values")
    assignment = dict(zip(C.registry, values))
    return [[d.value_at(assignment) for d in g.gradient()] for g in C.generators]
