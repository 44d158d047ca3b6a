"""Independent reference computations used only by the test suite."""

import random
from fractions import Fraction
from itertools import combinations_with_replacement

import sympy

from segrekit.exactpoly import GaussianRational, Monomial, Polynomial


def symbols_for(registry):
    return sympy.symbols([f"v{j}" for j in range(len(registry))])


def to_sympy(p: Polynomial, syms):
    expr = sympy.Integer(0)
    for m, c in p.items():
        coeff = sympy.Rational(c.re.numerator, c.re.denominator) + \
            sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)
        term = coeff
        for var, e in m.items:
            term *= syms[var] ** e
        expr += term
    return sympy.expand(expr)


def sympy_basis(polys, registry, order="grevlex"):
    syms = symbols_for(registry)
    exprs = [to_sympy(p, syms) for p in polys]
    domain = "QQ_I" if any(not c.is_real() for p in polys for c in p.terms.values()) else "QQ"
    return sympy.groebner(exprs, *syms, order=order, domain=domain), syms


def staircase_dimension(generators, nvars: int, lo: int = 24, hi: int = 34) -> int:
    """Dimension of V(monomial ideal) from the growth of the standard-monomial count.

    Counts monomials of degree <= t outside the ideal; for large t this is a
    polynomial in t of degree equal to the dimension (-1 when the count is 0).
    """
    gens = [m.dense(nvars) for m in generators]

    def standard(exps):
        return not any(all(e >= g for e, g in zip(exps, gen)) for gen in gens)

    per_degree = []
    for d in range(hi + 1):
        found = 0
        for combo in combinations_with_replacement(range(nvars), d):
            exps = [0] * nvars
            for v in combo:
                exps[v] += 1
            found += standard(exps)
        per_degree.append(found)
    values = [sum(per_degree[:t + 1]) for t in range(lo, hi + 1)]
    if not any(values):
        return -1
    # degree of the polynomial through the values = order of the last nonzero difference
    degree = 0
    diffs = values
    while any(diffs[1:]) and len(diffs) > 1:
        nxt = [b - a for a, b in zip(diffs, diffs[1:])]
        if not any(nxt):
            break
        diffs = nxt
        degree += 1
    # cumulative count has degree dim
    return degree


def random_monomial_ideal(rng: random.Random, nvars: int, max_deg: int = 5):
    gens = []
    for _ in range(rng.randint(1, 4)):
        deg = rng.randint(0 if rng.random() < 0.05 else 1, max_deg)
        exps = [0] * nvars
        for _ in range(deg):
            exps[rng.randrange(nvars)] += 1
        gens.append(Monomial.from_exponents(exps))
    return gens


def random_poly(rng: random.Random, registry, terms: int = 3, max_deg: int = 2,
                complex_coeffs: bool = False) -> Polynomial:
    n = len(registry)
    out = {}
    for _ in range(terms):
        exps = [0] * n
        for _ in range(rng.randint(0, max_deg)):
            exps[rng.randrange(n)] += 1
        re = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        im = Fraction(rng.randint(-3, 3), rng.randint(1, 3)) if complex_coeffs else 0
        out[Monomial.from_exponents(exps)] = GaussianRational(re, im)
    return Polynomial(out, registry)
