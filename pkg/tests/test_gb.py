import random

import pytest
import sympy
from hypothesis import given, strategies as st

from segrekit.exactpoly import Monomial, Polynomial
from segrekit.gb import (
    GREVLEX, LEX, BudgetExceeded, Ideal, MonomialOrder, budget_scope, buchberger,
    default_budget, elimination_ideal, ideal_equal, ideal_membership, krull_dimension,
    normal_form, radical_membership,
)

from oracles import random_monomial_ideal, random_poly, staircase_dimension, sympy_basis, to_sympy

XY = ("x", "y")
x, y = Polynomial.gens(XY)
ZW = ("z", "w")
z, w = Polynomial.gens(ZW)


class TestNormalForm:
    def test_examples(self):
        assert normal_form(z, buchberger(Ideal([z]))).is_zero()
        assert normal_form(z**2 + w, buchberger(Ideal([z]), LEX)) == w

    @given(st.integers(0, 10**6))
    def test_unit_ideal(self, seed):
        p = random_poly(random.Random(seed), ZW)
        assert normal_form(p, buchberger(Ideal([z * 0 + 1]))).is_zero()

    def test_registry_mismatch(self):
        G = buchberger(Ideal([z]))
        with pytest.raises(ValueError):
            normal_form(x, G)


class TestBuchberger:
    def test_examples(self):
        assert buchberger(Ideal([z - w, w]), LEX).render() == ["z", "w"]
        zero = buchberger(Ideal([Polynomial.zero(ZW)]))
        assert zero.is_zero_ideal() and zero.render() == ["0"]

    def test_twisted_cubic(self):
        reg = ("x", "y", "z")
        a, b, c = Polynomial.gens(reg)
        I = Ideal([b - a**2, c - a**3])
        assert "y^3 - z^2" in buchberger(I, MonomialOrder.elimination(["x"])).render()
        (g,) = elimination_ideal(I, ["y", "z"]).generators
        assert g.monic()[0] == (b**3 - c**2).monic()[0]

    @pytest.mark.parametrize("seed", range(25))
    @pytest.mark.parametrize("order", ["grevlex", "lex"])
    def test_matches_sympy(self, seed, order):
        rng = random.Random(seed)
        reg = ("a", "b", "c")
        polys = [random_poly(rng, reg, terms=3, max_deg=2, complex_coeffs=seed % 3 == 0)
                 for _ in range(rng.randint(1, 3))]
        ours = buchberger(Ideal(polys), LEX if order == "lex" else GREVLEX)
        theirs, syms = sympy_basis(polys, reg, order)
        assert sorted(map(str, (to_sympy(g, syms) for g in ours if not g.is_zero()))) == \
            sorted(str(sympy.expand(e)) for e in theirs.exprs if e != 0)

    @pytest.mark.parametrize("seed", range(10))
    def test_idempotent_and_deterministic(self, seed):
        rng = random.Random(seed)
        polys = [random_poly(rng, ("a", "b", "c")) for _ in range(3)]
        G = buchberger(Ideal(polys))
        assert buchberger(Ideal(list(G))) == G
        assert buchberger(Ideal(polys)) == G

    def test_reduced_invariants(self):
        rng = random.Random(3)
        G = buchberger(Ideal([random_poly(rng, ("a", "b", "c")) for _ in range(3)]))
        lms = G.leading_monomials()
        for i, a in enumerate(lms):
            for j, b in enumerate(lms):
                assert i == j or not a.divides(b)

    def test_budget(self):
        reg = ("a", "b", "c", "d")
        a, b, c, d = Polynomial.gens(reg)
        I = Ideal([a * b - c**2, b * c - d**2, a**3 - b * d, c * d - a**2])
        with pytest.raises(BudgetExceeded):
            I.groebner(budget=2)
        with budget_scope(3):
            assert default_budget() == 3
        assert default_budget() == 200_000

    def test_budget_env(self, monkeypatch):
        monkeypatch.setenv("SEGREKIT_BUDGET", "17")
        assert default_budget() == 17


class TestMembership:
    def test_examples(self):
        amb = ("z", "w", "xi", "conj(z)", "conj(w)", "conj(xi)")
        Z, W, XI, CZ, CW, CXI = Polynomial.gens(amb)
        assert ideal_membership(Z * CZ - (XI + CXI) * W * CW, Ideal([Z, W]))
        assert not ideal_membership(z + 1, Ideal([z**2]))
        assert not ideal_membership(x * y, Ideal([x**2, y**2]))

    def test_radical_examples(self):
        assert radical_membership(x * y, Ideal([x**2, y**2]))
        assert not radical_membership(x + 1, Ideal([x**2]))
        assert radical_membership(x**3 + y, Ideal([x * 0 + 1]))

    @pytest.mark.parametrize("seed", range(30))
    def test_membership_implies_radical(self, seed):
        rng = random.Random(seed)
        I = Ideal([random_poly(rng, XY) for _ in range(2)])
        p = random_poly(rng, XY)
        q = p * random_poly(rng, XY) + I.generators[0] * random_poly(rng, XY)
        for cand in (p, q, p * p):
            if ideal_membership(cand, I):
                assert radical_membership(cand, I)

    def test_radical_nontrivial(self):
        I = Ideal([(x - 1) ** 2 * y, y**3])
        assert radical_membership(y, I)
        assert not ideal_membership(y, I)


class TestElimination:
    def test_examples(self):
        assert elimination_ideal(Ideal([y - x**2]), ["y"]).generators[0].is_zero()
        (g,) = elimination_ideal(Ideal([x, y - x**2]), ["y"]).generators
        assert g == y
        assert elimination_ideal(Ideal([x * 0 + 1]), ["y"]).is_unit()

    @pytest.mark.parametrize("seed", range(5))
    def test_keep_everything(self, seed):
        rng = random.Random(seed)
        I = Ideal([random_poly(rng, XY) for _ in range(2)])
        assert ideal_equal(elimination_ideal(I, XY), I)


class TestDimension:
    def test_examples(self):
        assert krull_dimension(Ideal([z])) == 1
        assert krull_dimension(Ideal([z * 0 + 1])) == -1
        assert krull_dimension(Ideal([z * w])) == 1
        assert staircase_dimension([Monomial.from_exponents([1, 1])], 2) == 1
        assert krull_dimension(Ideal([Polynomial.zero(ZW)])) == 2

    @pytest.mark.parametrize("seed", range(15))
    def test_orders_agree_on_random_ideals(self, seed):
        rng = random.Random(100 + seed)
        I = Ideal([random_poly(rng, ("a", "b", "c")) for _ in range(rng.randint(1, 3))])
        assert krull_dimension(I, LEX) == krull_dimension(I, GREVLEX)

    @pytest.mark.parametrize("seed", range(10))
    def test_monomial_ideals_against_staircase(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 4)
        reg = tuple(f"v{j}" for j in range(n))
        monos = random_monomial_ideal(rng, n)
        I = Ideal([Polynomial({m: 1}, reg) for m in monos], reg)
        assert krull_dimension(I) == staircase_dimension(monos, n)
