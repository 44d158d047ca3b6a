from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from segrekit.exactpoly import (
    I_UNIT, GaussianRational, Monomial, Polynomial, RegistryMismatch, collect_coefficients,
    conjugate_coeffs, evaluate, exact_quotient, homogeneity, poly_arith,
)

from conftest import REG3, gaussians, nonzero_gaussians, polynomials

z, w, xi = Polynomial.gens(REG3)
CREG = ("z", "w", "xi", "zeta1", "zeta2", "zeta3")
Z, W, XI, Z1, Z2, Z3 = Polynomial.gens(CREG)


def P(expr: str, registry=REG3) -> Polynomial:
    from segrekit.defparse import parse_expression
    return parse_expression(expr, [], extra_vars=registry)


class TestGaussianRational:
    def test_lowest_terms_and_sign(self):
        g = GaussianRational(Fraction(4, -6), Fraction(3, 9))
        assert (g.re.numerator, g.re.denominator) == (-2, 3)
        assert g.im == Fraction(1, 3)

    @pytest.mark.parametrize("text,re,im", [
        ("0", 0, 0), ("-1", -1, 0), ("i", 0, 1), ("-i", 0, -1), ("1/2+1/3i", Fraction(1, 2), Fraction(1, 3)),
        ("2-3i", 2, -3), ("-1/2i", 0, Fraction(-1, 2)), ("7/4", Fraction(7, 4), 0),
    ])
    def test_parse(self, text, re, im):
        assert GaussianRational.parse(text) == GaussianRational(re, im)

    @pytest.mark.parametrize("bad", ["", "1/0", "abc", "1+", "i i", "1/2/3"])
    def test_parse_rejects(self, bad):
        with pytest.raises((ValueError, ZeroDivisionError)):
            GaussianRational.parse(bad)

    def test_i_squared(self):
        assert I_UNIT * I_UNIT == -1

    @given(gaussians)
    def test_str_round_trip(self, g):
        assert GaussianRational.parse(str(g)) == g

    @given(nonzero_gaussians)
    def test_inverse(self, g):
        assert g * g.inverse() == 1

    @given(gaussians, gaussians)
    def test_conjugate_multiplicative(self, a, b):
        assert (a * b).conjugate() == a.conjugate() * b.conjugate()
        assert a.norm() == (a * a.conjugate()).re

    def test_complex_agrees(self):
        g = GaussianRational(Fraction(1, 2), Fraction(-3, 4))
        assert complex(g) == complex(0.5, -0.75)


class TestMonomial:
    def test_no_zero_exponents(self):
        m = Monomial([(0, 2), (1, 0), (2, 1)])
        assert m.as_dict() == {0: 2, 2: 1}
        assert m.degree == 3

    def test_division_and_lcm(self):
        a = Monomial.from_exponents([2, 1, 0])
        b = Monomial.from_exponents([1, 3, 1])
        assert a.lcm(b) == Monomial.from_exponents([2, 3, 1])
        assert Monomial.from_exponents([1, 1, 0]).divides(a)
        assert a / Monomial.from_exponents([1, 0, 0]) == Monomial.from_exponents([1, 1, 0])
        assert not a.divides(b)


class TestArithmetic:
    def test_cancellation(self):
        assert poly_arith(z + w, z - w, "add") == 2 * z

    def test_difference_of_squares(self):
        assert poly_arith(z + I_UNIT * w, z - I_UNIT * w, "mul") == z**2 + w**2

    def test_registry_mismatch(self):
        other = Polynomial.var("z", ("z", "w"))
        with pytest.raises(RegistryMismatch):
            poly_arith(z, other, "add")

    def test_sixth_power_against_naive_expansion(self):
        reg = ("x", "y")
        x, y = Polynomial.gens(reg)
        p = ((x**2 + y**2) ** 3) ** 2
        # naive oracle: expand the 12-fold product term by term
        counts: dict = {}
        for choice in product((0, 1), repeat=6):
            k = sum(choice)
            counts[k] = counts.get(k, 0) + 1
        expected = {Monomial.from_exponents([2 * (6 - k), 2 * k]): GaussianRational(c)
                    for k, c in counts.items()}
        assert len(p) == 7
        assert p.terms == expected
        assert [p.coefficient(Monomial.from_exponents([12 - 2 * k, 2 * k])) for k in range(7)] == \
            [1, 6, 15, 20, 15, 6, 1]

    @given(polynomials(), polynomials(), polynomials())
    def test_ring_axioms(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a - a == Polynomial.zero(REG3)

    @given(polynomials())
    def test_no_zero_coefficients_stored(self, a):
        assert all(c for c in (a * a - a).terms.values())

    def test_division_by_constant_only(self):
        assert (2 * z) / 2 == z
        with pytest.raises((TypeError, ValueError)):
            z / w


class TestEvaluate:
    def test_all_terms_killed(self):
        p = Z * Z1 - W * Z2
        assert evaluate(p, {"zeta1": 0, "zeta2": 0}).is_zero()

    def test_hand_substitution(self):
        p = Z * Z1 + W * Z2 - XI * Z3
        assert evaluate(p, {"zeta1": 1, "zeta2": 0, "zeta3": 1}) == Z - XI

    def test_conjugate_point(self):
        a = GaussianRational(1)
        assert evaluate(W - Z * Z1, {"zeta1": a.conjugate()}) == W - Z

    def test_unknown_variable(self):
        with pytest.raises((KeyError, ValueError)):
            evaluate(z, {"nope": 1})

    def test_full_assignment_is_constant(self):
        p = z * w + I_UNIT * xi**2
        v = evaluate(p, {"z": 2, "w": 3, "xi": GaussianRational(0, 1)})
        assert v.is_constant() and v.constant_value() == GaussianRational(6, -1)

    @given(polynomials(), polynomials(), st.fixed_dictionaries({"z": gaussians, "w": gaussians}))
    def test_commutes_with_product(self, a, b, assignment):
        assert evaluate(a * b, assignment) == evaluate(a, assignment) * evaluate(b, assignment)


class TestConjugate:
    def test_examples(self):
        assert conjugate_coeffs(I_UNIT * z) == -I_UNIT * z
        p = GaussianRational(2, 3) * z * w - Fraction(1, 2)
        assert conjugate_coeffs(p) == GaussianRational(2, -3) * z * w - Fraction(1, 2)

    @given(polynomials())
    def test_involution(self, p):
        assert conjugate_coeffs(conjugate_coeffs(p)) == p

    @given(polynomials(), polynomials())
    def test_homomorphism(self, a, b):
        assert conjugate_coeffs(a * b) == conjugate_coeffs(a) * conjugate_coeffs(b)


class TestCollect:
    def test_noncomplex_generator(self):
        out = collect_coefficients(Z * Z1 - W * Z2, ["z", "w"])
        assert out == {Monomial([(0, 1)]): Z1, Monomial([(1, 1)]): -Z2}

    def test_nonvar_generator(self):
        out = collect_coefficients(Z * Z1 - XI * W * Z2 - Z3 * W * Z2, ["z", "w", "xi"])
        assert out == {
            Monomial([(0, 1)]): Z1,
            Monomial([(1, 1), (2, 1)]): -Z2,
            Monomial([(1, 1)]): -Z2 * Z3,
        }

    def test_constant(self):
        assert collect_coefficients(Polynomial.constant(7, REG3), ["z"]) == \
            {Monomial(): Polynomial.constant(7, REG3)}

    def test_not_a_subset(self):
        with pytest.raises(KeyError):
            collect_coefficients(z, ["q"])

    @given(polynomials(CREG, max_terms=6))
    def test_recombination(self, p):
        parts = collect_coefficients(p, ["z", "w", "xi"])
        total = Polynomial.zero(CREG)
        for m, c in parts.items():
            total = total + c.mul_term(m, GaussianRational(1))
        assert total == p


class TestHomogeneity:
    def test_examples(self):
        assert homogeneity(P("(x^2 + y^2)^6 - s^8*x^3*(s - x)", ("x", "y", "s"))) == 12
        assert homogeneity(P("x^2 + y", ("x", "y"))) is None
        reg = ("x1", "y1", "x2", "y2", "x3", "y3")
        assert homogeneity(P("x1^2 + y1^2 + x2^2 + y2^2 - x3^2 - y3^2", reg)) == 2

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            homogeneity(Polynomial.zero(REG3))


class TestStructure:
    @given(polynomials())
    def test_render_round_trip(self, p):
        assert P(p.render()) == p

    @given(polynomials(), polynomials().filter(lambda q: not q.is_zero()))
    def test_exact_quotient(self, a, b):
        assert exact_quotient(a * b, b) == a

    def test_exact_quotient_fails(self):
        assert exact_quotient(z**2 + 1, z) is None

    def test_derivative(self):
        p = z**3 * w + I_UNIT * xi
        assert p.derivative("z") == 3 * z**2 * w
        assert p.gradient() == [3 * z**2 * w, z**3, I_UNIT * Polynomial.constant(1, REG3)]

    @given(polynomials().filter(lambda q: not q.is_zero()))
    def test_monic_unit(self, p):
        m, u = p.monic()
        assert m.leading()[1] == 1
        assert m.scale(u) == p
