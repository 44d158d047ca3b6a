from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from segrekit.corpus import entry_names, load_entry
from segrekit.defparse import (
    ParseError, VarietyFormatError, bar, format_variety, is_real_valued, load_variety,
    parse_equation, parse_expression, parse_generators, parse_variety, variety_registry,
)
from segrekit.exactpoly import GaussianRational, Polynomial
from segrekit.gb import Ideal, ideal_equal

AMB = ("z", "w", "xi")
REG = variety_registry(AMB)
z, w, xi, cz, cw, cxi = Polynomial.gens(REG)
I = GaussianRational(0, 1)


def test_registry_layout():
    assert REG == ("z", "w", "xi", "conj(z)", "conj(w)", "conj(xi)")


class TestExpression:
    @pytest.mark.parametrize("text,expected", [
        ("-z^2", lambda: -(z * z)),
        ("2*z - 3*w", lambda: 2 * z - 3 * w),
        ("(z + w)^2", lambda: z * z + 2 * z * w + w * w),
        ("z/2 + 1/3", lambda: z * Fraction(1, 2) + Fraction(1, 3)),
        ("i*z", lambda: I * z),
        ("conj(i*z)", lambda: -I * cz),
        ("Re(z)", lambda: (z + cz) * Fraction(1, 2)),
        ("Im(z)", lambda: (z - cz) * (1 / GaussianRational(0, 2))),
        ("z = w", lambda: z - w),
        ("- - z", lambda: z),
        ("z^0", lambda: Polynomial.constant(1, REG)),
    ])
    def test_values(self, text, expected):
        assert parse_expression(text, AMB) == expected()

    def test_power_binds_tighter_than_unary_minus(self):
        assert parse_expression("-2^2", AMB) == Polynomial.constant(-4, REG)

    @pytest.mark.parametrize("text", [
        "z^-1", "z^(1/2)", "z^1/2^2", "z^2^3", "z / w", "1/0", "q + 1", "z +", "(z", "z)",
        "conj(z", "Re z", "z $ w", "z = w = xi", "", "i(z)",
    ])
    def test_errors(self, text):
        with pytest.raises(ParseError):
            parse_expression(text, AMB)

    def test_error_position(self):
        with pytest.raises(ParseError) as info:
            parse_expression("z + * w", AMB, line=7)
        assert info.value.line == 7
        assert info.value.column == 5


class TestEquation:
    def test_nonvar(self):
        (g,) = parse_equation("conj(z)*z - (xi + conj(xi))*w*conj(w)", AMB)
        assert g == z * cz - (xi + cxi) * w * cw

    def test_im_unit(self):
        ((g, u),) = parse_generators("Im(xi)", AMB)
        assert g == xi - cxi
        assert u == GaussianRational(0, Fraction(-1, 2))
        assert g.scale(u) == parse_expression("Im(xi)", AMB)

    def test_complex_equation_splits(self):
        pairs = parse_generators("w = z*conj(z)", ("z", "w"))
        gens = [g for g, _ in pairs]
        reg = variety_registry(("z", "w"))
        z2, w2, cz2, cw2 = Polynomial.gens(reg)
        assert len(gens) == 2
        assert all(is_real_valued(g.scale(u)) for g, u in pairs)
        hand = Ideal([w2 + cw2 - 2 * z2 * cz2, w2 - cw2], reg)
        textbook = Ideal([w2 - z2 * cz2, cw2 - z2 * cz2], reg)
        assert ideal_equal(Ideal(gens, reg), hand)
        assert ideal_equal(Ideal(gens, reg), textbook)

    def test_identically_zero(self):
        with pytest.raises(ParseError):
            parse_equation("z - z", AMB)

    def test_bar_is_involution(self):
        p = I * z * cw + 3 * xi
        assert bar(bar(p)) == p
        assert bar(p) == -I * cz * w + 3 * cxi


class TestVarietyFile:
    def test_isol(self):
        X = load_variety("vars z w xi\neq z*conj(z) + w*conj(w) - xi*conj(xi) = 0\n")
        assert X.n == 3 and len(X.generators) == 1

    def test_noncomplex_from_corpus(self):
        X = load_entry("noncomplex").variety
        assert X.n == 3 and len(X.generators) == 2

    def test_from_path(self, tmp_path):
        path = tmp_path / "cone.var"
        path.write_text("# comment\nvars z\neq z*conj(z)\n")
        X = load_variety(path)
        assert X.name == "cone" and X.generators == (z.with_registry(variety_registry(("z",)), {}) *
                                                     Polynomial.var("conj(z)", variety_registry(("z",))),)

    @pytest.mark.parametrize("text,message", [
        ("vars z\n", "empty generator list"),
        ("eq z\n", "missing 'vars'"),
        ("vars z z\neq z\n", "duplicate"),
        ("vars z\nvars w\neq z\n", "second"),
        ("vars i\neq i\n", "reserved"),
        ("vars z\nfoo bar\neq z\n", "unknown directive"),
        ("vars 2z\neq z\n", "invalid"),
    ])
    def test_format_errors(self, text, message):
        with pytest.raises(VarietyFormatError, match=message):
            parse_variety(text)

    def test_parse_error_carries_line(self):
        with pytest.raises(ParseError) as info:
            parse_variety("vars z\n\neq z +\n")
        assert info.value.line == 3

    @pytest.mark.parametrize("name", [n for n in entry_names() if load_entry(n).variety])
    def test_round_trip_and_real_valued(self, name):
        X = load_entry(name).variety
        assert all(is_real_valued(g.scale(u)) for g, u in zip(X.generators, X.units))
        again = parse_variety(format_variety(X))
        assert again == X
        assert parse_variety(format_variety(X)) == again  # deterministic


ident = st.sampled_from(["z", "w", "xi", "conj(z)", "conj(w)", "conj(xi)", "i", "2", "1/3"])


@st.composite
def expressions(draw, depth=3):
    if depth == 0 or draw(st.booleans()):
        return draw(ident)
    op = draw(st.sampled_from(["+", "-", "*"]))
    left = draw(expressions(depth=depth - 1))
    right = draw(expressions(depth=depth - 1))
    wrap = draw(st.sampled_from(["{}", "Re({})", "Im({})", "conj({})", "({})^2"]))
    return wrap.format(f"({left}) {op} ({right})")


@given(expressions())
def test_generators_always_real_valued(text):
    p = parse_expression(text, AMB)
    if p.is_zero():
        return
    for g, u in parse_generators(text, AMB):
        assert is_real_valued(g.scale(u))
        assert g.leading()[1] == 1


@given(expressions())
def test_render_reparses(text):
    p = parse_expression(text, AMB)
    assert parse_expression(p.render(), AMB) == p
