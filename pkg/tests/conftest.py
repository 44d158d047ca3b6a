from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from segrekit.exactpoly import GaussianRational, Monomial, Polynomial

settings.register_profile(
    "default", max_examples=100, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

REG3 = ("z", "w", "xi")

small_fracs = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
gaussians = st.builds(GaussianRational, small_fracs, small_fracs)
nonzero_gaussians = gaussians.filter(bool)


def polynomials(registry=REG3, max_terms=4, max_exp=2):
    n = len(registry)
    mono = st.lists(st.integers(0, max_exp), min_size=n, max_size=n).map(Monomial.from_exponents)
    return st.dictionaries(mono, gaussians, max_size=max_terms).map(
        lambda terms: Polynomial(terms, registry))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
