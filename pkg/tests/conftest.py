import math
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from shimura_kit.cyclotomic import CycElement, degree
from shimura_kit.modgroup import ResMat, UniMat, _sl2_entries
from shimura_kit.qexpansion import QExpansion

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


levels = st.integers(min_value=1, max_value=24)


@st.composite
def cyc_elements(draw, N=None, bound=20, max_den=12):
    if N is None:
        N = draw(levels)
    nums = draw(st.lists(st.integers(-bound, bound), min_size=degree(N), max_size=degree(N)))
    den = draw(st.integers(1, max_den))
    return CycElement.from_coeffs(N, [Fraction(c, den) for c in nums])


@st.composite
def cyc_tuples(draw, size, N=None):
    if N is None:
        N = draw(levels)
    return N, tuple(draw(cyc_elements(N)) for _ in range(size))


@st.composite
def units_mod(draw, N):
    return draw(st.sampled_from([u for u in range(1, N + 1) if math.gcd(u, N) == 1]))


@st.composite
def resmats(draw, N=None, max_level=24):
    if N is None:
        N = draw(st.integers(min_value=2, max_value=max_level))
    entries = _sl2_entries(N) if N <= 12 else None
    if entries is not None:
        return ResMat(N, *draw(st.sampled_from(entries)))
    # larger N: reduce a random integer matrix
    return ResMat(N, *draw(unimats()).entries)


@st.composite
def unimats(draw, steps=4, bound=4):
    g = UniMat(1, 0, 0, 1)
    for _ in range(draw(st.integers(min_value=0, max_value=steps))):
        k = draw(st.integers(min_value=-bound, max_value=bound))
        g = g @ UniMat(1, k, 0, 1) @ UniMat(0, -1, 1, 0)
    return g


@st.composite
def qexpansions(draw, N, width=1, prec=8, order_min=0):
    coeffs = [draw(cyc_elements(N, bound=5, max_den=1)) for _ in range(prec - order_min)]
    return QExpansion(N, width, order_min, prec, tuple(coeffs))
