from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from hkmodular.cohomology import FujikiModel

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_fracs = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 6))


@pytest.fixture
def k3sq():
    """``U ⊕ <-2>``: the S^[2] lattice with basis (e, f, δ)."""
    return FujikiModel.from_gram([[0, 1, 0], [1, 0, 0], [0, 0, -2]])


def brute_classes(d, e, a, bound):
    """Classes (x, y), y > 0, with -a <= 2dxy + ey^2 < 0 inside the box."""
    out = set()
    for x in range(-bound, bound + 1):
        for y in range(1, bound + 1):
            q = 2 * d * x * y + e * y * y
            if -a <= q < 0:
                out.add((x, y))
    return out


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
