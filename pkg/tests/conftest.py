import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cventangle.sampling import Sampler
from cventangle.twomode import TwoModeInvariants, delta_range, mu_bounds

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
purity = st.floats(min_value=0.05, max_value=1.0, allow_nan=False)


@st.composite
def purity_triples(draw):
    """Physical (mu1, mu2, mu), with mu drawn across its whole interval."""
    mu1, mu2 = draw(purity), draw(purity)
    lo, hi = mu_bounds(mu1, mu2)
    return mu1, mu2, lo + draw(unit) * (hi - lo)


@st.composite
def physical_invariants(draw):
    mu1, mu2, mu = draw(purity_triples())
    lo, hi = delta_range(mu1, mu2, mu)
    return TwoModeInvariants(mu1, mu2, mu, lo + draw(unit) * (max(hi, lo) - lo))


@pytest.fixture
def sampler():
    return Sampler(seed=1234)


def tmsv(r):
    """Two-mode squeezed vacuum in standard form."""
    c, s = np.cosh(2 * r), np.sinh(2 * r)
    return np.array([[c, 0, s, 0], [0, c, 0, -s], [s, 0, c, 0], [0, -s, 0, c]])


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_lines():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
