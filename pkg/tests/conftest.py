import math

import numpy as np
import pytest
from hypothesis import strategies as st

from hyperwalk.operators import OrthoPair, SU2Params
from hyperwalk.state import WalkState


def random_state(rng, n_sites=12, spread=4, steps=0):
    """Normalized state with random amplitudes on random sites."""
    amps = {}
    for _ in range(n_sites):
        x, m = (int(v) for v in rng.integers(-spread, spread + 1, size=2))
        for c in (0, 1):
            amps[(c, x, m)] = complex(rng.normal(), rng.normal())
    norm = math.sqrt(sum(abs(a) ** 2 for a in amps.values()))
    return WalkState.from_amplitudes({k: a / norm for k, a in amps.items()}, steps)


def random_params(rng):
    return SU2Params(*(float(v) for v in rng.uniform(-math.pi, math.pi, size=3)))


def max_diff(s1: WalkState, s2: WalkState) -> float:
    keys = set(s1.amplitudes) | set(s2.amplitudes)
    return max((abs(s1.amplitudes.get(k, 0j) - s2.amplitudes.get(k, 0j)) for k in keys), default=0.0)


angles = st.floats(-2 * math.pi, 2 * math.pi, allow_nan=False)
su2_params = st.builds(SU2Params, angles, angles, angles)


@st.composite
def walk_states(draw, max_sites=8, spread=3):
    seed = draw(st.integers(0, 2**32 - 1))
    n_sites = draw(st.integers(1, max_sites))
    return random_state(np.random.default_rng(seed), n_sites, spread)


@st.composite
def ortho_pairs(draw):
    p = draw(su2_params)
    phase1, phase2 = draw(angles), draw(angles)
    from hyperwalk.operators import coin_matrix

    m = coin_matrix(p)
    return OrthoPair(tuple(np.exp(1j * phase1) * m[:, 0]), tuple(np.exp(1j * phase2) * m[:, 1]))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


#: ``(criterion, passed, detail)`` rows filled by the acceptance tests.
ACCEPTANCE_LINES = []


def record_acceptance(number, passed, detail):
    ACCEPTANCE_LINES.append((number, bool(passed), detail))
    return passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
