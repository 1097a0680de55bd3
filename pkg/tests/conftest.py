import sys

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from tccorr.reduction import TwoQubitX

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def random_x_state(rng: np.random.Generator) -> TwoQubitX:
    """Random X state with r14 = 0; mixes near-pure and near-diagonal draws."""
    p = rng.dirichlet(np.ones(4) * rng.choice([0.3, 1.0, 3.0]))
    mag = np.sqrt(p[1] * p[2]) * np.sqrt(rng.uniform())
    return TwoQubitX(p[0], p[1], p[2], p[3], mag * np.exp(2j * np.pi * rng.uniform()))


def random_density(rng: np.random.Generator, dim: int = 4, rank: int | None = None) -> np.ndarray:
    rank = rank or dim
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


@st.composite
def x_states(draw):
    w = [draw(st.floats(0.0, 1.0)) for _ in range(4)]
    total = sum(w)
    if total < 1e-6:
        w, total = [0.25] * 4, 1.0
    p = [x / total for x in w]
    frac = draw(st.floats(0.0, 1.0))
    phase = draw(st.floats(0.0, 2 * np.pi))
    r23 = frac * np.sqrt(p[1] * p[2]) * np.exp(1j * phase)
    return TwoQubitX(*p, r23)


alphas = st.floats(0.0, 1.0, allow_nan=False)
manifolds = st.integers(1, 50)
taus = st.floats(0.0, 1.0, allow_nan=False)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for i in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.format_line(i, *mod.RESULTS[i]))
