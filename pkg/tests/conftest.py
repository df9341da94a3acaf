import numpy as np
import pytest

from mfrwt import (
    FracOrder,
    admissibility_constant,
    default_translation_grid,
    hermite1,
    make_grid,
    make_scale_grid,
    mfrwt_spectral,
    sample,
)

# Lines collected by tests/test_acceptance.py and echoed after the run.
ACCEPTANCE_LINES = []


class Reference:
    """The reference wavelet configuration, built once per session."""

    def __init__(self):
        self.order = FracOrder((2 * np.pi / 5,), 1.2)
        self.grid = make_grid(1, 16.0, 256)
        self.psi = hermite1(1)
        self.scales = make_scale_grid(1, 1 / 8, 8, 16, True)
        self.signal = hermite1(1)
        self.f = sample(self.signal, self.grid)
        self.admissibility = admissibility_constant(self.psi, self.order)
        self.C = self.admissibility.require()
        self.tgrid = default_translation_grid(self.grid, self.scales, self.psi, self.f)
        self._W = None

    @property
    def W(self):
        if self._W is None:
            self._W = mfrwt_spectral(self.f, self.psi, self.scales, self.order, self.tgrid)
        return self._W


@pytest.fixture(scope="session")
def ref():
    return Reference()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
