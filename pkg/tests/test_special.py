from math import lgamma, log, pi

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mfrwt.special import digamma, log_constant

EULER = 0.5772156649015329


@pytest.mark.parametrize(
    "x, value",
    [
        (1.0, -EULER),
        (0.5, -EULER - 2 * log(2)),
        (0.25, -EULER - pi / 2 - 3 * log(2)),
        (0.75, -EULER + pi / 2 - 3 * log(2)),
        (2.0, 1 - EULER),
    ],
)
def test_digamma_closed_forms(x, value):
    assert digamma(x) == pytest.approx(value, abs=1e-13)


@given(st.floats(0.05, 50.0))
@settings(max_examples=60, deadline=None)
def test_digamma_matches_lgamma_derivative(x):
    h = 1e-5 * max(1.0, x)
    fd = (lgamma(x + h) - lgamma(x - h)) / (2 * h)
    assert digamma(x) == pytest.approx(fd, rel=1e-6, abs=1e-6)


@given(st.floats(0.01, 100.0))
@settings(max_examples=60, deadline=None)
def test_digamma_recurrence(x):
    assert digamma(x + 1) - digamma(x) == pytest.approx(1 / x, rel=1e-12, abs=1e-12)


def test_digamma_domain():
    with pytest.raises(ValueError):
        digamma(0.0)
    with pytest.raises(ValueError):
        digamma(-1.5)


def test_log_constant_one_and_two_dims():
    assert log_constant(1) == pytest.approx(-EULER - pi / 2 - 4 * log(2), abs=1e-12)
    assert log_constant(1) == pytest.approx(-4.920600713936211, abs=1e-10)
    assert log_constant(2) == pytest.approx(-EULER - 3 * log(2), abs=1e-12)
    assert log_constant(4) == pytest.approx(-EULER - log(2), abs=1e-12)
    assert np.all(np.diff([log_constant(n) for n in range(1, 6)]) > 0)
