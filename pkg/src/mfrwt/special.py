"""Digamma function for real positive arguments."""

from math import log

# B_{2k} / (2k) for k = 1..7
_ASYMPTOTIC = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)


def digamma(x, shift_to=10.0):
    """``ψ(x) = d/dx ln Γ(x)`` for ``x > 0``.

    The argument is raised above ``shift_to`` with ``ψ(x) = ψ(x + 1) - 1/x``
    and the asymptotic series

        ψ(x) ~ ln x - 1/(2x) - Σ_k B_{2k} / (2k x^{2k})

    is summed there; with seven terms and ``x >= 10`` the truncation error is
    below 1e-16.
    """
    x = float(x)
    if not x > 0:
        raise ValueError(f"digamma is implemented for x > 0, got {x}")
    acc = 0.0
    while x < shift_to:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    term = inv2
    for c in _ASYMPTOTIC:
        series += c * term
        term *= inv2
    return acc + log(x) - 0.5 / x - series


def log_constant(dims):
    """``D = ψ(N/4) - ln 2`` of the logarithmic inequality."""
    return digamma(dims / 4.0) - log(2.0)


__all__ = ["digamma", "log_constant"]
