"""Closed-form test signals and analyzing wavelets.

Every generator is a product over axes of one-dimensional factors of the form

    g_k(t) = P_k(s) * exp(-s**2 / 2 + i*omega_k*(t - c_k) + i*beta_k*(t - c_k)**2),
    s = (t - c_k) / w_k,

times a complex amplitude. ``P_k`` is a polynomial with complex monomial
coefficients; the named kinds below only differ in how ``P_k``, ``omega_k``
and ``beta_k`` are filled in. The same packed parameters are consumed by the
numba kernels, so generators can be evaluated at arbitrary (off-grid) points
without interpolation.
"""

from dataclasses import dataclass, field
from math import factorial, pi, sqrt

import numpy as np
from numpy.polynomial import hermite as npherm

from .errors import FieldError, GeneratorError
from .grid import SampledField, l2_norm

KINDS = ("gaussian", "hermite1", "gabor", "chirped_gaussian", "hermite_superposition")
MAX_POLY = 6  # Hermite functions 0..5


def _axis_tuple(value, dims, name):
    arr = np.broadcast_to(np.asarray(value, dtype=float), (dims,))
    if not np.all(np.isfinite(arr)):
        raise GeneratorError(f"{name} must be finite")
    return tuple(float(v) for v in arr)


@dataclass(frozen=True)
class Generator:
    kind: str
    dims: int
    center: tuple
    width: tuple
    omega: tuple
    chirp: tuple
    poly: tuple = field(repr=False)
    amplitude: complex = 1.0
    seed: int = None
    max_order: int = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise GeneratorError(f"unknown generator kind {self.kind!r}")
        if any(w <= 0 for w in self.width):
            raise GeneratorError("generator width must be positive")

    # -- evaluation -------------------------------------------------------
    def packed(self):
        """Arrays consumed by the numba kernels."""
        poly = np.zeros((self.dims, MAX_POLY), dtype=np.complex128)
        for k, coeffs in enumerate(self.poly):
            poly[k, : len(coeffs)] = coeffs
        return (
            np.array(self.center),
            np.array(self.width),
            np.array(self.omega),
            np.array(self.chirp),
            poly,
            complex(self.amplitude),
        )

    def axis_factor(self, k, t):
        t = np.asarray(t, dtype=float)
        d = t - self.center[k]
        s = d / self.width[k]
        p = np.polynomial.polynomial.polyval(s, np.asarray(self.poly[k], dtype=complex))
        return p * np.exp(-0.5 * s * s + 1j * (self.omega[k] * d + self.chirp[k] * d * d))

    def __call__(self, *coords):
        """Evaluate at broadcastable per-axis coordinate arrays ``coords``.

        A single ``(..., dims)`` array is also accepted.
        """
        if len(coords) == 1 and self.dims > 1:
            arr = np.asarray(coords[0], dtype=float)
            coords = [arr[..., k] for k in range(self.dims)]
        if len(coords) != self.dims:
            raise GeneratorError(f"expected {self.dims} coordinate arrays, got {len(coords)}")
        out = self.amplitude
        for k, t in enumerate(coords):
            out = out * self.axis_factor(k, t)
        return out

    def scaled(self, factor):
        return _replace(self, amplitude=complex(self.amplitude) * factor)

    def conjugate(self):
        """Generator of ``conj(g)``."""
        return _replace(
            self,
            omega=tuple(-w for w in self.omega),
            chirp=tuple(-b for b in self.chirp),
            poly=tuple(tuple(np.conj(c)) for c in self.poly),
            amplitude=np.conj(complex(self.amplitude)),
        )

    def with_extra_chirp(self, rates):
        """Generator of ``g(t) * exp(i Σ rates_k t_k²)``.

        Folding the extra phase into ``chirp`` and ``omega`` is exact when the
        factor is expanded about ``center``.
        """
        rates = _axis_tuple(rates, self.dims, "rates")
        omega = tuple(w + 2.0 * r * c for w, r, c in zip(self.omega, rates, self.center))
        chirp = tuple(b + r for b, r in zip(self.chirp, rates))
        phase = np.exp(1j * sum(r * c * c for r, c in zip(rates, self.center)))
        return _replace(self, omega=omega, chirp=chirp, amplitude=complex(self.amplitude) * phase)

    def with_linear_phase(self, freqs):
        """Generator of ``g(t) * exp(i Σ freqs_k t_k)``."""
        freqs = _axis_tuple(freqs, self.dims, "freqs")
        omega = tuple(w + q for w, q in zip(self.omega, freqs))
        phase = np.exp(1j * sum(q * c for q, c in zip(freqs, self.center)))
        return _replace(self, omega=omega, amplitude=complex(self.amplitude) * phase)

    def dilated(self, sigma):
        """Generator of ``g(σ t)`` (no amplitude renormalization)."""
        if not sigma > 0:
            raise GeneratorError(f"dilation factor must be positive, got {sigma}")
        return _replace(
            self,
            center=tuple(c / sigma for c in self.center),
            width=tuple(w / sigma for w in self.width),
            omega=tuple(w * sigma for w in self.omega),
            chirp=tuple(b * sigma * sigma for b in self.chirp),
        )

    def translated(self, y):
        """Generator of ``g(t - y)``."""
        y = _axis_tuple(y, self.dims, "y")
        return _replace(self, center=tuple(c + d for c, d in zip(self.center, y)))

    def reflected(self):
        """Generator of ``g(-t)``."""
        poly = tuple(tuple(c * (-1) ** j for j, c in enumerate(p)) for p in self.poly)
        return _replace(
            self,
            center=tuple(-c for c in self.center),
            omega=tuple(-w for w in self.omega),
            poly=poly,
        )

    def bandwidth(self, k, tol_sigmas=14.0):
        """Conservative angular-frequency reach of axis factor ``k``.

        Instantaneous frequency over the support plus ``tol_sigmas`` envelope
        widths (and the polynomial degree, which widens the envelope).
        """
        R = self.support_radius()[k] - abs(self.center[k])
        deg = len(self.poly[k]) - 1
        return abs(self.omega[k]) + 2.0 * abs(self.chirp[k]) * R + (tol_sigmas + deg) / self.width[k]

    def support_radius(self, tol=1e-17):
        """Per-axis radius beyond which ``|g_k|`` is below ``tol`` of its peak."""
        s = np.linspace(-60.0, 60.0, 24001)
        radii = []
        for k in range(self.dims):
            env = np.abs(np.polynomial.polynomial.polyval(s, np.asarray(self.poly[k], complex)))
            env = env * np.exp(-0.5 * s * s)
            keep = np.nonzero(env > tol * env.max())[0]
            reach = max(abs(s[keep[0]]), abs(s[keep[-1]]))
            radii.append(abs(self.center[k]) + self.width[k] * reach)
        return tuple(radii)

    # -- JSON -------------------------------------------------------------
    def to_dict(self):
        d = {
            "kind": self.kind,
            "dims": self.dims,
            "center": list(self.center),
            "width": list(self.width),
            "amplitude": [float(np.real(self.amplitude)), float(np.imag(self.amplitude))],
        }
        if self.kind == "gabor":
            d["omega"] = list(self.omega)
        if self.kind == "chirped_gaussian":
            d["chirp"] = list(self.chirp)
        if self.kind == "hermite_superposition":
            d["seed"] = self.seed
            d["max_order"] = self.max_order
        return d

    @classmethod
    def from_dict(cls, d):
        kind = d.get("kind")
        dims = int(d.get("dims", 1))
        common = {"center": d.get("center", 0.0), "width": d.get("width", 1.0)}
        if kind == "gaussian":
            g = gaussian(dims, **common)
        elif kind == "hermite1":
            g = hermite1(dims, **common)
        elif kind == "gabor":
            g = gabor(dims, omega=d.get("omega", 1.0), **common)
        elif kind == "chirped_gaussian":
            g = chirped_gaussian(dims, rate=d.get("chirp", 0.5), **common)
        elif kind == "hermite_superposition":
            if "seed" not in d:
                raise GeneratorError("hermite_superposition needs a seed")
            g = hermite_superposition(dims, seed=d["seed"], max_order=d.get("max_order", 5), **common)
        else:
            raise GeneratorError(f"unknown generator kind {kind!r}")
        amp = d.get("amplitude")
        if amp is not None:
            g = _replace(g, amplitude=complex(amp[0], amp[1]) if np.ndim(amp) else complex(amp))
        return g


def _replace(gen, **changes):
    from dataclasses import replace

    return replace(gen, **changes)


def _make(kind, dims, center, width, omega=0.0, chirp=0.0, poly=None, **extra):
    dims = int(dims)
    if dims < 1:
        raise GeneratorError("dims must be >= 1")
    if poly is None:
        poly = tuple((1.0 + 0j,) for _ in range(dims))
    return Generator(
        kind=kind,
        dims=dims,
        center=_axis_tuple(center, dims, "center"),
        width=_axis_tuple(width, dims, "width"),
        omega=_axis_tuple(omega, dims, "omega"),
        chirp=_axis_tuple(chirp, dims, "chirp"),
        poly=poly,
        **extra,
    )


def gaussian(dims=1, center=0.0, width=1.0):
    return _make("gaussian", dims, center, width)


def hermite1(dims=1, center=0.0, width=1.0):
    """``Π_k s_k exp(-s_k²/2)``: odd on every axis, so its FT vanishes on the axes."""
    poly = tuple((0j, 1.0 + 0j) for _ in range(int(dims)))
    return _make("hermite1", dims, center, width, poly=poly)


def gabor(dims=1, omega=2.0, center=0.0, width=1.0):
    return _make("gabor", dims, center, width, omega=omega)


def chirped_gaussian(dims=1, rate=0.5, center=0.0, width=1.0):
    return _make("chirped_gaussian", dims, center, width, chirp=rate)


def hermite_polynomial_coeffs(n):
    """Monomial coefficients of the L²-normalized Hermite function ``h_n`` (sans Gaussian)."""
    c = np.zeros(n + 1)
    c[n] = 1.0
    return npherm.herm2poly(c) / sqrt(2.0**n * factorial(n) * sqrt(pi))


def hermite_superposition(dims=1, seed=0, max_order=5, center=0.0, width=1.0):
    """Random complex combination of Hermite functions ``0..max_order`` per axis."""
    if not 0 <= max_order < MAX_POLY:
        raise GeneratorError(f"max_order must be in [0, {MAX_POLY - 1}]")
    rng = np.random.default_rng(seed)
    basis = [hermite_polynomial_coeffs(n) for n in range(max_order + 1)]
    poly = []
    for _ in range(int(dims)):
        w = rng.standard_normal(max_order + 1) + 1j * rng.standard_normal(max_order + 1)
        p = np.zeros(max_order + 1, dtype=complex)
        for wn, bn in zip(w, basis):
            p[: len(bn)] += wn * bn
        poly.append(tuple(p))
    return _make("hermite_superposition", dims, center, width, poly=tuple(poly), seed=int(seed), max_order=max_order)


def sample(gen, grid):
    """Evaluate ``gen`` at every point of ``grid``."""
    if gen.dims != grid.dims:
        raise GeneratorError(f"generator is {gen.dims}-D, grid is {grid.dims}-D")
    return SampledField(grid, gen(*grid.mesh()))


def normalize(f):
    """Scale ``f`` to unit discrete L² norm."""
    n = l2_norm(f)
    if n == 0.0:
        raise FieldError("cannot normalize the zero field")
    return f / n


def random_family(count, dims=1, seed=0, max_order=5):
    """Seeded list of Hermite superpositions; generator ``i`` uses seed ``seed + i``."""
    return [hermite_superposition(dims, seed=seed + i, max_order=max_order) for i in range(count)]


__all__ = [
    "Generator",
    "KINDS",
    "gaussian",
    "hermite1",
    "gabor",
    "chirped_gaussian",
    "hermite_superposition",
    "hermite_polynomial_coeffs",
    "sample",
    "normalize",
    "random_family",
]
