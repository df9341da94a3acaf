"""Uniform rectangular grids on R^N, sampled complex fields, and scale grids.

Grid points along axis ``k`` sit at ``(j - M_k/2) * Δ_k`` for
``j = 0..M_k-1``, so the domain is the half-open box ``[-L_k, L_k)`` and the
origin is always a sample. Integrals are plain Riemann sums with the cell
volume ``Π Δ_k`` as the weight.
"""

from dataclasses import dataclass, field
from itertools import product
from numbers import Number

import numpy as np

from .errors import FieldError, GridError, GridMismatchError, ScaleError


def _per_axis(value, dims, name, cast):
    if np.ndim(value) == 0:
        return (cast(value),) * dims
    out = tuple(cast(v) for v in value)
    if len(out) != dims:
        raise GridError(f"{name} has {len(out)} entries, expected {dims}")
    return out


@dataclass(frozen=True)
class Grid:
    """Uniform sampling of ``[-L_1, L_1) x ... x [-L_N, L_N)``."""

    half_extents: tuple
    samples: tuple

    def __post_init__(self):
        if len(self.half_extents) != len(self.samples) or not self.samples:
            raise GridError("half_extents and samples must be non-empty and equally long")
        for L in self.half_extents:
            if not np.isfinite(L) or L <= 0:
                raise GridError(f"half extent must be positive, got {L}")
        for M in self.samples:
            if M < 2 or M % 2:
                raise GridError(f"samples per axis must be even and >= 2, got {M}")

    @property
    def dims(self):
        return len(self.samples)

    @property
    def shape(self):
        return tuple(self.samples)

    @property
    def size(self):
        return int(np.prod(self.samples))

    @property
    def spacing(self):
        return tuple(2.0 * L / M for L, M in zip(self.half_extents, self.samples))

    @property
    def cell_volume(self):
        return float(np.prod(self.spacing))

    def axis(self, k):
        M = self.samples[k]
        return (np.arange(M) - M // 2) * self.spacing[k]

    @property
    def axes(self):
        return [self.axis(k) for k in range(self.dims)]

    def mesh(self):
        """Coordinate arrays, one per axis, each of shape ``self.shape``."""
        return np.meshgrid(*self.axes, indexing="ij")

    @property
    def points(self):
        """All grid points as a ``(size, dims)`` array in row-major order."""
        return np.stack([m.ravel() for m in self.mesh()], axis=1)

    def radius2(self):
        """``‖t‖²`` at every grid point, shaped like the grid."""
        return sum(m * m for m in self.mesh())

    def origin_index(self):
        return tuple(M // 2 for M in self.samples)

    def to_dict(self):
        return {
            "dims": self.dims,
            "half_extents": list(self.half_extents),
            "samples": list(self.samples),
        }

    @classmethod
    def from_dict(cls, d):
        return make_grid(d["dims"], d["half_extents"], d["samples"])


def make_grid(dims, half_extents, samples):
    """Build a :class:`Grid`; scalar extents or counts are broadcast to all axes.

    >>> make_grid(1, 2.0, 4).axis(0)
    array([-2., -1.,  0.,  1.])
    """
    dims = int(dims)
    if dims < 1:
        raise GridError(f"dims must be >= 1, got {dims}")
    L = _per_axis(half_extents, dims, "half_extents", float)
    M = _per_axis(samples, dims, "samples", int)
    return Grid(L, M)


def grid_from_spacing(spacing, samples):
    """Grid with the given per-axis spacing ``Δ_k`` and sample counts."""
    samples = tuple(int(m) for m in samples)
    return Grid(tuple(0.5 * d * m for d, m in zip(spacing, samples)), samples)


def grids_match(g1, g2, rtol=1e-12):
    if g1.samples != g2.samples:
        return False
    return np.allclose(g1.half_extents, g2.half_extents, rtol=rtol, atol=0.0)


@dataclass(frozen=True, eq=False)
class SampledField:
    """Complex samples of a function on a :class:`Grid`.

    ``values`` has the grid's shape; flattening it in C order gives the
    row-major layout used by the serialized forms. The array is made
    read-only; every operation returns a new field.
    """

    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.array(self.values, dtype=np.complex128)
        if vals.size != self.grid.size:
            raise FieldError(f"field has {vals.size} values, grid has {self.grid.size} points")
        vals = vals.reshape(self.grid.shape)
        if not np.all(np.isfinite(vals)):
            raise FieldError("field values must be finite")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    def with_values(self, values):
        return type(self)(self.grid, values)

    def _check(self, other):
        if not grids_match(self.grid, other.grid):
            raise GridMismatchError("fields live on different grids")

    def __add__(self, other):
        if isinstance(other, SampledField):
            self._check(other)
            return self.with_values(self.values + other.values)
        return self.with_values(self.values + other)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, SampledField):
            self._check(other)
            return self.with_values(self.values - other.values)
        return self.with_values(self.values - other)

    def __neg__(self):
        return self.with_values(-self.values)

    def __mul__(self, other):
        if isinstance(other, SampledField):
            self._check(other)
            return self.with_values(self.values * other.values)
        if isinstance(other, Number):
            return self.with_values(self.values * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            return self.with_values(self.values / other)
        return NotImplemented

    def conj(self):
        return self.with_values(np.conj(self.values))

    def flip(self):
        """Parity ``f(-t)`` on the grid (requires the mirrored index to exist).

        Index ``j`` maps to ``M - j``; the ``j = 0`` sample (``t = -L``) has no
        mirror inside ``[-L, L)`` and is set to zero.
        """
        vals = self.values
        for k in range(self.grid.dims):
            M = self.grid.samples[k]
            src = np.take(vals, np.arange(M, 0, -1) % M, axis=k)
            idx = [slice(None)] * self.grid.dims
            idx[k] = 0
            src[tuple(idx)] = 0.0
            vals = src
        return self.with_values(vals)

    def energy(self):
        return float(np.sum(np.abs(self.values) ** 2) * self.grid.cell_volume)

    def boundary_energy_fraction(self, shell=0.05):
        """Fraction of the energy within ``shell`` (relative width) of the box edge."""
        total = np.sum(np.abs(self.values) ** 2)
        if total == 0.0:
            return 0.0
        inner = np.ones(self.grid.shape, dtype=bool)
        for k, m in enumerate(self.grid.mesh()):
            inner &= np.abs(m) < (1.0 - shell) * self.grid.half_extents[k]
        return float(np.sum(np.abs(self.values[~inner]) ** 2) / total)


def inner_product(f, g):
    """Riemann approximation of ``∫ f(t) conj(g(t)) dt`` over the shared grid."""
    if not grids_match(f.grid, g.grid):
        raise GridMismatchError("inner product of fields on different grids")
    return complex(np.sum(f.values * np.conj(g.values)) * f.grid.cell_volume)


def l2_norm(f):
    ip = inner_product(f, f)
    if abs(ip.imag) > 1e-12 * max(abs(ip.real), np.finfo(float).tiny):
        raise FieldError("<f, f> has a non-negligible imaginary part")
    return float(np.sqrt(max(ip.real, 0.0)))


@dataclass(frozen=True, eq=False)
class ScaleGrid:
    """Discrete stand-in for the scale domain ``R_0^N``.

    Each axis has geometric magnitudes ``a_min * r**i``; the N-dimensional
    points are their tensor product (mirrored across zero on signed axes).
    Two weight vectors are carried on the same point set:

    ``weights``
        ``Π_k δa_k / a_k²``, for the measure ``da / |a|_m²``.
    ``weights1``
        ``Π_k δa_k / |a_k|``, for the measure ``du / |u|_m``.

    ``δa_k`` is the width of the geometric cell around ``a_k``: boundaries sit
    at geometric midpoints and the two end cells are clipped to
    ``[a_min, a_max]``.
    """

    dims: int
    a_min: tuple
    a_max: tuple
    count: tuple
    signed: tuple
    points: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    weights1: np.ndarray = field(repr=False)
    axis_values: tuple = field(repr=False)
    axis_widths: tuple = field(repr=False)

    def __len__(self):
        return self.points.shape[0]

    @property
    def log_ratio(self):
        return tuple(np.log(hi / lo) / (n - 1) for lo, hi, n in zip(self.a_min, self.a_max, self.count))

    def to_dict(self):
        return {
            "dims": self.dims,
            "a_min": list(self.a_min),
            "a_max": list(self.a_max),
            "count": list(self.count),
            "signed": list(self.signed),
        }

    @classmethod
    def from_dict(cls, d):
        return make_scale_grid(d["dims"], d["a_min"], d["a_max"], d["count"], d["signed"])


def _geometric_axis(a_min, a_max, count):
    r = (a_max / a_min) ** (1.0 / (count - 1))
    mags = a_min * r ** np.arange(count)
    mags[-1] = a_max
    sr = np.sqrt(r)
    lo = mags / sr
    hi = mags * sr
    lo[0] = a_min
    hi[-1] = a_max
    return mags, hi - lo


def make_scale_grid(dims, a_min, a_max, count, signed=True):
    """Tensor-product geometric scale grid; see :class:`ScaleGrid`."""
    dims = int(dims)
    if dims < 1:
        raise ScaleError(f"dims must be >= 1, got {dims}")
    lo = _per_axis(a_min, dims, "a_min", float)
    hi = _per_axis(a_max, dims, "a_max", float)
    n = _per_axis(count, dims, "count", int)
    sg = _per_axis(signed, dims, "signed", bool)
    vals, widths = [], []
    for k in range(dims):
        if not lo[k] > 0:
            raise ScaleError(f"a_min must be positive, got {lo[k]}")
        if not hi[k] > lo[k]:
            raise ScaleError(f"a_max must exceed a_min, got {hi[k]} <= {lo[k]}")
        if n[k] < 2:
            raise ScaleError(f"count must be >= 2, got {n[k]}")
        mags, w = _geometric_axis(lo[k], hi[k], n[k])
        if sg[k]:
            mags = np.concatenate([-mags[::-1], mags])
            w = np.concatenate([w[::-1], w])
        vals.append(mags)
        widths.append(w)
    pts = np.array(list(product(*vals)), dtype=float).reshape(-1, dims)
    dw = np.array(list(product(*widths)), dtype=float).reshape(-1, dims)
    absprod = np.prod(np.abs(pts), axis=1)
    wprod = np.prod(dw, axis=1)
    return ScaleGrid(
        dims=dims,
        a_min=lo,
        a_max=hi,
        count=n,
        signed=sg,
        points=pts,
        weights=wprod / absprod**2,
        weights1=wprod / absprod,
        axis_values=tuple(vals),
        axis_widths=tuple(widths),
    )


__all__ = [
    "Grid",
    "SampledField",
    "ScaleGrid",
    "make_grid",
    "grid_from_spacing",
    "grids_match",
    "inner_product",
    "l2_norm",
    "make_scale_grid",
]
