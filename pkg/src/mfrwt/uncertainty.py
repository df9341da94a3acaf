"""Both sides of the Heisenberg, logarithmic and local uncertainty inequalities.

Every function returns an :class:`UncertaintyReport`. Constants that depend
on the order are evaluated with the kernel constant ``κ`` actually used by
:mod:`mfrwt.frft`:

* ``P  = |κ|² |sin α|_m / (M² λ^{2N+4})``
* ``P' = λ^{2N} / (|κ|² |sin α|_m)``
* ``M² = max_k csc² α_k`` and ``D = ψ(N/4) - ln 2``.

Signals may be given as sampled fields or as generators. A generator is
sampled on a grid chosen so that the chirp is resolved and the spectrum's
boundary shell holds less than ``TAIL_TOL`` of its energy; a field that fails
the same check raises :class:`~mfrwt.errors.TailMassError`.
"""

from dataclasses import dataclass, field
from math import ceil, log, pi

import numpy as np

from .errors import ParameterError, RegionError, TailMassError
from .frft import as_order, frft_fast
from .grid import Grid, SampledField, grid_from_spacing, make_grid
from .signals import Generator, sample
from .special import log_constant
from .wavelet import admissibility_constant, mfrwt_direct

TAIL_TOL = 1e-6
SHELL = 0.05


@dataclass(frozen=True)
class UncertaintyReport:
    """One evaluated inequality ``lhs >= rhs``.

    ``ratio`` is ``1 + (lhs - rhs) / |rhs|``, which equals ``lhs / rhs`` for a
    positive right-hand side and stays meaningful when ``rhs < 0`` (the
    logarithmic bounds). For the local estimates ``satisfied`` is ``None``
    and ``ratio`` is the empirical quotient ``R``.
    """

    name: str
    lhs: float
    rhs: float
    ratio: float
    satisfied: object
    constants: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)


def _report(name, lhs, rhs, constants, extra=None, rtol=1e-9):
    lhs, rhs = float(lhs), float(rhs)
    if rhs == 0.0:
        ratio = 1.0 if lhs == 0.0 else float(np.copysign(np.inf, lhs))
    else:
        ratio = 1.0 + (lhs - rhs) / abs(rhs)
    satisfied = bool(lhs >= rhs - rtol * abs(rhs))
    return UncertaintyReport(name, lhs, rhs, ratio, satisfied, constants, extra or {})


# ---------------------------------------------------------------------------
# constants
# ---------------------------------------------------------------------------


def heisenberg_constant(order):
    order = as_order(order)
    return abs(order.kernel_constant) ** 2 * order.sin_prod / (order.M2 * order.lam2 ** (order.dims + 2))


def log_prime_constant(order):
    order = as_order(order)
    return order.lam2**order.dims / (abs(order.kernel_constant) ** 2 * order.sin_prod)


def local_prefactor(order):
    """``|κ|² |sin α|_m / λ^{2N}`` (equal to 1 for the unitary kernel)."""
    order = as_order(order)
    return abs(order.kernel_constant) ** 2 * order.sin_prod / order.lam2**order.dims


def order_constants(order):
    order = as_order(order)
    return {
        "P": heisenberg_constant(order),
        "P_prime": log_prime_constant(order),
        "M2": order.M2,
        "D": log_constant(order.dims),
    }


# ---------------------------------------------------------------------------
# signals and spectra
# ---------------------------------------------------------------------------


def spectral_grid(gen, order, tail=1e-12):
    """Grid on which ``gen`` is negligible at the edges and ``gen · e`` is resolved.

    The half extent covers the generator's support (relative amplitude
    ``tail``). The spacing satisfies both the chirp criterion
    ``λ² |a_k| L_k Δ_k <= π/4`` and Nyquist for the chirped signal.
    """
    order = as_order(order)
    radii = gen.support_radius(tail)
    L, M = [], []
    for k in range(order.dims):
        Lk = float(ceil(radii[k] + 1.0))
        chirp = order.lam2 * abs(order.quad[k])
        band = gen.bandwidth(k) + 2.0 * chirp * Lk
        d = pi / band
        if chirp > 0:
            d = min(d, pi / (4.0 * chirp * Lk))
        Mk = 2 * int(ceil(Lk / d))
        Mk = max(64, 1 << int(ceil(np.log2(Mk))))
        L.append(Lk)
        M.append(Mk)
    return make_grid(order.dims, L, M)


def resolve_signal(f, order, grid=None):
    """Return ``(field, spectrum)`` with the spectrum's tail mass below ``TAIL_TOL``.

    Generators are sampled on ``grid`` (or :func:`spectral_grid`) and the
    grid is refined until the tail check passes. Fields are checked as
    given.
    """
    order = as_order(order)
    if isinstance(f, Generator):
        g = grid if grid is not None else spectral_grid(f, order)
        for _ in range(4):
            fs = sample(f, g)
            F = frft_fast(fs, order, warn=False)
            if _tail_ok(fs, F):
                return fs, F
            g = make_grid(g.dims, g.half_extents, [2 * m for m in g.samples])
        raise TailMassError("could not resolve the spectrum within 4 grid refinements", tail=_tail(F))
    F = frft_fast(f, order, warn=False)
    if not _tail_ok(f, F):
        raise TailMassError(
            f"boundary-shell energy {max(_tail(f), _tail(F)):.3g} exceeds {TAIL_TOL:g}",
            signal_tail=_tail(f),
            spectrum_tail=_tail(F),
        )
    return f, F


def _tail(field):
    return field.boundary_energy_fraction(SHELL)


def _tail_ok(f, F):
    return _tail(f) < TAIL_TOL and _tail(F) < TAIL_TOL


def dispersion2(f):
    """``∫ ‖t‖² |f(t)|² dt`` by Riemann sum."""
    return float(np.sum(f.grid.radius2() * np.abs(f.values) ** 2) * f.grid.cell_volume)


def _gauss_legendre_cell_log(spacing, nodes=5):
    """Value assigned to ``ln ‖x‖`` at the origin sample.

    In 1-D the plain Riemann sum of ``ln|t| g(t)`` carries an ``O(Δ)`` bias
    from the cells next to the singularity. Summing ``ln|k|`` with Stirling's
    formula gives the bias as ``(ln π - 1) Δ g(0)`` relative to the cell
    average ``ln(Δ/2) - 1``; using ``ln(Δ/(2π))`` at the origin cancels it
    and leaves an error of higher order.

    For ``N >= 2`` the bias is ``O(Δ^N ln Δ)`` and the cell average is
    enough: the integrand is even in every coordinate, so the average over
    one quadrant ``Π [0, Δ_k/2]`` is computed with a ``nodes``-point
    Gauss–Legendre rule per axis (no node touches the singular corner).
    """
    if len(spacing) == 1:
        return log(spacing[0] / (2.0 * pi))
    x, w = np.polynomial.legendre.leggauss(nodes)
    axes = [0.25 * d * (x + 1.0) for d in spacing]
    weights = [0.5 * w for _ in spacing]
    mesh = np.meshgrid(*axes, indexing="ij")
    wmesh = np.meshgrid(*weights, indexing="ij")
    r2 = sum(m * m for m in mesh)
    wt = np.prod(np.stack(wmesh), axis=0)
    return float(np.sum(wt * 0.5 * np.log(r2)))


def log_moment(f):
    """``∫ ln‖t‖ |f(t)|² dt`` with the origin cell replaced by its cell average."""
    g = f.grid
    r2 = g.radius2()
    with np.errstate(divide="ignore"):
        lg = 0.5 * np.log(r2)
    lg[g.origin_index()] = _gauss_legendre_cell_log(g.spacing)
    return float(np.sum(lg * np.abs(f.values) ** 2) * g.cell_volume)


def _energy(field):
    return float(np.sum(np.abs(field.values) ** 2) * field.grid.cell_volume)


# ---------------------------------------------------------------------------
# Heisenberg
# ---------------------------------------------------------------------------


def heisenberg_mfrft(f, order, grid=None):
    """``(∫‖t‖²|f|²)(∫‖ξ‖²|F f|²) >= P N²/4 ‖f‖⁴``."""
    order = as_order(order)
    fs, F = resolve_signal(f, order, grid)
    consts = order_constants(order)
    lhs = dispersion2(fs) * dispersion2(F)
    rhs = consts["P"] * order.dims**2 / 4.0 * _energy(fs) ** 2
    return _report("heisenberg_mfrft", lhs, rhs, consts, {"time_dispersion": dispersion2(fs), "spectral_dispersion": dispersion2(F)})


def _wavelet_inputs(f, psi, scale_grid, order, translation_grid, admissibility, W):
    from .wavelet import default_translation_grid

    order = as_order(order)
    fs, F = resolve_signal(f, order)
    if admissibility is None:
        admissibility = admissibility_constant(psi, order)
    C = admissibility.require() if hasattr(admissibility, "require") else float(admissibility)
    if W is None:
        tg = translation_grid or default_translation_grid(fs.grid, scale_grid, psi, fs)
        W = mfrwt_direct(fs, psi, scale_grid, tg, order)
    b_energy = np.sum((np.abs(W.values) ** 2) * W.scale_grid.weights[:, None], axis=0)
    b_field = SampledField(W.translation_grid, np.sqrt(b_energy))
    if _tail(b_field) >= TAIL_TOL:
        raise TailMassError(
            f"coefficients reach the translation-grid boundary ({_tail(b_field):.3g} of the energy)",
            tail=_tail(b_field),
        )
    return order, fs, F, C, W


def heisenberg_mfrwt(f, psi, scale_grid, order, translation_grid=None, admissibility=None, W=None):
    """``[∬‖b‖²|W|² db da/|a|²_m] [∫‖ξ‖²|F f|²] >= P C N²/4 ‖f‖⁴``.

    The report's ``extra`` also carries the right-hand side with ``‖f‖²``
    in place of ``‖f‖⁴`` (the two agree for unit-norm signals).
    """
    order, fs, F, C, W = _wavelet_inputs(f, psi, scale_grid, order, translation_grid, admissibility, W)
    consts = order_constants(order)
    consts["C"] = C
    bmom = W.measure_sum(W.translation_grid.radius2())
    lhs = bmom * dispersion2(F)
    e = _energy(fs)
    base = consts["P"] * C * order.dims**2 / 4.0
    return _report("heisenberg_mfrwt", lhs, base * e**2, consts, {"rhs_norm2": base * e, "translation_dispersion": bmom})


# ---------------------------------------------------------------------------
# logarithmic
# ---------------------------------------------------------------------------


def log_uncertainty_mfrft(f, order, grid=None):
    """``∫ln‖x‖|f|² + P' ∫ln‖ξ‖|F f|² >= (D - P' ln(λ² M)) ‖f‖²``."""
    order = as_order(order)
    fs, F = resolve_signal(f, order, grid)
    consts = order_constants(order)
    Pp = consts["P_prime"]
    lhs = log_moment(fs) + Pp * log_moment(F)
    rhs = (consts["D"] - Pp * log(order.lam2 * np.sqrt(order.M2))) * _energy(fs)
    return _report("log_mfrft", lhs, rhs, consts)


def log_uncertainty_mfrwt(f, psi, scale_grid, order, translation_grid=None, admissibility=None, W=None):
    """``∬ln‖b‖|W|² db da/|a|²_m + C P' ∫ln‖ξ‖|F f|² >= (D - P' ln(λ² M)) C ‖f‖²``."""
    order, fs, F, C, W = _wavelet_inputs(f, psi, scale_grid, order, translation_grid, admissibility, W)
    consts = order_constants(order)
    consts["C"] = C
    Pp = consts["P_prime"]
    tg = W.translation_grid
    with np.errstate(divide="ignore"):
        lg = 0.5 * np.log(tg.radius2())
    lg[tg.origin_index()] = _gauss_legendre_cell_log(tg.spacing)
    blog = float(np.sum(np.sum(np.abs(W.values) ** 2 * lg.ravel()[None, :], axis=1) * W.scale_grid.weights) * tg.cell_volume)
    lhs = blog + C * Pp * log_moment(F)
    rhs = (consts["D"] - Pp * log(order.lam2 * np.sqrt(order.M2))) * C * _energy(fs)
    return _report("log_mfrwt", lhs, rhs, consts)


# ---------------------------------------------------------------------------
# local
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Region:
    """Finite union of axis-aligned boxes ``[lo_k, hi_k)`` in the ξ variable.

    Boxes are snapped to the spectral grid: a sample belongs to the region
    when it lies in some box, and the volume is the count of such samples
    times the cell volume.
    """

    boxes: tuple

    def __post_init__(self):
        boxes = []
        for lo, hi in self.boxes:
            lo = tuple(float(v) for v in np.atleast_1d(lo))
            hi = tuple(float(v) for v in np.atleast_1d(hi))
            if len(lo) != len(hi) or any(h <= l for l, h in zip(lo, hi)):
                raise RegionError("each box needs lo < hi on every axis")
            boxes.append((lo, hi))
        if not boxes:
            raise RegionError("region needs at least one box")
        object.__setattr__(self, "boxes", tuple(boxes))

    def mask(self, grid):
        mesh = grid.mesh()
        out = np.zeros(grid.shape, dtype=bool)
        for lo, hi in self.boxes:
            if len(lo) != grid.dims:
                raise RegionError("box dimension differs from the grid")
            inside = np.ones(grid.shape, dtype=bool)
            for m, l, h in zip(mesh, lo, hi):
                inside &= (m >= l) & (m < h)
            out |= inside
        return out

    def volume(self, grid):
        return float(np.count_nonzero(self.mask(grid)) * grid.cell_volume)


def centered_box(half_widths):
    hw = np.atleast_1d(np.asarray(half_widths, dtype=float))
    return Region(((tuple(-hw), tuple(hw)),))


def _theta_branch(theta, dims):
    if theta <= 0:
        raise ParameterError(f"theta must be positive, got {theta}")
    if np.isclose(theta, dims / 2.0, rtol=0, atol=1e-12):
        raise ParameterError("theta = N/2 is excluded by both local bounds")
    return theta < dims / 2.0


def _moment(field, power):
    return float(np.sum(field.grid.radius2() ** power * np.abs(field.values) ** 2) * field.grid.cell_volume)


def local_uncertainty(f, order, region, theta, grid=None):
    """Empirical ratio ``R`` of the local bound; ``A_θ`` is the sup of ``R`` over signals.

    ``R = ∫_K |F f|² / [pre · vol(K)^{2θ/N} ‖‖x‖^θ f‖²]`` for ``θ < N/2`` and
    ``R = ∫_K |F f|² / [pre · vol(K) ‖f‖^{2 - N/θ} ‖‖x‖^θ f‖^{N/θ}]`` for
    ``θ > N/2``, with ``pre = |κ|² |sin α|_m / λ^{2N}``.
    """
    order = as_order(order)
    low = _theta_branch(theta, order.dims)
    fs, F = resolve_signal(f, order, grid)
    mask = region.mask(F.grid)
    vol = region.volume(F.grid)
    if vol == 0.0:
        raise RegionError("region contains no spectral samples")
    num = float(np.sum(np.abs(F.values[mask]) ** 2) * F.grid.cell_volume)
    pre = local_prefactor(order)
    mom = _moment(fs, theta)
    N = order.dims
    if low:
        den = pre * vol ** (2.0 * theta / N) * mom
    else:
        den = pre * vol * _energy(fs) ** (1.0 - N / (2.0 * theta)) * mom ** (N / (2.0 * theta))
    ratio = num / den if den > 0 else float("nan")
    consts = {"prefactor": pre, "theta": theta, "volume": vol, **order_constants(order)}
    return UncertaintyReport("local_mfrft", num, den, ratio, None, consts)


def local_uncertainty_mfrwt(f, psi, scale_grid, order, region, theta, translation_grid=None, admissibility=None, W=None):
    """Wavelet-side version of :func:`local_uncertainty`.

    The denominator uses ``(1/C) ∬ ‖b‖^{2θ} |W|² db da/|a|²_m`` for
    ``θ < N/2``. For ``θ > N/2`` the per-scale mixed norm
    ``‖W_a‖^{2 - N/θ} ‖‖b‖^θ W_a‖^{N/θ}`` is formed on the translation grid
    and then integrated over scales. ``extra["frft_denominator"]`` is ``C``
    times the signal-side denominator, for the consistency comparison.
    """
    order, fs, F, C, W = _wavelet_inputs(f, psi, scale_grid, order, translation_grid, admissibility, W)
    low = _theta_branch(theta, order.dims)
    mask = region.mask(F.grid)
    vol = region.volume(F.grid)
    if vol == 0.0:
        raise RegionError("region contains no spectral samples")
    num = float(np.sum(np.abs(F.values[mask]) ** 2) * F.grid.cell_volume)
    pre = local_prefactor(order)
    N = order.dims
    tg = W.translation_grid
    r2 = tg.radius2().ravel()
    mag = np.abs(W.values) ** 2
    per_scale_mom = mag @ (r2**theta) * tg.cell_volume
    if low:
        wterm = float(np.sum(per_scale_mom * W.scale_grid.weights))
        den = pre / C * vol ** (2.0 * theta / N) * wterm
        ref = pre * vol ** (2.0 * theta / N) * _moment(fs, theta)
    else:
        per_scale_e = mag.sum(axis=1) * tg.cell_volume
        mixed = per_scale_e ** (1.0 - N / (2.0 * theta)) * per_scale_mom ** (N / (2.0 * theta))
        wterm = float(np.sum(mixed * W.scale_grid.weights))
        den = pre / C * vol * wterm
        ref = pre * vol * _energy(fs) ** (1.0 - N / (2.0 * theta)) * _moment(fs, theta) ** (N / (2.0 * theta))
    ratio = num / den if den > 0 else float("nan")
    consts = {"prefactor": pre, "theta": theta, "volume": vol, "C": C, **order_constants(order)}
    extra = {"wavelet_denominator": den * C, "frft_denominator": ref * C}
    return UncertaintyReport("local_mfrwt", num, den, ratio, None, consts, extra)


def box_sweep(spectral_grid_, count=8):
    """``count`` centered boxes, from the whole spectral box down, halving each time."""
    full = np.asarray(spectral_grid_.half_extents)
    return [centered_box(full / 2.0**j) for j in range(count)]


def local_constant_sweep(family, order, theta, count=8, grid=None):
    """Empirical ``A_θ``: sup of ``R`` over signals and the box sweep.

    Returns a dict with the per-box sup values (largest box first), the sup
    over the first ``count - 1`` boxes and over all ``count`` boxes, and their
    relative difference.
    """
    order = as_order(order)
    per_box = np.zeros(count)
    for f in family:
        fs, F = resolve_signal(f, order, grid)
        for j, region in enumerate(box_sweep(F.grid, count)):
            per_box[j] = max(per_box[j], local_uncertainty(fs, order, region, theta).ratio)
    sup_prev = float(np.max(per_box[:-1]))
    sup_all = float(np.max(per_box))
    return {
        "per_box": per_box.tolist(),
        "sup_previous": sup_prev,
        "sup_all": sup_all,
        "relative_change": abs(sup_all - sup_prev) / sup_all if sup_all > 0 else 0.0,
        "finite": bool(np.isfinite(sup_all)),
    }


__all__ = [
    "UncertaintyReport",
    "Region",
    "TAIL_TOL",
    "heisenberg_constant",
    "log_prime_constant",
    "local_prefactor",
    "order_constants",
    "spectral_grid",
    "resolve_signal",
    "dispersion2",
    "log_moment",
    "heisenberg_mfrft",
    "heisenberg_mfrwt",
    "log_uncertainty_mfrft",
    "log_uncertainty_mfrwt",
    "local_uncertainty",
    "local_uncertainty_mfrwt",
    "centered_box",
    "box_sweep",
    "local_constant_sweep",
]
