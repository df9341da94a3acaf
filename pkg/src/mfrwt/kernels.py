"""Hot quadrature loops, in numba and pure-numpy flavours.

The public functions at the bottom dispatch on :func:`mfrwt._backend.get_backend`.
Both flavours compute the same sums term by term; they differ only in
summation order, so results agree to rounding (~1e-13 relative).

Conventions shared by all kernels:

* points are ``(count, dims)`` float arrays;
* generators are passed packed, see :meth:`mfrwt.signals.Generator.packed`;
* no quadrature weights or transform constants are applied here.
"""

import numpy as np

from . import _backend
from ._backend import njit, prange

_CHUNK = 1 << 21  # complex entries per numpy work matrix


# ---------------------------------------------------------------------------
# numba
# ---------------------------------------------------------------------------


@njit(cache=True, fastmath=False)
def _gen_value_nb(u, center, width, omega, beta, poly, amp):
    val = amp
    for k in range(u.shape[0]):
        d = u[k] - center[k]
        s = d / width[k]
        acc = 0.0 + 0.0j
        for j in range(poly.shape[1] - 1, -1, -1):
            acc = acc * s + poly[k, j]
        val *= acc * np.exp(complex(-0.5 * s * s, omega[k] * d + beta[k] * d * d))
    return val


@njit(cache=True, parallel=True)
def _chirp_sum_nb(g, x, xi, cross):
    nq = xi.shape[0]
    npnt = x.shape[0]
    dims = x.shape[1]
    out = np.zeros(nq, dtype=np.complex128)
    for q in prange(nq):
        acc = 0.0 + 0.0j
        for p in range(npnt):
            ph = 0.0
            for k in range(dims):
                ph -= cross[k] * x[p, k] * xi[q, k]
            acc += g[p] * np.exp(1j * ph)
        out[q] = acc
    return out


@njit(cache=True, parallel=True)
def _analysis_nb(g, t, scales, b, center, width, omega, beta, poly, amp):
    ns = scales.shape[0]
    nb = b.shape[0]
    npnt = t.shape[0]
    dims = t.shape[1]
    out = np.zeros((ns, nb), dtype=np.complex128)
    for idx in prange(ns * nb):
        i = idx // nb
        j = idx % nb
        u = np.empty(dims)
        acc = 0.0 + 0.0j
        for p in range(npnt):
            for k in range(dims):
                u[k] = (t[p, k] - b[j, k]) / scales[i, k]
            acc += g[p] * np.conj(_gen_value_nb(u, center, width, omega, beta, poly, amp))
        out[i, j] = acc
    return out


@njit(cache=True, parallel=True)
def _synthesis_nb(coef, t, scales, b, center, width, omega, beta, poly, amp):
    ns = scales.shape[0]
    nb = b.shape[0]
    npnt = t.shape[0]
    dims = t.shape[1]
    out = np.zeros(npnt, dtype=np.complex128)
    for p in prange(npnt):
        u = np.empty(dims)
        acc = 0.0 + 0.0j
        for i in range(ns):
            for j in range(nb):
                c = coef[i, j]
                if c == 0.0:
                    continue
                for k in range(dims):
                    u[k] = (t[p, k] - b[j, k]) / scales[i, k]
                acc += c * _gen_value_nb(u, center, width, omega, beta, poly, amp)
        out[p] = acc
    return out


# ---------------------------------------------------------------------------
# numpy
# ---------------------------------------------------------------------------


def _gen_value_np(u, center, width, omega, beta, poly, amp):
    """Vectorized generator value; ``u`` has shape ``(..., dims)``."""
    val = np.full(u.shape[:-1], amp, dtype=np.complex128)
    for k in range(u.shape[-1]):
        d = u[..., k] - center[k]
        s = d / width[k]
        acc = np.zeros_like(val)
        for j in range(poly.shape[1] - 1, -1, -1):
            acc = acc * s + poly[k, j]
        val *= acc * np.exp(-0.5 * s * s + 1j * (omega[k] * d + beta[k] * d * d))
    return val


def _chirp_sum_np(g, x, xi, cross):
    out = np.empty(xi.shape[0], dtype=np.complex128)
    rows = max(1, _CHUNK // max(1, x.shape[0]))
    xs = x * cross[None, :]
    for start in range(0, xi.shape[0], rows):
        stop = min(start + rows, xi.shape[0])
        ph = -(xi[start:stop] @ xs.T)
        out[start:stop] = np.exp(1j * ph) @ g
    return out


def _analysis_np(g, t, scales, b, center, width, omega, beta, poly, amp):
    out = np.empty((scales.shape[0], b.shape[0]), dtype=np.complex128)
    rows = max(1, _CHUNK // max(1, t.shape[0]))
    for i in range(scales.shape[0]):
        for start in range(0, b.shape[0], rows):
            stop = min(start + rows, b.shape[0])
            u = (t[None, :, :] - b[start:stop, None, :]) / scales[i]
            vals = _gen_value_np(u, center, width, omega, beta, poly, amp)
            out[i, start:stop] = np.conj(vals) @ g
    return out


def _synthesis_np(coef, t, scales, b, center, width, omega, beta, poly, amp):
    out = np.zeros(t.shape[0], dtype=np.complex128)
    rows = max(1, _CHUNK // max(1, t.shape[0]))
    for i in range(scales.shape[0]):
        for start in range(0, b.shape[0], rows):
            stop = min(start + rows, b.shape[0])
            c = coef[i, start:stop]
            if not np.any(c):
                continue
            u = (t[None, :, :] - b[start:stop, None, :]) / scales[i]
            out += c @ _gen_value_np(u, center, width, omega, beta, poly, amp)
    return out


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def _f64(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def _c128(a):
    return np.ascontiguousarray(a, dtype=np.complex128)


def chirp_sum(g, x, xi, cross):
    """``out[q] = Σ_p g[p] exp(-i Σ_k cross[k] x[p,k] xi[q,k])``."""
    args = (_c128(g), _f64(x), _f64(xi), _f64(cross))
    if _backend.use_numba():
        return _chirp_sum_nb(*args)
    return _chirp_sum_np(*args)


def analysis(g, t, scales, b, packed):
    """``out[i,j] = Σ_p g[p] conj(gen((t[p] - b[j]) / scales[i]))``."""
    center, width, omega, beta, poly, amp = packed
    args = (_c128(g), _f64(t), _f64(scales), _f64(b), _f64(center), _f64(width), _f64(omega), _f64(beta), _c128(poly), complex(amp))
    if _backend.use_numba():
        return _analysis_nb(*args)
    return _analysis_np(*args)


def synthesis(coef, t, scales, b, packed):
    """``out[p] = Σ_{i,j} coef[i,j] gen((t[p] - b[j]) / scales[i])``."""
    center, width, omega, beta, poly, amp = packed
    args = (_c128(coef), _f64(t), _f64(scales), _f64(b), _f64(center), _f64(width), _f64(omega), _f64(beta), _c128(poly), complex(amp))
    if _backend.use_numba():
        return _synthesis_nb(*args)
    return _synthesis_np(*args)


def generator_values(u, packed):
    """Generator at points ``u`` of shape ``(..., dims)`` (numpy path; not hot)."""
    center, width, omega, beta, poly, amp = packed
    return _gen_value_np(_f64(u), center, width, omega, beta, poly, complex(amp))
