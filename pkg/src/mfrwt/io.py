"""JSON and CSV serialization of fields, spectra, coefficients and reports.

Reals are written with 17 significant digits, so every float survives a
write/read cycle bit for bit. Nothing time- or host-dependent is emitted;
the same inputs give byte-identical files.
"""

import csv
import io as _io
import json
import os

import numpy as np

from .errors import ConfigError, OutputError
from .frft import FracOrder, Spectrum
from .grid import Grid, SampledField, ScaleGrid, make_grid
from .signals import Generator

FLOAT_FORMAT = "%.17g"


def fmt(x):
    """17-significant-digit text for a real (``nan``/``inf`` spelled out)."""
    return FLOAT_FORMAT % float(x)


def _pairs(values):
    flat = np.asarray(values, dtype=np.complex128).ravel()
    return [[float(v.real), float(v.imag)] for v in flat]


def _unpairs(pairs, shape):
    arr = np.asarray(pairs, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ConfigError("complex values must be a list of [re, im] pairs")
    return (arr[:, 0] + 1j * arr[:, 1]).reshape(shape)


# ---------------------------------------------------------------------------
# dict forms
# ---------------------------------------------------------------------------


def field_to_dict(f):
    d = f.grid.to_dict()
    if isinstance(f, Spectrum):
        if f.order is not None:
            d["order"] = f.order.to_dict()
        if f.source_grid is not None:
            d["source_grid"] = f.source_grid.to_dict()
    d["values"] = _pairs(f.values)
    return d


def field_from_dict(d):
    try:
        grid = make_grid(d["dims"], d["half_extents"], d["samples"])
        values = _unpairs(d["values"], grid.shape)
    except KeyError as exc:
        raise ConfigError(f"field JSON is missing {exc}") from None
    if "order" in d:
        src = Grid.from_dict(d["source_grid"]) if "source_grid" in d else None
        return Spectrum(grid, values, FracOrder.from_dict(d["order"]), src)
    return SampledField(grid, values)


def coefficients_to_dict(W):
    from .wavelet import wavelet_id

    out = {
        "order": W.order.to_dict(),
        "scale_grid": W.scale_grid.to_dict(),
        "scale_points": W.scale_grid.points.tolist(),
        "translation_grid": W.translation_grid.to_dict(),
        "wavelet_id": wavelet_id(W.wavelet) if W.wavelet is not None else "unknown",
    }
    if W.wavelet is not None:
        out["wavelet"] = W.wavelet.to_dict()
    out["values"] = _pairs(W.values)
    return out


def coefficients_from_dict(d):
    from .wavelet import WaveletCoefficients

    try:
        sg = ScaleGrid.from_dict(d["scale_grid"])
        tg = Grid.from_dict(d["translation_grid"])
        order = FracOrder.from_dict(d["order"])
        values = _unpairs(d["values"], (len(sg), tg.size))
    except KeyError as exc:
        raise ConfigError(f"coefficient JSON is missing {exc}") from None
    psi = Generator.from_dict(d["wavelet"]) if "wavelet" in d else None
    return WaveletCoefficients(sg, tg, order, values, psi)


# ---------------------------------------------------------------------------
# files
# ---------------------------------------------------------------------------


def _write_text(path, text):
    try:
        parent = os.path.dirname(os.path.abspath(path))
        os.makedirs(parent, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc.strerror}", path=str(path)) from None
    return path


def dumps(obj):
    """Deterministic JSON text (sorted keys, repr-exact floats, trailing newline)."""
    return json.dumps(obj, sort_keys=True, indent=1, allow_nan=True) + "\n"


def write_json(obj, path):
    return _write_text(path, dumps(obj))


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}", path=str(path)) from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})", path=str(path)) from None


def save_field(f, path):
    return write_json(field_to_dict(f), path)


def load_field(path):
    return field_from_dict(read_json(path))


def save_coefficients(W, path):
    return write_json(coefficients_to_dict(W), path)


def load_coefficients(path):
    return coefficients_from_dict(read_json(path))


def _csv_text(header, rows):
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def field_csv(f):
    """CSV text with one row per grid point: ``x1..xN, re, im``."""
    header = [f"x{k + 1}" for k in range(f.grid.dims)] + ["re", "im"]
    pts = f.grid.points
    vals = f.values.ravel()
    rows = ([fmt(c) for c in p] + [fmt(v.real), fmt(v.imag)] for p, v in zip(pts, vals))
    return _csv_text(header, rows)


def coefficients_csv(W):
    """CSV text with columns ``a1..aN, b1..bN, re, im`` (scale-major order)."""
    N = W.translation_grid.dims
    header = [f"a{k + 1}" for k in range(N)] + [f"b{k + 1}" for k in range(N)] + ["re", "im"]
    bpts = W.translation_grid.points

    def rows():
        for i, a in enumerate(W.scale_grid.points):
            ac = [fmt(c) for c in a]
            for b, v in zip(bpts, W.values[i]):
                yield ac + [fmt(c) for c in b] + [fmt(v.real), fmt(v.imag)]

    return _csv_text(header, rows())


def write_field_csv(f, path):
    return _write_text(path, field_csv(f))


def write_coefficients_csv(W, path):
    return _write_text(path, coefficients_csv(W))


def read_csv(path):
    """Header and rows (as strings) of a CSV file."""
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}", path=str(path)) from None
    if not rows:
        return [], []
    return rows[0], rows[1:]


# ---------------------------------------------------------------------------
# verify reports
# ---------------------------------------------------------------------------


def verify_header(dims):
    return ["signal_id", "inequality"] + [f"alpha{k + 1}" for k in range(dims)] + ["lambda", "lhs", "rhs", "ratio", "satisfied", "constants"]


def _constants_text(constants):
    parts = []
    for key in sorted(constants):
        val = constants[key]
        parts.append(f"{key}={fmt(val) if isinstance(val, (int, float, np.floating)) else val}")
    return ";".join(parts)


def report_row(signal_id, order, report):
    """One verify row; ``satisfied`` is ``true``/``false``, or empty for the local estimates."""
    sat = "" if report.satisfied is None else ("true" if report.satisfied else "false")
    return (
        [str(signal_id), report.name]
        + [fmt(a) for a in order.alpha]
        + [fmt(order.lam), fmt(report.lhs), fmt(report.rhs), fmt(report.ratio), sat, _constants_text(report.constants)]
    )


def emit_csv(records, path, dims=1):
    """Write ``(signal_id, order, report)`` records as a verify CSV.

    An empty record list gives a header-only file. ``dims`` fixes the
    number of ``alpha`` columns when there are no records.
    """
    records = list(records)
    if records:
        dims = records[0][1].dims
    rows = [report_row(sid, order, rep) for sid, order, rep in records]
    return _write_text(path, _csv_text(verify_header(dims), rows))


def parse_constants(text):
    out = {}
    for part in filter(None, text.split(";")):
        key, _, val = part.partition("=")
        try:
            out[key] = float(val)
        except ValueError:
            out[key] = val
    return out


__all__ = [
    "fmt",
    "field_to_dict",
    "field_from_dict",
    "coefficients_to_dict",
    "coefficients_from_dict",
    "dumps",
    "write_json",
    "read_json",
    "save_field",
    "load_field",
    "save_coefficients",
    "load_coefficients",
    "field_csv",
    "coefficients_csv",
    "write_field_csv",
    "write_coefficients_csv",
    "read_csv",
    "verify_header",
    "report_row",
    "emit_csv",
    "parse_constants",
]
