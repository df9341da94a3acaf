"""Command-line front end.

Usage::

    mfrwt {frft,wavelet,reconstruct,verify,bench} [--config PATH] [--out DIR]
          [--seed INT] [--alpha a1,a2,...] [--lambda X] [--threads INT]

A run is described by a JSON config (see :data:`DEFAULTS` for every key);
flags override the file. Artifacts go to ``--out`` (default ``out``). On
failure a JSON object ``{"error": {"code", "message", ...}}`` is printed to
stderr and the process exits with the error's status:

=====  =========================================================
0      success
1      unexpected internal error (code ``INTERNAL``)
2      invalid input (``ORDER_INVALID``, ``CONFIG_INVALID``, ...)
3      numerical failure (``TAIL_MASS``, ``NOT_CONVERGED``, ...)
4      output could not be written (``IO_ERROR``)
=====  =========================================================
"""

import argparse
import copy
import json
import os
import statistics
import sys
import time
from math import pi

import numpy as np

from . import _backend
from . import io as mio
from .errors import ConfigError, MfrwtError
from .frft import FracOrder, frft_direct, frft_fast, ifrft
from .grid import l2_norm, make_grid, make_scale_grid
from .signals import Generator, gaussian, random_family, sample

COMMANDS = ("frft", "wavelet", "reconstruct", "verify", "bench")
INEQUALITIES = ("heisenberg_mfrft", "heisenberg_mfrwt", "log_mfrft", "log_mfrwt", "local_mfrft", "local_mfrwt")

DEFAULTS = {
    "order": {"alpha": [2 * pi / 5], "lambda": 1.2},
    "grid": {"half_extents": 16.0, "samples": 256},
    "scales": {"a_min": 0.125, "a_max": 8.0, "count": 16, "signed": True},
    "signal": {"kind": "hermite1"},
    "wavelet": {"kind": "hermite1"},
    "translation": None,
    "method": "spectral",
    "input": None,
    "seed": 0,
    "out": "out",
    "threads": None,
    "verify": {
        "inequalities": list(INEQUALITIES),
        "family_size": 10,
        "max_order": 5,
        "theta": None,
        "region_half_width": 1.0,
    },
    "bench": {"sizes": [64, 128, 256], "dims": [1, 2], "repeats": 5, "points_limit": 1 << 24},
}


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------


def _merge(base, override):
    out = copy.deepcopy(base)
    for key, val in override.items():
        if isinstance(val, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], val)
        else:
            out[key] = val
    return out


def _alpha_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--alpha expects comma-separated numbers, got {text!r}") from None


def build_config(args):
    """Merge defaults, the config file and flag overrides (flags win)."""
    cfg = copy.deepcopy(DEFAULTS)
    if args.config:
        data = mio.read_json(args.config)
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(data) - set(DEFAULTS) - {"command"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg = _merge(cfg, data)
    cfg["command"] = args.command
    if args.alpha is not None:
        cfg["order"]["alpha"] = args.alpha
    if args.lam is not None:
        cfg["order"]["lambda"] = args.lam
    for key in ("seed", "out", "threads", "input"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    return cfg


def _order(cfg):
    spec = cfg["order"]
    if not isinstance(spec, dict) or "alpha" not in spec:
        raise ConfigError("order needs an 'alpha' list and a 'lambda'")
    try:
        alpha = tuple(float(a) for a in np.atleast_1d(spec["alpha"]))
        lam = float(spec.get("lambda", 1.0))
    except (TypeError, ValueError):
        raise ConfigError("order entries must be numbers") from None
    return FracOrder(alpha, lam)


def _grid(cfg, dims):
    spec = cfg["grid"]
    return make_grid(dims, spec["half_extents"], spec["samples"])


def _scales(cfg, dims):
    s = cfg["scales"]
    return make_scale_grid(dims, s["a_min"], s["a_max"], s["count"], s.get("signed", True))


def _generator(spec, dims, name):
    if not isinstance(spec, dict):
        raise ConfigError(f"{name} must be a generator object")
    spec = dict(spec)
    spec.setdefault("dims", dims)
    if int(spec["dims"]) != dims:
        raise ConfigError(f"{name} is {spec['dims']}-D but the order has {dims} angles")
    return Generator.from_dict(spec)


def _signal(cfg, order):
    if cfg.get("input"):
        f = mio.load_field(cfg["input"])
        return f, None
    gen = _generator(cfg["signal"], order.dims, "signal")
    return sample(gen, _grid(cfg, order.dims)), gen


def _translation(cfg, f, sg, psi):
    from .wavelet import default_translation_grid

    spec = cfg.get("translation")
    if spec is None:
        return default_translation_grid(f.grid, sg, psi, f)
    tg = make_grid(f.grid.dims, spec["half_extents"], spec["samples"])
    return tg


def _out(cfg, name):
    return os.path.join(cfg["out"], name)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_frft(cfg):
    order = _order(cfg)
    f, _ = _signal(cfg, order)
    F = frft_fast(f, order)
    back = ifrft(F)
    err = l2_norm(back - f) / l2_norm(f)
    mio.save_field(F, _out(cfg, "spectrum.json"))
    mio.write_field_csv(F, _out(cfg, "spectrum.csv"))
    report = {"command": "frft", "order": order.to_dict(), "roundtrip_rel_error": err, "spectrum_grid": F.grid.to_dict()}
    mio.write_json(report, _out(cfg, "report.json"))
    return report


def _coefficients(cfg, order, f, psi, sg):
    from .wavelet import mfrwt_direct, mfrwt_spectral

    tg = _translation(cfg, f, sg, psi)
    method = cfg.get("method", "spectral")
    if method == "spectral":
        return mfrwt_spectral(f, psi, sg, order, tg)
    if method == "direct":
        return mfrwt_direct(f, psi, sg, tg, order)
    raise ConfigError(f"method must be 'spectral' or 'direct', got {method!r}")


def cmd_wavelet(cfg):
    from .wavelet import admissibility_constant, energy_ratio

    order = _order(cfg)
    f, _ = _signal(cfg, order)
    psi = _generator(cfg["wavelet"], order.dims, "wavelet")
    sg = _scales(cfg, order.dims)
    A = admissibility_constant(psi, order)
    C = A.require()
    W = _coefficients(cfg, order, f, psi, sg)
    mio.save_coefficients(W, _out(cfg, "coefficients.json"))
    mio.write_coefficients_csv(W, _out(cfg, "coefficients.csv"))
    report = {
        "command": "wavelet",
        "order": order.to_dict(),
        "admissibility_constant": C,
        "energy_ratio": energy_ratio(W, f, C),
        "translation_grid": W.translation_grid.to_dict(),
        "wavelet_id": W.wavelet_id,
    }
    mio.write_json(report, _out(cfg, "report.json"))
    return report


def cmd_reconstruct(cfg):
    from .wavelet import admissibility_constant, reconstruct

    if cfg.get("input"):
        W = mio.load_coefficients(cfg["input"])
        order = W.order
        f = None
        grid = W.translation_grid
        if W.wavelet is None:
            raise ConfigError("coefficient file carries no wavelet description")
        psi = W.wavelet
    else:
        order = _order(cfg)
        f, _ = _signal(cfg, order)
        psi = _generator(cfg["wavelet"], order.dims, "wavelet")
        W = _coefficients(cfg, order, f, psi, _scales(cfg, order.dims))
        grid = f.grid
    C = admissibility_constant(psi, order).require()
    fhat = reconstruct(W, admissibility=C, grid=grid)
    mio.save_field(fhat, _out(cfg, "field.json"))
    mio.write_field_csv(fhat, _out(cfg, "field.csv"))
    report = {"command": "reconstruct", "order": order.to_dict(), "admissibility_constant": C}
    if f is not None:
        report["rel_error"] = l2_norm(fhat - f) / l2_norm(f)
    mio.write_json(report, _out(cfg, "report.json"))
    return report


def verify_records(cfg):
    """Evaluate the selected inequalities over the seeded family; returns CSV records."""
    from . import uncertainty as unc
    from .wavelet import (
        admissibility_constant,
        default_translation_grid,
        mfrwt_spectral,
        spectral_grid_for,
        wavelet_spectra,
    )

    order = _order(cfg)
    N = order.dims
    vcfg = cfg["verify"]
    chosen = list(vcfg.get("inequalities") or INEQUALITIES)
    bad = [q for q in chosen if q not in INEQUALITIES]
    if bad:
        raise ConfigError(f"unknown inequalities {bad}; choose from {list(INEQUALITIES)}")
    count = int(vcfg.get("family_size", 10))
    if count < 1:
        raise ConfigError("verify.family_size must be >= 1")
    theta = vcfg.get("theta")
    theta = float(theta) if theta is not None else N / 4.0
    seed = int(cfg["seed"])
    grid = _grid(cfg, N)
    fam = [("gaussian", gaussian(N))] + [
        (f"hermite_superposition:seed={g.seed}", g) for g in random_family(count - 1, N, seed, vcfg.get("max_order", 5))
    ]
    needs_wavelet = any(q.endswith("mfrwt") for q in chosen)
    if needs_wavelet:
        psi = _generator(cfg["wavelet"], N, "wavelet")
        sg = _scales(cfg, N)
        A = admissibility_constant(psi, order)
        A.require()
        tg = default_translation_grid(grid, sg, psi)
        spectra = wavelet_spectra(psi, sg, order, spectral_grid_for(grid, sg, psi, order, tg))
    region = unc.centered_box(np.full(N, float(vcfg.get("region_half_width", 1.0))))
    records = []
    for sid, gen in fam:
        f = sample(gen, grid)
        W = mfrwt_spectral(f, psi, sg, order, tg, psi_spectra=spectra) if needs_wavelet else None
        for q in chosen:
            if q == "heisenberg_mfrft":
                rep = unc.heisenberg_mfrft(f, order)
            elif q == "log_mfrft":
                rep = unc.log_uncertainty_mfrft(f, order)
            elif q == "local_mfrft":
                rep = unc.local_uncertainty(f, order, region, theta)
            elif q == "heisenberg_mfrwt":
                rep = unc.heisenberg_mfrwt(f, psi, sg, order, admissibility=A, W=W)
            elif q == "log_mfrwt":
                rep = unc.log_uncertainty_mfrwt(f, psi, sg, order, admissibility=A, W=W)
            else:
                rep = unc.local_uncertainty_mfrwt(f, psi, sg, order, region, theta, admissibility=A, W=W)
            records.append((sid, order, rep))
    return records


def cmd_verify(cfg):
    records = verify_records(cfg)
    path = mio.emit_csv(records, _out(cfg, "verify.csv"), dims=_order(cfg).dims)
    failed = [(sid, rep.name) for sid, _, rep in records if rep.satisfied is False]
    summary = {"command": "verify", "rows": len(records), "failed": [list(x) for x in failed], "csv": os.path.basename(path)}
    mio.write_json(summary, _out(cfg, "report.json"))
    return summary


def _median_time(fn, repeats):
    fn()  # warm caches and compile kernels
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def bench_rows(cfg):
    b = cfg["bench"]
    repeats = int(b.get("repeats", 5))
    rows = []
    for N in b.get("dims", [1, 2]):
        for M in b.get("sizes", [64, 128, 256]):
            order = FracOrder(tuple(np.linspace(0.6, 1.1, N)), cfg["order"].get("lambda", 1.0))
            g = make_grid(N, 8.0, M)
            f = sample(gaussian(N), g)
            fast = _median_time(lambda: frft_fast(f, order, warn=False), repeats)
            tensor = _median_time(lambda: frft_direct(f, order), repeats)
            if g.size**2 <= int(b.get("points_limit", 1 << 24)):
                points = _median_time(lambda: frft_direct(f, order, method="points"), repeats)
            else:
                points = float("nan")
            rows.append({"dims": N, "samples": M, "fast_s": fast, "direct_tensor_s": tensor, "direct_points_s": points})
    return rows


def cmd_bench(cfg):
    rows = bench_rows(cfg)
    header = ["dims", "samples", "fast_s", "direct_tensor_s", "direct_points_s", "backend"]
    lines = [",".join(header)]
    for r in rows:
        lines.append(
            ",".join([str(r["dims"]), str(r["samples"]), mio.fmt(r["fast_s"]), mio.fmt(r["direct_tensor_s"]), mio.fmt(r["direct_points_s"]), _backend.get_backend()])
        )
    path = _out(cfg, "bench.csv")
    mio._write_text(path, "\n".join(lines) + "\n")
    return {"command": "bench", "rows": rows, "backend": _backend.get_backend()}


HANDLERS = {"frft": cmd_frft, "wavelet": cmd_wavelet, "reconstruct": cmd_reconstruct, "verify": cmd_verify, "bench": cmd_bench}


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def make_parser():
    parser = argparse.ArgumentParser(prog="mfrwt", description="Fractional Fourier and wavelet transforms with uncertainty checks.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", metavar="PATH", help="JSON run configuration")
    parser.add_argument("--out", metavar="DIR", help="output directory (default: out)")
    parser.add_argument("--seed", type=int, help="seed of the random signal family")
    parser.add_argument("--alpha", type=_alpha_list, metavar="a1,a2,...", help="order angles in radians")
    parser.add_argument("--lambda", dest="lam", type=float, metavar="X", help="order parameter λ")
    parser.add_argument("--threads", type=int, metavar="INT", help="worker threads for the compiled kernels")
    parser.add_argument("--input", metavar="PATH", help="field JSON (frft, wavelet) or coefficient JSON (reconstruct)")
    return parser


def _fail(payload, status):
    print(json.dumps({"error": payload}, sort_keys=True), file=sys.stderr)
    return status


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
        if cfg.get("threads"):
            _backend.set_threads(cfg["threads"])
        result = HANDLERS[cfg["command"]](cfg)
    except MfrwtError as exc:
        return _fail(exc.to_dict(), exc.exit_status)
    except (KeyError, TypeError, ValueError) as exc:
        return _fail({"code": "CONFIG_INVALID", "message": f"malformed configuration: {exc}"}, 2)
    except Exception as exc:  # noqa: BLE001 - last line of defence for the CLI
        return _fail({"code": "INTERNAL", "message": f"{type(exc).__name__}: {exc}"}, 1)
    print(json.dumps(result, sort_keys=True, default=str))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
