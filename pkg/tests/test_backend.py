import os
import subprocess
import sys

import numpy as np
import pytest

from mfrwt import FracOrder, frft_direct, gabor, make_grid, sample
from mfrwt import _backend


def _in_subprocess(flag):
    env = dict(os.environ)
    env["MFRWT_BACKEND"] = flag
    return subprocess.run(
        [sys.executable, "-c", "from mfrwt import _backend; print(_backend.get_backend())"],
        capture_output=True,
        text=True,
        env=env,
    )


@pytest.mark.parametrize("flag", ["numpy", "NumPy ", "auto"])
def test_environment_flag(flag):
    proc = _in_subprocess(flag)
    assert proc.returncode == 0
    expected = "numpy" if flag.strip().lower() == "numpy" else ("numba" if _backend.NUMBA_AVAILABLE else "numpy")
    assert proc.stdout.strip() == expected


def test_environment_flag_rejects_unknown():
    proc = _in_subprocess("cuda")
    assert proc.returncode != 0 and "MFRWT_BACKEND" in proc.stderr


@pytest.mark.skipif(not _backend.NUMBA_AVAILABLE, reason="numba missing")
@pytest.mark.parametrize("dims, M", [(1, 64), (2, 16)])
def test_direct_transform_parity(dims, M):
    o = FracOrder(tuple(np.linspace(0.7, 2.0, dims)), 1.1)
    f = sample(gabor(dims), make_grid(dims, 5.0, M))
    previous = _backend.get_backend()
    try:
        out = {}
        for name in ("numba", "numpy"):
            _backend.set_backend(name)
            out[name] = [frft_direct(f, o, method=m).values for m in ("points", "tensor")]
    finally:
        _backend.set_backend(previous)
    for a, b in zip(out["numba"], out["numpy"]):
        assert np.max(np.abs(a - b)) <= 1e-12 * np.max(np.abs(b))
    assert np.max(np.abs(out["numpy"][0] - out["numpy"][1])) <= 1e-12 * np.max(np.abs(out["numpy"][0]))


def test_thread_setting():
    _backend.set_threads(None)
    if _backend.NUMBA_AVAILABLE:
        _backend.set_threads(1)
        import numba

        assert numba.get_num_threads() == 1
        _backend.set_threads(None)
