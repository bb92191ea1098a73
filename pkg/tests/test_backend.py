import os
import subprocess
import sys

import pytest

from entrovol import _backend, _pykernels

PROBE = "from entrovol import _backend; print(_backend.NAME)"


def probe(**env):
    proc = subprocess.run([sys.executable, "-c", PROBE], capture_output=True, text=True, env={**os.environ, **env}, check=True)
    return proc.stdout.strip()


def test_env_var_forces_fallback():
    assert probe(ENTROVOL_PURE_PYTHON="1") == "python"


@pytest.mark.skipif(_backend.compiled_kernels() is None, reason="extension not built")
def test_compiled_backend_is_default():
    env = {k: v for k, v in os.environ.items() if k != "ENTROVOL_PURE_PYTHON"}
    proc = subprocess.run([sys.executable, "-c", PROBE], capture_output=True, text=True, env=env, check=True)
    assert proc.stdout.strip() == "cython"


def test_backends_expose_same_kernels():
    names = {n for n in dir(_pykernels) if n.startswith(("roll_", "intraday_"))}
    assert names == {"roll_cc", "roll_parkinson", "roll_gk", "roll_rs", "roll_yz", "roll_entropy",
                     "intraday_entropy", "intraday_curve"}
    compiled = _backend.compiled_kernels()
    if compiled is not None:
        assert all(callable(getattr(compiled, n)) for n in names)
