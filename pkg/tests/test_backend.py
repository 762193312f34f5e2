import os
import subprocess
import sys

import pytest

from pltr import _backend, solver
from pltr.generate import GenSpec, stream


def backend_in_subprocess(code, env=None):
    full_env = {k: v for k, v in os.environ.items() if k != "PLTR_BACKEND"}
    full_env.update(env or {})
    return subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=full_env)


def test_env_forces_python_fallback():
    proc = backend_in_subprocess("import pltr; print(pltr.BACKEND)", {"PLTR_BACKEND": "python"})
    assert proc.stdout.strip() == "python"


def test_missing_extension_falls_back():
    code = "import sys; sys.modules['pltr._maxflow'] = None\nimport pltr; print(pltr.BACKEND)"
    proc = backend_in_subprocess(code)
    assert proc.returncode == 0 and proc.stdout.strip() == "python"


def test_unknown_backend_is_rejected():
    proc = backend_in_subprocess("import pltr", {"PLTR_BACKEND": "gpu"})
    assert proc.returncode != 0 and "not available" in proc.stderr


@pytest.mark.skipif("compiled" not in _backend.KERNELS, reason="extension not built")
def test_solver_identical_across_backends():
    insts = list(stream(GenSpec.parse("n=8,d=300,m=3,volume=1-40,slack=0-60,seed=3"), 10, feasible_only=True))
    runs = {}
    for name in ("python", "compiled"):
        prev = _backend.use(name)
        try:
            runs[name] = [solver.run(i) for i in insts]
        finally:
            _backend.use(prev)
    for a, b in zip(runs["python"], runs["compiled"]):
        assert a.final_bounds == b.final_bounds
        assert [(e.k, e.t) for e in a.engagements] == [(e.k, e.t) for e in b.engagements]
        assert a.feasibility_calls == b.feasibility_calls
