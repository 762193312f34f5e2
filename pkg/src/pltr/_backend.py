"""Select the max-flow kernel at import time.

The compiled extension is used when it was built; otherwise the pure-Python
twin. ``PLTR_BACKEND=python`` forces the fallback.
"""

import os

from . import _maxflow_py

try:
    from . import _maxflow as _compiled
except ImportError:  # extension not built
    _compiled = None

KERNELS = {"python": _maxflow_py.dinic}
if _compiled is not None:
    KERNELS["compiled"] = _compiled.dinic

_requested = os.environ.get("PLTR_BACKEND", "").strip().lower()
if _requested and _requested not in KERNELS:
    raise ImportError(f"PLTR_BACKEND={_requested!r} not available; have {sorted(KERNELS)}")
BACKEND = _requested or ("compiled" if "compiled" in KERNELS else "python")
dinic = KERNELS[BACKEND]


def kernel(name=None):
    return dinic if name is None else KERNELS[name]


def use(name):
    """Switch the process-wide default kernel; returns the previous name."""
    global dinic, BACKEND
    previous = BACKEND
    dinic, BACKEND = KERNELS[name], name
    return previous
