"""Runtime knobs read from the environment.

``CHAMBERCONN_MAX_VERTICES`` caps every enumeration (default 100000).
``CHAMBERCONN_NUMBA=0`` forces the pure Python/numpy kernels.
"""

import os

DEFAULT_MAX_VERTICES = 100_000


def max_vertices() -> int:
    raw = os.environ.get("CHAMBERCONN_MAX_VERTICES")
    return int(raw) if raw else DEFAULT_MAX_VERTICES


def numba_requested() -> bool:
    return os.environ.get("CHAMBERCONN_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")
