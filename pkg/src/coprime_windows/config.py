"""Runtime configuration knobs.

Both knobs are read from the environment so batch jobs can be tuned
without touching call sites:

``COPRIME_WINDOWS_PRECISION_CAP``
    Hard cap, in bits, on working precision for certified evaluation.
    The constructive pipeline routinely needs thousands of bits, so this
    must stay a knob rather than a constant.

``COPRIME_WINDOWS_KERNELS``
    ``numba`` (default) or ``numpy``; selects the counting-kernel backend
    used by the density experiments.
"""

from __future__ import annotations

import os

DEFAULT_PRECISION_CAP = 1_048_576

PRECISION_CAP_ENV = "COPRIME_WINDOWS_PRECISION_CAP"
KERNELS_ENV = "COPRIME_WINDOWS_KERNELS"


def precision_cap(override: int | None = None) -> int:
    """Resolve the working-precision cap: explicit override, env var, default."""
    if override is not None:
        if override < 8:
            raise ValueError("precision cap must be at least 8 bits")
        return override
    raw = os.environ.get(PRECISION_CAP_ENV)
    if raw:
        return max(8, int(raw))
    return DEFAULT_PRECISION_CAP


def kernel_backend() -> str:
    """Selected counting-kernel backend, ``numba`` or ``numpy``."""
    raw = os.environ.get(KERNELS_ENV, "numba").strip().lower()
    if raw not in ("numba", "numpy"):
        raise ValueError(f"unknown kernel backend {raw!r}; use 'numba' or 'numpy'")
    return raw
