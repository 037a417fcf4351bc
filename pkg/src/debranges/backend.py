"""Backend selection: compiled core when available, numpy fallback otherwise.

The environment variable DEBRANGES_BACKEND forces the choice:

* ``auto``   (default) prefer the compiled core, fall back silently;
* ``native`` require the compiled core, raise if it is missing;
* ``python`` always use the numpy fallback.

Both backends expose the same five primitives (hb_eval, hb_eval_derivative,
phase_eval, kernel_matrix, kernel_sum) with identical semantics; everything
above this module is backend-agnostic.
"""

import os

import numpy as np

_choice = os.environ.get("DEBRANGES_BACKEND", "auto").strip().lower()
if _choice not in ("auto", "native", "python"):
    raise RuntimeError(
        f"DEBRANGES_BACKEND={_choice!r} not understood; use auto, native, or python"
    )

if _choice == "python":
    from . import _fallback as core

    BACKEND = "python"
else:
    try:
        from . import _native as core  # type: ignore[no-redef]

        BACKEND = "native"
    except ImportError:
        if _choice == "native":
            raise
        from . import _fallback as core  # type: ignore[no-redef]

        BACKEND = "python"


def backend_name():
    """Name of the selected evaluation core: 'native' or 'python'."""
    return BACKEND


def as_complex_array(values):
    """Coerce to a C-contiguous complex128 1-D array (backend calling convention)."""
    arr = np.ascontiguousarray(values, dtype=np.complex128)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1:
        raise ValueError(f"expected a scalar or 1-D array, got shape {arr.shape}")
    return arr


def as_float_array(values):
    """Coerce to a C-contiguous float64 1-D array (backend calling convention)."""
    arr = np.ascontiguousarray(values, dtype=np.float64)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1:
        raise ValueError(f"expected a scalar or 1-D array, got shape {arr.shape}")
    return arr
