"""Backend selection for the hot loops.

The compiled extension is preferred; set ``AUXSEQ_PURE_PYTHON=1`` to force the
fallback (the benchmark and the kernel tests use both explicitly).
"""

import os

from . import _pykernels

python_backend = _pykernels

try:
    from . import _ckernels as compiled_backend
except ImportError:
    compiled_backend = None

if compiled_backend is not None and not os.environ.get("AUXSEQ_PURE_PYTHON"):
    active = compiled_backend
    BACKEND = "cython"
else:
    active = _pykernels
    BACKEND = "python"

mul_reduce = active.mul_reduce
sqr_reduce = active.sqr_reduce
mul_delta = active.mul_delta
advance_two_term = active.advance_two_term
advance_linear = active.advance_linear
series_coeffs = active.series_coeffs

__all__ = [
    "BACKEND",
    "advance_linear",
    "advance_two_term",
    "compiled_backend",
    "mul_delta",
    "mul_reduce",
    "python_backend",
    "series_coeffs",
    "sqr_reduce",
]
