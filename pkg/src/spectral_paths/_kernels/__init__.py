"""Enumeration kernels.

The compiled extension ``_core`` is used when it was built; otherwise the
pure-Python ``_fallback`` is selected.  Setting ``SPECTRAL_PATHS_PURE_PYTHON=1``
forces the fallback.
"""
import os

from . import _fallback
from ._fallback import KernelCapExceeded

python_enumerate_spin_windows = _fallback.enumerate_spin_windows

try:
    from ._core import enumerate_spin_windows as compiled_enumerate_spin_windows
except ImportError:  # extension not built
    compiled_enumerate_spin_windows = None

if compiled_enumerate_spin_windows is not None and not os.environ.get(
    "SPECTRAL_PATHS_PURE_PYTHON"
):
    enumerate_spin_windows = compiled_enumerate_spin_windows
    BACKEND = "cython"
else:
    enumerate_spin_windows = python_enumerate_spin_windows
    BACKEND = "python"

__all__ = [
    "BACKEND",
    "KernelCapExceeded",
    "enumerate_spin_windows",
    "python_enumerate_spin_windows",
    "compiled_enumerate_spin_windows",
]
