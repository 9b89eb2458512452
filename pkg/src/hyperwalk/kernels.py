"""Kernel selection: the compiled extension when importable, numpy otherwise.

Set ``HYPERWALK_PURE_PYTHON=1`` before import to force the fallback.
"""

import os

from . import _pykernels

try:
    if os.environ.get("HYPERWALK_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python kernels requested")
    from . import _jacobi as _compiled
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"

__all__ = ["BACKEND", "jacobi_eigvalsh", "available_backends"]


def available_backends():
    return ["compiled", "python"] if _compiled is not None else ["python"]


def jacobi_eigvalsh(a, tol=1e-12, max_sweeps=100, backend=None):
    """Eigenvalues (ascending) of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(eigenvalues, sweeps)``. ``backend`` picks ``"compiled"`` or
    ``"python"`` explicitly; the default is :data:`BACKEND`.
    """
    backend = backend or BACKEND
    if backend == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available")
        return _compiled.jacobi_eigvalsh(a, tol, max_sweeps)
    if backend == "python":
        return _pykernels.jacobi_eigvalsh(a, tol, max_sweeps)
    raise ValueError(f"unknown backend {backend!r}")
