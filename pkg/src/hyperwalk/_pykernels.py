"""Pure-Python (numpy) versions of the compiled kernels.

Same algorithm and rotation order as ``_jacobi.pyx``; used when the
extension is not built or when ``HYPERWALK_PURE_PYTHON=1`` is set.
"""

import math

import numpy as np


def jacobi_eigvalsh(a_in, tol=1e-12, max_sweeps=100):
    """Return ``(eigenvalues ascending, sweeps used)``; raises if not converged."""
    a = np.array(a_in, dtype=np.complex128, copy=True)
    n = a.shape[0]
    target = tol * tol * float(np.sum(np.abs(a) ** 2))
    iu = np.triu_indices(n, 1)
    sweep = 0
    while True:
        if 2.0 * float(np.sum(np.abs(a[iu]) ** 2)) <= target:
            break
        if sweep == max_sweeps:
            raise RuntimeError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
        sweep += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = complex(a[p, q])
                g_abs = abs(g)
                if g_abs == 0.0:
                    continue
                app, aqq = a[p, p].real, a[q, q].real
                theta = (aqq - app) / (2.0 * g_abs)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                e = g / g_abs
                # Hermitian: rotate rows p, q off the 2x2 block, mirror into columns
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                new_p = c * row_p - s * e * row_q
                new_q = s * e.conjugate() * row_p + c * row_q
                a[p, :], a[q, :] = new_p, new_q
                a[:, p], a[:, q] = new_p.conj(), new_q.conj()
                a[p, q] = a[q, p] = 0.0
                a[p, p] = app - t * g_abs
                a[q, q] = aqq + t * g_abs
    return np.sort(np.diag(a).real), sweep
