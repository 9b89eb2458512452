# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Cyclic Jacobi eigenvalues of a complex Hermitian matrix (compiled kernel)."""

import numpy as np
from libc.math cimport sqrt, fabs, hypot


cdef double _off_norm_sq(double complex[:, ::1] a, Py_ssize_t n) nogil:
    cdef Py_ssize_t i, j
    cdef double acc = 0.0
    cdef double complex z
    for i in range(n):
        for j in range(i + 1, n):
            z = a[i, j]
            acc += z.real * z.real + z.imag * z.imag
    return 2.0 * acc


def jacobi_eigvalsh(a_in, double tol=1e-12, int max_sweeps=100):
    """Return ``(eigenvalues ascending, sweeps used)``; raises if not converged."""
    cdef double complex[:, ::1] a = np.array(a_in, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t p, q, k
    cdef int sweep = 0
    cdef double frob_sq = 0.0, g_abs, theta, t, c, s, app, aqq
    cdef double complex g, e, ec, apk, aqk
    cdef bint converged = False

    for p in range(n):
        for q in range(n):
            frob_sq += a[p, q].real * a[p, q].real + a[p, q].imag * a[p, q].imag
    cdef double target = tol * tol * frob_sq

    with nogil:
        while sweep <= max_sweeps:
            if _off_norm_sq(a, n) <= target:
                converged = True
                break
            if sweep == max_sweeps:
                break
            sweep += 1
            for p in range(n - 1):
                for q in range(p + 1, n):
                    g = a[p, q]
                    g_abs = hypot(g.real, g.imag)
                    if g_abs == 0.0:
                        continue
                    app = a[p, p].real
                    aqq = a[q, q].real
                    theta = (aqq - app) / (2.0 * g_abs)
                    if theta >= 0:
                        t = 1.0 / (theta + sqrt(theta * theta + 1.0))
                    else:
                        t = -1.0 / (-theta + sqrt(theta * theta + 1.0))
                    c = 1.0 / sqrt(t * t + 1.0)
                    s = t * c
                    e = g / g_abs
                    ec = e.conjugate()
                    # Hermitian: rows p, q of R^H A R need only the row rotation
                    # for k outside {p, q}; columns follow by conjugation.
                    for k in range(n):
                        if k == p or k == q:
                            continue
                        apk = a[p, k]
                        aqk = a[q, k]
                        apk, aqk = c * apk - s * e * aqk, s * ec * apk + c * aqk
                        a[p, k] = apk
                        a[q, k] = aqk
                        a[k, p] = apk.conjugate()
                        a[k, q] = aqk.conjugate()
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    a[p, p] = app - t * g_abs
                    a[q, q] = aqq + t * g_abs

    if not converged:
        raise RuntimeError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    out = np.empty(n, dtype=np.float64)
    for k in range(n):
        out[k] = a[k, k].real
    out.sort()
    return out, sweep
