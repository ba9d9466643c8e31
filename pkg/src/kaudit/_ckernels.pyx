# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernels: cyclic Jacobi sweeps and the s-convexity /
theta grid scans.  Mirrors _pykernels exactly (same rotation formulas,
same traversal order); compiled with -ffp-contract=off so results stay
bit-compatible with the NumPy fallback."""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, log, pow, sqrt

from .errors import ConvergenceError

cnp.import_array()

FUNC_POWER = 0
FUNC_LOG = 1


cdef inline double _feval(int func_id, double fparam, double t) nogil:
    if func_id == 0:
        return pow(t, fparam)
    return log(t) * fparam


def jacobi_eigh(a_in, double sweep_tol=1e-14, int max_sweeps=100):
    """Cyclic Jacobi diagonalization; see _pykernels.jacobi_eigh."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] a = np.array(a_in, dtype=np.float64, order="C")
    cdef Py_ssize_t n = a.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] v = np.eye(n)
    if n == 1:
        return a.diagonal().copy(), v, 0

    cdef double[:, ::1] A = a
    cdef double[:, ::1] V = v
    cdef Py_ssize_t p, q, i, sweeps
    cdef double fro, target, off, apq, theta, t, c, s, tp, tq

    fro = 0.0
    for p in range(n):
        for q in range(n):
            fro += A[p, q] * A[p, q]
    fro = sqrt(fro)
    target = sweep_tol * fro

    sweeps = 0
    while True:
        off = 0.0
        for p in range(n):
            for q in range(n):
                if p != q:
                    off += A[p, q] * A[p, q]
        off = sqrt(off)
        if off <= target:
            return a.diagonal().copy(), v, int(sweeps)
        if sweeps >= max_sweeps:
            raise ConvergenceError(
                f"jacobi sweep cap {max_sweeps} reached (off={off:.3e}, target={target:.3e})"
            )
        with nogil:
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = A[p, q]
                    if apq == 0.0:
                        continue
                    theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                    if fabs(theta) > 1e153:
                        t = 1.0 / (2.0 * theta)
                    else:
                        t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                        if theta < 0.0:
                            t = -t
                    c = 1.0 / sqrt(t * t + 1.0)
                    s = t * c
                    for i in range(n):
                        tp = A[i, p]
                        tq = A[i, q]
                        A[i, p] = c * tp - s * tq
                        A[i, q] = s * tp + c * tq
                    for i in range(n):
                        tp = A[p, i]
                        tq = A[q, i]
                        A[p, i] = c * tp - s * tq
                        A[q, i] = s * tp + c * tq
                    A[p, q] = 0.0
                    A[q, p] = 0.0
                    for i in range(n):
                        tp = V[i, p]
                        tq = V[i, q]
                        V[i, p] = c * tp - s * tq
                        V[i, q] = s * tp + c * tq
        sweeps += 1


def sconvex_scan(xs_in, fx_in, lam_in, lam_s_in, oml_s_in, int func_id, double fparam):
    """Worst signed violation over the (x, y, lambda) grid; see
    _pykernels.sconvex_scan."""
    cdef double[::1] xs = np.ascontiguousarray(xs_in, dtype=np.float64)
    cdef double[::1] fx = np.ascontiguousarray(fx_in, dtype=np.float64)
    cdef double[::1] lam = np.ascontiguousarray(lam_in, dtype=np.float64)
    cdef double[::1] lam_s = np.ascontiguousarray(lam_s_in, dtype=np.float64)
    cdef double[::1] oml_s = np.ascontiguousarray(oml_s_in, dtype=np.float64)
    cdef Py_ssize_t nx = xs.shape[0], nl = lam.shape[0]
    cdef Py_ssize_t ix, iy, il, bix = 0, biy = 0, bil = 0
    cdef double best = -np.inf
    cdef double l, ls, os, x, fxv, mix, viol
    with nogil:
        for il in range(nl):
            l = lam[il]
            ls = lam_s[il]
            os = oml_s[il]
            for ix in range(nx):
                x = xs[ix]
                fxv = fx[ix]
                for iy in range(nx):
                    mix = l * x + (1.0 - l) * xs[iy]
                    viol = _feval(func_id, fparam, mix) - (ls * fxv + os * fx[iy])
                    if viol > best:
                        best = viol
                        bix = ix
                        biy = iy
                        bil = il
    return float(best), int(bix), int(biy), int(bil)


def theta_scan(xs_in, alphas_in, ln_denoms_in):
    """Minimum log-ratio over grid pairs x < y and the alpha grid; see
    _pykernels.theta_scan."""
    cdef double[::1] xs = np.ascontiguousarray(xs_in, dtype=np.float64)
    cdef double[::1] alphas = np.ascontiguousarray(alphas_in, dtype=np.float64)
    cdef double[::1] ln_denoms = np.ascontiguousarray(ln_denoms_in, dtype=np.float64)
    cdef Py_ssize_t n = xs.shape[0], na = alphas.shape[0]
    cdef Py_ssize_t i, j, k
    cdef double best = np.inf
    cdef double x, y, lxy, a, r
    with nogil:
        for i in range(n - 1):
            x = xs[i]
            for j in range(i + 1, n):
                y = xs[j]
                lxy = log(x) + log(y)
                for k in range(na):
                    a = alphas[k]
                    r = log(log(a * x + (1.0 - a) * y) / lxy) / ln_denoms[k]
                    if r < best:
                        best = r
    return float(best)
