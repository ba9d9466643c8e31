"""Pure NumPy implementations of the hot kernels.

Selected at import time when the compiled extension is unavailable (or
when KAUDIT_PURE=1).  Each function mirrors the compiled signature and
the exact floating-point recipe: same rotation formulas, same grid
traversal order, same strict-improvement argmax tie-breaking.
"""
from __future__ import annotations

import numpy as np

from .errors import ConvergenceError

FUNC_POWER = 0
FUNC_LOG = 1


def _feval(func_id: int, fparam: float, t):
    if func_id == FUNC_POWER:
        return t**fparam
    return np.log(t) * fparam


def jacobi_eigh(a: np.ndarray, sweep_tol: float = 1e-14, max_sweeps: int = 100):
    """Cyclic Jacobi diagonalization of a symmetric matrix.

    Sweeps all (p, q) pairs in row order, rotating each nonzero pivot;
    stops when the off-diagonal Frobenius mass drops below
    sweep_tol * ||A||_F of the input.  Returns (diag, V, sweeps) with
    A = V @ diag(w) @ V.T, eigenvalues unsorted.
    """
    a = np.array(a, dtype=np.float64, order="C")
    n = a.shape[0]
    v = np.eye(n)
    if n == 1:
        return a.diagonal().copy(), v, 0
    fro = np.sqrt(np.sum(a * a))
    target = sweep_tol * fro
    diag_mask = ~np.eye(n, dtype=bool)
    sweeps = 0
    while True:
        # Sum off-diagonal squares directly; subtracting the diagonal
        # mass from the total cancels catastrophically near convergence.
        off = np.sqrt(np.sum((a * a)[diag_mask]))
        if off <= target:
            return a.diagonal().copy(), v, sweeps
        if sweeps >= max_sweeps:
            raise ConvergenceError(
                f"jacobi sweep cap {max_sweeps} reached (off={off:.3e}, target={target:.3e})"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e153:
                    t = 1.0 / (2.0 * theta)
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = c * colp - s * colq
                a[:, q] = s * colp + c * colq
                rowp = a[p, :].copy()
                rowq = a[q, :].copy()
                a[p, :] = c * rowp - s * rowq
                a[q, :] = s * rowp + c * rowq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        sweeps += 1


def sconvex_scan(xs, fx, lam, lam_s, oml_s, func_id, fparam):
    """Worst signed violation of
    f(l*x + (1-l)*y) <= l^s f(x) + (1-l)^s f(y)
    over the full (x, y, lambda) grid.

    Returns (max_violation, ix, iy, il) of the first strict maximum in
    (il, ix, iy) traversal order.
    """
    xs = np.asarray(xs)
    fx = np.asarray(fx)
    nx = xs.shape[0]
    best = -np.inf
    bix = biy = bil = 0
    col = xs[:, None]
    fcol = fx[:, None]
    for il in range(lam.shape[0]):
        l = lam[il]
        mix = l * col + (1.0 - l) * xs[None, :]
        viol = _feval(func_id, fparam, mix) - (lam_s[il] * fcol + oml_s[il] * fx[None, :])
        flat = int(np.argmax(viol))
        vmax = viol.flat[flat]
        if vmax > best:
            best = float(vmax)
            bix, biy, bil = flat // nx, flat % nx, il
    return best, bix, biy, bil


def theta_scan(xs, alphas, ln_denoms):
    """Minimum over {x < y on the grid, alpha in alphas} of
    ln(ln(a*x + (1-a)*y) / ln(x*y)) / ln_denom(a).

    `ln_denoms` carries ln(alpha) for the a <= 1/2 case or ln(1-alpha)
    for the a >= 1/2 case.  Natural logs; the ratio is base-invariant.
    """
    xs = np.asarray(xs)
    n = xs.shape[0]
    iu, ju = np.triu_indices(n, k=1)
    x = xs[iu]
    y = xs[ju]
    lxy = np.log(x) + np.log(y)
    best = np.inf
    for a, ld in zip(alphas, ln_denoms):
        mix = a * x + (1.0 - a) * y
        r = np.log(np.log(mix) / lxy) / ld
        m = float(r.min())
        if m < best:
            best = m
    return best
