"""Hermitian (real-symmetric) linear algebra for the inequality checkers.

Eigendecomposition is our own cyclic Jacobi (compiled or NumPy backend);
no LAPACK in the production path.  All values are immutable after
construction and every matrix-producing operation re-symmetrizes its
result, so the invariants stay machine-checkable.
"""
from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import DimensionError, DomainError, InvalidMatrix, NotPositive

UNIT_NORM_TOL = 1e-12
ORTHO_TOL = 1e-10
RECON_TOL = 1e-10

_DEFAULT_SWEEP_TOL = 1e-14


@contextmanager
def eigensolver_tolerance(sweep_tol: float):
    """Temporarily change the default Jacobi convergence tolerance;
    used to replay fuzz failures at a tighter eigensolver setting."""
    global _DEFAULT_SWEEP_TOL
    saved = _DEFAULT_SWEEP_TOL
    _DEFAULT_SWEEP_TOL = sweep_tol
    try:
        yield
    finally:
        _DEFAULT_SWEEP_TOL = saved


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


class HermitianMatrix:
    """Real-symmetric n x n matrix; construction symmetrizes via
    (R + R^T)/2 and rejects non-finite entries."""

    __slots__ = ("entries", "order")

    def __init__(self, entries):
        a = np.array(entries, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise InvalidMatrix(f"expected a square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise InvalidMatrix("matrix entries must be finite")
        a = (a + a.T) / 2.0
        self.entries = _freeze(a)
        self.order = a.shape[0]

    @classmethod
    def diagonal(cls, values) -> "HermitianMatrix":
        return cls(np.diag(np.asarray(values, dtype=np.float64)))

    @classmethod
    def identity(cls, n: int) -> "HermitianMatrix":
        return cls(np.eye(n))

    def __repr__(self):
        return f"HermitianMatrix(order={self.order})"


class UnitVector:
    """Real vector with | ||x||_2 - 1 | <= 1e-12."""

    __slots__ = ("components",)

    def __init__(self, components):
        x = np.array(components, dtype=np.float64)
        if x.ndim != 1 or x.shape[0] < 1:
            raise DimensionError(f"expected a 1-d vector, got shape {x.shape}")
        if not np.all(np.isfinite(x)):
            raise InvalidMatrix("vector components must be finite")
        nrm = float(np.linalg.norm(x))
        if abs(nrm - 1.0) > UNIT_NORM_TOL:
            raise DomainError(f"not a unit vector: ||x|| = {nrm!r}")
        self.components = _freeze(x)

    @classmethod
    def balanced(cls, n: int) -> "UnitVector":
        return cls(np.full(n, n**-0.5))

    def __repr__(self):
        return f"UnitVector(n={self.components.shape[0]})"


@dataclass(frozen=True)
class SpectralWindow:
    """Interval (m, M) with 0 < m < M bounding a positive spectrum."""

    m: float
    M: float

    def __post_init__(self):
        if not (np.isfinite(self.m) and np.isfinite(self.M)):
            raise DomainError("window endpoints must be finite")
        if not 0.0 < self.m < self.M:
            raise DomainError(f"window needs 0 < m < M, got ({self.m}, {self.M})")

    @property
    def width(self) -> float:
        return self.M - self.m


class SpectralDecomposition:
    """Eigenvalues ascending with paired eigenvector columns Q; checks
    Q^T Q ~ I to 1e-10 on construction."""

    __slots__ = ("eigenvalues", "eigenvectors")

    def __init__(self, eigenvalues, eigenvectors):
        w = np.array(eigenvalues, dtype=np.float64)
        q = np.array(eigenvectors, dtype=np.float64)
        n = w.shape[0]
        if q.shape != (n, n):
            raise DimensionError("eigenvector matrix shape does not match eigenvalues")
        if np.any(np.diff(w) < 0):
            raise InvalidMatrix("eigenvalues must be nondecreasing")
        resid = float(np.max(np.abs(q.T @ q - np.eye(n))))
        if resid > ORTHO_TOL:
            raise InvalidMatrix(f"eigenvectors not orthonormal (resid {resid:.3e})")
        self.eigenvalues = _freeze(w)
        self.eigenvectors = _freeze(q)

    @property
    def order(self) -> int:
        return self.eigenvalues.shape[0]

    def matrix(self) -> HermitianMatrix:
        q = self.eigenvectors
        return HermitianMatrix(q @ np.diag(self.eigenvalues) @ q.T)


@dataclass(frozen=True)
class OperatorSummary:
    """Operator norm, numerical radius, and spectral window of a
    positive matrix (all three coincide with lambda_max for norm/radius)."""

    norm: float
    numerical_radius: float
    window: SpectralWindow


def eigh(a: HermitianMatrix, sweep_tol: float | None = None, max_sweeps: int = 100) -> SpectralDecomposition:
    """Full eigendecomposition by cyclic Jacobi rotations.

    Convergence: off-diagonal Frobenius mass <= sweep_tol * ||A||_F
    (default 1e-14), capped at max_sweeps sweeps.  Eigenvalues are
    returned ascending (stable sort, so ties keep the order the sweep
    produced); deterministic for fixed input.
    """
    if sweep_tol is None:
        sweep_tol = _DEFAULT_SWEEP_TOL
    w, v, _ = backend.jacobi_eigh(a.entries, sweep_tol, max_sweeps)
    order = np.argsort(w, kind="stable")
    dec = SpectralDecomposition(w[order], v[:, order])
    scale = max(1.0, float(np.max(np.abs(a.entries))))
    resid = float(np.max(np.abs(dec.matrix().entries - a.entries)))
    if resid > RECON_TOL * scale:
        raise InvalidMatrix(f"eigendecomposition residual {resid:.3e} exceeds tolerance")
    return dec


def apply_function(dec: SpectralDecomposition, f) -> HermitianMatrix:
    """Functional calculus f(A) = Q diag(f(lambda_i)) Q^T, symmetrized.

    Every eigenvalue must lie in the domain of f (t > 0 for logs and
    non-integer powers)."""
    w = dec.eigenvalues
    if not f.domain_contains(w):
        raise DomainError(f"eigenvalues outside the domain of {f.label()}")
    q = dec.eigenvectors
    return HermitianMatrix(q @ np.diag(f(w)) @ q.T)


def quad_form(a: HermitianMatrix, x: UnitVector) -> float:
    """Quadratic form <Ax, x> as the Rayleigh quotient x'Ax / x'x.

    Accumulated in extended precision and normalized by ||x||^2, which
    cancels the rounding of unit vectors like (1/sqrt2, 1/sqrt2) and
    keeps the value inside [lambda_min, lambda_max] exactly.
    """
    xv = x.components
    if a.order != xv.shape[0]:
        raise DimensionError(f"matrix order {a.order} != vector length {xv.shape[0]}")
    xl = xv.astype(np.longdouble)
    al = a.entries.astype(np.longdouble)
    num = xl @ (al @ xl)
    den = xl @ xl
    return float(num / den)


def summarize(a: HermitianMatrix) -> OperatorSummary:
    """Norm, numerical radius and exact spectral window of a positive
    matrix; raises NotPositive when lambda_min <= 0.

    For positive operators the numerical radius equals the operator
    norm equals lambda_max.  A degenerate spectrum (lambda_min ==
    lambda_max) is padded by one part in 1e12 so the window invariant
    0 < m < M still holds.
    """
    dec = eigh(a)
    lo = float(dec.eigenvalues[0])
    hi = float(dec.eigenvalues[-1])
    if lo <= 0.0:
        raise NotPositive(f"lambda_min = {lo!r} <= 0")
    if lo < hi:
        window = SpectralWindow(lo, hi)
    else:
        pad = abs(hi) * 1e-12
        window = SpectralWindow(lo - pad, hi + pad)
    nrm = max(abs(lo), abs(hi))
    return OperatorSummary(norm=nrm, numerical_radius=nrm, window=window)


def min_eigenvalue(a: HermitianMatrix) -> float:
    """lambda_min, via the same Jacobi path as eigh."""
    return float(eigh(a).eigenvalues[0])
