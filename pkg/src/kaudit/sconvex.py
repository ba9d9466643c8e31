"""Grid certification of s-convexity in the second sense.

A certificate is an explicit statement "no violation of
f(l*x + (1-l)*y) <= l^s f(x) + (1-l)^s f(y) on this grid at tolerance
1e-12", never a symbolic proof; grids are caller-chosen and the lambda
grid always contains the exact points 0, 1/2 and 1.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import DomainError
from .functions import ScalarFunction
from .linalg import SpectralWindow

VIOLATION_TOL = 1e-12
S_BISECT_TOL = 1e-4


@dataclass(frozen=True)
class SConvexityCertificate:
    """Outcome of one grid sweep: the worst signed violation and, when
    refuted, a witness triple (x, y, lambda) exceeding the tolerance."""

    s: float
    window: SpectralWindow
    grid_points: int
    lambda_points: int
    max_violation: float
    status: str  # "certified" | "refuted"
    witness: tuple[float, float, float] | None = None

    @property
    def certified(self) -> bool:
        return self.status == "certified"


@dataclass(frozen=True)
class ThetaEstimate:
    """Grid minimum of the log-ratio exponent used to pick s for the
    logarithm on windows with m >= 1, over alpha in [eps, 1/2] (case
    one) and [1/2, 1-eps] (case two)."""

    theta: float
    alpha_floor: float
    window: SpectralWindow
    x_points: int
    alpha_points: int
    case_one: float
    case_two: float


def _lambda_grid(nl: int) -> np.ndarray:
    lam = np.linspace(0.0, 1.0, nl)
    if not np.any(lam == 0.5):
        lam = np.sort(np.append(lam, 0.5))
    return lam


def _kernel_f_values(f: ScalarFunction, xs: np.ndarray) -> np.ndarray:
    # Same formula the scan kernel applies, so endpoint rows (lambda in
    # {0, 1}) cancel exactly.
    func_id, fparam = f.kernel_id
    if func_id == backend.FUNC_POWER:
        return xs**fparam
    return np.log(xs) * fparam


def check_s_convex(
    f: ScalarFunction,
    w: SpectralWindow,
    s: float,
    nx: int = 201,
    nl: int = 201,
) -> SConvexityCertificate:
    """Sweep an nx*nx*nl grid of (x, y, lambda) over [m, M]^2 x [0, 1]
    and report the worst signed violation of the defining inequality."""
    if not 0.0 < s <= 1.0:
        raise DomainError(f"s must lie in (0, 1], got {s}")
    if nx < 3 or nl < 3:
        raise ValueError("grid sizes nx, nl must be at least 3")
    xs = np.linspace(w.m, w.M, nx)
    if not f.domain_contains(xs):
        raise DomainError(f"{f.label()} undefined somewhere on [{w.m}, {w.M}]")
    lam = _lambda_grid(nl)
    fx = _kernel_f_values(f, xs)
    func_id, fparam = f.kernel_id
    viol, ix, iy, il = backend.sconvex_scan(xs, fx, lam, lam**s, (1.0 - lam) ** s, func_id, fparam)
    if viol > VIOLATION_TOL:
        status, witness = "refuted", (float(xs[ix]), float(xs[iy]), float(lam[il]))
    else:
        status, witness = "certified", None
    return SConvexityCertificate(
        s=s,
        window=w,
        grid_points=nx,
        lambda_points=int(lam.shape[0]),
        max_violation=float(viol),
        status=status,
        witness=witness,
    )


def max_feasible_s(f: ScalarFunction, w: SpectralWindow, nx: int = 201, nl: int = 201) -> float:
    """Largest s in (0, 1] certified on the given grid, to 1e-4 absolute
    (0.0 when even s = 1e-4 is refuted).

    Certification is monotone in s (lambda^s decreases in s on (0, 1)),
    so bisection applies.  Requires f >= 0 on the window; s-convex
    functions in the second sense are nonnegative.
    """
    xs_ends = np.array([w.m, w.M])
    if not f.domain_contains(xs_ends):
        raise DomainError(f"{f.label()} undefined somewhere on [{w.m}, {w.M}]")
    if min(float(f(w.m)), float(f(w.M))) < 0.0:
        raise DomainError(f"{f.label()} is negative on [{w.m}, {w.M}]")
    if check_s_convex(f, w, 1.0, nx, nl).certified:
        return 1.0
    if not check_s_convex(f, w, S_BISECT_TOL, nx, nl).certified:
        return 0.0
    lo, hi = S_BISECT_TOL, 1.0
    while hi - lo > S_BISECT_TOL:
        mid = 0.5 * (lo + hi)
        if check_s_convex(f, w, mid, nx, nl).certified:
            lo = mid
        else:
            hi = mid
    return lo


def theta_log(w: SpectralWindow, eps: float = 1e-3, nx: int = 201, nl: int = 201) -> ThetaEstimate:
    """Grid minimum of ln(ln(a*x + (1-a)*y) / ln(x*y)) / ln(a) over
    m <= x < y <= M, a in [eps, 1/2], together with the mirrored case
    using ln(1-a) over a in [1/2, 1-eps]; the smaller minimum is the
    estimate.

    The ratio's infimum as a -> 0+ is 0, so a positive floor eps is part
    of the estimate; theta is positive whenever m > 1.  Natural logs
    (the ratio is base-invariant).
    """
    if not w.m >= 1.0 + 1e-9:
        raise DomainError(f"theta_log needs m >= 1 (got m = {w.m})")
    if not 0.0 < eps <= 0.5:
        raise DomainError(f"alpha floor must lie in (0, 1/2], got {eps}")
    if nx < 3 or nl < 3:
        raise ValueError("grid sizes nx, nl must be at least 3")
    xs = np.linspace(w.m, w.M, nx)
    a1 = np.linspace(eps, 0.5, nl)
    a2 = np.linspace(0.5, 1.0 - eps, nl)
    case1 = float(backend.theta_scan(xs, a1, np.log(a1)))
    case2 = float(backend.theta_scan(xs, a2, np.log(1.0 - a2)))
    return ThetaEstimate(
        theta=min(case1, case2),
        alpha_floor=eps,
        window=w,
        x_points=nx,
        alpha_points=nl,
        case_one=case1,
        case_two=case2,
    )
