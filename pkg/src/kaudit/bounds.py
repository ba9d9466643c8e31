"""Closed-form extrema of the gap functions and the ratio/difference
constants they induce.

Two families on [m, M] with endpoint values k, K and exponent q:

    h(t) = t^(-q) * (k + (K-k)/(M-m) * (t-m))      (ratio form)
    u(t) = k + (K-k)/(M-m) * (t-m) - t^q           (difference form)

Each family has an interior stationary point t1 whose value is an upper
or lower bound depending on the sign pattern of (K-k, q); `classify`
evaluates the hypotheses exactly as written, with a recorded slack per
condition so near-boundary cases are auditable.  Constants are computed
in the exact evaluation order spelled out in each docstring (no
algebraic rearrangement), which is what makes the reproduction digits
match.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError, DomainError, RegimeError
from .functions import ScalarFunction
from .linalg import SpectralWindow

MARGINAL_SLACK = 1e-9

RATIO_TAGS = ("ratio_i", "ratio_ii", "ratio_mid")
DIFF_TAGS = ("diff_i", "diff_ii", "diff_low")


@dataclass(frozen=True)
class BoundSpec:
    """(k, K, q) over a window, with k = f(m) and K = f(M) when induced
    by a scalar function."""

    k: float
    K: float
    q: float
    window: SpectralWindow

    def __post_init__(self):
        for name in ("k", "K", "q"):
            if not np.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")

    @classmethod
    def from_function(cls, f: ScalarFunction, w: SpectralWindow, q: float) -> "BoundSpec":
        if not f.domain_contains(np.array([w.m, w.M])):
            raise DomainError(f"{f.label()} undefined on [{w.m}, {w.M}]")
        return cls(k=float(f(w.m)), K=float(f(w.M)), q=q, window=w)

    @property
    def slope(self) -> float:
        return (self.K - self.k) / (self.window.M - self.window.m)


@dataclass(frozen=True)
class Condition:
    """One hypothesis inequality with its numeric slack (rhs - lhs for
    'lhs <= rhs' or 'lhs < rhs').  Strict conditions need slack > 0,
    non-strict need slack >= 0 -- zero tolerance, as written."""

    name: str
    slack: float
    strict: bool = False

    @property
    def satisfied(self) -> bool:
        return self.slack > 0.0 if self.strict else self.slack >= 0.0

    @property
    def marginal(self) -> bool:
        return abs(self.slack) < MARGINAL_SLACK


@dataclass(frozen=True)
class Regime:
    """Classification outcome: which bound applies, with every condition
    and its slack recorded."""

    tag: str  # ratio_i | ratio_ii | ratio_mid | diff_i | diff_ii | diff_low | infeasible
    form: str  # "ratio" | "diff"
    conditions: tuple[Condition, ...]

    @property
    def feasible(self) -> bool:
        return self.tag != "infeasible"

    @property
    def failed_conditions(self) -> tuple[Condition, ...]:
        return tuple(c for c in self.conditions if not c.satisfied)

    def describe(self) -> str:
        parts = [f"{c.name} (slack {c.slack:+.3e})" for c in self.failed_conditions]
        return f"{self.tag}: " + ("all conditions hold" if not parts else "failed " + "; ".join(parts))


@dataclass(frozen=True)
class ExtremumResult:
    """Stationary point t1, the bound value there, and (for the lower-
    bound cases) the endpoint bound on the opposite side."""

    t1: float
    value: float
    kind: str  # "upper" | "lower"
    endpoint_bound: float | None = None


def _ratio_conditions(spec: BoundSpec, candidate: str) -> tuple[Condition, ...]:
    m, M, k, K, q = spec.window.m, spec.window.M, spec.k, spec.K, spec.q
    sl = spec.slope
    if candidate == "ratio_i":
        return (
            Condition("K > k", K - k, strict=True),
            Condition("K/M > k/m", K / M - k / m, strict=True),
            Condition("(k/m)q <= (K-k)/(M-m)", sl - (k / m) * q),
            Condition("(K-k)/(M-m) <= (K/M)q", (K / M) * q - sl),
        )
    if candidate == "ratio_ii":
        return (
            Condition("K < k", k - K, strict=True),
            Condition("K/M < k/m", k / m - K / M, strict=True),
            Condition("(k/m)q <= (K-k)/(M-m)", sl - (k / m) * q),
            Condition("(K-k)/(M-m) <= (K/M)q", (K / M) * q - sl),
        )
    # ratio_mid; the positivity of Mk - mK is implied by K/M < k/m but is
    # recorded explicitly because the curvature sign at t1 rests on it.
    return (
        Condition("K > k", K - k, strict=True),
        Condition("K/M < k/m", k / m - K / M, strict=True),
        Condition("(K/M)q <= (K-k)/(M-m)", sl - (K / M) * q),
        Condition("(K-k)/(M-m) <= (k/m)q", (k / m) * q - sl),
        Condition("Mk - mK > 0 (implied)", M * k - m * K, strict=True),
    )


def _diff_conditions(spec: BoundSpec, candidate: str) -> tuple[Condition, ...]:
    m, M, k, K, q = spec.window.m, spec.window.M, spec.k, spec.K, spec.q
    sl = spec.slope
    if candidate == "diff_i":
        return (
            Condition("K > k", K - k, strict=True),
            Condition("q m^(q-1) <= (K-k)/(M-m)", sl - q * m ** (q - 1.0)),
            Condition("(K-k)/(M-m) <= q M^(q-1)", q * M ** (q - 1.0) - sl),
        )
    if candidate == "diff_ii":
        # For q < 0 the stationary point lies in [m, M] exactly when the
        # slope sits between q m^(q-1) and q M^(q-1) (in that order,
        # since t -> q t^(q-1) is increasing for q < 0).
        return (
            Condition("K < k", k - K, strict=True),
            Condition("q m^(q-1) <= (K-k)/(M-m)", sl - q * m ** (q - 1.0)),
            Condition("(K-k)/(M-m) <= q M^(q-1)", q * M ** (q - 1.0) - sl),
        )
    # diff_low: 0 < q < 1
    return (
        Condition("K > k", K - k, strict=True),
        Condition("(K-k)/(M-m) <= q m^(q-1)", q * m ** (q - 1.0) - sl),
        Condition("q M^(q-1) <= (K-k)/(M-m)", sl - q * M ** (q - 1.0)),
    )


def classify(spec: BoundSpec, form: str = "ratio") -> Regime:
    """Match (k, K, q, window) against the hypotheses of the requested
    bound family.

    The candidate regime follows from the range of q (q > 1, q < 0, or
    0 < q < 1); every inequality of that candidate is evaluated with
    zero tolerance and the signed slack is recorded.  Returns the
    matching tag, or an infeasible regime listing each failed condition
    (infeasibility is a value, not an error).
    """
    if form not in ("ratio", "diff"):
        raise ValueError(f"form must be 'ratio' or 'diff', got {form!r}")
    q = spec.q
    if q > 1.0:
        candidate = "ratio_i" if form == "ratio" else "diff_i"
    elif q < 0.0:
        candidate = "ratio_ii" if form == "ratio" else "diff_ii"
    elif 0.0 < q < 1.0:
        candidate = "ratio_mid" if form == "ratio" else "diff_low"
    else:
        cond = Condition("q outside {q>1, q<0, 0<q<1}", -1.0, strict=True)
        return Regime(tag="infeasible", form=form, conditions=(cond,))
    conds = _ratio_conditions(spec, candidate) if form == "ratio" else _diff_conditions(spec, candidate)
    tag = candidate if all(c.satisfied for c in conds) else "infeasible"
    return Regime(tag=tag, form=form, conditions=conds)


def h_eval(t: float, spec: BoundSpec) -> float:
    """h(t) = t^(-q) * (k + (K-k)/(M-m) * (t-m)) for t in [m, M]."""
    m, M = spec.window.m, spec.window.M
    if not (m <= t <= M):
        raise DomainError(f"t = {t} outside [{m}, {M}]")
    return t ** (-spec.q) * (spec.k + (spec.K - spec.k) / (M - m) * (t - m))


def u_eval(t: float, spec: BoundSpec) -> float:
    """u(t) = k + (K-k)/(M-m) * (t-m) - t^q for t in [m, M]."""
    m, M = spec.window.m, spec.window.M
    if not (m <= t <= M):
        raise DomainError(f"t = {t} outside [{m}, {M}]")
    return spec.k + (spec.K - spec.k) / (M - m) * (t - m) - t**spec.q


def h_extremum(spec: BoundSpec) -> ExtremumResult:
    """Stationary value of h:

        t1    = q/(q-1) * (mK - Mk)/(K - k)
        value = (mK - Mk)/((q-1)(M-m)) * ((q-1)(K-k) / (q(mK - Mk)))^q

    an upper bound of h on [m, M] in the ratio_i / ratio_ii regimes and
    a lower bound in ratio_mid, where the endpoint maximum
    max{k/m^q, K/M^q} is reported alongside.
    """
    m, M, k, K, q = spec.window.m, spec.window.M, spec.k, spec.K, spec.q
    if K == k:
        raise DegenerateError("K == k: h is a rescaled power with no interior stationary point")
    regime = classify(spec, form="ratio")
    if not regime.feasible:
        raise RegimeError(f"no ratio-form bound applies: {regime.describe()}", regime)
    cross = m * K - M * k
    if cross == 0.0:
        raise DegenerateError("mK - Mk == 0: stationary point degenerates to 0")
    t1 = q / (q - 1.0) * (cross / (K - k))
    value = cross / ((q - 1.0) * (M - m)) * (((q - 1.0) * (K - k)) / (q * cross)) ** q
    if regime.tag == "ratio_mid":
        endpoint = max(k / m**q, K / M**q)
        return ExtremumResult(t1=t1, value=value, kind="lower", endpoint_bound=endpoint)
    return ExtremumResult(t1=t1, value=value, kind="upper")


def u_extremum(spec: BoundSpec) -> ExtremumResult:
    """Stationary value of u:

        t1    = ((K-k) / (q(M-m)))^(1/(q-1))
        value = k + (K-k)/(M-m) * (t1 - m) - t1^q

    a lower bound of u in the diff_low regime (endpoint maximum
    max{k - m^q, K - M^q} reported alongside) and an upper bound in
    diff_i / diff_ii.
    """
    m, M, k, K, q = spec.window.m, spec.window.M, spec.k, spec.K, spec.q
    if K == k:
        raise DegenerateError("K == k: u has no interior stationary point in these regimes")
    regime = classify(spec, form="diff")
    if not regime.feasible:
        raise RegimeError(f"no difference-form bound applies: {regime.describe()}", regime)
    t1 = ((K - k) / (q * (M - m))) ** (1.0 / (q - 1.0))
    value = k + (K - k) / (M - m) * (t1 - m) - t1**q
    if regime.tag == "diff_low":
        endpoint = max(k - m**q, K - M**q)
        return ExtremumResult(t1=t1, value=value, kind="lower", endpoint_bound=endpoint)
    return ExtremumResult(t1=t1, value=value, kind="upper")


def endpoint_ratio_bound(spec: BoundSpec) -> float:
    """max{k/m^q, K/M^q}: the upper bound of h in the ratio_mid regime."""
    m, M = spec.window.m, spec.window.M
    return max(spec.k / m**spec.q, spec.K / M**spec.q)


def endpoint_diff_bound(spec: BoundSpec) -> float:
    """max{k - m^q, K - M^q}: the upper bound of u in the diff_low regime."""
    m, M = spec.window.m, spec.window.M
    return max(spec.k - m**spec.q, spec.K - M**spec.q)


def constant_Kf(f: ScalarFunction, w: SpectralWindow, q: float) -> float:
    """Ratio-form constant K_f(m, M, q): the stationary upper bound of h
    with k = f(m), K = f(M).  Requires the ratio_i or ratio_ii regime."""
    spec = BoundSpec.from_function(f, w, q)
    if spec.K == spec.k:
        raise DegenerateError(f"{f.label()} is constant on [{w.m}, {w.M}]")
    regime = classify(spec, form="ratio")
    if regime.tag not in ("ratio_i", "ratio_ii"):
        raise RegimeError(f"K_f needs the q>1 or q<0 ratio regime: {regime.describe()}", regime)
    return h_extremum(spec).value


def constant_Klog(M: float, q: float) -> float:
    """K_log(1, M, q) = log10(M) / ((q-1)(M-1)) * ((q-1)/q)^q for M > 1
    and q >= M/(M-1) (common logarithm)."""
    if not M > 1.0:
        raise DomainError(f"K_log needs M > 1, got {M}")
    if not q >= M / (M - 1.0):
        raise RegimeError(f"K_log needs q >= M/(M-1) = {M / (M - 1.0)!r}, got q = {q}")
    return math.log10(M) / ((q - 1.0) * (M - 1.0)) * ((q - 1.0) / q) ** q


def constant_Kf_diff(f: ScalarFunction, w: SpectralWindow, q: float) -> float:
    """Difference-form constant K_f^d(m, M, q): the stationary upper
    bound of u with k = f(m), K = f(M).  Requires diff_i or diff_ii."""
    spec = BoundSpec.from_function(f, w, q)
    if spec.K == spec.k:
        raise DegenerateError(f"{f.label()} is constant on [{w.m}, {w.M}]")
    regime = classify(spec, form="diff")
    if regime.tag not in ("diff_i", "diff_ii"):
        raise RegimeError(f"K_f^d needs the q>1 or q<0 difference regime: {regime.describe()}", regime)
    return u_extremum(spec).value
