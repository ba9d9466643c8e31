"""Shared test helpers: constructive feasible BoundSpec sampling.

The samplers build (k, K, q, window) directly inside each regime's
feasibility region (conditions solved for K, sampled 2% inside the
edges), so classification never needs rejection loops in tests.
"""
import numpy as np

from kaudit import BoundSpec, SpectralWindow

REGIME_TAGS = ("ratio_i", "ratio_ii", "ratio_mid", "diff_i", "diff_ii", "diff_low")


def sample_bound_spec(tag: str, rng: np.random.Generator) -> BoundSpec:
    m = rng.uniform(0.5, 2.5)
    rho = rng.uniform(1.3, 6.0)
    M = m * rho
    k = rng.uniform(0.5, 2.0)
    if tag in ("ratio_i", "diff_i"):
        q = rng.uniform(1.15, 3.0)
    elif tag in ("ratio_ii", "diff_ii"):
        q = rng.uniform(-3.0, -0.15)
    else:
        q = rng.uniform(0.1, 0.9)

    if tag.startswith("ratio"):
        # slope conditions are linear in K; a = M - q(M-m) locates the
        # upper crossing of (K-k)/(M-m) = (K/M) q
        a = M - q * (M - m)
        if tag == "ratio_i":
            Klo = k * (1.0 + q * (M - m) / m)
            Khi = k * M / a if a > 0 else 2.0 * Klo
        elif tag == "ratio_ii":
            Klo = max(k * (1.0 + q * (M - m) / m), 0.05 * k)
            Khi = k * M / a
        else:
            Klo = k * M / a
            Khi = k * (1.0 + q * (M - m) / m)
    else:
        lo_v = q * m ** (q - 1.0) * (M - m)
        hi_v = q * M ** (q - 1.0) * (M - m)
        if tag == "diff_low":
            lo_v, hi_v = hi_v, lo_v
        Klo, Khi = k + lo_v, k + hi_v
    span = Khi - Klo
    K = rng.uniform(Klo + 0.02 * span, Khi - 0.02 * span)
    return BoundSpec(k=k, K=K, q=q, window=SpectralWindow(m, M))


def normalize_spec_value(spec: BoundSpec, value: float) -> BoundSpec:
    """Rescale (k, K) so the ratio-form extremum has unit magnitude;
    regime membership is invariant under joint scaling of (k, K)."""
    c = 1.0 / abs(value)
    return BoundSpec(k=spec.k * c, K=spec.K * c, q=spec.q, window=spec.window)


def grid_extremum(spec: BoundSpec, form: str, kind: str, points: int = 100_000) -> float:
    """Independent oracle: dense-grid max/min of h or u on [m, M]."""
    m, M = spec.window.m, spec.window.M
    ts = np.linspace(m, M, points)
    if form == "ratio":
        vals = ts ** (-spec.q) * (spec.k + spec.slope * (ts - m))
    else:
        vals = spec.k + spec.slope * (ts - m) - ts**spec.q
    return float(vals.max() if kind == "upper" else vals.min())
