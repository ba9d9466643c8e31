"""Seeded fuzz campaigns over the inequality checkers.

Campaigns are deterministic: every instance derives an independent
SplitMix64 stream from (seed, check, index), so identical configs give
byte-identical reports and sharded execution merges to exactly the
sequential result.

Samplers guarantee regime feasibility by construction instead of
rejection: parameters (p, q, s) are drawn first, then the window is
drawn inside the region where the checked statement is provable --
window-ratio caps keep the chord and power-mean steps of the proofs
valid.  Instances outside those regions are the business of the audit
checkers, not the fuzz suites.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .audit import (
    Verdict,
    gen_matrix,
    gen_unit_vector,
    verify_classical_kantorovich,
    verify_diff,
    verify_holder_mccarthy,
    verify_jensen,
    verify_operator_order,
    verify_ratio,
)
from .bounds import BoundSpec, classify
from .errors import KauditError
from .functions import Power
from .linalg import HermitianMatrix, SpectralWindow, eigensolver_tolerance
from .rng import SplitMixStream, derive, mix64

CHECK_CODES = {
    "jensen": 1,
    "ratio_i": 2,
    "ratio_ii": 3,
    "ratio_mid": 4,
    "diff_i": 5,
    "diff_ii": 6,
    "diff_low": 7,
    "holder_i": 8,
    "holder_ii": 9,
    "order_ratio": 10,
    "order_diff": 11,
    "classical": 12,
}
DEFAULT_CHECKS = tuple(CHECK_CODES)


@dataclass(frozen=True)
class FuzzConfig:
    """Campaign settings.  Identical configs reproduce identical output
    bit for bit (given an identical floating environment)."""

    seed: int
    instances: int
    checks: tuple[str, ...] = DEFAULT_CHECKS
    n_range: tuple[int, int] = (2, 16)
    scale_range: tuple[float, float] = (0.3, 3.0)
    certify_grid: tuple[int, int] = (41, 41)
    threads: int = 1
    pad_factor: float = 0.0

    def __post_init__(self):
        unknown = [c for c in self.checks if c not in CHECK_CODES]
        if unknown:
            raise ValueError(f"unknown checks: {unknown}")
        if self.instances < 0 or self.threads < 1:
            raise ValueError("instances must be >= 0 and threads >= 1")

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "instances": self.instances,
            "checks": list(self.checks),
            "n_range": list(self.n_range),
            "scale_range": list(self.scale_range),
            "certify_grid": list(self.certify_grid),
            "pad_factor": self.pad_factor,
        }


@dataclass
class CampaignReport:
    """All verdicts plus per-check tallies, the worst-margin instance
    dump, and a replayable (seed, index) for every failure."""

    version: str
    config: dict
    verdicts: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    summary: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "config": self.config,
            "verdicts": self.verdicts,
            "summary": {**self.summary, "per_check": self.checks},
        }

    @property
    def total_failures(self) -> int:
        return sum(c["failed"] for c in self.checks.values())


# ---------------------------------------------------------------------------
# Soundness caps for window ratios
# ---------------------------------------------------------------------------


def chord_ratio_sup(p: float, rho: float) -> float:
    """sup over [1, rho] of t^p / chord(t) for the concave power t^p
    (chord through the endpoints).  This is the worst factor by which
    f(<Ax,x>) can exceed <f(A)x,x> on a window of ratio rho."""
    c = (rho**p - 1.0) / (rho - 1.0)
    tstar = p * (1.0 - c) / (c * (1.0 - p))
    if not 1.0 < tstar < rho:
        return 1.0
    return tstar**p / (1.0 + c * (tstar - 1.0))


def hm_ratio_sup(q: float, rho: float) -> float:
    """sup over unit vectors of <Ax,x>^q / <A^q x,x> on a window of
    ratio rho (0 < q < 1).  The supremum is attained on two-point
    spectra {m, M}; evaluated on a weight grid with one refinement."""
    w = np.linspace(0.0, 1.0, 1025)
    vals = (w + (1.0 - w) * rho) ** q / (w + (1.0 - w) * rho**q)
    i = int(np.argmax(vals))
    lo = w[max(i - 1, 0)]
    hi = w[min(i + 1, 1024)]
    w = np.linspace(lo, hi, 1025)
    vals = (w + (1.0 - w) * rho) ** q / (w + (1.0 - w) * rho**q)
    return float(vals.max())


def _rho_cap(sup_fn, cap: float, hi: float = 1e6) -> float:
    """Largest rho with sup_fn(rho) <= cap (monotone sup), by geometric
    bisection; returns hi when even hi satisfies the cap."""
    lo = 1.0 + 1e-9
    if sup_fn(hi) <= cap:
        return hi
    for _ in range(60):
        mid = np.sqrt(lo * hi)
        if sup_fn(mid) <= cap:
            lo = mid
        else:
            hi = mid
    return lo


# ---------------------------------------------------------------------------
# Per-check samplers
# ---------------------------------------------------------------------------


def _sample_n(cfg: FuzzConfig, st: SplitMixStream) -> int:
    lo, hi = cfg.n_range
    return lo + st.choice_index(hi - lo + 1)


def _interior(lo: float, hi: float, st: SplitMixStream, inset: float = 0.04) -> float:
    span = hi - lo
    return st.uniform(lo + inset * span, hi - inset * span)


def _declared(cfg: FuzzConfig, w: SpectralWindow) -> SpectralWindow:
    if cfg.pad_factor <= 0.0:
        return w
    return SpectralWindow(w.m / (1.0 + cfg.pad_factor), w.M * (1.0 + cfg.pad_factor))


def _capped_s(st: SplitMixStream, s0: float, sup_of_rho, min_rho: float = 1.07):
    """Shrink s until the 2^(1-s) headroom admits a window ratio of at
    least min_rho; returns (s, rho_max)."""
    s = s0
    for _ in range(40):
        cap = 1.0 + 0.94 * (2.0 ** (1.0 - s) - 1.0)
        rho_max = _rho_cap(sup_of_rho, cap)
        if rho_max >= min_rho:
            return s, rho_max
        s *= 0.6
    return s, 1.05


def _sample_jensen(cfg: FuzzConfig, st: SplitMixStream) -> list[Verdict]:
    if st.uniforms(1)[0] < 0.5:
        # convex powers: sound for every s in (0, 1] on any window
        p = st.uniform(-2.0, -0.3) if st.uniforms(1)[0] < 0.35 else st.uniform(1.0, 3.0)
        s = st.uniform(0.05, 1.0)
        rho = st.uniform(1.2, 8.0)
    else:
        # concave powers need s <= p and a window-ratio cap
        p = st.uniform(0.2, 0.95)
        s, rho_max = _capped_s(st, st.uniform(0.04, p), lambda r: chord_ratio_sup(p, r))
        rho = st.uniform(1.05, min(rho_max * 0.98, 12.0))
    m = st.uniform(*cfg.scale_range)
    w = _declared(cfg, SpectralWindow(m, m * rho))
    n = _sample_n(cfg, st)
    a = gen_matrix(SpectralWindow(m, m * rho), n, st)
    x = gen_unit_vector(n, st)
    return [verify_jensen(Power(p), s, a, x, window=w, cert_grid=cfg.certify_grid)]


def _ratio_q_interval(p: float, w: SpectralWindow) -> tuple[float, float]:
    k = w.m**p
    K = w.M**p
    sigma = (K - k) / (w.M - w.m)
    a = sigma * w.M ** (1.0 - p)
    b = sigma * w.m ** (1.0 - p)
    return (a, b) if a <= b else (b, a)


def _make_ratio_sampler(tag: str):
    def sample(cfg: FuzzConfig, st: SplitMixStream) -> list[Verdict]:
        if tag == "ratio_i":
            p = st.uniform(1.1, 2.5)
        elif tag == "ratio_ii":
            p = st.uniform(-2.2, -0.3)
        else:
            p = st.uniform(0.15, 0.9)
        m = st.uniform(*cfg.scale_range)
        rho = st.uniform(1.2, 6.0)
        w = _declared(cfg, SpectralWindow(m, m * rho))
        qlo, qhi = _ratio_q_interval(p, w)
        if tag == "ratio_i":
            qlo = max(qlo, 1.0 + 1e-3)
        elif tag == "ratio_ii":
            qhi = min(qhi, -1e-3)
        else:
            qlo, qhi = max(qlo, 1e-3), min(qhi, 1.0 - 1e-3)
        q = _interior(qlo, qhi, st)
        s = st.uniform(0.04, p) if 0.0 < p < 1.0 else st.uniform(0.05, 1.0)
        n = _sample_n(cfg, st)
        a = gen_matrix(SpectralWindow(m, m * rho), n, st)
        x = gen_unit_vector(n, st)
        return [verify_ratio(Power(p), s, q, a, x, window=w, cert_grid=cfg.certify_grid)]

    return sample


def _expand_feasible_q(ok, q0: float, lo_lim: float, hi_lim: float, steps: int = 48) -> tuple[float, float]:
    """Contiguous feasible q-interval around a known-good q0.

    The boundary functions are not monotone in q, so the feasible set
    can be disconnected; scan outward from q0 for the first infeasible
    point, then bisect the edge."""

    def edge(limit: float) -> float:
        qs = np.linspace(q0, limit, steps)
        for i in range(1, steps):
            if not ok(qs[i]):
                good, bad = qs[i - 1], qs[i]
                for _ in range(50):
                    mid = 0.5 * (good + bad)
                    if ok(mid):
                        good = mid
                    else:
                        bad = mid
                return good
        return limit

    return edge(lo_lim), edge(hi_lim)


def _make_diff_sampler(tag: str):
    def sample(cfg: FuzzConfig, st: SplitMixStream) -> list[Verdict]:
        if tag == "diff_i":
            p = st.uniform(1.1, 2.5)
            lo_lim, hi_lim = 1.0 + 1e-3, 6.0
        elif tag == "diff_ii":
            p = st.uniform(-2.2, -0.3)
            lo_lim, hi_lim = -6.0, -1e-3
        else:
            p = st.uniform(0.2, 0.95)
            lo_lim, hi_lim = 1e-3, p  # q <= p keeps the power route sound
        m = st.uniform(*cfg.scale_range)
        rho = st.uniform(1.2, 5.0)
        w = _declared(cfg, SpectralWindow(m, m * rho))
        sigma = (w.M**p - w.m**p) / (w.M - w.m)

        if tag == "diff_low":
            ok = lambda q: q * w.M ** (q - 1.0) <= sigma <= q * w.m ** (q - 1.0)
        else:
            ok = lambda q: q * w.m ** (q - 1.0) <= sigma <= q * w.M ** (q - 1.0)
        qlo, qhi = _expand_feasible_q(ok, p, lo_lim, hi_lim)
        q = _interior(qlo, qhi, st)
        if not ok(q):  # scan resolution can still miss a gap; p is always feasible
            q = p
        s = st.uniform(0.04, p) if 0.0 < p < 1.0 else st.uniform(0.05, 1.0)
        n = _sample_n(cfg, st)
        a = gen_matrix(SpectralWindow(m, m * rho), n, st)
        x = gen_unit_vector(n, st)
        return [verify_diff(Power(p), s, q, a, x, window=w, cert_grid=cfg.certify_grid)]

    return sample


def _make_holder_sampler(tag: str):
    def sample(cfg: FuzzConfig, st: SplitMixStream) -> list[Verdict]:
        if tag == "holder_i":
            q = st.uniform(0.1, 0.9)
            s, rho_max = _capped_s(st, st.uniform(0.04, 0.97 * q), lambda r: hm_ratio_sup(q, r))
        else:
            q = st.uniform(1.1, 3.5)
            s, rho_max = _capped_s(
                st, st.uniform(0.02, 0.95 / q), lambda r: hm_ratio_sup(1.0 / q, r**q)
            )
        rho = st.uniform(1.05, min(rho_max * 0.98, 15.0))
        m = st.uniform(*cfg.scale_range)
        n = _sample_n(cfg, st)
        a = gen_matrix(SpectralWindow(m, m * rho), n, st)
        x = gen_unit_vector(n, st)
        return [verify_holder_mccarthy(a, q, s, x)]

    return sample


def _order_window_ok(form: str, p: float, q: float, w: SpectralWindow) -> bool:
    spec = BoundSpec.from_function(Power(p), w, q)
    reg = classify(spec, form=form)
    want = "ratio_mid" if form == "ratio" else "diff_low"
    if reg.tag != want:
        return False
    scale = max(1.0, abs(spec.slope))
    return all(c.slack > 1e-6 * scale for c in reg.conditions)


def _make_order_sampler(tag: str):
    form = "ratio" if tag == "order_ratio" else "diff"

    def sample(cfg: FuzzConfig, st: SplitMixStream) -> list[Verdict]:
        q = st.uniform(0.15, 0.9)
        s, rho_max = _capped_s(st, st.uniform(0.04, 0.9 * q), lambda r: hm_ratio_sup(q, r))
        rho = st.uniform(1.05, min(rho_max * 0.98, 8.0))
        m = st.uniform(*cfg.scale_range)
        w = _declared(cfg, SpectralWindow(m, m * rho))
        p = q
        pick = st.uniforms(1)[0]
        cand = st.uniform(q if form == "diff" else max(s * 1.1, 0.12), 0.96)
        if pick < 0.35 and cand > s and _order_window_ok(form, cand, q, w):
            p = cand
        n = _sample_n(cfg, st)
        a = gen_matrix(SpectralWindow(m, m * rho), n, st)
        eta = 0.0 if st.uniforms(1)[0] < 0.3 else st.uniform(0.0, 0.5 * m)
        b = HermitianMatrix(a.entries + eta * np.eye(n))
        return verify_operator_order(a, b, p, q, s, window=w, variant=form)

    return sample


def _sample_classical(cfg: FuzzConfig, st: SplitMixStream) -> list[Verdict]:
    m = st.uniform(*cfg.scale_range)
    rho = st.uniform(1.2, 10.0)
    n = _sample_n(cfg, st)
    a = gen_matrix(SpectralWindow(m, m * rho), n, st)
    x = gen_unit_vector(n, st)
    return [verify_classical_kantorovich(a, x)]


_SAMPLERS = {
    "jensen": _sample_jensen,
    "ratio_i": _make_ratio_sampler("ratio_i"),
    "ratio_ii": _make_ratio_sampler("ratio_ii"),
    "ratio_mid": _make_ratio_sampler("ratio_mid"),
    "diff_i": _make_diff_sampler("diff_i"),
    "diff_ii": _make_diff_sampler("diff_ii"),
    "diff_low": _make_diff_sampler("diff_low"),
    "holder_i": _make_holder_sampler("holder_i"),
    "holder_ii": _make_holder_sampler("holder_ii"),
    "order_ratio": _make_order_sampler("order_ratio"),
    "order_diff": _make_order_sampler("order_diff"),
    "classical": _sample_classical,
}


# ---------------------------------------------------------------------------
# Campaign execution
# ---------------------------------------------------------------------------


def run_instance(cfg: FuzzConfig, check: str, index: int) -> list[Verdict]:
    """Build and run one instance; the stream depends only on
    (cfg.seed, check, index)."""
    st = derive(mix64(cfg.seed, CHECK_CODES[check]), index)
    verdicts = _SAMPLERS[check](cfg, st)
    for v in verdicts:
        v.params.update({"seed": cfg.seed, "index": index, "check": check})
    return verdicts


def replay_instance(cfg: FuzzConfig, check: str, index: int, sweep_tol: float | None = None) -> list[Verdict]:
    """Re-run one instance from its (seed, index); optionally with a
    tighter eigensolver tolerance to confirm a reported failure is not
    solver noise."""
    if sweep_tol is None:
        return run_instance(cfg, check, index)
    with eigensolver_tolerance(sweep_tol):
        return run_instance(cfg, check, index)


def verdict_dict(v: Verdict) -> dict:
    return {
        "check_id": v.check_id,
        "params": v.params,
        "regime": v.regime.tag if v.regime is not None else None,
        "lhs": v.lhs,
        "rhs": v.rhs,
        "margin": v.margin,
        "passed": v.passed,
    }


def fuzz_campaign(cfg: FuzzConfig) -> CampaignReport:
    """Run every configured check over `instances` seeded instances.

    Sharded execution (threads > 1) partitions instance indices; since
    each instance owns an independent derived stream, the merged report
    equals the sequential one byte for byte.
    """
    from . import __version__

    def run_shard(check: str, indices: range) -> list[tuple[int, object]]:
        out = []
        for i in indices:
            try:
                out.append((i, run_instance(cfg, check, i)))
            except KauditError as exc:
                out.append((i, exc))
        return out

    report = CampaignReport(version=__version__, config=cfg.to_dict())
    totals = {"attempted": 0, "passed": 0, "failed": 0, "errors": 0}
    for check in cfg.checks:
        if cfg.threads == 1 or cfg.instances < 2 * cfg.threads:
            results = run_shard(check, range(cfg.instances))
        else:
            shards = [range(t, cfg.instances, cfg.threads) for t in range(cfg.threads)]
            with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
                chunks = list(pool.map(lambda r: run_shard(check, r), shards))
            results = sorted((pair for chunk in chunks for pair in chunk), key=lambda t: t[0])

        stats = {
            "attempted": 0,
            "passed": 0,
            "failed": 0,
            "errors": 0,
            "marginal_margins": 0,
            "marginal_conditions": 0,
            "worst": None,
            "failures": [],
            "error_messages": [],
        }
        worst_margin = np.inf
        for index, res in results:
            stats["attempted"] += 1
            if isinstance(res, KauditError):
                stats["errors"] += 1
                if len(stats["error_messages"]) < 10:
                    stats["error_messages"].append({"index": index, "error": str(res)})
                continue
            inst_pass = all(v.passed for v in res)
            stats["passed" if inst_pass else "failed"] += 1
            for v in res:
                report.verdicts.append(verdict_dict(v))
                if v.marginal:
                    stats["marginal_margins"] += 1
                if v.regime is not None and any(c.marginal for c in v.regime.conditions):
                    stats["marginal_conditions"] += 1
                if v.margin < worst_margin:
                    worst_margin = v.margin
                    stats["worst"] = {"index": index, "margin": v.margin, "verdict": verdict_dict(v)}
                if not v.passed:
                    stats["failures"].append(
                        {"index": index, "seed": cfg.seed, "margin": v.margin, "verdict": verdict_dict(v)}
                    )
        report.checks[check] = stats
        for key in totals:
            totals[key] += stats[key]
    report.summary = dict(totals)
    report.summary["all_passed"] = totals["failed"] == 0 and totals["errors"] == 0
    return report
