"""Fuzz campaign determinism, replay, and sampler soundness caps."""
import numpy as np
import pytest

from kaudit import FuzzConfig, fuzz_campaign, replay_instance, run_instance
from kaudit.campaign import DEFAULT_CHECKS, chord_ratio_sup, hm_ratio_sup
from kaudit.report import canonical_json


class TestSoundnessCaps:
    def test_chord_ratio_basics(self):
        # hand value at p = 0.5, rho = 4: c = 1/3, t* = 2, sup = 3 sqrt(2)/4
        assert chord_ratio_sup(0.5, 4.0) == pytest.approx(3.0 * np.sqrt(2.0) / 4.0, rel=1e-12)
        assert chord_ratio_sup(0.5, 1.0001) == pytest.approx(1.0, abs=1e-6)

    def test_chord_ratio_is_sup_on_grid(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            p = rng.uniform(0.15, 0.95)
            rho = rng.uniform(1.1, 40.0)
            c = (rho**p - 1.0) / (rho - 1.0)
            ts = np.linspace(1.0, rho, 50_001)
            grid = np.max(ts**p / (1.0 + c * (ts - 1.0)))
            assert chord_ratio_sup(p, rho) >= grid - 1e-9

    def test_hm_ratio_is_sup_on_grid(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            q = rng.uniform(0.1, 0.9)
            rho = rng.uniform(1.1, 60.0)
            w = np.linspace(0.0, 1.0, 100_001)
            grid = np.max((w + (1 - w) * rho) ** q / (w + (1 - w) * rho**q))
            assert hm_ratio_sup(q, rho) >= grid - 1e-7

    def test_sups_grow_with_rho(self):
        assert chord_ratio_sup(0.5, 9.0) > chord_ratio_sup(0.5, 3.0)
        assert hm_ratio_sup(0.5, 9.0) > hm_ratio_sup(0.5, 3.0)


class TestCampaign:
    def test_empty_campaign(self):
        rep = fuzz_campaign(FuzzConfig(seed=1, instances=0))
        assert rep.verdicts == []
        assert rep.summary["attempted"] == 0
        assert rep.summary["all_passed"]

    def test_same_seed_identical_reports(self):
        cfg = FuzzConfig(seed=31, instances=12)
        j1 = canonical_json(fuzz_campaign(cfg).to_dict())
        j2 = canonical_json(fuzz_campaign(cfg).to_dict())
        assert j1 == j2

    def test_different_seed_differs(self):
        a = canonical_json(fuzz_campaign(FuzzConfig(seed=31, instances=6)).to_dict())
        b = canonical_json(fuzz_campaign(FuzzConfig(seed=32, instances=6)).to_dict())
        assert a != b

    def test_sharded_equals_sequential(self):
        c1 = FuzzConfig(seed=8, instances=18, threads=1)
        c3 = FuzzConfig(seed=8, instances=18, threads=3)
        assert canonical_json(fuzz_campaign(c1).to_dict()) == canonical_json(fuzz_campaign(c3).to_dict())

    def test_counts_sum(self):
        rep = fuzz_campaign(FuzzConfig(seed=5, instances=15))
        for stats in rep.checks.values():
            assert stats["passed"] + stats["failed"] + stats["errors"] == stats["attempted"]
            assert stats["attempted"] == 15

    def test_all_checks_pass_small(self):
        rep = fuzz_campaign(FuzzConfig(seed=1234, instances=40))
        assert rep.summary["all_passed"], {
            k: v["failed"] + v["errors"] for k, v in rep.checks.items()
        }

    def test_padded_window_campaign(self):
        rep = fuzz_campaign(FuzzConfig(seed=77, instances=15, pad_factor=0.2))
        assert rep.summary["all_passed"]

    def test_unknown_check_rejected(self):
        with pytest.raises(ValueError):
            FuzzConfig(seed=0, instances=1, checks=("nope",))


class TestReplay:
    def test_replay_identical(self):
        cfg = FuzzConfig(seed=99, instances=8)
        for check in DEFAULT_CHECKS:
            v1 = run_instance(cfg, check, 3)
            v2 = replay_instance(cfg, check, 3)
            for a, b in zip(v1, v2):
                assert a.margin == b.margin and a.lhs == b.lhs and a.rhs == b.rhs

    def test_replay_at_tighter_tolerance(self):
        # margins must be insensitive to a 10x tighter eigensolver
        cfg = FuzzConfig(seed=99, instances=8)
        for check in ("jensen", "ratio_i", "diff_low", "holder_ii", "order_ratio", "classical"):
            base = run_instance(cfg, check, 5)
            tight = replay_instance(cfg, check, 5, sweep_tol=1e-15)
            for a, b in zip(base, tight):
                assert a.passed == b.passed
                assert abs(a.margin - b.margin) <= 1e-9 * max(1.0, abs(a.rhs))

    def test_verdict_params_carry_replay_keys(self):
        cfg = FuzzConfig(seed=4, instances=2)
        for v in run_instance(cfg, "ratio_mid", 1):
            assert v.params["seed"] == 4 and v.params["index"] == 1
