import math

import pytest

from mmrelay import ScenarioConfig, SuccessTable, aggregate_throughput, compare, run
from mmrelay.queue_model import solve_queue


class TestDeterminism:
    def test_identical_args_identical_stats(self):
        cfg = ScenarioConfig(n_ues=3, q_u=0.5)
        a = run(cfg, 30_000, seed=123, mode="decoupled")
        b = run(cfg, 30_000, seed=123, mode="decoupled")
        assert a == b

    def test_seed_changes_stats(self):
        cfg = ScenarioConfig(n_ues=3, q_u=0.5)
        a = run(cfg, 30_000, seed=1)
        b = run(cfg, 30_000, seed=2)
        assert a != b

    def test_modes_share_transmission_stream(self):
        # switching LOS-sampling mode must not perturb transmission choices:
        # with alpha=0 and a tiny threshold every transmission succeeds, so
        # both modes count exactly the same packets
        cfg = ScenarioConfig(n_ues=4, q_u=0.6, alpha=0.0, gamma_db=-60.0)
        a = run(cfg, 20_000, seed=9, mode="decoupled")
        b = run(cfg, 20_000, seed=9, mode="physical")
        assert a.delivered_direct == b.delivered_direct
        assert a.enqueued_total == b.enqueued_total


class TestTrivialScenarios:
    def test_silent_network(self):
        cfg = ScenarioConfig(n_ues=5, q_u=0.0, q_r=1.0)
        stats = run(cfg, 50_000, seed=0)
        assert stats.t_sim == 0.0
        assert stats.p_empty_sim == 1.0
        assert math.isnan(stats.mu_sim)

    def test_single_fd_user_matches_analytics(self):
        cfg = ScenarioConfig(n_ues=1, q_u=0.3, q_uf=1.0, q_ur=0.0)
        t = SuccessTable(cfg)
        stats = run(cfg, 1_000_000, seed=4)
        expected = 0.3 * t.p("ud", "fd", 0, 0)
        assert abs(stats.t_sim - expected) <= 3 * stats.t_sim_se

    def test_low_threshold_ceiling(self):
        # alpha = 0 and a threshold below every link's SNR: every intended
        # reception succeeds, so throughput equals the analytic ceiling
        cfg = ScenarioConfig(n_ues=4, q_u=0.5, alpha=0.0, gamma_db=-60.0)
        rep = aggregate_throughput(cfg)
        stats = run(cfg, 400_000, seed=5)
        assert abs(stats.t_sim - rep.t_aggregate) <= \
            max(3 * stats.t_sim_se, 1e-9)


class TestConservation:
    @pytest.mark.parametrize("mode", ["decoupled", "physical"])
    def test_packet_conservation(self, mode):
        cfg = ScenarioConfig(n_ues=4, q_u=0.7, q_uf=0.5, q_ur=0.5, q_r=0.6)
        stats = run(cfg, 120_000, seed=21, mode=mode)
        assert stats.queue_final == stats.enqueued_total - stats.departed_total
        assert stats.queue_final >= 0
        assert stats.departed_total <= stats.enqueued_total

    def test_counts_consistent(self):
        cfg = ScenarioConfig(n_ues=3, q_u=0.8)
        stats = run(cfg, 80_000, seed=3)
        assert stats.delivered_direct + stats.delivered_relay <= \
            stats.measured_slots * (cfg.n_ues + 1)
        assert stats.n_batches >= 30


class TestAgainstAnalytics:
    def test_two_ue_default_point(self, two_ue_cfg):
        rep = aggregate_throughput(two_ue_cfg)
        stats = run(two_ue_cfg, 1_000_000, seed=17)
        result = compare(rep, stats)
        assert result.all_passed, [
            (r.name, r.z) for r in result.rows if r.passed is False]

    def test_drift_sign_matches_loynes(self):
        base = ScenarioConfig(n_ues=5, q_u=0.4, q_uf=0.5, q_ur=0.5)
        thr = solve_queue(base, SuccessTable(base)).q_r_min
        for factor, should_grow in ((0.8, True), (1.25, False)):
            cfg = base.replace(q_r=min(thr * factor, 1.0))
            sol = solve_queue(cfg, SuccessTable(cfg))
            stats = run(cfg, 300_000, seed=33)
            if should_grow:
                assert not sol.stable
                assert stats.drift_sim > 0.5 * (sol.lambda1 - sol.mu_r)
            else:
                assert sol.stable
                assert stats.mean_queue_last_quarter < \
                    10 * max(stats.mean_queue_first_quarter, 1.0)


class TestCompare:
    def test_identical_inputs_zero_z(self, two_ue_cfg):
        rep = aggregate_throughput(two_ue_cfg)
        stats = run(two_ue_cfg, 200_000, seed=2)
        # synthetic: compare the analytic report against itself via a stats
        # object rewritten to the analytic values
        from dataclasses import replace
        q = rep.queue
        lam = q.p_empty_prob * q.lambda0 + (1 - q.p_empty_prob) * q.lambda1
        synthetic = replace(stats, t_sim=rep.t_aggregate, lambda_sim=lam,
                            mu_sim=q.mu_r, p_empty_sim=q.p_empty_prob)
        result = compare(rep, synthetic)
        assert all(r.z == 0.0 for r in result.rows)
        assert result.all_passed

    def test_silent_network_trivially_passes(self):
        cfg = ScenarioConfig(n_ues=2, q_u=0.0)
        rep = aggregate_throughput(cfg)
        stats = run(cfg, 50_000, seed=11)
        result = compare(rep, stats)
        assert result.all_passed
        mu_row = next(r for r in result.rows if r.name == "mu_r")
        assert mu_row.passed is None  # never nonempty: not measurable

    def test_rejects_bad_mode(self, two_ue_cfg):
        with pytest.raises(ValueError):
            run(two_ue_cfg, 100, seed=0, mode="telepathic")
        with pytest.raises(ValueError):
            run(two_ue_cfg, 0, seed=0)
