import math
import random

import numpy as np
import pytest

from mmrelay import (
    ScenarioConfig,
    SuccessTable,
    UnstableQueueError,
    arrival_distribution,
    empty_probability,
    enumerate_configurations,
    net_change_distribution,
    service_success_probability,
    solve_queue,
    stability_threshold,
    two_ue_closed_forms,
)

from conftest import random_two_ue_cfg
from oracles import arrival_pmf_bruteforce


class TestEnumerateConfigurations:
    def test_single_deterministic_ue(self):
        cfg = ScenarioConfig(n_ues=1, q_u=1.0, q_uf=1.0, q_ur=1.0)
        configs = enumerate_configurations(cfg, relay_tx=False)
        assert len(configs) == 1
        assert configs[0].n_fr == 1 and configs[0].weight == 1.0

    def test_two_ue_fd_only_has_six_configs(self):
        cfg = ScenarioConfig(n_ues=2, q_u=0.5, q_uf=1.0, q_ur=0.5)
        configs = enumerate_configurations(cfg, relay_tx=False)
        assert len(configs) == 6
        assert all(c.n_b == 0 for c in configs)
        assert math.fsum(c.weight for c in configs) == pytest.approx(1.0, abs=1e-15)

    def test_weights_normalize(self):
        rng = random.Random(5)
        for _ in range(5):
            cfg = ScenarioConfig(n_ues=rng.randint(1, 12), q_u=rng.random(),
                                 q_uf=rng.random(), q_ur=rng.random())
            configs = enumerate_configurations(cfg, relay_tx=True)
            assert math.fsum(c.weight for c in configs) == pytest.approx(1.0,
                                                                         abs=1e-12)
            assert all(c.n_fr + c.n_fd + c.n_b + c.n_idle == cfg.n_ues
                       for c in configs)
            assert all(c.relay_tx for c in configs)

    def test_weight_matches_multinomial(self):
        cfg = ScenarioConfig(n_ues=3, q_u=0.6, q_uf=0.5, q_ur=0.4)
        p_fr = 0.6 * 0.5 * 0.4
        p_fd = 0.6 * 0.5 * 0.6
        p_b = 0.6 * 0.5
        by_counts = {(c.n_fr, c.n_fd, c.n_b): c.weight
                     for c in enumerate_configurations(cfg, relay_tx=False)}
        w = by_counts[(1, 1, 1)]
        assert w == pytest.approx(6 * p_fr * p_fd * p_b, rel=1e-12)


class TestArrivalDistribution:
    def test_silent_network(self):
        cfg = ScenarioConfig(n_ues=4, q_u=0.0)
        t = SuccessTable(cfg)
        pmf = arrival_distribution(cfg, t, relay_tx=False)
        assert pmf[0] == 1.0 and np.all(pmf[1:] == 0.0)

    @pytest.mark.parametrize("relay_tx", [False, True])
    def test_matches_bruteforce_for_small_n(self, relay_tx):
        rng = random.Random(13)
        for _ in range(4):
            cfg = ScenarioConfig(
                n_ues=rng.randint(2, 4), q_u=rng.uniform(0.2, 1.0),
                q_uf=rng.random(), q_ur=rng.random(),
                gamma_db=rng.uniform(0, 20), alpha=rng.uniform(0, 0.8),
                theta_bw_br_deg=360.0, theta_rd_deg=rng.uniform(10, 170))
            t = SuccessTable(cfg)
            pmf = arrival_distribution(cfg, t, relay_tx)
            oracle = arrival_pmf_bruteforce(cfg, t, relay_tx)
            assert pmf == pytest.approx(oracle, abs=1e-12)

    def test_normalized_and_bounded(self, default_cfg):
        t = SuccessTable(default_cfg)
        for relay_tx in (False, True):
            pmf = arrival_distribution(default_cfg, t, relay_tx)
            assert math.fsum(pmf) == pytest.approx(1.0, abs=1e-12)
            assert np.all(pmf >= 0.0) and np.all(pmf <= 1.0)


class TestServiceSuccess:
    def test_silent_network_gives_clean_channel(self, default_cfg):
        cfg = default_cfg.replace(q_u=0.0)
        t = SuccessTable(cfg)
        assert service_success_probability(cfg, t) == t.p("rd", "fd", 0, 0)

    def test_alpha_zero_independent_of_traffic(self):
        quiet = ScenarioConfig(n_ues=8, q_u=0.1, alpha=0.0)
        busy = ScenarioConfig(n_ues=8, q_u=0.9, alpha=0.0)
        assert service_success_probability(quiet, SuccessTable(quiet)) == \
            pytest.approx(service_success_probability(busy, SuccessTable(busy)),
                          abs=1e-12)


class TestNetChangeDistribution:
    def test_rows_sum_to_one(self):
        rng = random.Random(17)
        for _ in range(5):
            cfg = ScenarioConfig(n_ues=rng.randint(1, 8), q_u=rng.random(),
                                 q_uf=rng.random(), q_ur=rng.random(),
                                 q_r=rng.random())
            net = net_change_distribution(cfg, SuccessTable(cfg))
            assert math.fsum(net.p_empty) == pytest.approx(1.0, abs=1e-12)
            assert math.fsum(net.p_nonempty) == pytest.approx(1.0, abs=1e-12)
            assert np.all(net.p_empty >= 0) and np.all(net.p_nonempty >= 0)
            assert np.all(net.p_empty <= 1) and np.all(net.p_nonempty <= 1)

    def test_pure_service_case(self):
        # no UE traffic, always-transmitting relay: the queue can only drain
        cfg = ScenarioConfig(n_ues=3, q_u=0.0, q_r=1.0)
        t = SuccessTable(cfg)
        net = net_change_distribution(cfg, t)
        p_dep = t.p("rd", "fd", 0, 0)
        assert net.p_nonempty[0] == pytest.approx(p_dep, abs=1e-15)
        assert net.p_nonempty[1] == pytest.approx(1.0 - p_dep, abs=1e-15)

    def test_mean_identities(self, default_cfg):
        t = SuccessTable(default_cfg)
        net = net_change_distribution(default_cfg, t)
        sol = solve_queue(default_cfg, t)
        assert net.mean_empty() == pytest.approx(sol.lambda0, abs=1e-12)
        assert net.mean_nonempty() == pytest.approx(sol.lambda1 - sol.mu_r,
                                                    abs=1e-12)


class TestStability:
    def test_no_arrivals_threshold_zero(self):
        cfg = ScenarioConfig(n_ues=4, q_u=0.0)
        assert stability_threshold(cfg, SuccessTable(cfg)) == 0.0

    def test_monotone_in_traffic_when_alpha_zero(self):
        last = 0.0
        for q_u in (0.1, 0.3, 0.5, 0.7, 0.9):
            cfg = ScenarioConfig(n_ues=6, q_u=q_u, alpha=0.0)
            thr = stability_threshold(cfg, SuccessTable(cfg))
            assert thr >= last - 1e-15
            last = thr

    def test_boundary_tie_reported_unstable(self, two_ue_cfg, two_ue_table):
        thr = stability_threshold(two_ue_cfg, two_ue_table)
        at_tie = two_ue_cfg.replace(q_r=thr)
        assert not solve_queue(at_tie, SuccessTable(at_tie)).stable
        above = two_ue_cfg.replace(q_r=min(thr * 1.01, 1.0))
        assert solve_queue(above, SuccessTable(above)).stable

    def test_lambda1_identity(self):
        rng = random.Random(23)
        for _ in range(5):
            cfg = random_two_ue_cfg(rng)
            sol = solve_queue(cfg, SuccessTable(cfg))
            assert sol.lambda1 == pytest.approx(
                (1 - cfg.q_r) * sol.lambda0 + cfg.q_r * sol.a_r, abs=1e-15)
            assert sol.mu_r == pytest.approx(cfg.q_r * sol.b_r, abs=1e-15)


class TestEmptyProbability:
    def test_no_arrivals(self):
        cfg = ScenarioConfig(n_ues=3, q_u=0.0, q_r=0.5)
        assert empty_probability(cfg, SuccessTable(cfg)) == 1.0

    def test_unstable_raises(self):
        cfg = ScenarioConfig(n_ues=10, q_u=0.5, q_uf=0.5, q_ur=0.5, q_r=0.3)
        t = SuccessTable(cfg)
        assert not solve_queue(cfg, t).stable
        with pytest.raises(UnstableQueueError, match="unstable-regime"):
            empty_probability(cfg, t)

    def test_forms_agree(self):
        rng = random.Random(29)
        checked = 0
        while checked < 12:
            cfg = random_two_ue_cfg(rng)
            t = SuccessTable(cfg)
            if not solve_queue(cfg, t).stable:
                continue
            a = empty_probability(cfg, t, form="transition")
            b = empty_probability(cfg, t, form="drift")
            assert abs(a - b) <= 1e-12
            checked += 1

    def test_two_ue_closed_form_pipeline(self):
        # Eq-style evaluation from the two-UE closed forms against the
        # engine's empty probability at q_r = 0.9
        cfg = ScenarioConfig(n_ues=2, q_r=0.9)
        t = SuccessTable(cfg)
        forms = two_ue_closed_forms(cfg, t)
        num = forms["p_m1_1"] - forms["p1_1"] - 2 * forms["p2_1"]
        expected = num / (num + forms["lambda0"])
        assert empty_probability(cfg, t) == pytest.approx(expected, abs=1e-12)

    def test_service_dominant_limit(self):
        # vanishing arrivals with a always-on relay: queue is almost surely empty
        cfg = ScenarioConfig(n_ues=2, q_u=1e-4, q_r=1.0)
        assert empty_probability(cfg, SuccessTable(cfg)) > 0.999


class TestTwoUeClosedForms:
    def test_requires_two_ues(self, default_cfg):
        with pytest.raises(ValueError, match="n_ues=2"):
            two_ue_closed_forms(default_cfg)

    def test_expectation_identity(self):
        # mean arrivals while empty decompose over the one- and two-arrival
        # events
        rng = random.Random(53)
        for _ in range(6):
            cfg = random_two_ue_cfg(rng)
            forms = two_ue_closed_forms(cfg, SuccessTable(cfg))
            assert forms["lambda0"] == pytest.approx(
                forms["p1_0"] + 2 * forms["p2_0"], abs=1e-12)

    def test_silent_users(self):
        cfg = ScenarioConfig(n_ues=2, q_u=0.0, q_r=0.8)
        t = SuccessTable(cfg)
        forms = two_ue_closed_forms(cfg, t)
        for name in ("lambda0", "a_r", "p1_0", "p2_0", "p1_1", "p2_1"):
            assert forms[name] == 0.0
        assert forms["b_r"] == t.p("rd", "fd", 0, 0)
        assert forms["p_m1_1"] == pytest.approx(0.8 * t.p("rd", "fd", 0, 0),
                                                abs=1e-15)


class TestQueueSolutionSweep:
    def test_solution_consistency_random_grid(self):
        rng = random.Random(31)
        for _ in range(8):
            cfg = random_two_ue_cfg(rng)
            sol = solve_queue(cfg, SuccessTable(cfg))
            assert 0.0 <= sol.b_r <= 1.0
            assert 0.0 <= sol.lambda0 <= cfg.n_ues
            assert 0.0 <= sol.a_r <= cfg.n_ues
            if sol.stable:
                assert 0.0 <= sol.p_empty_prob <= 1.0
                if sol.lambda0 > 0.0:
                    assert sol.lambda1 < sol.mu_r
