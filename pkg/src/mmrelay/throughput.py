"""Per-user and aggregate throughput for N users, both queue regimes.

A tagged user's direct throughput sums its FD-to-mmAP deliveries and the
BR copies the mmAP decodes; its relayed throughput counts packets the
relay accepts into its queue (FD aimed at the relay plus BR copies the
relay decodes while the mmAP does not). With a stable queue every
accepted packet eventually reaches the mmAP, so acceptance is credited
directly; with an unstable queue only the relay's service rate reaches
the mmAP and the relay interferes in every slot.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import ScenarioConfig
from .queue_model import QueueSolution, _iter_configs, _ue_activity_probs, solve_queue
from .success import SuccessTable

STABLE = "stable"
UNSTABLE = "unstable"


@dataclass(frozen=True)
class ThroughputReport:
    """Analytical throughput decomposition for one scenario point.

    ``t_ur0``/``t_ur1`` are the BR-acceptance components without/with the
    relay transmitting; the queue-state-independent FD-to-relay acceptance
    appears only inside ``t_ur``. In the unstable regime ``t_ur`` is the
    delivered relayed share mu_r / N rather than the acceptance rate.
    """

    t_ud0: float
    t_ud1: float
    t_ur0: float
    t_ur1: float
    t_ud: float
    t_ur: float
    t_aggregate: float
    regime: str
    queue: QueueSolution


def per_user_direct(cfg: ScenarioConfig, table: SuccessTable,
                    relay_interfering: bool) -> float:
    """Packets per slot a tagged user lands at the mmAP directly."""
    n = cfg.n_ues
    p_fr, p_fd, p_b = _ue_activity_probs(cfg)
    fd_terms = []
    br_terms = []
    for w, n_fr, n_fd, n_b in _iter_configs(n - 1, p_fr, p_fd, p_b):
        fd_terms.append(w * table.p("ud", "fd", n_fd, n_b, relay_interfering))
        br_terms.append(w * table.p("ud", "br", n_fd, n_b, relay_interfering))
    return (cfg.q_u * cfg.q_uf * cfg.q_ud * math.fsum(fd_terms)
            + cfg.q_u * cfg.q_ub * math.fsum(br_terms))


def _relayed_components(cfg: ScenarioConfig,
                        table: SuccessTable) -> tuple[float, float, float]:
    """(FD->relay acceptance, BR acceptance relay silent, BR acceptance relay tx)."""
    n = cfg.n_ues
    p_fr, p_fd, p_b = _ue_activity_probs(cfg)
    fd_terms = []
    br0_terms = []
    br1_terms = []
    for w, n_fr, n_fd, n_b in _iter_configs(n - 1, p_fr, p_fd, p_b):
        fd_terms.append(w * table.p("ur", "fd", n_fr, n_b))
        at_relay = table.p("ur", "br", n_fr, n_b)
        br0_terms.append(w * at_relay * (1.0 - table.p("ud", "br", n_fd, n_b, False)))
        br1_terms.append(w * at_relay * (1.0 - table.p("ud", "br", n_fd, n_b, True)))
    fd = cfg.q_u * cfg.q_uf * cfg.q_ur * math.fsum(fd_terms)
    return fd, cfg.q_u * cfg.q_ub * math.fsum(br0_terms), \
        cfg.q_u * cfg.q_ub * math.fsum(br1_terms)


def per_user_relayed(cfg: ScenarioConfig, table: SuccessTable | None = None,
                     queue: QueueSolution | None = None) -> float:
    """Packets per slot a tagged user gets accepted into the relay queue.

    Only meaningful in the stable regime, where acceptance equals eventual
    delivery.
    """
    if table is None:
        table = SuccessTable(cfg)
    if queue is None:
        queue = solve_queue(cfg, table)
    if not queue.stable:
        from .queue_model import UnstableQueueError
        raise UnstableQueueError(
            "relayed throughput is not credited while the queue is unstable")
    fd, br0, br1 = _relayed_components(cfg, table)
    w1 = cfg.q_r * (1.0 - queue.p_empty_prob)
    return fd + (1.0 - w1) * br0 + w1 * br1


def aggregate_throughput(cfg: ScenarioConfig,
                         table: SuccessTable | None = None) -> ThroughputReport:
    """Network throughput report at the configured operating point."""
    if table is None:
        table = SuccessTable(cfg)
    queue = solve_queue(cfg, table)
    t_ud0 = per_user_direct(cfg, table, relay_interfering=False)
    t_ud1 = per_user_direct(cfg, table, relay_interfering=True)
    fd, t_ur0, t_ur1 = _relayed_components(cfg, table)
    n = cfg.n_ues
    if queue.stable:
        w1 = cfg.q_r * (1.0 - queue.p_empty_prob)
        t_ud = (1.0 - w1) * t_ud0 + w1 * t_ud1
        t_ur = fd + (1.0 - w1) * t_ur0 + w1 * t_ur1
        total = n * (t_ud + t_ur)
        regime = STABLE
    else:
        # Queue almost surely nonempty: the relay interferes whenever it
        # transmits (probability q_r) and delivers mu_r packets per slot.
        w1 = cfg.q_r
        t_ud = (1.0 - w1) * t_ud0 + w1 * t_ud1
        t_ur = queue.mu_r / n
        total = n * t_ud + queue.mu_r
        regime = UNSTABLE
    return ThroughputReport(t_ud0, t_ud1, t_ur0, t_ur1, t_ud, t_ur,
                            total, regime, queue)
