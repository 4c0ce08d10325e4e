"""Independent brute-force oracles used to validate the analytical paths.

These deliberately avoid the production shortcuts: the success-probability
oracle enumerates every joint LOS/NLOS assignment one interferer at a
time (no binomial partition counting), and the arrival oracle enumerates
per-user decision tuples and acceptance subsets (no pmf convolution).
Both share only the link-budget power primitives with the code under test.
"""

from __future__ import annotations

import itertools
import math

from mmrelay.geometry import LinkBudget, LinkState, ScenarioConfig


def success_probability_bruteforce(cfg: ScenarioConfig, link: str, scheme: str,
                                   n_f: int, n_b: int,
                                   relay_active: bool = False) -> float:
    """Average the SINR indicator over all 2^(1 + n_f + n_b) LOS states."""
    b = LinkBudget(cfg)
    ilink = b.interferer_link(link)
    p_des = b.p_los(link)
    p_int = b.p_los(ilink)
    gamma = b.gamma_linear
    total = 0.0
    states = (LinkState.LOS, LinkState.NLOS)
    for des_state in states:
        w_des = p_des if des_state is LinkState.LOS else 1.0 - p_des
        if w_des == 0.0:
            continue
        signal = b.power(link, scheme, des_state)
        for combo in itertools.product(states, repeat=n_f + n_b):
            w = w_des
            interference = 0.0
            for idx, st in enumerate(combo):
                w *= p_int if st is LinkState.LOS else 1.0 - p_int
                kind = "fd" if idx < n_f else "br"
                interference += b.power(ilink, kind, st)
            if relay_active:
                interference += b.power("rd", "fd", LinkState.LOS)
            if signal / (b.noise_w + b.alpha * interference) >= gamma:
                total += w
    return total


def _decision_probs(cfg: ScenarioConfig) -> dict[str, float]:
    return {
        "idle": 1.0 - cfg.q_u,
        "fr": cfg.q_u * cfg.q_uf * cfg.q_ur,
        "fd": cfg.q_u * cfg.q_uf * cfg.q_ud,
        "br": cfg.q_u * cfg.q_ub,
    }


def arrival_pmf_bruteforce(cfg: ScenarioConfig, table, relay_tx: bool) -> list[float]:
    """Queue-arrival pmf by enumerating decision tuples and acceptance subsets.

    Uses the same per-reception success probabilities as the engine but
    assembles the count distribution by explicit subset enumeration, so a
    bug in the binomial/convolution path cannot hide. Exponential in N;
    keep N <= 4.
    """
    n = cfg.n_ues
    probs = _decision_probs(cfg)
    pmf = [0.0] * (n + 1)
    for decisions in itertools.product(("idle", "fr", "fd", "br"), repeat=n):
        w = math.prod(probs[d] for d in decisions)
        if w == 0.0:
            continue
        n_fr = decisions.count("fr")
        n_fd = decisions.count("fd")
        n_b = decisions.count("br")
        accept = []
        for d in decisions:
            if d == "fr":
                accept.append(table.p("ur", "fd", n_fr - 1, n_b))
            elif d == "br":
                p_r = table.p("ur", "br", n_fr, n_b - 1)
                p_d = table.p("ud", "br", n_fd, n_b - 1, relay_tx)
                accept.append(p_r * (1.0 - p_d))
        for outcome in itertools.product((0, 1), repeat=len(accept)):
            wo = w
            for p_acc, got in zip(accept, outcome):
                wo *= p_acc if got else 1.0 - p_acc
            pmf[sum(outcome)] += wo
    return pmf


def per_user_throughput_bruteforce(cfg: ScenarioConfig, table,
                                   relay_interfering: bool) -> tuple[float, float]:
    """(direct, accepted-at-relay) rates for a tagged user by enumeration.

    Enumerates the tagged user's decision jointly with every other user's
    decision tuple; usable for N <= 4.
    """
    n = cfg.n_ues
    probs = _decision_probs(cfg)
    direct = 0.0
    relayed = 0.0
    for others in itertools.product(("idle", "fr", "fd", "br"), repeat=n - 1):
        w = math.prod(probs[d] for d in others)
        if w == 0.0:
            continue
        n_fr = others.count("fr")
        n_fd = others.count("fd")
        n_b = others.count("br")
        # tagged user FD to the mmAP
        direct += w * probs["fd"] * table.p("ud", "fd", n_fd, n_b, relay_interfering)
        # tagged user FD to the relay
        relayed += w * probs["fr"] * table.p("ur", "fd", n_fr, n_b)
        # tagged user BR: mmAP copy counts as direct, relay copy stored on
        # mmAP failure
        p_d = table.p("ud", "br", n_fd, n_b, relay_interfering)
        p_r = table.p("ur", "br", n_fr, n_b)
        direct += w * probs["br"] * p_d
        relayed += w * probs["br"] * p_r * (1.0 - p_d)
    return direct, relayed
