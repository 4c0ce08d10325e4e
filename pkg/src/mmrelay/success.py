"""Conditional SINR evaluation and blockage-averaged success probabilities.

A reception is conditioned on the LOS/NLOS state of its own link and on
how many of the interfering FD and BR transmissions are in LOS toward the
receiver. Because path loss carries no fading term, the SINR given such a
partition is a number and the success event is the indicator SINR >= gamma.
Averaging the indicator over the binomially distributed LOS partitions and
over the desired link's own state yields the unconditional success
probability for a given interferer profile.

Interference accounting: an FD transmission aimed at the other receiver
contributes nothing; a BR transmission interferes at both receivers; the
relay interferes only at the mmAP and never with its own reception.
Residual inter-beam leakage after stream separation scales every
interference term by ``alpha``.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

from .geometry import LinkBudget, LinkState, Role, ScenarioConfig


@dataclass(frozen=True)
class InterfererProfile:
    """Counts conditioning one success probability.

    n_f: interfering FD transmissions aimed at this receiver;
    n_b: interfering BR transmissions;
    relay_active: relay transmitting (meaningful only at the mmAP).
    """

    n_f: int
    n_b: int
    relay_active: bool = False

    def __post_init__(self) -> None:
        if self.n_f < 0 or self.n_b < 0:
            raise ValueError("interferer counts must be non-negative")


def _binom_pmf(n: int, p: float) -> list[float]:
    q = 1.0 - p
    return [math.comb(n, k) * p**k * q ** (n - k) for k in range(n + 1)]


class SuccessTable:
    """Memoized success probabilities keyed by (link, scheme, profile).

    Thread-safe: concurrent readers may race on a missing key, but a lock
    ensures each key is computed once; values are pure functions of the
    configuration so any interleaving yields identical entries.
    """

    def __init__(self, cfg: ScenarioConfig):
        self.cfg = cfg
        self.budget = LinkBudget(cfg)
        self._cache: dict[tuple[str, str, int, int, bool], float] = {}
        self._lock = threading.Lock()

    def sinr_linear(self, link: str, desired_state: LinkState, scheme: str,
                    k_f_los: int, k_f_nlos: int, k_b_los: int, k_b_nlos: int,
                    relay_interfering: bool = False) -> float:
        """SINR for one reception given a fixed LOS partition of interferers."""
        b = self.budget
        if relay_interfering and b.receiver(link) is not Role.MMAP:
            raise ValueError("the relay can interfere only at the mmAP")
        if relay_interfering and link == "rd":
            raise ValueError("the relay does not interfere with its own packet")
        signal = b.power(link, scheme, desired_state)
        ilink = b.interferer_link(link)
        interference = (k_f_los * b.power(ilink, "fd", LinkState.LOS)
                        + k_f_nlos * b.power(ilink, "fd", LinkState.NLOS)
                        + k_b_los * b.power(ilink, "br", LinkState.LOS)
                        + k_b_nlos * b.power(ilink, "br", LinkState.NLOS))
        if relay_interfering:
            interference += b.power("rd", "fd", LinkState.LOS)
        return signal / (b.noise_w + b.alpha * interference)

    def _compute(self, link: str, scheme: str, n_f: int, n_b: int,
                 relay_active: bool) -> float:
        b = self.budget
        gamma = b.gamma_linear
        p_des = b.p_los(link)
        p_int = b.p_los(b.interferer_link(link))
        w_f = _binom_pmf(n_f, p_int)
        w_b = _binom_pmf(n_b, p_int)
        terms = []
        for state, w_state in ((LinkState.LOS, p_des), (LinkState.NLOS, 1.0 - p_des)):
            if w_state == 0.0:
                continue
            for k in range(n_f + 1):
                for h in range(n_b + 1):
                    sinr = self.sinr_linear(link, state, scheme,
                                            k, n_f - k, h, n_b - h, relay_active)
                    if sinr >= gamma:
                        terms.append(w_state * w_f[k] * w_b[h])
        return math.fsum(terms)

    def success_probability(self, link: str, scheme: str,
                            profile: InterfererProfile) -> float:
        """Blockage-averaged probability that the reception clears gamma."""
        key = (link, scheme, profile.n_f, profile.n_b, profile.relay_active)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        with self._lock:
            hit = self._cache.get(key)
            if hit is None:
                hit = self._compute(link, scheme, profile.n_f, profile.n_b,
                                    profile.relay_active)
                self._cache[key] = hit
        return hit

    def p(self, link: str, scheme: str, n_f: int, n_b: int,
          relay: bool = False) -> float:
        """Shorthand for success_probability with raw counts."""
        return self.success_probability(link, scheme,
                                        InterfererProfile(n_f, n_b, relay))
