"""Node geometry, blockage probabilities, path loss and link budgets.

The network is reduced to three scalars shared by all (symmetric) user
nodes: the UE-relay ground distance, the UE-access-point ground distance,
and the angle between relay and access point seen from a UE. Propagation
follows 3GPP TR 38.901 UMi-Street-Canyon (LOS probability Table 7.4.2-1,
path loss Table 7.4.1-1) with shadow fading disabled, so a reception's
SINR is fully determined once every involved link's LOS/NLOS state is
fixed. Antennas use the ideal sectored pattern: constant gain 2*pi/theta
inside the main lobe, zero outside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum

SPEED_OF_LIGHT = 3.0e8  # m/s, as used by TR 38.901 breakpoint formula

# Effective environment height for UMi breakpoint distance (Table 7.4.1-1 note 1)
_H_ENV = 1.0

# TR 38.901 formulas are calibrated down to 10 m; we evaluate below that but
# refuse distances under this hard floor.
MIN_PATH_LOSS_DISTANCE_M = 1.0


class LinkState(Enum):
    LOS = "los"
    NLOS = "nlos"


class Role(Enum):
    UE = "ue"
    RELAY = "relay"
    MMAP = "mmap"


@dataclass(frozen=True)
class ScenarioConfig:
    """Every free parameter of the model.

    Defaults are the urban-microcell operating point used throughout the
    bundled sweep recipes: 30 GHz carrier, 24 dBm transmit power, -80 dBm
    noise, 10 m / 1.5 m antenna heights, 30 m and 50 m UE distances,
    10 dB SINR threshold, residual inter-beam leakage 0.1, and 5-degree
    beams for fully directional (FD) transmissions. Broadcast (BR)
    transmissions default to a beamwidth equal to ``theta_rd_deg`` so the
    beam covers relay and access point simultaneously. ``q_r`` defaults
    to 1 (work-conserving relay).
    """

    n_ues: int = 10
    q_u: float = 0.1      # P(UE transmits in a slot)
    q_uf: float = 0.5     # P(FD scheme | transmitting); q_ub = 1 - q_uf
    q_ur: float = 0.5     # P(aim at relay | FD);        q_ud = 1 - q_ur
    q_r: float = 1.0      # P(relay transmits | queue nonempty)
    gamma_db: float = 10.0
    alpha: float = 0.1    # residual inter-beam interference coefficient
    p_t_dbm: float = 24.0
    p_n_dbm: float = -80.0
    f_c_ghz: float = 30.0
    h_ap_m: float = 10.0
    h_ue_m: float = 1.5
    d_ur_m: float = 30.0
    d_ud_m: float = 50.0
    theta_rd_deg: float = 30.0
    theta_bw_fd_deg: float = 5.0
    theta_bw_br_deg: float | None = None  # None -> theta_rd_deg

    def __post_init__(self) -> None:
        if not (isinstance(self.n_ues, int) and self.n_ues >= 1):
            raise ValueError(f"n_ues must be a positive integer, got {self.n_ues!r}")
        for name in ("q_u", "q_uf", "q_ur", "q_r", "alpha"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise ValueError(f"{name} must lie in [0, 1], got {v!r}")
        for name in ("f_c_ghz", "h_ap_m", "h_ue_m", "d_ur_m", "d_ud_m"):
            v = getattr(self, name)
            if not v > 0.0:
                raise ValueError(f"{name} must be strictly positive, got {v!r}")
        if not (0.0 < self.theta_rd_deg < 180.0):
            raise ValueError(
                f"theta_rd_deg must lie in (0, 180), got {self.theta_rd_deg!r}")
        for name in ("theta_bw_fd_deg", "theta_bw_br_deg"):
            v = getattr(self, name)
            if v is None:
                continue
            if not (0.0 < v <= 360.0):
                raise ValueError(f"{name} must lie in (0, 360], got {v!r}")
        # A BR beam must cover both receivers whenever BR transmissions can occur.
        if self.q_uf < 1.0 and self.theta_bw_br < self.theta_rd_deg:
            raise ValueError(
                "theta_bw_br_deg must be >= theta_rd_deg when BR transmissions "
                f"are enabled (q_uf={self.q_uf}): "
                f"{self.theta_bw_br} < {self.theta_rd_deg}")

    @property
    def q_ub(self) -> float:
        return 1.0 - self.q_uf

    @property
    def q_ud(self) -> float:
        return 1.0 - self.q_ur

    @property
    def theta_bw_br(self) -> float:
        """BR beamwidth in degrees (defaults to the relay/mmAP separation)."""
        if self.theta_bw_br_deg is None:
            return self.theta_rd_deg
        return self.theta_bw_br_deg

    def replace(self, **changes) -> "ScenarioConfig":
        return replace(self, **changes)


@dataclass(frozen=True)
class Link:
    """A directed transmitter->receiver link with its blockage probability."""

    tx: Role
    rx: Role
    d_2d_m: float
    h_tx_m: float
    h_rx_m: float
    p_los: float
    d_3d_m: float = field(init=False)

    def __post_init__(self) -> None:
        if not self.d_2d_m > 0.0:
            raise ValueError(f"link distance must be positive, got {self.d_2d_m!r}")
        if not (0.0 <= self.p_los <= 1.0):
            raise ValueError(f"p_los must lie in [0, 1], got {self.p_los!r}")
        dh = self.h_rx_m - self.h_tx_m
        object.__setattr__(self, "d_3d_m", math.hypot(self.d_2d_m, dh))


def relay_mmap_distance(d_ur_m: float, d_ud_m: float, theta_rd_deg: float) -> float:
    """Ground distance between relay and mmAP via the law of cosines.

    ``theta_rd_deg`` is the angle at the UE between the two; 0 and 180
    degrees give the collinear limits |d_ud - d_ur| and d_ur + d_ud.
    """
    if d_ur_m <= 0.0 or d_ud_m <= 0.0:
        raise ValueError("distances must be strictly positive")
    if not (0.0 <= theta_rd_deg <= 180.0):
        raise ValueError(f"theta_rd_deg must lie in [0, 180], got {theta_rd_deg!r}")
    c = math.cos(math.radians(theta_rd_deg))
    return math.sqrt(d_ur_m * d_ur_m + d_ud_m * d_ud_m - 2.0 * d_ur_m * d_ud_m * c)


def los_probability(d_2d_m: float) -> float:
    """UMi street-canyon LOS probability (TR 38.901 Table 7.4.2-1)."""
    if d_2d_m < 0.0:
        raise ValueError(f"distance must be non-negative, got {d_2d_m!r}")
    if d_2d_m <= 18.0:
        return 1.0
    return 18.0 / d_2d_m + math.exp(-d_2d_m / 36.0) * (1.0 - 18.0 / d_2d_m)


def breakpoint_distance_m(f_c_ghz: float, h_bs_m: float, h_ut_m: float) -> float:
    """UMi breakpoint distance with effective antenna heights."""
    return 4.0 * (h_bs_m - _H_ENV) * (h_ut_m - _H_ENV) * (f_c_ghz * 1e9) / SPEED_OF_LIGHT


def path_loss_db(d_3d_m: float, f_c_ghz: float, state: LinkState,
                 h_bs_m: float, h_ut_m: float) -> float:
    """UMi street-canyon path loss in dB (TR 38.901 Table 7.4.1-1, no shadowing).

    NLOS is the max of the LOS loss and the NLOS expression, so it can
    never fall below LOS at the same distance.
    """
    if d_3d_m < MIN_PATH_LOSS_DISTANCE_M:
        raise ValueError(
            f"d_3d_m={d_3d_m!r} below model validity floor "
            f"({MIN_PATH_LOSS_DISTANCE_M} m)")
    dh = h_bs_m - h_ut_m
    d_2d = math.sqrt(max(d_3d_m * d_3d_m - dh * dh, 0.0))
    d_bp = breakpoint_distance_m(f_c_ghz, h_bs_m, h_ut_m)
    if d_2d <= d_bp:
        pl_los = 32.4 + 21.0 * math.log10(d_3d_m) + 20.0 * math.log10(f_c_ghz)
    else:
        pl_los = (32.4 + 40.0 * math.log10(d_3d_m) + 20.0 * math.log10(f_c_ghz)
                  - 9.5 * math.log10(d_bp * d_bp + dh * dh))
    if state is LinkState.LOS:
        return pl_los
    pl_nlos = (35.3 * math.log10(d_3d_m) + 22.4 + 21.3 * math.log10(f_c_ghz)
               - 0.3 * (h_ut_m - 1.5))
    return max(pl_los, pl_nlos)


def beam_gain(theta_bw_deg: float) -> float:
    """Main-lobe gain of the ideal sectored antenna, 2*pi over the beamwidth."""
    if not (0.0 < theta_bw_deg <= 360.0):
        raise ValueError(f"beamwidth must lie in (0, 360] degrees, got {theta_bw_deg!r}")
    return math.tau / math.radians(theta_bw_deg)


def received_power_w(link: Link, state: LinkState, tx_gain: float, rx_gain: float,
                     p_t_dbm: float, f_c_ghz: float) -> float:
    """Received power in watts: p_t * g_tx * g_rx * 10^(-PL/10)."""
    if tx_gain < 0.0 or rx_gain < 0.0:
        raise ValueError("antenna gains must be non-negative")
    if tx_gain == 0.0 or rx_gain == 0.0:
        return 0.0
    pl = path_loss_db(link.d_3d_m, f_c_ghz, state,
                      h_bs_m=max(link.h_tx_m, link.h_rx_m),
                      h_ut_m=min(link.h_tx_m, link.h_rx_m))
    p_t_w = 10.0 ** ((p_t_dbm - 30.0) / 10.0)
    return p_t_w * tx_gain * rx_gain * 10.0 ** (-pl / 10.0)


# Link identifiers used across the analytical modules: 'ur' = UE->relay,
# 'ud' = UE->mmAP, 'rd' = relay->mmAP. Schemes: 'fd' (narrow beam to one
# receiver) and 'br' (wide beam covering both).
LINKS = ("ur", "ud", "rd")
SCHEMES = ("fd", "br")


class LinkBudget:
    """Precomputed per-link received powers and radio constants.

    The relay sits at mmAP height, which keeps its link to the mmAP
    unobstructed (p_los = 1). Receivers form one narrow beam per decoded
    stream, so every reception uses the FD beamwidth on the receive side.
    """

    def __init__(self, cfg: ScenarioConfig):
        self.cfg = cfg
        d_rd = relay_mmap_distance(cfg.d_ur_m, cfg.d_ud_m, cfg.theta_rd_deg)
        self.links: dict[str, Link] = {
            "ur": Link(Role.UE, Role.RELAY, cfg.d_ur_m, cfg.h_ue_m, cfg.h_ap_m,
                       los_probability(cfg.d_ur_m)),
            "ud": Link(Role.UE, Role.MMAP, cfg.d_ud_m, cfg.h_ue_m, cfg.h_ap_m,
                       los_probability(cfg.d_ud_m)),
            "rd": Link(Role.RELAY, Role.MMAP, d_rd, cfg.h_ap_m, cfg.h_ap_m, 1.0),
        }
        self.gain_fd = beam_gain(cfg.theta_bw_fd_deg)
        self.gain_br = beam_gain(cfg.theta_bw_br)
        self.gain_rx = self.gain_fd
        self.noise_w = 10.0 ** ((cfg.p_n_dbm - 30.0) / 10.0)
        self.gamma_linear = 10.0 ** (cfg.gamma_db / 10.0)
        self.alpha = cfg.alpha
        self._power: dict[tuple[str, str, LinkState], float] = {}
        for name, link in self.links.items():
            for scheme, g_tx in (("fd", self.gain_fd), ("br", self.gain_br)):
                for state in LinkState:
                    self._power[name, scheme, state] = received_power_w(
                        link, state, g_tx, self.gain_rx, cfg.p_t_dbm, cfg.f_c_ghz)

    def power(self, link: str, scheme: str, state: LinkState) -> float:
        """Received watts for a transmission of `scheme` on `link` in `state`."""
        return self._power[link, scheme, state]

    def p_los(self, link: str) -> float:
        return self.links[link].p_los

    @staticmethod
    def receiver(link: str) -> Role:
        return Role.RELAY if link == "ur" else Role.MMAP

    def interferer_link(self, link: str) -> str:
        """Link traversed by an interfering UE toward this link's receiver."""
        return "ur" if self.receiver(link) is Role.RELAY else "ud"
