import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mmrelay import ScenarioConfig, SuccessTable

RECIPES = Path(__file__).resolve().parent.parent / "recipes"


@pytest.fixture(scope="session")
def default_cfg():
    return ScenarioConfig()


@pytest.fixture(scope="session")
def two_ue_cfg():
    return ScenarioConfig(n_ues=2, q_u=0.6, q_uf=0.5, q_ur=0.5, q_r=0.7)


@pytest.fixture(scope="session")
def two_ue_table(two_ue_cfg):
    return SuccessTable(two_ue_cfg)


def random_two_ue_cfg(rng: random.Random) -> ScenarioConfig:
    """Interior random parameter point with a wide-open BR beam."""
    return ScenarioConfig(
        n_ues=2,
        q_u=rng.uniform(0.05, 1.0),
        q_uf=rng.uniform(0.0, 1.0),
        q_ur=rng.uniform(0.0, 1.0),
        q_r=rng.uniform(0.0, 1.0),
        gamma_db=rng.uniform(-5.0, 25.0),
        alpha=rng.uniform(0.0, 1.0),
        d_ur_m=rng.uniform(10.0, 120.0),
        d_ud_m=rng.uniform(10.0, 220.0),
        theta_rd_deg=rng.uniform(5.0, 170.0),
        theta_bw_br_deg=360.0,
    )
