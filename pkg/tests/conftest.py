import math

import numpy as np
import pytest

from loglin_effects import CausalParams, ContingencyTable, NoCausalParams


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)


def random_nocausal(rng, three_way=False, scale=1000.0):
    """Random multiplicative parameters with log values in [-1.5, 1.5]."""
    logs = rng.uniform(-1.5, 1.5, size=7)
    return NoCausalParams(
        eta=scale,
        x=math.exp(logs[0]),
        z=math.exp(logs[1]),
        y=math.exp(logs[2]),
        xz=math.exp(logs[3]),
        xy=math.exp(logs[4]),
        zy=math.exp(logs[5]),
        xzy=math.exp(logs[6]) if three_way else 1.0,
    )


def random_causal(rng, with_interaction=False):
    logs = rng.uniform(-1.5, 1.5, size=7)
    return CausalParams(
        xc=math.exp(logs[0]),
        zc=math.exp(logs[1]),
        xzc=math.exp(logs[2]),
        y=math.exp(logs[3]),
        xy=math.exp(logs[4]),
        zy=math.exp(logs[5]),
        xzy=math.exp(logs[6]) if with_interaction else 1.0,
        with_interaction=with_interaction,
    )


def table_from_params(nc: NoCausalParams) -> ContingencyTable:
    """Exact expected counts of the generating model, as a table."""
    return nc.as_table()


# printed parameter values of the two worked empirical models

TABLE5 = CausalParams(
    xc=1.7132, zc=0.4659, xzc=3.3059,
    y=0.4881, xy=1.9240, zy=2.4038,
)

TABLE6 = CausalParams(
    xc=1.2278, zc=0.3390, xzc=3.5534,
    y=0.2826, xy=1.4042, zy=3.5385,
    xzy=2.8826, with_interaction=True,
)
