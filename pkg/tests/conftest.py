import numpy as np
import pytest

from funghost.core import ContractSpec, MarketParams, build_uniform, default_smax

SPOT = 6317.80
BARRIER = 7581.36
SMAX = 13782.11
REFERENCE_PRICE = 0.329620


@pytest.fixture
def market():
    return MarketParams(spot=SPOT, rate=0.0, dividend=0.0, vol=0.2)


@pytest.fixture
def contract():
    return ContractSpec(barrier=BARRIER, maturity=1.0, rebate=1.0)


@pytest.fixture
def ghost_grid(market):
    return build_uniform(default_smax(market, 1.0), 100, BARRIER)


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)
