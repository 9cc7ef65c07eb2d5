import numpy as np
import pytest

from funghost.core import (
    BarrierBelowFirstCell,
    ContractSpec,
    GridError,
    build_barrier_on_node,
    build_uniform,
    default_smax,
)

from .conftest import BARRIER, SMAX


class TestUniformGrid:
    def test_ghost_geometry(self, ghost_grid):
        grid = ghost_grid
        assert grid.space_steps == 100
        assert grid.spacing == pytest.approx(SMAX / 100)
        assert grid.barrier_index == 56
        assert not grid.on_node
        assert grid.nodes[grid.barrier_index - 1] < BARRIER <= grid.nodes[grid.barrier_index]
        assert grid.epsilon == pytest.approx(BARRIER - 55 * grid.spacing)
        assert 0 < grid.epsilon <= grid.spacing
        assert grid.epsilon_ratio == pytest.approx(0.0087, abs=1e-4)
        assert grid.ghost_ratio == pytest.approx((grid.spacing - grid.epsilon) / grid.epsilon)

    def test_barrier_on_node_detected(self):
        grid = build_uniform(10000.0, 100, 7500.0)
        assert grid.on_node
        assert grid.barrier_index == 75
        assert grid.epsilon == grid.spacing
        assert grid.ghost_ratio == 0.0

    def test_barrier_in_first_cell(self):
        with pytest.raises(BarrierBelowFirstCell):
            build_uniform(10000.0, 100, 50.0)

    def test_barrier_above_smax_truncates(self):
        grid = build_uniform(5000.0, 50, BARRIER)
        assert grid.truncated
        assert grid.on_node
        assert grid.barrier_index == grid.space_steps

    @pytest.mark.parametrize("smax, steps", [(0.0, 100), (10000.0, 0), (10000.0, 2)])
    def test_invalid_input(self, smax, steps):
        with pytest.raises(GridError):
            build_uniform(smax, steps, 5000.0)


class TestBarrierOnNode:
    def test_barrier_is_a_node(self):
        grid = build_barrier_on_node(SMAX, 100, BARRIER)
        assert grid.on_node
        assert grid.barrier_index == 55
        assert grid.nodes[grid.barrier_index] == BARRIER
        assert grid.spacing == pytest.approx(BARRIER / 55)
        assert grid.smax == pytest.approx(100 * BARRIER / 55)

    def test_spacing_is_uniform(self):
        grid = build_barrier_on_node(SMAX, 100, BARRIER)
        assert np.allclose(np.diff(grid.nodes), grid.spacing, rtol=1e-12)

    def test_barrier_above_hint(self):
        with pytest.raises(GridError):
            build_barrier_on_node(5000.0, 100, BARRIER)


def test_default_smax(market):
    assert default_smax(market, 1.0) == pytest.approx(SMAX, abs=0.01)


def test_contract_validation():
    with pytest.raises(ValueError):
        ContractSpec(barrier=-1.0, maturity=1.0)
    with pytest.raises(ValueError):
        ContractSpec(barrier=1.0, maturity=0.0)
