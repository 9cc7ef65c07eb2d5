import numpy as np
import pytest

from funghost.core import (
    MarketParams,
    TridiagonalOperator,
    assemble_interior,
    build_operator,
    build_uniform,
    eliminate_ghost,
    ghost_value,
    lower_boundary_row,
)


class TestAssembly:
    def test_row_sums_vanish_without_rate(self, ghost_grid):
        op = assemble_interior(ghost_grid, 0.0, 0.0, 0.2, 1e-3)
        u = ghost_grid.barrier_index
        sums = op.lower[1:u] + op.diag[1:u] + op.upper[1:u]
        assert np.allclose(sums, 0.0, atol=1e-14)

    def test_row_sums_equal_discount(self, ghost_grid):
        dt, r = 1e-3, 0.05
        op = assemble_interior(ghost_grid, r, 0.02, 0.2, dt)
        u = ghost_grid.barrier_index
        sums = op.lower[1:u] + op.diag[1:u] + op.upper[1:u]
        assert np.allclose(sums, -r * dt, atol=1e-14)

    def test_frozen_rows(self, ghost_grid):
        op = assemble_interior(ghost_grid, 0.01, 0.0, 0.2, 1e-3)
        u = ghost_grid.barrier_index
        assert op.frozen[u:].all() and not op.frozen[:u].any()
        assert not op.lower[u:].any() and not op.diag[u:].any() and not op.upper[u:].any()

    def test_lower_boundary_row(self, ghost_grid):
        assert lower_boundary_row(ghost_grid, 0.03, 0.01, 0.5) == (0.0, pytest.approx(-0.015), 0.0)
        op = assemble_interior(ghost_grid, 0.03, 0.01, 0.2, 0.5)
        assert op.row(0) == (0.0, pytest.approx(-0.015), 0.0)

    def test_invalid_dt(self, ghost_grid):
        with pytest.raises(ValueError):
            assemble_interior(ghost_grid, 0.0, 0.0, 0.2, 0.0)

    def test_negative_time_is_clamped(self, ghost_grid):
        market = MarketParams(spot=1.0, vol=0.2)
        op = build_operator(ghost_grid, market, -1e-15, 1e-3)
        assert op.size == ghost_grid.size


class TestGhostElimination:
    def test_matches_two_stage_interpolation(self, ghost_grid, rng):
        dt, rebate = 2.5e-4, 1.0
        raw = assemble_interior(ghost_grid, 0.02, 0.01, 0.25, dt)
        op = eliminate_ghost(raw, ghost_grid, rebate)
        u = ghost_grid.barrier_index
        for _ in range(100):
            values = rng.uniform(0.0, 1.0, ghost_grid.size)
            values[u:] = rebate
            direct = values + op.matvec(values) + op.source

            two_stage = values.copy()
            extended = values.copy()
            extended[u] = ghost_value(values, ghost_grid, rebate)
            two_stage[:u] = values[:u] + raw.matvec(extended)[:u]
            assert direct[:u] == pytest.approx(two_stage[:u], rel=1e-13, abs=1e-11)
            assert np.array_equal(direct[u:], values[u:])

    def test_on_node_is_dirichlet_row(self):
        grid = build_uniform(10000.0, 100, 7500.0)
        raw = assemble_interior(grid, 0.01, 0.0, 0.2, 1e-3)
        op = eliminate_ghost(raw, grid, rebate=1.0)
        row = grid.barrier_index - 1
        assert op.lower[row] == pytest.approx(raw.lower[row], abs=1e-13)
        assert op.diag[row] == pytest.approx(raw.diag[row], abs=1e-13)
        assert op.upper[row] == 0.0
        assert op.source[row] == pytest.approx(raw.upper[row], abs=1e-13)

    def test_ghost_value_interpolates_through_barrier(self, ghost_grid):
        values = np.zeros(ghost_grid.size)
        values[ghost_grid.barrier_index - 1] = 0.7
        ghost = ghost_value(values, ghost_grid, rebate=1.0)
        s_inner = ghost_grid.last_interior
        s_ghost = ghost_grid.nodes[ghost_grid.barrier_index]
        slope = (ghost - 0.7) / (s_ghost - s_inner)
        assert 0.7 + slope * ghost_grid.epsilon == pytest.approx(1.0, rel=1e-12)

    def test_only_row_below_barrier_changes(self, ghost_grid):
        raw = assemble_interior(ghost_grid, 0.0, 0.0, 0.2, 1e-3)
        op = eliminate_ghost(raw, ghost_grid)
        row = ghost_grid.barrier_index - 1
        mask = np.ones(ghost_grid.size, dtype=bool)
        mask[row] = False
        assert np.array_equal(op.diag[mask], raw.diag[mask])
        assert np.array_equal(op.upper[mask], raw.upper[mask])
        assert not op.source[mask].any()


class TestOperatorHelpers:
    def test_scaled(self, ghost_grid):
        op = build_operator(ghost_grid, MarketParams(spot=1.0), 0.0, 1e-3)
        half = op.scaled(0.5)
        assert np.allclose(half.diag, 0.5 * op.diag)
        assert np.allclose(half.source, 0.5 * op.source)
        assert np.array_equal(half.frozen, op.frozen)

    def test_zeros(self):
        op = TridiagonalOperator.zeros(4)
        values = np.arange(4.0)
        assert np.array_equal(op.matvec(values), np.zeros(4))
