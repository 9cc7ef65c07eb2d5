import math

import numpy as np
import pytest

from funghost.analytic import AnalyticInputs, one_touch_price
from funghost.core import (
    ContractSpec,
    MarketParams,
    OutOfDomain,
    SchemeConfig,
    SchemeKind,
    TermStructure,
    TridiagonalOperator,
    build_barrier_on_node,
    build_operator,
    build_uniform,
    default_smax,
)
from funghost.schemes import (
    count_sign_changes,
    get_scheme,
    initial_condition,
    read_price,
    solve,
    step_explicit,
    step_theta,
)
from funghost.stability import dt_max_ghost, dt_max_ghost_monotone, n_steps

from .conftest import BARRIER, REFERENCE_PRICE, SMAX, SPOT


def _scalar_operator(value: float) -> TridiagonalOperator:
    return TridiagonalOperator(
        lower=np.zeros(1),
        diag=np.array([value]),
        upper=np.zeros(1),
        source=np.zeros(1),
        frozen=np.zeros(1, dtype=bool),
    )


def _decay_error(kind: SchemeKind, steps: int, lam: float = 1.0) -> float:
    scheme = get_scheme(SchemeConfig(kind=kind, steps=steps))
    op = _scalar_operator(-lam / steps)
    values = np.ones(1)
    for _ in range(steps):
        values = scheme.step(values, (op, op, op))
    return abs(float(values[0]) - math.exp(-lam))


class TestSchemeConfig:
    @pytest.mark.parametrize(
        "alias, kind",
        [
            ("cn", SchemeKind.CRANK_NICOLSON),
            ("Crank-Nicolson", SchemeKind.CRANK_NICOLSON),
            ("TR_BDF2", SchemeKind.TRBDF2),
            ("implicit", SchemeKind.IMPLICIT),
            ("euler", SchemeKind.EXPLICIT),
        ],
    )
    def test_parse(self, alias, kind):
        assert SchemeKind.parse(alias) == kind

    @pytest.mark.parametrize(
        "kwargs",
        [{"steps": 0}, {"divergence_bound": 1.0}, {"alpha": 1.0}, {"kind": "leapfrog"}],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            SchemeConfig(**kwargs)


class TestSteps:
    def test_theta_zero_is_explicit(self, market, ghost_grid, rng):
        op = build_operator(ghost_grid, market, 1.0, 1e-4)
        values = rng.uniform(0.0, 1.0, ghost_grid.size)
        assert np.array_equal(step_theta(values, op, op, 0.0), step_explicit(values, op))

    @pytest.mark.parametrize("kind", list(SchemeKind))
    def test_zero_operator_is_identity(self, kind, rng):
        zero = TridiagonalOperator.zeros(7)
        values = rng.uniform(-1.0, 1.0, 7)
        result = get_scheme(SchemeConfig(kind=kind)).step(values, (zero, zero, zero))
        assert np.allclose(result, values, rtol=0, atol=1e-14)

    def test_invalid_theta(self):
        zero = TridiagonalOperator.zeros(3)
        with pytest.raises(ValueError):
            step_theta(np.ones(3), zero, zero, 1.5)

    @pytest.mark.parametrize(
        "kind, order",
        [
            (SchemeKind.EXPLICIT, 1.0),
            (SchemeKind.IMPLICIT, 1.0),
            (SchemeKind.CRANK_NICOLSON, 2.0),
            (SchemeKind.TRBDF2, 2.0),
        ],
    )
    def test_convergence_order_on_decay(self, kind, order):
        observed = math.log2(_decay_error(kind, 40) / _decay_error(kind, 80))
        assert observed == pytest.approx(order, abs=0.15)


class TestSolve:
    def test_initial_condition(self, ghost_grid):
        values = initial_condition(ghost_grid, 1.0)
        u = ghost_grid.barrier_index
        assert not values[:u].any()
        assert (values[u:] == 1.0).all()

    def test_initial_condition_on_node(self):
        grid = build_barrier_on_node(SMAX, 100, BARRIER)
        values = initial_condition(grid, 2.0)
        assert values[grid.barrier_index] == 2.0
        assert values[grid.barrier_index - 1] == 0.0

    def test_explicit_stable_run_matches_reference(self, market, contract, ghost_grid):
        result = solve(market, contract, ghost_grid, SchemeConfig(kind="explicit", steps=3600))
        assert not result.diverged
        assert read_price(result, ghost_grid, SPOT) == pytest.approx(REFERENCE_PRICE, abs=2e-3)

    def test_explicit_diverges_below_threshold(self, market, contract, ghost_grid):
        result = solve(market, contract, ghost_grid, SchemeConfig(kind="explicit", steps=3000))
        assert result.diverged
        assert 1 <= result.diverged_at_step <= 3000
        assert np.max(np.abs(result.final_values)) > 10.0 or not np.all(np.isfinite(result.final_values))

    @pytest.mark.parametrize("kind, tol", [("crank-nicolson", 5e-3), ("tr-bdf2", 5e-3), ("implicit", 1e-2)])
    def test_implicit_schemes_match_reference(self, market, contract, ghost_grid, kind, tol):
        result = solve(market, contract, ghost_grid, SchemeConfig(kind=kind, steps=400))
        assert not result.diverged
        assert read_price(result, ghost_grid, SPOT) == pytest.approx(REFERENCE_PRICE, abs=tol)

    def test_ghost_and_on_node_agree_on_fine_grid(self, market, contract):
        smax = default_smax(market, 1.0)
        prices = []
        for grid in (build_uniform(smax, 400, BARRIER), build_barrier_on_node(smax, 400, BARRIER)):
            steps = math.ceil(1.1 * n_steps(dt_max_ghost(grid, market, 1.0), 1.0))
            result = solve(market, contract, grid, SchemeConfig(kind="explicit", steps=steps))
            assert not result.diverged
            prices.append(read_price(result, grid, SPOT))
        ghost, on_node = prices
        assert ghost == pytest.approx(on_node, abs=1e-3)
        assert ghost == pytest.approx(REFERENCE_PRICE, abs=1e-3)
        assert on_node == pytest.approx(REFERENCE_PRICE, abs=1e-3)

    def test_monotone_bound_keeps_values_in_range(self, market, contract, ghost_grid):
        steps = n_steps(dt_max_ghost_monotone(ghost_grid, market, 1.0), 1.0)
        result = solve(market, contract, ghost_grid, SchemeConfig(kind="explicit", steps=steps))
        assert not result.diverged
        assert result.final_values.min() >= -1e-12
        assert result.final_values.max() <= 1.0 + 1e-12

    def test_snapshots(self, market, contract, ghost_grid):
        scheme = SchemeConfig(kind="crank-nicolson", steps=40, snapshot_steps=(0, 5))
        result = solve(market, contract, ghost_grid, scheme)
        assert [k for _, k, _ in result.snapshots] == [0, 5]
        assert np.array_equal(result.snapshot(0), initial_condition(ghost_grid))
        t, _, _ = result.snapshots[1]
        assert t == pytest.approx(1.0 - 5 / 40)
        with pytest.raises(KeyError):
            result.snapshot(7)

    def test_rebate_scales_price(self, market, ghost_grid):
        contract = ContractSpec(barrier=BARRIER, maturity=1.0, rebate=2.5)
        result = solve(market, contract, ghost_grid, SchemeConfig(kind="tr-bdf2", steps=200))
        inputs = AnalyticInputs(spot=SPOT, barrier=BARRIER, maturity=1.0, vol=0.2, rebate=2.5)
        assert read_price(result, ghost_grid, SPOT) == pytest.approx(one_touch_price(inputs), abs=1.5e-2)

    def test_time_dependent_market(self, contract, ghost_grid):
        market = MarketParams(
            spot=SPOT, vol=TermStructure((0.5,), (0.15, 0.25)), rate=TermStructure((0.5,), (0.0, 0.01))
        )
        result = solve(market, contract, ghost_grid, SchemeConfig(kind="crank-nicolson", steps=200))
        price = read_price(result, ghost_grid, SPOT)
        assert 0.0 < price < 1.0


class TestReadPrice:
    def test_barrier_reads_rebate(self, market, contract, ghost_grid):
        result = solve(market, contract, ghost_grid, SchemeConfig(kind="tr-bdf2", steps=50))
        assert read_price(result, ghost_grid, BARRIER) == pytest.approx(1.0)

    @pytest.mark.parametrize("s", [-1.0, SMAX * 1.01])
    def test_out_of_domain(self, market, contract, ghost_grid, s):
        result = solve(market, contract, ghost_grid, SchemeConfig(kind="tr-bdf2", steps=10))
        with pytest.raises(OutOfDomain):
            read_price(result, ghost_grid, s)


class TestBarrierOscillation:
    def _changes(self, market, contract, grid, kind):
        scheme = SchemeConfig(kind=kind, steps=400, snapshot_steps=(5, 9, 17))
        result = solve(market, contract, grid, scheme)
        return count_sign_changes(result.snapshot(5), grid, contract.rebate)

    def test_crank_nicolson_oscillates_with_ghost(self, market, contract, ghost_grid):
        assert self._changes(market, contract, ghost_grid, "crank-nicolson") >= 1

    def test_crank_nicolson_monotone_on_node(self, market, contract):
        grid = build_barrier_on_node(SMAX, 100, BARRIER)
        assert self._changes(market, contract, grid, "crank-nicolson") == 0

    def test_trbdf2_damps_ghost_oscillation(self, market, contract, ghost_grid):
        assert self._changes(market, contract, ghost_grid, "tr-bdf2") == 0

    def test_monotone_sequence_has_no_changes(self, ghost_grid):
        values = np.linspace(0.0, 0.9, ghost_grid.size)
        assert count_sign_changes(values, ghost_grid) == 0
