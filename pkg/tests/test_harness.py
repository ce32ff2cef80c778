"""Driver runs, look-ahead sweeps, refinement tables, and the
relaxation oracle."""

import math
from dataclasses import replace

import numpy as np
import pytest
from numpy.testing import assert_allclose

from lanefv import (
    ModelAdmissibilityError,
    Segment,
    cell_averages,
    conservative_coarsen,
    custom_velocity,
    eta_sweep,
    greenshields,
    ode_oracle_check,
    refinement_study,
    run,
    scenario,
)
from lanefv.oracles import riemann_cell_averages

LAW = greenshields(1.0, 1.0)


def small_scenario(n_cells=64, out_times=(0.0, 0.1, 0.2)):
    return replace(scenario("s_zero_tv", n_cells=n_cells), out_times=out_times)


class TestRun:
    def test_one_snapshot_per_output_time(self):
        scn = small_scenario()
        snapshots = run(scn, 0.1)
        assert [state.t for state, _ in snapshots] == [0.0, 0.1, 0.2]

    def test_first_snapshot_is_the_datum(self):
        scn = small_scenario()
        state, record = run(scn, 0.1)[0]
        assert np.array_equal(state.rho1, scn.rho1_0)
        assert np.array_equal(state.rho2, scn.rho2_0)
        assert math.isnan(record.entropy_residual_max)

    def test_no_output_times_returns_the_datum(self):
        snapshots = run(small_scenario(out_times=()), 0.1)
        assert len(snapshots) == 1
        assert snapshots[0][0].t == 0.0

    def test_records_are_consistent(self):
        scn = small_scenario()
        for state, record in run(scn, 0.05)[1:]:
            assert record.t == state.t
            assert record.tv_w_sum == record.tv_w[0] + record.tv_w[1]
            assert record.mass_ledger_residual <= 1e-12
            assert math.isfinite(record.entropy_residual_max)
            (lo1, hi1), (lo2, hi2) = record.min_max
            assert 0.0 <= lo1 <= hi1 <= 1.0
            assert 0.0 <= lo2 <= hi2 <= 1.0
            mass = (np.sum(state.rho1) + np.sum(state.rho2)) * scn.grid.dx
            assert_allclose(record.mass_total, mass, rtol=1e-14)

    def test_deterministic(self):
        scn = small_scenario()
        a = run(scn, 0.1)[-1][0]
        b = run(scn, 0.1)[-1][0]
        assert np.array_equal(a.rho1, b.rho1)
        assert np.array_equal(a.rho2, b.rho2)

    def test_dt_cap_still_lands_on_targets(self):
        snapshots = run(small_scenario(), 0.1, dt_max=1e-3)
        assert [state.t for state, _ in snapshots] == [0.0, 0.1, 0.2]

    def test_rejects_unsorted_output_times(self):
        with pytest.raises(ValueError, match="sorted"):
            run(small_scenario(out_times=(0.2, 0.1)), 0.1)

    def test_rejects_inadmissible_model(self):
        rising = custom_velocity(
            lambda u: np.asarray(u, dtype=np.float64),
            lambda u: np.ones_like(np.asarray(u, dtype=np.float64)),
        )
        scn = replace(small_scenario(), v1=rising)
        with pytest.raises(ModelAdmissibilityError):
            run(scn, 0.1)


class TestEtaSweep:
    def sweep(self):
        return eta_sweep(
            "s_zero_tv", eta_list=(0.1, 0.01), n_cells=100, out_times=(0.0, 0.2)
        )

    def test_reference_is_always_computed(self):
        res = self.sweep()
        assert res.eta_list == (0.1, 0.01, 0.0)
        assert set(res.snapshots) == {0.1, 0.01, 0.0}

    def test_table_rows_cover_requested_etas_only(self):
        res = self.sweep()
        assert [(row[0], row[1]) for row in res.l1_table] == [
            (0.1, 0.0),
            (0.1, 0.2),
            (0.01, 0.0),
            (0.01, 0.2),
        ]
        assert [(row[0], row[1]) for row in res.tv_table] == [
            (0.1, 0.0),
            (0.1, 0.2),
            (0.01, 0.0),
            (0.01, 0.2),
        ]

    def test_distances_start_at_zero_and_split_by_lane(self):
        res = self.sweep()
        for eta, t, d1, d2, total in res.l1_table:
            assert total == d1 + d2
            if t == 0.0:
                assert (d1, d2) == (0.0, 0.0)
            else:
                assert total > 0.0

    def test_records_carry_the_table_distance(self):
        res = self.sweep()
        for eta, t, _, _, total in res.l1_table:
            matches = [rec for state, rec in res.snapshots[eta] if state.t == t]
            assert matches[0].l1_vs_reference == total

    def test_variation_stays_under_the_bound(self):
        for _, _, tv_w_sum, _, bound in self.sweep().tv_table:
            assert tv_w_sum <= bound * (1.0 + 1e-12)

    def test_reference_matches_a_standalone_run(self):
        res = self.sweep()
        scn = replace(scenario("s_zero_tv", n_cells=100), out_times=(0.0, 0.2))
        for (state, _), (ref, _) in zip(res.snapshots[0.0], run(scn, 0.0)):
            assert np.array_equal(state.rho1, ref.rho1)
            assert np.array_equal(state.rho2, ref.rho2)

    def test_requesting_the_local_model_gives_zero_rows(self):
        res = eta_sweep("s_zero_tv", eta_list=(0.1, 0.0), n_cells=64, out_times=(0.1,))
        rows = [row for row in res.l1_table if row[0] == 0.0]
        assert rows and all(row[2:] == (0.0, 0.0, 0.0) for row in rows)

    def test_deterministic(self):
        a, b = self.sweep(), self.sweep()
        assert a.l1_table == b.l1_table
        assert a.tv_table == b.tv_table

    @pytest.mark.parametrize("bad", [(), (0.1, -0.2), (0.1, 0.1)])
    def test_rejects_bad_eta_lists(self, bad):
        with pytest.raises(ValueError):
            eta_sweep("s_zero_tv", eta_list=bad, n_cells=32, out_times=(0.1,))


class TestConservativeCoarsen:
    def test_block_means(self):
        out = conservative_coarsen(np.array([1.0, 3.0, 5.0, 7.0]), 2)
        assert np.array_equal(out, [2.0, 6.0])

    def test_factor_one_is_identity(self):
        values = np.linspace(0.0, 1.0, 12)
        assert np.array_equal(conservative_coarsen(values, 1), values)

    def test_preserves_mass(self):
        rng = np.random.default_rng(5)
        for factor in (2, 4, 8):
            fine = rng.uniform(0.0, 1.0, size=64)
            coarse = conservative_coarsen(fine, factor)
            assert coarse.shape == (64 // factor,)
            assert_allclose(np.sum(coarse) * factor, np.sum(fine), rtol=1e-12)

    @pytest.mark.parametrize("factor", [0, 3, 16])
    def test_rejects_nondividing_blocks(self, factor):
        with pytest.raises(ValueError):
            conservative_coarsen(np.zeros(8), factor)


def steady_case(n):
    scn = scenario("s_zero_tv", n_cells=n)
    return replace(
        scn,
        rho1_0=np.full(n, 0.4),
        rho2_0=np.full(n, 0.2),
        out_times=(0.25,),
    )


def fan_case(n):
    scn = scenario("riemann_local", n_cells=n)
    return replace(scn, rho1_0=cell_averages([Segment(0.6, hi=0.0)], scn.grid))


def fan_reference(grid, t):
    return riemann_cell_averages(0.6, 0.0, LAW, grid, t), np.zeros(grid.n_cells)


def logistic_case(n):
    scn = scenario("s_zero_tv", n_cells=n)
    rho1 = 0.6 / (1.0 + np.exp(-scn.grid.centers / 0.1))
    return replace(scn, rho1_0=rho1, rho2_0=np.full(n, 0.2), out_times=(0.3,))


class TestRefinementStudy:
    def test_steady_state_self_convergence_is_exact(self):
        rows = refinement_study(steady_case, [100, 200, 400], 0.1)
        assert len(rows) == 2
        assert [row.error for row in rows] == [0.0, 0.0]
        assert all(math.isnan(row.order) for row in rows)
        assert_allclose([row.dx for row in rows], [0.08, 0.04], rtol=1e-12)

    def test_steady_state_against_exact_reference(self):
        def exact(grid, t):
            return np.full(grid.n_cells, 0.4), np.full(grid.n_cells, 0.2)

        rows = refinement_study(steady_case, [100, 200, 400], 0.1, reference=exact)
        assert len(rows) == 3
        assert all(row.error == 0.0 for row in rows)

    def test_smooth_data_self_convergence_is_first_order(self):
        rows = refinement_study(logistic_case, [200, 400, 800], 0.1)
        errors = [row.error for row in rows]
        assert_allclose(errors, [4.478600e-3, 2.423603e-3], rtol=1e-5)
        assert 0.7 <= rows[0].order <= 1.1

    def test_fan_against_closed_form(self):
        rows = refinement_study(fan_case, [400, 800, 1600], 0.0, reference=fan_reference)
        errors = [row.error for row in rows]
        assert_allclose(errors, [1.673090e-2, 1.010558e-2, 5.973634e-3], rtol=1e-5)
        assert errors[0] > errors[1] > errors[2]
        assert rows[0].order >= 0.7 and rows[1].order >= 0.7
        assert errors[2] < 6.2e-3
        assert math.isnan(rows[2].order)

    @pytest.mark.parametrize("sizes", [[400, 600], [800, 400], [400, 400]])
    def test_rejects_non_nested_resolutions(self, sizes):
        with pytest.raises(ValueError):
            refinement_study("riemann_local", sizes, 0.0)


class TestOdeOracleCheck:
    def test_error_is_linear_in_dt(self):
        rows = ode_oracle_check(0.5, [1e-3, 5e-4], n_cells=50)
        (dt0, err0), (dt1, err1) = rows
        assert (dt0, dt1) == (1e-3, 5e-4)
        assert_allclose([err0, err1], [7.363726e-5, 3.680328e-5], rtol=1e-5)
        assert err0 <= 2e-3
        assert 1.8 <= err0 / err1 <= 2.2

    def test_zero_horizon_matches_the_datum(self):
        (_, err), = ode_oracle_check(0.0, [1e-3], n_cells=50)
        assert err <= 1e-15
