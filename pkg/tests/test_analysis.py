import io
import math

import numpy as np
import pytest

from tailsitter_lab.analysis import (
    SingularDenominator,
    a_v_of_alpha,
    aerodynamic_loading,
    bifurcation_scan,
    find_equilibria,
    linearization_oracle,
    stability_classify,
    stability_matrix,
    stability_pq,
    trim_solve,
    trim_solve_settled,
    write_bifurcation_csv,
)
from tailsitter_lab.params import VehicleParams

from conftest import make_table
from tailsitter_lab.airfoil import fit_spline


@pytest.fixture(scope="module")
def synthetic_spline():
    # smooth polar without stall: cl = 2 sin cos, cd = 0.02 + sin^2
    return fit_spline(make_table(
        lambda a: 2.0 * math.sin(a) * math.cos(a),
        lambda a: 0.02 + math.sin(a) ** 2,
        lambda a: -0.05 * math.sin(a),
    ))


class TestAerodynamicLoading:
    def test_zero(self, params):
        assert aerodynamic_loading(0.0, params) == 0.0

    def test_hand_value(self, params):
        assert aerodynamic_loading(10.0, params) == pytest.approx(0.6379, abs=1e-4)

    def test_quadratic(self, params):
        assert aerodynamic_loading(8.0, params) == pytest.approx(
            4.0 * aerodynamic_loading(4.0, params), rel=1e-12)


class TestLoadingCurve:
    def test_vertical_flight_is_zero(self, naca_spline):
        assert a_v_of_alpha(0.5 * math.pi, naca_spline) == pytest.approx(0.0, abs=1e-12)

    def test_documented_equilibrium_angle(self, naca_spline):
        assert a_v_of_alpha(math.radians(3.648), naca_spline) == pytest.approx(2.5, abs=0.05)

    def test_synthetic_polar_spot_value(self, synthetic_spline):
        alpha = math.radians(20.0)
        cl = 2.0 * math.sin(alpha) * math.cos(alpha)
        cd = 0.02 + math.sin(alpha) ** 2
        cot = 1.0 / math.tan(alpha)
        expected = cot / (cd + cl * cot)
        assert a_v_of_alpha(alpha, synthetic_spline) == pytest.approx(expected, rel=1e-3)

    def test_singular_denominator(self, zero_spline):
        with pytest.raises(SingularDenominator):
            a_v_of_alpha(0.5, zero_spline)
        with pytest.raises(SingularDenominator):
            a_v_of_alpha(np.array([0.3, 0.5]), zero_spline)


class TestFindEquilibria:
    def test_hover_root(self, naca_spline):
        roots = find_equilibria(0.0, naca_spline)
        assert len(roots) == 1
        assert math.degrees(roots[0]) == pytest.approx(90.0, abs=1e-6)

    def test_triple_at_2p5(self, naca_spline):
        roots = [math.degrees(r) for r in find_equilibria(2.5, naca_spline)]
        assert len(roots) == 3
        for got, want in zip(roots, (3.63, 12.8, 17.4)):
            assert got == pytest.approx(want, abs=0.5)

    def test_single_root_past_fold(self, naca_spline):
        roots = [math.degrees(r) for r in find_equilibria(5.0, naca_spline)]
        assert len(roots) == 1
        assert roots[0] < 10.0  # below the stall region

    def test_plugback_invariant(self, naca_spline):
        for target in (0.0, 0.4, 1.0, 2.5, 3.0, 4.5):
            for root in find_equilibria(target, naca_spline):
                residual = abs(a_v_of_alpha(root, naca_spline) - target)
                assert residual < 1e-6 * max(1.0, target)


class TestStability:
    def test_low_root_stable(self, naca_spline):
        assert stability_classify(math.radians(3.648), naca_spline).stable

    def test_middle_root_unstable(self, naca_spline):
        assert not stability_classify(math.radians(12.8), naca_spline).stable

    def test_pure_drag_body_stable(self):
        spline = fit_spline(make_table(
            lambda a: 0.0, lambda a: 0.8, lambda a: 0.0,
            alpha_deg=np.arange(-180.0, 180.5, 5.0)))
        point = stability_classify(math.radians(30.0), spline)
        assert point.p == pytest.approx(2.4, abs=1e-6)
        assert point.q == pytest.approx(0.64, abs=1e-6)
        assert point.stable

    def test_matrix_identities_random(self, naca_spline):
        rng = np.random.default_rng(411)
        for alpha in rng.uniform(math.radians(-179.0), math.radians(179.0), 1000):
            m = stability_matrix(float(alpha), naca_spline)
            p, q = stability_pq(float(alpha), naca_spline)
            assert abs(np.trace(m) + p) < 1e-12 * max(1.0, abs(p))
            assert abs(np.linalg.det(m) - 2.0 * q) < 1e-12 * max(1.0, abs(q))

    def test_diagonal_matrix_example(self):
        spline = fit_spline(make_table(
            lambda a: 0.0, lambda a: 1.0, lambda a: 0.0,
            alpha_deg=np.arange(-180.0, 180.5, 5.0)))
        m = stability_matrix(0.3, spline)
        assert np.allclose(m, np.diag([-2.0, -1.0]), atol=1e-9)
        assert sorted(np.linalg.eigvals(m)) == pytest.approx([-2.0, -1.0], abs=1e-9)

    def test_middle_branch_has_positive_eigenvalue(self, naca_spline):
        m = stability_matrix(math.radians(12.8), naca_spline)
        assert np.max(np.real(np.linalg.eigvals(m))) > 0.0


class TestLinearizationOracle:
    def test_matches_closed_form_at_level_flight(self, naca_spline, params):
        for alpha_deg, speed in ((5.0, 10.0), (25.0, 6.0), (60.0, 3.0)):
            alpha = math.radians(alpha_deg)
            jac = linearization_oracle((speed, 0.0), alpha, params, naca_spline)
            expected = 0.5 * params.rho * params.s_wing * speed * stability_matrix(alpha, naca_spline)
            assert np.allclose(jac, expected, rtol=1e-3, atol=1e-6)

    def test_sign_agreement_with_routh_hurwitz(self, naca_spline, params):
        rng = np.random.default_rng(7)
        checked = 0
        while checked < 50:
            alpha = float(rng.uniform(math.radians(1.0), math.radians(89.0)))
            speed = float(rng.uniform(2.0, 30.0))
            p, q = stability_pq(alpha, naca_spline)
            if abs(p) < 1e-3 or abs(q) < 1e-3:
                continue
            jac = linearization_oracle((speed, 0.0), alpha, params, naca_spline)
            oracle_unstable = np.max(np.real(np.linalg.eigvals(jac))) > 0.0
            rh_unstable = (p * q < 0.0) or (p < 0.0 and q < 0.0)
            assert oracle_unstable == rh_unstable
            checked += 1

    def test_zero_lift_polar_damps(self, params):
        spline = fit_spline(make_table(
            lambda a: 0.0, lambda a: 0.3, lambda a: 0.0,
            alpha_deg=np.arange(-180.0, 180.5, 5.0)))
        jac = linearization_oracle((8.0, 0.0), 0.4, params, spline)
        assert np.allclose(jac, jac.T, atol=1e-8)
        assert np.max(np.linalg.eigvalsh(jac)) < 0.0

    def test_homogeneous_in_speed(self, naca_spline, params):
        alpha = math.radians(14.0)
        j1 = linearization_oracle((5.0, 0.0), alpha, params, naca_spline)
        j2 = linearization_oracle((10.0, 0.0), alpha, params, naca_spline)
        assert np.allclose(j2, 2.0 * j1, rtol=1e-4)


class TestBifurcation:
    def test_fold_points(self, naca_spline):
        diagram = bifurcation_scan(0.0, 5.0, 0.01, naca_spline)
        assert len(diagram.folds) == 2
        assert diagram.folds[0] == pytest.approx(1.18, abs=0.1)
        assert diagram.folds[1] == pytest.approx(3.82, abs=0.1)

    def test_single_branch_below_first_fold(self, naca_spline):
        diagram = bifurcation_scan(0.0, 1.0, 0.02, naca_spline)
        assert np.all(diagram.counts() == 1)
        assert diagram.folds == ()

    def test_no_folds_without_stall(self, synthetic_spline):
        diagram = bifurcation_scan(0.05, 3.0, 0.02, synthetic_spline)
        assert diagram.folds == ()
        assert np.all(diagram.counts() == 1)

    def test_flat_plate_folds_match_brute_force(self, flat_plate_spline):
        diagram = bifurcation_scan(0.0, 6.0, 0.01, flat_plate_spline)
        # dense brute force on the loading curve: count extrema in (0, 90)
        grid = np.radians(np.arange(0.01, 90.0, 0.005))
        curve = a_v_of_alpha(grid, flat_plate_spline)
        d = np.diff(curve)
        interior_extrema = np.flatnonzero(d[:-1] * d[1:] < 0.0)
        folds_expected = sorted(float(curve[i + 1]) for i in interior_extrema)
        assert len(diagram.folds) == len(folds_expected)
        for got, want in zip(diagram.folds, folds_expected):
            assert got == pytest.approx(want, abs=5e-3)

    def test_csv_output(self, naca_spline):
        diagram = bifurcation_scan(2.0, 2.1, 0.05, naca_spline)
        buf = io.StringIO()
        write_bifurcation_csv(diagram, buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == "a_v,alpha_deg,p,q,stable"
        assert len(lines) == 1 + sum(len(e) for e in diagram.equilibria)


class TestTrim:
    def test_hover_limit(self, naca_spline, params):
        point = trim_solve(0.3, 0.0, 0.0, params, naca_spline)
        assert point.converged
        assert math.degrees(point.theta_eq) == pytest.approx(90.0, abs=1.0)
        assert point.collective_eq == pytest.approx(params.weight, rel=0.01)

    def test_matches_analytic_inversion(self, naca_spline, params):
        point = trim_solve(20.0, 0.0, 0.0, params, naca_spline)
        assert point.converged
        roots = find_equilibria(point.a_v_true, naca_spline)
        best = min(roots, key=lambda r: abs(r - point.alpha_e_eq))
        assert math.degrees(abs(best - point.alpha_e_eq)) < 0.2

    def test_wake_lowers_effective_aoa(self, naca_spline, params):
        still = trim_solve_settled(5.0, 0.0, 0.0, params, naca_spline)
        washed = trim_solve_settled(5.0, 0.0, 1.0, params, naca_spline)
        assert washed.alpha_e_eq < still.alpha_e_eq

    def test_residual_reported(self, naca_spline, params):
        point = trim_solve(12.0, 0.0, 0.0, params, naca_spline)
        assert point.converged and point.residual < 1e-6

    def test_rejects_nonpositive_speed(self, naca_spline, params):
        with pytest.raises(ValueError):
            trim_solve(0.0, 0.0, 0.0, params, naca_spline)
