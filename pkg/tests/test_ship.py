"""Hull and propulsion model tests."""


import numpy as np
import pytest

from surgesim import (AlphaCoeffs, AmbiguousRootWarning, ConfigError,
                      NoRootError, OperatingPoint, ShipParams, compute_alphas,
                      drift_force, load_ship_params, solve_equilibrium,
                      solve_revs)
from surgesim.ship import resistance, thrust


def test_resistance_polynomial_value(oracle_ship):
    # 0.5*1.5 + 0.2*1.5^2 + 0.1*1.5^3 + 0.01*1.5^4 + 0.001*1.5^5
    assert resistance(oracle_ship, 1.5) == pytest.approx(1.59571875, abs=0.0)


def test_resistance_vectorized(oracle_ship):
    u = np.array([0.0, 0.5, 1.5])
    r = resistance(oracle_ship, u)
    assert r.shape == (3,)
    assert r[0] == 0.0
    assert r[2] == pytest.approx(1.59571875, abs=0.0)


def test_thrust_value(oracle_ship):
    # J = 0.8*1.0/(20*0.1) = 0.4, K_T = 0.5 - 0.12 - 0.016 = 0.364
    # T = 0.9 * 1000 * 400 * 1e-4 * 0.364
    assert thrust(oracle_ship, 1.0, 20.0) == pytest.approx(13.104000000000003,
                                                           rel=1e-15)


def test_thrust_zero_revs_raises(oracle_ship):
    with pytest.raises(ZeroDivisionError):
        thrust(oracle_ship, 1.0, 0.0)


def test_thrust_increases_with_revs(oracle_ship):
    values = [thrust(oracle_ship, 1.0, n) for n in (5.0, 10.0, 20.0, 40.0)]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_froude_round_trip(oracle_ship):
    u = oracle_ship.speed_of_froude(0.3)
    assert oracle_ship.froude(u) == pytest.approx(0.3, rel=1e-14)


def test_total_mass(oracle_ship):
    assert oracle_ship.total_mass == 55.0


def test_invalid_params_rejected():
    with pytest.raises(ConfigError):
        ShipParams(length=-1.0, mass=50.0, added_mass=5.0,
                   resistance_coeffs=(0.5, 0.2, 0.1, 0.01, 0.001),
                   thrust_deduction=0.1, wake_fraction=0.2,
                   prop_diameter=0.1, kt_coeffs=(0.5, -0.3, -0.1))
    with pytest.raises(ConfigError):
        ShipParams(length=2.0, mass=50.0, added_mass=5.0,
                   resistance_coeffs=(-0.5, -0.2, -0.1, -0.01, -0.001),
                   thrust_deduction=0.1, wake_fraction=0.2,
                   prop_diameter=0.1, kt_coeffs=(0.5, -0.3, -0.1))


def test_solve_revs_balances(oracle_ship):
    op = solve_revs(oracle_ship, 1.0)
    assert op.u_bar == 1.0
    balance = thrust(oracle_ship, 1.0, op.n_p) - resistance(oracle_ship, 1.0)
    assert abs(balance) < 1e-10
    op.validate(oracle_ship)


def test_solve_revs_needs_positive_speed(oracle_ship):
    with pytest.raises(NoRootError):
        solve_revs(oracle_ship, 0.0)


def test_operating_point_balance_check(oracle_ship):
    bad = OperatingPoint(n_p=5.0, u_bar=1.0,
                         fn_bar=oracle_ship.froude(1.0))
    with pytest.raises(ConfigError):
        bad.validate(oracle_ship)


def test_solve_equilibrium_matches_grid_scan(oracle_ship):
    op = solve_revs(oracle_ship, 1.0)
    eq = solve_equilibrium(oracle_ship, op.n_p)
    # independent route: dense grid scan for the sign change of T - R
    u = np.arange(0.0, 2.0, 1e-5)
    g = thrust(oracle_ship, u[1:], op.n_p) - resistance(oracle_ship, u[1:])
    flip = np.nonzero(np.diff(np.sign(g)))[0][0] + 1
    assert abs(eq.u_bar - u[flip + 1]) < 1e-5 + 1e-6
    assert eq.u_bar == pytest.approx(1.0, abs=1e-9)
    assert eq.n_p == op.n_p


def test_solve_equilibrium_no_crossing(oracle_ship):
    with pytest.raises(NoRootError):
        solve_equilibrium(oracle_ship, 1000.0)


def test_solve_equilibrium_reports_all_roots_returns_smallest():
    # non-monotone resistance dips below a flat thrust curve, giving three
    # crossings: 0.5 = u - 0.6 u^2 + 0.11 u^3
    p = ShipParams(length=2.0, mass=50.0, added_mass=5.0,
                   resistance_coeffs=(1.0, -0.6, 0.11, 0.0, 0.0),
                   thrust_deduction=0.0, wake_fraction=0.0,
                   prop_diameter=0.1, kt_coeffs=(0.05, 0.0, 0.0))
    with pytest.warns(AmbiguousRootWarning) as rec:
        eq = solve_equilibrium(p, 10.0)
    roots = rec[0].message.roots
    assert len(roots) == 3
    assert eq.u_bar == min(roots)
    for r in roots:
        assert thrust(p, r, 10.0) - resistance(p, r) == pytest.approx(0.0, abs=1e-9)


def test_alpha_defining_identity(oracle_ship):
    op = solve_revs(oracle_ship, 1.0)
    alpha = compute_alphas(oracle_ship, op)

    def net(u):
        return resistance(oracle_ship, u) - thrust(oracle_ship, u, op.n_p)

    for eps in (0.1, -0.1, 0.01, -0.01):
        series = sum(a * eps**i for i, a in enumerate(alpha, start=1))
        exact = net(op.u_bar + eps) - net(op.u_bar)
        assert abs(series - exact) < 1e-12


def test_alpha_quintic_term_is_r5(oracle_ship):
    op = solve_revs(oracle_ship, 1.0)
    alpha = compute_alphas(oracle_ship, op)
    assert alpha[4] == oracle_ship.resistance_coeffs[4]


def test_alpha_linear_fixture(linear_ship):
    op = OperatingPoint(n_p=1.0, u_bar=0.0, fn_bar=0.0)
    alpha = compute_alphas(linear_ship, op)
    assert tuple(alpha) == (2.0, 0.0, 0.0, 0.0, 0.0)


def test_drift_force_matches_power_sum():
    alpha = AlphaCoeffs((1.5, -0.3, 0.2, 0.05, 0.01))
    for u in (-1.2, -0.1, 0.0, 0.4, 2.0):
        direct = sum(a * u**i for i, a in enumerate(alpha, start=1))
        assert drift_force(alpha, u) == pytest.approx(direct, rel=1e-14, abs=1e-15)


def test_ship_file_round_trip(data_dir, synthetic_ship):
    assert synthetic_ship.length == 2.75
    assert synthetic_ship.resistance_coeffs == (0.2, 0.15, 0.08, 0.04, 0.025)
    assert synthetic_ship.kt_coeffs == (0.5, -0.35, -0.15)
    assert synthetic_ship.water_density == 1000.0


def test_ship_file_unknown_key(tmp_path, data_dir):
    text = (data_dir / "synthetic.ship").read_text()
    bad = tmp_path / "bad.ship"
    bad.write_text(text + "\nbollard_pull = 3.0\n")
    lineno = text.count("\n") + 2
    with pytest.raises(ConfigError, match=rf"bad\.ship:{lineno}: unknown key"):
        load_ship_params(bad)


def test_ship_file_duplicate_key(tmp_path, data_dir):
    text = (data_dir / "synthetic.ship").read_text()
    bad = tmp_path / "dup.ship"
    bad.write_text(text + "\nlength = 3.0\n")
    with pytest.raises(ConfigError, match="duplicate key 'length'"):
        load_ship_params(bad)


def test_ship_file_malformed_line(tmp_path):
    bad = tmp_path / "malformed.ship"
    bad.write_text("length\n")
    with pytest.raises(ConfigError, match=r"malformed\.ship:1: expected"):
        load_ship_params(bad)


def test_ship_file_non_numeric_value(tmp_path):
    bad = tmp_path / "nan.ship"
    bad.write_text("length = fast\n")
    with pytest.raises(ConfigError, match=r"nan\.ship:1: .*not a number"):
        load_ship_params(bad)


def test_ship_file_missing_keys(tmp_path):
    bad = tmp_path / "sparse.ship"
    bad.write_text("length = 2.0\nmass = 50.0\n")
    with pytest.raises(ConfigError, match="missing required keys"):
        load_ship_params(bad)


def test_ship_file_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_ship_params(tmp_path / "absent.ship")
