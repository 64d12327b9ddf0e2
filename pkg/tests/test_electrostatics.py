import math

import numpy as np
import pytest

from casfric import electrostatics as el
from casfric.dielectric import Plasma, eps_retarded, surface_plasmon_frequency
from casfric.errors import DomainError
from casfric.geometry import coulomb_kernel_hat


def test_vacuum_limit_exact():
    sol = el.solve_layers(el.LayeredConfig(1.0, 1.0, 1.0, 1.0))
    assert sol.d == 1.0
    assert sol.b == 0.0
    assert sol.c == 1.0
    assert sol.c1 == 0.0


def test_vacuum_reproduces_free_kernel():
    cfg = el.LayeredConfig(1.0, 1.0, 2.0, 1.3, z0_nm=-0.7)
    sol = el.solve_layers(cfg)
    for z in (-2.0, -0.2, 0.5, 1.5, 2.5, 4.0):
        assert el.potential_profile(cfg, sol, z) == pytest.approx(
            coulomb_kernel_hat(z - cfg.z0_nm, cfg.q_per_nm), rel=1e-12)


def test_conductor_limit_excludes_field():
    sol = el.solve_layers(el.LayeredConfig(1.0, 1e12, 1.0, 1.0))
    assert abs(sol.d) < 1e-11


def test_closed_form_matches_linear_solve():
    cfg = el.LayeredConfig(2.0, 3.0, 1.0, 1.0)
    closed = el.solve_layers(cfg)
    linear = el.solve_layers_linear(cfg)
    for attr in ("b", "c", "c1", "d"):
        assert getattr(closed, attr) == pytest.approx(getattr(linear, attr),
                                                      rel=1e-12, abs=1e-15)


def test_closed_vs_linear_random_configs():
    rng = np.random.default_rng(31)
    for _ in range(200):
        cfg = el.LayeredConfig(rng.uniform(1.0, 100.0),
                               rng.uniform(1.0, 100.0),
                               1.0, rng.uniform(0.01, 10.0),
                               z0_nm=-rng.uniform(0.1, 3.0))
        closed = el.solve_layers(cfg)
        linear = el.solve_layers_linear(cfg)
        for attr in ("b", "c", "c1", "d"):
            assert getattr(closed, attr) == pytest.approx(
                getattr(linear, attr), rel=1e-10, abs=1e-14)


def test_boundary_residuals_random():
    rng = np.random.default_rng(77)
    worst = 0.0
    for _ in range(1000):
        cfg = el.LayeredConfig(rng.uniform(1.0, 100.0),
                               rng.uniform(1.0, 100.0),
                               1.0, rng.uniform(0.01, 10.0))
        sol = el.solve_layers(cfg)
        worst = max(worst, float(el.boundary_residuals(cfg, sol).max()))
    assert worst < 1e-12


def test_potential_continuity_at_interfaces():
    cfg = el.LayeredConfig(4.0, 7.0, 1.5, 0.9, z0_nm=-0.4)
    sol = el.solve_layers(cfg)
    eps = 1e-11
    for z in (cfg.z0_nm, 0.0, cfg.d_nm):
        lo = el.potential_profile(cfg, sol, z - eps)
        hi = el.potential_profile(cfg, sol, z + eps)
        assert hi == pytest.approx(lo, rel=1e-9)


def test_potential_decays_past_second_plane():
    cfg = el.LayeredConfig(4.0, 7.0, 1.5, 0.9)
    sol = el.solve_layers(cfg)
    v1 = el.potential_profile(cfg, sol, 2.0)
    v2 = el.potential_profile(cfg, sol, 3.0)
    assert v2 == pytest.approx(v1 * math.exp(-cfg.q_per_nm), rel=1e-12)


def test_denominator_check_hand_value():
    # eps = 3 gives A = 1/2; qd = 1/2 -> 1 - e^{-1}/4
    from_d, direct = el.denominator_check(el.LayeredConfig(3.0, 3.0, 0.5, 1.0))
    expected = 1.0 - 0.25 * math.exp(-1.0)
    assert from_d == pytest.approx(expected, rel=1e-13)
    assert direct == pytest.approx(expected, rel=1e-15)
    assert from_d == pytest.approx(direct, rel=1e-12)


def test_denominator_trivial_cases():
    from_d, direct = el.denominator_check(el.LayeredConfig(1.0, 1.0, 1.0, 1.0))
    assert from_d == direct == 1.0
    from_d, direct = el.denominator_check(el.LayeredConfig(50.0, 2.0, 30.0, 1.0))
    assert direct == pytest.approx(1.0, abs=1e-15)


def test_denominator_reciprocity():
    a = el.denominator_check(el.LayeredConfig(5.0, 9.0, 1.2, 0.8))[0]
    b = el.denominator_check(el.LayeredConfig(9.0, 5.0, 1.2, 0.8))[0]
    assert a == pytest.approx(b, rel=1e-14)


def test_surface_mode_pole_divergence():
    # at the surface-mode frequency eps -> -1: for decoupled planes the
    # reflected coefficients blow up, while a finite gap keeps the
    # transmission denominator finite
    plasma = Plasma(9.0)
    sp = surface_plasmon_frequency(plasma)
    assert abs(eps_retarded(plasma, sp, 1e-10) + 1.0) < 1e-7

    mags = []
    for delta in (1e-2, 1e-4, 1e-6):
        cfg = el.LayeredConfig(-1.0 - delta, 2.0, 1.0, 20.0)
        sol = el.solve_layers(cfg)
        mags.append(abs(sol.b))
    assert mags[2] > mags[1] > mags[0] > 1.0

    # finite-gap denominator stays finite at the same eps
    cfg = el.LayeredConfig(-1.0 - 1e-6, 2.0, 0.05, 1.0)
    from_d, direct = el.denominator_check(cfg)
    assert math.isfinite(from_d) and abs(direct) > 1e-3


def test_config_validation():
    with pytest.raises(DomainError):
        el.LayeredConfig(2.0, 2.0, -1.0, 1.0)
    with pytest.raises(DomainError):
        el.LayeredConfig(2.0, 2.0, 1.0, 0.0)
    with pytest.raises(DomainError):
        el.LayeredConfig(2.0, 2.0, 1.0, 1.0, z0_nm=0.5)
    with pytest.raises(DomainError):
        el.LayeredConfig(-1.0, 2.0, 1.0, 1.0)
