import math

import numpy as np
import pytest

from casfric.errors import DomainError
from casfric.quadrature import (IntegralResult, QuadratureSpec, default_spec,
                                integrate_finite, integrate_semi_infinite,
                                matsubara_sum)

TIGHT = QuadratureSpec(abs_tol=1e-12, rel_tol=1e-10)


class TestFinite:
    def test_polynomial_exact(self):
        res = integrate_finite(lambda x: x, 0.0, 1.0)
        assert res.converged
        assert res.value == pytest.approx(0.5, abs=1e-14)

    def test_sine(self):
        res = integrate_finite(np.sin, 0.0, math.pi)
        assert res.converged
        assert res.value == pytest.approx(2.0, abs=1e-12)

    def test_inverse_sqrt_endpoint_singularity(self):
        # oracle: antiderivative 2*sqrt(x) -> exactly 2 on [0, 1]
        res = integrate_finite(lambda x: 1.0 / np.sqrt(x), 0.0, 1.0,
                               QuadratureSpec(abs_tol=1e-11, rel_tol=1e-9))
        assert res.converged
        assert abs(res.value - 2.0) < 1e-8

    def test_error_estimate_is_honest(self):
        res = integrate_finite(lambda x: np.exp(-x * x), -3.0, 3.0, TIGHT)
        exact = math.sqrt(math.pi) * math.erf(3.0)
        assert abs(res.value - exact) <= max(res.error_estimate, 1e-13)

    def test_flagged_nonconvergence(self):
        # 1/x is not integrable across 0; must flag, not lie
        def f(x):
            with np.errstate(divide="ignore"):
                return 1.0 / np.abs(x)

        res = integrate_finite(f, -1.0, 1.0,
                               QuadratureSpec(abs_tol=1e-10, rel_tol=1e-10,
                                              max_subdivisions=200))
        assert not res.converged

    def test_bad_interval(self):
        with pytest.raises(DomainError):
            integrate_finite(np.sin, 1.0, 0.0)

    def test_split_points_help_sharp_peak(self):
        width = 1e-7
        center = 0.3333

        def peak(x):
            return width / ((x - center) ** 2 + width ** 2) / math.pi

        res = integrate_finite(peak, 0.0, 1.0, TIGHT, split_points=[center])
        exact = (math.atan((1 - center) / width) + math.atan(center / width)) / math.pi
        assert res.converged
        assert res.value == pytest.approx(exact, rel=1e-9)

    def test_determinism(self):
        def f(x):
            return np.sin(3.0 * x) / (1.0 + x * x)

        a = integrate_finite(f, 0.0, 7.0, TIGHT)
        b = integrate_finite(f, 0.0, 7.0, TIGHT)
        assert a.value == b.value
        assert a.error_estimate == b.error_estimate
        assert a.evaluations == b.evaluations

    def test_refinement_monotone_error(self):
        spec = lambda n: QuadratureSpec(abs_tol=1e-16, rel_tol=1e-16,
                                        max_subdivisions=n)
        errs = [integrate_finite(lambda x: np.exp(np.sin(5 * x)), 0.0, 4.0,
                                 spec(n)).error_estimate
                for n in (1, 2, 4, 8, 16, 32)]
        assert all(e2 <= e1 * (1 + 1e-12) for e1, e2 in zip(errs, errs[1:]))


class TestSemiInfinite:
    def test_cubic_exponential(self):
        res = integrate_semi_infinite(lambda u: u ** 3 * np.exp(-2.0 * u), 0.5)
        assert res.converged
        assert res.value == pytest.approx(3.0 / 8.0, abs=1e-10)

    def test_thermal_kernel(self):
        def f(x):
            x = np.asarray(x, dtype=float)
            ex = np.exp(-x)
            return x * x * ex / (1.0 - ex) ** 2

        res = integrate_semi_infinite(f, 1.0, TIGHT)
        assert res.converged
        assert abs(res.value - math.pi ** 2 / 3.0) < 1e-8

    def test_unit_exponential(self):
        res = integrate_semi_infinite(lambda x: np.exp(-x), 1.0)
        assert res.converged
        assert res.value == pytest.approx(1.0, abs=1e-10)

    def test_power_law_tail(self):
        # segments shrink geometrically even for 1/x^4 decay
        res = integrate_semi_infinite(lambda x: 1.0 / (1.0 + x) ** 4, 1.0, TIGHT)
        assert res.converged
        assert res.value == pytest.approx(1.0 / 3.0, rel=1e-9)

    def test_nondecaying_flagged(self):
        res = integrate_semi_infinite(lambda x: 1.0 / (1.0 + x), 1.0,
                                      QuadratureSpec(abs_tol=1e-8, rel_tol=1e-8,
                                                     max_subdivisions=2000))
        assert not res.converged


class TestMatsubaraSum:
    def test_single_term(self):
        res = matsubara_sum(lambda n: 2.0 if n == 0 else 0.0, beta=2.0)
        assert res.converged
        assert res.value == pytest.approx(1.0, abs=1e-15)

    def test_lorentzian_series(self):
        # sum over all n of 1/(1+n^2) = pi*coth(pi); brute-force partial
        # sums to 1e6 agree with the closed form to 1e-6, the accelerated
        # engine must do at least as well
        res = matsubara_sum(lambda n: 1.0 / (1.0 + n * n), beta=1.0,
                            spec=QuadratureSpec(abs_tol=1e-10, rel_tol=1e-9))
        exact = math.pi / math.tanh(math.pi)
        assert res.converged
        assert res.value == pytest.approx(exact, abs=1e-7)

    def test_against_bruteforce_oracle(self):
        beta = 0.7

        def g(n):
            return 1.0 / (1.0 + 0.3 * n * n)

        brute = (g(0) + sum(g(n) + g(-n) for n in range(1, 2_000_000))) / beta
        res = matsubara_sum(g, beta)
        # brute force truncates at 2e6 with a ~1/N tail of its own
        assert res.value == pytest.approx(brute, rel=1e-5)

    def test_divergent_flagged(self):
        res = matsubara_sum(lambda n: 1.0 / (1.0 + abs(n)), beta=1.0)
        assert not res.converged

    def test_exponential_terms(self):
        res = matsubara_sum(lambda n: math.exp(-abs(n)), beta=1.0)
        exact = 1.0 + 2.0 / (math.e - 1.0)
        assert res.converged
        assert res.value == pytest.approx(exact, rel=1e-9)


def test_default_spec_env_override(monkeypatch):
    monkeypatch.setenv("CASFRIC_QUAD_TOL", "1e-6")
    spec = default_spec()
    assert spec.rel_tol == 1e-6
    assert spec.abs_tol == 1e-8
    monkeypatch.delenv("CASFRIC_QUAD_TOL")
    assert default_spec().rel_tol == 1e-8


def test_require_converged_raises():
    from casfric.errors import NonConvergenceError

    bad = IntegralResult(1.0, 1.0, 15, converged=False)
    with pytest.raises(NonConvergenceError):
        bad.require_converged()
