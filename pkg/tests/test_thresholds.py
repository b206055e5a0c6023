import io

import numpy as np
import pytest

from randpoly import thresholds as th


class TestExponent:
    def test_negative_in_the_abstract_regime(self):
        assert th.neighborliness_exponent(1.25, 0.05) < 0

    def test_small_beta_limit_is_negative(self):
        # c -> alpha*(H(1/alpha) - 1) < 0 as beta -> 0+
        for alpha in (1.2, 1.5, 1.8):
            assert th.neighborliness_exponent(alpha, 1e-9) < 0

    def test_product_form_sign_agreement_on_grid(self):
        for alpha in np.linspace(1.05, 1.95, 20):
            betas = np.linspace(0.01, min(0.99, alpha - 0.01), 20)
            for beta in betas:
                c = th.neighborliness_exponent(alpha, beta)
                if abs(c) < 1e-12:
                    continue
                assert (c < 0) == th.exponent_product_form_holds(alpha, beta)

    def test_domain_enforced(self):
        with pytest.raises(ValueError):
            th.neighborliness_exponent(0.9, 0.1)
        with pytest.raises(ValueError):
            th.neighborliness_exponent(1.5, 0.0)
        with pytest.raises(ValueError):
            th.neighborliness_exponent(1.5, 1.2)


class TestRhoNPrime:
    def test_abstract_benchmark(self):
        # n ~ 5d/4 supports k <= d/20
        assert th.rho_N_prime(1.25).beta >= 0.05

    def test_curve_vanishes_toward_two(self):
        assert th.rho_N_prime(1.99).beta < 0.01

    def test_residual_contract(self):
        for alpha in (1.1, 1.3, 1.6, 1.9):
            p = th.rho_N_prime(alpha)
            assert abs(p.residual) <= 1e-12
            assert abs(th.neighborliness_exponent(alpha, p.beta)) <= 1e-12

    def test_sign_structure_at_bracket(self):
        p = th.rho_N_prime(1.4)
        below = [v for b, v in p.scan if b < p.beta]
        assert below and below[-1] < 0

    def test_domain(self):
        with pytest.raises(ValueError):
            th.rho_N_prime(1.0)
        with pytest.raises(ValueError):
            th.rho_N_prime(2.0)


class TestRhoDPrime:
    @pytest.mark.parametrize("alpha,expected", [(1.25, 0.75), (1.5, 0.5), (1.999, 0.001)])
    def test_line(self, alpha, expected):
        assert th.rho_D_prime(alpha).beta == pytest.approx(expected)


class TestDeltaParameterization:
    def test_near_half_is_near_zero(self):
        assert th.rho_delta(0.500001, "D").beta < 1e-5

    def test_density_value(self):
        assert th.rho_delta(0.8, "D").beta == pytest.approx(0.75)

    def test_definitional_consistency(self):
        assert th.rho_delta(0.8, "N").beta == th.rho_N_prime(1.25).beta

    def test_domain(self):
        with pytest.raises(ValueError):
            th.rho_delta(0.5)
        with pytest.raises(ValueError):
            th.rho_delta(1.0)
        with pytest.raises(ValueError):
            th.rho_delta(0.8, "X")


class TestCurveTable:
    def test_ordering_and_row_count(self):
        pairs = th.threshold_curve(1.05, 1.95, 19)
        assert len(pairs) == 19
        for pn, pd in pairs:
            assert pn.beta < pd.beta
            assert abs(pn.residual) <= 1e-12

    def test_both_curves_vanish_toward_two(self):
        pairs = th.threshold_curve(1.9, 1.99, 5)
        pn, pd = pairs[-1]
        assert pn.beta < 0.02 and pd.beta < 0.02

    def test_csv_shape(self):
        pairs = th.threshold_curve(1.1, 1.9, 9)
        buf = io.StringIO()
        th.write_threshold_csv(pairs, buf, include_delta=True)
        lines = buf.getvalue().strip().splitlines()
        assert lines[0] == "alpha,rho_N_prime,rho_D_prime,residual,delta,rho_N,rho_D"
        assert len(lines) == 10

    def test_bad_grid_rejected(self):
        with pytest.raises(ValueError):
            th.threshold_curve(1.5, 1.2, 5)
        with pytest.raises(ValueError):
            th.threshold_curve(1.1, 1.9, 1)
