"""Tests for the counting pmf, densities, and pmf tables.

The frozen pmf constants come from extended-precision Talbot inversion
of the exact transform (psi(s)/s) lam^n / (lam + psi(s))^(n+1) in
mpmath, computed at two precisions and cross-checked before freezing;
density constants additionally agree with the convergent series for the
stable density and the first-passage scaling relation.
"""

import json
import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, stats

from fracpoisson.distributions import (
    PmfTable,
    distributed_order_survival_kochubei,
    fpp_pmf,
    fpp_pmf_mixture,
    fpp_pmf_table,
    general_pmf,
    general_pmf_table,
    inverse_stable_density,
    inverse_stable_density_quadrature,
    pmf_laplace,
    renewal_mean,
    stable_unit_density,
    waiting_survival_general,
)
from fracpoisson.errors import DomainError
from fracpoisson.special import ml_one
from fracpoisson.transforms import (
    DistributedOrder,
    Stable,
    StableMixture,
    TemperedStable,
    laplace_exponent,
)

# P(N(t) = n) for beta = 0.5, lam = 1: (t, n, probability, rel tolerance).
# Most points resolve through the power series or the numerical inversion
# fallback and hold ~1e-12 relative; rows served by the large-argument
# expansion carry its looser contract, absolute error below 1e-6 of the
# bulk mass, hence the wider budget on the (100, 30) row.
FPP_PMF_VALUES = [
    (1.0, 0, 0.42758357615580694, 1e-8),
    (1.0, 1, 0.27321201478389857, 1e-8),
    (1.0, 2, 0.15437156137190844, 1e-8),
    (1.0, 5, 0.016661869090414362, 1e-8),
    (2.0, 0, 0.3362040024463, 1e-8),
    (2.0, 3, 0.1072684407579, 1e-8),
    (2.0, 8, 4.604256278415e-03, 1e-8),
    (10.0, 0, 0.1705777183260, 1e-8),
    (10.0, 1, 0.15669386579, 1e-8),
    (10.0, 2, 0.13883852540, 1e-8),
    (10.0, 5, 8.0083953984e-02, 1e-8),
    (10.0, 15, 0.0028369142206802527, 1e-8),
    (10.0, 30, 1.0601664185282045e-06, 1e-8),
    (100.0, 0, 5.614099274382e-02, 1e-8),
    (100.0, 2, 5.478705532140e-02, 1e-8),
    (100.0, 5, 5.098356931126e-02, 1e-8),
    (100.0, 15, 3.010897127725e-02, 1e-8),
    (100.0, 30, 6.508063492159e-03, 3e-6),
    (100.0, 60, 3.266315444948e-05, 1e-8),
    (1000.0, 5, 1.765557882077e-02, 1e-8),
    (1000.0, 30, 1.397731840333e-02, 1e-8),
    (1000.0, 36, 1.263623322263e-02, 1e-8),
    (1000.0, 60, 7.128539542964e-03, 1e-8),
    (1000.0, 150, 8.482874188915e-05, 1e-8),
    (1000.0, 210, 6.848035274526e-07, 1e-8),
]

# (beta, v) -> density of D(1)
STABLE_DENSITY_VALUES = [
    (0.4, 0.5, 0.34650514905217872),
    (0.4, 1.0, 0.16409343761753074),
    (0.4, 2.0, 0.07215173347323669),
    (0.7, 0.5, 0.96511911846936176),
    (0.7, 1.0, 0.38739501014659244),
    (0.7, 2.0, 0.10768834487433713),
]

# (beta, x, t) -> density of E(t)
INVERSE_DENSITY_VALUES = [
    (0.75, 0.2, 1.0, 0.33725798848003816),
    (0.75, 1.0, 1.0, 0.60659854359027598),
    (0.75, 2.5, 1.0, 0.024491540550029374),
    (0.6, 1.0, 2.0, 0.33616350362806167),
]


class TestFppPmf:
    @pytest.mark.parametrize("t, n, expected, rel", FPP_PMF_VALUES)
    def test_frozen_values(self, t, n, expected, rel):
        assert fpp_pmf(0.5, 1.0, t, n) == pytest.approx(expected, rel=rel)

    def test_deep_tail_absolute_floor(self):
        # far past the bulk the contract is absolute accuracy ~1e-9
        assert fpp_pmf(0.5, 1.0, 10.0, 45) == pytest.approx(
            3.9208986879e-11, abs=2e-9
        )
        assert fpp_pmf(0.5, 1.0, 1000.0, 250) == pytest.approx(
            1.275466793881e-08, abs=2e-9
        )

    def test_n_zero_is_ml_survival(self):
        for beta, lam, t in [(0.5, 1.0, 1.0), (0.7, 2.0, 3.0), (0.3, 1.0, 50.0)]:
            assert fpp_pmf(beta, lam, t, 0) == pytest.approx(
                ml_one(beta, -lam * t**beta), rel=1e-12
            )

    def test_beta_one_is_poisson(self):
        lam, t = 2.0, 3.0
        for n in range(15):
            assert fpp_pmf(1.0, lam, t, n) == pytest.approx(
                stats.poisson.pmf(n, lam * t), rel=1e-12
            )

    def test_at_time_zero(self):
        assert fpp_pmf(0.5, 1.0, 0.0, 0) == 1.0
        assert fpp_pmf(0.5, 1.0, 0.0, 3) == 0.0

    def test_normalization(self):
        for beta, t in [(0.4, 0.5), (0.6, 2.0), (0.8, 10.0)]:
            total = math.fsum(fpp_pmf(beta, 1.0, t, n) for n in range(400))
            assert total == pytest.approx(1.0, abs=1e-8)

    def test_mean_identity(self):
        # E[N(t)] = lam t^beta / Gamma(1 + beta)
        beta, lam, t = 0.6, 1.0, 2.0
        mean = math.fsum(n * fpp_pmf(beta, lam, t, n) for n in range(400))
        assert mean == pytest.approx(
            lam * t**beta / math.gamma(1.0 + beta), rel=1e-8
        )

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            fpp_pmf(0.5, 1.0, -1.0, 0)
        with pytest.raises(DomainError):
            fpp_pmf(0.5, 1.0, 1.0, -1)
        with pytest.raises(DomainError):
            fpp_pmf(0.5, 0.0, 1.0, 0)
        with pytest.raises(DomainError):
            fpp_pmf(1.5, 1.0, 1.0, 0)

    @given(
        beta=st.floats(0.2, 0.95),
        lam=st.floats(0.2, 3.0),
        t=st.floats(0.05, 50.0),
        n=st.integers(0, 80),
    )
    @settings(max_examples=80, deadline=None)
    def test_total_function_in_unit_interval(self, beta, lam, t, n):
        # every branch (series, far tail, inversion) returns a probability
        val = fpp_pmf(beta, lam, t, n)
        assert 0.0 <= val <= 1.0


class TestPmfLaplace:
    def test_closed_form(self):
        spec = Stable(0.5)
        lam, n, s = 1.0, 2, 1.5
        psi = s**0.5
        expected = (psi / s) * lam**n / (lam + psi) ** (n + 1)
        assert pmf_laplace(spec, lam, n, s) == pytest.approx(expected, rel=1e-12)

    def test_n_sum_telescopes(self):
        # sum_n LT(pmf_n)(s) = 1/s exactly
        spec = TemperedStable(0.5, 1.0)
        s, lam = 0.8, 1.0
        total = math.fsum(pmf_laplace(spec, lam, n, s) for n in range(2000))
        assert total == pytest.approx(1.0 / s, rel=1e-6)


class TestGeneralPmf:
    @pytest.mark.parametrize(
        "n, expected",
        [(0, 0.22451918779953368), (1, 0.2426762104230643), (3, 0.14256782115056521)],
    )
    def test_tempered_frozen_values(self, n, expected):
        spec = TemperedStable(0.5, 0.5)
        assert general_pmf(spec, 1.0, 1.0, n) == pytest.approx(expected, rel=1e-7)

    def test_stable_agrees_with_direct(self):
        spec = Stable(0.6)
        for n in (0, 1, 4):
            assert general_pmf(spec, 1.0, 1.5, n) == pytest.approx(
                fpp_pmf(0.6, 1.0, 1.5, n), abs=1e-8
            )

    @pytest.mark.parametrize(
        "n, expected",
        [(0, 0.41945902726280818), (1, 0.27360551998159144)],
    )
    def test_mixture_frozen_values(self, n, expected):
        spec = StableMixture((0.5, 0.5), (0.3, 0.7))
        assert general_pmf(spec, 1.0, 1.0, n) == pytest.approx(expected, abs=1e-9)


class TestWaitingSurvivalGeneral:
    def test_stable_is_ml(self):
        for beta, t in [(0.5, 1.0), (0.7, 2.0)]:
            assert waiting_survival_general(Stable(beta), 1.0, t) == pytest.approx(
                ml_one(beta, -t**beta), rel=1e-9
            )

    @pytest.mark.parametrize(
        "t, expected",
        [(0.5, 0.37616632485277682), (2.0, 0.096199796032459485)],
    )
    def test_tempered_frozen_values(self, t, expected):
        spec = TemperedStable(0.5, 0.5)
        assert waiting_survival_general(spec, 1.0, t) == pytest.approx(
            expected, rel=1e-8
        )

    def test_tempered_second_parameter_set(self):
        spec = TemperedStable(0.7, 1.0)
        assert waiting_survival_general(spec, 2.0, 1.0) == pytest.approx(
            0.083146722632551019, rel=1e-8
        )

    @pytest.mark.parametrize(
        "t, expected",
        [(0.5, 0.50689475322824089), (2.0, 0.33557712239695253)],
    )
    def test_distributed_order_frozen_values(self, t, expected):
        spec = DistributedOrder((1.0,))
        assert waiting_survival_general(spec, 1.0, t) == pytest.approx(
            expected, rel=1e-7
        )

    def test_mixture_frozen_value(self):
        spec = StableMixture((0.5, 0.5), (0.3, 0.7))
        assert waiting_survival_general(spec, 1.0, 1.0) == pytest.approx(
            0.41945902726280818, rel=1e-8
        )


class TestKochubeiSurvival:
    @pytest.mark.parametrize(
        "t, expected",
        [(0.5, 0.50689475322824089), (2.0, 0.33557712239695253)],
    )
    def test_uniform_weight_frozen_values(self, t, expected):
        got = distributed_order_survival_kochubei(DistributedOrder((1.0,)), 1.0, t)
        assert got == pytest.approx(expected, abs=5e-5)

    def test_accepts_polynomial_coefficients(self):
        a = distributed_order_survival_kochubei((1.0,), 1.0, 1.0)
        b = distributed_order_survival_kochubei(DistributedOrder((1.0,)), 1.0, 1.0)
        assert a == pytest.approx(b, rel=1e-12)

    def test_rejects_bad_weight(self):
        with pytest.raises(DomainError):
            distributed_order_survival_kochubei(3.5, 1.0, 1.0)


class TestStableUnitDensity:
    @pytest.mark.parametrize("beta, v, expected", STABLE_DENSITY_VALUES)
    def test_frozen_values(self, beta, v, expected):
        assert stable_unit_density(beta, v) == pytest.approx(expected, rel=1e-8)

    def test_half_order_closed_form(self):
        for v in (0.3, 1.0, 3.0):
            expected = math.exp(-1.0 / (4.0 * v)) / (
                2.0 * math.sqrt(math.pi) * v**1.5
            )
            assert stable_unit_density(0.5, v) == pytest.approx(expected, rel=1e-14)

    def test_normalizes(self):
        with warnings.catch_warnings():
            # the outer integral probes extreme v where the inner adaptive
            # quadrature reports its requested 1e-14 as below roundoff; the
            # returned best values are still far inside this test's budget
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            mass, err = integrate.quad(
                lambda v: stable_unit_density(0.7, v), 0.0, np.inf, limit=200
            )
        assert mass == pytest.approx(1.0, abs=1e-7)

    def test_zero_below_origin(self):
        assert stable_unit_density(0.6, 0.0) == 0.0
        assert stable_unit_density(0.6, -1.0) == 0.0

    def test_bad_beta(self):
        with pytest.raises(DomainError):
            stable_unit_density(1.0, 1.0)


class TestInverseStableDensity:
    @pytest.mark.parametrize("beta, x, t, expected", INVERSE_DENSITY_VALUES)
    def test_frozen_values(self, beta, x, t, expected):
        assert inverse_stable_density(beta, x, t) == pytest.approx(expected, rel=1e-7)

    def test_half_order_closed_form(self):
        for x in (0.25, 1.0, 2.0):
            for t in (0.5, 2.0):
                expected = math.exp(-x * x / (4.0 * t)) / math.sqrt(math.pi * t)
                assert inverse_stable_density(0.5, x, t) == pytest.approx(
                    expected, rel=1e-8
                )

    def test_quadrature_route_agrees(self):
        # independent first-passage representation
        for beta, x, t, expected in INVERSE_DENSITY_VALUES:
            got = inverse_stable_density_quadrature(beta, x, t)
            assert got == pytest.approx(expected, rel=1e-6)

    def test_normalizes_in_x(self):
        beta, t = 0.75, 1.0
        mass, err = integrate.quad(
            lambda x: inverse_stable_density(beta, x, t), 0.0, np.inf, limit=200
        )
        assert mass == pytest.approx(1.0, abs=1e-6)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            inverse_stable_density(0.5, 0.0, 1.0)
        with pytest.raises(DomainError):
            inverse_stable_density(0.5, 1.0, 0.0)


class TestFppPmfMixture:
    def test_matches_series_route(self):
        for n in (0, 1, 3):
            assert fpp_pmf_mixture(0.5, 1.0, 1.0, n) == pytest.approx(
                fpp_pmf(0.5, 1.0, 1.0, n), abs=1e-7
            )

    def test_beta_one_poisson(self):
        assert fpp_pmf_mixture(1.0, 2.0, 1.0, 3) == pytest.approx(
            stats.poisson.pmf(3, 2.0), rel=1e-12
        )


class TestRenewalMean:
    def test_stable_closed_form(self):
        for beta, t in [(0.5, 1.0), (0.7, 3.0)]:
            expected = t**beta / math.gamma(1.0 + beta)
            assert renewal_mean(Stable(beta), 1.0, t) == pytest.approx(
                expected, rel=1e-9
            )

    def test_tempered_frozen_value(self):
        assert renewal_mean(TemperedStable(0.5, 0.5), 1.0, 1.0) == pytest.approx(
            2.0147738001686314, rel=1e-8
        )

    def test_scales_linearly_in_rate(self):
        spec = Stable(0.6)
        assert renewal_mean(spec, 3.0, 1.0) == pytest.approx(
            3.0 * renewal_mean(spec, 1.0, 1.0), rel=1e-9
        )


class TestPmfTable:
    def test_rows_plus_bound_account_for_unit_mass(self):
        table = fpp_pmf_table(0.5, 1.0, 1.0)
        total = math.fsum(p for _, p in table.rows)
        assert total + table.tail_mass_bound == pytest.approx(1.0, abs=1e-8)

    def test_chernoff_bound_formula(self):
        # bound = e^t (lam/(lam + psi(1)))^(N*+1) by construction
        lam, t = 1.0, 1.0
        table = fpp_pmf_table(0.5, lam, t)
        n_star = len(table.rows) - 1
        expected = math.exp(t) * (lam / (lam + 1.0)) ** (n_star + 1)
        assert table.tail_mass_bound == pytest.approx(expected, rel=1e-12)
        assert table.tail_mass_bound < 1e-9

    def test_validation_rejects_gaps_and_negatives(self):
        with pytest.raises(DomainError):
            PmfTable(1.0, {}, ((0, 0.5), (2, 0.5)), 0.0)
        with pytest.raises(DomainError):
            PmfTable(1.0, {}, ((0, -0.1), (1, 1.1)), 0.0)
        with pytest.raises(DomainError):
            PmfTable(1.0, {}, ((0, 0.4), (1, 0.4)), 0.0)  # mass unaccounted

    def test_csv_and_json_carry_identical_numbers(self):
        table = fpp_pmf_table(0.5, 1.0, 1.0)
        csv_text = table.to_csv()
        lines = csv_text.strip().splitlines()
        assert lines[1] == "n,prob"
        csv_probs = [float(ln.split(",")[1]) for ln in lines[2:]]
        json_probs = [p for _, p in table.to_json()["rows"]]
        assert csv_probs == json_probs  # repr round trip preserves every bit

    def test_csv_header_metadata(self):
        table = fpp_pmf_table(0.5, 1.0, 2.0)
        header = table.to_csv().splitlines()[0]
        assert header.startswith("# t=2.0")
        assert "tail_mass_bound=" in header
        assert '"beta": 0.5' in header or "beta=0.5" in header

    def test_general_table_stable_delegates(self):
        direct = fpp_pmf_table(0.5, 1.0, 1.0)
        via_spec = general_pmf_table(Stable(0.5), 1.0, 1.0)
        assert [p for _, p in via_spec.rows] == [p for _, p in direct.rows]
        assert via_spec.params["spec"] == {"variant": "Stable", "beta": 0.5}

    def test_general_table_tempered(self):
        spec = TemperedStable(0.5, 0.5)
        table = general_pmf_table(spec, 1.0, 1.0)
        total = math.fsum(p for _, p in table.rows)
        assert total + table.tail_mass_bound == pytest.approx(1.0, abs=1e-7)
        assert table.rows[0][1] == pytest.approx(0.22451918779953368, rel=1e-7)
