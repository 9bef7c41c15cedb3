"""Tests for the variate samplers.

Law-level checks compare empirical Laplace transforms against the
closed-form targets at fixed seeds with 4-sigma budgets; construction
identities (self-similar scaling, inverse-marginal transform) are
checked exactly by replaying the same counter-based stream.
"""

import math

import numpy as np
import pytest

from fracpoisson.errors import DomainError, UnsupportedSamplingError
from fracpoisson.samplers import (
    RngStream,
    sample_brownian_running_max,
    sample_inverse_stable_marginal,
    sample_ml_waiting,
    sample_stable_increment,
    sample_stable_unit,
    sample_subordinator_at,
    sample_tempered_ml_waiting,
    sample_tempered_stable_increment,
)
from fracpoisson.transforms import (
    DistributedOrder,
    Stable,
    StableMixture,
    TemperedStable,
)
from fracpoisson.validation import empirical_laplace, ks_two_sample

SEED = 20260825


def assert_laplace_matches(draws, s_grid, target_fn, sigmas=4.0):
    for s in s_grid:
        est, se = empirical_laplace(draws, s)
        target = target_fn(s)
        assert abs(est - target) <= sigmas * se, (
            f"s={s}: est={est:.6f} target={target:.6f} se={se:.2e}"
        )


class TestRngStream:
    def test_reproducible(self):
        a = sample_stable_unit(0.5, RngStream(SEED, 3), size=100)
        b = sample_stable_unit(0.5, RngStream(SEED, 3), size=100)
        np.testing.assert_array_equal(a, b)

    def test_streams_differ(self):
        a = sample_stable_unit(0.5, RngStream(SEED, 0), size=100)
        b = sample_stable_unit(0.5, RngStream(SEED, 1), size=100)
        assert np.all(a != b)

    def test_spawn(self):
        base = RngStream(SEED, 0)
        child = base.spawn(7)
        assert child.seed == SEED and child.stream_id == 7
        np.testing.assert_array_equal(
            child.generator.random(5), RngStream(SEED, 7).generator.random(5)
        )

    def test_rejects_out_of_range_keys(self):
        with pytest.raises(DomainError):
            RngStream(-1)
        with pytest.raises(DomainError):
            RngStream(2**64)
        with pytest.raises(DomainError):
            RngStream(1, -2)

    def test_plain_generator_accepted(self):
        gen = np.random.default_rng(0)
        val = sample_stable_unit(0.5, gen)
        assert isinstance(val, float) and val > 0.0

    def test_bad_rng_rejected(self):
        with pytest.raises(DomainError):
            sample_stable_unit(0.5, 12345)

    def test_size_semantics(self):
        one = sample_stable_unit(0.5, RngStream(SEED))
        assert isinstance(one, float)
        arr = sample_stable_unit(0.5, RngStream(SEED), size=4)
        assert arr.shape == (4,)
        empty = sample_stable_unit(0.5, RngStream(SEED), size=0)
        assert empty.shape == (0,)
        with pytest.raises(DomainError):
            sample_stable_unit(0.5, RngStream(SEED), size=-1)


class TestStableUnit:
    @pytest.mark.parametrize("beta", [0.4, 0.8])
    def test_laplace_transform(self, beta):
        draws = sample_stable_unit(beta, RngStream(SEED, 10), size=200_000)
        assert_laplace_matches(draws, (0.5, 1.0, 2.0), lambda s: math.exp(-(s**beta)))

    def test_half_order_exact_law(self):
        # D(1) at beta = 1/2 equals 1/(2 Z^2) in law for standard normal Z
        draws = sample_stable_unit(0.5, RngStream(SEED, 11), size=50_000)
        z = np.random.default_rng(SEED).standard_normal(50_000)
        reference = 1.0 / (2.0 * z * z)
        res = ks_two_sample(draws, reference)
        assert res.p_value > 0.01

    def test_positive(self):
        draws = sample_stable_unit(0.3, RngStream(SEED, 12), size=10_000)
        assert np.all(draws > 0.0)

    @pytest.mark.parametrize("beta", [0.0, 1.0, 1.5])
    def test_bad_beta(self, beta):
        with pytest.raises(DomainError):
            sample_stable_unit(beta, RngStream(SEED))


class TestStableIncrement:
    def test_self_similar_scaling_exact(self):
        # same stream: D(dt) must be exactly dt**(1/beta) * D(1)
        beta, dt = 0.6, 0.25
        inc = sample_stable_increment(beta, dt, RngStream(SEED, 13), size=1000)
        unit = sample_stable_unit(beta, RngStream(SEED, 13), size=1000)
        np.testing.assert_allclose(inc, dt ** (1.0 / beta) * unit, rtol=1e-15)

    def test_laplace_transform(self):
        beta, dt = 0.5, 2.0
        draws = sample_stable_increment(beta, dt, RngStream(SEED, 14), size=200_000)
        assert_laplace_matches(
            draws, (0.25, 1.0), lambda s: math.exp(-dt * s**beta)
        )

    def test_bad_dt(self):
        with pytest.raises(DomainError):
            sample_stable_increment(0.5, 0.0, RngStream(SEED))


class TestMlWaiting:
    def test_laplace_transform(self):
        beta, lam = 0.5, 1.0
        draws = sample_ml_waiting(beta, lam, RngStream(SEED, 15), size=200_000)
        assert_laplace_matches(
            draws, (0.5, 1.0, 2.0), lambda s: lam / (lam + s**beta)
        )

    def test_survival_at_golden_point(self):
        # P(J > 1) = E_{1/2}(-1) = 0.4275835761558070 at lam = 1
        n = 200_000
        draws = sample_ml_waiting(0.5, 1.0, RngStream(SEED, 16), size=n)
        p_emp = float(np.mean(draws > 1.0))
        target = 0.4275835761558070
        se = math.sqrt(target * (1.0 - target) / n)
        assert abs(p_emp - target) <= 4.0 * se

    def test_beta_one_is_exponential(self):
        lam = 2.0
        draws = sample_ml_waiting(1.0, lam, RngStream(SEED, 17), size=50_000)
        reference = np.random.default_rng(SEED).exponential(1.0 / lam, 50_000)
        assert ks_two_sample(draws, reference).p_value > 0.01

    def test_heavy_tail_moment_divergence_proxy(self):
        # beta < 1 waiting times have infinite mean: the sample mean grows
        draws = sample_ml_waiting(0.5, 1.0, RngStream(SEED, 18), size=100_000)
        small = float(np.mean(draws[:1000]))
        big = float(np.mean(draws))
        assert big > small  # heavier and heavier excursions keep arriving

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            sample_ml_waiting(0.0, 1.0, RngStream(SEED))
        with pytest.raises(DomainError):
            sample_ml_waiting(0.5, 0.0, RngStream(SEED))


class TestTemperedSamplers:
    def test_increment_laplace_single_chunk(self):
        beta, a, dt = 0.5, 1.0, 0.5
        draws = sample_tempered_stable_increment(
            beta, a, dt, RngStream(SEED, 19), size=100_000
        )
        assert_laplace_matches(
            draws,
            (0.5, 1.0, 2.0),
            lambda s: math.exp(-dt * ((s + a) ** beta - a**beta)),
        )

    def test_increment_laplace_multi_chunk(self):
        # dt above a**-beta exercises the chunked path
        beta, a, dt = 0.5, 1.0, 3.0
        draws = sample_tempered_stable_increment(
            beta, a, dt, RngStream(SEED, 20), size=100_000
        )
        assert_laplace_matches(
            draws,
            (0.5, 1.0),
            lambda s: math.exp(-dt * ((s + a) ** beta - a**beta)),
        )

    def test_waiting_laplace(self):
        beta, a, lam = 0.5, 1.0, 2.0
        draws = sample_tempered_ml_waiting(
            beta, a, lam, RngStream(SEED, 21), size=200_000
        )
        assert_laplace_matches(
            draws,
            (0.5, 1.0, 2.0),
            lambda s: lam / (lam + (s + a) ** beta - a**beta),
        )

    def test_waiting_has_finite_mean(self):
        # tempering restores all moments; mean = d/ds (s+a)^b |_{s=0} ... / lam
        beta, a, lam = 0.5, 1.0, 2.0
        n = 200_000
        draws = sample_tempered_ml_waiting(beta, a, lam, RngStream(SEED, 22), size=n)
        # E[J] = psi'(0)/lam = beta a^{beta-1} / lam
        target = beta * a ** (beta - 1.0) / lam
        se = float(np.std(draws, ddof=1)) / math.sqrt(n)
        assert abs(float(np.mean(draws)) - target) <= 4.0 * se

    def test_rate_convention_guard(self):
        # lam <= a**beta leaves no mass for the tempered law
        with pytest.raises(DomainError):
            sample_tempered_ml_waiting(0.5, 4.0, 1.0, RngStream(SEED))

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            sample_tempered_stable_increment(0.5, 0.0, 1.0, RngStream(SEED))
        with pytest.raises(DomainError):
            sample_tempered_stable_increment(0.5, 1.0, -1.0, RngStream(SEED))


class TestInverseStableMarginal:
    def test_marginal_identity_exact(self):
        # same stream: E(t) must be exactly (t / D(1))**beta
        beta, t = 0.5, 2.0
        vals = sample_inverse_stable_marginal(beta, t, RngStream(SEED, 23), size=1000)
        unit = sample_stable_unit(beta, RngStream(SEED, 23), size=1000)
        np.testing.assert_allclose(vals, (t / unit) ** beta, rtol=1e-15)

    @pytest.mark.parametrize("beta, t", [(0.5, 1.0), (0.7, 2.0)])
    def test_moments(self, beta, t):
        # E[E(t)^k] = k! t^{k beta} / Gamma(1 + k beta)
        n = 200_000
        draws = sample_inverse_stable_marginal(beta, t, RngStream(SEED, 24), size=n)
        m1 = t**beta / math.gamma(1.0 + beta)
        m2 = 2.0 * t ** (2.0 * beta) / math.gamma(1.0 + 2.0 * beta)
        se1 = float(np.std(draws, ddof=1)) / math.sqrt(n)
        assert abs(float(np.mean(draws)) - m1) <= 4.0 * se1
        sq = draws * draws
        se2 = float(np.std(sq, ddof=1)) / math.sqrt(n)
        assert abs(float(np.mean(sq)) - m2) <= 4.0 * se2

    def test_zero_time(self):
        vals = sample_inverse_stable_marginal(0.5, 0.0, RngStream(SEED), size=5)
        np.testing.assert_array_equal(vals, np.zeros(5))

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            sample_inverse_stable_marginal(1.0, 1.0, RngStream(SEED))
        with pytest.raises(DomainError):
            sample_inverse_stable_marginal(0.5, -1.0, RngStream(SEED))


class TestBrownianRunningMax:
    def test_mean_within_bias_band(self):
        # M(t) = |B(t)| in law, E = 2 sqrt(t/pi); the grid max is downward
        # biased by about 0.5826 sqrt(2 t / n_steps)
        t, n_steps, n = 1.0, 4096, 20_000
        draws = sample_brownian_running_max(t, n_steps, RngStream(SEED, 25), size=n)
        exact = 2.0 * math.sqrt(t / math.pi)
        bias = 0.5826 * math.sqrt(2.0 * t / n_steps)
        se = float(np.std(draws, ddof=1)) / math.sqrt(n)
        mean = float(np.mean(draws))
        assert mean <= exact + 4.0 * se
        assert mean >= exact - 2.5 * bias - 4.0 * se

    def test_reflection_law_with_fine_grid(self):
        # against |N(0, 2t)| draws; fine grid keeps the bias inside the
        # KS tolerance at this sample size
        t, n = 2.0, 20_000
        draws = sample_brownian_running_max(t, 20_000, RngStream(SEED, 26), size=n)
        z = np.random.default_rng(SEED + 1).standard_normal(n)
        reference = np.abs(math.sqrt(2.0 * t) * z)
        assert ks_two_sample(draws, reference).p_value > 0.01

    def test_nonnegative_and_zero_time(self):
        draws = sample_brownian_running_max(1.0, 64, RngStream(SEED, 27), size=1000)
        assert np.all(draws >= 0.0)
        zeros = sample_brownian_running_max(0.0, 64, RngStream(SEED), size=3)
        np.testing.assert_array_equal(zeros, np.zeros(3))

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            sample_brownian_running_max(1.0, 0, RngStream(SEED))
        with pytest.raises(DomainError):
            sample_brownian_running_max(-1.0, 64, RngStream(SEED))


class TestSubordinatorAt:
    def test_paths_strictly_increasing(self):
        times = np.linspace(0.1, 2.0, 20)
        path = sample_subordinator_at(Stable(0.6), times, RngStream(SEED, 28))
        assert path.shape == (20,)
        assert np.all(np.diff(path) > 0.0)

    def test_size_stacks_paths(self):
        times = [0.5, 1.0, 1.5]
        paths = sample_subordinator_at(
            Stable(0.5), times, RngStream(SEED, 29), size=7
        )
        assert paths.shape == (7, 3)
        assert np.all(np.diff(paths, axis=1) > 0.0)

    @pytest.mark.parametrize(
        "spec",
        [Stable(0.5), TemperedStable(0.5, 1.0), StableMixture((0.5, 0.5), (0.3, 0.7))],
        ids=lambda s: type(s).__name__,
    )
    def test_terminal_laplace(self, spec):
        from fracpoisson.transforms import laplace_exponent

        t_end = 1.5
        paths = sample_subordinator_at(
            spec, [0.5, 1.0, t_end], RngStream(SEED, 30), size=50_000
        )
        draws = paths[:, -1]
        assert_laplace_matches(
            draws,
            (0.5, 1.0),
            lambda s: math.exp(-t_end * laplace_exponent(spec, s)),
        )

    def test_distributed_order_unsupported(self):
        with pytest.raises(UnsupportedSamplingError):
            sample_subordinator_at(
                DistributedOrder((1.0,)), [0.5, 1.0], RngStream(SEED)
            )

    def test_bad_times(self):
        with pytest.raises(DomainError):
            sample_subordinator_at(Stable(0.5), [], RngStream(SEED))
        with pytest.raises(DomainError):
            sample_subordinator_at(Stable(0.5), [0.0, 1.0], RngStream(SEED))
        with pytest.raises(DomainError):
            sample_subordinator_at(Stable(0.5), [1.0, 1.0], RngStream(SEED))
