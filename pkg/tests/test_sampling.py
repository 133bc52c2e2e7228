import numpy as np
import pytest

from hsara.sampling import (
    RngStream,
    derive_seed,
    sample_cancel_flag,
    sample_cancel_flags,
    sample_cancel_time,
    sample_service_time,
    sample_service_times,
    sample_travel_time,
    sample_travel_factors,
    service_support,
)

SQRT3 = 3.0 ** 0.5


class TestStreams:
    def test_same_tuple_same_sequence(self):
        a = RngStream(42, "sim/t0", 7).generator.random(16)
        b = RngStream(42, "sim/t0", 7).generator.random(16)
        assert np.array_equal(a, b)

    def test_distinct_tuples_differ(self):
        base = RngStream(42, "sim/t0", 7).generator.random(8)
        for seed, label, rep in [(43, "sim/t0", 7), (42, "sim/t1", 7),
                                 (42, "sim/t0", 8), (42, "other", 7)]:
            other = RngStream(seed, label, rep).generator.random(8)
            assert not np.array_equal(base, other)

    def test_derive_seed_is_stable(self):
        assert derive_seed(1, "x", 2) == derive_seed(1, "x", 2)
        assert derive_seed(1, "x", 2) != derive_seed(1, "x", 3)

    def test_child_refines_label(self):
        s = RngStream(5, "sim/t3", 2)
        child = s.child("decide")
        assert child.label == "sim/t3/decide"
        assert child.replication == 2


class TestTravelTime:
    def test_zero_distance(self):
        assert sample_travel_time(0.0, 1.0, 0.5, RngStream(0, "t")) == 0.0

    def test_zero_sigma_is_deterministic(self):
        rng = RngStream(0, "t")
        for _ in range(5):
            assert sample_travel_time(10.0, 2.0, 0.0, rng) == 5.0

    def test_mean_is_distance_over_speed(self):
        rng = RngStream(3, "travel-mean")
        samples = 10.0 * sample_travel_factors(0.5, 10 ** 6, rng)
        assert abs(samples.mean() - 10.0) < 0.05


class TestServiceTime:
    def test_support(self):
        lo, hi = service_support(60.0, 30.0)
        assert lo == pytest.approx(60.0 - 30.0 * SQRT3, abs=1e-9)
        assert hi == pytest.approx(60.0 + 30.0 * SQRT3, abs=1e-9)
        assert round(lo, 3) == 8.038
        assert round(hi, 3) == 111.962

    def test_zero_sd(self):
        rng = RngStream(1, "svc")
        assert sample_service_time(60.0, 0.0, rng) == 60.0

    def test_negative_support_rejected(self):
        with pytest.raises(ValueError):
            service_support(10.0, 30.0)

    def test_moments(self):
        rng = RngStream(2, "svc-mom")
        z = sample_service_times(60.0, 30.0, 10 ** 6, rng)
        assert abs(z.mean() - 60.0) < 0.2
        assert abs(z.std() - 30.0) < 0.2
        assert z.min() >= 60.0 - 30.0 * SQRT3
        assert z.max() <= 60.0 + 30.0 * SQRT3


class TestCancellation:
    def test_flag_extremes(self):
        rng = RngStream(0, "flags")
        assert not any(sample_cancel_flag(0.0, rng) for _ in range(100))
        assert all(sample_cancel_flag(1.0, rng) for _ in range(100))

    def test_flag_rate(self):
        rng = RngStream(1, "flag-rate")
        flags = sample_cancel_flags(0.1, 10 ** 6, rng)
        assert abs(flags.mean() - 0.1) < 0.002

    def test_time_zero_appointment(self):
        assert sample_cancel_time(0.0, RngStream(0, "tc")) == 0.0

    def test_time_mean_and_support(self):
        rng = RngStream(2, "tc-mean")
        u = np.array([sample_cancel_time(100.0, rng) for _ in range(200_000)])
        assert abs(u.mean() - 50.0) < 0.3
        assert u.min() >= 0.0
        assert u.max() <= 100.0
