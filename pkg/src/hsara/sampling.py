"""Seeded sampling of every random quantity in the engine.

Streams are derived from (master_seed, purpose-label, replication-index) by
hashing the tuple into a PCG64 seed, so any two distinct derivation tuples
give statistically independent generators and the same tuple always replays
the identical sample sequence. Replications never share a stream, which
makes them safe to run in any order or in parallel.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

SQRT3 = math.sqrt(3.0)


def derive_seed(master_seed: int, label: str, replication: int = 0) -> int:
    """Mix a (seed, label, replication) tuple into a 128-bit stream seed."""
    payload = f"{master_seed}|{label}|{replication}".encode()
    digest = hashlib.sha256(payload).digest()
    return int.from_bytes(digest[:16], "little")


class RngStream:
    """Deterministic generator bound to one derivation tuple."""

    __slots__ = ("master_seed", "label", "replication", "generator")

    def __init__(self, master_seed: int, label: str, replication: int = 0):
        self.master_seed = master_seed
        self.label = label
        self.replication = replication
        self.generator = np.random.Generator(
            np.random.PCG64(derive_seed(master_seed, label, replication))
        )

    def child(self, suffix: str, replication: int | None = None) -> "RngStream":
        """Derive a sibling stream with a refined purpose label."""
        rep = self.replication if replication is None else replication
        return RngStream(self.master_seed, f"{self.label}/{suffix}", rep)


def travel_factor_divisor(sigma: float) -> float:
    """Normalizer exp(sigma^2 / 2) that keeps the mean travel time at d/v."""
    return math.exp(sigma * sigma / 2.0)


def sample_travel_time(d: float, mean_speed: float, sigma: float, rng: RngStream) -> float:
    """One leg travel time: (d / v) scaled by a mean-one lognormal factor."""
    xi = rng.generator.lognormal(0.0, sigma)
    return (d / mean_speed) * (xi / travel_factor_divisor(sigma))


def sample_travel_factors(sigma: float, size: int, rng: RngStream) -> np.ndarray:
    """Mean-one lognormal travel factors; multiply by d/v to get leg times."""
    return rng.generator.lognormal(0.0, sigma, size) / travel_factor_divisor(sigma)


def service_support(mean: float, sd: float) -> tuple[float, float]:
    """Uniform service-time support [mean - sd*sqrt(3), mean + sd*sqrt(3)]."""
    if mean <= 0:
        raise ValueError("mean service time must be > 0")
    half = sd * SQRT3
    lo = mean - half
    if lo < 0:
        raise ValueError(
            f"service-time parameters give negative support (lo={lo:.6g})"
        )
    return lo, mean + half


def sample_service_time(mean: float, sd: float, rng: RngStream) -> float:
    lo, hi = service_support(mean, sd)
    return rng.generator.uniform(lo, hi)


def sample_service_times(mean: float, sd: float, size: int, rng: RngStream) -> np.ndarray:
    lo, hi = service_support(mean, sd)
    return rng.generator.uniform(lo, hi, size)


def sample_cancel_flag(p_cancel: float, rng: RngStream) -> bool:
    """True when the customer cancels (probability p_cancel)."""
    if not 0.0 <= p_cancel <= 1.0:
        raise ValueError("cancel probability must be in [0, 1]")
    return bool(rng.generator.random() < p_cancel)


def sample_cancel_flags(p_cancel: float, size: int, rng: RngStream) -> np.ndarray:
    if not 0.0 <= p_cancel <= 1.0:
        raise ValueError("cancel probability must be in [0, 1]")
    return rng.generator.random(size) < p_cancel


def sample_cancel_time(appointment: float, rng: RngStream) -> float:
    """Notification time, uniform on [0, appointment]."""
    if appointment < 0:
        raise ValueError("appointment must be >= 0")
    return rng.generator.uniform(0.0, 1.0) * appointment


def sample_cancel_times(appointments: np.ndarray, rng: RngStream) -> np.ndarray:
    return rng.generator.uniform(0.0, 1.0, len(appointments)) * appointments


@dataclass(frozen=True)
class DistributionSpec:
    """The day's three random laws, ready to draw from one stream.

    Service times are uniform on [service_low, service_high] (nonnegative by
    construction), travel factors are mean-one scaled lognormals, cancel
    flags are Bernoulli(cancel_rate), and a cancelled customer's notification
    time is uniform on [0, appointment].
    """

    service_low: float
    service_high: float
    travel_sigma: float
    travel_divisor: float
    cancel_rate: float

    @classmethod
    def from_parameters(cls, params) -> "DistributionSpec":
        lo, hi = service_support(params.mean_service_time, params.sd_service_time)
        return cls(
            service_low=lo,
            service_high=hi,
            travel_sigma=params.travel_sigma,
            travel_divisor=travel_factor_divisor(params.travel_sigma),
            cancel_rate=params.cancel_rate,
        )

    def draw_travel_factors(self, rng: RngStream, size: int) -> np.ndarray:
        return rng.generator.lognormal(0.0, self.travel_sigma, size) / self.travel_divisor

    def draw_service_times(self, rng: RngStream, size: int) -> np.ndarray:
        return rng.generator.uniform(self.service_low, self.service_high, size)

    def draw_cancel_flags(self, rng: RngStream, size: int) -> np.ndarray:
        return rng.generator.random(size) < self.cancel_rate

    def draw_cancel_times(self, rng: RngStream, appointments) -> np.ndarray:
        appointments = np.asarray(appointments, dtype=float)
        return rng.generator.uniform(0.0, 1.0, len(appointments)) * appointments
