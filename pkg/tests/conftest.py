import numpy as np
import pytest

from hsara.model import Instance, Parameters


def make_instance(customers, p_c=0.0, end_time=480.0, mean_service=60.0,
                  sd_service=30.0, mean_speed=1.0, assignment=250.0,
                  unit_travel=2.0, unit_wait=10.0, unit_idle=5.0,
                  unit_overtime=15.0, travel_sigma=0.5) -> Instance:
    params = Parameters(
        n_customers=len(customers),
        end_time=end_time,
        mean_service_time=mean_service,
        sd_service_time=sd_service,
        mean_speed=mean_speed,
        assignment_cost=assignment,
        unit_travel_cost=unit_travel,
        unit_wait_cost=unit_wait,
        unit_idle_cost=unit_idle,
        unit_overtime_cost=unit_overtime,
        cancel_rate=p_c,
        travel_sigma=travel_sigma,
    )
    return Instance(params=params, customers=tuple(tuple(c) for c in customers))


def lattice(rng: np.random.Generator, size, scale_bits=16, frac_bits=10):
    """Random nonnegative floats on a dyadic grid: k / 2**frac_bits < 2**6.

    Sums of a few dozen such values stay exactly representable, so float
    arithmetic on them is exact in any evaluation order.
    """
    return np.floor(rng.random(size) * 2 ** scale_bits) / 2 ** frac_bits


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
