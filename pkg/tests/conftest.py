import numpy as np
import pytest
from hypothesis import strategies as st

from ptsmatrix import PointInteraction, pt_step_well, square_well


def complex_numbers(bound=10.0):
    f = st.floats(-bound, bound, allow_nan=False, allow_infinity=False)
    return st.builds(complex, f, f)


def matrices(bound=10.0):
    return st.lists(complex_numbers(bound), min_size=4, max_size=4).map(
        lambda v: np.array(v, dtype=complex).reshape(2, 2))


def upper_k(re_max=3.0, im_max=2.0, im_min=0.05):
    re = st.floats(0.05, re_max).flatmap(lambda r: st.sampled_from([r, -r]))
    return st.builds(complex, re, st.floats(im_min, im_max))


@pytest.fixture
def real_well():
    return square_well(2.0, 0.5, rho=1.0)


@pytest.fixture
def pt_well():
    return pt_step_well(1.5, 0.5, rho=1.0)


@pytest.fixture
def gamma1():
    return PointInteraction(1.0)


@pytest.fixture
def k_grid():
    re = np.linspace(-2, 2, 20)
    im = np.linspace(0.1, 2, 20)
    return (re[:, None] + 1j * im[None, :]).ravel()
