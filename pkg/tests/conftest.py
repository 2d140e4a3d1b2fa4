from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


def nonzero_rationals(bound=9):
    nums = st.integers(-bound, bound).filter(bool)
    return st.builds(Fraction, nums, st.integers(1, bound))


@pytest.fixture
def n1_state():
    from tetralab.lattice import kagome_from_values

    return kagome_from_values(1, {(1, 0, 0): (1, 4), (2, 0, 0): (2, 5), (3, 0, 0): (3, 6)})
