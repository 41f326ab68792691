import random

import pytest
from hypothesis import given, settings, strategies as st

from twistedcubic.algebra import GF
from twistedcubic.identities import ALGEBRAIC_IDENTITIES, run_identity

FIELDS = [(5, 1), (7, 1), (11, 1), (13, 1), (5, 2)]


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from(sorted(ALGEBRAIC_IDENTITIES)),
    st.sampled_from(FIELDS),
    st.integers(0, 2 ** 32),
)
def test_identity_holds(name, field, seed):
    F = GF(*field)
    assert ALGEBRAIC_IDENTITIES[name](F, random.Random(seed))


@pytest.mark.parametrize("name", sorted(ALGEBRAIC_IDENTITIES))
def test_identity_batch_q17(name):
    assert run_identity(name, GF(17), 40, seed=5) == 0


def test_identity_on_gf49():
    F = GF(7, 2)
    for name in ALGEBRAIC_IDENTITIES:
        assert run_identity(name, F, 10, seed=1) == 0, name
