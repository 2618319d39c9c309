import random

import pytest

from artinian_forms.randomized import (
    CHECKS,
    FIELDS,
    random_algebra,
    random_subspace,
    random_tame_pia,
    run_properties,
)
from artinian_forms.algebra import is_tame_pia


def test_same_seed_same_instances():
    a = random_algebra(random.Random("k"), FIELDS[1])
    b = random_algebra(random.Random("k"), FIELDS[1])
    assert a.table == b.table


def test_generators_respect_bounds():
    rng = random.Random(3)
    for _ in range(30):
        field = rng.choice(FIELDS)
        assert random_algebra(rng, field, max_dim=4).dim <= 4
        assert is_tame_pia(random_tame_pia(rng, field))
        assert random_subspace(rng, field, 5, 3).dim <= 3


@pytest.mark.parametrize("name", sorted(CHECKS))
def test_check_is_reproducible(name):
    assert run_properties(7, 5, [name]) == run_properties(7, 5, [name])
