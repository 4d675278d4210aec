import random

import pytest

from neglab.errors import ParameterError
from neglab.shgh import (
    CONDITIONAL,
    PlaneClass,
    expected_dim,
    shgh_semi_effective_order,
    vdim,
)


def vdim_oracle(d, m):
    # D.(D - K)/2 with K = -3H + sum E_i, written out by hand
    return (d * d + 3 * d - sum(x * x + x for x in m)) // 2


def test_vdim_examples():
    assert vdim(PlaneClass(19, (6,) * 10)) == -1
    assert vdim(PlaneClass(57, (18,) * 10)) == 0
    assert vdim(PlaneClass(1)) == 2


def test_vdim_random_against_oracle():
    rng = random.Random(7)
    for _ in range(1000):
        d = rng.randint(0, 40)
        m = tuple(rng.randint(0, 15) for _ in range(rng.randint(0, 12)))
        assert vdim(PlaneClass(d, m)) == vdim_oracle(d, m)


def test_vdim_is_quadratic_in_the_multiple():
    rng = random.Random(8)
    for _ in range(100):
        F = PlaneClass(rng.randint(1, 20), tuple(rng.randint(0, 7) for _ in range(8)))
        v = [vdim(k * F) for k in range(1, 6)]
        third = [v[i + 3] - 3 * v[i + 2] + 3 * v[i + 1] - v[i] for i in range(2)]
        assert third == [0, 0]


def test_expected_dim_examples():
    assert expected_dim(PlaneClass(38, (12,) * 10)) == (-1, True)
    assert expected_dim(PlaneClass(57, (18,) * 10)) == (0, True)
    assert expected_dim(PlaneClass(2, (1, 1, 1))) == (2, False)
    assert expected_dim(PlaneClass(3, (2, 2))).applicable is False


def test_order_examples():
    res = shgh_semi_effective_order(PlaneClass(19, (6,) * 10), 10)
    assert res.order == 3 and res.all_applicable and res.label == CONDITIONAL
    assert shgh_semi_effective_order(PlaneClass(370, (117,) * 10), 10).order == 6
    assert shgh_semi_effective_order(PlaneClass(1), 1).order == 1
    assert shgh_semi_effective_order(PlaneClass(19, (6,) * 10), 2).order is None
    with pytest.raises(ParameterError):
        shgh_semi_effective_order(PlaneClass(1), 0)


def test_parse_and_normalise():
    D = PlaneClass.parse("19;6^10")
    assert D == PlaneClass(19, (6,) * 10)
    assert str(D) == "(19;6^10)"
    assert PlaneClass.parse("(2;1,0,3)") == PlaneClass(2, (3, 1))
    with pytest.raises(ParameterError):
        PlaneClass.parse("x;1")
    with pytest.raises(ParameterError):
        PlaneClass(3, (-1,))
