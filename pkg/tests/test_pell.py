from math import gcd, isqrt

import pytest

from neglab.errors import ParameterError
from neglab.pell import convergent, negative_pell_class, pell_divisor, pell_table
from neglab.shgh import PlaneClass, expected_dim


def power_oracle(n):
    """(3 + sqrt 10)^n as an integer pair (a, b) meaning a + b sqrt 10."""
    a, b = 1, 0
    for _ in range(n):
        a, b = 3 * a + 10 * b, a + 3 * b
    return a, b


def test_convergent_examples():
    assert (convergent(-1).p, convergent(-1).q) == (1, 0)
    assert (convergent(0).p, convergent(0).q) == (3, 1)
    assert (convergent(1).p, convergent(1).q) == (19, 6)
    assert (convergent(2).p, convergent(2).q) == (117, 37)
    with pytest.raises(ParameterError):
        convergent(-2)


@pytest.mark.parametrize("k", range(0, 61))
def test_convergents_against_powers(k):
    rec = convergent(k)
    assert (rec.p, rec.q) == power_oracle(k + 1)
    assert rec.norm == (-1) ** (k + 1)


def test_deep_convergent_does_not_recurse():
    rec = convergent(3000)
    assert rec.norm == -1


def test_pell_divisor_examples():
    pd = pell_divisor(1)
    assert str(pd.D) == "(57;18^10)" and pd.c == 3 and str(pd.F) == "(19;6^10)"
    assert (2 * 57 + 3) ** 2 - 10 * (2 * 18 + 1) ** 2 == -1
    pd = pell_divisor(2)
    assert str(pd.D) == "(2220;702^10)" and pd.c == 6 and str(pd.F) == "(370;117^10)"
    for bad in (0, -1):
        with pytest.raises(ParameterError):
            pell_divisor(bad)


@pytest.mark.parametrize("k", range(1, 21))
def test_pell_split(k):
    pd = pell_divisor(k)
    a, b = power_oracle(2 * k + 1)
    assert (pd.d, pd.m) == ((a - 3) // 2, (b - 1) // 2)
    assert pd.c * pd.F == pd.D
    g = 0
    for x in pd.F.coords:
        g = gcd(g, int(x))
    assert g == 1
    if k > 1:
        assert pd.c > pell_divisor(k - 1).c


def test_perfect_square_case():
    # D_3^2 = 117^2, so s_3 has to step past the square root
    pd = pell_divisor(3)
    assert pd.D.square() == 117 ** 2
    neg = negative_pell_class(3)
    assert neg.s ** 2 > pd.D.square()
    assert neg.self_intersection < 0


def test_negative_class_examples():
    n1 = negative_pell_class(1)
    assert n1.s == 4 and str(n1.G) == "(57;18^10,-4)" and n1.self_intersection == -7
    assert n1.order_claim == 3 and n1.conditional == "SHGH"
    n2 = negative_pell_class(2)
    assert n2.s == 19 and n2.self_intersection == -1


@pytest.mark.parametrize("k", range(1, 11))
def test_negative_class_minimality(k):
    pd = pell_divisor(k)
    neg = negative_pell_class(k)
    d2 = pd.D.square()
    assert neg.s * neg.s > d2 and gcd(neg.s, pd.c) == 1
    for s in range(max(0, isqrt(max(d2, 0))), neg.s):
        assert s * s <= d2 or gcd(s, pd.c) != 1
    assert neg.G.is_primitive
    assert neg.self_intersection == d2 - neg.s ** 2


@pytest.mark.parametrize("k", range(1, 5))
def test_shgh_order_matches_split(k):
    pd = pell_divisor(k)
    F = PlaneClass(int(pd.F.coords[0]), (-int(pd.F.coords[1]),) * 10)
    for j in range(1, pd.c):
        assert expected_dim(j * F).value == -1
    assert expected_dim(pd.c * F).value >= 0


def test_pell_table_first_row():
    row = pell_table(5)[0]
    assert row == {
        "k": 1, "p_k": 19, "q_k": 6, "d_k": 57, "m_k": 18, "c_k": 3,
        "F_k": "(19;6^10)", "D_k^2": 9, "s_k": 4, "(D_k+s_kE)^2": -7,
    }
    with pytest.raises(ParameterError):
        pell_table(0)
