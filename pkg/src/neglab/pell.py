"""Convergents of sqrt(10) and the Pell divisors they produce.

Convergents p_k/q_k of the continued fraction [3; 6, 6, ...] satisfy
``p_k + q_k sqrt(10) = (3 + sqrt(10))^(k+1)`` and alternate between the
two Pell equations x^2 - 10 y^2 = -1 (k even) and +1 (k odd).
"""

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

from neglab.errors import ParameterError
from neglab.lattice import make_lattice

N_POINTS = 10


@dataclass(frozen=True)
class PellRecord:
    k: int
    p: int
    q: int

    @property
    def norm(self):
        return self.p * self.p - 10 * self.q * self.q


@lru_cache(maxsize=None)
def _convergent_pair(k):
    # standard continued-fraction recurrence with partial quotients 3, 6, 6, ...
    if k == -1:
        return 1, 0
    if k == 0:
        return 3, 1
    p1, q1 = _convergent_pair(k - 1)
    p2, q2 = _convergent_pair(k - 2)
    return 6 * p1 + p2, 6 * q1 + q2


def convergent(k):
    if not isinstance(k, int) or k < -1:
        raise ParameterError(f"convergent index must be an integer >= -1, got {k!r}")
    # fill the cache bottom-up so deep indices never hit the recursion limit
    for j in range(-1, k):
        _convergent_pair(j)
    p, q = _convergent_pair(k)
    return PellRecord(k, p, q)


@dataclass(frozen=True)
class PellDivisor:
    k: int
    d: int
    m: int
    D: object
    c: int
    F: object


@lru_cache(maxsize=None)
def ten_point_lattice():
    return make_lattice("blowup", N_POINTS)


@lru_cache(maxsize=None)
def eleven_point_lattice():
    return make_lattice("blowup", N_POINTS + 1)


def pell_divisor(k):
    """The Pell divisor D_k = (d_k; m_k^10) and its split D_k = c_k F_k.

    For odd k the split is c_k = p_{k-1}, F_k = (p_k; q_k^10); for even k it
    is c_k = q_{k-1}, F_k = (10 q_k; p_k^10).  Both are checked.
    """
    if not isinstance(k, int) or k < 1:
        raise ParameterError(f"Pell divisors are indexed by k >= 1, got {k!r}")
    rec2 = convergent(2 * k)
    d, m = (rec2.p - 3) // 2, (rec2.q - 1) // 2
    lat = ten_point_lattice()
    D = lat.plane(d, [m] * N_POINTS)

    prev, cur = convergent(k - 1), convergent(k)
    if k % 2:
        c, F = prev.p, lat.plane(cur.p, [cur.q] * N_POINTS)
    else:
        c, F = prev.q, lat.plane(10 * cur.q, [cur.p] * N_POINTS)

    if c * F != D:
        raise ArithmeticError(f"split c_k F_k != D_k at k={k}")
    if not F.is_primitive:
        raise ArithmeticError(f"F_k is not primitive at k={k}")
    if (2 * d + 3) ** 2 - 10 * (2 * m + 1) ** 2 != -1:
        raise ArithmeticError(f"Pell equation fails at k={k}")
    return PellDivisor(k, d, m, D, c, F)


@dataclass(frozen=True)
class NegativePellClass:
    """D_k + s_k E on the eleven-point blow-up.

    ``order_claim`` is c_k; it is only known conditionally on SHGH.
    """

    k: int
    s: int
    G: object
    order_claim: int
    conditional: str = "SHGH"

    @property
    def self_intersection(self):
        return self.G.square()


def negative_pell_class(k):
    pd = pell_divisor(k)
    d2 = pd.D.square()
    s = isqrt(d2) + 1 if d2 >= 0 else 1
    while gcd(s, pd.c) != 1:
        s += 1
    lat = eleven_point_lattice()
    G = lat.plane(pd.d, [pd.m] * N_POINTS + [-s])
    if G.square() >= 0 or not G.is_primitive:
        raise ArithmeticError(f"negative Pell class failed its checks at k={k}")
    return NegativePellClass(k, s, G, pd.c)


def pell_table(max_k):
    """Rows of the ``pell`` CLI table for k = 1..max_k."""
    if max_k < 1:
        raise ParameterError("max_k must be at least 1")
    rows = []
    for k in range(1, max_k + 1):
        rec = convergent(k)
        pd = pell_divisor(k)
        neg = negative_pell_class(k)
        rows.append({
            "k": k,
            "p_k": rec.p,
            "q_k": rec.q,
            "d_k": pd.d,
            "m_k": pd.m,
            "c_k": pd.c,
            "F_k": pd.F.plane_notation(),
            "D_k^2": pd.D.square(),
            "s_k": neg.s,
            "(D_k+s_kE)^2": neg.self_intersection,
        })
    return rows
