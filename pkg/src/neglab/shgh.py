"""Virtual and expected dimensions of plane classes on general blow-ups.

Everything reported here about actual linear systems is conditional on the
SHGH conjecture; :data:`CONDITIONAL` is attached to every such result.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from neglab.errors import ParameterError
from neglab.lattice import compress_runs, intersect, make_lattice

CONDITIONAL = "CONDITIONAL (SHGH)"


@dataclass(frozen=True)
class PlaneClass:
    """``(d; m_1, ..., m_r)`` with multiplicities sorted descending, zeros dropped."""

    d: int
    m: tuple = ()

    def __post_init__(self):
        if any(x < 0 for x in self.m):
            raise ParameterError("multiplicities must be nonnegative")
        object.__setattr__(self, "m", tuple(sorted((x for x in self.m if x), reverse=True)))

    @property
    def r(self):
        return len(self.m)

    def __mul__(self, k):
        return PlaneClass(k * self.d, tuple(k * x for x in self.m))

    __rmul__ = __mul__

    def to_divisor(self):
        if self.r == 0:
            lat = make_lattice("custom", gram=[[1]], labels=["H"])
            return lat.vector([self.d]), lat.vector([-3])
        lat = make_lattice("blowup", self.r)
        return lat.plane(self.d, self.m), lat.canonical

    def __str__(self):
        return f"({self.d};{compress_runs(list(self.m))})"

    @classmethod
    def parse(cls, text):
        """Parse ``"d;m1,m2,..."``; ``"m^k"`` repeats a multiplicity k times."""
        try:
            head, _, tail = text.strip().strip("()").partition(";")
            d = int(head)
            m = []
            for part in filter(None, (p.strip() for p in tail.split(","))):
                if "^" in part:
                    val, rep = part.split("^")
                    m.extend([int(val)] * int(rep))
                else:
                    m.append(int(part))
        except ValueError:
            raise ParameterError(f"cannot parse plane class {text!r}") from None
        return cls(d, tuple(m))


def vdim(D):
    """Virtual dimension d(d+3)/2 - sum m_i(m_i+1)/2, cross-checked as D.(D-K)/2."""
    combinatorial = D.d * (D.d + 3) // 2 - sum(x * (x + 1) // 2 for x in D.m)
    cls, K = D.to_divisor()
    via_lattice = Fraction(intersect(cls, cls - K), 2)
    if via_lattice != combinatorial:
        raise ArithmeticError(f"vdim formulas disagree on {D}")
    return combinatorial


class ExpectedDim(NamedTuple):
    value: int
    applicable: bool


def expected_dim(D):
    applicable = D.r >= 3 and D.d > D.m[0] + D.m[1] + D.m[2]
    return ExpectedDim(max(-1, vdim(D)), applicable)


class ConditionalOrder(NamedTuple):
    order: Optional[int]
    all_applicable: bool
    label: str = CONDITIONAL


def shgh_semi_effective_order(F, k_max):
    """Least k <= k_max whose multiple kF has expected dimension >= 0."""
    if k_max < 1:
        raise ParameterError("k_max must be at least 1")
    all_applicable = True
    for k in range(1, k_max + 1):
        value, applicable = expected_dim(k * F)
        all_applicable = all_applicable and applicable
        if value >= 0:
            return ConditionalOrder(k, all_applicable)
    return ConditionalOrder(None, all_applicable)
