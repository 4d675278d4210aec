"""Zariski decomposition and volume relative to a declared set of curves.

A :class:`SurfaceModel` lists finitely many irreducible curves of negative
self-intersection.  "Nef" and "ample" below always mean: with respect to
those curves.  On a real surface this is exact as soon as the model lists
every negative curve that the class in question meets negatively.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from neglab import exact
from neglab.errors import (
    LatticeError,
    ModelInconsistencyError,
    NotFoundError,
    ParameterError,
    PreconditionError,
)
from neglab.lattice import (
    IntersectionLattice,
    discriminant,
    gram_of,
    intersect,
    is_negative_definite,
)


def fmt_rational(x):
    return str(Fraction(x))


@dataclass(frozen=True)
class SurfaceModel:
    lattice: object
    negative_curves: tuple
    ample: object = None

    def __post_init__(self):
        object.__setattr__(self, "negative_curves", tuple(self.negative_curves))
        for C in self.negative_curves:
            if C.lattice != self.lattice:
                raise LatticeError("curve lives in a different lattice")
            if not C.is_integral:
                raise ParameterError(f"curve {C} is not integral")
            if C.square() >= 0:
                raise ParameterError(f"declared curve {C} has C^2 = {C.square()} >= 0")
        for i, C in enumerate(self.negative_curves):
            for D in self.negative_curves[i + 1:]:
                if C == D:
                    raise ParameterError(f"curve {C} declared twice")
                if intersect(C, D) < 0:
                    raise ParameterError(f"distinct curves {C}, {D} meet negatively")
        A = self.ample
        if A is not None:
            if A.lattice != self.lattice:
                raise LatticeError("ample class lives in a different lattice")
            if A.square() <= 0:
                raise ParameterError("ample class must have positive square")
            for C in self.negative_curves:
                if intersect(A, C) <= 0:
                    raise ParameterError(f"ample class does not meet {C} positively")

    def is_ample(self, A):
        if A.square() <= 0:
            return False
        if self.ample is not None and intersect(A, self.ample) <= 0:
            return False
        return all(intersect(A, C) > 0 for C in self.negative_curves)

    def to_json(self):
        return {
            "lattice": self.lattice.to_json(),
            "curves": [[str(x) for x in C.coords] for C in self.negative_curves],
            "ample": None if self.ample is None else [str(x) for x in self.ample.coords],
        }

    @classmethod
    def from_json(cls, obj):
        lat = IntersectionLattice.from_json(obj["lattice"])
        curves = [lat.vector([int(x) for x in c]) for c in obj["curves"]]
        ample = obj.get("ample")
        ample = None if ample is None else lat.vector([int(x) for x in ample])
        return cls(lat, curves, ample)


@dataclass(frozen=True)
class ZariskiDecomposition:
    L: object
    P: object
    support: tuple
    coeffs: tuple
    volume: Fraction
    volume_denominator: int

    @property
    def N(self):
        N = self.L.lattice.zero()
        for a, C in zip(self.coeffs, self.support):
            N = N + a * C
        return N

    def to_json(self):
        return {
            "L": [str(x) for x in self.L.coords],
            "P": [str(x) for x in self.P.coords],
            "support": [[str(x) for x in C.coords] for C in self.support],
            "coeffs": [fmt_rational(a) for a in self.coeffs],
            "volume": fmt_rational(self.volume),
            "denominator": self.volume_denominator,
        }


def zariski_decompose(model, L):
    """Split ``L = P + sum a_i C_i`` over the model curves.

    The support grows from the curves meeting L negatively; each round solves
    ``(L - N).C_j = 0`` on the current support and then adds every model curve
    still met negatively.  The result is checked before it is returned.
    """
    if L.lattice != model.lattice:
        raise LatticeError("class and model live in different lattices")
    if model.ample is not None and intersect(L, model.ample) <= 0:
        raise PreconditionError(f"{L} is not positive against the model ample class")
    curves = model.negative_curves
    b = [intersect(L, C) for C in curves]
    support = [i for i, x in enumerate(b) if x < 0]
    coeffs = []
    P = L
    for _ in range(len(curves) + 1):
        if not support:
            break
        S = [[intersect(curves[i], curves[j]) for j in support] for i in support]
        try:
            coeffs = exact.solve(S, [b[i] for i in support])
        except ZeroDivisionError:
            raise ModelInconsistencyError("support gram matrix is singular") from None
        P = L
        for a, i in zip(coeffs, support):
            P = P - a * curves[i]
        extra = [
            j for j, C in enumerate(curves) if j not in support and intersect(P, C) < 0
        ]
        if not extra:
            break
        support = sorted(support + extra)
    else:
        raise ModelInconsistencyError("support did not stabilise")

    kept = [(i, a) for i, a in zip(support, coeffs) if a != 0]
    if any(a < 0 for _, a in kept):
        raise ModelInconsistencyError("negative coefficient in the negative part")
    support_curves = tuple(curves[i] for i, _ in kept)
    result_coeffs = tuple(a for _, a in kept)
    volume = Fraction(P.square())
    if volume <= 0:
        raise PreconditionError(f"{L} is not big on this model (P^2 = {volume})")
    dec = ZariskiDecomposition(
        L, P, support_curves, result_coeffs, volume, volume.denominator
    )
    _validate(model, dec)
    return dec


def _validate(model, dec):
    if dec.P + dec.N != dec.L:
        raise ModelInconsistencyError("L != P + N")
    for C in dec.support:
        if intersect(dec.P, C) != 0:
            raise ModelInconsistencyError(f"P does not annihilate support curve {C}")
    for C in model.negative_curves:
        if intersect(dec.P, C) < 0:
            raise ModelInconsistencyError(f"P meets {C} negatively")
    if dec.support:
        ok, _ = is_negative_definite(gram_of(dec.support))
        if not ok:
            raise ModelInconsistencyError("support is not negative definite")
    if any(a <= 0 for a in dec.coeffs):
        raise ModelInconsistencyError("non-positive coefficient")


def volume(model, L):
    return zariski_decompose(model, L).volume


def volume_denominator(model, L):
    return zariski_decompose(model, L).volume_denominator


def volume_of_perturbed_ample(A, C, m):
    """Closed-form volume of ``A + m C`` once m passes ``-(A.C)/C^2``."""
    c2 = C.square()
    if c2 >= 0:
        raise ParameterError("C must have negative self-intersection")
    ac = intersect(A, C)
    if A.square() <= 0 or ac <= 0:
        raise PreconditionError("A must be positive on itself and on C")
    alpha = Fraction(-ac, c2)
    if not m > alpha:
        raise PreconditionError(f"m = {m} does not exceed alpha = {alpha}")
    return Fraction(A.square()) - Fraction(ac * ac, c2)


def least_integer_above(x):
    x = Fraction(x)
    return x.numerator // x.denominator + 1


def _candidate_amples(model):
    lat = model.lattice
    seen = set()
    if model.ample is not None:
        seen.add(model.ample.coords)
        yield model.ample
    if lat.kind == "blowup":
        r = lat.rank - 1
        t = isqrt(r) + 1
        while True:
            A = lat.plane(t, [1] * r)
            if A.coords not in seen:
                seen.add(A.coords)
                yield A
            t += 1
    base = model.ample
    if base is None:
        raise NotFoundError("no model ample class to search around")
    scale = 1
    while True:
        for i in range(lat.rank):
            for sign in (1, -1):
                A = scale * base + sign * lat.basis(i)
                if A.coords not in seen:
                    seen.add(A.coords)
                    yield A
        scale += 1


def find_coprime_ample(model, F, budget=1000):
    """Search for a model-ample A with gcd(A.F, F^2) dividing the discriminant.

    The search is a heuristic walk (blow-up lattices: ``(t; 1, ..., 1)`` for
    growing t; otherwise multiples of the model ample class nudged by basis
    vectors).  Raises :class:`NotFoundError` once ``budget`` candidates fail.
    """
    if not F.is_primitive:
        raise PreconditionError("F must be a primitive integral class")
    f2 = F.square()
    if f2 == 0:
        raise PreconditionError("F must have nonzero self-intersection")
    disc = abs(discriminant(model.lattice))
    tried = 0
    for A in _candidate_amples(model):
        if tried >= budget:
            break
        tried += 1
        if not model.is_ample(A):
            continue
        if disc % gcd(intersect(A, F), abs(f2)) == 0:
            if f2 < 0:
                _check_denominator_growth(A, F, disc)
            return A
    raise NotFoundError(f"no coprime ample class among {tried} candidates")


def _check_denominator_growth(A, F, disc):
    af = intersect(A, F)
    f2 = F.square()
    den = (Fraction(A.square()) - Fraction(af * af, f2)).denominator
    if den * disc * disc < -f2:
        raise ModelInconsistencyError(
            f"volume denominator {den} below |F^2|/disc^2 = {-f2}/{disc * disc}"
        )


def denominator_bounds(bprim, rho, support=None):
    """``(|det S| <= bprim^(rho-1), bprim^(2 rho - 2))``."""
    if bprim < 1 or rho < 1:
        raise ParameterError("bprim and rho must be positive")
    dvol = bprim ** (2 * rho - 2)
    if support is None:
        return True, dvol
    support = list(support)
    for C in support:
        if C.square() < -bprim:
            raise PreconditionError(f"{C} has C^2 = {C.square()} < -{bprim}")
    det = exact.determinant(gram_of(support))
    return abs(det) <= bprim ** (rho - 1), dvol


def pell_denominator_witness(k, budget=1000):
    """Volume of A + mC for the k-th negative Pell class C on the 11-point blow-up.

    A is found by :func:`find_coprime_ample`; m is the least integer above
    alpha = -(A.C)/C^2, so the volume has denominator |C^2|.
    """
    from neglab.pell import negative_pell_class

    neg = negative_pell_class(k)
    C = neg.G
    lat = C.lattice
    model = SurfaceModel(lat, [C], lat.plane(4, [1] * (lat.rank - 1)))
    A = find_coprime_ample(model, C, budget)
    alpha = Fraction(-intersect(A, C), C.square())
    m = least_integer_above(alpha)
    dec = zariski_decompose(model, A + m * C)
    closed = volume_of_perturbed_ample(A, C, m)
    if closed != dec.volume:
        raise ModelInconsistencyError("closed form and decomposition disagree")
    return {
        "k": k,
        "C": str(C),
        "C^2": C.square(),
        "A": str(A),
        "A.C": intersect(A, C),
        "alpha": alpha,
        "m": m,
        "volume": dec.volume,
        "denominator": dec.volume_denominator,
        "decomposition": dec.to_json(),
    }
