"""Fat-point interpolation over finite fields.

A plane curve of degree b has multiplicity >= m at a point exactly when all
Hasse derivatives of order < m of its equation vanish there.  Stacking those
conditions gives a matrix whose columns are the degree-b monomials; full
column rank means no such curve exists.  Hasse derivatives act on monomials
by binomial coefficients, so the conditions are correct in every
characteristic.

Ranks over GF(p) of matrices that come from integral (or cyclotomic integral)
data bound the characteristic-zero rank from below, so full column rank mod p
also rules out curves over C.
"""

from dataclasses import dataclass
from math import comb
from typing import Callable, NamedTuple

from neglab.certificates import ArithmeticCount, ExplicitDivisor, InterpolationRank
from neglab.errors import CertificationError, NotFoundError, ParameterError
from neglab.fields import GF, least_prime_congruent_one, prime_power


def normalize(point, field):
    """Scale a projective point so that its first nonzero coordinate is 1."""
    for c in point:
        if c:
            inv = field.inv(c)
            return tuple(field.mul(inv, x) for x in point)
    raise ParameterError("the zero vector is not a projective point")


def _chart(point):
    c = next(i for i, x in enumerate(point) if x)
    u, v = (i for i in range(3) if i != c)
    return c, u, v


class PG2(NamedTuple):
    field: GF
    points: list
    lines: list
    incident: Callable


def _normalized_triples(field):
    els = list(field.elements())
    triples = [(1, a, b) for a in els for b in els]
    triples += [(0, 1, a) for a in els]
    triples.append((0, 0, 1))
    return triples


def pg2_enumerate(q):
    """Points and lines of the projective plane over GF(q).

    Both are normalised triples, listed as (1:a:b), (0:1:a), (0:0:1); a line
    (a:b:c) is the locus ax + by + cz = 0.
    """
    p, e = prime_power(q)
    field = GF(p, e)
    points = _normalized_triples(field)
    lines = list(points)

    def incident(point, line):
        total = 0
        for x, y in zip(point, line):
            total = field.add(total, field.mul(x, y))
        return total == 0

    return PG2(field, points, lines, incident)


@dataclass(frozen=True)
class FatPointScheme:
    field: GF
    points: tuple
    mults: tuple

    def __post_init__(self):
        pts = tuple(normalize(pt, self.field) for pt in self.points)
        if len(set(pts)) != len(pts):
            raise ParameterError("scheme points must be distinct")
        if len(self.mults) != len(pts):
            raise ParameterError("one multiplicity per point")
        if any(m < 1 for m in self.mults):
            raise ParameterError("multiplicities must be positive")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "mults", tuple(self.mults))

    def to_json(self):
        return {
            "field": f"{self.field.p}^{self.field.e}",
            "modulus": list(self.field.modulus),
            "points": [[str(x) for x in pt] for pt in self.points],
            "mults": list(self.mults),
        }

    @classmethod
    def from_json(cls, obj, field=None):
        from neglab.fields import parse_field

        if field is None:
            field = parse_field(obj["field"])
        points = [tuple(int(x) for x in pt) for pt in obj["points"]]
        if any(not 0 <= x < field.q for pt in points for x in pt):
            raise ParameterError("point coordinate outside the field")
        return cls(field, tuple(points), tuple(int(m) for m in obj["mults"]))


def monomials(b):
    """Exponent triples of degree b, x-major descending."""
    return [(i, j, b - i - j) for i in range(b, -1, -1) for j in range(b - i, -1, -1)]


def interpolation_matrix(b, scheme):
    """Rows: Hasse-derivative conditions; columns: :func:`monomials` of degree b."""
    if b < 1:
        raise ParameterError("degree must be at least 1")
    F = scheme.field
    mons = monomials(b)
    rows = []
    for pt, m in zip(scheme.points, scheme.mults):
        _, u, v = _chart(pt)
        u0, v0 = pt[u], pt[v]
        upow = [F.pow(u0, k) for k in range(b + 1)]
        vpow = [F.pow(v0, k) for k in range(b + 1)]
        for order in range(m):
            for au in range(order, -1, -1):
                av = order - au
                row = []
                for mon in mons:
                    bu, bv = mon[u], mon[v]
                    if bu < au or bv < av:
                        row.append(0)
                        continue
                    coeff = F(comb(bu, au) * comb(bv, av))
                    row.append(F.mul(coeff, F.mul(upow[bu - au], vpow[bv - av])))
                rows.append(row)
    return rows


def linear_system_dim(b, scheme):
    """Dimension of the space of degree-b forms through the scheme."""
    return comb(b + 2, 2) - scheme.field.rank(interpolation_matrix(b, scheme))


def certify_non_effective(degree, mults, scheme, multiple=1, note=""):
    """Evidence that no curve of the given degree has the given multiplicities.

    Raises :class:`CertificationError` when the linear system is nonempty.
    Over a field of characteristic 0 that is not a proof of effectivity, only
    a failed witness.
    """
    if tuple(mults) != scheme.mults:
        raise ParameterError("class multiplicities do not match the scheme")
    rows = interpolation_matrix(degree, scheme)
    columns = comb(degree + 2, 2)
    rank = scheme.field.rank(rows)
    if rank != columns:
        raise CertificationError(
            f"degree {degree} system has dimension {columns - rank}", columns - rank
        )
    return InterpolationRank(
        prime=scheme.field.p,
        field_degree=scheme.field.e,
        rank=rank,
        rows=len(rows),
        columns=columns,
        multiple=multiple,
        degree=degree,
        points=scheme.points,
        mults=scheme.mults,
        note=note,
    )


def reproduce(evidence):
    """Rebuild an :class:`InterpolationRank` matrix; returns (rank, rows, columns)."""
    field = GF(evidence.prime, evidence.field_degree)
    scheme = FatPointScheme(field, evidence.points, evidence.mults)
    rows = interpolation_matrix(evidence.degree, scheme)
    return field.rank(rows), len(rows), comb(evidence.degree + 2, 2)


# -- geometric realisations of the construction families ---------------------

def finite_field_points(q):
    """PG(2,q) without P = (0:0:1), in :func:`pg2_enumerate` order."""
    plane = pg2_enumerate(q)
    return plane.field, [pt for pt in plane.points if pt != (0, 0, 1)]


def fermat_points(n, field):
    """Vertices (1:0:0), (0:1:0), (0:0:1), then T(a,b) = (1 : w^-a : w^-b).

    w is a primitive n-th root of unity; T(a,b) is listed a-major, matching
    the basis order of the Fermat construction.
    """
    w = field.root_of_unity(n)
    winv = field.inv(w)
    pts = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    pts += [(1, field.pow(winv, a), field.pow(winv, b)) for a in range(n) for b in range(n)]
    return pts


def order_certificate(cert):
    """Attach order bounds (lower, upper) to a construction certificate.

    The lower bound is k when every multiple bF with b < k is certified
    non-effective by machine-checked evidence; the upper bound is k when an
    effective divisor in kF is recorded.  Where the evidence falls short the
    bounds stay apart.
    """
    k = cert.order_claim
    family, params = cert.family, cert.params
    evidence = list(cert.non_effectivity)
    if family == "finite_field":
        q = params["q"]
        field, pts = finite_field_points(q)
        evidence = [
            certify_non_effective(
                b * q, [b] * len(pts), FatPointScheme(field, tuple(pts), (b,) * len(pts)),
                multiple=b, note=f"{b}F over GF({q})",
            )
            for b in range(1, k)
        ]
    elif family == "fermat":
        n = params["n"]
        p = least_prime_congruent_one(n)
        if p is None:
            raise NotFoundError(f"no prime = 1 mod {n} below 10^6")
        field = GF(p)
        pts = fermat_points(n, field)
        evidence = []
        for b in range(1, k):
            mults = (b * n // 3,) * 3 + (b,) * (n * n)
            scheme = FatPointScheme(field, tuple(pts), mults)
            evidence.append(certify_non_effective(
                b * n, mults, scheme, multiple=b,
                note=f"{b}F over GF({p}), reduction of the complex configuration",
            ))
    elif family not in ("chain", "rational_nodal", "sextic"):
        raise ParameterError(f"no order certificate strategy for {family!r}")

    covered = set()
    for ev in evidence:
        if isinstance(ev, InterpolationRank) and ev.rank == ev.columns:
            covered.add(ev.multiple)
        elif isinstance(ev, ArithmeticCount) and ev.holds():
            covered.update(ev.multiples)
    lower = 1
    while lower < k and lower in covered:
        lower += 1
    upper = k if cert.effectivity else None
    flags = dict(cert.flags)
    flags["order_certified"] = lower == k and any(
        isinstance(e, ExplicitDivisor) for e in cert.effectivity
    )
    return cert.evolve(non_effectivity=tuple(evidence), order_bounds=(lower, upper), flags=flags)
