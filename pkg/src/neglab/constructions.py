"""Primitive classes F with a negative definite effective divisor D ~ kF.

Each generator returns a :class:`ConstructionCertificate` whose lattice
identities are exact and re-checkable by :func:`verify_certificate`.  Inputs
that are geometric rather than arithmetic (existence of nodal curves, the
choice of points) are recorded as assumptions on the certificate.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from neglab.certificates import (
    ArithmeticCount,
    Component,
    ConstructionCertificate,
    ExplicitDivisor,
    InterpolationRank,
    PaperAssertion,
)
from neglab.errors import ParameterError
from neglab.fields import GF, prime_power
from neglab.interpolation import finite_field_points, reproduce
from neglab.lattice import (
    gram_of,
    intersect,
    is_negative_definite,
    make_lattice,
)

EQUIVALENCE_NOTE = (
    "on these rational surfaces numerical and linear equivalence agree, "
    "so effectivity is decided on classes"
)

FAMILIES = ("sextic", "rational_nodal", "fermat", "finite_field", "chain")


def _certificate(family, params, lattice, F, k, components, effectivity,
                 non_effectivity, assumptions=(), extra=None):
    comps = tuple(components)
    gram = tuple(tuple(row) for row in gram_of(c.cls for c in comps))
    negdef, _ = is_negative_definite(gram)
    total = lattice.zero()
    for c in comps:
        total = total + c.coefficient * c.cls
    flags = {
        "D_equals_kF": total == k * F,
        "F_primitive": F.is_primitive,
        "negdef": negdef,
    }
    return ConstructionCertificate(
        family=family,
        params=dict(params),
        lattice=lattice,
        F=F,
        order_claim=k,
        components=comps,
        effectivity=tuple(effectivity),
        non_effectivity=tuple(non_effectivity),
        gram=gram,
        flags=flags,
        assumptions=(EQUIVALENCE_NOTE,) + tuple(assumptions),
        extra=extra or {},
    )


def _line(lattice, point_indices):
    """Proper transform of a line through the given blown-up points (0-based)."""
    mults = [0] * (lattice.rank - 1)
    for i in point_indices:
        mults[i] = 1
    return lattice.plane(1, mults)


# -- plane families ------------------------------------------------------------

def sextic():
    lat = make_lattice("blowup", 10)
    F = lat.plane(3, [1] * 10)
    comp = Component(lat.plane(6, [2] * 10), 1, "irreducible sextic, nodes at the ten points")
    return _certificate(
        "sextic", {}, lat, F, 2, [comp],
        effectivity=[PaperAssertion(
            "a classical irreducible plane sextic with ten nodes exists; "
            "its proper transform has class (6;2^10)")],
        non_effectivity=[PaperAssertion("no plane cubic passes through the ten nodes")],
        assumptions=["the ten blown-up points are the nodes of the sextic"],
    )


def nodal_counts(d):
    """Inequalities ruling out a curve of degree d/2 through all nodes."""
    e, nodes = d // 2, comb(d - 1, 2)
    return (
        ("count: (d/2)(d/2+3)/2 < nodes", e * (e + 3) // 2, nodes),
        ("Bezout: d*(d/2) < 2*nodes", d * e, 2 * nodes),
    )


def rational_nodal(d):
    if not isinstance(d, int) or d < 6 or d % 2:
        raise ParameterError(f"rational_nodal needs an even degree d >= 6, got {d!r}")
    nodes = comb(d - 1, 2)
    lat = make_lattice("blowup", nodes)
    F = lat.plane(d // 2, [1] * nodes)
    C = Component(lat.plane(d, [2] * nodes), 1, f"rational nodal curve of degree {d}")
    count = ArithmeticCount(
        nodal_counts(d),
        multiples=(1,),
        caveat="the dimension count presumes the nodes impose independent conditions; "
               "the Bezout inequality needs only that the nodal curve is irreducible",
    )
    return _certificate(
        "rational_nodal", {"d": d}, lat, F, 2, [C],
        effectivity=[PaperAssertion(
            f"a general rational plane curve of degree {d} has exactly "
            f"{nodes} nodes and no other singularities")],
        non_effectivity=[count],
        assumptions=["the blown-up points are the nodes of the rational curve"],
    )


def fermat_point_labels(n):
    return ["Vx", "Vy", "Vz"] + [f"T({a},{b})" for a in range(n) for b in range(n)]


def fermat_lines(n):
    """Point indices (0-based, :func:`fermat_point_labels` order) on each line.

    A_a: x = w^a y passes through Vz; B_b: x = w^b z through Vy;
    C_c: y = w^c z through Vx.  T(a,b) lies on A_a, B_b and C_{b-a}.
    """
    def T(a, b):
        return 3 + a * n + b

    lines = []
    for a in range(n):
        lines.append((f"A{a}", [2] + [T(a, b) for b in range(n)]))
    for b in range(n):
        lines.append((f"B{b}", [1] + [T(a, b) for a in range(n)]))
    for c in range(n):
        lines.append((f"C{c}", [0] + [T(a, (a + c) % n) for a in range(n)]))
    return lines


def fermat(n):
    if not isinstance(n, int) or n < 3 or n % 3:
        raise ParameterError(f"fermat needs n >= 3 divisible by 3, got {n!r}")
    lat = make_lattice("blowup", n * n + 3)
    F = lat.plane(n, [n // 3] * 3 + [1] * (n * n))
    comps = [Component(_line(lat, pts), 1, name) for name, pts in fermat_lines(n)]
    return _certificate(
        "fermat", {"n": n}, lat, F, 3, comps,
        effectivity=[ExplicitDivisor()],
        non_effectivity=[PaperAssertion(
            "no curve of degree bn with multiplicity bn/3 at the vertices and b at the "
            "triple points exists for b = 1, 2")],
        assumptions=["complex line arrangement (x^n-y^n)(x^n-z^n)(y^n-z^n) = 0"],
        extra={"points": fermat_point_labels(n)},
    )


def finite_field(q):
    prime_power(q)
    field_, pts = finite_field_points(q)
    lat = make_lattice("blowup", len(pts))
    comps = []
    for a in field_.elements():
        for b in field_.elements():
            on = [
                i for i, pt in enumerate(pts)
                if field_.add(field_.add(field_.mul(a, pt[0]), field_.mul(b, pt[1])), pt[2]) == 0
            ]
            comps.append(Component(_line(lat, on), 1, f"line ({a}:{b}:1)"))
    F = lat.plane(q, [1] * len(pts))
    return _certificate(
        "finite_field", {"q": q}, lat, F, q, comps,
        effectivity=[ExplicitDivisor()],
        non_effectivity=[PaperAssertion(
            "no curve of degree bq with multiplicity b at the blown-up points exists for b < q")],
        assumptions=[f"ground field of characteristic {field_.p} containing GF({q})"],
        extra={"points": [list(pt) for pt in pts]},
    )


def construct_plane_family(family, **params):
    builders = {
        "sextic": sextic,
        "rational_nodal": rational_nodal,
        "fermat": fermat,
        "finite_field": finite_field,
    }
    if family not in builders:
        raise ParameterError(f"unknown plane family {family!r}")
    try:
        return builders[family](**params)
    except TypeError as exc:
        raise ParameterError(str(exc)) from None


# -- infinitely near points on a smooth curve --------------------------------------

def chain_counts(d, r):
    return tuple((f"b={b}: b(b+3)/2 < r", b * (b + 3) // 2, r) for b in range(1, d))


def construct_chain(d, r):
    """Chains of d infinitely near points on a smooth plane curve of degree d.

    Components: the curve C ~ dL - sum E(i,j) and N(i,j) ~ E(i,j) - E(i,j+1)
    with coefficient j, adding up to d(L - sum_i E(i,d)).
    """
    if not isinstance(d, int) or d < 2:
        raise ParameterError(f"chain needs d >= 2, got {d!r}")
    if not isinstance(r, int) or r < d * (d + 1) // 2:
        raise ParameterError(f"chain needs r >= d(d+1)/2 = {d * (d + 1) // 2}, got {r!r}")
    lat = make_lattice("chain", r, d)

    def E(i, j):
        return lat.basis(1 + (i - 1) * d + (j - 1))

    L = lat.basis(0)
    C = d * L
    for i in range(1, r + 1):
        for j in range(1, d + 1):
            C = C - E(i, j)
    comps = [Component(C, 1, "C")]
    for i in range(1, r + 1):
        for j in range(1, d):
            comps.append(Component(E(i, j) - E(i, j + 1), j, f"N{i},{j}"))
    F = L
    for i in range(1, r + 1):
        F = F - E(i, d)
    count = ArithmeticCount(
        chain_counts(d, r),
        multiples=tuple(range(1, d)),
        caveat="the r points are chosen off every curve of degree < d, which the counts allow",
    )
    return _certificate(
        "chain", {"d": d, "r": r}, lat, F, d, comps,
        effectivity=[ExplicitDivisor()],
        non_effectivity=[count],
        assumptions=[f"smooth plane curve of degree {d} through r points in general position"],
    )


# -- Kollar's abelian surface ------------------------------------------------------

def kollar_middle_coefficient(m):
    """Solve A^2 = 2 for b in A = m f1 + b f2 - (m-1) delta.

    On the abelian lattice (a f1 + b f2 + c delta)^2 = 2(ab + ac + bc).
    """
    a, c = m, -(m - 1)
    b = Fraction(1 - a * c, a + c)
    if b.denominator != 1:
        raise ArithmeticError("no integral solution")
    return int(b)


@dataclass(frozen=True)
class KollarChecks:
    self_intersection: int
    fiber_degree: int
    interior: bool
    middle_coefficient: int
    details: dict = field(default_factory=dict)


def construct_kollar(m):
    if not isinstance(m, int) or m < 2:
        raise ParameterError(f"kollar needs m >= 2, got {m!r}")
    lat = make_lattice("abelian")
    b = kollar_middle_coefficient(m)
    A = lat.vector([m, b, -(m - 1)])
    fibres = lat["f1"] + lat["f2"]
    sq = A.square()
    deg = intersect(A, fibres)
    return A, KollarChecks(sq, deg, sq > 0 and deg > 0, b)


# -- verification ---------------------------------------------------------------

@dataclass
class VerificationReport:
    family: str
    checks: list = field(default_factory=list)
    assumptions: tuple = ()

    def add(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), detail))

    @property
    def passed(self):
        return all(ok for _, ok, _ in self.checks)

    def failed(self):
        return [name for name, ok, _ in self.checks if not ok]

    def to_json(self):
        return {
            "family": self.family,
            "passed": self.passed,
            "checks": [{"name": n, "passed": ok, "detail": d} for n, ok, d in self.checks],
            "assumptions": list(self.assumptions),
        }


def _expected_counts(cert):
    if cert.family == "chain":
        return chain_counts(cert.params["d"], cert.params["r"])
    if cert.family == "rational_nodal":
        return nodal_counts(cert.params["d"])
    return None


def verify_certificate(cert):
    """Recompute every claim in a certificate; failures become report entries."""
    report = VerificationReport(cert.family_name, assumptions=cert.assumptions)
    k, F, lat = cert.order_claim, cert.F, cert.lattice

    try:
        D = cert.D
        report.add("D_equals_kF", D == k * F, f"D = {D}, k = {k}")
    except Exception as exc:  # noqa: BLE001 - malformed input is a failed check
        report.add("D_equals_kF", False, str(exc))
        D = None
    report.add("order_claim_positive", k >= 1)
    report.add("F_primitive", F.is_primitive, str(F))
    report.add(
        "coefficients_positive",
        all(c.coefficient > 0 for c in cert.components),
    )
    selfs = [c.cls.square() for c in cert.components]
    report.add("component_self_intersections", all(s < 0 for s in selfs),
               f"{sorted(set(selfs))}")
    gram = gram_of(c.cls for c in cert.components)
    report.add("gram_matches", [list(r) for r in cert.gram] == gram)
    negdef, minors = is_negative_definite(gram)
    report.add("negdef", negdef, f"{len(minors)} leading minors checked")
    recomputed = {"D_equals_kF": D == k * F, "F_primitive": F.is_primitive, "negdef": negdef}
    report.add(
        "flags_consistent",
        all(cert.flags.get(key) == val for key, val in recomputed.items()),
    )

    for ev in cert.effectivity:
        if isinstance(ev, ExplicitDivisor):
            report.add("effectivity_explicit", D is not None and D == k * F)
    for ev in cert.non_effectivity:
        if isinstance(ev, InterpolationRank):
            _check_interpolation(report, cert, ev)
        elif isinstance(ev, ArithmeticCount):
            expected = _expected_counts(cert)
            report.add(
                "arithmetic_count",
                ev.holds() and (expected is None or tuple(ev.inequalities) == expected),
                "; ".join(f"{lab}: {lhs} < {rhs}" for lab, lhs, rhs in ev.inequalities),
            )
    if cert.order_bounds is not None:
        lo, hi = cert.order_bounds
        report.add("order_bounds", 1 <= lo <= k and (hi is None or hi == k),
                   f"[{lo}, {hi}]")
    return report


def _check_interpolation(report, cert, ev):
    name = f"interpolation_b{ev.multiple}"
    rank, rows, cols = reproduce(ev)
    ok = rank == ev.rank == cols == ev.columns
    detail = f"rank {rank} of {rows}x{cols} over GF({ev.prime}^{ev.field_degree})"
    F = cert.F
    if cert.lattice.kind == "blowup":
        b = ev.multiple
        want_mults = tuple(-b * x for x in F.coords[1:])
        ok = ok and ev.degree == b * F.coords[0] and ev.mults == want_mults
        # every line component must be a line through its points in the scheme
        field_ = GF(ev.prime, ev.field_degree)
        for comp in cert.components:
            if comp.cls.coords[0] != 1:
                continue
            idx = [i for i, x in enumerate(comp.cls.coords[1:]) if x == -1]
            if not _collinear(field_, [ev.points[i] for i in idx]):
                ok = False
                detail += f"; {comp.label} is not a line in the scheme"
    report.add(name, ok, detail)


def _collinear(field_, pts):
    if len(pts) <= 2:
        return True
    # line through the first two points via the cross product
    p, q = pts[0], pts[1]
    m, s = field_.mul, field_.sub
    line = (
        s(m(p[1], q[2]), m(p[2], q[1])),
        s(m(p[2], q[0]), m(p[0], q[2])),
        s(m(p[0], q[1]), m(p[1], q[0])),
    )
    for pt in pts[2:]:
        total = 0
        for x, y in zip(pt, line):
            total = field_.add(total, m(x, y))
        if total:
            return False
    return True
