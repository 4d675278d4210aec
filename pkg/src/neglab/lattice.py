"""Integral intersection lattices and divisor classes.

Coordinates of a :class:`DivisorClass` are the plain coefficients with respect
to the labelled basis of its lattice.  For blow-ups of the plane the usual
notation ``(d; m_1, ..., m_r)`` stands for ``d H - sum m_i E_i``; use
:meth:`IntersectionLattice.plane` to build such a class and
:meth:`DivisorClass.plane_notation` to read one back.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd

from neglab import exact
from neglab.errors import (
    DegenerateInputError,
    LatticeError,
    LemmaViolation,
    ParameterError,
    PreconditionError,
)

KINDS = ("blowup", "chain", "abelian", "custom")


def _num(x):
    """Normalise an exact number: integral fractions become ``int``."""
    if isinstance(x, bool):
        raise TypeError("booleans are not lattice coordinates")
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


@dataclass(frozen=True)
class IntersectionLattice:
    kind: str
    gram: tuple
    labels: tuple
    params: tuple = ()

    def __post_init__(self):
        n = len(self.gram)
        if n == 0:
            raise ParameterError("lattice of rank 0")
        if any(len(row) != n for row in self.gram):
            raise ParameterError("gram table is not square")
        if not exact.is_symmetric(self.gram):
            raise ParameterError("gram table is not symmetric")
        if len(self.labels) != n:
            raise ParameterError("need one label per basis element")
        if exact.determinant(self.gram) == 0:
            raise ParameterError("gram table is singular")

    @property
    def rank(self):
        return len(self.gram)

    @property
    def name(self):
        if not self.params:
            return self.kind
        return f"{self.kind}({','.join(str(p) for p in self.params)})"

    def __repr__(self):
        return f"IntersectionLattice({self.name})"

    # -- building classes --------------------------------------------------

    def vector(self, coords):
        return DivisorClass(self, tuple(coords))

    def zero(self):
        return self.vector([0] * self.rank)

    def basis(self, i):
        coords = [0] * self.rank
        coords[i] = 1
        return self.vector(coords)

    def __getitem__(self, label):
        try:
            return self.basis(self.labels.index(label))
        except ValueError:
            raise KeyError(label) from None

    def _require_plane(self):
        if self.kind not in ("blowup", "chain"):
            raise ParameterError(f"{self.name} has no plane notation")

    def plane(self, d, *mults):
        """The class ``d H - sum m_i E_i``; missing multiplicities are zero.

        ``plane(3, 1, 1)`` and ``plane(3, [1, 1])`` are the same class.
        """
        self._require_plane()
        if len(mults) == 1 and not isinstance(mults[0], (int, Fraction)):
            mults = tuple(mults[0])
        if len(mults) > self.rank - 1:
            raise ParameterError("too many multiplicities")
        coords = [d] + [-m for m in mults] + [0] * (self.rank - 1 - len(mults))
        return self.vector(coords)

    def E(self, i):
        """Exceptional class E_i, 1-based as in the usual notation."""
        self._require_plane()
        if not 1 <= i < self.rank:
            raise ParameterError(f"no exceptional class E{i}")
        return self.basis(i)

    @property
    def H(self):
        self._require_plane()
        return self.basis(0)

    @property
    def canonical(self):
        """K = -3H + sum E_i, i.e. ``(-3; -1, ..., -1)``."""
        if self.kind != "blowup":
            raise ParameterError("canonical class is only provided for blow-ups")
        return self.plane(-3, [-1] * (self.rank - 1))

    def to_json(self):
        return {
            "kind": self.kind,
            "params": list(self.params),
            "rank": self.rank,
            "labels": list(self.labels),
            "gram": [[str(x) for x in row] for row in self.gram],
        }

    @classmethod
    def from_json(cls, obj):
        gram = tuple(tuple(int(x) for x in row) for row in obj["gram"])
        lat = cls(obj["kind"], gram, tuple(obj["labels"]), tuple(obj.get("params", ())))
        if "rank" in obj and int(obj["rank"]) != lat.rank:
            raise ParameterError("rank does not match gram table")
        return lat


@dataclass(frozen=True)
class DivisorClass:
    lattice: IntersectionLattice = field(repr=False)
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.lattice.rank:
            raise ParameterError(
                f"expected {self.lattice.rank} coordinates, got {len(self.coords)}"
            )
        object.__setattr__(self, "coords", tuple(_num(x) for x in self.coords))

    def _check(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        if other.lattice is not self.lattice and other.lattice != self.lattice:
            raise LatticeError(f"{self.lattice.name} vs {other.lattice.name}")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return DivisorClass(self.lattice, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return DivisorClass(self.lattice, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return DivisorClass(self.lattice, tuple(-a for a in self.coords))

    def __mul__(self, scalar):
        if isinstance(scalar, DivisorClass):
            return NotImplemented
        return DivisorClass(self.lattice, tuple(scalar * a for a in self.coords))

    __rmul__ = __mul__

    def __matmul__(self, other):
        return intersect(self, other)

    @property
    def is_integral(self):
        return all(isinstance(a, int) for a in self.coords)

    @property
    def is_zero(self):
        return not any(self.coords)

    @property
    def is_primitive(self):
        return self.is_integral and reduce(gcd, self.coords, 0) == 1

    def square(self):
        return intersect(self, self)

    def plane_notation(self):
        """Render as ``(d;m1,...,mr)`` with repeated trailing runs compressed."""
        self.lattice._require_plane()
        d, mults = self.coords[0], [-x for x in self.coords[1:]]
        return f"({d};{compress_runs(mults)})"

    def __str__(self):
        if self.lattice.kind in ("blowup", "chain"):
            return self.plane_notation()
        return "(" + ",".join(str(x) for x in self.coords) + ")"

    def to_json(self, with_lattice=True):
        obj = {"coords": [str(x) for x in self.coords]}
        if with_lattice:
            obj = {**self.lattice.to_json(), **obj}
        return obj

    @classmethod
    def from_json(cls, obj, lattice=None):
        if lattice is None:
            lattice = IntersectionLattice.from_json(obj)
        return cls(lattice, tuple(Fraction(x) for x in obj["coords"]))


def compress_runs(mults):
    parts = []
    i = 0
    while i < len(mults):
        j = i
        while j < len(mults) and mults[j] == mults[i]:
            j += 1
        n = j - i
        parts.append(str(mults[i]) if n == 1 else f"{mults[i]}^{n}")
        i = j
    return ",".join(parts)


def make_lattice(kind, *params, gram=None, labels=None):
    """Build one of the model lattices.

    ``make_lattice("blowup", r)``: H, E1..Er with gram diag(1, -1, ..., -1).
    ``make_lattice("chain", r, d)``: L and E(i,j) for 1 <= i <= r, 1 <= j <= d.
    ``make_lattice("abelian")``: fibre classes f1, f2 and the diagonal of E x E.
    ``make_lattice("custom", gram=..., labels=...)``: anything nonsingular.
    """
    if kind == "blowup":
        if len(params) != 1:
            raise ParameterError("blowup takes one parameter r")
        (r,) = params
        if not isinstance(r, int) or r < 1:
            raise ParameterError(f"blowup needs r >= 1, got {r!r}")
        labels = ("H",) + tuple(f"E{i}" for i in range(1, r + 1))
        return IntersectionLattice("blowup", _diagonal([1] + [-1] * r), labels, (r,))
    if kind == "chain":
        if len(params) != 2:
            raise ParameterError("chain takes parameters r, d")
        r, d = params
        if not all(isinstance(x, int) and x >= 1 for x in (r, d)):
            raise ParameterError(f"chain needs r, d >= 1, got {r!r}, {d!r}")
        labels = ("L",) + tuple(f"E{i},{j}" for i in range(1, r + 1) for j in range(1, d + 1))
        return IntersectionLattice("chain", _diagonal([1] + [-1] * (r * d)), labels, (r, d))
    if kind == "abelian":
        if params:
            raise ParameterError("abelian takes no parameters")
        gram = ((0, 1, 1), (1, 0, 1), (1, 1, 0))
        return IntersectionLattice("abelian", gram, ("f1", "f2", "delta"))
    if kind == "custom":
        if gram is None:
            raise ParameterError("custom lattice needs a gram table")
        gram = tuple(tuple(int(x) for x in row) for row in gram)
        if labels is None:
            labels = tuple(f"e{i}" for i in range(1, len(gram) + 1))
        return IntersectionLattice("custom", gram, tuple(labels))
    raise ParameterError(f"unknown lattice kind {kind!r}")


def _diagonal(entries):
    n = len(entries)
    return tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n))


def intersect(a, b):
    if a.lattice is not b.lattice and a.lattice != b.lattice:
        raise LatticeError(f"{a.lattice.name} vs {b.lattice.name}")
    gram = a.lattice.gram
    total = 0
    for i, x in enumerate(a.coords):
        if x:
            row = gram[i]
            total += x * sum(row[j] * y for j, y in enumerate(b.coords) if y)
    return _num(total)


def primitive_part(a):
    """Split an integral class as ``k * F`` with F primitive and k > 0."""
    if not a.is_integral:
        raise ParameterError("primitive_part needs an integral class")
    k = reduce(gcd, a.coords, 0)
    if k == 0:
        raise DegenerateInputError("the zero class has no primitive part")
    return k, DivisorClass(a.lattice, tuple(x // k for x in a.coords))


def gram_of(classes):
    classes = list(classes)
    if not classes:
        raise DegenerateInputError("gram_of needs at least one class")
    return [[intersect(a, b) for b in classes] for a in classes]


def is_negative_definite(matrix):
    """Sylvester's criterion.  Returns ``(verdict, leading_minors)``.

    The minor list stops at the first minor with the wrong sign, since that
    already decides the question.
    """
    matrix = [list(row) for row in matrix]
    if not matrix or not exact.is_symmetric(matrix):
        raise ParameterError("is_negative_definite needs a nonempty symmetric matrix")
    if any(not isinstance(_num(x), int) for row in matrix for x in row):
        raise ParameterError("is_negative_definite expects an integer matrix")
    minors = exact.leading_minors(matrix)
    ok = len(minors) == len(matrix)
    for k, m in enumerate(minors, start=1):
        if m == 0 or (m > 0) != (k % 2 == 0):
            ok = False
            minors = minors[:k]
            break
    return ok, minors


def discriminant(lattice):
    return exact.determinant(lattice.gram)


def universal_intersection_gcd(F):
    """Largest t dividing D.F for every integral D, and whether t | disc.

    For primitive F the adjugate argument shows t always divides the
    discriminant; a failure raises :class:`LemmaViolation`.
    """
    if not F.is_integral:
        raise PreconditionError("F must be integral")
    if not F.is_primitive:
        raise PreconditionError("F must be primitive")
    lat = F.lattice
    g = reduce(gcd, (intersect(F, lat.basis(i)) for i in range(lat.rank)), 0)
    disc = discriminant(lat)
    divides = g != 0 and disc % g == 0
    if not divides:
        raise LemmaViolation(f"gcd {g} does not divide discriminant {disc} for {F}")
    return g, divides


def random_lattice(rng, max_rank=6, bound=5):
    """A random nonsingular symmetric integer lattice of rank <= max_rank."""
    n = rng.randint(1, max_rank)
    while True:
        gram = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                gram[i][j] = gram[j][i] = rng.randint(-bound, bound)
        if exact.determinant(gram) != 0:
            return make_lattice("custom", gram=gram)


def random_primitive(rng, lattice, bound=9):
    while True:
        v = [rng.randint(-bound, bound) for _ in range(lattice.rank)]
        g = reduce(gcd, v, 0)
        if g:
            return lattice.vector([x // g for x in v])


def discriminant_lemma_sweep(trials, rng):
    """Run :func:`universal_intersection_gcd` on random primitive classes.

    Returns a summary dict; ``violations`` lists every failure (expected empty).
    """
    violations = []
    nontrivial = 0
    for t in range(trials):
        lat = random_lattice(rng)
        F = random_primitive(rng, lat)
        try:
            g, _ = universal_intersection_gcd(F)
        except LemmaViolation as exc:
            violations.append({"trial": t, "error": str(exc)})
            continue
        if g > 1:
            nontrivial += 1
    abelian = make_lattice("abelian")
    g, ok = universal_intersection_gcd(abelian.vector([1, 1, 1]))
    return {
        "trials": trials,
        "violations": violations,
        "nontrivial_gcd": nontrivial,
        "regression_abelian": {"g": g, "disc": discriminant(abelian), "divides": ok},
    }
