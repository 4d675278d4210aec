"""Certificate records for semi-effective order constructions, and their JSON form."""

from dataclasses import dataclass, field, replace
from typing import Optional

from neglab.errors import ParameterError
from neglab.lattice import DivisorClass, IntersectionLattice


# -- evidence kinds ---------------------------------------------------------

@dataclass(frozen=True)
class ExplicitDivisor:
    """An explicit effective divisor (the certificate's own components)."""

    kind = "ExplicitDivisor"

    def to_json(self):
        return {"kind": self.kind}


@dataclass(frozen=True)
class InterpolationRank:
    """Full column rank of a fat-point condition matrix over GF(prime^degree).

    Carries everything needed to rebuild the matrix: the multiple of F it
    concerns, the plane degree, the points and the multiplicities.
    """

    prime: int
    rank: int
    columns: int
    multiple: int
    degree: int
    points: tuple
    mults: tuple
    field_degree: int = 1
    rows: int = 0
    note: str = ""

    kind = "InterpolationRank"

    def to_json(self):
        return {
            "kind": self.kind,
            "prime": self.prime,
            "field_degree": self.field_degree,
            "multiple": self.multiple,
            "degree": self.degree,
            "rank": self.rank,
            "rows": self.rows,
            "columns": self.columns,
            "points": [[str(x) for x in pt] for pt in self.points],
            "mults": list(self.mults),
            "note": self.note,
        }


@dataclass(frozen=True)
class ArithmeticCount:
    """Integer inequalities ``lhs < rhs`` whose truth carries the argument."""

    inequalities: tuple
    multiples: tuple = ()
    caveat: str = ""

    kind = "ArithmeticCount"

    def holds(self):
        return all(lhs < rhs for _, lhs, rhs in self.inequalities)

    def to_json(self):
        return {
            "kind": self.kind,
            "inequalities": [
                {"label": lab, "lhs": str(lhs), "rhs": str(rhs)}
                for lab, lhs, rhs in self.inequalities
            ],
            "multiples": list(self.multiples),
            "caveat": self.caveat,
        }


@dataclass(frozen=True)
class ShghConditional:
    order: Optional[int]
    all_applicable: bool

    kind = "ShghConditional"

    def to_json(self):
        return {"kind": self.kind, "order": self.order, "all_applicable": self.all_applicable}


@dataclass(frozen=True)
class PaperAssertion:
    """A geometric input taken on trust (existence or irreducibility of curves)."""

    claim: str

    kind = "PaperAssertion"

    def to_json(self):
        return {"kind": self.kind, "claim": self.claim}


def evidence_from_json(obj):
    kind = obj["kind"]
    if kind == "ExplicitDivisor":
        return ExplicitDivisor()
    if kind == "InterpolationRank":
        return InterpolationRank(
            prime=int(obj["prime"]),
            field_degree=int(obj.get("field_degree", 1)),
            rank=int(obj["rank"]),
            rows=int(obj.get("rows", 0)),
            columns=int(obj["columns"]),
            multiple=int(obj["multiple"]),
            degree=int(obj["degree"]),
            points=tuple(tuple(int(x) for x in pt) for pt in obj["points"]),
            mults=tuple(int(m) for m in obj["mults"]),
            note=obj.get("note", ""),
        )
    if kind == "ArithmeticCount":
        return ArithmeticCount(
            tuple((d["label"], int(d["lhs"]), int(d["rhs"])) for d in obj["inequalities"]),
            tuple(int(b) for b in obj.get("multiples", ())),
            obj.get("caveat", ""),
        )
    if kind == "ShghConditional":
        return ShghConditional(obj["order"], bool(obj["all_applicable"]))
    if kind == "PaperAssertion":
        return PaperAssertion(obj["claim"])
    raise ParameterError(f"unknown evidence kind {kind!r}")


# -- the certificate --------------------------------------------------------

@dataclass(frozen=True)
class Component:
    cls: DivisorClass
    coefficient: int
    label: str = ""


@dataclass(frozen=True)
class ConstructionCertificate:
    """A primitive class F, a claimed order k and an effective divisor D ~ kF.

    ``effectivity`` and ``non_effectivity`` are tuples of evidence records;
    non-effectivity evidence addresses the multiples bF with b < k.
    """

    family: str
    params: dict
    lattice: IntersectionLattice
    F: DivisorClass
    order_claim: int
    components: tuple
    effectivity: tuple
    non_effectivity: tuple
    gram: tuple
    flags: dict
    assumptions: tuple = ()
    order_bounds: Optional[tuple] = None
    extra: dict = field(default_factory=dict)

    @property
    def D(self):
        total = self.lattice.zero()
        for comp in self.components:
            total = total + comp.coefficient * comp.cls
        return total

    @property
    def family_name(self):
        if not self.params:
            return self.family
        return f"{self.family}({','.join(str(v) for v in self.params.values())})"

    def evolve(self, **changes):
        return replace(self, **changes)

    def to_json(self):
        obj = {
            "family": self.family,
            "params": dict(self.params),
            "lattice": self.lattice.to_json(),
            "F": [str(x) for x in self.F.coords],
            "order_claim": self.order_claim,
            "components": [
                {
                    "label": c.label,
                    "coefficient": c.coefficient,
                    "coords": [str(x) for x in c.cls.coords],
                }
                for c in self.components
            ],
            "evidence": {
                "effectivity": [e.to_json() for e in self.effectivity],
                "non_effectivity": [e.to_json() for e in self.non_effectivity],
            },
            "gram": [[str(x) for x in row] for row in self.gram],
            "flags": dict(self.flags),
            "assumptions": list(self.assumptions),
            "order_bounds": None if self.order_bounds is None else list(self.order_bounds),
        }
        if self.extra:
            obj["extra"] = dict(self.extra)
        return obj

    @classmethod
    def from_json(cls, obj):
        try:
            lat = IntersectionLattice.from_json(obj["lattice"])
            comps = tuple(
                Component(
                    lat.vector([int(x) for x in c["coords"]]),
                    int(c["coefficient"]),
                    c.get("label", ""),
                )
                for c in obj["components"]
            )
            ev = obj["evidence"]
            bounds = obj.get("order_bounds")
            return cls(
                family=obj["family"],
                params=dict(obj.get("params", {})),
                lattice=lat,
                F=lat.vector([int(x) for x in obj["F"]]),
                order_claim=int(obj["order_claim"]),
                components=comps,
                effectivity=tuple(evidence_from_json(e) for e in ev["effectivity"]),
                non_effectivity=tuple(evidence_from_json(e) for e in ev["non_effectivity"]),
                gram=tuple(tuple(int(x) for x in row) for row in obj["gram"]),
                flags=dict(obj["flags"]),
                assumptions=tuple(obj.get("assumptions", ())),
                order_bounds=None if bounds is None else tuple(bounds),
                extra=dict(obj.get("extra", {})),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParameterError(f"malformed certificate: {exc}") from None
