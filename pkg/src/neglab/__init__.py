"""Exact computations around volume denominators and negative classes on surfaces."""

from neglab.errors import (
    CertificationError,
    DegenerateInputError,
    LatticeError,
    LemmaViolation,
    ModelInconsistencyError,
    NeglabError,
    NotFoundError,
    ParameterError,
    PreconditionError,
)
from neglab.lattice import (
    DivisorClass,
    IntersectionLattice,
    discriminant,
    gram_of,
    intersect,
    is_negative_definite,
    make_lattice,
    primitive_part,
    universal_intersection_gcd,
)

__version__ = "0.1.0"
