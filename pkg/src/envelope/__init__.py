"""Exact computations in enveloping algebras of finite-dimensional Lie algebras over Q."""

from .corpus import bundled, free_nilpotent, heisenberg, sl2, solvable2
from .lie import LieAlgebra, check_jacobi, make_lie, parse_lie
from .pbw import (
    PbwElement,
    antipode,
    coproduct,
    envelope,
    is_grouplike,
    is_primitive,
    membership_ULJ,
    primitive_space,
    straighten,
)

__all__ = [
    "LieAlgebra", "PbwElement", "antipode", "bundled", "check_jacobi", "coproduct",
    "envelope", "free_nilpotent", "heisenberg", "is_grouplike", "is_primitive", "make_lie",
    "membership_ULJ", "parse_lie", "primitive_space", "sl2", "solvable2", "straighten",
]

__version__ = "0.1.0"
