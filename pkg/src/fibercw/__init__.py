"""Presentation 2-complexes of fiber-type plane curve complements."""

from .covers import (
    CosetTable,
    CyclicHom,
    OrbifoldCover,
    cover_euler_check,
    kernel_presentation,
    orbifold_cover_invariants,
    orbifold_presentation,
    schreier_transversal,
    torsion_hom,
)
from .fibration import (
    FiberData,
    FibrationSpec,
    MonodromyEndomorphism,
    cubic_pencil_spec,
    fiber_rank,
    mapping_torus_presentation,
)
from .homology import (
    HomologyProfile,
    IntegerMatrix,
    boundary2,
    homology_profile,
    smith_normal_form,
)
from .homotopy_type import WedgeType, homotopy_group_profile, wedge_type
from .presentation import (
    GroupShape,
    Presentation,
    euler_characteristic,
    quotient_by,
    recognize_shape,
    simplify,
)
from .words import Alphabet, Word, invert, multiply, parse_word, reduce, substitute

__version__ = "0.1.0"
