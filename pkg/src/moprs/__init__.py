"""Exact multiple orthogonal polynomials and their rational transforms."""

__version__ = "0.1.0"

from .arith import Poly, RootList, det_rat, format_rat, render_poly, solve_rat, to_rat
from .core import System, TypeIIPoly, TypeIVector, index_box, is_normal, is_perfect_box, moment_matrix, type1_normalized, type2_monic
from .functionals import (
    ChristoffelOf,
    ExplicitMoments,
    IntervalLebesgue,
    MomentFunctional,
    PointMasses,
    RationalPerturb,
    Scaled,
    Sum,
    christoffel,
    functional_from_json,
    rational_perturb,
    uvarov_of,
)
from .indexseq import IndexSeq, explicit, find_witnesses, frame, is_admissible, path
from .kernels import BACKEND
from .transforms import (
    RationalTransform,
    TransformSpec,
    make_transformed_system,
    type1_transform,
    type2_transform,
    verify_transform,
)

__all__ = [
    "BACKEND",
    "ChristoffelOf",
    "ExplicitMoments",
    "IndexSeq",
    "IntervalLebesgue",
    "MomentFunctional",
    "PointMasses",
    "Poly",
    "RationalPerturb",
    "RationalTransform",
    "RootList",
    "Scaled",
    "Sum",
    "System",
    "TransformSpec",
    "TypeIIPoly",
    "TypeIVector",
    "christoffel",
    "det_rat",
    "explicit",
    "find_witnesses",
    "format_rat",
    "frame",
    "functional_from_json",
    "index_box",
    "is_admissible",
    "is_normal",
    "is_perfect_box",
    "make_transformed_system",
    "moment_matrix",
    "path",
    "rational_perturb",
    "render_poly",
    "solve_rat",
    "to_rat",
    "type1_normalized",
    "type1_transform",
    "type2_monic",
    "type2_transform",
    "uvarov_of",
    "verify_transform",
]
