"""Complete colourings of K_p x K_q built from finite projective planes."""

from typing import List

try:
    from importlib.metadata import PackageNotFoundError, version

    __version__ = version("achromatic-planes")
except (ImportError, PackageNotFoundError):
    from achromatic_planes.version import read_version

    __version__ = read_version()

from achromatic_planes.bounds import (
    asymptotic_ratio,
    known_value,
    lemma1_constraints,
    product_bounds,
    theorem4_bounds,
    upper_bound_chain,
)
from achromatic_planes.colouring import ColourMatrix, verify_matrix
from achromatic_planes.constructions import build_colouring, build_ms, extend_plus_one
from achromatic_planes.errors import AchromaticError
from achromatic_planes.gf import field_create
from achromatic_planes.plane import ProjectivePlane, line_through, plane_construct, plane_verify
from achromatic_planes.solver import achromatic_exact

__all__: List[str] = [
    "AchromaticError",
    "ColourMatrix",
    "ProjectivePlane",
    "achromatic_exact",
    "asymptotic_ratio",
    "build_colouring",
    "build_ms",
    "extend_plus_one",
    "field_create",
    "known_value",
    "lemma1_constraints",
    "line_through",
    "plane_construct",
    "plane_verify",
    "product_bounds",
    "theorem4_bounds",
    "upper_bound_chain",
    "verify_matrix",
    "__version__",
]
