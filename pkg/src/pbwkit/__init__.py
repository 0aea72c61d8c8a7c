"""pbwkit: exact-arithmetic PBW-deformation checking for finitely
presented connected graded algebras over Q or F_p.

The decision pipeline extracts the top-part relations R_P of a filtered
deformation P, minimizes them to a bimodule of relations, bounds the
number of Jacobi conditions by the homological complexity of the
associated graded algebra, and cross-validates every Jacobi verdict
against the annihilator of the central variable in the extension
T[z]/<P*>.
"""

from importlib import resources

from .deformation import (CheckResult, FilteredSubspace, FilteredMap,
                          JacobiLadder, apply_alpha, extract_alpha,
                          gr_dimension, lift_presentation, minimize_relations,
                          pbw_check, pn_ladder, pure_jacobi_check, rp_of)
from .errors import PBWError
from .extension import ExtensionEngine, build_pz, engine_for, rees_identity_check
from .freealg import (Element, HomogenizedElement, format_element, homogenize,
                      leading_homogeneous, multiply, parse_element, project)
from .gradedring import GradedSubspace, PresentedRing
from .homology import TorTable, complexity, purity_classify, tor3_resolution, tor_bar
from .linalg import (QQ, PrimeField, SparseMatrix, kernel, rref, subspace_ops)
from .presentations import Presentation, Report, parse_presentation

__version__ = "0.1.0"


def gallery_path(name):
    """Filesystem path of a bundled gallery presentation, e.g.
    gallery_path("heisenberg.pbw")."""
    return resources.files(__name__).joinpath("gallery", name)


def gallery_names():
    root = resources.files(__name__).joinpath("gallery")
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".pbw"))
