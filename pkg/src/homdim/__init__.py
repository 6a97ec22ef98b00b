"""Exact relative homological dimensions for finite-dimensional quiver algebras."""

from .algebra import (
    AlgebraError,
    PresentedAlgebra,
    Quiver,
    SCAlgebra,
    endomorphism_algebra,
    path_algebra,
    to_sc_algebra,
)
from .exactla import Field, Matrix, kernel_basis, rank, solve
from .fdim import ClassOracle, FdimReport, add_oracle, f_dim, global_fdim_probe, parse_oracle, perp_oracle, \
    projectives_oracle
from .gorenstein import AdjointContext, d_reflexive_report, eta, ext_sup, g_class, g_dim, phi, psi
from .homology import ExtReport, ext_dim, minimal_resolution, pdim, projective_cover, syzygy
from .laws import LawResult, LawSuite, LawSuiteConfig, run_suite
from .rep import (
    RepError,
    RepMap,
    Representation,
    SCModule,
    SES,
    direct_sum,
    hom_space,
    indec_projective,
    simple,
)
from .verdict import No, Unknown, Verdict, Yes
from .workspace import Workspace, builtin_algebra, load_workspace

__version__ = "0.1.0"

__all__ = [
    "AlgebraError", "PresentedAlgebra", "Quiver", "SCAlgebra", "endomorphism_algebra", "path_algebra",
    "to_sc_algebra", "Field", "Matrix", "kernel_basis", "rank", "solve", "ClassOracle", "FdimReport",
    "add_oracle", "f_dim", "global_fdim_probe", "parse_oracle", "perp_oracle", "projectives_oracle",
    "AdjointContext", "d_reflexive_report", "eta", "ext_sup", "g_class", "g_dim", "phi", "psi", "ExtReport",
    "ext_dim", "minimal_resolution", "pdim", "projective_cover", "syzygy", "LawResult", "LawSuite",
    "LawSuiteConfig", "run_suite", "RepError", "RepMap", "Representation", "SCModule", "SES", "direct_sum",
    "hom_space", "indec_projective", "simple", "No", "Unknown", "Verdict", "Yes", "Workspace",
    "builtin_algebra", "load_workspace",
]
