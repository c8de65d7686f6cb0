"""K-theory of boundary crossed products of lattices in symmetric spaces."""

from .abelian import FgAbGroup, IntMatrix, cokernel, direct_sum, enumerate_extensions, ext, hom, snf, tor
from .classify import Verdict, compare, kk_group, kunneth_k, recover_euler
from .gysin import BundleCohomology, CaseTag, closed_form_cohomology, gysin_solver
from .ktheory import KTheoryResult, UnitKind, compute_k_theory
from .spaces import GradedGroup, SpaceInput, parse_space_file, validate

__all__ = [
    "BundleCohomology",
    "CaseTag",
    "FgAbGroup",
    "GradedGroup",
    "IntMatrix",
    "KTheoryResult",
    "SpaceInput",
    "UnitKind",
    "Verdict",
    "closed_form_cohomology",
    "cokernel",
    "compare",
    "compute_k_theory",
    "direct_sum",
    "enumerate_extensions",
    "ext",
    "gysin_solver",
    "hom",
    "kk_group",
    "kunneth_k",
    "parse_space_file",
    "recover_euler",
    "snf",
    "tor",
    "validate",
]
