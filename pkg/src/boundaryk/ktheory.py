"""K-theory of the boundary crossed product from the bundle cohomology.

The crossed product is KK-equivalent to functions on the unit tangent
bundle ``E`` with a shift by ``n``, so ``K^0`` collects the degrees of ``E``
congruent to ``n`` mod 2 and ``K^1`` the others.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .abelian import FgAbGroup, sum_groups
from .gysin import BundleCohomology, CaseTag, closed_form_cohomology
from .spaces import SpaceInput, torsion_warnings, validate


class HypothesisError(Exception):
    """The input does not satisfy the hypotheses needed for the requested claim."""


class UnitKind(enum.Enum):
    TRIVIAL_CLASS = "trivial"
    FREE_GENERATOR = "free generator"
    TORSION_GENERATOR = "torsion generator"


@dataclass(frozen=True)
class UnitClass:
    """Class of the unit in ``K^0``; ``order`` is ``None`` when only known to divide |chi|."""

    kind: UnitKind
    order: int | None = None

    def __str__(self) -> str:
        if self.kind is UnitKind.TORSION_GENERATOR:
            return f"torsion generator of order {self.order if self.order is not None else 't'}"
        return self.kind.value


class DeterminacyKind(enum.Enum):
    EXACT = "exact"
    TORSION_BOUNDED = "torsion-bounded"


@dataclass(frozen=True)
class Determinacy:
    kind: DeterminacyKind = DeterminacyKind.EXACT
    free_rank: int | None = None
    torsion_divides: int | None = None

    @property
    def exact(self) -> bool:
        return self.kind is DeterminacyKind.EXACT


EXACT = Determinacy()


@dataclass(frozen=True)
class KTheoryResult:
    """K-groups of the boundary algebra.

    For torsion-bounded results ``k0`` holds only the known free part
    ``Z^s``; the torsion summand ``Z/t`` with ``t | |chi|`` is carried by
    ``determinacy`` and rendered symbolically.
    """

    k0: FgAbGroup
    k1: FgAbGroup
    unit_class: UnitClass
    determinacy: Determinacy
    source_rank: int
    n: int
    compact: bool
    chi: int | None
    case: CaseTag
    name: str = ""
    bundle: BundleCohomology | None = None

    @property
    def exact(self) -> bool:
        return self.determinacy.exact

    def k0_str(self) -> str:
        if self.exact:
            return str(self.k0)
        return f"{self.k0} + Z/t, t | {self.determinacy.torsion_divides}"

    def summary(self) -> str:
        return f"K0 = {self.k0_str()}, K1 = {self.k1}, unit: {self.unit_class}"


def assemble_k(bundle: BundleCohomology, n: int) -> tuple[FgAbGroup, FgAbGroup]:
    """``(sum of H^i(E) with i = n mod 2, sum with i = n+1 mod 2)``."""
    if not bundle.exact:
        raise HypothesisError(
            "base cohomology has torsion; K-groups are not determined by the Chern character"
        )
    degrees = range(len(bundle.groups))
    k0 = sum_groups(bundle[i] for i in degrees if (i - n) % 2 == 0)
    k1 = sum_groups(bundle[i] for i in degrees if (i - n) % 2 == 1)
    return k0, k1


def _check_hypotheses(s: SpaceInput) -> None:
    violations = validate(s)
    if violations:
        raise HypothesisError("invalid space: " + "; ".join(violations))
    warnings = torsion_warnings(s)
    if warnings:
        raise HypothesisError("cohomology must be torsion-free: " + "; ".join(warnings))


def _unit_class(case: CaseTag, chi: int | None) -> UnitClass:
    # chi = -1 gives a unit of order 1, i.e. trivial
    if case is CaseTag.COMPACT_CHI_1 or (case is CaseTag.COMPACT_CHI_OTHER and abs(chi) == 1):
        return UnitClass(UnitKind.TRIVIAL_CLASS)
    if case is CaseTag.COMPACT_CHI_OTHER:
        return UnitClass(UnitKind.TORSION_GENERATOR, abs(chi))
    return UnitClass(UnitKind.FREE_GENERATOR)


def _result(s: SpaceInput, bundle, k0, k1, unit, determinacy) -> KTheoryResult:
    return KTheoryResult(
        k0=k0, k1=k1, unit_class=unit, determinacy=determinacy,
        source_rank=s.rank, n=s.dim, compact=s.compact,
        chi=s.euler if s.compact else None, case=bundle.case,
        name=s.name, bundle=bundle,
    )


def boundary_k_theory_rank1(s: SpaceInput) -> KTheoryResult:
    if s.rank != 1:
        raise HypothesisError(f"rank-one formulas need rank 1, got rank {s.rank}")
    _check_hypotheses(s)
    bundle = closed_form_cohomology(s)
    k0, k1 = assemble_k(bundle, s.dim)
    return _result(s, bundle, k0, k1, _unit_class(bundle.case, s.euler), EXACT)


def furstenberg_k_theory(s: SpaceInput) -> KTheoryResult:
    """Higher rank.  Exact unless the space is closed with chi not in {0, 1}.

    In that case ``K^1`` is still exact but ``K^0 = Z^s + Z/t`` with only
    ``t | |chi|`` known, and the unit generates the ``Z/t``.
    """
    if s.rank < 2:
        raise HypothesisError(f"higher-rank formulas need rank >= 2, got rank {s.rank}")
    if not s.assume_baum_connes:
        raise HypothesisError(
            "rank >= 2 requires the Baum-Connes attestation (assume_baum_connes = true)"
        )
    _check_hypotheses(s)
    bundle = closed_form_cohomology(s)
    k0, k1 = assemble_k(bundle, s.dim)
    if bundle.case is not CaseTag.COMPACT_CHI_OTHER or abs(s.euler) == 1:
        return _result(s, bundle, k0, k1, _unit_class(bundle.case, s.euler), EXACT)
    bounded = Determinacy(
        DeterminacyKind.TORSION_BOUNDED, free_rank=k0.rank, torsion_divides=abs(s.euler)
    )
    unit = UnitClass(UnitKind.TORSION_GENERATOR, None)
    return _result(s, bundle, FgAbGroup(k0.rank), k1, unit, bounded)


def compute_k_theory(s: SpaceInput) -> KTheoryResult:
    """Route by rank."""
    if s.rank >= 2:
        return furstenberg_k_theory(s)
    return boundary_k_theory_rank1(s)

