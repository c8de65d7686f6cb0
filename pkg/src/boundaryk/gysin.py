"""Cohomology of the unit tangent bundle ``E -> B`` with fibre ``S^(n-1)``.

Two independent routes are provided and are expected to agree:

* :func:`closed_form_cohomology` writes down the answer case by case;
* :func:`gysin_solver` walks the Gysin long exact sequence

      ... -> H^(i-n)(B) --(cup e)--> H^i(B) -> H^i(E) -> H^(i-n+1)(B) --(cup e)--> H^(i+1)(B) -> ...

  and reads each ``H^i(E)`` off as an extension of a kernel by a cokernel.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .abelian import Z, FgAbGroup, GroupMap, map_cokernel, map_kernel
from .spaces import GradedGroup, SpaceInput


class CaseTag(enum.Enum):
    COMPACT_CHI_0 = "compact, chi = 0"
    COMPACT_CHI_1 = "compact, chi = 1"
    COMPACT_CHI_OTHER = "compact, chi not in {0, 1}"
    NONCOMPACT = "noncompact"


class ExtensionUndetermined(ArithmeticError):
    """A Gysin extension whose quotient has torsion, so splitting is not forced."""


@dataclass(frozen=True)
class BundleCohomology:
    """``H^i(E)`` for ``0 <= i <= 2n-1``.

    ``exact`` is False when the base has torsion (groups are still right, but
    K-theory cannot be read off).  ``formal_analogue`` marks rank >= 2 inputs,
    where the fibre is not a sphere and the same formulas are applied as given.
    """

    groups: GradedGroup
    case: CaseTag
    exact: bool = True
    formal_analogue: bool = False

    def __getitem__(self, degree: int) -> FgAbGroup:
        return self.groups[degree]

    @property
    def top_degree(self) -> int:
        return len(self.groups) - 1


def case_tag(s: SpaceInput) -> CaseTag:
    if not s.compact:
        return CaseTag.NONCOMPACT
    if s.euler == 0:
        return CaseTag.COMPACT_CHI_0
    if s.euler == 1:
        return CaseTag.COMPACT_CHI_1
    return CaseTag.COMPACT_CHI_OTHER


def _bundle(s: SpaceInput, groups: list[FgAbGroup]) -> BundleCohomology:
    return BundleCohomology(
        groups=GradedGroup(groups),
        case=case_tag(s),
        exact=not s.cohomology.has_torsion(),
        formal_analogue=s.rank >= 2,
    )


def closed_form_cohomology(s: SpaceInput) -> BundleCohomology:
    """Case-by-case answer.

    Below degree ``n-1`` and above ``n`` the groups are shifted copies of the
    base.  In the middle::

        case              H^(n-1)(E)          H^n(E)
        closed, chi = 0   H^(n-1)(B) + Z      H^1(B) + Z
        closed, chi = 1   H^(n-1)(B)          H^1(B)
        closed, other     H^(n-1)(B)          H^1(B) + Z/|chi|
        open              H^(n-1)(B) + Z      H^1(B)
    """
    n = s.dim
    case = case_tag(s)
    h = s.h
    out: list[FgAbGroup] = []
    for i in range(2 * n):
        if i < n - 1:
            out.append(h(i))
        elif i > n:
            out.append(h(i - n + 1))
        elif i == n - 1:
            # the extra Z is ker(chi: Z -> Z), present only when chi = 0 or B is open
            grows = case in (CaseTag.COMPACT_CHI_0, CaseTag.NONCOMPACT)
            out.append(h(n - 1) + Z if grows else h(n - 1))
        elif case is CaseTag.COMPACT_CHI_0:
            out.append(h(1) + Z)
        elif case is CaseTag.COMPACT_CHI_OTHER:
            out.append(h(1) + FgAbGroup.cyclic(abs(s.euler)))
        else:
            out.append(h(1))
    return _bundle(s, out)


def euler_cup(s: SpaceInput, degree: int) -> GroupMap:
    """Cup product with the Euler class, ``H^degree(B) -> H^(degree+n)(B)``.

    The base has no cohomology above ``n``, so the only map that can be
    nonzero starts in degree 0.  There ``H^0 = Z`` and, for closed ``B``,
    ``H^n = Z`` with the map being multiplication by ``chi``; for open ``B``
    the target ``H^n`` vanishes.
    """
    source, target = s.h(degree), s.h(degree + s.dim)
    if degree < 0 or degree + s.dim > s.dim:
        return GroupMap.zero(source, target)
    if degree == 0 and s.compact:
        if source != Z or target != Z:
            raise ValueError("closed base needs H^0 = H^n = Z")
        return GroupMap(source, target, ((s.euler,),))
    return GroupMap.zero(source, target)


def gysin_solver(s: SpaceInput) -> BundleCohomology:
    """Solve the Gysin sequence degree by degree.

    ``0 -> coker(cup e: H^(i-n) -> H^i) -> H^i(E) -> ker(cup e: H^(i-n+1) -> H^(i+1)) -> 0``

    The extension splits whenever the kernel is free.  For the bases allowed
    here the kernel sits inside ``H^0`` or ``H^1`` (both free) whenever the
    cokernel is nonzero, so this never fails on validated input.
    """
    n = s.dim
    out: list[FgAbGroup] = []
    for i in range(2 * n):
        sub = map_cokernel(euler_cup(s, i - n))
        quot = map_kernel(euler_cup(s, i - n + 1))
        if quot.is_free or sub.is_trivial:
            out.append(sub + quot)
        else:
            raise ExtensionUndetermined(
                f"degree {i}: 0 -> {sub} -> H^{i}(E) -> {quot} -> 0 need not split"
            )
    return _bundle(s, out)


def euler_characteristic(bundle: BundleCohomology) -> int:
    return bundle.groups.euler_characteristic()


def explain(s: SpaceInput) -> list[str]:
    """Degree bookkeeping behind :func:`closed_form_cohomology`, one line per degree."""
    n = s.dim
    case = case_tag(s)
    lines = [f"case: {case.value} (n = {n})"]
    for i in range(2 * n):
        if i < n - 1:
            src = f"H{i}(B)"
        elif i > n:
            src = f"H{i - n + 1}(B)"
        elif i == n - 1:
            grows = case in (CaseTag.COMPACT_CHI_0, CaseTag.NONCOMPACT)
            src = f"H{n - 1}(B) + Z" if grows else f"H{n - 1}(B)"
        elif case is CaseTag.COMPACT_CHI_0:
            src = "H1(B) + Z"
        elif case is CaseTag.COMPACT_CHI_OTHER:
            src = f"H1(B) + Z/|chi| (|chi| = {abs(s.euler)})"
        else:
            src = "H1(B)"
        lines.append(f"H{i}(E) = {src}")
    return lines

