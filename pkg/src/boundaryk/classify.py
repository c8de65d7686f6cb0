"""Comparing boundary algebras through their K-theoretic invariants."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .abelian import FgAbGroup, ext, hom, sum_groups, tensor, tor, torsion_order
from .ktheory import HypothesisError, KTheoryResult, UnitKind
from .spaces import GradedGroup, SpaceInput


class Verdict(enum.Enum):
    ISOMORPHIC = "ISOMORPHIC"
    NOT_ISOMORPHIC = "NOT_ISOMORPHIC"
    UNDETERMINED = "UNDETERMINED"


@dataclass(frozen=True)
class Comparison:
    verdict: Verdict
    reasons: tuple[str, ...] = ()

    def __str__(self) -> str:
        if not self.reasons:
            return self.verdict.value
        return self.verdict.value + "\n" + "\n".join(f"  - {r}" for r in self.reasons)


def _unit_order(r: KTheoryResult) -> int | None:
    """Order of the unit class; ``None`` for infinite order."""
    kind = r.unit_class.kind
    if kind is UnitKind.TRIVIAL_CLASS:
        return 1
    if kind is UnitKind.TORSION_GENERATOR:
        return r.unit_class.order
    return None


def _label(r: KTheoryResult, side: str) -> str:
    return f"{side} ({r.name})" if r.name else side


def compare(r1: KTheoryResult, r2: KTheoryResult) -> Comparison:
    """Decide whether two boundary algebras are isomorphic.

    Differences in the K-groups or in the order of the unit class always
    separate.  Equality only proves isomorphism for closed rank-one spaces
    with chi != 1 (the Kirchberg-Phillips range); otherwise the answer is
    UNDETERMINED.
    """
    a, b = _label(r1, "A"), _label(r2, "B")
    if not (r1.exact and r2.exact):
        bounded = [x for x, r in ((a, r1), (b, r2)) if not r.exact]
        return Comparison(
            Verdict.UNDETERMINED,
            tuple(f"{x}: K0 torsion only known to divide |chi|" for x in bounded),
        )

    diffs = []
    for label, g1, g2 in (("K0", r1.k0, r2.k0), ("K1", r1.k1, r2.k1)):
        if g1 != g2:
            detail = f"{label} differs: {g1} vs {g2}"
            if g1.rank != g2.rank:
                detail += f" (rank {g1.rank} vs {g2.rank})"
            if torsion_order(g1) != torsion_order(g2):
                detail += f" (torsion order {torsion_order(g1)} vs {torsion_order(g2)})"
            diffs.append(detail)
    u1, u2 = _unit_order(r1), _unit_order(r2)
    if u1 != u2:
        diffs.append(f"unit class differs: {r1.unit_class} vs {r2.unit_class}")
    if diffs:
        return Comparison(Verdict.NOT_ISOMORPHIC, tuple(diffs))

    gaps = []
    for x, r in ((a, r1), (b, r2)):
        if r.source_rank != 1:
            gaps.append(f"{x}: rank {r.source_rank}, classification corollary needs rank 1")
        if not r.compact:
            gaps.append(f"{x}: noncompact, classification corollary needs a cocompact lattice")
        elif r.chi == 1:
            gaps.append(f"{x}: chi = 1 is excluded by the classification corollary")
    if gaps:
        return Comparison(Verdict.UNDETERMINED, ("K-data agree",) + tuple(gaps))
    return Comparison(
        Verdict.ISOMORPHIC,
        (f"K0 = {r1.k0}, K1 = {r1.k1}, unit: {r1.unit_class} on both sides",),
    )


def recover_euler(r: KTheoryResult) -> int | None:
    """``|chi|`` read off as the torsion order of ``K^0``, when the unit is torsion."""
    if not r.exact or r.unit_class.kind is not UnitKind.TORSION_GENERATOR:
        return None
    return torsion_order(r.k0)


def _require_exact(*results: KTheoryResult) -> None:
    for r in results:
        if not r.exact:
            raise HypothesisError(f"{r.name or 'result'}: K0 is only torsion-bounded")


def kk_group(r1: KTheoryResult, r2: KTheoryResult) -> FgAbGroup:
    """``Hom(K0, K0') + Ext(K0, K0')``, the displayed UCT formula with K0 slots only."""
    _require_exact(r1, r2)
    return hom(r1.k0, r2.k0) + ext(r1.k0, r2.k0)


def kk_group_graded(r1: KTheoryResult, r2: KTheoryResult) -> FgAbGroup:
    """Full UCT: ``Hom(K0,K0') + Hom(K1,K1') + Ext(K0,K1') + Ext(K1,K0')``."""
    _require_exact(r1, r2)
    return sum_groups([
        hom(r1.k0, r2.k0),
        hom(r1.k1, r2.k1),
        ext(r1.k0, r2.k1),
        ext(r1.k1, r2.k0),
    ])


def kunneth_pair(
    a: tuple[FgAbGroup, FgAbGroup], b: tuple[FgAbGroup, FgAbGroup]
) -> tuple[FgAbGroup, FgAbGroup]:
    """Z/2-graded Kunneth formula on ``(K0, K1)`` pairs, split."""
    a0, a1 = a
    b0, b1 = b
    k0 = sum_groups([tensor(a0, b0), tensor(a1, b1), tor(a0, b1), tor(a1, b0)])
    k1 = sum_groups([tensor(a0, b1), tensor(a1, b0), tor(a0, b0), tor(a1, b1)])
    return k0, k1


def kunneth_k(ra: KTheoryResult, rb: KTheoryResult) -> tuple[FgAbGroup, FgAbGroup]:
    """Example construction only: Kunneth applied to the K-groups of two results."""
    _require_exact(ra, rb)
    return kunneth_pair((ra.k0, ra.k1), (rb.k0, rb.k1))


def product_cohomology(a: GradedGroup, b: GradedGroup) -> GradedGroup:
    """``H^k(X x Y) = sum_{i+j=k} H^i x H^j  +  sum_{i+j=k+1} Tor(H^i, H^j)``."""
    top = len(a) + len(b) - 2
    out = []
    for k in range(top + 1):
        parts = [tensor(a[i], b[k - i]) for i in range(k + 1)]
        parts += [tor(a[i], b[k + 1 - i]) for i in range(k + 2)]
        out.append(sum_groups(parts))
    return GradedGroup(out)


def product_space(
    s1: SpaceInput, s2: SpaceInput, assume_baum_connes: bool = False, name: str | None = None
) -> SpaceInput:
    """The quotient of ``X1 x X2`` by ``Gamma1 x Gamma2``."""
    compact = s1.compact and s2.compact
    return SpaceInput(
        name=name or f"{s1.name} x {s2.name}",
        dim=s1.dim + s2.dim,
        rank=s1.rank + s2.rank,
        compact=compact,
        orientable=s1.orientable and s2.orientable,
        cohomology=product_cohomology(s1.cohomology, s2.cohomology),
        euler=s1.euler * s2.euler if compact else None,
        assume_baum_connes=assume_baum_connes,
    )
