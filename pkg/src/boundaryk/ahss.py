"""Torsion bounds from the Atiyah-Hirzebruch spectral sequence.

The torsion of ``K^0`` (resp. ``K^1``) is bounded in order and in number of
generators by the torsion of the even (resp. odd) cohomology.  With all
differentials set to zero, ``K^*`` is an iterated extension of the
cohomology groups of one parity; :func:`consistent_k_groups` enumerates
every such group.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import prod
from typing import Literal

from .abelian import (
    DEFAULT_EXTENSION_CAP,
    TRIVIAL,
    FgAbGroup,
    enumerate_extensions,
    torsion_generator_count,
    torsion_order,
)
from .ktheory import KTheoryResult
from .spaces import GradedGroup

log = logging.getLogger(__name__)

Parity = Literal["even", "odd"]


@dataclass(frozen=True)
class TorsionBounds:
    even_order_bound: int = 1
    odd_order_bound: int = 1
    even_generator_bound: int = 0
    odd_generator_bound: int = 0

    def order_bound(self, parity: Parity) -> int:
        return self.even_order_bound if parity == "even" else self.odd_order_bound

    def generator_bound(self, parity: Parity) -> int:
        return self.even_generator_bound if parity == "even" else self.odd_generator_bound


def _degrees(coh: GradedGroup, parity: Parity) -> list[int]:
    start = 0 if parity == "even" else 1
    return list(range(start, len(coh), 2))


def torsion_bounds(coh: GradedGroup) -> TorsionBounds:
    even, odd = _degrees(coh, "even"), _degrees(coh, "odd")
    return TorsionBounds(
        even_order_bound=prod(torsion_order(coh[i]) for i in even),
        odd_order_bound=prod(torsion_order(coh[i]) for i in odd),
        even_generator_bound=sum(torsion_generator_count(coh[i]) for i in even),
        odd_generator_bound=sum(torsion_generator_count(coh[i]) for i in odd),
    )


def k_parities(n: int) -> tuple[Parity, Parity]:
    """Cohomological parity feeding ``(K^0, K^1)`` after the shift by ``n``."""
    return ("even", "odd") if n % 2 == 0 else ("odd", "even")


def check_result(r: KTheoryResult, b: TorsionBounds, n: int) -> bool:
    """Whether the torsion of both K-groups is within the bounds ``b``."""
    if not r.exact:
        log.info("torsion-bounded result; bound check is vacuous")
        return True
    p0, p1 = k_parities(n)
    return (
        torsion_order(r.k0) <= b.order_bound(p0)
        and torsion_order(r.k1) <= b.order_bound(p1)
        and torsion_generator_count(r.k0) <= b.generator_bound(p0)
        and torsion_generator_count(r.k1) <= b.generator_bound(p1)
    )


def consistent_k_groups(
    coh: GradedGroup, parity: Parity, cap: int = DEFAULT_EXTENSION_CAP
) -> frozenset[FgAbGroup]:
    """All iterated extensions ``0 -> F^(s+1) -> F^s -> H^s -> 0`` over the given parity.

    Folded from the top degree down, starting from ``F = 0``.
    """
    candidates: set[FgAbGroup] = {TRIVIAL}
    for degree in reversed(_degrees(coh, parity)):
        quotient = coh[degree]
        step: set[FgAbGroup] = set()
        for sub in candidates:
            step |= enumerate_extensions(sub, quotient, cap=cap)
        candidates = step
    return frozenset(candidates)
