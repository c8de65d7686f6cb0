"""Input model for a locally symmetric space and the ``.space`` file format."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .abelian import TRIVIAL, Z, FgAbGroup

log = logging.getLogger(__name__)


class SpaceFileError(ValueError):
    """Malformed space file.  ``line`` is 1-based, or ``None`` for whole-file errors."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class GradedGroup:
    """Degree-indexed groups; degrees outside ``0..len-1`` are trivial."""

    groups: tuple[FgAbGroup, ...] = ()

    def __init__(self, groups: Iterable[FgAbGroup] = ()):
        object.__setattr__(self, "groups", tuple(groups))

    def __getitem__(self, degree: int) -> FgAbGroup:
        if 0 <= degree < len(self.groups):
            return self.groups[degree]
        return TRIVIAL

    def __len__(self) -> int:
        return len(self.groups)

    def __iter__(self) -> Iterator[FgAbGroup]:
        return iter(self.groups)

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.groups) + ")"

    @classmethod
    def parse(cls, items: Sequence[str]) -> GradedGroup:
        return cls(FgAbGroup.parse(t) for t in items)

    def ranks(self) -> list[int]:
        return [g.rank for g in self.groups]

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * g.rank for i, g in enumerate(self.groups))

    def has_torsion(self) -> bool:
        return any(g.invariant_factors for g in self.groups)


@dataclass(frozen=True)
class SpaceInput:
    """The invariants of a quotient ``Gamma\\X`` the calculator works from.

    ``dim`` is the dimension of ``X``, ``rank`` its real rank.  ``euler`` is
    declared for compact spaces and must be ``None`` otherwise.
    ``assume_baum_connes`` is a user attestation required for rank >= 2.
    """

    name: str
    dim: int
    rank: int
    compact: bool
    orientable: bool
    cohomology: GradedGroup
    euler: int | None = None
    assume_baum_connes: bool = False

    def h(self, degree: int) -> FgAbGroup:
        return self.cohomology[degree]


def validate(s: SpaceInput) -> list[str]:
    """Violations of the standing hypotheses, in a fixed rule order.

    Each entry is ``"<rule>: <detail>"``.  Torsion in cohomology is not a
    violation; it is logged as a warning (see :func:`torsion_warnings`).
    """
    v: list[str] = []
    n = s.dim
    if n < 2:
        v.append(f"dimension: dim must be >= 2, got {n}")
    if s.rank < 1:
        v.append(f"rank: rank must be >= 1, got {s.rank}")
    if len(s.cohomology) != n + 1:
        v.append(
            f"cohomology-length: expected degrees 0..{n} ({n + 1} groups), "
            f"got {len(s.cohomology)}"
        )
    if not s.orientable:
        v.append("orientable: the space must be orientable")
    if s.h(0) != Z:
        v.append(f"connected: H0 must be Z, got {s.h(0)}")
    if s.h(1).invariant_factors:
        v.append(f"h1-torsion-free: H1 is always torsion-free, got {s.h(1)}")

    alt_sum = s.cohomology.euler_characteristic()
    if s.compact:
        if s.h(n) != Z:
            v.append(f"top-degree: closed orientable space needs H{n} = Z, got {s.h(n)}")
        if s.euler is None:
            v.append("euler-missing: euler is required for compact spaces")
        else:
            if s.euler != alt_sum:
                v.append(
                    f"euler-mismatch: declared euler = {s.euler} but the alternating "
                    f"sum of ranks is {alt_sum}"
                )
            if n % 2 == 1 and s.euler != 0:
                v.append(f"euler-odd-dim: dim {n} is odd so euler must be 0, got {s.euler}")
        if not s.cohomology.has_torsion():
            ranks = [s.h(i).rank for i in range(n + 1)]
            for i in range(n // 2 + 1):
                if ranks[i] != ranks[n - i]:
                    v.append(
                        f"poincare-duality: rank H{i} = {ranks[i]} but "
                        f"rank H{n - i} = {ranks[n - i]}"
                    )
    else:
        if not s.h(n).is_trivial:
            v.append(f"noncompact-top-degree: H{n} must be 0 for a noncompact space, got {s.h(n)}")
        if s.euler is not None:
            v.append("euler-noncompact: euler is only declared for compact spaces")

    for w in torsion_warnings(s):
        log.warning("%s: %s", s.name, w)
    return v


def torsion_warnings(s: SpaceInput) -> list[str]:
    return [
        f"H{i} = {g} has torsion; K-theory formulas will not be claimed exact"
        for i, g in enumerate(s.cohomology)
        if g.invariant_factors
    ]


def euler_characteristic(s: SpaceInput) -> int:
    if s.compact and s.euler is not None:
        return s.euler
    return s.cohomology.euler_characteristic()


# ---------------------------------------------------------------------------
# file format

_SCALAR_KEYS = ("name", "dim", "rank", "compact", "orientable", "euler", "assume_baum_connes")
_MANDATORY = ("name", "dim", "rank", "compact", "orientable")


def _parse_bool(text: str, lineno: int, key: str) -> bool:
    low = text.lower()
    if low in ("true", "yes", "1"):
        return True
    if low in ("false", "no", "0"):
        return False
    raise SpaceFileError(f"{key} must be true or false, got {text!r}", lineno)


def _parse_int(text: str, lineno: int, key: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise SpaceFileError(f"{key} must be an integer, got {text!r}", lineno) from None


def parse_space_file(text: str) -> SpaceInput:
    """Parse the line-oriented ``key = value`` format (``#`` starts a comment)."""
    values: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SpaceFileError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise SpaceFileError("empty key", lineno)
        is_degree = key[0] == "H" and key[1:].isdigit()
        if key not in _SCALAR_KEYS and not is_degree:
            raise SpaceFileError(f"unknown key {key!r}", lineno)
        if key in values:
            raise SpaceFileError(f"duplicate key {key!r}", lineno)
        values[key] = (value, lineno)

    for key in _MANDATORY:
        if key not in values:
            raise SpaceFileError(f"missing mandatory key {key!r}")

    dim = _parse_int(*values["dim"], "dim")
    rank = _parse_int(*values["rank"], "rank")
    compact = _parse_bool(*values["compact"], "compact")
    orientable = _parse_bool(*values["orientable"], "orientable")
    euler = _parse_int(*values["euler"], "euler") if "euler" in values else None
    bc = (
        _parse_bool(*values["assume_baum_connes"], "assume_baum_connes")
        if "assume_baum_connes" in values
        else False
    )

    groups = []
    for i in range(max(dim, -1) + 1):
        key = f"H{i}"
        if key not in values:
            raise SpaceFileError(f"missing mandatory key {key!r}")
        text_i, lineno = values[key]
        try:
            groups.append(FgAbGroup.parse(text_i))
        except ValueError as exc:
            raise SpaceFileError(f"{key}: {exc}", lineno) from None
    extra = sorted(
        (lineno, k) for k, (_, lineno) in values.items()
        if k[0] == "H" and k[1:].isdigit() and int(k[1:]) > dim
    )
    if extra:
        lineno, k = extra[0]
        raise SpaceFileError(f"{k} is above the dimension {dim}", lineno)

    return SpaceInput(
        name=values["name"][0],
        dim=dim,
        rank=rank,
        compact=compact,
        orientable=orientable,
        cohomology=GradedGroup(groups),
        euler=euler,
        assume_baum_connes=bc,
    )


def format_space_file(s: SpaceInput) -> str:
    lines = [
        f"name = {s.name}",
        f"dim = {s.dim}",
        f"rank = {s.rank}",
        f"compact = {str(s.compact).lower()}",
        f"orientable = {str(s.orientable).lower()}",
    ]
    if s.euler is not None:
        lines.append(f"euler = {s.euler}")
    if s.assume_baum_connes:
        lines.append("assume_baum_connes = true")
    lines.extend(f"H{i} = {g}" for i, g in enumerate(s.cohomology))
    return "\n".join(lines) + "\n"
