"""Singularity type of a map-germ: finite, f.s.t., w.f.s.t. or not weakly finite."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

from .crit import CritTower, critical_tower
from .gb import DEFAULT_RADICAL_BOUND, LocalIdeal, QuotientDimension, local_quotient_dimension
from .germ import GermMap
from .modops import DEFAULT_MINOR_GUARD


def is_finite_restriction(f: GermMap, crit: Optional[LocalIdeal] = None) -> QuotientDimension:
    """Dimension of the fibre of f restricted to V(crit) over the closed point."""
    I = f.J_X + f.components
    if crit is not None:
        I = I + crit
    return local_quotient_dimension(I)


@dataclass
class SingTypeReport:
    verdict: str
    r: Optional[int]
    tower: CritTower
    dimensions: List[QuotientDimension] = field(default_factory=list)
    reason: Optional[str] = None

    @property
    def proven(self) -> bool:
        """False only for the inconclusive depth-limited verdict."""
        return self.reason != "depth-limit"

    def label(self) -> str:
        if self.verdict == "not-wfst":
            return f"not-wfst({self.reason})"
        return f"{self.verdict}({self.r})"


def _verdict(r: int) -> str:
    return {0: "finite", 1: "fst"}.get(r, "wfst")


def classify(
    f: GermMap,
    max_depth: int = 5,
    reduce: bool = True,
    bound: int = DEFAULT_RADICAL_BOUND,
    guard: int = DEFAULT_MINOR_GUARD,
) -> SingTypeReport:
    """Smallest r such that f restricted to Crit_r is finite; the map itself is level 0."""
    tower = critical_tower(f, max_depth, reduce, bound, guard)
    dims = [is_finite_restriction(f)]
    for lv in tower.levels[1:]:
        dims.append(is_finite_restriction(f, lv.crit))
    for r, d in enumerate(dims):
        if d.finite:
            return SingTypeReport(_verdict(r), r, tower, dims)
    term = tower.termination
    if term.startswith("stabilized"):
        reason = "stabilized"
    elif term.startswith("point-discriminant"):
        reason = "point-discriminant-nonfinite"
    elif term.startswith("empty"):
        raise AssertionError("an empty critical locus is always finite")
    else:
        reason = "depth-limit"
    return SingTypeReport("not-wfst", None, tower, dims, reason)
