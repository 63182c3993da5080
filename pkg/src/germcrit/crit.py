"""Critical modules, critical loci, discriminants and the higher critical tower."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .gb import (
    DEFAULT_RADICAL_BOUND,
    LocalIdeal,
    bounded_radical_membership,
    ideal_equal,
    krull_dimension,
    local_quotient_dimension,
    sqf_part,
)
from .germ import DerivationModule, GermMap, apply_derivation, image_ideal, is_point_ideal, log_derivations
from .modops import (
    DEFAULT_MINOR_GUARD,
    ModulePresentation,
    Submodule,
    fitting_ideal,
    kernel_of_row_matrix,
    minimize,
    presentation_of_subquotient,
    prune,
)
from .ring import PolyRing, compose

REDUCED = "reduced"


def fallback_certificate(bound: int) -> str:
    return f"unreduced-fallback({bound})"


@dataclass
class Reduction:
    ideal: LocalIdeal
    certificate: str
    method: str


def _monomial_radical(I: LocalIdeal) -> LocalIdeal:
    ring = I.ring
    gens = []
    for g in I.standard_basis():
        (e,) = g.terms
        gens.append(ring.monomial(tuple(1 if k else 0 for k in e)))
    return LocalIdeal(ring, gens)


def reduce_ideal(I: LocalIdeal, bound: int = DEFAULT_RADICAL_BOUND) -> Reduction:
    """Radical of I where it can be certified, else I enlarged by square-free parts of its generators."""
    ring = I.ring
    if I.is_unit_ideal():
        return Reduction(LocalIdeal(ring, [ring.one]), REDUCED, "unit")
    sb = I.standard_basis()
    if not sb:
        return Reduction(I, REDUCED, "zero")
    if local_quotient_dimension(I).finite:
        return Reduction(LocalIdeal(ring, ring.gens()), REDUCED, "zero-dimensional")
    if len(sb) == 1:
        return Reduction(LocalIdeal(ring, [sqf_part(sb[0])]), REDUCED, "principal")
    if all(g.is_monomial() for g in sb):
        return Reduction(_monomial_radical(I), REDUCED, "monomial")
    extra = []
    for g in sb:
        s = sqf_part(g)
        if s != g and not I.contains(s) and bounded_radical_membership(s, I, bound).member:
            extra.append(s)
    return Reduction(I + extra if extra else I, fallback_certificate(bound), "square-free-generators")


def _row(f: GermMap, q) -> List:
    return [compose(q.diff(l), f.components, ring=f.source) for l in range(f.m)]


def tangent_module(f: GermMap, Q: LocalIdeal, S: Optional[LocalIdeal] = None) -> Submodule:
    """{h in (R/S)^m : dq|_f(h) in S for every generator q of Q}."""
    S = S if S is not None else f.J_X
    quotient = S if S.all_gens() else None
    rows = [_row(f, q) for q in Q.all_gens()]
    return kernel_of_row_matrix(rows, f.m, f.source, quotient)


def derivation_image(f: GermMap, derivations: DerivationModule, S: Optional[LocalIdeal] = None) -> Submodule:
    """The vectors xi(f) = (xi(f_1), ..., xi(f_m)) over R/S."""
    S = S if S is not None else f.J_X
    quotient = S if S.all_gens() else None
    vecs = [[apply_derivation(xi, c) for c in f.components] for xi in derivations.gens]
    return minimize(Submodule(f.source, f.m, vecs, quotient))


def critical_module(
    f: GermMap,
    level: int = 0,
    crit_ideals: Sequence[LocalIdeal] = (),
    disc: Optional[LocalIdeal] = None,
) -> ModulePresentation:
    """Presentation of C_{level+1} = T_{Crit_j -> Delta_j} / (derivations along the chain applied to f).

    ``crit_ideals`` holds I_{Crit_1}, ..., I_{Crit_j} (j = level); ``disc`` is
    I_{Delta_j} (defaults to the image of f at level 0).
    """
    if len(crit_ideals) != level:
        raise ValueError(f"level {level} needs {level} prior critical ideals")
    S = crit_ideals[-1] if level else f.J_X
    if disc is None:
        disc = image_ideal(f, S if level else None).ideal
    T = tangent_module(f, disc, S)
    ders = log_derivations(f.source, [f.J_X] + list(crit_ideals))
    D = derivation_image(f, ders, S)
    return presentation_of_subquotient(T, D)


@dataclass
class CritResult:
    ideal: LocalIdeal
    unreduced: LocalIdeal
    certificate: str
    presentation: Optional[ModulePresentation]
    target_ideal: LocalIdeal
    flags: List[str] = field(default_factory=list)


def critical_locus(
    f: GermMap,
    reduce: bool = True,
    bound: int = DEFAULT_RADICAL_BOUND,
    guard: int = DEFAULT_MINOR_GUARD,
) -> CritResult:
    """Fitt_0 of the critical module plus J_X; the target is replaced by the image of f first."""
    img = image_ideal(f)
    flags = list(img.flags)
    if is_point_ideal(img.ideal):
        flags.append("point-target")
        return CritResult(f.J_X, f.J_X, REDUCED if reduce else "unreduced", None, img.ideal, flags)
    P = critical_module(f, 0, (), img.ideal)
    fitt = fitting_ideal(P, 0, guard) + f.J_X
    if not reduce:
        return CritResult(fitt, fitt, "unreduced", P, img.ideal, flags)
    red = reduce_ideal(fitt, bound)
    return CritResult(red.ideal, fitt, red.certificate, P, img.ideal, flags)


def discriminant(f: GermMap, crit: LocalIdeal) -> LocalIdeal:
    """Ideal of (the closure of) f(V(crit))."""
    return image_ideal(f, crit).ideal


@dataclass
class CritLevel:
    index: int
    crit: LocalIdeal
    disc: LocalIdeal
    presentation: Optional[ModulePresentation] = None
    certificate: str = REDUCED
    flags: List[str] = field(default_factory=list)

    def module_rank(self) -> Optional[int]:
        """Number of generators of the pruned critical-module presentation."""
        if self.presentation is None:
            return None
        return prune(self.presentation).ngens


@dataclass
class CritTower:
    map: GermMap
    levels: List[CritLevel]
    termination: str

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def crit_ideals(self) -> List[LocalIdeal]:
        return [lv.crit for lv in self.levels]

    def disc_ideals(self) -> List[LocalIdeal]:
        return [lv.disc for lv in self.levels]


def critical_tower(
    f: GermMap,
    max_depth: int = 5,
    reduce: bool = True,
    bound: int = DEFAULT_RADICAL_BOUND,
    guard: int = DEFAULT_MINOR_GUARD,
) -> CritTower:
    """X = Crit_0 > Crit_1 > ... and Y > Delta_0 > Delta_1 > ... until a termination rule fires."""
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    img = image_ideal(f)
    levels = [CritLevel(0, f.J_X, img.ideal, None, REDUCED, list(img.flags))]
    prior: List[LocalIdeal] = []
    j = 0
    while True:
        cur = levels[j]
        if is_point_ideal(cur.disc):
            termination = f"point-discriminant({j})"
            break
        if j >= max_depth:
            termination = "depth-limit"
            break
        P = critical_module(f, j, prior, cur.disc)
        fitt = fitting_ideal(P, 0, guard) + cur.crit
        if reduce:
            red = reduce_ideal(fitt, bound)
            crit, cert = red.ideal, red.certificate
        else:
            crit, cert = fitt, "unreduced"
        if crit.is_unit_ideal():
            disc = LocalIdeal(f.target, [f.target.one])
        else:
            disc = discriminant(f, crit)
        levels.append(CritLevel(j + 1, crit, disc, P, cert, []))
        prior.append(crit)
        j += 1
        if crit.is_unit_ideal():
            termination = f"empty({j})"
            break
        if ideal_equal(crit, cur.crit):
            termination = f"stabilized({j})"
            break
    return CritTower(f, levels, termination)


class CoveringError(ValueError):
    pass


@dataclass
class CoveringReport:
    crit: LocalIdeal
    projected_crit: LocalIdeal
    equal: bool
    certified: bool
    ramification: LocalIdeal
    preimage: LocalIdeal
    reasons: List[str] = field(default_factory=list)

    @property
    def conclusion(self) -> str:
        return "lemma-guaranteed" if self.certified else "computed-not-lemma-guaranteed"


def _equidimensional(C: LocalIdeal, J_X: LocalIdeal) -> Optional[str]:
    """A reason why every component of V(C) has the same dimension, or None."""
    if C.is_unit_ideal():
        return "empty"
    if not J_X.is_zero_ideal():
        return None
    sb = C.standard_basis()
    if not sb:
        return "whole-space"
    if local_quotient_dimension(C).finite:
        return "zero-dimensional"
    if len(sb) == 1:
        return "hypersurface"
    if all(g.is_monomial() and g.degree() == 1 for g in sb):
        return "coordinate-subspace"
    return None


def _certify(name: str, C: LocalIdeal, P: LocalIdeal, J_X: LocalIdeal) -> tuple:
    if P.is_unit_ideal():
        return True, f"{name}: preimage of ramification is empty"
    if C.is_unit_ideal():
        return True, f"{name}: empty"
    why = _equidimensional(C, J_X)
    if why is None:
        return False, f"{name}: equidimensionality not certified"
    dc = krull_dimension(C)
    dcp = krull_dimension(C + P)
    if dcp < dc:
        return True, f"{name}: {why} of dim {dc}, meets the preimage in dim {dcp}"
    return False, f"{name}: a component of dim {dc} may lie in the preimage (dim {dcp})"


def ramification_ideal(Y: LocalIdeal, keep: Sequence[str], guard: int = DEFAULT_MINOR_GUARD) -> LocalIdeal:
    """Fitt_0 of Omega_{Y/k^r} for the projection of Y onto the ``keep`` coordinates, plus I_Y."""
    ring = Y.ring
    dropped = [v for v in ring.names if v not in keep]
    if not dropped:
        return LocalIdeal(ring, [ring.one])
    relations = [[q.diff(v) for v in dropped] for q in Y.all_gens()]
    quotient = Y if Y.all_gens() else None
    P = ModulePresentation(ring, quotient, len(dropped), [r for r in relations if any(r)])
    return fitting_ideal(P, 0, guard) + Y


def crit_via_covering(
    f: GermMap,
    keep: Sequence[str],
    bound: int = DEFAULT_RADICAL_BOUND,
    guard: int = DEFAULT_MINOR_GUARD,
) -> CoveringReport:
    """Compare Crit(f) with Crit(pi o f) for the coordinate projection pi onto ``keep``."""
    keep = list(keep)
    for v in keep:
        f.target.index(v)
    Y = image_ideal(f).ideal
    probe = Y + [f.target.var(v) for v in keep]
    if not local_quotient_dimension(probe).finite:
        raise CoveringError(f"projection of the image onto ({', '.join(keep)}) is not finite")
    ram = ramification_ideal(Y, keep, guard)
    P = f.J_X + [f.pullback(g) for g in ram.all_gens()]
    small = PolyRing(keep, f.field)
    pf = GermMap(f.source, small, [f.components[f.target.index(v)] for v in keep], f.J_X)
    C1 = critical_locus(f, True, bound, guard).ideal
    C2 = critical_locus(pf, True, bound, guard).ideal
    ok1, r1 = _certify("crit", C1, P, f.J_X)
    ok2, r2 = _certify("projected crit", C2, P, f.J_X)
    return CoveringReport(C1, C2, ideal_equal(C1, C2), ok1 and ok2, ram, P, [r1, r2])
