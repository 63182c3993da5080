"""Map-germs between scheme-germs X = V(J_X) in (k^n, o) and Y = V(J_Y) in (k^m, o)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from .gb import (
    DEFAULT_RADICAL_BOUND,
    LocalIdeal,
    RadicalVerdict,
    bounded_radical_membership,
    eliminate,
    krull_dimension,
)
from .modops import ModulePresentation, Submodule, fitting_ideal, kernel_of_row_matrix, minimize, syzygies
from .ring import ContextError, Poly, PolyRing, compose

CLOSURE_CAVEAT = "image-is-closure"


class GermError(ValueError):
    pass


@dataclass
class Validation:
    ok: bool
    message: str = "ok"
    generator: Optional[Poly] = None
    residue: Optional[Poly] = None

    def __bool__(self):
        return self.ok


class GermMap:
    """f = (f_1, ..., f_m) : (V(J_X), o) -> (V(J_Y), o) with polynomial components."""

    def __init__(
        self,
        source: PolyRing,
        target: PolyRing,
        components: Sequence,
        source_ideal: Optional[LocalIdeal] = None,
        target_ideal: Optional[LocalIdeal] = None,
    ):
        if set(source.names) & set(target.names):
            raise ContextError("source and target variables must be distinct")
        if source.field != target.field:
            raise ContextError("source and target over different fields")
        if len(components) != target.ngens:
            raise GermError(f"map has {len(components)} components but the target has {target.ngens} coordinates")
        self.source = source
        self.target = target
        self.components: List[Poly] = [source(c) for c in components]
        self.J_X = source_ideal if source_ideal is not None else LocalIdeal(source, [])
        self.J_Y = target_ideal if target_ideal is not None else LocalIdeal(target, [])

    def __repr__(self):
        comps = ", ".join(str(c) for c in self.components)
        return f"GermMap(({comps}); J_X={self.J_X.all_gens()!s}, J_Y={self.J_Y.all_gens()!s})"

    @property
    def n(self) -> int:
        return self.source.ngens

    @property
    def m(self) -> int:
        return self.target.ngens

    @property
    def field(self):
        return self.source.field

    def pullback(self, q: Poly) -> Poly:
        """f^#(q) = q(f_1, ..., f_m)."""
        return compose(self.target(q), self.components, ring=self.source)

    def with_target_ideal(self, ideal: LocalIdeal) -> "GermMap":
        return GermMap(self.source, self.target, self.components, self.J_X, ideal)

    def with_source_ideal(self, ideal: LocalIdeal) -> "GermMap":
        return GermMap(self.source, self.target, self.components, ideal, self.J_Y)

    def with_components(self, components: Sequence[Poly], target: Optional[PolyRing] = None, target_ideal=None) -> "GermMap":
        target = target or self.target
        ti = target_ideal if target_ideal is not None else (self.J_Y if target == self.target else None)
        return GermMap(self.source, target, components, self.J_X, ti)

    def jacobian(self) -> List[List[Poly]]:
        """Rows indexed by components, columns by source variables."""
        return [[c.diff(i) for i in range(self.n)] for c in self.components]

    def is_smooth_source(self) -> bool:
        return self.J_X.is_zero_ideal()

    def is_smooth_target(self) -> bool:
        return self.J_Y.is_zero_ideal()


def validate(f: GermMap) -> Validation:
    """Check that f is a map of germs: f(o) = o and f^#(J_Y) is inside J_X."""
    for i, c in enumerate(f.components):
        if c.constant_coeff():
            return Validation(False, f"component {f.target.names[i]} = {c} has a nonzero constant term", c, c)
    for q in f.J_Y.all_gens():
        if q.constant_coeff():
            return Validation(False, f"target ideal generator {q} is a unit", q, q)
        r = f.J_X.normal_form(f.pullback(q))
        if r:
            return Validation(False, f"target ideal generator {q} pulls back to {r} outside the source ideal", q, r)
    for g in f.J_X.all_gens():
        if g.constant_coeff():
            return Validation(False, f"source ideal generator {g} is a unit", g, g)
    return Validation(True)


def embedding_notes(f: GermMap) -> List[str]:
    """Flags for ideals with linear terms (embedding not minimal); harmless for every computation."""
    notes = []
    if any(g.order() < 2 for g in f.J_X.all_gens()):
        notes.append("source-embedding-not-minimal")
    if any(g.order() < 2 for g in f.J_Y.all_gens()):
        notes.append("target-embedding-not-minimal")
    return notes


def _evaluate(p: Poly, point: Sequence[int]):
    total = Fraction(0)
    for e, c in p.terms.items():
        t = Fraction(c)
        for v, k in zip(point, e):
            if k:
                t *= v**k
        total += t
    return total


def matrix_rank(rows: List[List[Fraction]]) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                q = rows[i][col] / rows[rank][col]
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


_PROBE_POINTS = [(2, 3, 5, 7, 11, 13, 17, 19), (3, -1, 4, -2, 5, 9, -7, 6), (-5, 8, 1, 12, -3, 2, 10, -11)]


def jacobian_has_full_rank(f: GermMap) -> bool:
    """Rank m of the Jacobian at one of a few fixed integer points (a sufficient test, char 0)."""
    if f.field.characteristic or f.n < f.m:
        return False
    jac = f.jacobian()
    for pt in _PROBE_POINTS:
        pt = (pt * (f.n // len(pt) + 1))[: f.n]
        if matrix_rank([[_evaluate(p, pt) for p in row] for row in jac]) == f.m:
            return True
    return False


@dataclass
class Image:
    ideal: LocalIdeal
    flags: List[str] = field(default_factory=list)


def image_ideal(f: GermMap, extra: Optional[LocalIdeal] = None) -> Image:
    """Ideal of the (closure of the) image of V(J_X + extra) in the target, plus J_Y."""
    flags = [CLOSURE_CAVEAT]
    if extra is not None and extra.is_unit_ideal():
        return Image(LocalIdeal(f.target, [f.target.one]), flags)
    if extra is None and f.J_X.is_zero_ideal() and jacobian_has_full_rank(f):
        return Image(LocalIdeal(f.target, f.J_Y.all_gens()), flags + ["dominant-by-jacobian-rank"])
    big = PolyRing(f.source.names + f.target.names, f.field)
    gens = [g.to_ring(big) for g in f.J_X.all_gens()]
    if extra is not None:
        gens += [g.to_ring(big) for g in extra.all_gens()]
    gens += [big.var(y) - c.to_ring(big) for y, c in zip(f.target.names, f.components)]
    elim = eliminate(LocalIdeal(big, gens), f.source.names)
    out = [g.to_ring(f.target) for g in elim.all_gens()] + f.J_Y.all_gens()
    return Image(LocalIdeal(f.target, out), flags)


@dataclass
class Dominance:
    dominant: bool
    reverse: Optional[RadicalVerdict] = None
    bound: int = DEFAULT_RADICAL_BOUND


def is_dominant(f: GermMap, bound: int = DEFAULT_RADICAL_BOUND) -> Dominance:
    """Image ideal equals J_Y up to radical (the reverse inclusion is bounded-radical tested)."""
    img = image_ideal(f).ideal
    if not all(f.J_Y.contains(g) for g in img.all_gens()):
        return Dominance(False, None, bound)
    worst = RadicalVerdict(True, 1, bound)
    for q in f.J_Y.all_gens():
        v = bounded_radical_membership(q, img, bound)
        if not v.member:
            return Dominance(False, v, bound)
        if v.exponent > worst.exponent:
            worst = v
    return Dominance(True, worst, bound)


def corestrict(f: GermMap) -> GermMap:
    """Replace the target by the image of f."""
    return f.with_target_ideal(image_ideal(f).ideal)


def is_point_ideal(I: LocalIdeal) -> bool:
    """True when I defines the reduced point, i.e. I contains every coordinate."""
    return all(I.contains(v) for v in I.ring.gens()) and not I.is_unit_ideal()


class DerivationModule:
    """Derivations sum a_j d/dx_j of the ambient ring, logarithmic along the constraint ideals."""

    def __init__(self, ring: PolyRing, gens: Sequence[Sequence[Poly]], constraints: Sequence[LocalIdeal] = ()):
        self.ring = ring
        self.gens = [list(g) for g in gens]
        self.constraints = list(constraints)

    def __len__(self):
        return len(self.gens)

    def __repr__(self):
        return "DerivationModule(" + "; ".join(format_derivation(g, self.ring) for g in self.gens) + ")"

    def check(self) -> bool:
        for xi in self.gens:
            for I in self.constraints:
                for q in I.all_gens():
                    if not I.contains(apply_derivation(xi, q)):
                        return False
        return True


def apply_derivation(xi: Sequence[Poly], p: Poly) -> Poly:
    total = p.ring.zero
    for j, a in enumerate(xi):
        if a:
            d = p.diff(j)
            if d:
                total = total + a * d
    return total


def format_derivation(xi: Sequence[Poly], ring: PolyRing) -> str:
    parts = []
    for a, name in zip(xi, ring.names):
        if a:
            s = str(a)
            if a.is_monomial() or a.is_constant():
                parts.append(f"{s}*d/d{name}" if s != "1" else f"d/d{name}")
            else:
                parts.append(f"({s})*d/d{name}")
    return " + ".join(parts) if parts else "0"


def _log_module(ring: PolyRing, I: LocalIdeal) -> List[List[Poly]]:
    """Generators of {xi : xi(I) in I} as a submodule of R^n."""
    n = ring.ngens
    gens = I.all_gens()
    if not gens:
        return [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
    if I.is_unit_ideal():
        return [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
    rows = [[q.diff(j) for j in range(n)] for q in gens]
    ker = kernel_of_row_matrix(rows, n, ring, I)
    out = [list(v) for v in ker.gens]
    sb = I.standard_basis()
    for g in sb:
        for j in range(n):
            out.append([g if i == j else ring.zero for i in range(n)])
    return out


def _intersect(ring: PolyRing, A: List[List[Poly]], B: List[List[Poly]]) -> List[List[Poly]]:
    n = ring.ngens
    both = Submodule(ring, n, A + [[-p for p in v] for v in B])
    out = []
    for c in syzygies(both).gens:
        v = [ring.zero] * n
        for coeff, g in zip(c[: len(A)], A):
            if coeff:
                v = [a + coeff * b for a, b in zip(v, g)]
        if any(v):
            out.append(v)
    return out


def log_derivations(ring: PolyRing, constraints: Sequence[LocalIdeal]) -> DerivationModule:
    """Derivations preserving every constraint ideal (intersection of the logarithmic modules)."""
    n = ring.ngens
    mods = [_log_module(ring, I) for I in constraints if I.all_gens() and not I.is_unit_ideal()]
    if not mods:
        gens = [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
        return DerivationModule(ring, gens, constraints)
    cur = mods[0]
    for other in mods[1:]:
        cur = _intersect(ring, cur, other)
    cur = minimize(Submodule(ring, n, cur)).gens
    dm = DerivationModule(ring, cur, constraints)
    if not dm.check():
        raise AssertionError("logarithmic derivation check failed")
    return dm


def relative_differentials_fitting(f: GermMap, d: int, guard: int = 8) -> LocalIdeal:
    """Fitt_d of Omega_{X/Y}: dx_j modulo dJ_X and df_i, over R_X."""
    ring = f.source
    n = ring.ngens
    relations = [[g.diff(j) for j in range(n)] for g in f.J_X.all_gens()]
    relations += [[c.diff(j) for j in range(n)] for c in f.components]
    quotient = f.J_X if f.J_X.all_gens() else None
    P = ModulePresentation(ring, quotient, n, [r for r in relations if any(r)])
    return fitting_ideal(P, d, guard)


def generic_fibre_dimension(f: GermMap) -> int:
    """dim X minus the dimension of the closure of the image."""
    return krull_dimension(f.J_X) - krull_dimension(image_ideal(f).ideal)
