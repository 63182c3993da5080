"""Finitely generated modules over local quotient rings R/S.

Vectors are lists of polynomials. Every computation over R/S is lifted to
the free module over R by appending S-multiples of the basis vectors, and
coefficient bookkeeping uses extra "tag" positions placed after the real ones
(position-over-term makes the real positions dominate, so basis elements with
a leading term in a tag position have zero real part).

Syzygies are computed with a global Groebner basis over the polynomial ring
and then read in the local ring; localization is exact, so nothing is lost.
Local membership is decided by the colon ideal (M : v): v lies in the
localized module exactly when some generator of (M : v) is a local unit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence

from .engine import Engine, global_order
from .gb import LocalIdeal
from .ring import Poly, PolyRing

Vector = List[Poly]

DEFAULT_MINOR_GUARD = 8


class MinorGuardError(RuntimeError):
    """Fitting-ideal minors requested beyond the configured matrix-size guard."""


class NotInSubmoduleError(ValueError):
    def __init__(self, message, generator=None):
        super().__init__(message)
        self.generator = generator


def _quotient_gens(quotient: Optional[LocalIdeal]) -> List[Poly]:
    return quotient.all_gens() if quotient is not None else []


def _to_vec(v: Sequence[Poly], offset: int = 0) -> dict:
    out = {}
    for pos, p in enumerate(v):
        for e, c in p.terms.items():
            out[(pos + offset,) + e] = c
    return out


def _from_vec(v: dict, ring: PolyRing, start: int, stop: int) -> Vector:
    parts: List[Dict] = [dict() for _ in range(stop - start)]
    for m, c in v.items():
        if start <= m[0] < stop:
            parts[m[0] - start][m[1:]] = c
    return [Poly(ring, t) for t in parts]


def is_zero_vector(v: Sequence[Poly]) -> bool:
    return all(not p for p in v)


class Submodule:
    """Submodule of (R/S)^rank given by generator vectors."""

    def __init__(self, ring: PolyRing, rank: int, gens: Sequence[Sequence[Poly]], quotient: Optional[LocalIdeal] = None):
        self.ring = ring
        self.rank = rank
        self.quotient = quotient
        self.gens: List[Vector] = []
        for g in gens:
            g = list(g)
            if len(g) != rank:
                raise ValueError(f"generator of length {len(g)} in rank {rank}")
            self.gens.append(g)
        self._ext = None

    def __repr__(self):
        return f"Submodule(rank={self.rank}, gens={[[str(p) for p in g] for g in self.gens]})"

    @property
    def engine(self) -> Engine:
        return Engine(global_order(self.ring.ngens), self.ring.characteristic)

    def _extended_basis(self):
        """Groebner basis of <(g_i, e_i)> + S*R^rank inside R^(rank + ngens)."""
        if self._ext is None:
            r = self.rank
            eng = self.engine
            vecs = []
            for i, g in enumerate(self.gens):
                v = _to_vec(g)
                v[(r + i,) + self.ring.zero_exps()] = self.ring.field(1)
                vecs.append(v)
            for q in _quotient_gens(self.quotient):
                for k in range(r):
                    vecs.append({(k,) + e: c for e, c in q.terms.items()})
            basis = eng.std(vecs, ring_case=False)
            self._ext = (eng, eng.elts(basis), basis)
        return self._ext

    def contains(self, v: Sequence[Poly]) -> bool:
        return lift_in_submodule(v, self) is not None

    def reduce_zero(self, v: Sequence[Poly]) -> bool:
        """True when v vanishes in (R/S)^rank."""
        if self.quotient is None:
            return is_zero_vector(v)
        return all(self.quotient.contains(p) for p in v)


@dataclass
class Lift:
    """Coefficients c with sum(c_i * gen_i) == unit * v over R/S; unit is a local unit."""

    coeffs: List[Poly]
    unit: Poly


def syzygies(gens: Submodule) -> Submodule:
    """Generators of all relations among the generators of ``gens`` over R/S."""
    r, s = gens.rank, len(gens.gens)
    ring = gens.ring
    if s == 0:
        return Submodule(ring, 0, [], gens.quotient)
    eng, _, basis = gens._extended_basis()
    out = []
    for v in basis:
        lm = eng.lm(v)
        if r <= lm[0] < r + s:
            c = _from_vec(v, ring, r, r + s)
            out.append(c)
    syz = Submodule(ring, s, out, gens.quotient)
    for c in syz.gens:
        total = combine(c, gens.gens, r, ring)
        if not gens.reduce_zero(total):
            raise AssertionError("syzygy check failed")
    return syz


def combine(coeffs: Sequence[Poly], vectors: Sequence[Sequence[Poly]], rank: int, ring: PolyRing) -> Vector:
    total = [ring.zero] * rank
    for c, g in zip(coeffs, vectors):
        if c:
            for k in range(rank):
                if g[k]:
                    total[k] = total[k] + c * g[k]
    return total


def lift_in_submodule(v: Sequence[Poly], gens: Submodule) -> Optional[Lift]:
    """Express v in the generators (up to a unit factor), or None if v is not a member."""
    r, s = gens.rank, len(gens.gens)
    ring = gens.ring
    if len(v) != r:
        raise ValueError("vector of wrong length")
    if is_zero_vector(v):
        return Lift([ring.zero] * s, ring.one)
    eng, _, basis = gens._extended_basis()
    # the tag of v goes first among the tags, so its coordinate is eliminated last
    known = [{(m[0] + 1 if m[0] >= r else m[0],) + m[1:]: c for m, c in b.items()} for b in basis]
    h = _to_vec(v)
    h[(r,) + ring.zero_exps()] = ring.field(1)
    for b in eng.std([h], ring_case=False, known=known):
        lm = eng.lm(b)
        if lm[0] != r:
            continue
        unit = _from_vec(b, ring, r, r + 1)[0]
        if unit.constant_coeff():
            coeffs = [-c for c in _from_vec(b, ring, r + 1, r + 1 + s)]
            return Lift(coeffs, unit)
    return None


def kernel_of_row_matrix(rows: Sequence[Sequence[Poly]], m: int, ring: PolyRing, quotient: Optional[LocalIdeal] = None) -> Submodule:
    """Generators of {h in (R/S)^m : A h = 0} for the matrix A given by its rows."""
    rows = [list(r) for r in rows if not all(not p for p in r)]
    if quotient is not None:
        rows = [r for r in rows if not all(quotient.contains(p) for p in r)]
    if not rows:
        basis = [[ring.one if i == j else ring.zero for j in range(m)] for i in range(m)]
        return minimize(Submodule(ring, m, basis, quotient))
    c = len(rows)
    cols = [[rows[i][l] for i in range(c)] for l in range(m)]
    syz = syzygies(Submodule(ring, c, cols, quotient))
    ker = Submodule(ring, m, syz.gens, quotient)
    check = Submodule(ring, c, [], quotient)
    for h in ker.gens:
        image = [sum((rows[i][l] * h[l] for l in range(m) if h[l]), ring.zero) for i in range(c)]
        if not check.reduce_zero(image):
            raise AssertionError("kernel element fails A*h = 0")
    return minimize(ker)


def minimize(M: Submodule) -> Submodule:
    """Drop generators that vanish modulo S or lie in the span of the others."""
    gens = [g for g in M.gens if not M.reduce_zero(g)]
    k = len(gens) - 1
    while k >= 0 and len(gens) > 1:
        others = Submodule(M.ring, M.rank, gens[:k] + gens[k + 1 :], M.quotient)
        if others.contains(gens[k]):
            gens.pop(k)
        k -= 1
    return Submodule(M.ring, M.rank, gens, M.quotient)


@dataclass
class ModulePresentation:
    """Cokernel of the relation matrix: ``ngens`` generators, one column per relation.

    ``generators`` optionally records the vectors the abstract generators stand
    for (used by exactness checks).
    """

    ring: PolyRing
    quotient: Optional[LocalIdeal]
    ngens: int
    relations: List[Vector]
    generators: Optional[List[Vector]] = None
    notes: List[str] = field(default_factory=list)

    def matrix(self) -> List[List[Poly]]:
        return [[col[i] for col in self.relations] for i in range(self.ngens)]

    def is_zero_module(self) -> bool:
        return fitting_ideal(self, 0).is_unit_ideal()


def presentation_of_subquotient(T: Submodule, D: Submodule) -> ModulePresentation:
    """Presentation of T/D; raises NotInSubmoduleError if some generator of D is not in T."""
    ring = T.ring
    relations = [list(c) for c in syzygies(T).gens]
    for d in D.gens:
        lift = lift_in_submodule(d, T)
        if lift is None:
            raise NotInSubmoduleError(f"generator {[str(p) for p in d]} of D is not in T", d)
        relations.append(lift.coeffs)
    relations = [c for c in relations if not is_zero_vector(c)]
    return ModulePresentation(ring, T.quotient, len(T.gens), relations, [list(g) for g in T.gens])


def verify_presentation(P: ModulePresentation, D: Optional[Submodule] = None) -> bool:
    """Each relation column maps into D (into zero when D is omitted)."""
    if P.generators is None:
        return True
    rank = len(P.generators[0]) if P.generators else 0
    zero = Submodule(P.ring, rank, [], P.quotient)
    for col in P.relations:
        image = combine(col, P.generators, rank, P.ring)
        if zero.reduce_zero(image):
            continue
        if D is None or not D.contains(image):
            return False
    return True


def _is_unit(p: Poly) -> bool:
    return bool(p.constant_coeff())


def prune(P: ModulePresentation) -> ModulePresentation:
    """Smaller presentation of the same module: pivot away generators killed by unit entries.

    Column operations multiply by local units only, so Fitting ideals are unchanged.
    """
    ring = P.ring
    q = P.quotient
    cols = []
    for col in P.relations:
        col = [ring.zero if (q is not None and p and q.contains(p)) else p for p in col]
        if not is_zero_vector(col):
            cols.append(col)
    rows = list(range(P.ngens))
    while True:
        pivot = None
        for k, col in enumerate(cols):
            for idx, i in enumerate(rows):
                if _is_unit(col[i]):
                    cand = (sum(len(c[i].terms) for c in cols), len(col[i].terms), k, idx)
                    if pivot is None or cand < pivot[0]:
                        pivot = (cand, k, i)
            if pivot is not None and pivot[0][0] <= 1:
                break
        if pivot is None:
            break
        _, k, i = pivot
        pcol = cols[k]
        u = pcol[i]
        new_cols = []
        for l, col in enumerate(cols):
            if l == k:
                continue
            a = col[i]
            if a:
                col = [u * col[j] - a * pcol[j] if j != i else ring.zero for j in range(len(col))]
            new_cols.append(col)
        rows.remove(i)
        cleaned = []
        for col in new_cols:
            col = [ring.zero if (j not in rows) else col[j] for j in range(len(col))]
            col = [ring.zero if (q is not None and p and q.contains(p)) else p for p in col]
            if not is_zero_vector(col):
                cleaned.append(col)
        cols = cleaned
    relations = []
    seen = set()
    for col in cols:
        v = [col[i] for i in rows]
        key = tuple(v)
        if key not in seen and not is_zero_vector(v):
            seen.add(key)
            relations.append(v)
    return ModulePresentation(ring, q, len(rows), relations, None, list(P.notes) + ["pruned"])


def det(M: List[List[Poly]], ring: PolyRing) -> Poly:
    """Determinant by cofactor expansion along the first column, memoized over row subsets."""
    n = len(M)
    if n == 0:
        return ring.one
    memo = {}

    def rec(rows: tuple, col: int) -> Poly:
        if col == n:
            return ring.one
        if rows in memo:
            return memo[rows]
        total = ring.zero
        for k, i in enumerate(rows):
            a = M[i][col]
            if not a:
                continue
            sub = rec(rows[:k] + rows[k + 1 :], col + 1)
            if not sub:
                continue
            term = a * sub
            total = total - term if k % 2 else total + term
        memo[rows] = total
        return total

    return rec(tuple(range(n)), 0)


def fitting_ideal(P: ModulePresentation, k: int = 0, guard: int = DEFAULT_MINOR_GUARD) -> LocalIdeal:
    """Ideal of (s-k)-minors of the relation matrix plus the quotient ideal."""
    if k < 0:
        raise ValueError("k must be >= 0")
    ring = P.ring
    extra = _quotient_gens(P.quotient)
    Q = prune(P)
    size = Q.ngens - k
    if size <= 0:
        return LocalIdeal(ring, [ring.one])
    if size > guard:
        raise MinorGuardError(
            f"need {size}x{size} minors but the minor guard is {guard}; raise --minor-guard to allow it"
        )
    if len(Q.relations) < size:
        return LocalIdeal(ring, extra)
    mat = Q.matrix()
    minors = []
    seen = set()
    for rsub in combinations(range(Q.ngens), size):
        for csub in combinations(range(len(Q.relations)), size):
            d = det([[mat[i][j] for j in csub] for i in rsub], ring)
            if d and d not in seen:
                seen.add(d)
                minors.append(d)
                if d.is_constant():
                    return LocalIdeal(ring, [ring.one])
    return LocalIdeal(ring, minors + extra)
