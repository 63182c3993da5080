"""Ideals of local rings k[x]_(x): standard bases, membership, dimension, elimination."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Union

from .engine import Engine, MonomialOrder, elimination_order, homogenized_std, local_order
from .ring import Poly, PolyRing

DEFAULT_RADICAL_BOUND = 8


def poly_to_vec(p: Poly, pos: int = 0) -> dict:
    return {(pos,) + e: c for e, c in p.terms.items()}


def vec_to_poly(v: dict, ring: PolyRing) -> Poly:
    return Poly(ring, {m[1:]: c for m, c in v.items()})


class LocalIdeal:
    """Ideal of the local ring at the origin, given by polynomial generators.

    ``ambient`` optionally names the ideal J of a quotient R/J that this ideal
    lives in; its generators are included when computing. Ideals are
    immutable, so the standard basis is cached on first use.
    """

    def __init__(self, ring: PolyRing, gens: Iterable = (), ambient: Optional["LocalIdeal"] = None):
        self.ring = ring
        gs = []
        for g in gens:
            g = ring(g) if not isinstance(g, Poly) else g
            if g.ring != ring:
                g = g.to_ring(ring)
            if g:
                gs.append(g)
        self.gens: List[Poly] = gs
        self.ambient = ambient
        self._sb: Optional[List[Poly]] = None
        self._elts = None

    @classmethod
    def parse(cls, ring: PolyRing, texts: Sequence[str]) -> "LocalIdeal":
        return cls(ring, [ring.parse(t) for t in texts])

    def all_gens(self) -> List[Poly]:
        if self.ambient is None:
            return list(self.gens)
        return list(self.gens) + self.ambient.all_gens()

    def __add__(self, other) -> "LocalIdeal":
        if isinstance(other, LocalIdeal):
            other = other.all_gens()
        return LocalIdeal(self.ring, self.all_gens() + list(other))

    def __repr__(self):
        return f"LocalIdeal({self.ring.names}, {[str(g) for g in self.all_gens()]})"

    def __str__(self):
        return ideal_str(self)

    @property
    def engine(self) -> Engine:
        return Engine(local_order(self.ring.ngens), self.ring.characteristic)

    def standard_basis(self) -> List[Poly]:
        if self._sb is None:
            eng = self.engine
            vecs = homogenized_std([poly_to_vec(g) for g in self.all_gens()], self.ring.ngens, self.ring.characteristic)
            self._sb = [vec_to_poly(v, self.ring) for v in vecs]
            self._elts = eng.elts(vecs)
        return self._sb

    def normal_form(self, p: Poly) -> Poly:
        self.standard_basis()
        if p.ring != self.ring:
            p = p.to_ring(self.ring)
        return vec_to_poly(self.engine.nf(poly_to_vec(p), self._elts), self.ring)

    def contains(self, p: Poly) -> bool:
        return not self.normal_form(p)

    def __contains__(self, p: Poly) -> bool:
        return self.contains(p)

    def contains_ideal(self, other: "LocalIdeal") -> bool:
        return all(self.contains(g) for g in other.all_gens())

    def is_unit_ideal(self) -> bool:
        return any(g.constant_coeff() for g in self.standard_basis())

    def is_zero_ideal(self) -> bool:
        return not self.all_gens()

    def leading_exponents(self) -> List[tuple]:
        eng = self.engine
        return [eng.lm(poly_to_vec(g))[1:] for g in self.standard_basis()]


def standard_basis(I: LocalIdeal, order: Optional[MonomialOrder] = None) -> List[Poly]:
    """Standard basis of I under ``order`` (default: local degree reverse lexicographic)."""
    if order is None or order == local_order(I.ring.ngens):
        return I.standard_basis()
    eng = Engine(order, I.ring.characteristic)
    vecs = eng.std([poly_to_vec(g) for g in I.all_gens()], reduced=not order.local)
    return [vec_to_poly(v, I.ring) for v in vecs]


def normal_form(p: Poly, I: LocalIdeal) -> Poly:
    return I.normal_form(p)


def ideal_equal(I: LocalIdeal, J: LocalIdeal) -> bool:
    if I.ring != J.ring:
        raise ValueError("ideals live in different contexts")
    return I.contains_ideal(J) and J.contains_ideal(I)


@dataclass(frozen=True)
class RadicalVerdict:
    member: bool
    exponent: Optional[int] = None
    bound: int = DEFAULT_RADICAL_BOUND

    def __str__(self):
        return f"member({self.exponent})" if self.member else f"not-decided-within-bound({self.bound})"


def bounded_radical_membership(p: Poly, I: LocalIdeal, bound: int = DEFAULT_RADICAL_BOUND) -> RadicalVerdict:
    """Smallest e <= bound with p^e in I, if any. Sound, not complete."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    q = p
    for e in range(1, bound + 1):
        if I.contains(q):
            return RadicalVerdict(True, e, bound)
        q = q * p
    return RadicalVerdict(False, None, bound)


@dataclass(frozen=True)
class QuotientDimension:
    finite: bool
    value: Optional[int] = None

    def __str__(self):
        return f"finite({self.value})" if self.finite else "infinite"


def _staircase(lead: Sequence[tuple], n: int):
    """Monomials outside the monomial ideal generated by ``lead`` (None if infinitely many)."""
    bounds = [None] * n
    for e in lead:
        support = [i for i, k in enumerate(e) if k]
        if len(support) == 1:
            i = support[0]
            bounds[i] = e[i] if bounds[i] is None else min(bounds[i], e[i])
        elif not support:
            return []
    if any(b is None for b in bounds):
        return None
    out = []

    def rec(i, prefix):
        if i == n:
            m = tuple(prefix)
            if not any(all(a <= b for a, b in zip(l, m)) for l in lead):
                out.append(m)
            return
        for k in range(bounds[i]):
            prefix.append(k)
            rec(i + 1, prefix)
            prefix.pop()

    rec(0, [])
    return out


def local_quotient_dimension(I: LocalIdeal) -> QuotientDimension:
    """dim_k of the local quotient ring, by counting standard monomials."""
    stairs = _staircase(I.leading_exponents(), I.ring.ngens)
    if stairs is None:
        return QuotientDimension(False)
    return QuotientDimension(True, len(stairs))


def standard_monomials(I: LocalIdeal):
    return _staircase(I.leading_exponents(), I.ring.ngens)


def monomial_ideal_dimension(lead: Sequence[tuple], n: int) -> int:
    """Krull dimension of k[x]/(monomials); -1 for the unit ideal."""
    if any(not any(e) for e in lead):
        return -1
    supports = [frozenset(i for i, k in enumerate(e) if k) for e in lead]
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            s = set(S)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def krull_dimension(I: LocalIdeal) -> int:
    """Dimension of the germ V(I) at the origin (-1 when empty)."""
    return monomial_ideal_dimension(I.leading_exponents(), I.ring.ngens)


def eliminate(I: LocalIdeal, names: Sequence[str]) -> LocalIdeal:
    """I intersected with the subring without ``names`` (global block order).

    The computation runs on polynomial representatives, so the result cuts
    out the Zariski closure of the projection.
    """
    ring = I.ring
    names = list(names)
    for v in names:
        ring.index(v)
    keep = [v for v in ring.names if v not in names]
    big = PolyRing(names + keep, ring.field)
    order = elimination_order(big.ngens, len(names))
    eng = Engine(order, ring.characteristic)
    vecs = eng.std([poly_to_vec(g.to_ring(big)) for g in I.all_gens()], reduced=True)
    small = PolyRing(keep, ring.field)
    out = []
    nb = len(names)
    for v in vecs:
        if all(not any(m[1 : 1 + nb]) for m in v):
            out.append(vec_to_poly(v, big).to_ring(small))
    return LocalIdeal(small, out)


def zero_dimensional_radical(I: LocalIdeal) -> Optional[LocalIdeal]:
    """Radical of an ideal with finite local quotient: the maximal ideal or (1)."""
    d = local_quotient_dimension(I)
    if not d.finite:
        return None
    if d.value == 0:
        return LocalIdeal(I.ring, [I.ring.one])
    return LocalIdeal(I.ring, I.ring.gens())


def ideal_str(I: Union[LocalIdeal, Sequence[Poly]], basis: bool = True) -> str:
    """Deterministic display: sorted primitive generators of a minimal standard basis."""
    if isinstance(I, LocalIdeal):
        gens = I.standard_basis() if basis else I.all_gens()
    else:
        gens = list(I)
    if any(g.is_constant() and g for g in gens):
        return "(1)"
    if isinstance(I, LocalIdeal) and basis:
        gens = [strip_units(g) for g in gens]
    strs = sorted({str(g.primitive()) for g in gens}, key=lambda s: (len(s), s))
    return "(" + ", ".join(strs) + ")" if strs else "(0)"


def _to_sympy(p: Poly):
    import sympy

    ring = p.ring
    syms = sympy.symbols(ring.names)
    if not isinstance(syms, tuple):
        syms = (syms,)
    dom = sympy.GF(ring.characteristic) if ring.characteristic else sympy.QQ
    data = {e: (int(c) if ring.characteristic else sympy.Rational(c.numerator, c.denominator)) for e, c in p.terms.items()}
    return sympy.Poly.from_dict(data, *syms, domain=dom)


def _from_sympy(q, ring: PolyRing) -> Poly:
    import sympy

    out = {}
    for e, c in q.terms():
        if ring.characteristic:
            out[tuple(e)] = int(c) % ring.characteristic
        else:
            c = sympy.Rational(c)
            out[tuple(e)] = Fraction(int(c.p), int(c.q))
    return Poly.from_terms(ring, out.items())


def sqf_part(p: Poly) -> Poly:
    """Square-free part of a polynomial (via sympy)."""
    import sympy

    if p.is_constant():
        return p
    return _from_sympy(sympy.sqf_part(_to_sympy(p)), p.ring)


def strip_units(p: Poly) -> Poly:
    """p with its local-unit factors removed (same principal ideal in the local ring)."""
    if p.is_constant() or p.is_monomial():
        return p
    if p.constant_coeff():
        return p.ring.one
    _, factors = _to_sympy(p).factor_list()
    out = p.ring.one
    kept_all = True
    for q, k in factors:
        g = _from_sympy(q, p.ring)
        if g.constant_coeff():
            kept_all = False
            continue
        out = out * g ** k
    return p if kept_all else out
