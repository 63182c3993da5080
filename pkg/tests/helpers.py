"""Shared fixtures: seeded random germs and independent oracles."""

from __future__ import annotations

import random
from itertools import combinations
from pathlib import Path

import sympy

from germcrit.gb import LocalIdeal
from germcrit.germ import GermMap, jacobian_has_full_rank
from germcrit.ring import QQ, PolyRing

DATA = Path(__file__).resolve().parent.parent / "data" / "germs"


def germ_text(name: str) -> str:
    return (DATA / f"{name}.germ").read_text()


def make_map(src, tgt, comps, field=QQ, J_X=(), J_Y=()):
    S = PolyRing(src, field)
    T = PolyRing(tgt, field)
    return GermMap(
        S,
        T,
        [S.parse(c) for c in comps],
        LocalIdeal(S, [S.parse(p) for p in J_X]),
        LocalIdeal(T, [T.parse(p) for p in J_Y]),
    )


def random_poly(rng: random.Random, ring: PolyRing, maxdeg: int, terms: int):
    p = ring.zero
    n = ring.ngens
    for _ in range(terms):
        d = rng.randint(1, maxdeg)
        e = [0] * n
        for _ in range(d):
            e[rng.randrange(n)] += 1
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        p = p + ring.monomial(e, c)
    return p


def random_dominant_map(rng: random.Random, maxdeg: int = 4):
    """A map k^n -> k^m with n >= m, n, m <= 3, generically submersive."""
    while True:
        n = rng.randint(1, 3)
        m = rng.randint(1, n)
        S = PolyRing([f"x{i}" for i in range(n)])
        T = PolyRing([f"y{i}" for i in range(m)])
        comps = [random_poly(rng, S, maxdeg, rng.randint(1, 3)) for _ in range(m)]
        f = GermMap(S, T, comps, LocalIdeal(S, []), LocalIdeal(T, []))
        if jacobian_has_full_rank(f):
            return f


def sympy_poly(p, gens):
    return sympy.Poly(sympy.sympify(str(p).replace("^", "**")), *gens)


def maximal_minor_ideal(f: GermMap) -> LocalIdeal:
    """Oracle: m x m minors of the Jacobian, computed with sympy."""
    xs = sympy.symbols(f.source.names)
    comps = [sympy.sympify(str(c).replace("^", "**")) for c in f.components]
    Jm = sympy.Matrix([[sympy.diff(c, x) for x in xs] for c in comps])
    m = len(comps)
    gens = []
    for cols in combinations(range(len(xs)), m):
        d = sympy.expand(Jm[:, list(cols)].det())
        if d != 0:
            gens.append(f.source.parse(str(d).replace("**", "^")))
    return LocalIdeal(f.source, gens)


CORPUS = {
    "identity": (["x", "y"], ["u", "v"], ["x", "y"]),
    "cusp": (["t"], ["u", "v"], ["t^2", "t^3"]),
    "xy": (["x", "y"], ["u"], ["x*y"]),
    "projection": (["x", "y"], ["u"], ["x"]),
    "pinch": (["x", "y", "z"], ["u1", "u2", "u3"], ["x", "y^2", "y*z"]),
    "blowdown": (["x", "y"], ["u", "v"], ["x", "x*y"]),
    "whitney": (["x", "y"], ["u", "v"], ["x", "y^3 + x*y"]),
    "fold": (["x", "y"], ["u", "v"], ["x", "y^2"]),
}


def corpus_map(name: str) -> GermMap:
    return make_map(*CORPUS[name])


def triangular_automorphism(rng: random.Random, ring: PolyRing):
    """x_i -> c_i x_i + (polynomial in x_0..x_{i-1} of order >= 2 ... or linear)."""
    images = []
    for i in range(ring.ngens):
        c = rng.choice([1, 2, -1, 3])
        p = ring.var(i).scale(ring.field(c))
        if i:
            sub = PolyRing(ring.names[:i])
            p = p + random_poly(rng, sub, 2, 2).to_ring(ring)
        images.append(p)
    return images


def pull_ideal(I: LocalIdeal, images) -> LocalIdeal:
    from germcrit.ring import compose

    return LocalIdeal(I.ring, [compose(g, images) for g in I.all_gens()])
