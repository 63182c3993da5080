"""Truncated-jet tools: exponentials of derivations, equivalence solvers,
approximate lifting of automorphisms and determinacy probes.

Everything is computed modulo terms of total degree > K, and every claimed
equality is re-checked by exact truncated composition.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .gb import LocalIdeal
from .germ import GermMap, apply_derivation, log_derivations, matrix_rank
from .linalg import monomials_upto, solve_sparse
from .ring import Poly, PolyRing, compose

DEFAULT_JET_ORDER = 12


class JetError(ValueError):
    pass


class CharacteristicError(JetError):
    pass


@dataclass(frozen=True)
class JetContext:
    ring: PolyRing
    K: int = DEFAULT_JET_ORDER

    def __post_init__(self):
        if self.K < 2:
            raise JetError("jet order K must be >= 2")

    @property
    def field(self):
        return self.ring.field

    @property
    def characteristic(self) -> int:
        return self.ring.characteristic

    def exp_allowed(self) -> bool:
        p = self.characteristic
        return p == 0 or p > self.K

    def require_exp(self):
        if not self.exp_allowed():
            raise CharacteristicError(
                f"exponentials of derivations need characteristic 0 or p > K; got p = {self.characteristic}, K = {self.K}"
                " (lower --jet-order below p)"
            )

    def with_ring(self, ring: PolyRing) -> "JetContext":
        return JetContext(ring, self.K)


class JetAutomorphism:
    """x_i -> images[i], all truncated at K (spatial convention: (A o B)(x) = A(B(x)))."""

    def __init__(self, ctx: JetContext, images: Sequence[Poly]):
        if len(images) != ctx.ring.ngens:
            raise JetError(f"need {ctx.ring.ngens} images, got {len(images)}")
        self.ctx = ctx
        self.images = [ctx.ring(p).truncate(ctx.K) for p in images]
        for p in self.images:
            if p.constant_coeff():
                raise JetError(f"image {p} has a constant term")

    @classmethod
    def identity(cls, ctx: JetContext) -> "JetAutomorphism":
        return cls(ctx, ctx.ring.gens())

    def __call__(self, p: Poly) -> Poly:
        """p o Phi, truncated."""
        return compose(p, self.images, self.ctx.K, self.ctx.ring)

    def compose(self, other: "JetAutomorphism") -> "JetAutomorphism":
        return JetAutomorphism(self.ctx, [compose(p, other.images, self.ctx.K, self.ctx.ring) for p in self.images])

    def linear_part(self) -> List[List]:
        ring = self.ctx.ring
        rows = []
        for p in self.images:
            rows.append([p.coeff(tuple(1 if k == j else 0 for k in range(ring.ngens))) for j in range(ring.ngens)])
        return rows

    def is_tangent_to_identity(self) -> bool:
        lin = self.linear_part()
        return all(lin[i][j] == (1 if i == j else 0) for i in range(len(lin)) for j in range(len(lin)))

    def has_invertible_linear_part(self) -> bool:
        lin = [[Fraction(int(c)) if self.ctx.characteristic else c for c in row] for row in self.linear_part()]
        if self.ctx.characteristic:
            return _rank_mod_p(lin, self.ctx.characteristic) == len(lin)
        return matrix_rank(lin) == len(lin)

    def trim(self, d: int) -> "JetAutomorphism":
        return JetAutomorphism(self.ctx, [p.truncate(d) for p in self.images])

    def __eq__(self, other):
        return isinstance(other, JetAutomorphism) and self.images == other.images

    def to_strings(self) -> List[str]:
        return [f"{x} -> {p}" for x, p in zip(self.ctx.ring.names, self.images)]


def _rank_mod_p(rows, p) -> int:
    rows = [[int(c) % p for c in r] for r in rows]
    rank = 0
    for col in range(len(rows[0]) if rows else 0):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                q = rows[i][col] * inv % p
                rows[i] = [(a - q * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


class JetDerivation:
    """sum a_j d/dx_j with coefficients truncated at K."""

    def __init__(self, ctx: JetContext, coeffs: Sequence[Poly]):
        if len(coeffs) != ctx.ring.ngens:
            raise JetError(f"need {ctx.ring.ngens} coefficients, got {len(coeffs)}")
        self.ctx = ctx
        self.coeffs = [ctx.ring(a).truncate(ctx.K) for a in coeffs]

    @classmethod
    def zero(cls, ctx: JetContext) -> "JetDerivation":
        return cls(ctx, [ctx.ring.zero] * ctx.ring.ngens)

    def __call__(self, p: Poly) -> Poly:
        return apply_derivation(self.coeffs, p).truncate(self.ctx.K)

    def __add__(self, other):
        return JetDerivation(self.ctx, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return JetDerivation(self.ctx, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __eq__(self, other):
        return isinstance(other, JetDerivation) and self.coeffs == other.coeffs

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_nilpotent(self) -> bool:
        """xi(m) inside m^2."""
        return all(not a or a.order() >= 2 for a in self.coeffs)

    def to_string(self) -> str:
        parts = []
        for a, name in zip(self.coeffs, self.ctx.ring.names):
            if a:
                parts.append(f"({a})*d/d{name}")
        return " + ".join(parts) if parts else "0"


def exp_derivation(xi: JetDerivation, ctx: Optional[JetContext] = None) -> JetAutomorphism:
    """Phi(x) = sum_j xi^j(x) / j!, truncated at K."""
    ctx = ctx or xi.ctx
    ctx.require_exp()
    if not xi.is_nilpotent():
        raise JetError("exp needs xi(m) inside m^2 (all coefficients of order >= 2)")
    ring = ctx.ring
    images = []
    for x in ring.gens():
        total = x
        term = x
        j = 1
        while True:
            term = xi(term)
            if not term:
                break
            total = total + term.scale(ring.field(Fraction(1, factorial(j))))
            j += 1
        images.append(total)
    return JetAutomorphism(ctx, images)


def log_automorphism(phi: JetAutomorphism, ctx: Optional[JetContext] = None) -> JetDerivation:
    """The nilpotent xi with exp(xi) = phi modulo degree > K, built degree by degree."""
    ctx = ctx or phi.ctx
    ctx.require_exp()
    if not phi.is_tangent_to_identity():
        raise JetError("log needs an automorphism tangent to the identity")
    xi = JetDerivation.zero(ctx)
    for d in range(2, ctx.K + 1):
        cur = exp_derivation(xi, ctx)
        corr = [(p - q).homogeneous_part(d) for p, q in zip(phi.images, cur.images)]
        if any(corr):
            xi = xi + JetDerivation(ctx, corr)
    return xi


# ---------------------------------------------------------------- linear systems


class _System:
    """Columns are unknowns, rows are (tag, component, exponent) coefficient equations."""

    def __init__(self, field):
        self.field = field
        self.cols: List[Dict[tuple, object]] = []
        self.meta: List[tuple] = []

    def add(self, contributions: Dict[tuple, object], meta: tuple):
        if contributions:
            self.cols.append(contributions)
            self.meta.append(meta)

    def solve(self, rhs: Dict[tuple, object]) -> Optional[Dict[int, object]]:
        keys = set(rhs)
        for c in self.cols:
            keys.update(c)
        keys = sorted(keys)
        index = {k: i for i, k in enumerate(keys)}
        rows: List[Dict[int, object]] = [dict() for _ in keys]
        for j, col in enumerate(self.cols):
            for k, v in col.items():
                rows[index[k]][j] = v
        b = [rhs.get(k, 0) for k in keys]
        return solve_sparse(rows, b, self.field)


def _contrib(tag, comp, p: Poly, dmax: int, out: Optional[dict] = None) -> dict:
    out = {} if out is None else out
    for e, c in p.terms.items():
        if sum(e) <= dmax:
            out[(tag, comp, e)] = out.get((tag, comp, e), 0) + c
    return out


def _shift(p: Poly, mu: tuple, dmax: int) -> Poly:
    ring = p.ring
    terms = {}
    dm = sum(mu)
    for e, c in p.terms.items():
        if sum(e) + dm <= dmax:
            terms[tuple(a + b for a, b in zip(e, mu))] = c
    return Poly(ring, terms)


def _order(p: Poly) -> int:
    return p.order() if p else 10**9


class _IdealCache:
    """J + m^t membership, cached per t."""

    def __init__(self, J: LocalIdeal):
        self.J = J
        self.ring = J.ring
        self.cache: Dict[int, LocalIdeal] = {}

    def ideal(self, t: int) -> LocalIdeal:
        if t not in self.cache:
            mons = [self.ring.monomial(e) for e in monomials_upto(self.ring.ngens, t, t)]
            self.cache[t] = LocalIdeal(self.ring, self.J.all_gens() + mons)
        return self.cache[t]

    def contains(self, p: Poly, t: int) -> bool:
        p = p.truncate(t - 1)
        if not p:
            return True
        if self.J.is_zero_ideal():
            return False
        return self.ideal(t).contains(p)

    def order(self, vec: Sequence[Poly], K: int) -> int:
        """Largest t <= K+1 with every entry in J + m^t."""
        vec = [p.truncate(K) for p in vec]
        lo = min((_order(p) for p in vec), default=K + 1)
        lo = min(lo, K + 1)
        if self.J.is_zero_ideal():
            return lo
        t = lo
        while t < K + 1 and all(self.contains(p, t + 1) for p in vec):
            t += 1
        return t


# ---------------------------------------------------------------- equivalence solvers


@dataclass
class EquivalenceResult:
    success: bool
    phi_X: Optional[JetAutomorphism] = None
    phi_Y: Optional[JetAutomorphism] = None
    degree: Optional[int] = None
    residual: List[Poly] = field(default_factory=list)
    iterations: int = 0
    message: str = ""
    K: int = DEFAULT_JET_ORDER

    def label(self) -> str:
        if self.success:
            return f"equivalent-mod-degree>{self.K}"
        return f"not-found-at-order({self.K})"


def verify_equivalence(f: GermMap, ft: GermMap, phi_X: JetAutomorphism, phi_Y: Optional[JetAutomorphism], K: int) -> bool:
    """f o Phi_X == Phi_Y o ft modulo J_X + m^(K+1)."""
    cache = _IdealCache(f.J_X)
    for i, (a, b) in enumerate(zip(f.components, ft.components)):
        lhs = compose(a, phi_X.images, K, f.source)
        rhs = compose(phi_Y.images[i], ft.components, K, f.source) if phi_Y is not None else b.truncate(K)
        if not cache.contains(lhs - rhs, K + 1):
            return False
    return True


def _preserves(phi: JetAutomorphism, J: LocalIdeal, K: int) -> bool:
    cache = _IdealCache(J)
    return all(cache.contains(phi(q), K + 1) for q in J.all_gens())


def _check_shapes(f: GermMap, ft: GermMap):
    if f.source != ft.source or f.target != ft.target:
        raise JetError("the two maps must share source and target variables")
    if f.m != ft.m:
        raise JetError("maps with different numbers of components")


def _solve(f: GermMap, ft: GermMap, ctx: JetContext, left: bool) -> EquivalenceResult:
    _check_shapes(f, ft)
    K = ctx.K
    src, tgt = f.source, f.target
    tctx = ctx.with_ring(tgt)
    J = f.J_X
    jcache = _IdealCache(J)
    use_exp = ctx.exp_allowed()
    if not use_exp and not J.is_zero_ideal():
        ctx.require_exp()
    if J.is_zero_ideal():
        src_ders = [[src.one if i == j else src.zero for j in range(f.n)] for i in range(f.n)]
    else:
        src_ders = log_derivations(src, [J]).gens
    if f.J_Y.is_zero_ideal():
        tgt_ders = [[tgt.one if i == j else tgt.zero for j in range(f.m)] for i in range(f.m)]
    else:
        tgt_ders = log_derivations(tgt, [f.J_Y]).gens
    jgens = J.all_gens()
    phiX = JetAutomorphism.identity(ctx)
    phiY = JetAutomorphism.identity(tctx)
    ft_comps = [c.truncate(K) for c in ft.components]
    iterations = 0
    last_d = 0
    while True:
        g = [compose(c, phiX.images, K, src) for c in f.components]
        h = [compose(p, ft_comps, K, src) for p in phiY.images]
        e = [(a - b).truncate(K) for a, b in zip(g, h)]
        d = jcache.order(e, K)
        if d > K:
            break
        if (d <= last_d and not left) or iterations >= 4 * K:
            return EquivalenceResult(False, phiX, phiY, d, e, iterations, "no progress", K)
        last_d = d
        iterations += 1
        def build(separate):
            sysm = _System(src.field)
            tags = [("total", d)] + ([("xi", d - 1)] if separate else [])
            for tag, dmax in tags:
                for comp in range(f.m):
                    for jg in jgens:
                        oj = jg.order()
                        for mu in monomials_upto(f.n, 0, dmax - oj):
                            sysm.add(_contrib(tag, comp, _shift(jg, mu, dmax), dmax), ("lambda",))
            # source columns first: the pivoting then prefers a source change
            # and only falls back on the target where it must
            dg = [[apply_derivation(delta, gi).truncate(d) for gi in g] for delta in src_ders]
            for k, delta in enumerate(src_ders):
                od = min((a.order() for a in delta if a), default=0)
                for mu in monomials_upto(f.n, max(0, 2 - od), max(0, d - od)):
                    col = {}
                    for tag, dmax in tags:
                        for comp in range(f.m):
                            _contrib(tag, comp, _shift(dg[k][comp], mu, dmax), dmax, col)
                    sysm.add(col, ("xi", k, mu))
            if left:
                mon_img = _monomial_images(ft_comps, d, f.m, src)
                eta_img = [[compose(a, ft_comps, d, src) if a else src.zero for a in eta] for eta in tgt_ders]
                for k, eta in enumerate(tgt_ders):
                    oe = min((a.order() for a in eta if a), default=0)
                    for nu, nimg in mon_img.items():
                        if sum(nu) + oe < 1:
                            continue
                        col = {}
                        for comp in range(f.m):
                            if eta[comp]:
                                _contrib("total", comp, -nimg.mul(eta_img[k][comp], d), d, col)
                        sysm.add(col, ("P", k, nu))
            rhs = {}
            for comp in range(f.m):
                for ex, c in e[comp].terms.items():
                    if sum(ex) <= d:
                        rhs[("total", comp, ex)] = -c
            return sysm, sysm.solve(rhs)

        # first ask the source change to act only in degree d; if that is
        # too strict, let low-degree source and target terms cancel
        sysm, sol = build(left)
        if sol is None and left:
            sysm, sol = build(False)
        if sol is None:
            return EquivalenceResult(False, phiX, phiY if left else None, d, e, iterations, "linear system has no solution", K)

        xi = [src.zero] * f.n
        P = [tgt.zero] * f.m
        for j, val in sol.items():
            meta = sysm.meta[j]
            if meta[0] == "xi":
                _, k, mu = meta
                mon = src.monomial(mu, val)
                xi = [a + mon * b for a, b in zip(xi, src_ders[k])]
            elif meta[0] == "P":
                _, k, nu = meta
                mon = tgt.monomial(nu, val)
                P = [a + mon * b for a, b in zip(P, tgt_ders[k])]
        if any(xi):
            dxi = JetDerivation(ctx, xi)
            if use_exp:
                E = exp_derivation(dxi, ctx)
            else:
                E = JetAutomorphism(ctx, [x + a for x, a in zip(src.gens(), dxi.coeffs)])
            phiX = phiX.compose(E)
        if any(P):
            phiY = JetAutomorphism(tctx, [a + b for a, b in zip(phiY.images, P)])
    if left:
        if not phiY.has_invertible_linear_part():
            return EquivalenceResult(False, phiX, phiY, None, [], iterations, "target linear part not invertible", K)
        if not f.J_Y.is_zero_ideal() and not _preserves(phiY, f.J_Y, K):
            return EquivalenceResult(False, phiX, phiY, None, [], iterations, "target change does not preserve J_Y", K)
    ordf = min((_order(c) for c in f.components), default=1)
    ordf = 1 if ordf > K else ordf
    cand_X = phiX.trim(max(1, K - ordf + 1))
    cand_Y = phiY
    if left:
        ordft = min((_order(c) for c in ft_comps), default=1)
        ordft = 1 if ordft > K else ordft
        cand_Y = phiY.trim(max(1, K // ordft))
    if verify_equivalence(f, ft, cand_X, cand_Y if left else None, K):
        phiX, phiY = cand_X, cand_Y
    if not verify_equivalence(f, ft, phiX, phiY if left else None, K):
        raise AssertionError("solver result failed its composition check")
    if not _preserves(phiX, J, K):
        raise AssertionError("source change does not preserve J_X")
    return EquivalenceResult(True, phiX, phiY if left else None, None, [], iterations, "verified by composition", K)


def _monomial_images(comps: Sequence[Poly], d: int, m: int, ring: PolyRing) -> Dict[tuple, Poly]:
    """nu(ft) truncated at d, for target monomials nu that land in degree <= d."""
    orders = [_order(c) for c in comps]
    pw: Dict[Tuple[int, int], Poly] = {}

    def power(i, k):
        if (i, k) not in pw:
            pw[(i, k)] = ring.one if k == 0 else power(i, k - 1).mul(comps[i], d)
        return pw[(i, k)]

    out = {}
    for nu in monomials_upto(m, 0, d):
        if sum(k * o for k, o in zip(nu, orders)) > d:
            continue
        p = ring.one
        for i, k in enumerate(nu):
            if k:
                p = p.mul(power(i, k), d)
        if p:
            out[nu] = p
    return out


def right_solver(f: GermMap, ft: GermMap, ctx: JetContext) -> EquivalenceResult:
    """Phi_X tangent to the identity with f o Phi_X == ft modulo degree > K."""
    return _solve(f, ft, ctx, left=False)


def lr_solver(f: GermMap, ft: GermMap, ctx: JetContext) -> EquivalenceResult:
    """(Phi_X, Phi_Y) with Phi_Y o ft == f o Phi_X modulo degree > K.

    Phi_X is searched tangent to the identity; Phi_Y may have any invertible
    linear part.
    """
    return _solve(f, ft, ctx, left=True)


# ---------------------------------------------------------------- lifting automorphisms


@dataclass
class LiftResult:
    success: bool
    phi: Optional[JetAutomorphism] = None
    xi: Optional[JetDerivation] = None
    exponent: Optional[int] = None
    drops: List[int] = field(default_factory=list)
    checks: Dict[str, bool] = field(default_factory=dict)
    generator: Optional[Poly] = None
    message: str = ""

    @property
    def drop(self) -> Optional[int]:
        return sum(self.drops) if self.success else None


def _power_gens(I: LocalIdeal, M: int, K: int) -> List[Poly]:
    gens = I.standard_basis()
    out = []
    seen = set()
    for combo in combinations_with_replacement(range(len(gens)), M):
        p = I.ring.one
        for i in combo:
            p = p.mul(gens[i], K)
        if p and p not in seen:
            seen.add(p)
            out.append(p)
    return out


def _adjustment(xi_q: Poly, qs: Sequence[Poly], i: int, J: LocalIdeal, Igens: Sequence[Poly], ctx: JetContext):
    """tau with coefficients in (Igens): tau(q_k) in J for k < i and tau(q_i) == xi_q, modulo m^(K+1)."""
    ring, K, n = ctx.ring, ctx.K, ctx.ring.ngens
    sysm = _System(ring.field)
    jgens = J.all_gens()
    for k in range(i + 1):
        for jg in jgens:
            for mu in monomials_upto(n, 0, K - jg.order()):
                sysm.add(_contrib(k, 0, _shift(jg, mu, K), K), ("lambda",))
    dq = [[q.diff(v) for v in range(n)] for q in qs[: i + 1]]
    for v in range(n):
        for G in Igens:
            for mu in monomials_upto(n, 0, K - G.order()):
                coeff = _shift(G, mu, K)
                col = {}
                for k in range(i + 1):
                    if dq[k][v]:
                        _contrib(k, 0, coeff.mul(dq[k][v], K), K, col)
                sysm.add(col, ("tau", v, coeff))
    rhs = {(i, 0, e): c for e, c in xi_q.truncate(K).terms.items()}
    sol = sysm.solve(rhs)
    if sol is None:
        return None
    tau = [ring.zero] * n
    for j, val in sol.items():
        meta = sysm.meta[j]
        if meta[0] == "tau":
            tau[meta[1]] = tau[meta[1]] + meta[2].scale(val)
    return JetDerivation(ctx, tau)


def lift_automorphism(J: LocalIdeal, I: LocalIdeal, N: int, phibar: JetAutomorphism, ctx: Optional[JetContext] = None) -> LiftResult:
    """Phi preserving J and I with Phi == phibar modulo I, from phibar preserving J + I^N.

    The log of phibar is corrected one generator of J at a time by derivations
    with coefficients in I^M, taking M as large as possible (starting from N);
    the total decrease of M is reported as the exponent drop.
    """
    ctx = ctx or phibar.ctx
    ctx.require_exp()
    K = ctx.K
    if N < 1:
        raise JetError("N must be >= 1")
    if not phibar.is_tangent_to_identity():
        raise JetError("the automorphism must be tangent to the identity")
    ring = ctx.ring
    pre = LocalIdeal(ring, J.all_gens() + _power_gens(I, N, K))
    pre_cache = _IdealCache(pre)
    for q in J.all_gens():
        if not pre_cache.contains(phibar(q), K + 1):
            raise JetError(f"the automorphism does not preserve J + I^{N} (generator {q})")
    jcache = _IdealCache(J)
    xi = log_automorphism(phibar, ctx)
    qs = J.all_gens()
    bound = N
    drops = []
    for i, q in enumerate(qs):
        target = xi(q)
        if jcache.contains(target, K + 1):
            drops.append(0)
            continue
        tau = None
        for M in range(bound, 0, -1):
            tau = _adjustment(target, qs, i, J, _power_gens(I, M, K), ctx)
            if tau is not None:
                break
        if tau is None:
            return LiftResult(False, None, xi, None, drops, {}, q, f"no adjustment with coefficients in I for generator {q}")
        drops.append(bound - M)
        bound = M
        xi = xi - tau
    phi = exp_derivation(xi, ctx)
    icache = _IdealCache(I)
    checks = {
        "preserves_J": all(jcache.contains(phi(q), K + 1) for q in qs),
        "preserves_I": all(icache.contains(phi(p), K + 1) for p in I.all_gens()),
        "agrees_mod_I": all(icache.contains(a - b, K + 1) for a, b in zip(phi.images, phibar.images)),
    }
    ok = all(checks.values())
    return LiftResult(ok, phi, xi, bound, drops, checks, None, "verified" if ok else "verification failed")


def lift_along_chain(ideals: Sequence[LocalIdeal], Ns: Sequence[int], phibar: JetAutomorphism, ctx: Optional[JetContext] = None) -> LiftResult:
    """Lift through R/(I_1^N_1 + ... + I_r^N_r) -> ... -> R/I_1^N_1 -> R for a chain I_1 < ... < I_r."""
    ctx = ctx or phibar.ctx
    if len(ideals) != len(Ns) or not ideals:
        raise JetError("need one exponent per ideal")
    ring = ctx.ring
    phi = phibar
    drops: List[int] = []
    for r in range(len(ideals) - 1, -1, -1):
        J = LocalIdeal(ring, [g for k in range(r) for g in _power_gens(ideals[k], Ns[k], ctx.K)])
        res = lift_automorphism(J, ideals[r], Ns[r], phi, ctx)
        if not res.success:
            return res
        drops.extend(res.drops)
        phi = res.phi
    checks = {}
    for k, I in enumerate(ideals):
        c = _IdealCache(I)
        checks[f"preserves_I{k + 1}"] = all(c.contains(phi(p), ctx.K + 1) for p in I.all_gens())
    ok = all(checks.values())
    return LiftResult(ok, phi, log_automorphism(phi, ctx), None, drops, checks, None, "verified" if ok else "verification failed")


# ---------------------------------------------------------------- determinacy


@dataclass
class ProbeRow:
    N: int
    trials: int
    successes: int
    failure_degrees: List[int] = field(default_factory=list)

    @property
    def rate(self) -> Fraction:
        return Fraction(self.successes, self.trials) if self.trials else Fraction(0)


def perturbation_basis(fitt: LocalIdeal, N: int, K: int) -> List[Poly]:
    """Monomial multiples mu * G of the generators G of fitt^N with degree <= K."""
    out = []
    n = fitt.ring.ngens
    for G in _power_gens(fitt, N, K):
        for mu in monomials_upto(n, 0, K - G.order()):
            p = _shift(G, mu, K)
            if p:
                out.append(p)
    return out


def determinacy_probe(f: GermMap, Ns: Sequence[int], trials: int, seed: int, ctx: JetContext, fitt: Optional[LocalIdeal] = None) -> List[ProbeRow]:
    """Right-solver success rate on random perturbations inside Fitt_0(C)^N."""
    if trials <= 0:
        return []
    if fitt is None:
        from .crit import critical_locus

        fitt = critical_locus(f, reduce=False).unreduced
    if fitt.is_zero_ideal() or not fitt.standard_basis():
        raise JetError("Fitt_0 of the critical module is zero; nothing to probe")
    K = ctx.K
    rows = []
    rng = random.Random(seed)
    for N in Ns:
        basis = perturbation_basis(fitt, N, K)
        succ = 0
        fails = []
        for _ in range(trials):
            comps = []
            for c in f.components:
                h = f.source.zero
                for b in basis:
                    a = rng.randint(-3, 3)
                    if a:
                        h = h + b.scale(a)
                comps.append(c + h)
            ft = f.with_components(comps)
            res = right_solver(f, ft, ctx)
            if res.success:
                succ += 1
            else:
                fails.append(res.degree if res.degree is not None else -1)
        rows.append(ProbeRow(N, trials, succ, fails))
    return rows
