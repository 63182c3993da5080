"""Standard-basis kernel over free modules.

Vectors of ``R^r`` are stored as dicts ``{(pos, e_1, ..., e_n): coeff}``; an
ideal is the rank-one case with ``pos == 0`` everywhere. Module monomials are
compared position-over-term (position 0 is the largest).

For local orders the normal form is Mora's weak normal form with ecart
control: the reducer with the smallest ecart is used, ties going to the oldest
element, and the current remainder joins the reducer set whenever the chosen
reducer has larger ecart. For global orders ordinary division is used.

Standard bases of ideals under the local order are computed by Lazard's
method (``homogenized_std``): homogenize, run Buchberger under a degree order
that breaks ties with the local order, set the extra variable to 1. Running
Mora's algorithm directly is correct too but its coefficients can explode.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

Mono = Tuple[int, ...]
Vec = Dict[Mono, object]


class MonomialOrder:
    """Monomial order on a fixed number of variables.

    kinds: ``"ds"`` (local degree reverse lexicographic, 1 > x_i),
    ``"dp"`` (global degree reverse lexicographic), ``"block"``
    (global; first ``block`` variables are eliminated, degrevlex inside
    each block) and ``"hds"`` (global; the last variable is a homogenizing
    one, total degree first and ``ds`` on the others to break ties).
    """

    def __init__(self, kind: str, nvars: int, block: int = 0):
        if kind not in ("ds", "dp", "block", "hds"):
            raise ValueError(f"unknown order kind {kind!r}")
        if kind == "block" and not 0 <= block <= nvars:
            raise ValueError("bad block size")
        self.kind = kind
        self.nvars = nvars
        self.block = block

    @property
    def local(self) -> bool:
        return self.kind == "ds"

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.nvars, self.block) == (
            other.kind,
            other.nvars,
            other.block,
        )

    def __hash__(self):
        return hash((self.kind, self.nvars, self.block))

    def __repr__(self):
        if self.kind == "block":
            return f"block({self.block}|{self.nvars - self.block})"
        return f"{self.kind}({self.nvars})"

    def mkey(self):
        """Key on module monomials ``(pos, *exps)``; larger key = larger monomial."""
        if self.kind == "ds":

            def key(m):
                return (-m[0], -sum(m) + m[0]) + tuple(-k for k in m[:0:-1])

        elif self.kind == "dp":

            def key(m):
                return (-m[0], sum(m) - m[0]) + tuple(-k for k in m[:0:-1])

        elif self.kind == "hds":

            def key(m):
                x = m[1:-1]
                return (-m[0], sum(m) - m[0], -sum(x)) + tuple(-k for k in x[::-1])

        else:
            b = self.block + 1

            def key(m):
                e1 = m[1:b]
                e2 = m[b:]
                return (-m[0], sum(e1)) + tuple(-k for k in e1[::-1]) + (sum(e2),) + tuple(-k for k in e2[::-1])

        return key


def local_order(nvars: int) -> MonomialOrder:
    return MonomialOrder("ds", nvars)


def global_order(nvars: int) -> MonomialOrder:
    return MonomialOrder("dp", nvars)


def elimination_order(nvars: int, block: int) -> MonomialOrder:
    return MonomialOrder("block", nvars, block)


class Elt:
    __slots__ = ("vec", "lm", "lc", "ecart", "idx", "active")

    def __init__(self, vec: Vec, lm: Mono, ecart: int, idx: int):
        self.vec = vec
        self.lm = lm
        self.lc = vec[lm]
        self.ecart = ecart
        self.idx = idx
        self.active = True


def _divides(a: Mono, b: Mono) -> bool:
    if a[0] != b[0]:
        return False
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: Mono, b: Mono) -> Mono:
    return (a[0],) + tuple(max(x, y) for x, y in zip(a[1:], b[1:]))


def _disjoint(a: Mono, b: Mono) -> bool:
    return all(not (x and y) for x, y in zip(a[1:], b[1:]))


def _tdeg(m: Mono) -> int:
    return sum(m) - m[0]


class Engine:
    """Normal forms and standard bases for one order and characteristic."""

    def __init__(self, order: MonomialOrder, characteristic: int = 0):
        self.order = order
        self.p = characteristic
        self.key = order.mkey()
        self.local = order.local

    # ---- basic vector arithmetic ----

    def lm(self, v: Vec) -> Mono:
        return max(v, key=self.key)

    def ecart(self, v: Vec, lm: Optional[Mono] = None) -> int:
        if lm is None:
            lm = self.lm(v)
        return max(_tdeg(m) for m in v) - _tdeg(lm)

    def inv(self, c):
        return pow(c, -1, self.p) if self.p else 1 / c

    def monic(self, v: Vec, lm: Optional[Mono] = None) -> Vec:
        if lm is None:
            lm = self.lm(v)
        c = v[lm]
        if c == 1:
            return v
        ic = self.inv(c)
        if self.p:
            return {m: x * ic % self.p for m, x in v.items()}
        return {m: x * ic for m, x in v.items()}

    def _sub_multiple(self, h: Vec, c, shift: Mono, g: Vec) -> None:
        """h -= c * x^shift * g, in place."""
        p = self.p
        for m, x in g.items():
            nm = tuple(a + b for a, b in zip(m, shift))
            v = h.get(nm, 0) - c * x
            if p:
                v %= p
            if v:
                h[nm] = v
            else:
                del h[nm]

    def _reduce_lead(self, h: Vec, lm: Mono, g: Elt) -> None:
        c = h[lm] * self.inv(g.lc)
        if self.p:
            c %= self.p
        shift = (0,) + tuple(a - b for a, b in zip(lm[1:], g.lm[1:]))
        self._sub_multiple(h, c, shift, g.vec)

    def spoly(self, f: Elt, g: Elt) -> Vec:
        L = _lcm(f.lm, g.lm)
        sf = (0,) + tuple(a - b for a, b in zip(L[1:], f.lm[1:]))
        sg = (0,) + tuple(a - b for a, b in zip(L[1:], g.lm[1:]))
        h: Vec = {}
        cf = self.inv(f.lc)
        cg = self.inv(g.lc)
        self._sub_multiple(h, -cf, sf, f.vec)
        self._sub_multiple(h, cg, sg, g.vec)
        return h

    # ---- normal forms ----

    def nf(self, v: Vec, basis: Sequence[Elt], full: bool = False) -> Vec:
        """Normal form of ``v``; weak (Mora) for local orders.

        For local orders the result h satisfies u*v - h in <basis> for a unit u
        with leading monomial 1; h == 0 iff v lies in the submodule generated
        over the localization. ``full`` (global orders only) also reduces tails.
        """
        h = dict(v)
        if not h:
            return h
        if not self.local:
            return self._nf_global(h, basis, full)
        T: List[Elt] = list(basis)
        key = self.key
        while h:
            lm = max(h, key=key)
            best = None
            for t in T:
                if t.lm[0] == lm[0] and _divides(t.lm, lm):
                    if best is None or t.ecart < best.ecart:
                        best = t
                        if best.ecart == 0:
                            break
            if best is None:
                break
            e = max(_tdeg(m) for m in h) - _tdeg(lm)
            if best.ecart > e:
                T.append(Elt(dict(h), lm, e, -1))
            self._reduce_lead(h, lm, best)
        return h

    def _nf_global(self, h: Vec, basis: Sequence[Elt], full: bool) -> Vec:
        key = self.key
        rest: Vec = {}
        while h:
            lm = max(h, key=key)
            for t in basis:
                if t.lm[0] == lm[0] and _divides(t.lm, lm):
                    self._reduce_lead(h, lm, t)
                    break
            else:
                if not full:
                    h.update(rest)
                    return h
                rest[lm] = h.pop(lm)
        return rest

    # ---- standard bases ----

    def std(self, gens: Sequence[Vec], ring_case: bool = True, reduced: bool = False, known: Sequence[Vec] = ()) -> List[Vec]:
        """Standard basis (Groebner basis for global orders) of the generated module.

        Pairs are handled with the Gebauer-Moeller criteria; the product
        criterion is applied only for ideals (``ring_case``). ``known`` is a
        standard basis already; its internal pairs are not revisited.
        """
        G: List[Elt] = []
        pairs: List[Tuple[int, int, Mono]] = []
        counter = [0]
        for v in known:
            lm = self.lm(v)
            G.append(Elt(self.monic(v, lm), lm, self.ecart(v, lm), counter[0]))
            counter[0] += 1

        def add(h: Vec):
            lm = self.lm(h)
            h = self.monic(h, lm)
            elt = Elt(h, lm, self.ecart(h, lm), counter[0])
            counter[0] += 1
            self._update(G, pairs, elt, ring_case)

        gens = [dict(g) for g in gens if g]
        gens.sort(key=lambda g: self.key(self.lm(g)), reverse=True)
        for g in gens:
            h = self.nf(g, G)
            if h:
                add(h)
        while pairs:
            # smallest lcm degree first, then oldest
            best = min(range(len(pairs)), key=lambda k: (_tdeg(pairs[k][2]), pairs[k][0], pairs[k][1]))
            i, j, _ = pairs.pop(best)
            s = self.spoly(G[i], G[j])
            if not s:
                continue
            h = self.nf(s, G)
            if h:
                add(h)
        basis = self._minimal(G)
        if reduced and not self.local:
            out = []
            for k, e in enumerate(basis):
                others = [b for b in basis if b is not e]
                tail = dict(e.vec)
                lead = {e.lm: tail.pop(e.lm)}
                red = self._nf_global(tail, others, True) if tail else {}
                red.update(lead)
                out.append(self.monic(red, e.lm))
            return out
        return [e.vec for e in basis]

    def _minimal(self, G: List[Elt]) -> List[Elt]:
        out = []
        for e in G:
            redundant = False
            for f in G:
                if f is e:
                    continue
                if _divides(f.lm, e.lm) and (f.lm != e.lm or f.idx < e.idx):
                    redundant = True
                    break
            if not redundant:
                out.append(e)
        return out

    def _update(self, G: List[Elt], pairs: list, h: Elt, ring_case: bool) -> None:
        hi = len(G)
        C = [g for g in G if g.active and g.lm[0] == h.lm[0]]
        lcms = {g.idx: _lcm(h.lm, g.lm) for g in C}
        D = []
        for k, g1 in enumerate(C):
            L1 = lcms[g1.idx]
            if ring_case and _disjoint(h.lm, g1.lm):
                D.append(g1)
                continue
            dominated = False
            for g2 in C[k + 1 :]:
                if _divides(lcms[g2.idx], L1):
                    dominated = True
                    break
            if not dominated:
                for g2 in D:
                    if _divides(lcms[g2.idx], L1):
                        dominated = True
                        break
            if not dominated:
                D.append(g1)
        E = [g for g in D if not (ring_case and _disjoint(h.lm, g.lm))]
        kept = []
        for i, j, L in pairs:
            if (
                L[0] == h.lm[0]
                and _divides(h.lm, L)
                and _lcm(G[i].lm, h.lm) != L
                and _lcm(h.lm, G[j].lm) != L
            ):
                continue
            kept.append((i, j, L))
        pairs[:] = kept
        for g in E:
            pairs.append((g.idx, hi, lcms[g.idx]))
        for g in G:
            if g.active and _divides(h.lm, g.lm):
                g.active = False
        h.idx = hi
        G.append(h)

    def reduce_all(self, v: Vec, basis_vecs: Sequence[Vec]) -> Vec:
        return self.nf(v, self.elts(basis_vecs))

    def elts(self, vecs: Sequence[Vec]) -> List[Elt]:
        out = []
        for k, v in enumerate(vecs):
            lm = self.lm(v)
            out.append(Elt(v, lm, self.ecart(v, lm), k))
        return out


def homogenized_std(gens: Sequence[Vec], nvars: int, characteristic: int = 0) -> List[Vec]:
    """Standard basis of an ideal under ``ds`` via a homogeneous Groebner basis.

    Returns a minimal standard basis; the order of elements follows the
    homogeneous computation.
    """
    eng = Engine(MonomialOrder("hds", nvars + 1), characteristic)
    hom = []
    for g in gens:
        if not g:
            continue
        D = max(_tdeg(m) for m in g)
        hom.append({m + (D - _tdeg(m),): c for m, c in g.items()})
    local = Engine(local_order(nvars), characteristic)
    out: List[Vec] = []
    leads: List[Mono] = []
    for v in eng.std(hom):
        d: Vec = {}
        for m, c in v.items():
            d[m[:-1]] = c
        lm = local.lm(d)
        if any(_divides(l, lm) for l in leads):
            continue
        keep = [k for k, l in enumerate(leads) if not _divides(lm, l)]
        out = [out[k] for k in keep] + [local.monic(d, lm)]
        leads = [leads[k] for k in keep] + [lm]
    return out

