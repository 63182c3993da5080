"""Exact sparse multivariate polynomials over Q and F_p.

A :class:`PolyRing` is an immutable variable context. Polynomials keep their
terms in a dict ``{exponent tuple: coefficient}`` with no zero coefficients;
term order only matters when a monomial order asks for a leading term.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

Exps = Tuple[int, ...]


class ContextError(ValueError):
    """Arithmetic across different variable contexts."""


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} (at column {pos + 1})" if text else message)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Field:
    """Q (characteristic 0) or the prime field F_p."""

    __slots__ = ("characteristic",)

    def __init__(self, characteristic: int = 0):
        if characteristic != 0 and not _is_prime(characteristic):
            raise ValueError(f"characteristic must be 0 or prime, got {characteristic}")
        self.characteristic = characteristic

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime-field"

    def __call__(self, value):
        p = self.characteristic
        if p:
            if isinstance(value, Fraction):
                return value.numerator * pow(value.denominator, -1, p) % p
            return int(value) % p
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def inv(self, c):
        if not c:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        return pow(c, -1, p) if p else 1 / c

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


class PolyRing:
    """Immutable variable context ``k[x_1, ..., x_n]``."""

    __slots__ = ("names", "field", "_index")

    def __init__(self, names: Union[str, Sequence[str]], field: Field = QQ):
        if isinstance(names, str):
            names = [s for s in re.split(r"[,\s]+", names) if s]
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
                raise ValueError(f"bad variable name {name!r}")
        self.names = names
        self.field = field
        self._index = {name: i for i, name in enumerate(names)}

    @property
    def ngens(self) -> int:
        return len(self.names)

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r} in context {self.names}") from None

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names and self.field == other.field

    def __hash__(self):
        return hash((self.names, self.field))

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)}; {self.field!r})"

    def zero_exps(self) -> Exps:
        return (0,) * len(self.names)

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = self.field(c)
        return Poly(self, {self.zero_exps(): c} if c else {})

    def var(self, name: Union[str, int]) -> "Poly":
        i = name if isinstance(name, int) else self.index(name)
        e = [0] * self.ngens
        e[i] = 1
        return Poly(self, {tuple(e): self.field(1)})

    def gens(self):
        return [self.var(i) for i in range(self.ngens)]

    def monomial(self, exps: Sequence[int], c=1) -> "Poly":
        c = self.field(c)
        return Poly(self, {tuple(exps): c} if c else {})

    def __call__(self, value) -> "Poly":
        if isinstance(value, Poly):
            return value.to_ring(self)
        if isinstance(value, str):
            return parse_poly(value, self)
        return self.const(value)

    def parse(self, text: str) -> "Poly":
        return parse_poly(text, self)

    def extend(self, names: Iterable[str]) -> "PolyRing":
        extra = [n for n in names if n not in self._index]
        return PolyRing(self.names + tuple(extra), self.field)

    def restrict(self, names: Iterable[str]) -> "PolyRing":
        keep = set(names)
        return PolyRing([n for n in self.names if n in keep], self.field)

    def with_field(self, field: Field) -> "PolyRing":
        return PolyRing(self.names, field)


def _add_exps(a: Exps, b: Exps) -> Exps:
    return tuple(x + y for x, y in zip(a, b))


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Dict[Exps, object]):
        self.ring = ring
        self.terms = terms

    # construction helpers

    @classmethod
    def from_terms(cls, ring: PolyRing, items) -> "Poly":
        p = ring.characteristic
        out: Dict[Exps, object] = {}
        for e, c in items:
            c = ring.field(c) if not p else c % p
            if not c:
                continue
            e = tuple(e)
            s = out.get(e, 0) + c
            if p:
                s %= p
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return cls(ring, out)

    def _new(self, terms) -> "Poly":
        return Poly(self.ring, terms)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ContextError(f"cannot combine polynomials from {self.ring} and {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    # arithmetic

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __neg__(self):
        p = self.ring.characteristic
        if p:
            return self._new({e: (-c) % p for e, c in self.terms.items()})
        return self._new({e: -c for e, c in self.terms.items()})

    def __pos__(self):
        return self

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.characteristic
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if p:
                s %= p
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return self._new(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "Poly":
        c = self.ring.field(c) if not isinstance(c, int) or not self.ring.characteristic else c % self.ring.characteristic
        if not c:
            return self.ring.zero
        p = self.ring.characteristic
        if p:
            return self._new({e: v * c % p for e, v in self.terms.items()})
        return self._new({e: v * c for e, v in self.terms.items()})

    def mul(self, other: "Poly", trunc: Optional[int] = None) -> "Poly":
        """Product, discarding terms of total degree above ``trunc``."""
        other = self._coerce(other)
        p = self.ring.characteristic
        out: Dict[Exps, object] = {}
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        if trunc is not None:
            bdeg = [(e, c, sum(e)) for e, c in b.items()]
        for e1, c1 in a.items():
            if trunc is not None:
                d1 = sum(e1)
                if d1 > trunc:
                    continue
                for e2, c2, d2 in bdeg:
                    if d1 + d2 > trunc:
                        continue
                    e = _add_exps(e1, e2)
                    out[e] = out.get(e, 0) + c1 * c2
            else:
                for e2, c2 in b.items():
                    e = _add_exps(e1, e2)
                    out[e] = out.get(e, 0) + c1 * c2
        if p:
            return self._new({e: c % p for e, c in out.items() if c % p})
        return self._new({e: c for e, c in out.items() if c})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.mul(other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return self.pow(k)

    def pow(self, k: int, trunc: Optional[int] = None) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result.mul(base, trunc)
            k >>= 1
            if k:
                base = base.mul(base, trunc)
        return result

    # inspection

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of a term (the m-adic order); -1 for zero."""
        return min((sum(e) for e in self.terms), default=-1)

    def constant_coeff(self):
        return self.terms.get(self.ring.zero_exps(), 0)

    def coeff(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), 0)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.zero_exps() in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def variables(self):
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return [self.ring.names[i] for i in sorted(used)]

    def homogeneous_part(self, d: int) -> "Poly":
        return self._new({e: c for e, c in self.terms.items() if sum(e) == d})

    def truncate(self, K: int) -> "Poly":
        return self._new({e: c for e, c in self.terms.items() if sum(e) <= K})

    def drop_below(self, d: int) -> "Poly":
        return self._new({e: c for e, c in self.terms.items() if sum(e) >= d})

    # calculus and substitution

    def diff(self, var: Union[str, int]) -> "Poly":
        i = var if isinstance(var, int) else self.ring.index(var)
        p = self.ring.characteristic
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if not k:
                continue
            v = c * k
            if p:
                v %= p
            if v:
                ne = list(e)
                ne[i] = k - 1
                out[tuple(ne)] = v
        return self._new(out)

    def substitute(self, bindings: Mapping, truncation: Optional[int] = None, ring: Optional[PolyRing] = None) -> "Poly":
        """Replace variables by polynomials; unbound variables map to themselves.

        ``ring`` is the context of the result (defaults to the context of the
        bound values, or our own). With ``truncation`` K, every intermediate
        product drops terms of degree > K.
        """
        subs: Dict[int, Poly] = {}
        for key, val in bindings.items():
            i = key if isinstance(key, int) else self.ring.index(key)
            subs[i] = val
        if ring is None:
            ring = next((v.ring for v in subs.values() if isinstance(v, Poly)), self.ring)
        images = []
        for i, name in enumerate(self.ring.names):
            if i in subs:
                v = subs[i]
                images.append(v if isinstance(v, Poly) else ring.const(v))
            else:
                images.append(ring.var(name))
        return compose(self, images, truncation, ring)

    def to_ring(self, ring: PolyRing) -> "Poly":
        """Re-express in another context containing every variable we use."""
        if ring == self.ring:
            return self
        if ring.field != self.ring.field:
            raise ContextError("field mismatch")
        idx = []
        for i, name in enumerate(self.ring.names):
            idx.append(ring._index.get(name))
        out = {}
        n = ring.ngens
        for e, c in self.terms.items():
            ne = [0] * n
            for i, k in enumerate(e):
                if k:
                    j = idx[i]
                    if j is None:
                        raise ContextError(f"variable {self.ring.names[i]!r} missing from {ring}")
                    ne[j] = k
            out[tuple(ne)] = c
        return Poly(ring, out)

    def __call__(self, *values, truncation=None):
        return compose(self, list(values), truncation)

    # printing

    def sort_key(self, e: Exps):
        # descending graded reverse lexicographic, used only for display
        return (sum(e), tuple(-k for k in reversed(e)))

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        parts = []
        for e in sorted(self.terms, key=self.sort_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            neg = False
            if not self.ring.characteristic and c < 0:
                neg, c = True, -c
            if mono:
                body = mono if c == 1 else f"{c}*{mono}"
            else:
                body = str(c)
            parts.append(("- " if neg else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"Poly({str(self)!r})"

    def primitive(self) -> "Poly":
        """Scalar multiple with coprime integer coefficients and a positive leading term.

        Over F_p the polynomial is made monic. Display helper only.
        """
        if not self.terms:
            return self
        lead = max(self.terms, key=self.sort_key)
        p = self.ring.characteristic
        if p:
            return self.scale(pow(self.terms[lead], -1, p))
        from math import gcd

        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.terms.values()]
        g = 0
        for v in ints:
            g = gcd(g, v)
        scale = Fraction(den, g)
        if self.terms[lead] < 0:
            scale = -scale
        return self.scale(scale)


def compose(p: Poly, images: Sequence[Poly], truncation: Optional[int] = None, ring: Optional[PolyRing] = None) -> Poly:
    """Evaluate ``p`` at the polynomials ``images`` (one per variable of p)."""
    if len(images) != p.ring.ngens:
        raise ValueError(f"need {p.ring.ngens} images, got {len(images)}")
    if ring is None:
        ring = images[0].ring if images else p.ring
    if ring.field != p.ring.field:
        raise ContextError("field mismatch in substitution")
    for im in images:
        if im.ring != ring:
            raise ContextError("substituted polynomials live in different contexts")
    if truncation is not None:
        for im in images:
            if im.constant_coeff():
                raise ValueError("truncated substitution needs images without constant term")
    cache = [dict() for _ in images]

    def power(i, k):
        c = cache[i]
        if k not in c:
            if k == 0:
                c[k] = ring.one
            elif k == 1:
                c[k] = images[i].truncate(truncation) if truncation is not None else images[i]
            else:
                c[k] = power(i, k - 1).mul(power(i, 1), truncation)
        return c[k]

    acc: Dict[Exps, object] = {}
    pch = ring.characteristic
    for e, c in p.terms.items():
        if truncation is not None:
            # each image has order >= 1, so a monomial of degree d lands in m^d
            if sum(e) > truncation:
                continue
        term = None
        for i, k in enumerate(e):
            if k:
                f = power(i, k)
                term = f if term is None else term.mul(f, truncation)
        if term is None:
            term = ring.one
        for te, tc in term.terms.items():
            acc[te] = acc.get(te, 0) + c * tc
    if pch:
        return Poly(ring, {e: c % pch for e, c in acc.items() if c % pch})
    return Poly(ring, {e: c for e, c in acc.items() if c})


# ---------- parsing ----------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            out.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            out.append(("id", m.group(2), start))
        else:
            tok = m.group(3)
            out.append(("op", "^" if tok == "**" else tok, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            self.fail("empty polynomial")
        p = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> Poly:
        sign = 1
        if self.peek() == ("op", "-", self.peek()[2]):
            self.take()
            sign = -1
        elif self.peek()[:2] == ("op", "+"):
            self.take()
        p = self.term()
        if sign < 0:
            p = -p
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            p = p * self.factor()
        if self.peek()[:2] == ("op", "/"):
            self.fail("division is only allowed inside a rational literal such as 3/4")
        return p

    def factor(self) -> Poly:
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            value = Fraction(tok[1])
            if self.peek()[:2] == ("op", "/"):
                self.take()
                den = self.peek()
                if den[0] != "num":
                    self.fail("division is only allowed inside a rational literal such as 3/4", den)
                self.take()
                if den[1] == 0:
                    self.fail("zero denominator", den)
                if self.ring.characteristic and den[1] % self.ring.characteristic == 0:
                    self.fail("denominator vanishes in this characteristic", den)
                value = Fraction(tok[1], den[1])
            base = self.ring.const(value)
        elif tok[0] == "id":
            self.take()
            if tok[1] not in self.ring._index:
                self.fail(f"unknown variable {tok[1]!r}", tok)
            base = self.ring.var(tok[1])
        elif tok[:2] == ("op", "("):
            self.take()
            base = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.fail("expected ')'")
            self.take()
        elif tok[:2] == ("op", "-"):
            self.take()
            return -self.factor()
        else:
            self.fail("expected a number, variable or '('" if tok[0] != "end" else "unexpected end of input")
        if self.peek()[:2] == ("op", "^"):
            self.take()
            ex = self.peek()
            if ex[0] != "num":
                self.fail("exponent must be a natural number", ex)
            self.take()
            base = base.pow(ex[1])
        return base


def parse_poly(text: str, ring: PolyRing) -> Poly:
    """Parse ``text`` such as ``"y^3 + x*y - 3/4*x^2"`` into a polynomial of ``ring``."""
    return _Parser(text, ring).parse()


def jacobian(polys: Sequence[Poly], ring: Optional[PolyRing] = None):
    """Rows = polynomials, columns = partial derivatives."""
    ring = ring or polys[0].ring
    return [[p.diff(i) for i in range(ring.ngens)] for p in polys]
