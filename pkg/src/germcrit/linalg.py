"""Sparse exact linear systems over Q or F_p."""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence

from .ring import Field

Row = Dict[int, object]


def solve_sparse(rows: Sequence[Row], rhs: Sequence, field: Field) -> Optional[Dict[int, object]]:
    """A particular solution of A c = b, or None if the system is inconsistent.

    Pivots are taken at the smallest available column, so earlier columns are
    preferred and every non-pivot unknown is zero in the returned solution.
    """
    p = field.characteristic
    inv = field.inv
    pivots: Dict[int, tuple] = {}

    def norm(x):
        return x % p if p else x

    for row, b in zip(rows, rhs):
        row = {c: norm(v) for c, v in row.items() if norm(v)}
        b = norm(b)
        while row:
            hits = [c for c in row if c in pivots]
            if not hits:
                break
            c = min(hits)
            prow, pb = pivots[c]
            a = row[c]
            for k, v in prow.items():
                nv = norm(row.get(k, 0) - a * v)
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            b = norm(b - a * pb)
        if not row:
            if b:
                return None
            continue
        c = min(row)
        s = inv(row[c])
        pivots[c] = ({k: norm(v * s) for k, v in row.items()}, norm(b * s))
    sol: Dict[int, object] = {}
    for c in sorted(pivots, reverse=True):
        prow, pb = pivots[c]
        val = pb
        for k, v in prow.items():
            if k != c and k in sol:
                val = norm(val - v * sol[k])
        if val:
            sol[c] = val
    return sol


def check_solution(rows: Sequence[Row], rhs: Sequence, sol: Dict[int, object], field: Field) -> bool:
    p = field.characteristic
    for row, b in zip(rows, rhs):
        s = sum(v * sol.get(c, 0) for c, v in row.items()) - b
        if (s % p) if p else s:
            return False
    return True


def monomials_upto(n: int, lo: int, hi: int) -> List[tuple]:
    """Exponent vectors in n variables with lo <= total degree <= hi, graded."""
    out: List[tuple] = []

    def rec(i, left, prefix):
        if i == n - 1:
            out.append(tuple(prefix + [left]))
            return
        for k in range(left, -1, -1):
            rec(i + 1, left - k, prefix + [k])

    for d in range(max(lo, 0), hi + 1):
        if n == 0:
            if d == 0:
                out.append(())
            continue
        rec(0, d, [])
    return out
