"""Exact sparse linear algebra over the rationals and prime fields.

Matrices are lists of rows, each row a dict {column: int}.  Over QQ the
elimination is fraction-free (cross-multiplication plus content
removal), so ranks are exact with pure integer arithmetic.
"""

from __future__ import annotations

from math import gcd


def _row_content(row: dict) -> int:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return 1
    return g


def exact_rank(rows, p: int = 0) -> int:
    """Rank of a sparse integer matrix, exact over QQ or Z/p."""
    if p:
        work = []
        for r in rows:
            rr = {c: v % p for c, v in r.items() if v % p}
            if rr:
                work.append(rr)
    else:
        work = [dict(r) for r in rows if r]
    rank = 0
    while work:
        work.sort(key=len)
        row = work.pop(0)
        if not row:
            continue
        rank += 1
        if p:
            c = min(row)
            inv = pow(row[c], p - 2, p)
            row = {k: v * inv % p for k, v in row.items()}
            nxt = []
            for r2 in work:
                b = r2.get(c)
                if b:
                    out = dict(r2)
                    for k, v in row.items():
                        nv = (out.get(k, 0) - b * v) % p
                        if nv:
                            out[k] = nv
                        else:
                            out.pop(k, None)
                    if out:
                        nxt.append(out)
                else:
                    nxt.append(r2)
            work = nxt
        else:
            c = min(row, key=lambda k: (abs(row[k]), k))
            a = row[c]
            nxt = []
            for r2 in work:
                b = r2.get(c)
                if b:
                    g0 = gcd(a, b)
                    aa, bb = a // g0, b // g0
                    out = {k: v * aa for k, v in r2.items()}
                    for k, v in row.items():
                        nv = out.get(k, 0) - bb * v
                        if nv:
                            out[k] = nv
                        else:
                            out.pop(k, None)
                    if out:
                        g = _row_content(out)
                        if g > 1:
                            out = {k: v // g for k, v in out.items()}
                        nxt.append(out)
                else:
                    nxt.append(r2)
            work = nxt
    return rank


def in_row_space(rows, target: dict, p: int = 0) -> bool:
    """Is the target vector in the row space?  Exact."""
    r0 = exact_rank(rows, p)
    r1 = exact_rank(list(rows) + [target], p)
    return r0 == r1
