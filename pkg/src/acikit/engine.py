"""Low-level Groebner kernel.

Polynomials here are dicts ``{packed monomial: int coefficient}``.  Over
QQ a dict is understood up to positive scaling (denominators cleared);
reductions are fraction-free with an explicit integer ``scale`` so
transcripts stay exact: after ``nf`` the identity

    scale * f == sum(quot[k] * basis[k]) + remainder

holds over the integers.  Over Z/p basis elements are monic and the
scale is always 1.

Module elements are dicts ``{(component, packed): int}``.  Each module
context supplies a key function; Schreyer contexts carry the
accumulated leading-term product (sigma) and tie-break path per
component, which is what makes iterated syzygy steps cheap: the
syzygies of a Groebner basis are already a Groebner basis for the
induced order, so no second Buchberger run is needed per level.
"""

from __future__ import annotations

import heapq
from math import gcd

from .errors import DegreeCapExceededError
from .order import Codec

# ---------------------------------------------------------------------------
# ring-level polynomials: dict packed -> int
# ---------------------------------------------------------------------------


def content(d: dict) -> int:
    g = 0
    for c in d.values():
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


def prim(d: dict, codec: Codec, p: int) -> dict:
    """Normalize: monic over Z/p, primitive with positive lead over QQ."""
    if not d:
        return d
    if p:
        lt = max(d, key=codec.key)
        inv = pow(d[lt] % p, p - 2, p)
        return {m: c * inv % p for m, c in d.items()}
    g = content(d)
    lt = max(d, key=codec.key)
    if d[lt] < 0:
        g = -g
    if g != 1:
        return {m: c // g for m, c in d.items()}
    return dict(d)


def shift_mul(d: dict, q: int, c: int = 1) -> dict:
    return {m + q: cc * c for m, cc in d.items()}


def add_into(acc: dict, d: dict, c: int = 1):
    for m, cc in d.items():
        v = acc.get(m, 0) + cc * c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


def poly_mul(a: dict, b: dict, p: int = 0) -> dict:
    out = {}
    if len(a) > len(b):
        a, b = b, a
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = m1 + m2
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                del out[m]
    if p:
        out = {m: c % p for m, c in out.items()}
        out = {m: c for m, c in out.items() if c}
    return out


class Reducer:
    """One basis element prepared for division."""

    __slots__ = ("lt", "lc", "tail", "idx", "terms")

    def __init__(self, terms: dict, codec: Codec, idx: int = -1):
        self.terms = terms
        self.lt = max(terms, key=codec.key)
        self.lc = terms[self.lt]
        self.tail = tuple((m, c) for m, c in terms.items() if m != self.lt)
        self.idx = idx


_SHRINK_BITS = 512


def nf(f: dict, reducers, codec: Codec, p: int, want_q: bool = False):
    """Full normal form.  Returns (remainder, scale, quotients|None)."""
    key = codec.key
    divides = codec.divides
    acc = dict(f)
    heap = [(-key(m), m) for m in acc]
    heapq.heapify(heap)
    out = {}
    scale = 1
    quots = {} if want_q else None
    while heap:
        _, m = heapq.heappop(heap)
        c = acc.pop(m, 0)
        if not c:
            continue
        red = None
        for r in reducers:
            if divides(r.lt, m):
                red = r
                break
        if red is None:
            out[m] = c
            continue
        q = m - red.lt
        if p:
            cc = c % p
            for mg, cg in red.tail:
                mm = mg + q
                prev = acc.get(mm, 0)
                v = (prev - cc * cg) % p
                if v:
                    if not prev:
                        heapq.heappush(heap, (-key(mm), mm))
                    acc[mm] = v
                elif prev:
                    del acc[mm]
            if want_q:
                d = quots.setdefault(red.idx, {})
                d[q] = (d.get(q, 0) + cc) % p
        else:
            g = gcd(c, red.lc)
            a = red.lc // g          # lead coeffs are kept positive
            b = c // g
            if a != 1:
                scale *= a
                for k2 in acc:
                    acc[k2] *= a
                for k2 in out:
                    out[k2] *= a
                if want_q:
                    for dd in quots.values():
                        for k2 in dd:
                            dd[k2] *= a
                if scale.bit_length() > _SHRINK_BITS:
                    scale = _shrink(acc, out, quots, scale)
            for mg, cg in red.tail:
                mm = mg + q
                prev = acc.get(mm, 0)
                v = prev - b * cg
                if v:
                    if not prev:
                        heapq.heappush(heap, (-key(mm), mm))
                    acc[mm] = v
                else:
                    if prev:
                        del acc[mm]
            if want_q:
                d = quots.setdefault(red.idx, {})
                d[q] = d.get(q, 0) + b
    return out, scale, quots


def _shrink(acc, out, quots, scale):
    g = scale
    for d in (acc, out):
        for c in d.values():
            g = gcd(g, c)
            if g == 1:
                return scale
    if quots:
        for dd in quots.values():
            for c in dd.values():
                g = gcd(g, c)
                if g == 1:
                    return scale
    if g > 1:
        for d in (acc, out):
            for k in d:
                d[k] //= g
        if quots:
            for dd in quots.values():
                for k in dd:
                    dd[k] //= g
        scale //= g
    return scale


# ---------------------------------------------------------------------------
# Buchberger with Gebauer-Moeller pair pruning
# ---------------------------------------------------------------------------


def spoly(ri: Reducer, rj: Reducer, codec: Codec, p: int) -> dict:
    l = codec.lcm(ri.lt, rj.lt)
    qi, qj = l - ri.lt, l - rj.lt
    if p:
        h = shift_mul(ri.terms, qi)
        add_into(h, shift_mul(rj.terms, qj, -1))
        return {m: c % p for m, c in h.items() if c % p}
    g = gcd(ri.lc, rj.lc)
    a, b = rj.lc // g, ri.lc // g
    h = shift_mul(ri.terms, qi, a)
    add_into(h, shift_mul(rj.terms, qj, -b))
    return h


def buchberger(gens, codec: Codec, p: int, cap: int | None = None):
    """Reduced Groebner basis of the ideal generated by ``gens``.

    ``gens`` are engine dicts; the result is a list of normalized dicts
    sorted by decreasing leading term.  ``cap`` bounds the degree of any
    S-pair processed; exceeding it raises, never truncates.
    """
    G: list[Reducer] = []
    redundant: set[int] = set()
    pairs = []  # heap of (deg, key, i, j)

    def lcm_of(i, j):
        return codec.lcm(G[i].lt, G[j].lt)

    def add_elem(terms):
        t = len(G)
        r = Reducer(prim(terms, codec, p), codec, t)
        # Gebauer-Moeller update of the pair set
        cand = []
        for i in range(t):
            if i in redundant:
                continue
            cand.append((i, codec.lcm(G[i].lt, r.lt)))
        # F/M criteria: drop candidates whose lcm is a proper multiple of
        # another candidate's lcm; among equal lcms keep the first.
        kept = []
        for i, l in cand:
            ok = True
            for j, l2 in cand:
                if j == i:
                    continue
                if l2 == l:
                    if j < i:
                        ok = False
                        break
                elif codec.divides(l2, l):
                    ok = False
                    break
            if ok:
                kept.append((i, l))
        # B criterion against existing pairs
        alive = []
        for d, k, i, j in pairs:
            lij = lcm_of(i, j)
            if (codec.divides(r.lt, lij)
                    and codec.lcm(G[i].lt, r.lt) != lij
                    and codec.lcm(G[j].lt, r.lt) != lij):
                continue
            alive.append((d, k, i, j))
        pairs[:] = alive
        heapq.heapify(pairs)
        for i, l in kept:
            if l == G[i].lt + r.lt:  # product criterion: coprime leads
                continue
            heapq.heappush(pairs, (codec.deg(l), codec.key(l), i, t))
        for i in range(t):
            if i not in redundant and codec.divides(r.lt, G[i].lt):
                redundant.add(i)
        G.append(r)

    for g in gens:
        if g:
            add_elem(g)
    while pairs:
        d, _, i, j = heapq.heappop(pairs)
        if cap is not None and d > cap:
            raise DegreeCapExceededError(
                f"S-pair of degree {d} exceeds the cap {cap}")
        h = spoly(G[i], G[j], codec, p)
        rem, _, _ = nf(h, [g for g in G if g.idx not in redundant], codec, p)
        if rem:
            add_elem(rem)
    basis = [G[i].terms for i in range(len(G)) if i not in redundant]
    return interreduce(basis, codec, p)


def interreduce(basis, codec: Codec, p: int):
    """Make a generating set into the reduced (normalized) basis."""
    basis = [prim(b, codec, p) for b in basis if b]
    # drop elements whose lead is divisible by another's lead
    lts = [max(b, key=codec.key) for b in basis]
    keep = []
    for i, b in enumerate(basis):
        drop = False
        for j in range(len(basis)):
            if i == j:
                continue
            if codec.divides(lts[j], lts[i]):
                if lts[j] != lts[i] or j < i:
                    drop = True
                    break
        if not drop:
            keep.append(i)
    basis = [basis[i] for i in keep]
    out = []
    for i, b in enumerate(basis):
        others = [Reducer(basis[j], codec, j) for j in range(len(basis)) if j != i]
        rem, _, _ = nf(b, others, codec, p)
        out.append(prim(rem, codec, p))
    out.sort(key=lambda d: codec.key(max(d, key=codec.key)), reverse=True)
    return out


# ---------------------------------------------------------------------------
# module layer: elements are dicts {(comp, packed): int}
# ---------------------------------------------------------------------------


class PotCtx:
    """Position-over-term: higher component dominates (used to eliminate
    trailing components)."""

    __slots__ = ("codec",)

    def __init__(self, codec: Codec):
        self.codec = codec

    def mkey(self, c: int, m: int):
        return (-c, -self.codec.key(m))


class SchreyerCtx:
    """Order induced by leading terms one level down.

    ``sigma[c]`` is the accumulated product of leading monomials along
    the tower and ``path[c]`` the tie-break trail; ``m e_c > m' e_d``
    iff ``m*sigma[c] > m'*sigma[d]`` in the ring order, ties broken by
    the lexicographically smaller path.
    """

    __slots__ = ("codec", "sigma", "path")

    def __init__(self, codec: Codec, sigma, path):
        self.codec = codec
        self.sigma = list(sigma)
        self.path = list(path)

    def mkey(self, c: int, m: int):
        return (-self.codec.key(m + self.sigma[c]), self.path[c])


class GraphCtx:
    """Image components dominate transcript components."""

    __slots__ = ("img", "syz", "r")

    def __init__(self, img_ctx, syz_ctx, r: int):
        self.img = img_ctx
        self.syz = syz_ctx
        self.r = r

    def mkey(self, c: int, m: int):
        if c < self.r:
            return (0,) + self.img.mkey(c, m)
        return (1,) + self.syz.mkey(c - self.r, m)


def mod_lt(e: dict, ctx):
    return min(e, key=lambda cm: ctx.mkey(cm[0], cm[1]))


def mod_prim(e: dict, ctx, p: int) -> dict:
    if not e:
        return e
    if p:
        lt = mod_lt(e, ctx)
        inv = pow(e[lt] % p, p - 2, p)
        return {cm: c * inv % p for cm, c in e.items()}
    g = content(e)
    lt = mod_lt(e, ctx)
    if e[lt] < 0:
        g = -g
    if g != 1:
        return {cm: c // g for cm, c in e.items()}
    return dict(e)


class ModReducer:
    __slots__ = ("lt", "lc", "tail", "idx", "terms")

    def __init__(self, terms: dict, ctx, idx: int = -1):
        self.terms = terms
        self.lt = mod_lt(terms, ctx)
        self.lc = terms[self.lt]
        self.tail = tuple((cm, c) for cm, c in terms.items() if cm != self.lt)
        self.idx = idx


def mod_nf(f: dict, by_comp: dict, ctx, codec: Codec, p: int,
           want_q: bool = False):
    """Module normal form; ``by_comp`` maps component -> list of ModReducer."""
    mkey = ctx.mkey
    divides = codec.divides
    acc = dict(f)
    heap = [(mkey(c, m), (c, m)) for (c, m) in acc]
    heapq.heapify(heap)
    out = {}
    scale = 1
    quots = {} if want_q else None
    while heap:
        _, cm = heapq.heappop(heap)
        c0 = acc.pop(cm, 0)
        if not c0:
            continue
        comp, m = cm
        red = None
        for r in by_comp.get(comp, ()):
            if divides(r.lt[1], m):
                red = r
                break
        if red is None:
            out[cm] = c0
            continue
        q = m - red.lt[1]
        if p:
            cc = c0 % p
            for (c2, m2), cg in red.tail:
                mm = (c2, m2 + q)
                prev = acc.get(mm, 0)
                v = (prev - cc * cg) % p
                if v:
                    if not prev:
                        heapq.heappush(heap, (mkey(c2, m2 + q), mm))
                    acc[mm] = v
                elif prev:
                    del acc[mm]
            if want_q:
                d = quots.setdefault(red.idx, {})
                d[q] = (d.get(q, 0) + cc) % p
        else:
            g = gcd(c0, red.lc)
            a = red.lc // g
            b = c0 // g
            if a != 1:
                scale *= a
                for k2 in acc:
                    acc[k2] *= a
                for k2 in out:
                    out[k2] *= a
                if want_q:
                    for dd in quots.values():
                        for k2 in dd:
                            dd[k2] *= a
                if scale.bit_length() > _SHRINK_BITS:
                    scale = _shrink(acc, out, quots, scale)
            for (c2, m2), cg in red.tail:
                mm = (c2, m2 + q)
                prev = acc.get(mm, 0)
                v = prev - b * cg
                if v:
                    if not prev:
                        heapq.heappush(heap, (mkey(c2, m2 + q), mm))
                    acc[mm] = v
                elif prev:
                    del acc[mm]
            if want_q:
                d = quots.setdefault(red.idx, {})
                d[q] = d.get(q, 0) + b
    return out, scale, quots


def mod_spoly(ri: ModReducer, rj: ModReducer, codec: Codec, p: int) -> dict:
    comp = ri.lt[0]
    assert comp == rj.lt[0]
    l = codec.lcm(ri.lt[1], rj.lt[1])
    qi, qj = l - ri.lt[1], l - rj.lt[1]
    out = {}
    if p:
        for (c2, m2), cc in ri.terms.items():
            out[(c2, m2 + qi)] = cc
        for (c2, m2), cc in rj.terms.items():
            k = (c2, m2 + qj)
            out[k] = (out.get(k, 0) - cc) % p
        return {k: v for k, v in out.items() if v}
    g = gcd(ri.lc, rj.lc)
    a, b = rj.lc // g, ri.lc // g
    for (c2, m2), cc in ri.terms.items():
        out[(c2, m2 + qi)] = cc * a
    for (c2, m2), cc in rj.terms.items():
        k = (c2, m2 + qj)
        v = out.get(k, 0) - cc * b
        if v:
            out[k] = v
        else:
            del out[k]
    return out


def mod_buchberger(gens, ctx, codec: Codec, p: int, cap: int | None = None):
    """Groebner basis of a submodule of a free module.

    Same Gebauer-Moeller pruning as the ring case, with pairs restricted
    to elements whose leading terms share a component.
    """
    G: list[ModReducer] = []
    redundant: set[int] = set()
    pairs = []

    def add_elem(terms):
        t = len(G)
        r = ModReducer(mod_prim(terms, ctx, p), ctx, t)
        cand = []
        for i in range(t):
            if i in redundant or G[i].lt[0] != r.lt[0]:
                continue
            cand.append((i, codec.lcm(G[i].lt[1], r.lt[1])))
        kept = []
        for i, l in cand:
            ok = True
            for j, l2 in cand:
                if j == i:
                    continue
                if l2 == l:
                    if j < i:
                        ok = False
                        break
                elif codec.divides(l2, l):
                    ok = False
                    break
            if ok:
                kept.append((i, l))
        alive = []
        for d, k, i, j in pairs:
            if G[i].lt[0] == r.lt[0]:
                lij = codec.lcm(G[i].lt[1], G[j].lt[1])
                if (codec.divides(r.lt[1], lij)
                        and codec.lcm(G[i].lt[1], r.lt[1]) != lij
                        and codec.lcm(G[j].lt[1], r.lt[1]) != lij):
                    continue
            alive.append((d, k, i, j))
        pairs[:] = alive
        heapq.heapify(pairs)
        for i, l in kept:
            heapq.heappush(pairs, (codec.deg(l), codec.key(l), i, t))
        for i in range(t):
            if (i not in redundant and G[i].lt[0] == r.lt[0]
                    and codec.divides(r.lt[1], G[i].lt[1])):
                redundant.add(i)
        G.append(r)

    for g in gens:
        if g:
            add_elem(g)
    while pairs:
        d, _, i, j = heapq.heappop(pairs)
        if cap is not None and d > cap:
            raise DegreeCapExceededError(
                f"module S-pair of degree {d} exceeds the cap {cap}")
        h = mod_spoly(G[i], G[j], codec, p)
        by_comp = _group(G, redundant)
        rem, _, _ = mod_nf(h, by_comp, ctx, codec, p)
        if rem:
            add_elem(rem)
    basis = [G[i].terms for i in range(len(G)) if i not in redundant]
    return mod_interreduce(basis, ctx, codec, p)


def _group(G, redundant=frozenset()):
    by_comp = {}
    for r in G:
        if r.idx in redundant:
            continue
        by_comp.setdefault(r.lt[0], []).append(r)
    return by_comp


def mod_interreduce(basis, ctx, codec: Codec, p: int):
    basis = [mod_prim(b, ctx, p) for b in basis if b]
    lts = [mod_lt(b, ctx) for b in basis]
    keep = []
    for i in range(len(basis)):
        drop = False
        for j in range(len(basis)):
            if i == j or lts[j][0] != lts[i][0]:
                continue
            if codec.divides(lts[j][1], lts[i][1]):
                if lts[j] != lts[i] or j < i:
                    drop = True
                    break
        if not drop:
            keep.append(i)
    basis = [basis[i] for i in keep]
    out = []
    for i, b in enumerate(basis):
        reds = [ModReducer(basis[j], ctx, j) for j in range(len(basis)) if j != i]
        rem, _, _ = mod_nf(b, _group(reds), ctx, codec, p)
        out.append(mod_prim(rem, ctx, p))
    out.sort(key=lambda e: ctx.mkey(*mod_lt(e, ctx)))
    return out


# ---------------------------------------------------------------------------
# Schreyer syzygies of a module Groebner basis
# ---------------------------------------------------------------------------


def schreyer_step(G_terms, ctx, codec: Codec, p: int):
    """Syzygies of a Groebner basis, themselves a Groebner basis.

    Input: ``G_terms`` a module GB under ``ctx``.  Output is a triple
    ``(syzygies, sigma, path)`` where each syzygy is a module element
    over components indexed by the input generators, and sigma/path are
    the Schreyer data for the next level.  Only pairs whose lead
    quotient is a minimal generator of the per-component quotient ideal
    are reduced; by Schreyer's theorem the result is a GB for the
    induced order.
    """
    G = [ModReducer(t, ctx, i) for i, t in enumerate(G_terms)]
    by_comp_all = _group(G)
    sigma = []
    path = []
    is_schreyer = isinstance(ctx, SchreyerCtx)
    for i, r in enumerate(G):
        c, t = r.lt
        if is_schreyer:
            sigma.append(t + ctx.sigma[c])
            path.append(ctx.path[c] + (i,))
        else:
            sigma.append(t)
            path.append((i,))

    chosen = []  # (i, j, lcm)
    for c, group in by_comp_all.items():
        idxs = [r.idx for r in group]
        for pos, i in enumerate(idxs):
            cands = []
            for j in idxs[pos + 1:]:
                l = codec.lcm(G[i].lt[1], G[j].lt[1])
                cands.append((l - G[i].lt[1], j, l))
            kept = []
            for mu, j, l in cands:
                ok = True
                for mu2, j2, _ in cands:
                    if j2 == j:
                        continue
                    if mu2 == mu:
                        if j2 < j:
                            ok = False
                            break
                    elif codec.divides(mu2, mu):
                        ok = False
                        break
                if ok:
                    kept.append((mu, j, l))
            chosen.extend((i, j, l) for (mu, j, l) in kept)

    syz = []
    for i, j, l in chosen:
        qi = l - G[i].lt[1]
        qj = l - G[j].lt[1]
        h = mod_spoly(G[i], G[j], codec, p)
        rem, scale, quots = mod_nf(h, by_comp_all, ctx, codec, p, want_q=True)
        if rem:
            raise AssertionError("input to schreyer_step was not a Groebner basis")
        if p:
            s = {(i, qi): 1, (j, qj): (-1) % p}
            for k, qd in (quots or {}).items():
                for q, cc in qd.items():
                    key = (k, q)
                    s[key] = (s.get(key, 0) - cc) % p
        else:
            g = gcd(G[i].lc, G[j].lc)
            a, b = G[j].lc // g, G[i].lc // g
            s = {(i, qi): scale * a, (j, qj): -scale * b}
            for k, qd in (quots or {}).items():
                for q, cc in qd.items():
                    key = (k, q)
                    v = s.get(key, 0) - cc
                    if v:
                        s[key] = v
                    else:
                        del s[key]
        s = {k: v for k, v in s.items() if v}
        syz.append(s)

    next_ctx = SchreyerCtx(codec, sigma, path)
    for s, (i, j, l) in zip(syz, chosen):
        assert mod_lt(s, next_ctx) == (i, l - G[i].lt[1]), "syzygy lead mismatch"
    syz = [mod_prim(s, next_ctx, p) for s in syz]
    # larger leads first keeps later levels shallow
    syz.sort(key=lambda e: next_ctx.mkey(*mod_lt(e, next_ctx)))
    return syz, next_ctx


# ---------------------------------------------------------------------------
# graph modules: Groebner bases with built-in transcripts
# ---------------------------------------------------------------------------


class GraphGB:
    """GB of the module generated by (v_i, E_i) in F + R^s.

    Gives membership with exact lifts through the columns v_i, and the
    syzygy module of the columns as the transcript-only elements.
    """

    def __init__(self, columns, base_ctx, base_ncomp: int, codec: Codec, p: int,
                 syz_ctx=None, cap=None):
        self.codec = codec
        self.p = p
        self.r = base_ncomp
        s = len(columns)
        if syz_ctx is None:
            sigma = []
            path = []
            for i, v in enumerate(columns):
                c, t = mod_lt(v, base_ctx)
                if isinstance(base_ctx, SchreyerCtx):
                    sigma.append(t + base_ctx.sigma[c])
                    path.append(base_ctx.path[c] + (i,))
                else:
                    sigma.append(t)
                    path.append((i,))
            syz_ctx = SchreyerCtx(codec, sigma, path)
        self.syz_ctx = syz_ctx
        self.ctx = GraphCtx(base_ctx, syz_ctx, base_ncomp)
        gens = []
        for i, v in enumerate(columns):
            g = dict(v)
            g[(base_ncomp + i, 0)] = 1
            gens.append(g)
        self.gb = mod_buchberger(gens, self.ctx, codec, p, cap=cap)
        self.by_comp = _group([ModReducer(t, self.ctx, i)
                               for i, t in enumerate(self.gb)])

    def syzygy_elements(self):
        """Transcript-only GB elements, re-indexed to components 0..s-1."""
        out = []
        for e in self.gb:
            if all(c >= self.r for (c, _) in e):
                out.append({(c - self.r, m): v for (c, m), v in e.items()})
        return out

    def reduce(self, v: dict):
        """Normal form of a base-module element against the column span.

        Returns (remainder_in_base, lift, scale): the exact identity is
        scale*v == sum(lift[i] * column_i) + remainder, all over the
        integers (lift entries are engine dicts keyed by column index).
        """
        rem, scale, _ = mod_nf(dict(v), self.by_comp, self.ctx, self.codec, self.p)
        base = {}
        lift = {}
        for (c, m), cc in rem.items():
            if c < self.r:
                base[(c, m)] = cc
            else:
                d = lift.setdefault(c - self.r, {})
                d[m] = d.get(m, 0) - cc
        if self.p:
            lift = {i: {m: c % self.p for m, c in d.items() if c % self.p}
                    for i, d in lift.items()}
            lift = {i: d for i, d in lift.items() if d}
        return base, lift, scale

    def solve(self, v: dict):
        """Lift v through the columns; None when v is not in their span."""
        base, lift, scale = self.reduce(v)
        if base:
            return None
        return lift, scale

    def contains(self, v: dict) -> bool:
        base, _, _ = self.reduce(v)
        return not base
