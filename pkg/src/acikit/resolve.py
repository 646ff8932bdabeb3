"""Minimal graded free resolutions, Betti tables, regularity, and the
independent Koszul-homology Betti oracle.

Resolutions are built by iterated Schreyer steps: the reduced Groebner
basis gives the columns of the first differential, its syzygies (already
a Groebner basis for the induced order) the second, and so on; the
resulting non-minimal complex is then minimalized by cancelling constant
entries with exact row/column operations while the shifts are tracked.

The oracle at the bottom recomputes single-graded Betti numbers as
homology of the Koszul complex on the ring variables, degree slice by
degree slice, with exact sparse rank computations.  It shares nothing
with the syzygy pipeline above, which is the point.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import gcd, inf

from . import engine
from .engine import GraphGB, SchreyerCtx, mod_lt
from .errors import NotHomogeneousError
from .gb import Ideal, from_engine, to_engine
from .complexes import ChainComplex, FreeModule, ModuleMap
from .linalg import exact_rank
from .poly import Polynomial
from .ring import Ring

_LEVEL_SLACK = 16


# ---------------------------------------------------------------------------
# Betti tables
# ---------------------------------------------------------------------------


@dataclass
class BettiTable:
    entries: dict  # (homological degree i, shift tuple) -> multiplicity
    arity: int

    @staticmethod
    def of_complex(cx: ChainComplex) -> "BettiTable":
        ent = {}
        for k in range(cx.length + 1):
            for s in cx.module(k).shifts:
                ent[(k, s)] = ent.get((k, s), 0) + 1
        return BettiTable(ent, cx.ring.grading_arity)

    def pd(self) -> int:
        return max(i for (i, _) in self.entries) if self.entries else -1

    def total(self, i: int) -> int:
        return sum(v for (k, _), v in self.entries.items() if k == i)

    def beta(self, i: int, shift) -> int:
        if isinstance(shift, int):
            shift = (shift,)
        return self.entries.get((i, tuple(shift)), 0)

    def t(self, i: int):
        """Largest total shift in homological degree i (-inf when empty)."""
        vals = [sum(s) for (k, s) in self.entries if k == i]
        return max(vals) if vals else -inf

    def reg(self):
        """max over nonzero entries of (total shift - i)."""
        return max(sum(s) - i for (i, s) in self.entries) if self.entries else -inf

    def reg_x(self):
        if self.arity != 2:
            raise ValueError("reg_x needs a bigraded table")
        return max(s[0] - i for (i, s) in self.entries)

    def reg_y(self):
        if self.arity != 2:
            raise ValueError("reg_y needs a bigraded table")
        return max(s[1] - i for (i, s) in self.entries)

    def max_shift(self) -> int:
        return max(sum(s) for (_, s) in self.entries) if self.entries else 0

    def collapse(self) -> "BettiTable":
        """Project a bigraded table to the total grading."""
        ent = {}
        for (i, s), v in self.entries.items():
            key = (i, (sum(s),))
            ent[key] = ent.get(key, 0) + v
        return BettiTable(ent, 1)

    def shift_multisets(self):
        out = []
        for i in range(self.pd() + 1):
            out.append(Counter({s: v for (k, s), v in self.entries.items() if k == i}))
        return out

    def grid(self) -> str:
        """Macaulay-style text grid for single-graded tables: rows are j-i."""
        t = self.collapse() if self.arity == 2 else self
        pdv = t.pd()
        regv = t.reg()
        lines = []
        header = ["    "] + [f"{i:>6}" for i in range(pdv + 1)]
        lines.append("".join(header))
        for d in range(0, regv + 1):
            row = [f"{d:>4}"]
            for i in range(pdv + 1):
                b = t.beta(i, (d + i,))
                row.append(f"{b if b else '.':>6}")
            lines.append("".join(row))
        return "\n".join(lines)

    def to_json(self):
        return [{"i": i, "shift": list(s), "multiplicity": v}
                for (i, s), v in sorted(self.entries.items())]


@dataclass
class RegularityReport:
    reg: int
    reg_x: int | None
    reg_y: int | None
    pd: int
    depth: int
    dim: int

    def to_json(self):
        return {"reg": self.reg, "reg_x": self.reg_x, "reg_y": self.reg_y,
                "pd": self.pd, "depth": self.depth, "dim": self.dim}


# ---------------------------------------------------------------------------
# entry arithmetic for minimalization: (terms dict, positive denominator)
# ---------------------------------------------------------------------------


def _e_norm(terms: dict, den: int, p: int):
    if not terms:
        return None
    if p:
        terms = {m: c % p for m, c in terms.items()}
        terms = {m: c for m, c in terms.items() if c}
        return (terms, 1) if terms else None
    if den < 0:
        den = -den
        terms = {m: -c for m, c in terms.items()}
    g = den
    for c in terms.values():
        g = gcd(g, c)
        if g == 1:
            break
    if g > 1:
        terms = {m: c // g for m, c in terms.items()}
        den //= g
    return (terms, den)


def _e_submul(old, f, pe, pc_num: int, pc_den: int, p: int):
    """old - f * pe * (pc_den / pc_num); all entries are (terms, den)."""
    prod = engine.poly_mul(f[0], pe[0], p)
    if p:
        inv = pow(pc_num % p, p - 2, p)
        scale = (pc_den % p) * inv % p
        delta = {m: c * scale % p for m, c in prod.items()}
        out = dict(old[0]) if old else {}
        for m, c in delta.items():
            v = (out.get(m, 0) - c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return _e_norm(out, 1, p)
    num = pc_den
    den = f[1] * pe[1] * pc_num
    if den < 0:
        den, num = -den, -num
    delta = {m: c * num for m, c in prod.items()}
    od = old[1] if old else 1
    g = gcd(od, den)
    fa, fb = den // g, od // g
    out = {m: c * fa for m, c in (old[0].items() if old else ())}
    for m, c in delta.items():
        v = out.get(m, 0) - c * fb
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return _e_norm(out, od * fa, p)


def _minimalize(mats, shifts, p):
    """Cancel constant entries across the complex, in place.

    mats[k] is d_{k+1}: columns over level k+1, rows over level k, each
    entry a (terms, den) pair; shifts[k] maps level-k index -> degree.
    Pivots are processed smallest (k, row, col) first, deterministically.
    """
    L = len(mats)
    rowocc = []
    for k in range(L):
        occ = {}
        for c, col in mats[k].items():
            for r in col:
                occ.setdefault(r, set()).add(c)
        rowocc.append(occ)

    def is_const(e):
        return len(e[0]) == 1 and 0 in e[0]

    cand = set()
    for k in range(L):
        for c, col in mats[k].items():
            for r, e in col.items():
                if is_const(e):
                    cand.add((k, r, c))

    while cand:
        k, r, c = min(cand)
        cand.discard((k, r, c))
        col = mats[k].get(c)
        if col is None:
            continue
        e = col.get(r)
        if e is None or not is_const(e):
            continue
        pc_num, pc_den = e[0][0], e[1]
        pivot_col = {r2: v for r2, v in col.items() if r2 != r}
        for c2 in sorted(rowocc[k].get(r, ())):
            if c2 == c or c2 not in mats[k]:
                continue
            col2 = mats[k][c2]
            f = col2.pop(r, None)
            if f is None:
                continue
            for r2, pe in pivot_col.items():
                old = col2.get(r2)
                new = _e_submul(old, f, pe, pc_num, pc_den, p)
                if new is None:
                    if old is not None:
                        del col2[r2]
                        rowocc[k][r2].discard(c2)
                else:
                    col2[r2] = new
                    rowocc[k].setdefault(r2, set()).add(c2)
                    if is_const(new):
                        cand.add((k, r2, c2))
            if not col2:
                del mats[k][c2]
        rowocc[k].pop(r, None)
        for r2 in col:
            if r2 != r:
                rowocc[k].get(r2, set()).discard(c)
        del mats[k][c]
        shifts[k + 1].pop(c)
        shifts[k].pop(r)
        if k >= 1:
            colr = mats[k - 1].pop(r, None)
            if colr is not None:
                for r2 in colr:
                    rowocc[k - 1].get(r2, set()).discard(r)
        if k + 1 < L:
            for c2 in list(rowocc[k + 1].get(c, ())):
                m2 = mats[k + 1].get(c2)
                if m2 is not None:
                    m2.pop(c, None)
                    if not m2:
                        del mats[k + 1][c2]
            rowocc[k + 1].pop(c, None)


# ---------------------------------------------------------------------------
# resolution pipeline
# ---------------------------------------------------------------------------


@dataclass
class Resolution:
    complex: ChainComplex
    betti: BettiTable

    def pd(self) -> int:
        return self.betti.pd()


def _element_degree(e, ctx, shifts_prev, ring, codec):
    c, m = mod_lt(e, ctx)
    md = ring.mono_degree(codec.unpack(m))
    base = shifts_prev[c]
    return tuple(x + y for x, y in zip(md, base))


def _levels_to_resolution(ring: Ring, codec, levels, level_shifts, cap=None) -> Resolution:
    """levels[k]: list of module elements over components of level k-1
    (level 0 elements live over the target free module)."""
    p = ring.field.p
    mats = []
    for k, elems in enumerate(levels):
        mat = {}
        for j, e in enumerate(elems):
            col = {}
            for (c, m), coeff in e.items():
                t = col.setdefault(c, {})
                t[m] = coeff
            mat[j] = {c: _e_norm(t, 1, p) for c, t in col.items()}
        mats.append(mat)
    shifts = [dict(enumerate(s)) for s in level_shifts]
    _minimalize(mats, shifts, p)

    maps = []
    prev_index = sorted(shifts[0])
    prev_mod = FreeModule(ring, tuple(shifts[0][i] for i in prev_index))
    prev_pos = {i: n for n, i in enumerate(prev_index)}
    for k in range(len(mats)):
        cur_index = sorted(shifts[k + 1])
        if not cur_index:
            break
        cur_mod = FreeModule(ring, tuple(shifts[k + 1][i] for i in cur_index))
        cur_pos = {i: n for n, i in enumerate(cur_index)}
        entries = {}
        for c, col in mats[k].items():
            for r, (terms, den) in col.items():
                poly = from_engine(ring, codec, terms, den)
                entries[(prev_pos[r], cur_pos[c])] = poly
        maps.append(ModuleMap(cur_mod, prev_mod, entries))
        prev_index, prev_mod, prev_pos = cur_index, cur_mod, cur_pos
    cx = ChainComplex(maps)
    _assert_minimal(cx)
    return Resolution(cx, BettiTable.of_complex(cx))


def _assert_minimal(cx: ChainComplex):
    zero = (0,) * cx.ring.grading_arity
    for m in cx.maps:
        for (r, c), pterm in m.entries.items():
            if pterm.multidegree() == zero:
                raise AssertionError("minimalization left a unit entry")


def _iterate_schreyer(ring, codec, first_elems, first_ctx, first_shifts,
                      base_shifts, cap=None):
    p = ring.field.p
    levels = [first_elems]
    level_shifts = [base_shifts, first_shifts]
    ctx = first_ctx
    elems = first_elems
    guard = ring.nvars + _LEVEL_SLACK
    while elems and len(levels) <= guard:
        syz, nctx = engine.schreyer_step(elems, ctx, codec, p)
        if not syz:
            break
        shifts = [_element_degree(e, nctx, level_shifts[-1], ring, codec)
                  for e in syz]
        levels.append(syz)
        level_shifts.append(shifts)
        elems, ctx = syz, nctx
    if len(levels) > guard:
        raise AssertionError("resolution failed to terminate; this is a bug")
    return levels, level_shifts


def minimal_resolution(I: Ideal, cap=None) -> Resolution:
    """Minimal graded free resolution of R/I."""
    ring = I.ring
    codec = ring.codec()
    g = ring.grading_arity
    zero = (0,) * g
    if I.is_zero():
        cx = ChainComplex([ModuleMap(FreeModule(ring, ()),
                                     FreeModule(ring, (zero,)), {})], check=False)
        return Resolution(cx, BettiTable({(0, zero): 1}, g))
    _, gb = I._eng_gb(cap=cap)
    elems = [{(0, m): c for m, c in d.items()} for d in gb]
    ctx = SchreyerCtx(codec, [0], [(0,)])
    shifts1 = [_element_degree(e, ctx, [zero], ring, codec) for e in elems]
    levels, level_shifts = _iterate_schreyer(ring, codec, elems, ctx, shifts1,
                                             [zero], cap)
    return _levels_to_resolution(ring, codec, levels, level_shifts, cap)


def resolution_on_generators(fs, cap=None) -> Resolution:
    """Minimal resolution of R/(fs) whose first map is exactly [f_1..f_l].

    The generators must be a minimal generating set; levels >= 2 are
    minimalized, the first map is left untouched so comparison maps from
    the Koszul complex on the fs start as the identity.
    """
    fs = list(fs)
    ring = fs[0].ring
    codec = ring.codec()
    p = ring.field.p
    g = ring.grading_arity
    zero = (0,) * g
    cols = [{(0, m): c for m, c in to_engine(f, codec).items()} for f in fs]
    base = SchreyerCtx(codec, [0], [(0,)])
    graph = GraphGB(cols, base, 1, codec, p, cap=cap)
    syz = graph.syzygy_elements()
    ctx = graph.syz_ctx
    shifts1 = [f.multidegree() for f in fs]
    if not syz:
        levels, level_shifts = [cols], [[zero], shifts1]
    else:
        syz = [engine.mod_prim(s, ctx, p) for s in syz]
        shifts2 = [_element_degree(e, ctx, shifts1, ring, codec) for e in syz]
        lv, ls = _iterate_schreyer(ring, codec, syz, ctx, shifts2, shifts1, cap)
        levels = [cols] + lv
        level_shifts = [[zero]] + ls
    res = _levels_to_resolution(ring, codec, levels, level_shifts, cap)
    if res.complex.module(1).shifts != tuple(shifts1):
        raise AssertionError("generators were not minimal; first step collapsed")
    return res


def presentation_resolution(pres: ModuleMap, cap=None) -> Resolution:
    """Minimal resolution of coker(pres)."""
    ring = pres.target.ring
    codec = ring.codec()
    p = ring.field.p
    ncomp = pres.target.rank
    base_shifts = list(pres.target.shifts)
    ctx = SchreyerCtx(codec, [0] * ncomp, [(i,) for i in range(ncomp)])
    cols = []
    for c in range(pres.source.rank):
        col = {}
        for r, poly in pres.column(c).items():
            for m, cc in to_engine(poly, codec).items():
                col[(r, m)] = cc
        if col:
            cols.append(col)
    gb = engine.mod_buchberger(cols, ctx, codec, p, cap=cap)
    shifts1 = [_element_degree(e, ctx, base_shifts, ring, codec) for e in gb]
    levels, level_shifts = _iterate_schreyer(ring, codec, gb, ctx, shifts1,
                                             base_shifts, cap)
    return _levels_to_resolution(ring, codec, levels, level_shifts, cap)


# ---------------------------------------------------------------------------
# derived invariants
# ---------------------------------------------------------------------------


def regularity(I: Ideal, res: Resolution | None = None) -> RegularityReport:
    """Regularity / pd / depth / dim report for R/I."""
    res = res or minimal_resolution(I)
    b = res.betti
    arity = I.ring.grading_arity
    pd = b.pd()
    depth = I.ring.nvars - pd
    dim = I.krull_dim()
    if arity == 2:
        return RegularityReport(reg=b.reg(), reg_x=b.reg_x(), reg_y=b.reg_y(),
                                pd=pd, depth=depth, dim=dim)
    return RegularityReport(reg=b.reg(), reg_x=None, reg_y=None,
                            pd=pd, depth=depth, dim=dim)


def depth_check(cx: ChainComplex):
    """Lower bound min(depth(F_i) - i) for the module the complex resolves;
    over a polynomial ring free modules have depth = #variables."""
    nonzero = [k for k in range(cx.length + 1) if cx.module(k).rank > 0]
    if not nonzero:
        return inf
    n = cx.ring.nvars
    return min(n - k for k in nonzero)


# ---------------------------------------------------------------------------
# the independent Betti oracle: Koszul homology on the variables
# ---------------------------------------------------------------------------


def _lattice_echelon(vectors):
    """Integer row echelon with positive pivots (row-style Hermite)."""
    rows = [list(v) for v in vectors if any(v)]
    out = []
    n = len(vectors[0]) if vectors else 0
    col = 0
    while rows and col < n:
        with_pivot = [r for r in rows if r[col]]
        if not with_pivot:
            col += 1
            continue
        piv = min(with_pivot, key=lambda r: abs(r[col]))
        rows.remove(piv)
        if piv[col] < 0:
            piv = [-x for x in piv]
        done = True
        nxt = []
        for r in rows:
            if r[col]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[col]:
                    done = False
            if any(r):
                nxt.append(r)
        rows = nxt
        if done:
            out.append(piv)
            col += 1
        else:
            rows.append(piv)
    return out


def _class_reduce(echelon, v):
    v = list(v)
    for p, row in echelon:
        q = v[p] // row[p]
        if q:
            for i in range(p, len(v)):
                if row[i]:
                    v[i] -= q * row[i]
    return tuple(v)


def _monomials_of_degree(n: int, d: int):
    """All exponent tuples of total degree d in n variables."""
    if n == 1:
        yield (d,)
        return
    for e in range(d + 1):
        for rest in _monomials_of_degree(n - 1, d - e):
            yield (e,) + rest


class TorOracle:
    """Betti numbers of R/I from the variable Koszul complex.

    Slices decompose along the finest grading for which all generators
    are homogeneous, which keeps the exact rank computations small for
    torus-invariant inputs (monomial and Pfaffian-type ideals).
    """

    def __init__(self, I: Ideal):
        if I.ring.grading_arity != 1:
            raise NotHomogeneousError("the oracle works on single-graded rings")
        self.I = I
        self.ring = I.ring
        self.codec = I.ring.codec()
        self.p = I.ring.field.p
        _, gb = I._eng_gb()
        self.reducers = [engine.Reducer(d, self.codec, i) for i, d in enumerate(gb)]
        self.lts = [self.codec.unpack(r.lt) for r in self.reducers]
        diffs = []
        for g in I.gens:
            ms = list(g.terms)
            m0 = ms[0]
            for m in ms[1:]:
                diffs.append(tuple(a - b for a, b in zip(m, m0)))
        rows = _lattice_echelon(diffs) if diffs else []
        self.echelon = [(next(i for i, x in enumerate(r) if x), r)
                        for r in rows]
        self._std_cache = {}
        self._nf_cache = {}
        self._rank_cache = {}

    def _standard_monomials(self, d: int):
        hit = self._std_cache.get(d)
        if hit is None:
            lts = self.lts
            out = []
            for m in _monomials_of_degree(self.ring.nvars, d):
                if not any(all(x >= y for x, y in zip(m, lt)) for lt in lts):
                    out.append(m)
            hit = self._std_cache[d] = out
        return hit

    def quotient_dim(self, d: int) -> int:
        return len(self._standard_monomials(d))

    def _nf_monomial(self, m: tuple):
        hit = self._nf_cache.get(m)
        if hit is None:
            packed = self.codec.pack(m)
            rem, scale, _ = engine.nf({packed: 1}, self.reducers, self.codec, self.p)
            hit = self._nf_cache[m] = (
                {self.codec.unpack(k): c for k, c in rem.items()}, scale)
        return hit

    def _slice_class(self, S, u):
        v = list(u)
        for s in S:
            v[s] += 1
        return _class_reduce(self.echelon, v)

    def _differential_rank(self, i: int, j: int) -> int:
        """Rank of d_i : Λ^i ⊗ (R/I)_{j-i} -> Λ^{i-1} ⊗ (R/I)_{j-i+1}."""
        key = (i, j)
        hit = self._rank_cache.get(key)
        if hit is not None:
            return hit
        n = self.ring.nvars
        if i <= 0 or i > n or j - i < 0:
            self._rank_cache[key] = 0
            return 0
        dom_std = self._standard_monomials(j - i)
        total_rank = 0
        cols_by_class = {}
        for S in combinations(range(n), i):
            for u in dom_std:
                cls = self._slice_class(S, u)
                cols_by_class.setdefault(cls, []).append(self._column(S, u))
        for cls, cols in cols_by_class.items():
            rows = {}
            mat = []
            for col in cols:
                row = {}
                for rkey, c in col.items():
                    idx = rows.setdefault(rkey, len(rows))
                    row[idx] = c
                mat.append(row)
            total_rank += exact_rank(mat, self.p)
        self._rank_cache[key] = total_rank
        return total_rank

    def _column(self, S, u):
        """Koszul differential of e_S ⊗ u with exact integer entries."""
        col = {}
        dens = []
        pieces = []
        for pos, s in enumerate(S):
            sign = 1 if pos % 2 == 0 else -1
            rest = S[:pos] + S[pos + 1:]
            xu = tuple(e + (1 if t == s else 0) for t, e in enumerate(u))
            nf, scale = self._nf_monomial(xu)
            pieces.append((rest, nf, scale, sign))
            dens.append(scale)
        L = 1
        for d in dens:
            L = L * d // gcd(L, d)
        for rest, nf, scale, sign in pieces:
            f = L // scale
            for w, c in nf.items():
                key = (rest, w)
                v = col.get(key, 0) + sign * c * f
                if v:
                    col[key] = v
                else:
                    col.pop(key, None)
        return col

    def beta(self, i: int, j: int) -> int:
        """Graded Betti number beta_{i,j} of R/I."""
        if i == 0:
            return 1 if j == 0 else 0
        if j < i:
            return 0
        n = self.ring.nvars
        if i > n:
            return 0
        from math import comb
        dim_mid = comb(n, i) * self.quotient_dim(j - i)
        r_i = self._differential_rank(i, j)
        r_next = self._differential_rank(i + 1, j)
        return dim_mid - r_i - r_next

    def table(self, max_i: int, max_j: int) -> BettiTable:
        ent = {}
        for i in range(0, max_i + 1):
            for j in range(i, max_j + 1):
                b = self.beta(i, j)
                if b:
                    ent[(i, (j,))] = b
        return BettiTable(ent, 1)


def tor_oracle(I: Ideal, i: int, j: int) -> int:
    return TorOracle(I).beta(i, j)
