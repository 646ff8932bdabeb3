"""Graded free modules, polynomial matrices, and chain complexes.

Shifts are stored as the degree vector of each basis element, so a
summand written S(-a,-b) on paper appears here as the tuple (a, b).
Every map checks that each nonzero entry is homogeneous of the degree
forced by its row and column shifts; complexes check d∘d = 0 exactly.

The constructors in this module are combinatorial: the Koszul complex
on a sequence, the tail of the Buchsbaum-Rim complex of a 2-row matrix
[[f_1..f_l],[y_1..y_l]] (with its splice map into the free module on
the f's), comparison chain maps lifted through a resolution, and
mapping cones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import LiftFailedError, NotHomogeneousError, ZeroPolynomialError
from .gb import to_engine, from_engine
from .engine import GraphGB, SchreyerCtx
from .poly import Polynomial
from .ring import Ring


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True)
class FreeModule:
    ring: Ring
    shifts: tuple  # degree vector of each basis element

    def __post_init__(self):
        object.__setattr__(self, "shifts",
                           tuple(tuple(s) if not isinstance(s, tuple) else s
                                 for s in self.shifts))

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def summand_str(self) -> str:
        from collections import Counter
        if not self.shifts:
            return "0"
        cnt = Counter(self.shifts)
        parts = []
        for s in sorted(cnt):
            mult = cnt[s]
            body = ",".join(str(-x) for x in s)
            parts.append(f"S({body})" + (f"^{mult}" if mult > 1 else ""))
        return " + ".join(parts)


class ModuleMap:
    """Polynomial matrix between free modules; entries keyed (row, col)."""

    def __init__(self, source: FreeModule, target: FreeModule, entries: dict,
                 check=True):
        self.source = source
        self.target = target
        self.entries = {rc: p for rc, p in entries.items() if not p.is_zero()}
        if check:
            self.check_homogeneous()

    def check_homogeneous(self):
        for (r, c), p in self.entries.items():
            want = _vsub(self.source.shifts[c], self.target.shifts[r])
            got = p.multidegree()
            if got != want:
                raise NotHomogeneousError(
                    f"entry ({r},{c}) has degree {got}, shifts force {want}")

    def column(self, c: int) -> dict:
        return {r: p for (r, cc), p in self.entries.items() if cc == c}

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self ∘ other (apply other first)."""
        if other.target.shifts != self.source.shifts:
            raise ValueError("maps do not compose")
        zero = self.target.ring.zero
        out = {}
        cols = {}
        for (r, c), p in other.entries.items():
            cols.setdefault(c, []).append((r, p))
        mids = {}
        for (r, c), p in self.entries.items():
            mids.setdefault(c, []).append((r, p))
        for c, col in cols.items():
            for mid, q in col:
                for r, p in mids.get(mid, ()):
                    key = (r, c)
                    out[key] = out.get(key, zero) + p * q
        return ModuleMap(other.source, self.target, out, check=False)

    def is_zero(self) -> bool:
        return not self.entries

    def transpose_blocks(self):  # debugging helper
        return sorted(self.entries)

    def to_rows(self):
        """Dense list-of-lists, small matrices only."""
        zero = self.target.ring.zero
        return [[self.entries.get((r, c), zero) for c in range(self.source.rank)]
                for r in range(self.target.rank)]

    def __repr__(self):
        return (f"<map {self.source.rank}->{self.target.rank}, "
                f"{len(self.entries)} entries>")


class ChainComplex:
    """maps[k] is d_{k+1}: F_{k+1} -> F_k; F_0 is maps[0].target."""

    def __init__(self, maps, check=True):
        self.maps = list(maps)
        if check:
            self.verify()

    @property
    def length(self) -> int:
        return len(self.maps)

    def module(self, k: int) -> FreeModule:
        if k == 0:
            return self.maps[0].target
        return self.maps[k - 1].source

    def modules(self):
        return [self.module(k) for k in range(self.length + 1)]

    @property
    def ring(self) -> Ring:
        return self.maps[0].target.ring

    def verify(self):
        for k in range(1, len(self.maps)):
            if self.maps[k].target.shifts != self.maps[k - 1].source.shifts:
                raise ValueError(f"maps {k} and {k+1} do not chain")
            comp = self.maps[k - 1].compose(self.maps[k])
            if not comp.is_zero():
                raise AssertionError(f"d_{k} ∘ d_{k+1} != 0")
        for m in self.maps:
            m.check_homogeneous()

    def shift_multisets(self):
        from collections import Counter
        return [Counter(self.module(k).shifts) for k in range(self.length + 1)]

    def display(self) -> str:
        mods = [self.module(k).summand_str() for k in range(self.length + 1)]
        return " <- ".join(mods)

    def to_json(self) -> dict:
        steps = []
        for k in range(self.length + 1):
            steps.append([list(s) for s in self.module(k).shifts])
        mats = []
        for m in self.maps:
            mats.append([[r, c, str(p)] for (r, c), p in sorted(m.entries.items())])
        return {"ring": self.ring.header_line(),
                "degrees": [list(d) for d in self.ring.degrees],
                "shifts": steps, "matrices": mats}


class ChainMap:
    """maps[k]: C_k -> D_k commuting with the differentials."""

    def __init__(self, source: ChainComplex, target: ChainComplex, maps,
                 check=True):
        self.source = source
        self.target = target
        self.maps = list(maps)
        if check:
            self.verify()

    def verify(self):
        for k in range(1, len(self.maps)):
            left = self.target.maps[k - 1].compose(self.maps[k])
            right = self.maps[k - 1].compose(self.source.maps[k - 1])
            diff = {}
            zero = self.target.ring.zero
            for key in set(left.entries) | set(right.entries):
                d = left.entries.get(key, zero) - right.entries.get(key, zero)
                if not d.is_zero():
                    diff[key] = d
            if diff:
                raise AssertionError(f"chain-map square {k} fails at {sorted(diff)}")


# ---------------------------------------------------------------------------
# Koszul complexes
# ---------------------------------------------------------------------------


def koszul_complex(fs) -> ChainComplex:
    """Exterior-algebra complex on a sequence of homogeneous elements."""
    fs = list(fs)
    if not fs:
        raise ValueError("empty sequence")
    ring = fs[0].ring
    degs = []
    for f in fs:
        if f.is_zero():
            raise ZeroPolynomialError("zero element in a Koszul sequence")
        degs.append(f.multidegree())
    l = len(fs)
    g = ring.grading_arity
    zero_shift = (0,) * g

    def basis(k):
        return list(combinations(range(l), k))

    def shift_of(J):
        s = zero_shift
        for j in J:
            s = _vadd(s, degs[j])
        return s

    modules = []
    for k in range(l + 1):
        modules.append(FreeModule(ring, tuple(shift_of(J) for J in basis(k))))
    maps = []
    for k in range(1, l + 1):
        src = basis(k)
        tgt_index = {J: i for i, J in enumerate(basis(k - 1))}
        entries = {}
        for c, J in enumerate(src):
            for r_pos, j in enumerate(J):
                rest = J[:r_pos] + J[r_pos + 1:]
                sign = 1 if r_pos % 2 == 0 else -1
                entries[(tgt_index[rest], c)] = fs[j] * sign
        maps.append(ModuleMap(modules[k], modules[k - 1], entries))
    return ChainComplex(maps)


# ---------------------------------------------------------------------------
# Buchsbaum-Rim tail for a 2 x l matrix [[f_1..f_l], [y_1..y_l]]
# ---------------------------------------------------------------------------


def br_basis(l: int, i: int):
    """Basis of step i (1 <= i <= l-2): pairs (J, b) with |J| = i+2 and
    0 <= b <= i-1, outer loop on b, J in lexicographic order."""
    out = []
    for b in range(i):
        for J in combinations(range(l), i + 2):
            out.append((J, b))
    return out


def buchsbaum_rim(fs, ys) -> ChainComplex:
    """Truncated Buchsbaum-Rim complex C'. together with its splice map
    into the free module on the f's.

    Returned maps: [eps, sigma_2, ..., sigma_{l-2}] where eps lands in a
    free module with basis degrees (deg f_j) + (deg y_j) - (deg f_j y_j
    ... i.e. the shifts of the first syzygy step of the Rees ideal).
    Entries of the sigma maps are plus or minus the f's and y's.
    """
    fs = list(fs)
    ys = list(ys)
    l = len(fs)
    if l < 3:
        raise ValueError("the Buchsbaum-Rim tail needs at least 3 columns")
    if len(ys) != l:
        raise ValueError("need as many y's as f's")
    ring = fs[0].ring
    fdeg = [f.multidegree() for f in fs]
    ydeg = [y.multidegree() for y in ys]

    # cross elements f_a y_b - f_b y_a
    def cross(a, b):
        return fs[a] * ys[b] - fs[b] * ys[a]

    # target of eps: basis e_1..e_l with degrees deg(y_j)
    F = FreeModule(ring, tuple(ydeg))

    def shift_of(J, b):
        s = (0,) * ring.grading_arity
        for j in J:
            s = _vadd(s, fdeg[j])
        extra = _vsub(ydeg[0], fdeg[0])  # the pure y-weight, e.g. (0, 1)
        for _ in range(b + 2):
            s = _vadd(s, extra)
        return s

    modules = [F]
    for i in range(1, l - 1):
        modules.append(FreeModule(ring, tuple(shift_of(J, b)
                                              for (J, b) in br_basis(l, i))))

    maps = []
    # eps: C_1' -> F
    entries = {}
    for c, (J, b) in enumerate(br_basis(l, 1)):
        j1, j2, j3 = J
        entries[(j3, c)] = cross(j1, j2)
        entries[(j2, c)] = -cross(j1, j3)
        entries[(j1, c)] = cross(j2, j3)
    maps.append(ModuleMap(modules[1], modules[0], entries))
    # sigma_i: C_i' -> C_{i-1}'
    for i in range(2, l - 1):
        src = br_basis(l, i)
        tgt_index = {Jb: r for r, Jb in enumerate(br_basis(l, i - 1))}
        entries = {}
        for c, (J, b) in enumerate(src):
            a = (i - 1) - b  # exponent of g_1^* in the dual basis element
            for pos, j in enumerate(J):
                rest = J[:pos] + J[pos + 1:]
                sign = 1 if pos % 2 == 0 else -1
                if a >= 1:  # contract against g_1^*: coefficient f_j
                    r = tgt_index[(rest, b)]
                    entries[(r, c)] = entries.get((r, c), ring.zero) + fs[j] * sign
                if b >= 1:  # contract against g_2^*: coefficient y_j
                    r = tgt_index[(rest, b - 1)]
                    entries[(r, c)] = entries.get((r, c), ring.zero) + ys[j] * sign
        entries = {rc: p for rc, p in entries.items() if not p.is_zero()}
        maps.append(ModuleMap(modules[i], modules[i - 1], entries))
    return ChainComplex(maps)


# ---------------------------------------------------------------------------
# lifting a Koszul comparison map through a resolution
# ---------------------------------------------------------------------------


def _solve_through(phi: ModuleMap, graph_cache: dict, key, rhs_cols):
    """Lift each rhs column through the image of phi.  Returns columns as
    dicts {row: Polynomial in phi.source indexing}."""
    ring = phi.target.ring
    codec = ring.codec()
    p = ring.field.p
    graph = graph_cache.get(key)
    if graph is None:
        cols = []
        for c in range(phi.source.rank):
            col = {}
            for r, poly in phi.column(c).items():
                for m, cc in to_engine(poly, codec).items():
                    col[(r, m)] = col.get((r, m), 0) + cc
            cols.append({k: v for k, v in col.items() if v})
        base = SchreyerCtx(codec, [0] * phi.target.rank,
                           [(i,) for i in range(phi.target.rank)])
        graph = graph_cache[key] = GraphGB(cols, base, phi.target.rank, codec, p)
    out = []
    for rhs in rhs_cols:
        # clear denominators across the column; divide back out of the lift
        L = 1
        if p == 0:
            from math import gcd as _g
            for poly in rhs.values():
                L = L * poly.den // _g(L, poly.den)
        v = {}
        for r, poly in rhs.items():
            f = L // poly.den if p == 0 else 1
            for m, cc in to_engine(poly, codec).items():
                v[(r, m)] = v.get((r, m), 0) + cc * f
        sol = graph.solve({k: c for k, c in v.items() if c})
        if sol is None:
            raise LiftFailedError("column is not in the image")
        lift, scale = sol
        col = {}
        for idx, d in lift.items():
            col[idx] = from_engine(ring, codec, d, scale * L)
        out.append(col)
    return out


def lift_chain_map(koszul: ChainComplex, res: ChainComplex) -> ChainMap:
    """Comparison map from the Koszul complex on the resolution's first-map
    entries into the resolution, identity in homological degrees 0 and 1."""
    ring = res.ring
    K1 = koszul.module(1)
    F1 = res.module(1)
    if K1.shifts != F1.shifts:
        raise LiftFailedError("resolution does not start on the Koszul generators")
    d1 = res.maps[0]
    k1 = koszul.maps[0]
    for c in range(K1.rank):
        a = d1.entries.get((0, c), ring.zero)
        b = k1.entries.get((0, c), ring.zero)
        if not (a - b).is_zero():
            raise LiftFailedError("first maps disagree; build the resolution "
                                  "on the same ordered generators")
    maps = [identity_map(res.module(0)), identity_map(F1)]
    graph_cache: dict = {}
    top = min(koszul.length, res.length)
    for i in range(2, top + 1):
        phi = res.maps[i - 1]
        ci = koszul.maps[i - 1]
        prev = maps[i - 1]
        rhs_cols = []
        for c in range(koszul.module(i).rank):
            col = {}
            for r, q in ci.column(c).items():
                for r2, pp in prev.column(r).items():
                    col[r2] = col.get(r2, ring.zero) + pp * q
            rhs_cols.append({r: v for r, v in col.items() if not v.is_zero()})
        lifted = _solve_through(phi, graph_cache, i, rhs_cols)
        entries = {}
        for c, col in enumerate(lifted):
            for r, v in col.items():
                if not v.is_zero():
                    entries[(r, c)] = v
        maps.append(ModuleMap(koszul.module(i), res.module(i), entries))
    trunc_k = ChainComplex(koszul.maps[:top], check=False)
    trunc_f = ChainComplex(res.maps[:top], check=False)
    return ChainMap(trunc_k, trunc_f, maps)


def identity_map(F: FreeModule) -> ModuleMap:
    one = F.ring.one
    return ModuleMap(F, F, {(i, i): one for i in range(F.rank)})


def regrade_complex(cx: ChainComplex, new_ring: Ring,
                    base_shift=None) -> ChainComplex:
    """Reinterpret a complex in a ring with the same variables but a
    different grading, propagating shifts from the augmentation end.

    Fails (NotHomogeneousError) when some matrix entry is not homogeneous
    for the new grading, e.g. regrading a non-equigenerated Rees
    resolution to the standard bigrading.
    """
    g = new_ring.grading_arity
    shifts = [tuple(base_shift) if base_shift else (0,) * g] * cx.module(0).rank
    mods = [FreeModule(new_ring, tuple(shifts))]
    maps = []
    for k, m in enumerate(cx.maps):
        prev = mods[k]
        col_shift = {}
        entries = {}
        for (r, c), p in sorted(m.entries.items()):
            q = p.cast(new_ring)
            entries[(r, c)] = q
            s = _vadd(q.multidegree(), prev.shifts[r])
            if col_shift.setdefault(c, s) != s:
                raise NotHomogeneousError(
                    f"column {c} of map {k + 1} has inconsistent degrees "
                    "under the new grading")
        if len(col_shift) != m.source.rank:
            raise NotHomogeneousError("zero column; cannot infer its shift")
        cur = FreeModule(new_ring, tuple(col_shift[c]
                                         for c in range(m.source.rank)))
        mods.append(cur)
        maps.append(ModuleMap(cur, prev, entries))
    return ChainComplex(maps)


def mapping_cone(u: ChainMap) -> ChainComplex:
    """Cone over a chain map u: C -> D, with cone_k = D_k + C_{k-1} and
    differential [[d_D, u],[0, -d_C]]."""
    C, D = u.source, u.target
    ring = D.ring
    length = max(D.length, C.length + 1)
    mods = []
    for k in range(length + 1):
        dsh = D.module(k).shifts if k <= D.length else ()
        csh = C.module(k - 1).shifts if 1 <= k <= C.length + 1 else ()
        mods.append(FreeModule(ring, tuple(dsh) + tuple(csh)))
    maps = []
    for k in range(1, length + 1):
        entries = {}
        drk = D.module(k).rank if k <= D.length else 0
        drk1 = D.module(k - 1).rank if k - 1 <= D.length else 0
        if k <= D.length:
            for (r, c), p in D.maps[k - 1].entries.items():
                entries[(r, c)] = p
        if k - 1 <= len(u.maps) - 1 and k >= 1:
            um = u.maps[k - 1]
            for (r, c), p in um.entries.items():
                entries[(r, drk + c)] = p
        if 2 <= k <= C.length + 1:
            for (r, c), p in C.maps[k - 2].entries.items():
                entries[(drk1 + r, drk + c)] = -p
        maps.append(ModuleMap(mods[k], mods[k - 1], entries))
    return ChainComplex(maps)
