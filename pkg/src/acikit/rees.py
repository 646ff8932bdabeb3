"""Rees and symmetric algebra presentations, and the mapping-cone
resolution for linear-type ideals with one generator more than grade.

The bigraded ambient ring is S = B[y_1..y_l] with deg x_i = (1,0) and
deg y_j = (d_j, 1).  The symmetric-algebra ideal is rowed out of the
minimal presentation of the ideal; the Rees ideal is computed by
eliminating an auxiliary variable t (deg t = (0,1), which keeps the
generators y_j - t f_j bihomogeneous, asserted at construction).  The
cone resolution splices the base-changed resolution of B/I with the
Buchsbaum-Rim tail through comparison maps lifted from the Koszul
complex; every square and d∘d = 0 is checked exactly, as is
entry-by-entry minimality.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .complexes import (ChainComplex, ChainMap, FreeModule, ModuleMap,
                        buchsbaum_rim, br_basis, koszul_complex,
                        lift_chain_map)
from .errors import GradeMismatchError, LiftFailedError
from .gb import Ideal
from .order import MonomialOrder
from .poly import Polynomial
from .resolve import BettiTable, Resolution, minimal_resolution, \
    resolution_on_generators
from .ring import Ring


def _degrees_of(fs):
    return [f.multidegree()[0] for f in fs]


def rees_ring(B: Ring, degrees, ynames=None) -> Ring:
    """S = B[y_1..y_l], deg x = (1,0), deg y_j = (d_j, 1)."""
    l = len(degrees)
    if ynames is None:
        ynames = [f"y{j}" for j in range(1, l + 1)]
        if set(ynames) & set(B.names):
            ynames = [f"yy{j}" for j in range(1, l + 1)]
    xdeg = [(d[0], 0) for d in B.degrees]
    ydeg = [(d, 1) for d in degrees]
    return Ring(B.names + tuple(ynames), B.field, B.order,
                tuple(xdeg) + tuple(ydeg))


def sym_ideal(fs, S: Ring | None = None) -> Ideal:
    """Defining ideal of the symmetric algebra: [y] times the minimal
    presentation of (fs)."""
    fs = list(fs)
    B = fs[0].ring
    degs = _degrees_of(fs)
    S = S or rees_ring(B, degs)
    l = len(fs)
    ys = [S.var(S.names[B.nvars + j]) for j in range(l)]
    if l == 1:
        return Ideal(S, [])
    res = resolution_on_generators(fs)
    if res.complex.length < 2:
        return Ideal(S, [])
    phi2 = res.complex.maps[1]
    gens = []
    for c in range(phi2.source.rank):
        g = S.zero
        for r, p in phi2.column(c).items():
            g = g + ys[r] * p.cast(S)
        gens.append(g)
    return Ideal(S, gens)


def rees_ideal(fs, S: Ring | None = None) -> Ideal:
    """Kernel of S -> B[t], y_j -> t f_j, by eliminating t."""
    fs = list(fs)
    B = fs[0].ring
    degs = _degrees_of(fs)
    S = S or rees_ring(B, degs)
    l = len(fs)
    ynames = list(S.names[B.nvars:])
    tname = "t" if "t" not in S.names else "t_elim"
    Rt = S.extend([tname], [(0, 1)], front=True,
                  order=MonomialOrder("elim", 1))
    t = Rt.var(tname)
    gens = []
    for j, f in enumerate(fs):
        g = Rt.var(ynames[j]) - t * f.cast(Rt)
        g.multidegree()  # the chosen weighting must make this homogeneous
        gens.append(g)
    J = Ideal(Rt, gens)
    elim = J.eliminate([tname])
    out = Ideal(S, [g.cast(S) for g in elim.gens])
    # kernel property: every generator vanishes under y_j -> t f_j
    Bt = B.extend([tname], [(1,)])  # weights irrelevant for the check
    images = {ynames[j]: fs[j].cast(Bt) * Bt.var(tname) for j in range(l)}
    for g in out.gens:
        if not g.subs(images, Bt).is_zero():
            raise AssertionError("elimination produced a non-relation")
    return out


@dataclass
class ReesData:
    base: Ring
    big: Ring
    gens: list
    sym: Ideal
    rees: Ideal
    linear_type: bool

    def to_json(self):
        return {
            "base_ring": self.base.header_line(),
            "big_ring": self.big.header_line(),
            "big_degrees": [list(d) for d in self.big.degrees],
            "generators": [str(f) for f in self.gens],
            "sym_ideal": [str(g) for g in self.sym.gens],
            "rees_ideal": [str(g) for g in self.rees.gens],
            "linear_type": self.linear_type,
        }


def rees_data(fs) -> ReesData:
    fs = list(fs)
    B = fs[0].ring
    S = rees_ring(B, _degrees_of(fs))
    sym = sym_ideal(fs, S)
    rees = rees_ideal(fs, S)
    lt = sym.subset_of(rees) and rees.subset_of(sym)
    return ReesData(B, S, fs, sym, rees, lt)


# ---------------------------------------------------------------------------
# the mapping-cone resolution
# ---------------------------------------------------------------------------


def _base_change_map(m: ModuleMap, S: Ring) -> ModuleMap:
    """F. ⊗ S with every shift (j,) lifted to (j, 1)."""
    src = FreeModule(S, tuple((s[0], 1) for s in m.source.shifts))
    tgt = FreeModule(S, tuple((s[0], 1) for s in m.target.shifts))
    entries = {rc: p.cast(S) for rc, p in m.entries.items()}
    return ModuleMap(src, tgt, entries)


@dataclass
class ConeResolution:
    complex: ChainComplex
    betti: BettiTable
    resolves: str  # "rees" when linear type, else "sym"
    linear_type: bool | None

    def pd(self) -> int:
        return self.betti.pd()


def cone_resolution(fs, linear_type: bool | None = None,
                    res_B: Resolution | None = None) -> ConeResolution:
    """Minimal bigraded resolution of the Rees algebra (linear type) or of
    the symmetric algebra, as the cone over the comparison map from the
    Buchsbaum-Rim tail into the base-changed resolution of B/I.

    Requires mu(I) = grade(I) + 1 on the nose; generators must be a
    minimal generating set.
    """
    fs = list(fs)
    B = fs[0].ring
    l = len(fs)
    I = Ideal(B, fs)
    if I.minimal_generator_count() != l:
        raise GradeMismatchError("generators are not minimal")
    ht = I.height()
    if ht != l - 1:
        raise GradeMismatchError(f"need grade = {l - 1}, found {ht}")
    degs = _degrees_of(fs)
    S = rees_ring(B, degs)
    ys = [S.var(S.names[B.nvars + j]) for j in range(l)]
    fS = [f.cast(S) for f in fs]

    res_B = res_B or resolution_on_generators(fs)
    K = koszul_complex(fs)
    nu = lift_chain_map(K, res_B.complex)

    phiS = [_base_change_map(m, S) for m in res_B.complex.maps]
    BR = buchsbaum_rim(fS, ys)
    pd = res_B.complex.length

    # alpha_i : C_i' -> F'_{i+1}, spliced through y-weighted comparison maps
    from itertools import combinations
    alphas = []
    for i in range(1, l - 1):
        Ci = BR.module(i)
        if i + 1 > pd:
            alphas.append(ModuleMap(Ci, FreeModule(S, ()), {}))
            continue
        target = phiS[i].source  # F'_{i+1}
        kbasis = {J: c for c, J in enumerate(combinations(range(l), i + 1))}
        nu_next = nu.maps[i + 1]
        entries = {}
        for c, (J, b) in enumerate(br_basis(l, i)):
            if b != 0:
                continue
            for pos, j in enumerate(J):
                rest = J[:pos] + J[pos + 1:]
                sign = 1 if pos % 2 == 0 else -1
                kc = kbasis[rest]
                for r in range(target.rank):
                    p = nu_next.entries.get((r, kc))
                    if p is None:
                        continue
                    add = ys[j] * p.cast(S) * sign
                    cur = entries.get((r, c))
                    entries[(r, c)] = add if cur is None else cur + add
        entries = {rc: p for rc, p in entries.items() if not p.is_zero()}
        alphas.append(ModuleMap(Ci, target, entries))

    # comparison squares anticommute with the signed comultiplication:
    # phi'_{i+1} ∘ alpha_i = - alpha_{i-1} ∘ sigma_i, so the cone closes
    # with +sigma in the lower block (isomorphic to the -sigma convention).
    for i in range(2, l - 1):
        if i + 1 > pd:
            continue
        left = phiS[i].compose(alphas[i - 1])
        right = alphas[i - 2].compose(BR.maps[i - 1])
        for key in set(left.entries) | set(right.entries):
            d = left.entries.get(key, S.zero) + right.entries.get(key, S.zero)
            if not d.is_zero():
                raise AssertionError(f"comparison square {i} fails at {key}")

    # assemble the cone
    mods = [FreeModule(S, ((0, 0),))]
    maps = []
    top = max(pd - 1, l - 1)
    for i in range(1, top + 1):
        fpart = phiS[i].source if i + 1 <= pd else FreeModule(S, ())
        cpart = BR.module(i - 1) if 1 <= i - 1 <= l - 2 else FreeModule(S, ())
        mods.append(FreeModule(S, fpart.shifts + cpart.shifts))
        entries = {}
        if i == 1:
            # delta_1 = [y] ∘ phi_2'
            phi2 = phiS[1]
            for c in range(phi2.source.rank):
                g = S.zero
                for r, p in phi2.column(c).items():
                    g = g + ys[r] * p
                if not g.is_zero():
                    entries[(0, c)] = g
        else:
            prev_f = phiS[i - 1].source if i <= pd else FreeModule(S, ())
            fr = prev_f.rank
            if i + 1 <= pd:
                for rc, p in phiS[i].entries.items():
                    entries[rc] = p
            if 1 <= i - 1 <= l - 2:
                off_c = fpart.rank
                al = alphas[i - 2]
                for (r, c), p in al.entries.items():
                    entries[(r, off_c + c)] = p
                if i - 2 >= 1:
                    sig = BR.maps[i - 2]
                    for (r, c), p in sig.entries.items():
                        entries[(fr + r, off_c + c)] = p
        maps.append(ModuleMap(mods[i], mods[i - 1], entries))
    cx = ChainComplex(maps)
    zero2 = (0, 0)
    for m in cx.maps:
        for (r, c), p in m.entries.items():
            if p.multidegree() == zero2:
                raise AssertionError("cone resolution is not minimal")
    # without verified linear type the same complex resolves Sym(I)
    resolves = "sym" if linear_type is False else "rees"
    return ConeResolution(cx, BettiTable.of_complex(cx), resolves, linear_type)


@dataclass
class CompareReport:
    equal: bool
    first_mismatch: tuple | None
    cone: ConeResolution
    direct: Resolution
    linear_type: bool

    def to_json(self):
        def ser(ms):
            return [sorted((list(k), v) for k, v in step.items()) for step in ms]
        return {"equal": self.equal,
                "first_mismatch": list(self.first_mismatch) if self.first_mismatch else None,
                "linear_type": self.linear_type,
                "cone_shifts": ser(self.cone.betti.shift_multisets()),
                "direct_shifts": ser(self.direct.betti.shift_multisets())}


def compare_resolutions(fs) -> CompareReport:
    """Cone resolution vs a directly computed minimal bigraded resolution
    of the elimination Rees ideal: per-step shift multisets must agree."""
    data = rees_data(fs)
    cone = cone_resolution(fs, linear_type=data.linear_type)
    direct = minimal_resolution(data.rees)
    a = cone.betti.shift_multisets()
    b = direct.betti.shift_multisets()
    equal = True
    first = None
    for k in range(max(len(a), len(b))):
        ca = a[k] if k < len(a) else Counter()
        cb = b[k] if k < len(b) else Counter()
        if ca != cb:
            equal = False
            diff = (set(ca.items()) ^ set(cb.items()))
            first = (k, sorted(diff)[0])
            break
    return CompareReport(equal, first, cone, direct, data.linear_type)
