"""Diagonal subalgebra calculators: sufficient bounds for Koszulness of
the (c,e)-diagonals of the Rees algebra, and Cohen-Macaulayness
thresholds.

Koszulness itself is never decided.  The Koszul calculator evaluates,
from Betti data for B/I, the largest x-shift per step of the associated
standard-bigraded resolution and turns the criterion max{a/c, b/e} <=
i+1 into a lower bound on c (any e > 0 works because the y-shifts grow
exactly like i+1).  The bound therefore depends on the resolution data
supplied: the family's structural (possibly non-minimal) table
reproduces the classical constants, a minimal table can only sharpen
them.  Both candidate gamma readings from the two published a_max
conventions are reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import NotHomogeneousError
from .gb import Ideal
from .resolve import BettiTable, minimal_resolution


@dataclass(frozen=True)
class DiagonalSpec:
    c: int
    e: int

    def __post_init__(self):
        if (self.c, self.e) == (0, 0):
            raise ValueError("the (0,0) diagonal is not a diagonal")


@dataclass
class DiagonalBounds:
    koszul_c_min: Fraction
    gamma: Fraction            # max (t_{i+1} - d)/(i+1), the dividing strand
    gamma_alt: Fraction        # the (t_{i+1} + d)/(i+1) reading, reported only
    tail_bound: Fraction       # max (i-1)d/(i+1) from the symmetric-power tail
    d: int
    mu: int
    cm_threshold: int | None = None
    inputs: dict | None = None

    def to_json(self):
        return {"koszul_c_min": str(self.koszul_c_min),
                "gamma": str(self.gamma),
                "gamma_alt": str(self.gamma_alt),
                "tail_bound": str(self.tail_bound),
                "d": self.d, "mu": self.mu,
                "cm_threshold": self.cm_threshold,
                "inputs": self.inputs}


def koszul_bound(betti: BettiTable, d: int) -> DiagonalBounds:
    """Lower bound on c such that (c,e)-diagonals are Koszul for all e > 0,
    for an equigenerated degree-d ideal with mu = grade + 1.

    ``betti`` is a single-graded table for B/I (minimal, or the family's
    structural display table for the classical constants).
    """
    if betti.arity != 1:
        betti = betti.collapse()
    ones = [(s[0], v) for (i, s), v in betti.entries.items() if i == 1]
    if any(j != d for j, _ in ones):
        raise NotHomogeneousError(
            f"not equigenerated in degree {d}: first shifts {sorted(ones)}")
    mu = sum(v for _, v in ones)
    l = mu
    pd = betti.pd()
    neg_inf = Fraction(-10 ** 9)
    gamma = neg_inf
    gamma_alt = neg_inf
    tail = neg_inf
    top = max(pd - 1, l - 1)
    for i in range(1, top + 1):
        if i + 1 <= pd:
            t_next = betti.t(i + 1)
            gamma = max(gamma, Fraction(t_next - d, i + 1))
            gamma_alt = max(gamma_alt, Fraction(t_next + d, i + 1))
        if 1 <= i - 1 <= l - 2:
            tail = max(tail, Fraction((i - 1) * d, i + 1))
    cmin = max(gamma, tail, Fraction(0))
    return DiagonalBounds(koszul_c_min=cmin,
                          gamma=gamma if gamma != neg_inf else Fraction(0),
                          gamma_alt=gamma_alt if gamma_alt != neg_inf else Fraction(0),
                          tail_bound=tail if tail != neg_inf else Fraction(0),
                          d=d, mu=mu)


def cm_bound(d_list, m: int, e: int) -> int:
    """max{alpha, beta, d*e} with alpha = min{(e-1)d+u-m, e(u-m)} and
    beta = min{(e-1)d+u-d_1, e(u-d_1)}; d_1 is the first listed degree."""
    if e <= 0:
        raise ValueError("the Cohen-Macaulay threshold needs e > 0")
    degs = [x[0] if isinstance(x, tuple) else x for x in d_list]
    d = max(degs)
    u = sum(degs)
    d1 = degs[0]
    alpha = min((e - 1) * d + u - m, e * (u - m))
    beta = min((e - 1) * d + u - d1, e * (u - d1))
    return max(alpha, beta, d * e)


def shift_inequality_holds(betti: BettiTable, c: int, e: int):
    """The hypothesis max{a/c, b/e} <= i+1 checked shift by shift on a
    bigraded table; returns (ok, first violation or None)."""
    if betti.arity != 2:
        raise ValueError("need a bigraded table")
    for (i, (a, b)), v in sorted(betti.entries.items()):
        if i == 0 or not v:
            continue
        if a > (i + 1) * c or b > (i + 1) * e:
            return False, (i, (a, b))
    return True, None


def aci_family_betti(kind: str, n: int, d: int, dprime: int, t: int) -> BettiTable:
    """Structural Betti table of B/I for the colon-ideal families:
    Koszul strand of the n-fold complete intersection plus the shifted
    resolution of the grade-2 (kind A) or grade-3 Gorenstein (kind B)
    colon ideal."""
    ent = {(0, (0,)): 1}

    def add(i, j, v):
        if v:
            ent[(i, (j,))] = ent.get((i, (j,)), 0) + v

    add(1, d, n + 1)
    for k in range(2, n + 1):
        add(k, k * d, comb(n, k))
    if kind == "A":
        add(2, dprime + d, t)
        add(3, dprime + d + 1, t - 1)
    elif kind == "B":
        add(2, dprime + d, t)
        add(3, dprime + d + 1, t)
        add(4, 2 * dprime + d + 1, 1)
    else:
        raise ValueError("kind is A or B")
    return BettiTable(ent, 1)


def diagonal_report(fs, delta: DiagonalSpec, rees_info=None) -> dict:
    """Aggregate report for one diagonal: family shape, Cohen-Macaulayness
    of the Rees algebra, the Koszul bound, and the CM threshold."""
    from .rees import cone_resolution, rees_data
    fs = list(fs)
    ring = fs[0].ring
    I = Ideal(ring, fs)
    degs = [f.multidegree()[0] for f in fs]
    mu = len(fs)
    ht = I.height()
    if mu == ht + 1:
        family = f"grade{ht}-plus-one"
    else:
        family = "unrecognized"
    report = {"family": family, "delta": [delta.c, delta.e]}
    if family == "unrecognized":
        report["status"] = "UNVERIFIED_HYPOTHESES"
    cm_rees = None
    if mu == ht + 1:
        data = rees_info or rees_data(fs)
        cone = cone_resolution(fs, linear_type=data.linear_type)
        pd_s = cone.pd()
        depth = data.big.nvars - pd_s
        dim = data.rees.krull_dim()
        cm_rees = depth == dim
        report["rees_pd"] = pd_s
        report["rees_depth"] = depth
        report["rees_dim"] = dim
    report["cm_rees"] = cm_rees
    equigenerated = len(set(degs)) == 1
    if equigenerated:
        betti = minimal_resolution(I).betti
        kb = koszul_bound(betti, degs[0])
        report["koszul_c_min"] = str(kb.koszul_c_min)
        report["koszul_bounds"] = kb.to_json()
        clears_koszul = delta.e > 0 and Fraction(delta.c) >= kb.koszul_c_min
    else:
        report["koszul_c_min"] = None
        report["koszul_note"] = ("not equigenerated; the standard-bigraded "
                                 "construction does not apply")
        clears_koszul = None
    thr = cm_bound(degs, ring.nvars, delta.e) if delta.e > 0 else None
    report["cm_threshold"] = thr
    report["clears"] = {
        "koszul": clears_koszul,
        "cm": (delta.c > thr) if thr is not None else None,
    }
    return report
