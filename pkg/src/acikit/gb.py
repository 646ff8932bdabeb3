"""Ideal arithmetic on top of the Groebner kernel.

Public ideal operations require homogeneous generators (the graded
setting is assumed throughout); auxiliary inhomogeneous computations
used by cross-checks can opt out.  Reduced Groebner bases are cached
per monomial order and are the canonical form behind ideal equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import engine
from .engine import GraphGB, PotCtx, SchreyerCtx, Reducer
from .errors import NotHomogeneousError, RingMismatchError, ZeroPolynomialError
from .order import MonomialOrder
from .poly import Polynomial
from .ring import Ring


def to_engine(f: Polynomial, codec) -> dict:
    return {codec.pack(m): c for m, c in f.terms.items()}


def from_engine(ring: Ring, codec, d: dict, den: int = 1) -> Polynomial:
    return Polynomial(ring, {codec.unpack(m): c for m, c in d.items()}, den)


class Ideal:
    def __init__(self, ring: Ring, gens, _check_homog=True):
        self.ring = ring
        out = []
        for g in gens:
            if isinstance(g, str):
                g = ring.poly(g)
            if g.ring is not ring and g.ring != ring:
                raise RingMismatchError("generator from a different ring")
            if g.is_zero():
                continue
            if _check_homog:
                g.multidegree()  # raises NotHomogeneousError with a witness
            out.append(g)
        self.gens = tuple(out)
        self._gb_cache: dict = {}

    # -- basics -------------------------------------------------------------
    def __repr__(self):
        return f"<ideal ({len(self.gens)} gens) in {self.ring.short_name()}>"

    def is_zero(self) -> bool:
        return not self.gens

    def _eng_gb(self, order: MonomialOrder | None = None, cap=None):
        order = order or self.ring.order
        key = (order.kind, order.k)
        hit = self._gb_cache.get(key)
        if hit is None:
            codec = self.ring.codec(order)
            gens = [to_engine(g, codec) for g in self.gens]
            gb = engine.buchberger(gens, codec, self.ring.field.p, cap=cap)
            hit = self._gb_cache[key] = (codec, gb)
        return hit

    def groebner(self, order: MonomialOrder | None = None, cap=None):
        """Reduced Groebner basis as monic polynomials."""
        codec, gb = self._eng_gb(order, cap)
        return [from_engine(self.ring, codec, d).monic(order) for d in gb]

    def leading_ideal(self, order: MonomialOrder | None = None):
        """Exponent tuples of the leading terms of the reduced basis."""
        codec, gb = self._eng_gb(order)
        return [codec.unpack(max(d, key=codec.key)) for d in gb]

    def normal_form(self, f: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
        codec, gb = self._eng_gb(order)
        reducers = [Reducer(d, codec, i) for i, d in enumerate(gb)]
        rem, scale, _ = engine.nf(to_engine(f, codec), reducers, codec,
                                  self.ring.field.p)
        return from_engine(self.ring, codec, rem, f.den * scale)

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def subset_of(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def equals(self, other: "Ideal") -> bool:
        if self.ring is not other.ring and self.ring != other.ring:
            raise RingMismatchError("ideals in different rings")
        codec, gb1 = self._eng_gb()
        _, gb2 = other._eng_gb()
        return gb1 == gb2

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other: "Ideal") -> "Ideal":
        if self.ring is not other.ring and self.ring != other.ring:
            raise RingMismatchError("ideals in different rings")
        return Ideal(self.ring, self.gens + other.gens, _check_homog=False)

    def product(self, other: "Ideal") -> "Ideal":
        if self.ring is not other.ring and self.ring != other.ring:
            raise RingMismatchError("ideals in different rings")
        return Ideal(self.ring, [a * b for a in self.gens for b in other.gens],
                     _check_homog=False)

    def power(self, s: int) -> "Ideal":
        if s < 1:
            raise ValueError("power needs s >= 1; the unit ideal is the caller's business")
        from itertools import combinations_with_replacement
        gens = []
        for combo in combinations_with_replacement(self.gens, s):
            g = combo[0]
            for h in combo[1:]:
                g = g * h
            gens.append(g)
        return Ideal(self.ring, gens, _check_homog=False)

    def colon(self, f: Polynomial) -> "Ideal":
        """(I : f) through the syzygies of [f, gens]."""
        if f.is_zero():
            raise ZeroPolynomialError("colon by zero")
        f.multidegree()
        codec = self.ring.codec()
        p = self.ring.field.p
        cols = [{(0, m): c for m, c in to_engine(f, codec).items()}]
        for g in self.gens:
            cols.append({(0, m): c for m, c in to_engine(g, codec).items()})
        base = SchreyerCtx(codec, [0], [(0,)])
        graph = GraphGB(cols, base, 1, codec, p)
        gens = []
        for s in graph.syzygy_elements():
            head = {m: c for (cc, m), c in s.items() if cc == 0}
            if head:
                gens.append(from_engine(self.ring, codec, head))
        out = Ideal(self.ring, gens, _check_homog=False)
        return out.interreduced()

    def intersect(self, other: "Ideal") -> "Ideal":
        """Intersection via elimination of a tag component in R^2."""
        if self.ring is not other.ring and self.ring != other.ring:
            raise RingMismatchError("ideals in different rings")
        codec = self.ring.codec()
        p = self.ring.field.p
        gens = []
        for g in self.gens:
            eg = to_engine(g, codec)
            e = {(0, m): c for m, c in eg.items()}
            e.update({(1, m): c for m, c in eg.items()})
            gens.append(e)
        for h in other.gens:
            gens.append({(1, m): c for m, c in to_engine(h, codec).items()})
        ctx = PotCtx(codec)
        gb = engine.mod_buchberger(gens, ctx, codec, p)
        out = []
        for e in gb:
            if all(c == 0 for (c, _) in e):
                out.append(from_engine(self.ring, codec,
                                       {m: v for (_, m), v in e.items()}))
        return Ideal(self.ring, out, _check_homog=False).interreduced()

    def eliminate(self, names) -> "Ideal":
        """I ∩ K[remaining variables] via a block order."""
        names = list(names)
        for nm in names:
            if nm not in self.ring.names:
                raise KeyError(f"no variable {nm!r}")
        for g in self.gens:
            g.multidegree()  # homogeneity w.r.t. the ring grading is required
        keep = [nm for nm in self.ring.names if nm not in set(names)]
        work = self.ring.permuted(tuple(names) + tuple(keep),
                                  order=MonomialOrder("elim", len(names)))
        codec = work.codec()
        gens = [to_engine(g.cast(work), codec) for g in self.gens]
        gb = engine.buchberger(gens, codec, self.ring.field.p)
        small = self.ring.drop(names)
        out = []
        k = len(names)
        for d in gens_filter_block(gb, codec, k):
            out.append(from_engine(work, codec, d).cast(small))
        return Ideal(small, out, _check_homog=False)

    def interreduced(self) -> "Ideal":
        """Replace the generators by an interreduced set (same ideal)."""
        if not self.gens:
            return self
        codec = self.ring.codec()
        basis = engine.interreduce([to_engine(g, codec) for g in self.gens],
                                   codec, self.ring.field.p)
        return Ideal(self.ring, [from_engine(self.ring, codec, d) for d in basis],
                     _check_homog=False)

    def minimal_generator_count(self) -> int:
        """mu(I) for homogeneous I: generators not in m*I + smaller-degree part.

        Computed by degree: a generator is redundant iff it lies in the
        ideal generated by the other generators of degree <= its own.
        """
        gens = sorted(self.gens, key=lambda g: sum(g.multidegree()))
        count = 0
        kept = []
        for g in gens:
            if kept and Ideal(self.ring, kept, _check_homog=False).contains(g):
                continue
            kept.append(g)
            count += 1
        return count

    # -- Hilbert data ------------------------------------------------------------
    def hilbert(self) -> "HilbertData":
        if self.ring.grading_arity != 1:
            raise NotHomogeneousError(
                "Hilbert series needs the standard single grading; "
                "use krull_dim/height for dimension data on bigraded rings")
        if not self.ring.is_standard_graded:
            raise NotHomogeneousError("Hilbert series implemented for weight-1 gradings")
        return self._hilbert_weight1()

    def _hilbert_weight1(self) -> "HilbertData":
        m = self.ring.nvars
        lts = [tuple(e) for e in self.leading_ideal()]
        num = _hilbert_numerator(tuple(sorted(lts)))
        k = _one_minus_t_multiplicity(num)
        return HilbertData(numerator=tuple(num), dim=m - k, height=k)

    def krull_dim(self) -> int:
        """Krull dimension of R/I (grading independent, via the lead terms)."""
        lts = [tuple(e) for e in self.leading_ideal()]
        num = _hilbert_numerator(tuple(sorted(lts)))
        return self.ring.nvars - _one_minus_t_multiplicity(num)

    def height(self) -> int:
        return self.ring.nvars - self.krull_dim()


def _one_minus_t_multiplicity(num) -> int:
    """Multiplicity of the root t = 1, by synthetic division."""
    k = 0
    work = list(num)
    while sum(work) == 0 and any(work):
        out = []
        acc = 0
        for c in work[:0:-1]:
            acc -= c
            out.append(acc)
        out.reverse()
        work = out or [0]
        k += 1
    return k


def gens_filter_block(gb, codec, k: int):
    """Yield GB elements free of the leading block of k variables."""
    for d in gb:
        ok = True
        for m in d:
            e = codec.unpack(m)
            if any(e[i] for i in range(k)):
                ok = False
                break
        if ok:
            yield d


# ---------------------------------------------------------------------------
# Hilbert series of monomial quotients (standard grading)
# ---------------------------------------------------------------------------


def _interreduce_monos(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(x <= y for x, y in zip(f, g)) for f in out):
            out.append(g)
    return out


def _poly1_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def _hilbert_numerator(gens: tuple) -> tuple:
    """Numerator of the Hilbert series of R/(gens) over (1-t)^n."""
    gens = _interreduce_monos([tuple(g) for g in gens])
    if not gens:
        return (1,)
    # pairwise coprime: the series factors
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    disjoint = True
    seen = set()
    for s in supports:
        if s & seen:
            disjoint = False
            break
        seen |= s
    if disjoint:
        num = [1]
        for g in gens:
            d = sum(g)
            f = [1] + [0] * (d - 1) + [-1]
            num = _poly1_mul(num, f)
        return tuple(num)
    # pivot on the most frequent variable among non-simple generators
    counts = {}
    for g, s in zip(gens, supports):
        if len(s) > 1 or max(g) > 1:
            for v in s:
                counts[v] = counts.get(v, 0) + 1
    v = max(counts, key=lambda x: (counts[x], -x))
    n = len(gens[0])
    pivot = tuple(1 if i == v else 0 for i in range(n))
    plus = [g for g in gens if g[v] == 0] + [pivot]
    colon = [tuple(e - 1 if i == v and e else e for i, e in enumerate(g)) for g in gens]
    a = _hilbert_numerator(tuple(sorted(_interreduce_monos(plus))))
    b = _hilbert_numerator(tuple(sorted(_interreduce_monos(colon))))
    out = list(a) + [0]
    if len(out) < len(b) + 1:
        out += [0] * (len(b) + 1 - len(out))
    for i, c in enumerate(b):
        out[i + 1] += c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class HilbertData:
    numerator: tuple  # coefficients of the numerator over (1-t)^nvars, ascending
    dim: int
    height: int

    def numerator_str(self) -> str:
        parts = []
        for i, c in enumerate(self.numerator):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                parts.append(f"{'+' if c > 0 else '-'} {abs(c)}*t^{i}")
        return " ".join(parts) if parts else "0"
