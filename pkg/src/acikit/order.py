"""Monomial orders over packed integer exponent vectors.

A monomial on n variables is stored as a single Python int with 16-bit
slots: the total degree sits in the low slot and each variable exponent
in its own slot above it (slot permutation depends on the order kind).
Multiplication of monomials is then integer addition, divisibility is a
subtraction plus a guard-bit mask, and each order provides a key
function such that ``key(m1) > key(m2)`` iff ``m1 > m2``.  Exponents are
capped at 2**15 - 1 so borrows always trip a guard bit.

Convention: the first-listed ring variable is the largest one, as in
K[x,y,z] with x > y > z.  Grevlex breaks degree ties on the last
variable, lex ignores degree.  ``Elimination(k)`` compares the leading
block of k variables by grevlex first, then the rest by grevlex.
"""

from __future__ import annotations

from dataclasses import dataclass

SLOT = 16
SLOT_MASK = (1 << SLOT) - 1
GUARD_BIT = 1 << (SLOT - 1)
MAX_EXP = GUARD_BIT - 1


@dataclass(frozen=True)
class MonomialOrder:
    """Order descriptor: ``grevlex``, ``lex``, ``elim`` (with block size k),
    or ``schreyer`` (module-level, induced; not usable as a ring order)."""

    kind: str = "grevlex"
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elim", "schreyer"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind == "elim" and self.k < 1:
            raise ValueError("elimination order needs a leading block of size >= 1")

    def __str__(self):
        return f"elim:{self.k}" if self.kind == "elim" else self.kind

    @staticmethod
    def parse(text: str) -> "MonomialOrder":
        t = text.strip().lower()
        if t in ("grevlex", "lex"):
            return MonomialOrder(t)
        if t.startswith("elim:"):
            return MonomialOrder("elim", int(t[5:]))
        raise ValueError(f"unknown monomial order {text!r}")


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


class Codec:
    """Packs exponent tuples for one (nvars, order) combination."""

    __slots__ = ("n", "order", "_slot_of_var", "_nslots", "_guards", "_key")

    def __init__(self, n: int, order: MonomialOrder):
        if order.kind == "schreyer":
            raise ValueError("schreyer orders are induced on modules, not rings")
        if order.kind == "elim" and order.k >= n:
            raise ValueError("elimination block must be a proper subset")
        self.n = n
        self.order = order
        if order.kind == "grevlex":
            # [deg][e_0][e_1]...[e_{n-1}]
            slot_of_var = [i + 1 for i in range(n)]
            nslots = n + 1
            const = sum(GUARD_BIT << (SLOT * i) for i in range(n))
            shift = SLOT * n

            def key(m, _c=const, _s=shift, _msk=(1 << shift) - 1):
                return ((m & SLOT_MASK) << _s) + (_c - ((m >> SLOT) & _msk))

        elif order.kind == "lex":
            # [deg][e_{n-1}]...[e_0]; key drops the degree slot
            slot_of_var = [n - i for i in range(n)]
            nslots = n + 1

            def key(m):
                return m >> SLOT

        else:  # elimination: [deg2][block2 exps][deg1][block1 exps]
            k = order.k
            n2 = n - k
            slot_of_var = [0] * n
            for t in range(n2):
                slot_of_var[k + t] = 1 + t
            deg1_slot = 1 + n2
            for t in range(k):
                slot_of_var[t] = deg1_slot + 1 + t
            nslots = n + 2
            c1 = sum(GUARD_BIT << (SLOT * i) for i in range(k))
            c2 = sum(GUARD_BIT << (SLOT * i) for i in range(n2))
            lowbits = SLOT * deg1_slot
            lowmask = (1 << lowbits) - 1
            shift2 = SLOT * n2
            mask2 = (1 << shift2) - 1
            shift1 = SLOT * k
            mask1 = (1 << shift1) - 1
            big = 1 << (SLOT * (n2 + 2))

            def key(m, _=None):
                lo = m & lowmask
                hi = m >> lowbits
                gk2 = ((lo & SLOT_MASK) << shift2) + (c2 - ((lo >> SLOT) & mask2))
                gk1 = ((hi & SLOT_MASK) << shift1) + (c1 - ((hi >> SLOT) & mask1))
                return gk1 * big + gk2

        self._slot_of_var = tuple(slot_of_var)
        self._nslots = nslots
        self._guards = sum(GUARD_BIT << (SLOT * i) for i in range(nslots))
        self._key = key

    # -- core ops ---------------------------------------------------------
    @property
    def one(self) -> int:
        return 0

    def pack(self, exps) -> int:
        if len(exps) != self.n:
            raise ValueError("exponent length mismatch")
        m = 0
        for v, e in enumerate(exps):
            if e < 0 or e > MAX_EXP:
                raise OverflowError(f"exponent {e} out of packable range")
            if e:
                m += e << (SLOT * self._slot_of_var[v])
        if self.order.kind == "elim":
            k = self.order.k
            d1 = sum(exps[:k])
            d2 = sum(exps[k:])
            if d1 > MAX_EXP or d2 > MAX_EXP:
                raise OverflowError("degree out of packable range")
            m += d2
            m += d1 << (SLOT * (1 + self.n - k))
        else:
            d = sum(exps)
            if d > MAX_EXP:
                raise OverflowError("degree out of packable range")
            m += d
        return m

    def unpack(self, m: int) -> tuple:
        return tuple((m >> (SLOT * self._slot_of_var[v])) & SLOT_MASK for v in range(self.n))

    def key(self, m: int):
        return self._key(m)

    def deg(self, m: int) -> int:
        if self.order.kind == "elim":
            return (m & SLOT_MASK) + ((m >> (SLOT * (1 + self.n - self.order.k))) & SLOT_MASK)
        return m & SLOT_MASK

    def divides(self, a: int, b: int) -> bool:
        d = b - a
        return d >= 0 and not (d & self._guards)

    def lcm(self, a: int, b: int) -> int:
        ea = self.unpack(a)
        eb = self.unpack(b)
        return self.pack(tuple(x if x > y else y for x, y in zip(ea, eb)))

    def cmp(self, a: int, b: int) -> int:
        ka, kb = self._key(a), self._key(b)
        return (ka > kb) - (ka < kb)


def mono_cmp(m1, m2, order: MonomialOrder) -> int:
    """Compare two exponent tuples under ``order``: -1, 0, or 1."""
    if len(m1) != len(m2):
        raise ValueError("exponent length mismatch")
    c = Codec(len(m1), order)
    return c.cmp(c.pack(m1), c.pack(m2))
