"""Sparse exact multivariate polynomials.

A polynomial stores integer numerators keyed by exponent tuple together
with one positive denominator for the whole polynomial (always 1 over
Z/p).  This keeps arithmetic in plain Python ints; coefficients are
exposed as :class:`fractions.Fraction` on demand.  Instances are
immutable in practice: no method mutates ``self``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import NotHomogeneousError, RingMismatchError, ZeroPolynomialError


def _content(terms) -> int:
    g = 0
    for c in terms.values():
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


class Polynomial:
    __slots__ = ("ring", "terms", "den")

    def __init__(self, ring, terms, den=1, _normalized=False):
        self.ring = ring
        if _normalized:
            self.terms = terms
            self.den = den
            return
        terms = {m: c for m, c in terms.items() if c}
        p = ring.field.p
        if p:
            terms = {m: c % p for m, c in terms.items()}
            terms = {m: c for m, c in terms.items() if c}
            den = 1
        else:
            if den < 0:
                den = -den
                terms = {m: -c for m, c in terms.items()}
            if den != 1 and terms:
                g = gcd(_content(terms), den)
                if g > 1:
                    terms = {m: c // g for m, c in terms.items()}
                    den //= g
            if not terms:
                den = 1
        self.terms = terms
        self.den = den

    # -- construction helpers ----------------------------------------------
    @staticmethod
    def from_fractions(ring, fr_terms: dict) -> "Polynomial":
        den = 1
        items = []
        for m, c in fr_terms.items():
            c = Fraction(c)
            if c:
                items.append((m, c))
                den = den * c.denominator // gcd(den, c.denominator)
        return Polynomial(ring, {m: int(c * den) for m, c in items}, den)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, mono: tuple) -> Fraction:
        c = self.terms.get(tuple(mono), 0)
        return Fraction(c, self.den)

    def monomials(self):
        return self.terms.keys()

    def items(self):
        """Iterate (exponent tuple, Fraction coefficient)."""
        d = self.den
        for m, c in self.terms.items():
            yield m, Fraction(c, d)

    # -- arithmetic ----------------------------------------------------------
    def _check(self, other):
        if self.ring is not other.ring and self.ring != other.ring:
            raise RingMismatchError("operands live in different rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        self._check(other)
        if self.den == other.den:
            out = dict(self.terms)
            for m, c in other.terms.items():
                out[m] = out.get(m, 0) + c
            return Polynomial(self.ring, out, self.den)
        da, db = self.den, other.den
        g = gcd(da, db)
        fa, fb = db // g, da // g
        out = {m: c * fa for m, c in self.terms.items()}
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c * fb
        return Polynomial(self.ring, out, da * fa)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()}, self.den,
                          _normalized=True)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return self.__add__(other.__neg__())

    def __rsub__(self, other):
        return self.__neg__().__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return Polynomial(self.ring,
                              {m: c * other.numerator for m, c in self.terms.items()},
                              self.den * other.denominator)
        self._check(other)
        out = {}
        n = self.ring.nvars
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(m1[i] + m2[i] for i in range(n))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.ring, out, self.den * other.den)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not polynomial")
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base_needed = e >> 1
            if base_needed:
                base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.den == other.den and self.terms == other.terms
                and (self.ring is other.ring or self.ring == other.ring))

    def __hash__(self):
        return hash((self.ring, self.den, frozenset(self.terms.items())))

    # -- degrees and leading data ---------------------------------------------
    def multidegree(self) -> tuple:
        """Common degree vector of all terms; raises if not homogeneous."""
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no degree")
        ring = self.ring
        it = iter(self.terms)
        m0 = next(it)
        d0 = ring.mono_degree(m0)
        for m in it:
            d = ring.mono_degree(m)
            if d != d0:
                raise NotHomogeneousError(
                    f"terms of distinct degree: {m0} has {d0}, {m} has {d}",
                    witness=((m0, d0), (m, d)))
        return d0

    def is_homogeneous(self) -> bool:
        try:
            self.multidegree()
        except NotHomogeneousError:
            return False
        except ZeroPolynomialError:
            return True
        return True

    def total_degree(self) -> int:
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no degree")
        return max(sum(m) for m in self.terms)

    def leading_monomial(self, order=None) -> tuple:
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        codec = self.ring.codec(order)
        return max(self.terms, key=lambda m: codec.key(codec.pack(m)))

    def leading_coeff(self, order=None) -> Fraction:
        return self.coeff(self.leading_monomial(order))

    def monic(self, order=None) -> "Polynomial":
        if not self.terms:
            return self
        lm = self.leading_monomial(order)
        lc = self.terms[lm]
        if self.ring.field.p:
            inv = self.ring.field.inv(lc)
            p = self.ring.field.p
            return Polynomial(self.ring, {m: c * inv % p for m, c in self.terms.items()}, 1)
        return Polynomial(self.ring, {m: c * self.den for m, c in self.terms.items()}, lc)

    # -- mapping ----------------------------------------------------------------
    def cast(self, target_ring) -> "Polynomial":
        """Reinterpret in another ring, matching variables by name."""
        if target_ring is self.ring:
            return self
        idx = []
        for v, name in enumerate(self.ring.names):
            idx.append(target_ring.names.index(name) if name in target_ring.names else -1)
        out = {}
        tn = target_ring.nvars
        for m, c in self.terms.items():
            exps = [0] * tn
            for v, e in enumerate(m):
                if not e:
                    continue
                if idx[v] < 0:
                    raise RingMismatchError(
                        f"variable {self.ring.names[v]} is absent from the target ring")
                exps[idx[v]] = e
            out[tuple(exps)] = out.get(tuple(exps), 0) + c
        return Polynomial(target_ring, out, self.den)

    def subs(self, images: dict, target_ring=None) -> "Polynomial":
        """Substitute variables (by name) with polynomials; unmapped variables
        must exist in the target ring."""
        tr = target_ring or next(iter(images.values())).ring
        acc = tr.zero
        for m, c in self.terms.items():
            term = tr.const(Fraction(c, self.den))
            for v, e in enumerate(m):
                if not e:
                    continue
                name = self.ring.names[v]
                base = images.get(name)
                if base is None:
                    base = tr.var(name)
                term = term * base ** e
            acc = acc + term
        return acc

    # -- text ---------------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        ring = self.ring
        codec = ring.codec()
        monos = sorted(self.terms, key=lambda m: codec.key(codec.pack(m)), reverse=True)
        parts = []
        for m in monos:
            c = Fraction(self.terms[m], self.den)
            factors = []
            for v, e in enumerate(m):
                if e == 1:
                    factors.append(ring.names[v])
                elif e > 1:
                    factors.append(f"{ring.names[v]}^{e}")
            body = "*".join(factors)
            if not body:
                piece = str(abs(c))
            elif abs(c) == 1:
                piece = body
            else:
                piece = f"{abs(c)}*{body}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, piece))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, piece in parts[1:]:
            out += f" {sign} {piece}"
        return out

    def __repr__(self):
        return f"<poly {self} over {self.ring.short_name()}>"
