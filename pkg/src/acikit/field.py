"""Exact coefficient fields: the rationals and prime fields Z/p.

Polynomials store integer numerators plus a single positive denominator
(always 1 over Z/p), so the field object only has to answer questions
about p and normalize representatives.  Arithmetic is exact everywhere;
there is no floating point in the library.
"""

from __future__ import annotations

from dataclasses import dataclass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class CoefficientField:
    """Either QQ (p == 0) or the prime field Z/p (p > 0, p prime)."""

    p: int = 0

    def __post_init__(self):
        if self.p and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def is_rationals(self) -> bool:
        return self.p == 0

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    def normalize(self, c: int) -> int:
        return c % self.p if self.p else c

    def inv(self, c: int) -> int:
        if self.p:
            c %= self.p
            if c == 0:
                raise ZeroDivisionError("inverse of 0")
            return pow(c, self.p - 2, self.p)
        raise TypeError("rational inverses are handled at the polynomial level")

    def __str__(self):
        return "QQ" if self.p == 0 else f"Fp:{self.p}"

    @staticmethod
    def parse(text: str) -> "CoefficientField":
        t = text.strip()
        if t.upper() == "QQ":
            return QQ
        if t.lower().startswith("fp:"):
            return CoefficientField(int(t[3:]))
        if t.lower().startswith("fp"):  # bare "Fp" means the default speed prime
            return CoefficientField(32003)
        raise ValueError(f"unknown field {text!r}")


QQ = CoefficientField(0)
GF32003 = CoefficientField(32003)
