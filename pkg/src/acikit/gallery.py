"""Constructors for the ideal families under study.

The central object is a t x t generic skew-symmetric matrix whose
upper-left 3 x 3 block is zero; its maximal-order Pfaffians cut out
grade-3 almost complete intersections (one family for odd t, one for
even t), ordered so that the first three generators form a regular
sequence and the whole quadruple is a d-sequence.  Grade-2 families
come from 3 x 2 presentation matrices times a non-zerodivisor, and
"complete intersection plus one element" covers the rest.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import GradeMismatchError, ZeroPolynomialError
from .gb import Ideal
from .poly import Polynomial
from .ring import Ring


@dataclass
class GeneratorSequence:
    """An ordered generating sequence with verification flags.

    Flags are tri-state: None until the corresponding check has run.
    """

    fs: list
    degrees: list = field(default_factory=list)
    is_regular_prefix: bool | None = None
    is_d_sequence: bool | None = None
    max_last: bool | None = None

    def __post_init__(self):
        if not self.degrees:
            self.degrees = [f.multidegree() for f in self.fs]
        self.max_last = self.degrees[-1] == max(self.degrees)

    @property
    def ring(self) -> Ring:
        return self.fs[0].ring

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.fs)


class SkewMatrix:
    """Generic t x t skew-symmetric matrix with zero 3 x 3 upper-left block.

    Variables x_{ij} (1-based, i < j, not both <= 3) are listed row-major,
    matching the natural display of the matrix.
    """

    def __init__(self, t: int, field_=None, ring: Ring | None = None):
        if t < 5:
            raise ValueError("the family starts at t = 5")
        self.t = t
        names = []
        for i in range(1, t + 1):
            for j in range(i + 1, t + 1):
                if i <= 3 and j <= 3:
                    continue
                names.append(f"x{i}{j}" if t <= 9 else f"x{i}_{j}")
        if ring is None:
            kwargs = {}
            if field_ is not None:
                kwargs["field"] = field_
            ring = Ring(names, **kwargs)
        self.ring = ring
        self._entry = {}
        for nm in names:
            if t <= 9:
                i, j = int(nm[1]), int(nm[2])
            else:
                i, j = (int(s) for s in nm[1:].split("_"))
            self._entry[(i, j)] = ring.var(nm)

    def variable_count(self) -> int:
        return self.ring.nvars

    def entry(self, i: int, j: int) -> Polynomial:
        """Matrix entry, 1-based indices."""
        if i == j:
            return self.ring.zero
        if i < j:
            return self._entry.get((i, j), self.ring.zero)
        return -self._entry.get((j, i), self.ring.zero)

    def pfaffian(self, indices=None) -> Polynomial:
        """Pfaffian of the principal submatrix on the given sorted 1-based
        indices (all of them by default); recursive first-row expansion,
        sign fixed so pf([[0,a],[-a,0]]) = a."""
        if indices is None:
            indices = tuple(range(1, self.t + 1))
        indices = tuple(sorted(indices))
        if len(indices) % 2:
            raise ValueError("Pfaffians need an even-order submatrix")
        return self._pf_cached(indices)

    def _pf_cached(self, indices: tuple) -> Polynomial:
        if not hasattr(self, "_pf_memo"):
            self._pf_memo = {}
        hit = self._pf_memo.get(indices)
        if hit is not None:
            return hit
        if not indices:
            return self.ring.one
        if len(indices) == 2:
            out = self.entry(indices[0], indices[1])
        else:
            first = indices[0]
            out = self.ring.zero
            for pos in range(1, len(indices)):
                j = indices[pos]
                a = self.entry(first, j)
                if a.is_zero():
                    continue
                rest = tuple(x for x in indices if x not in (first, j))
                sign = 1 if pos % 2 == 1 else -1  # (-1)^j with j the column
                out = out + a * self._pf_cached(rest) * sign
        self._pf_memo[indices] = out
        return out

    def pf_remove(self, removed) -> Polynomial:
        """Pfaffian with the listed rows/columns removed."""
        removed = set(removed)
        return self.pfaffian(tuple(i for i in range(1, self.t + 1)
                                   if i not in removed))

    def determinant(self, indices=None) -> Polynomial:
        """Laplace-expansion determinant of a principal submatrix."""
        if indices is None:
            indices = tuple(range(1, self.t + 1))
        indices = tuple(sorted(indices))

        def det(rows, cols):
            if not rows:
                return self.ring.one
            r = rows[0]
            out = self.ring.zero
            for pos, c in enumerate(cols):
                a = self.entry(r, c)
                if a.is_zero():
                    continue
                minor = det(rows[1:], cols[:pos] + cols[pos + 1:])
                out = out + a * minor * (1 if pos % 2 == 0 else -1)
            return out

        return det(indices, indices)


def pfaffian_aci(t: int, field_=None) -> tuple[SkewMatrix, GeneratorSequence]:
    """The grade-3 almost complete intersection of order t >= 5, with
    generators in d-sequence order (regular prefix first)."""
    X = SkewMatrix(t, field_=field_)
    if t % 2 == 1:
        fs = [X.pf_remove([1, 2, 3]), X.pf_remove([1]),
              X.pf_remove([2]), X.pf_remove([3])]
    else:
        fs = [X.pf_remove([1, 2]), X.pf_remove([1, 3]),
              X.pf_remove([2, 3]), X.pfaffian()]
    return X, GeneratorSequence(fs)


def aci_grade3_ideal(t: int, field_=None) -> tuple[GeneratorSequence, Ideal]:
    _, seq = pfaffian_aci(t, field_=field_)
    return seq, seq.ideal()


def hilbert_burch_ideal(Z, z=None) -> GeneratorSequence:
    """Grade-2 perfect almost complete intersection z * I_2(Z).

    Z is a 3 x 2 matrix (list of three rows) of homogeneous polynomials;
    z a homogeneous non-zerodivisor (defaults to 1).  Signs follow the
    convention [f1 f2 f3] . Z = 0 with f1 = -z(z21 z32 - z22 z31).
    """
    rows = [list(r) for r in Z]
    if len(rows) != 3 or any(len(r) != 2 for r in rows):
        raise ValueError("need a 3 x 2 matrix")
    ring = rows[0][0].ring
    if z is None:
        z = ring.one
    if z.is_zero():
        raise ZeroPolynomialError("z must be a non-zerodivisor")
    (z11, z12), (z21, z22), (z31, z32) = rows
    f1 = -(z21 * z32 - z22 * z31) * z
    f2 = (z11 * z32 - z12 * z31) * z
    f3 = -(z11 * z22 - z12 * z21) * z
    minors = Ideal(ring, [z21 * z32 - z22 * z31, z11 * z32 - z12 * z31,
                          z11 * z22 - z12 * z21])
    if minors.height() < 2:
        raise GradeMismatchError("the 2 x 2 minors of Z must have grade >= 2")
    # Laplace identity: the row of signed minors annihilates Z
    for col in range(2):
        s = f1 * rows[0][col] + f2 * rows[1][col] + f3 * rows[2][col]
        assert s.is_zero(), "presentation identity failed"
    return GeneratorSequence([f1, f2, f3])


def ci_plus_one(j_gens, g) -> GeneratorSequence:
    """A complete intersection plus one extra minimal generator."""
    from .seqcheck import is_regular_sequence
    ok, witness = is_regular_sequence(j_gens)
    if not ok:
        raise GradeMismatchError(f"prefix is not a regular sequence: {witness}")
    J = Ideal(j_gens[0].ring, j_gens)
    if J.contains(g):
        raise GradeMismatchError("the extra element already lies in the ideal")
    return GeneratorSequence(list(j_gens) + [g])


def cm_type(betti) -> int:
    """Cohen-Macaulay type read off the last step of a minimal resolution."""
    return betti.total(betti.pd())
