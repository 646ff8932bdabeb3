"""Regular-sequence and d-sequence verification, and the closed formula
for the regularity of powers with direct computational verification.

The d-sequence test checks the defining identity (prefix : a_i) ∩ I =
prefix over the ring itself; the regular-sequence test uses the colon
characterization, valid for homogeneous elements of positive degree.
Every formula verification resolves the actual quotient and compares,
cell by cell; cells that blow a degree cap are marked SKIPPED, never
fabricated.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DegreeCapExceededError, HypothesisViolatedError
from .gb import Ideal
from .resolve import minimal_resolution


def is_regular_sequence(fs):
    """Colon test: (f_1..f_{i-1} : f_i) = (f_1..f_{i-1}) for every i.

    Returns (ok, witness); the witness is (index, offending polynomial)
    for the first failure.
    """
    fs = list(fs)
    ring = fs[0].ring
    for f in fs:
        if f.is_zero():
            return False, (fs.index(f) + 1, f)
        f.multidegree()
    for i in range(1, len(fs)):
        prefix = Ideal(ring, fs[:i])
        col = prefix.colon(fs[i])
        for g in col.gens:
            if not prefix.contains(g):
                return False, (i + 1, g)
    return True, None


def is_d_sequence(fs):
    """Defining identity (prefix : a_i) ∩ I = prefix for i = 1..n (M = A)."""
    fs = list(fs)
    ring = fs[0].ring
    I = Ideal(ring, fs)
    for f in fs:
        if f.is_zero():
            return False, (fs.index(f) + 1, f)
        f.multidegree()
    for i in range(1, len(fs)):  # i = 0 is automatic in a domain
        prefix = Ideal(ring, fs[:i])
        inter = prefix.colon(fs[i]).intersect(I)
        for g in inter.gens:
            if not prefix.contains(g):
                return False, (i + 1, g)
    return True, None


def dseq_identities(fs, s_max: int = 3):
    """Colon-power identities enjoyed by d-sequences, as ideal equalities.

    (1) (f_1..f_{n-1} : f_n^s) = (f_1..f_{n-1} : f_n) for 1 <= s <= s_max.
    (2) (f_1..f_{i-1} + I^s : f_i) = (f_1..f_{i-1} : f_i) + I^{s-1}
        for every i and 2 <= s <= s_max (s = 1 degenerates to the ring).

    Failures are findings, not errors: each check is reported.
    """
    fs = list(fs)
    ring = fs[0].ring
    n = len(fs)
    I = Ideal(ring, fs)
    J = Ideal(ring, fs[:-1])
    checks = []
    base = J.colon(fs[-1])
    for s in range(1, s_max + 1):
        lhs = J.colon(fs[-1] ** s)
        checks.append({"identity": 1, "i": n, "s": s,
                       "holds": lhs.equals(base)})
    for i in range(1, n + 1):
        prefix = Ideal(ring, fs[:i - 1])
        colon_prefix = prefix.colon(fs[i - 1]) if i > 1 else Ideal(ring, [])
        for s in range(2, s_max + 1):
            lhs = (prefix + I.power(s)).colon(fs[i - 1])
            rhs = colon_prefix + I.power(s - 1)
            checks.append({"identity": 2, "i": i, "s": s,
                           "holds": lhs.equals(rhs)})
    return checks


# ---------------------------------------------------------------------------
# regularity of powers
# ---------------------------------------------------------------------------


def powers_formula_value(degrees, s: int) -> int:
    """sum(d) - n + (s-2) * d_n, no hypothesis check."""
    degrees = [d[0] if isinstance(d, tuple) else d for d in degrees]
    n = len(degrees)
    return sum(degrees) - n + (s - 2) * degrees[-1]


def powers_formula(degrees, s: int, i: int = 0) -> int:
    """Predicted reg(A / (f_1..f_i + I^s)) for a d-sequence with regular
    prefix whose last generator has maximal degree.

    Raises HypothesisViolatedError (carrying .value) when the last degree
    is not maximal; the formula is known to fail there.
    """
    degs = [d[0] if isinstance(d, tuple) else d for d in degrees]
    n = len(degs)
    if s < 2:
        raise ValueError("the formula needs s >= 2")
    if not 0 <= i <= n - 1:
        raise ValueError("i ranges over 0..n-1")
    value = powers_formula_value(degs, s)
    if degs[-1] != max(degs):
        err = HypothesisViolatedError(
            f"last degree {degs[-1]} is not maximal among {degs}")
        err.value = value
        raise err
    return value


def pfaffian_closed_form(t: int, m: int) -> int:
    """Closed form for reg(B/I^m) of the order-t family, m >= 2."""
    if t % 2 == 1:
        return ((t - 1) // 2) * (m + 2) - 5
    return (t // 2) * (m + 2) - 7


@dataclass
class PowersCell:
    s: int
    i: int
    formula: int
    computed: int | None
    status: str  # MATCH | MISMATCH | SKIPPED | HYPOTHESIS_VIOLATED

    def to_json(self):
        return {"s": self.s, "i": self.i, "formula": self.formula,
                "computed": self.computed, "status": self.status}


@dataclass
class PowersReport:
    degrees: list
    setup_bound_ok: bool
    max_last: bool
    reg_quotient: int
    cells: list = field(default_factory=list)
    colon_checks: list = field(default_factory=list)

    def all_match(self) -> bool:
        return all(c.status == "MATCH" for c in self.cells)

    def to_json(self):
        return {"degrees": self.degrees,
                "setup_bound_ok": self.setup_bound_ok,
                "max_degree_last": self.max_last,
                "reg_quotient": self.reg_quotient,
                "cells": [c.to_json() for c in self.cells],
                "colon_checks": self.colon_checks}


def verify_powers(fs, s_max: int = 3, i_range=None, cap=None,
                  check_colon_identity: bool = True) -> PowersReport:
    """Compare the closed formula against directly computed regularities.

    For each (s, i) the quotient A/(f_1..f_i + I^s) is resolved and its
    regularity compared with the formula.  The standing assumption
    reg(A/I) < sum(d_1..d_{n-1}) - n + 1 is checked and reported, as is
    the identity for the colon ideal (J : f_n) + (f_n^s).
    """
    fs = list(fs)
    ring = fs[0].ring
    n = len(fs)
    degs = [f.multidegree()[0] for f in fs]
    I = Ideal(ring, fs)
    reg_I = minimal_resolution(I, cap=cap).betti.reg()
    setup_ok = reg_I < sum(degs[:-1]) - n + 1
    max_last = degs[-1] == max(degs)
    rep = PowersReport(degrees=degs, setup_bound_ok=setup_ok,
                       max_last=max_last, reg_quotient=reg_I)
    if i_range is None:
        i_range = range(0, n)
    for s in range(2, s_max + 1):
        Is = I.power(s)
        for i in i_range:
            formula = powers_formula_value(degs, s)
            try:
                ideal = Ideal(ring, fs[:i]) + Is if i else Is
                computed = minimal_resolution(ideal, cap=cap).betti.reg()
            except DegreeCapExceededError:
                rep.cells.append(PowersCell(s, i, formula, None, "SKIPPED"))
                continue
            if computed == formula:
                status = "MATCH"
            elif not max_last:
                status = "HYPOTHESIS_VIOLATED"
            else:
                status = "MISMATCH"
            rep.cells.append(PowersCell(s, i, formula, computed, status))
    if check_colon_identity:
        J = Ideal(ring, fs[:-1])
        JF = J.colon(fs[-1])
        for s in range(2, s_max + 1):
            want = sum(degs) - n + (s - 2) * degs[-1]
            try:
                got = minimal_resolution(JF + Ideal(ring, [fs[-1] ** s]),
                                         cap=cap).betti.reg()
                rep.colon_checks.append(
                    {"s": s, "formula": want, "computed": got,
                     "status": "MATCH" if got == want else "MISMATCH"})
            except DegreeCapExceededError:
                rep.colon_checks.append(
                    {"s": s, "formula": want, "computed": None,
                     "status": "SKIPPED"})
    return rep
