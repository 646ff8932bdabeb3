"""Polynomial rings with multigraded variable degrees.

A ring fixes the variable names (first-listed variable is largest in
the monomial order), a degree vector per variable in Z^g with g = 1 or
2, an exact coefficient field, and a default monomial order.  Rings are
immutable; Groebner caches live on Ideal objects, not here.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import UsageError
from .field import QQ, CoefficientField
from .order import GREVLEX, Codec, MonomialOrder
from .poly import Polynomial

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _norm_degrees(names, degrees):
    if degrees is None:
        return tuple((1,) for _ in names)
    out = []
    for d in degrees:
        if isinstance(d, int):
            out.append((d,))
        else:
            out.append(tuple(int(x) for x in d))
    if len(out) != len(names):
        raise ValueError("one degree vector per variable required")
    g = len(out[0])
    if any(len(d) != g for d in out):
        raise ValueError("all degree vectors must have the same length")
    if g not in (1, 2):
        raise ValueError("grading arity must be 1 or 2")
    if g == 1 and any(d[0] <= 0 for d in out):
        raise ValueError("single-graded variable degrees must be positive")
    return tuple(out)


class Ring:
    __slots__ = ("names", "degrees", "field", "order", "_codecs", "_index",
                 "zero", "one", "_degcache")

    def __init__(self, names, field: CoefficientField = QQ,
                 order: MonomialOrder = GREVLEX, degrees=None):
        if isinstance(names, str):
            names = [s.strip() for s in names.replace(",", " ").split()]
        names = tuple(names)
        if not names:
            raise ValueError("a ring needs at least one variable")
        for nm in names:
            if not _NAME_RE.fullmatch(nm):
                raise ValueError(f"bad variable name {nm!r}")
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.names = names
        self.degrees = _norm_degrees(names, degrees)
        self.field = field
        self.order = order
        self._codecs = {}
        self._index = {nm: i for i, nm in enumerate(names)}
        self._degcache = {}
        self.zero = Polynomial(self, {}, 1, _normalized=True)
        self.one = Polynomial(self, {(0,) * len(names): 1}, 1, _normalized=True)

    # -- basics ------------------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def grading_arity(self) -> int:
        return len(self.degrees[0])

    @property
    def is_standard_graded(self) -> bool:
        return self.grading_arity == 1 and all(d == (1,) for d in self.degrees)

    def codec(self, order: MonomialOrder | None = None) -> Codec:
        order = order or self.order
        key = (order.kind, order.k)
        c = self._codecs.get(key)
        if c is None:
            c = self._codecs[key] = Codec(self.nvars, order)
        return c

    def mono_degree(self, exps) -> tuple:
        exps = tuple(exps)
        d = self._degcache.get(exps)
        if d is None:
            g = self.grading_arity
            acc = [0] * g
            for v, e in enumerate(exps):
                if e:
                    dv = self.degrees[v]
                    for t in range(g):
                        acc[t] += e * dv[t]
            d = self._degcache[exps] = tuple(acc)
        return d

    # -- element constructors ------------------------------------------------
    def const(self, c) -> Polynomial:
        c = Fraction(c)
        if not c:
            return self.zero
        return Polynomial(self, {(0,) * self.nvars: c.numerator}, c.denominator)

    def var(self, name: str) -> Polynomial:
        i = self._index.get(name)
        if i is None:
            raise KeyError(f"no variable {name!r} in {self.short_name()}")
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {tuple(exps): 1}, 1, _normalized=True)

    def vars(self):
        return [self.var(nm) for nm in self.names]

    def monomial(self, exps, coeff=1) -> Polynomial:
        c = Fraction(coeff)
        return Polynomial(self, {tuple(exps): c.numerator}, c.denominator)

    # -- parsing ------------------------------------------------------------------
    def poly(self, text: str) -> Polynomial:
        return parse_polynomial(self, text)

    # -- derived rings ---------------------------------------------------------
    def extend(self, new_names, new_degrees, front=False,
               order: MonomialOrder | None = None) -> "Ring":
        """Adjoin variables (at the back by default, or at the front)."""
        new_names = tuple(new_names)
        nd = _norm_degrees(new_names, new_degrees)
        if front:
            names = new_names + self.names
            degs = nd + self.degrees
        else:
            names = self.names + new_names
            degs = self.degrees + nd
        return Ring(names, self.field, order or self.order, degs)

    def drop(self, drop_names, order: MonomialOrder | None = None) -> "Ring":
        keep = [i for i, nm in enumerate(self.names) if nm not in set(drop_names)]
        return Ring(tuple(self.names[i] for i in keep), self.field,
                    order or self.order, tuple(self.degrees[i] for i in keep))

    def permuted(self, new_order_names, order: MonomialOrder | None = None) -> "Ring":
        idx = [self._index[nm] for nm in new_order_names]
        if sorted(idx) != list(range(self.nvars)):
            raise ValueError("permutation must cover all variables")
        return Ring(tuple(self.names[i] for i in idx), self.field,
                    order or self.order, tuple(self.degrees[i] for i in idx))

    def with_field(self, field: CoefficientField) -> "Ring":
        return Ring(self.names, field, self.order, self.degrees)

    def with_degrees(self, degrees) -> "Ring":
        return Ring(self.names, self.field, self.order, degrees)

    # -- text -------------------------------------------------------------------
    def short_name(self) -> str:
        vs = ",".join(self.names if self.nvars <= 6 else
                      (self.names[0], "...", self.names[-1]))
        return f"{self.field}[{vs}]"

    def header_line(self) -> str:
        return f"ring: {','.join(self.names)} over {self.field} {self.order}"

    def __repr__(self):
        return f"<ring {self.short_name()} {self.order}>"

    def __eq__(self, other):
        return self is other or (isinstance(other, Ring)
                                 and self.names == other.names
                                 and self.degrees == other.degrees
                                 and self.field == other.field
                                 and self.order == other.order)

    def __hash__(self):
        return hash((self.names, self.degrees, self.field, self.order))


# ---------------------------------------------------------------------------
# polynomial text syntax:  3*x1^2*y2 - 1/2*x3
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
                       r"|(?P<op>[*^/+-]))")


def parse_polynomial(ring: Ring, text: str) -> Polynomial:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise UsageError(f"cannot tokenize polynomial at {text[pos:]!r}")
            break
        if m.lastgroup == "num":
            tokens.append(("num", int(m.group("num"))))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group("name")))
        else:
            tokens.append(("op", m.group("op")))
        pos = m.end()

    result = ring.zero
    i = 0
    n = len(tokens)

    def parse_term(i, sign):
        coeff = Fraction(sign)
        exps = [0] * ring.nvars
        expect_factor = True
        while i < n:
            kind, val = tokens[i]
            if kind == "op" and val in "+-":
                break
            if not expect_factor:
                if kind == "op" and val == "*":
                    i += 1
                    expect_factor = True
                    continue
                raise UsageError(f"expected '*' before {val!r}")
            if kind == "num":
                c = Fraction(val)
                i += 1
                if i < n and tokens[i] == ("op", "/"):
                    if i + 1 >= n or tokens[i + 1][0] != "num":
                        raise UsageError("malformed rational coefficient")
                    c /= tokens[i + 1][1]
                    i += 2
                coeff *= c
            elif kind == "name":
                vi = ring._index.get(val)
                if vi is None:
                    raise UsageError(f"unknown variable {val!r}")
                e = 1
                i += 1
                if i < n and tokens[i] == ("op", "^"):
                    if i + 1 >= n or tokens[i + 1][0] != "num":
                        raise UsageError("malformed exponent")
                    e = tokens[i + 1][1]
                    i += 2
                exps[vi] += e
            else:
                raise UsageError(f"unexpected {val!r} in polynomial")
            expect_factor = False
        if expect_factor:
            raise UsageError("dangling operator in polynomial")
        return i, ring.monomial(exps, coeff)

    sign = 1
    started = False
    while i < n:
        kind, val = tokens[i]
        if kind == "op" and val in "+-":
            if val == "-":
                sign = -sign
            i += 1
            continue
        i, term = parse_term(i, sign)
        result = result + term
        sign = 1
        started = True
    if not started and tokens:
        raise UsageError(f"empty polynomial text {text!r}")
    return result


def parse_ring_line(line: str, default_field=None, default_order=None) -> Ring:
    """Parse ``ring: x1,x2,x3 over QQ grevlex`` (field and order optional)."""
    body = line.split(":", 1)
    if len(body) != 2 or body[0].strip() != "ring":
        raise UsageError(f"expected a 'ring:' header, got {line!r}")
    rest = body[1].strip()
    field = default_field or QQ
    order = default_order or GREVLEX
    if " over " in rest:
        vars_part, tail = rest.split(" over ", 1)
        bits = tail.split()
        if not bits:
            raise UsageError("missing field after 'over'")
        field = CoefficientField.parse(bits[0])
        if len(bits) > 1:
            order = MonomialOrder.parse(bits[1])
        if len(bits) > 2:
            raise UsageError(f"trailing junk in ring line: {bits[2:]}")
    else:
        vars_part = rest
    names = [s.strip() for s in vars_part.split(",") if s.strip()]
    return Ring(names, field, order)
