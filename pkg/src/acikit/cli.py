"""Command-line front end.

Input ideals are plain text: a ``ring:`` header then one generator per
line, ``#`` starts a comment.  Every JSON output embeds a run manifest
(command, input hash, field, order, caps, wall time, version); outputs
are byte-identical across runs up to the wall-time field.

Exit codes: 0 success, 1 a mathematical mismatch was found (for example
a formula/computation disagreement or unequal resolutions), 2 usage or
resource errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import __version__
from .errors import AcikitError, DegreeCapExceededError, UsageError
from .field import CoefficientField
from .gb import Ideal
from .order import MonomialOrder
from .ring import Ring, parse_ring_line


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def load_ideal_text(text: str, field=None, order=None):
    """Parse an ideal file into (ring, [generators])."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise UsageError("empty ideal file")
    if not lines[0].startswith("ring"):
        raise UsageError("first line must be a 'ring:' header")
    ring = parse_ring_line(lines[0], default_field=field, default_order=order)
    if field is not None and ring.field != field:
        ring = ring.with_field(field)
    if order is not None and ring.order != order:
        ring = Ring(ring.names, ring.field, order, ring.degrees)
    gens = [ring.poly(s) for s in lines[1:]]
    return ring, gens


def ideal_text(ring: Ring, gens) -> str:
    out = [ring.header_line()]
    out.extend(str(g) for g in gens)
    return "\n".join(out) + "\n"


def _manifest(args, input_text: str | None, t0: float) -> dict:
    return {
        "command": args.cmd,
        "input_sha256": hashlib.sha256((input_text or "").encode()).hexdigest(),
        "field": str(args.field) if args.field else "from-input",
        "order": str(args.order) if args.order else "from-input",
        "max_degree": args.max_degree,
        "threads": args.threads,
        "wall_time_s": round(time.time() - t0, 3),
        "version": __version__,
    }


def _emit(args, payload: dict) -> None:
    text = json.dumps(payload, indent=1, sort_keys=True)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _field_warning(field) -> None:
    if field is not None and field.is_finite:
        print(f"warning: computing over {field}; the theory assumes an "
              "infinite (characteristic-zero) field, Betti numbers may "
              "differ from the QQ values", file=sys.stderr)


def _common(sub):
    sub.add_argument("--field", type=CoefficientField.parse, default=None,
                     help="QQ or Fp:32003 (overrides the input file)")
    sub.add_argument("--order", type=MonomialOrder.parse, default=None,
                     help="grevlex or lex")
    sub.add_argument("--max-degree", type=int, default=None,
                     help="hard degree cap; exceeding it is an error")
    sub.add_argument("--threads", type=int, default=1,
                     help="worker budget (runs are sequential; the flag is "
                          "recorded in the manifest)")
    sub.add_argument("--json", default=None, help="write JSON here")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="acikit",
        description="exact commutative algebra: resolutions, Rees algebras, "
                    "regularity of powers, Pfaffian families, diagonals")
    sp = ap.add_subparsers(dest="cmd", required=True)

    s = sp.add_parser("resolve", help="minimal free resolution of R/I")
    s.add_argument("--ideal", required=True, help="ideal file or - for stdin")
    _common(s)

    s = sp.add_parser("rees", help="Rees data and resolutions")
    s.add_argument("--ideal", required=True)
    s.add_argument("--compare", action="store_true",
                   help="also compare the cone resolution against the "
                        "directly computed one")
    _common(s)

    s = sp.add_parser("powers", help="regularity-of-powers verification")
    s.add_argument("--ideal", required=True)
    s.add_argument("--s-max", type=int, default=3)
    s.add_argument("--i-max", type=int, default=None)
    _common(s)

    s = sp.add_parser("check-seq", help="regular/d-sequence checks")
    s.add_argument("--ideal", required=True)
    s.add_argument("--s-max", type=int, default=3)
    _common(s)

    s = sp.add_parser("pfaffian-aci", help="emit the order-t Pfaffian family")
    s.add_argument("--t", type=int, required=True)
    _common(s)

    s = sp.add_parser("hilbert-burch", help="grade-2 family from a 3x2 matrix")
    s.add_argument("--matrix", required=True,
                   help="file: ring line, three rows 'p, q', optional 'z: p'")
    _common(s)

    s = sp.add_parser("ci-plus-one", help="complete intersection plus one")
    s.add_argument("--ideal", required=True,
                   help="ideal file; the last generator is the extra one")
    _common(s)

    s = sp.add_parser("diagonal", help="diagonal subalgebra bounds")
    s.add_argument("--ideal", required=True)
    s.add_argument("--c", type=int, required=True)
    s.add_argument("--e", type=int, required=True)
    _common(s)

    s = sp.add_parser("oracle-tor", help="independent Betti numbers")
    s.add_argument("--ideal", required=True)
    s.add_argument("--i", type=int, default=None)
    s.add_argument("--j", type=int, default=None)
    s.add_argument("--max-i", type=int, default=None)
    s.add_argument("--max-j", type=int, default=None)
    _common(s)
    return ap


def _cmd_resolve(args, text):
    from .resolve import minimal_resolution, regularity
    ring, gens = load_ideal_text(text, args.field, args.order)
    I = Ideal(ring, gens)
    res = minimal_resolution(I, cap=args.max_degree)
    rep = regularity(I, res)
    return 0, {"resolution": res.complex.display(),
               "betti": res.betti.to_json(),
               "betti_grid": res.betti.grid(),
               "regularity": rep.to_json()}


def _cmd_rees(args, text):
    from .rees import compare_resolutions, cone_resolution, rees_data
    ring, gens = load_ideal_text(text, args.field, args.order)
    data = rees_data(gens)
    payload = {"rees_data": data.to_json()}
    code = 0
    if args.compare:
        rep = compare_resolutions(gens)
        payload["comparison"] = rep.to_json()
        payload["cone_resolution"] = rep.cone.complex.display()
        payload["direct_resolution"] = rep.direct.complex.display()
        code = 0 if rep.equal else 1
    else:
        cone = cone_resolution(gens, linear_type=data.linear_type)
        payload["cone_resolution"] = cone.complex.display()
        payload["resolves"] = cone.resolves
    return code, payload


def _cmd_powers(args, text):
    from .seqcheck import verify_powers
    ring, gens = load_ideal_text(text, args.field, args.order)
    i_range = range(0, args.i_max + 1) if args.i_max is not None else None
    rep = verify_powers(gens, s_max=args.s_max, i_range=i_range,
                        cap=args.max_degree)
    bad = any(c.status in ("MISMATCH", "HYPOTHESIS_VIOLATED")
              for c in rep.cells)
    return (1 if bad else 0), {"powers": rep.to_json()}


def _cmd_check_seq(args, text):
    from .seqcheck import dseq_identities, is_d_sequence, is_regular_sequence
    ring, gens = load_ideal_text(text, args.field, args.order)
    reg_ok, reg_wit = is_regular_sequence(gens[:-1])
    d_ok, d_wit = is_d_sequence(gens)
    payload = {
        "regular_prefix": reg_ok,
        "regular_prefix_witness": str(reg_wit) if reg_wit else None,
        "d_sequence": d_ok,
        "d_sequence_witness": str(d_wit) if d_wit else None,
    }
    if d_ok:
        payload["identities"] = dseq_identities(gens, s_max=args.s_max)
    return 0, payload


def _cmd_pfaffian(args, text):
    from .gallery import pfaffian_aci
    if args.t < 5:
        raise UsageError("--t must be at least 5")
    X, seq = pfaffian_aci(args.t, field_=args.field)
    out = ideal_text(seq.ring, seq.fs)
    sys.stdout.write(out)
    return 0, {"t": args.t, "degrees": [d[0] for d in seq.degrees],
               "variables": list(seq.ring.names), "ideal": out}


def _cmd_hilbert_burch(args, text):
    from .gallery import hilbert_burch_ideal
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    ring = parse_ring_line(lines[0], args.field, args.order)
    rows = []
    z = None
    for ln in lines[1:]:
        if ln.startswith("z:"):
            z = ring.poly(ln[2:])
            continue
        parts = ln.split(",")
        if len(parts) != 2:
            raise UsageError("matrix rows are 'p, q'")
        rows.append([ring.poly(parts[0]), ring.poly(parts[1])])
    if len(rows) != 3:
        raise UsageError("need exactly three matrix rows")
    seq = hilbert_burch_ideal(rows, z)
    out = ideal_text(ring, seq.fs)
    sys.stdout.write(out)
    return 0, {"degrees": [list(d) for d in seq.degrees], "ideal": out}


def _cmd_ci_plus_one(args, text):
    from .gallery import ci_plus_one
    ring, gens = load_ideal_text(text, args.field, args.order)
    if len(gens) < 2:
        raise UsageError("need at least two generators")
    seq = ci_plus_one(gens[:-1], gens[-1])
    out = ideal_text(ring, seq.fs)
    sys.stdout.write(out)
    return 0, {"degrees": [list(d) for d in seq.degrees], "ideal": out}


def _cmd_diagonal(args, text):
    from .diagonal import DiagonalSpec, diagonal_report
    ring, gens = load_ideal_text(text, args.field, args.order)
    rep = diagonal_report(gens, DiagonalSpec(args.c, args.e))
    return 0, {"diagonal": rep}


def _cmd_oracle(args, text):
    from .resolve import TorOracle
    ring, gens = load_ideal_text(text, args.field, args.order)
    oracle = TorOracle(Ideal(ring, gens))
    if args.i is not None and args.j is not None:
        return 0, {"beta": {"i": args.i, "j": args.j,
                            "value": oracle.beta(args.i, args.j)}}
    if args.max_i is None or args.max_j is None:
        raise UsageError("give --i/--j or --max-i/--max-j")
    table = oracle.table(args.max_i, args.max_j)
    return 0, {"betti": table.to_json()}


_HANDLERS = {
    "resolve": _cmd_resolve,
    "rees": _cmd_rees,
    "powers": _cmd_powers,
    "check-seq": _cmd_check_seq,
    "pfaffian-aci": _cmd_pfaffian,
    "hilbert-burch": _cmd_hilbert_burch,
    "ci-plus-one": _cmd_ci_plus_one,
    "diagonal": _cmd_diagonal,
    "oracle-tor": _cmd_oracle,
}

_NEEDS_INPUT = {"resolve": "ideal", "rees": "ideal", "powers": "ideal",
                "check-seq": "ideal", "ci-plus-one": "ideal",
                "diagonal": "ideal", "oracle-tor": "ideal",
                "hilbert-burch": "matrix"}

# these write an ideal file to stdout; JSON only lands in --json
_EMITS_IDEAL = {"pfaffian-aci", "hilbert-burch", "ci-plus-one"}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    t0 = time.time()
    text = None
    try:
        attr = _NEEDS_INPUT.get(args.cmd)
        if attr:
            text = _read_text(getattr(args, attr))
        _field_warning(args.field)
        code, payload = _HANDLERS[args.cmd](args, text)
        payload["manifest"] = _manifest(args, text, t0)
        if args.cmd not in _EMITS_IDEAL or args.json:
            _emit(args, payload)
        return code
    except (UsageError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except DegreeCapExceededError as e:
        print(f"resource error: {e}", file=sys.stderr)
        return 2
    except AcikitError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
