"""``etaforge`` command-line front end.

Exit status: 0 on success, 1 when a checked identity or classification
fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from math import gcd
from typing import Sequence

from .arith import totient
from .enumerate import EnumerationCapError, classify, enumerate_holomorphic, verify_zagier
from .etaq import EtaQuotient, EtaSyntaxError, fmt, level, parse, star_product, weight2, zagier_match
from .orders import is_holomorphic, order_map
from .phimap import ConsistencyError, WeightsError, apply_phi, ones_weights, validate_weights
from .series import SeriesIdentityError, involution_pairing, quotient_series, verify_table1

SCHEMA = 1


class UsageError(Exception):
    pass


def _q_power(m: int) -> str:
    e = Fraction(m, 24)
    if e == 0:
        return ""
    if e.denominator == 1:
        return "q" if e == 1 else f"q^{{{e.numerator}}}"
    return f"q^{{{e.numerator}/{e.denominator}}}"


def _format_series(s, with_tail: bool = True) -> str:
    parts = []
    for m, c in s.terms():
        c = c.to_int()
        mono = _q_power(m)
        mag = abs(c)
        body = mono if mag == 1 and mono else f"{mag}{'*' + mono if mono else ''}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    out = ""
    for k, (sign, body) in enumerate(parts):
        out += (f"-{body}" if sign == "-" else body) if k == 0 else f" {sign} {body}"
    if with_tail:
        tail = f"O({_q_power(s.horizon) or '1'})"
        out = f"{out} + {tail}" if out else tail
    return out


def _entry(X: EtaQuotient, N: int) -> dict:
    """One quotient in the shared JSON schema."""
    z = zagier_match(X) if weight2(X) == 1 else None
    return {
        "exponents": {str(d): e for d, e in X.items()},
        "level": level(X),
        "weight2": weight2(X),
        "primitive": bool(len(X)) and classify([X], weight2(X))[0][0].primitive,
        "zagier": None if z is None else {"index": z[0], "nu": z[1]},
        "orders": {str(t): str(o) for t, o in order_map(X, N).items()},
    }


def _dump(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


def _quotient(text: str) -> EtaQuotient:
    return parse(text)


def _level_for(X: EtaQuotient, given: int | None) -> int:
    N = given if given is not None else level(X)
    if N < 1 or N % level(X):
        raise UsageError(f"--level {N} is not a multiple of the level {level(X)}")
    return N


# -- subcommands -----------------------------------------------------------------


def cmd_orders(args) -> int:
    X = _quotient(args.quotient)
    N = _level_for(X, args.level)
    orders = order_map(X, N)
    if args.json:
        _dump({"schema": SCHEMA, **_entry(X, N), "N": N})
        return 0
    for t, o in orders.items():
        print(f"t={t} classes={totient(gcd(t, N // t))} order={o}")
    return 0


def cmd_check(args) -> int:
    X = _quotient(args.quotient)
    N = _level_for(X, args.level)
    hol = is_holomorphic(X, N)
    if args.json:
        _dump({"schema": SCHEMA, "N": N, "holomorphic": hol, **_entry(X, N)})
        return 0
    print(f"holomorphic: {'true' if hol else 'false'}")
    for t, o in order_map(X, N).items():
        print(f"  t={t}: {o}")
    return 0


def cmd_expand(args) -> int:
    X = _quotient(args.quotient)
    P = args.prec if args.prec is not None else 100
    if P < 1:
        raise UsageError("--prec must be positive")
    s = quotient_series(X, P)
    if args.json:
        _dump({
            "schema": SCHEMA,
            "exponents": {str(d): e for d, e in X.items()},
            "terms": [{"exponent": str(Fraction(m, 24)), "coefficient": c.to_int()} for m, c in s.terms()],
            "horizon": str(Fraction(s.horizon, 24)),
        })
        return 0
    print(_format_series(s))
    return 0


def _enum_level(args) -> int:
    N = args.N if args.N is not None else args.level
    if N is None:
        raise UsageError("a level is required (positional N or --level)")
    if N < 1:
        raise UsageError("level must be positive")
    return N


def cmd_enumerate(args) -> int:
    N = _enum_level(args)
    k2 = args.k2
    if k2 < 0:
        raise UsageError("K2 must be nonnegative")
    found = enumerate_holomorphic(N, k2)
    _, bad = classify(found, k2)
    if args.json:
        _dump({
            "schema": SCHEMA, "N": N, "weight2": k2, "total": len(found),
            "quotients": [_entry(X, N) for X in found],
        })
    else:
        for X in found:
            z = zagier_match(X) if k2 == 1 else None
            tag = f"  [list #{z[0]}, nu={z[1]}]" if z else ""
            print(f"{fmt(X) or '1'}{tag}")
        print(f"total={len(found)}")
    return 1 if bad else 0


def cmd_verify_zagier(args) -> int:
    N = args.N if args.N is not None else (args.level or 72)
    rep = verify_zagier(N)
    if args.json:
        _dump({
            "schema": SCHEMA, "N": N, "total": rep.total, "primitive": rep.primitive,
            "violations": [{str(d): e for d, e in X.items()} for X in rep.violations],
            "quotients": [_entry(c.exponents, N) for c in rep.classified],
        })
    else:
        for X in rep.violations:
            print(f"THEOREM VIOLATION: {fmt(X)}", file=sys.stderr)
        print(rep.summary())
    return 0 if rep.ok else 1


def _parse_weights(text: str) -> dict[int, int]:
    out = {}
    for item in text.split(","):
        try:
            d, a = item.split(":")
            out[int(d)] = int(a)
        except ValueError:
            raise UsageError(f"bad weight entry {item!r}; expected d:a") from None
    return out


def cmd_phi(args) -> int:
    X = _quotient(args.quotient)
    M = _level_for(X, args.level)
    if args.target is None:
        raise UsageError("--target N is required")
    if args.weights:
        w = validate_weights(M, args.target, _parse_weights(args.weights))
    else:
        w = ones_weights(M, args.target)
    Y = apply_phi(X, w)
    hol_in = is_holomorphic(X, M)
    hol_out = is_holomorphic(Y, args.target)
    if args.json:
        _dump({
            "schema": SCHEMA, "M": M, "N": args.target,
            "weights": {str(d): a for d, a in w.values.items()}, "strict": w.strict,
            "image": _entry(Y, args.target), "holomorphic_in": hol_in, "holomorphic_out": hol_out,
        })
    else:
        print(f"image: {fmt(Y) or '1'}")
        print(f"holomorphic: {'true' if hol_out else 'false'}")
    if hol_in and not hol_out:
        print("VIOLATION: holomorphy not preserved", file=sys.stderr)
        return 1
    return 0


def cmd_star(args) -> int:
    X, Y = _quotient(args.left), _quotient(args.right)
    Z = star_product(X, Y)
    if args.json:
        _dump({"schema": SCHEMA, **_entry(Z, level(Z))})
    else:
        print(fmt(Z) or "1")
    return 0


def cmd_jtp(args) -> int:
    P = args.prec if args.prec is not None else 1200
    cells = verify_table1(P)
    if args.json:
        _dump({
            "schema": SCHEMA, "prec": P,
            "cells": [
                {"x": c.row, "y": c.col, "quotient": fmt(c.quotient), "scalar": str(c.scalar),
                 "shift": c.shift, "identity_unit": str(c.identity_unit)}
                for c in cells
            ],
        })
    else:
        for c in cells:
            print(f"x={c.row:7s} y={c.col:8s} {fmt(c.quotient):36s} scalar={c.scalar} shift={c.shift}")
        print(f"cells verified: {len(cells)}")
    return 0


def cmd_involution(args) -> int:
    P = args.prec if args.prec is not None else 600
    pairing = involution_pairing(P)
    if args.json:
        _dump({"schema": SCHEMA, "prec": P,
               "pairing": {str(i): {"partner": j, "zeta48": k} for i, (j, k) in pairing.items()}})
    else:
        for i, (j, k) in pairing.items():
            print(f"{i} -> {j} zeta48^{k}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--level", type=int, default=None, help="work on Gamma_0(N)")
    common.add_argument("--prec", type=int, default=None, help="series precision in powers of q^(1/24)")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="etaforge", description="Exact computations with eta quotients.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("orders", parents=[common], help="orders at the cusps")
    s.add_argument("quotient")
    s.set_defaults(func=cmd_orders)

    s = sub.add_parser("check", parents=[common], help="holomorphy test")
    s.add_argument("quotient")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("expand", parents=[common], help="q-expansion")
    s.add_argument("quotient")
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("enumerate", parents=[common], help="all holomorphic quotients of a weight")
    s.add_argument("N", type=int, nargs="?")
    s.add_argument("k2", type=int, nargs="?", default=1, metavar="K2", help="twice the weight (default 1)")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("verify-zagier", parents=[common], help="completeness check at weight 1/2")
    s.add_argument("N", type=int, nargs="?")
    s.set_defaults(func=cmd_verify_zagier)

    s = sub.add_parser("phi", parents=[common], help="apply an exponent map Gamma_0(M) -> Gamma_0(N)")
    s.add_argument("quotient")
    s.add_argument("--target", type=int, help="target level N (must exactly divide M)")
    s.add_argument("--weights", help="comma-separated d:a on the divisors of M/N (default all ones)")
    s.set_defaults(func=cmd_phi)

    s = sub.add_parser("star", parents=[common], help="tensor product of coprime-level quotients")
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(func=cmd_star)

    s = sub.add_parser("jtp", parents=[common], help="verify the triple-product table")
    s.set_defaults(func=cmd_jtp)

    s = sub.add_parser("involution", parents=[common], help="sign-transform pairing of the list")
    s.set_defaults(func=cmd_involution)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (EtaSyntaxError, UsageError, WeightsError, EnumerationCapError, ValueError) as exc:
        print(f"etaforge: error: {exc}", file=sys.stderr)
        return 2
    except (ConsistencyError, SeriesIdentityError) as exc:
        print(f"VIOLATION: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
