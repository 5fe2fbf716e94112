"""Command line interface.

Exit codes: 0 success, 1 usage or input error, 2 audit failure.
Randomness for construction and encoding comes from Python's `random.Random`
seeded with --seed, drawing one uniform field element per symbol in order.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from typing import Any, Sequence

from . import bounds as bnd
from .access import AccessStructure
from .coop import build_repetition_coop, is_r_delta_repairable, wrap_secure_coop
from .galois import GF, field
from .graphscheme import (
    Graph, build_cycle_scheme, build_matching_scheme, fractional_cycle_packing, graph_lower_bound_m,
    graph_secrecy_bound, integral_packing, max_matching, max_repair_free,
)
from .lnc import build_flow_graph, lnc_scheme, sample_lnc, verify_multicast_capacity
from .lrc import LinearCode, build_partitioned_lrc, search_mr_code
from .secret import (
    FORMAT, SecretSharingScheme, build_gabidulin_scheme, build_split_scheme, decode, encode, isn_scheme,
    perfect_local_scheme, rank_audit, repair, scheme_from_json, scheme_to_json, shamir,
    shares_from_json, shares_to_json,
)

EXIT_OK, EXIT_USAGE, EXIT_AUDIT = 0, 1, 2


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(obj: Any, out: str | None) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _need(args, *names: str) -> None:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing options: " + ", ".join("--" + n for n in missing))


def _byte_width(F: GF) -> int:
    return max(1, ((F.order - 1).bit_length() + 7) // 8)


def secret_from_hex(F: GF, text: str, count: int) -> list[int]:
    w = _byte_width(F)
    try:
        raw = bytes.fromhex(text)
    except ValueError:
        raise UsageError("secret is not valid hex") from None
    if len(raw) != w * count:
        raise UsageError(f"secret must be {w * count} bytes")
    vals = [int.from_bytes(raw[i * w:(i + 1) * w], "big") for i in range(count)]
    if any(v >= F.order for v in vals):
        raise UsageError("secret symbol out of field range")
    return vals


def secret_to_hex(F: GF, vals: Sequence[int]) -> str:
    w = _byte_width(F)
    return b"".join(v.to_bytes(w, "big") for v in vals).hex()


# --- subcommands ---

def cmd_construct(args) -> int:
    t = args.type
    if t == "gabidulin":
        _need(args, "n", "k", "l", "r", "p", "N")
        base = build_partitioned_lrc(field(args.p), args.n, args.k + args.l, args.r)
        scheme = build_gabidulin_scheme(base, args.k, args.l, args.N)
    elif t == "split":
        _need(args, "n", "k", "l", "r", "p")
        code, _ = search_mr_code(field(args.p), args.n, args.k + args.l, args.r, args.seed, args.tries)
        if code is None:
            raise UsageError("no maximally recoverable code found")
        scheme = build_split_scheme(code, args.k, args.l)
    elif t == "shamir":
        _need(args, "n", "t", "p")
        scheme = shamir(args.n, args.t, field(args.p))
    elif t == "perfect-local":
        _need(args, "n", "r", "kappa", "p", "N")
        scheme, _ = perfect_local_scheme(args.n, args.r, args.kappa, field(args.p), args.N, args.seed, args.tries)
    elif t == "isn":
        _need(args, "access", "p")
        scheme = isn_scheme(AccessStructure.from_json(_load(args.access)), field(args.p))
    else:
        raise UsageError(f"unknown type {t}")
    _emit(scheme_to_json(scheme), args.output)
    return EXIT_OK


def _scheme(path: str) -> SecretSharingScheme:
    try:
        return scheme_from_json(_load(path))
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed scheme file: {exc}") from None


def cmd_encode(args) -> int:
    scheme = _scheme(args.scheme)
    F = scheme.field
    if (args.secret is None) == (args.secret_file is None):
        raise UsageError("give exactly one of --secret or --secret-file")
    if args.secret is not None:
        secret = secret_from_hex(F, args.secret, scheme.n_secret)
    else:
        secret = [F.load(x) for x in _load(args.secret_file)]
    if (args.seed is None) == (args.randomness_file is None):
        raise UsageError("give exactly one of --seed or --randomness-file")
    if args.randomness_file is not None:
        rnd = [F.load(x) for x in _load(args.randomness_file)]
    else:
        rng = random.Random(args.seed)
        rnd = [rng.randrange(F.order) for _ in range(scheme.n_random)]
    _emit(shares_to_json(scheme, encode(scheme, secret, rnd)), args.output)
    return EXIT_OK


def _shares(scheme: SecretSharingScheme, path: str, use: str | None):
    shares = shares_from_json(scheme, _load(path))
    if use:
        keep = {int(x) for x in use.split(",")}
        shares = {i: v for i, v in shares.items() if i in keep}
    return shares


def cmd_decode(args) -> int:
    scheme = _scheme(args.scheme)
    secret = decode(scheme, _shares(scheme, args.shares, args.use))
    F = scheme.field
    _emit({"format": FORMAT, "secret": [F.dump(x) for x in secret], "hex": secret_to_hex(F, secret)}, args.output)
    return EXIT_OK


def cmd_repair(args) -> int:
    scheme = _scheme(args.scheme)
    shares = _shares(scheme, args.shares, args.use)
    shares.pop(args.index, None)
    value = repair(scheme, args.index, shares)
    flat = [c for x in scheme.flat(args.index, value) for c in scheme.field.coeffs(x)]
    _emit({"format": FORMAT, "index": args.index, "share": flat}, args.output)
    return EXIT_OK


def cmd_audit(args) -> int:
    scheme = _scheme(args.scheme)
    report: dict[str, Any] = {"format": FORMAT, "tag": scheme.tag, "params": scheme.params.to_json()}
    ra = rank_audit(scheme)
    report["rank"] = {"recovery": ra.recovery, "security": ra.security, "locality": ra.locality,
                      "witness": {"recovery": ra.recovery_witness, "security": ra.security_witness,
                                  "locality": ra.locality_witness}}
    ok = ra.passed
    if args.oracle:
        from .oracle import audit_scheme, audit_perfect, enumerate_joint

        dist = enumerate_joint(scheme)
        d1 = audit_scheme(scheme, dist)
        report["oracle"] = {"recovery": d1.recovery, "security": d1.security, "locality": d1.locality,
                            "witness": {"recovery": d1.recovery_witness, "security": d1.security_witness,
                                        "locality": d1.locality_witness},
                            "recovery_sets": {str(i): list(R) for i, R in d1.recovery_sets.items()}}
        ok = ok and d1.passed
        access = AccessStructure.from_json(_load(args.access)) if args.access else None
        if access is not None:
            pr = audit_perfect(scheme, access, dist)
            report["perfect"] = {"perfect": pr.perfect, "witness": pr.witness, "observed": pr.observed}
            ok = ok and pr.perfect
    report["passed"] = ok
    _emit(report, args.output)
    return EXIT_OK if ok else EXIT_AUDIT


def cmd_bounds(args) -> int:
    if args.action == "sweep":
        rows = bnd.sweep(args.m_max, args.r_max)
        fh = open(args.output, "w", newline="") if args.output else sys.stdout
        w = csv.DictWriter(fh, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)
        if args.output:
            fh.close()
        return EXIT_OK
    _need(args, "bound")
    kw = {k: getattr(args, k) for k in ("n", "k", "m", "l", "r", "delta", "x")}
    rep = bnd.evaluate(args.bound, **kw)
    _emit(rep.to_json(), args.output)
    return EXIT_OK


def cmd_graph(args) -> int:
    g = Graph.from_json(_load(args.graph))
    if args.action == "bounds":
        _need(args, "k", "l")
        m, U, feasible = graph_lower_bound_m(g, args.k, args.l)
        _emit({"min_m": m, "extremal_set": list(U), "feasible": feasible,
               "repair_free_set": list(max_repair_free(g)),
               "secrecy_bound": graph_secrecy_bound(g, args.l)}, args.output)
        return EXIT_OK
    _need(args, "l", "p")
    F = field(args.p, args.N or 1)
    if args.action == "matching":
        scheme = build_matching_scheme(g, args.l, F)
    else:
        packing = fractional_cycle_packing(g) if args.fractional else integral_packing(g)
        scheme = build_cycle_scheme(g, packing, args.l, F)
    _emit(scheme_to_json(scheme), args.output)
    return EXIT_OK


def cmd_coop(args) -> int:
    _need(args, "r", "delta")
    if args.code:
        code = LinearCode.from_json(_load(args.code))
    else:
        _need(args, "n", "p")
        code = build_repetition_coop(field(args.p), args.n, args.delta)
    if args.action == "verify":
        ok, bad, _ = is_r_delta_repairable(code, args.r, args.delta)
        _emit({"repairable": ok, "witness": list(bad) if bad else None}, args.output)
        return EXIT_OK if ok else EXIT_AUDIT
    if args.action == "build":
        _emit(code.to_json(), args.output)
        return EXIT_OK
    _need(args, "k", "l", "N")
    scheme = wrap_secure_coop(code, args.k, args.l, args.N, args.r, args.delta)
    _emit(scheme_to_json(scheme), args.output)
    return EXIT_OK


def cmd_lnc(args) -> int:
    _need(args, "n", "k0", "r")
    m = args.m if args.m is not None else args.k0 + args.k0 // args.r - 1
    net = build_flow_graph(args.n, args.k0, m, args.r)
    if args.action == "mincut":
        ok, cuts = verify_multicast_capacity(net)
        _emit({"collectors": len(net.sinks), "min_cuts": cuts, "multicast": ok}, args.output)
        return EXIT_OK if ok else EXIT_AUDIT
    _need(args, "l", "p")
    a = sample_lnc(net, field(args.p, args.N or 1), args.l, args.seed, args.retries)
    out = scheme_to_json(lnc_scheme(net, a))
    out["payload"]["attempts"] = a.attempts
    _emit(out, args.output)
    return EXIT_OK


def build_parser() -> Parser:
    p = Parser(prog="lrss", description="Locally repairable secret sharing toolkit")
    sub = p.add_subparsers(dest="command", required=True, parser_class=Parser)

    def common(sp, *names):
        for n in names:
            sp.add_argument(f"--{n}", type=int)
        sp.add_argument("-o", "--output")

    c = sub.add_parser("construct", help="build a scheme")
    c.add_argument("--type", required=True, choices=["gabidulin", "split", "shamir", "perfect-local", "isn"])
    common(c, "n", "k", "l", "r", "p", "N", "t", "kappa")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--tries", type=int, default=200)
    c.add_argument("--access")
    c.set_defaults(func=cmd_construct)

    e = sub.add_parser("encode", help="split a secret into shares")
    e.add_argument("--scheme", required=True)
    e.add_argument("--secret")
    e.add_argument("--secret-file")
    e.add_argument("--seed", type=int)
    e.add_argument("--randomness-file")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_encode)

    for name, fn, hlp in (("decode", cmd_decode, "recover the secret"), ("repair", cmd_repair, "rebuild one share")):
        d = sub.add_parser(name, help=hlp)
        d.add_argument("--scheme", required=True)
        d.add_argument("--shares", required=True)
        d.add_argument("--use", "--coords", dest="use", help="comma separated share indices to use")
        if name == "repair":
            d.add_argument("--index", type=int, required=True)
        d.add_argument("-o", "--output")
        d.set_defaults(func=fn)

    a = sub.add_parser("audit", help="check recovery, security and locality")
    a.add_argument("--scheme", required=True)
    a.add_argument("--oracle", action="store_true")
    a.add_argument("--access")
    a.add_argument("-o", "--output")
    a.set_defaults(func=cmd_audit)

    b = sub.add_parser("bounds", help="evaluate closed-form limits")
    b.add_argument("action", nargs="?", default="eval", choices=["eval", "sweep"])
    b.add_argument("--bound", choices=sorted(bnd.BOUNDS))
    common(b, "n", "k", "m", "l", "r", "delta", "x")
    b.add_argument("--m-max", type=int, default=12)
    b.add_argument("--r-max", type=int, default=4)
    b.set_defaults(func=cmd_bounds)

    g = sub.add_parser("graph", help="graph-based schemes and limits")
    g.add_argument("action", choices=["bounds", "matching", "cycles"])
    g.add_argument("--graph", required=True)
    g.add_argument("--fractional", action="store_true")
    common(g, "k", "l", "p", "N")
    g.set_defaults(func=cmd_graph)

    co = sub.add_parser("coop", help="cooperative repair")
    co.add_argument("action", choices=["verify", "build", "wrap"])
    co.add_argument("--code")
    common(co, "n", "r", "delta", "p", "k", "l", "N")
    co.set_defaults(func=cmd_coop)

    ln = sub.add_parser("lnc", help="network-coding construction")
    ln.add_argument("action", choices=["mincut", "sample"])
    common(ln, "n", "k0", "m", "r", "l", "p", "N")
    ln.add_argument("--seed", type=int, default=0)
    ln.add_argument("--retries", type=int, default=64)
    ln.set_defaults(func=cmd_lnc)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ValueError, ZeroDivisionError) as exc:
        sys.stderr.write(f"lrss: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
