"""Command-line front end.

Exit codes: 0 on success, 1 when a mathematical check fails, 2 on bad input.
The default output format can be overridden with ``RESAVOID_FORMAT``.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from decimal import Decimal, InvalidOperation
from fractions import Fraction

from .density import (
    ModuliList,
    exact_natural_density,
    exact_relative_density,
    fraction_json,
    full_verification,
    theorem1_bound,
    theorem2_bound,
)
from .errors import BudgetExceeded, InvariantViolation
from .lattice import (
    ENUM_BUDGET,
    LatticeInstance,
    best_translate_block,
    chung_bound,
    count_avoiders_bruteforce,
    count_avoiders_ie,
    norm,
    random_instance,
    verify_lemma,
)
from .sieve import DEFAULT_SEGMENT, DEFAULT_TOLERANCE, SieveConfig, convergence_report
from .unitgroup import build_basis

FORMATS = ("table", "json", "csv")
ENV_FORMAT = "RESAVOID_FORMAT"


class UsageError(Exception):
    pass


def parse_int(text: str) -> int:
    """Integer, also accepting scientific notation such as ``1e7``."""
    try:
        v = Decimal(text.strip())
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if v != v.to_integral_value():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(v)


def parse_int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [parse_int(t) for t in text.split(",")]
    except argparse.ArgumentTypeError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def parse_moduli(text: str) -> ModuliList:
    values = parse_int_list(text)
    if any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("moduli must be positive integers")
    return ModuliList(tuple(values))


def parse_vectors(text: str) -> list[tuple[int, ...]]:
    """Semicolon-separated vectors, e.g. ``2,2;3,1``."""
    return [tuple(parse_int_list(chunk)) for chunk in text.split(";") if chunk.strip()]


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def table(rows: list[dict]) -> str:
    if not rows:
        return ""
    keys = list(rows[0])
    cells = [[str(r[k]) for k in keys] for r in rows]
    widths = [max(len(k), *(len(c[i]) for c in cells)) for i, k in enumerate(keys)]
    lines = ["  ".join(k.rjust(w) for k, w in zip(keys, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]
    return "\n".join(lines)


def emit(fmt: str, payload: dict, rows: list[dict] | None = None) -> None:
    if fmt == "json":
        print(dump_json(payload))
    elif fmt == "csv":
        rows = rows if rows is not None else [{k: v for k, v in payload.items() if not isinstance(v, (dict, list))}]
        if rows:
            print(",".join(rows[0]))
            for r in rows:
                print(",".join(str(v) for v in r.values()))
    elif rows is not None:
        print(table(rows))
    else:
        width = max(len(k) for k in payload)
        for k, v in payload.items():
            print(f"{k.ljust(width)}  {v}")


def _frac(q: Fraction, fmt: str):
    return fraction_json(q) if fmt == "json" else str(q)


def cmd_bound(args) -> int:
    m = args.moduli
    payload = {
        "moduli": list(m.raw),
        "bound": _frac(theorem2_bound(m), args.format),
        "bound_reduced": _frac(theorem2_bound(m, reduced=True), args.format),
    }
    if args.format == "table":
        print(theorem2_bound(m))
    else:
        emit(args.format, payload)
    return 0


def cmd_exact(args) -> int:
    m = args.moduli
    exact = exact_relative_density(m)
    if args.format == "table":
        print(exact)
    else:
        emit(args.format, {"moduli": list(m.raw), "l": m.lcm, "exact": _frac(exact, args.format)})
    return 0


def cmd_natural(args) -> int:
    m = args.moduli
    exact = exact_natural_density(m)
    bound = theorem1_bound(m)
    holds = bound <= exact
    emit(
        args.format,
        {
            "moduli": list(m.raw),
            "exact": _frac(exact, args.format),
            "bound": _frac(bound, args.format),
            "holds": holds,
        },
    )
    return 0 if holds else 1


def _empirical(args, m: ModuliList):
    config = SieveConfig(args.limit, args.segment_size, args.checkpoints or [])
    return convergence_report(m, config, args.tolerance)


def cmd_verify(args) -> int:
    m = args.moduli
    report = full_verification(m)
    payload = report.to_json()
    ok = report.ok
    if args.limit is not None:
        conv = _empirical(args, m)
        payload["empirical"] = conv.to_json()
        ok = ok and conv.status != "FAIL"
    payload["status"] = "PASS" if ok else "FAIL"
    if args.format == "json":
        print(dump_json(payload))
    else:
        summary = {
            "moduli": ",".join(map(str, m.raw)) or "(none)",
            "l": report.l,
            "phi(l)": report.phi_l,
            "#S": report.s_count,
            "exact": str(report.exact),
            "bound": str(report.bound),
            "bound (reduced list)": str(report.bound_reduced),
            "bound <= exact": report.holds,
            "methods agree": f"{report.methods_agree} ({'+'.join(report.methods_run)})",
            "transport agrees": "skipped" if report.transport_agree is None else report.transport_agree,
        }
        if args.limit is not None:
            summary["empirical"] = f"{conv.status} (deviation {payload['empirical']['deviation']} at x={args.limit})"
        summary["status"] = payload["status"]
        if args.format == "csv":
            emit("csv", summary)
        else:
            emit("table", summary)
    return 0 if ok else 1


def _lemma_row(inst: LatticeInstance) -> dict:
    rep = verify_lemma(inst)
    row = {
        "avoiders": ";".join(",".join(map(str, a)) for a in inst.avoiders) or "-",
        "box": ",".join(map(str, inst.box)),
        "count": rep.count,
        "bound": str(rep.bound_value),
        "holds": rep.holds,
    }
    counts = {count_avoiders_ie(inst)}
    if norm(inst.box) <= ENUM_BUDGET:
        counts.add(count_avoiders_bruteforce(inst))
    row["methods_agree"] = counts == {rep.count}
    try:
        blk = best_translate_block(inst)
        row["t"] = ",".join(map(str, blk.t))
        row["block_count"] = blk.block_count
        row["pigeonhole"] = blk.block_count >= norm(inst.box) * chung_bound(inst)
    except BudgetExceeded:
        row["t"], row["block_count"], row["pigeonhole"] = "", "", "skipped"
    return row


def cmd_lemma(args) -> int:
    if args.trials is not None:
        rng = random.Random(args.seed)
        instances = [random_instance(rng) for _ in range(args.trials)]
    else:
        if args.box is None:
            raise UsageError("lemma needs --box (and --avoiders), or --trials")
        box = tuple(parse_int_list(args.box))
        avoiders = parse_vectors(args.avoiders or "")
        if args.dims is not None and args.dims != len(box):
            raise UsageError(f"--dims {args.dims} does not match box dimension {len(box)}")
        instances = [LatticeInstance(tuple(avoiders), box)]
    rows = [_lemma_row(inst) for inst in instances]
    ok = all(r["holds"] and r["methods_agree"] and r["pigeonhole"] is not False for r in rows)
    if args.format == "json":
        print(dump_json({"instances": rows, "status": "PASS" if ok else "FAIL"}))
    else:
        emit(args.format, {}, rows)
        if args.format == "table":
            print(f"{'PASS' if ok else 'FAIL'}: {len(rows)} instance(s)")
    return 0 if ok else 1


def cmd_basis(args) -> int:
    basis = build_basis(args.modulus)
    payload = basis.to_json()
    if args.format == "json":
        print(dump_json(payload))
    else:
        rows = [
            {"component": j, **c.to_json()} for j, c in enumerate(basis.components)
        ]
        if args.format == "table":
            print(f"modulus {basis.modulus}, two-adic mode {basis.two_adic_mode}, orders {basis.orders}")
        emit(args.format, {}, rows)
    return 0


def cmd_empirical(args) -> int:
    if args.limit is None:
        raise UsageError("empirical needs --limit")
    conv = _empirical(args, args.moduli)
    if args.format == "json":
        print(dump_json(conv.to_json()))
    elif args.format == "csv":
        sys.stdout.write(conv.to_csv())
        print(f"# {conv.note}", file=sys.stderr)
        print(f"# {_status_line(conv)}")
    else:
        print(f"# {conv.note}")
        print(table([r.fields() for r in conv.rows]))
        print(_status_line(conv))
    return 1 if conv.status == "FAIL" else 0


def _status_line(conv) -> str:
    if conv.status == "UNVERIFIED":
        return "UNVERIFIED: exact density not computable"
    return f"{conv.status}: |ratio_pi - {conv.exact}| = {conv.deviation:.3g} (tolerance {conv.tolerance})"


def build_parser() -> argparse.ArgumentParser:
    env_format = os.environ.get(ENV_FORMAT)
    if env_format not in FORMATS:
        env_format = None
    default_format = env_format or "table"

    parser = argparse.ArgumentParser(prog="resavoid", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, moduli=True, fmt=default_format):
        p = sub.add_parser(name, help=help)
        if moduli:
            p.add_argument("-a", "--moduli", type=parse_moduli, required=True, help="comma-separated a_1,...,a_k")
        p.add_argument("--format", choices=FORMATS, default=fmt)
        p.set_defaults(func=func)
        return p

    def sieve_flags(p):
        p.add_argument("--limit", type=parse_int)
        p.add_argument("--segment-size", type=parse_int, default=DEFAULT_SEGMENT)
        p.add_argument("--checkpoints", type=parse_int_list)
        p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)

    add("bound", cmd_bound, "product bound prod(1 - 1/phi(a_i)) for primes")
    add("exact", cmd_exact, "exact relative density of primes p != 1 mod a_i")
    add("natural", cmd_natural, "exact natural density of n != 0 mod a_i and its product bound")
    sieve_flags(add("verify", cmd_verify, "run every exact check (and the sieve with --limit)"))
    p = add("empirical", cmd_empirical, "count matching primes with a segmented sieve", fmt=env_format or "csv")
    sieve_flags(p)

    p = add("lemma", cmd_lemma, "check the lattice avoidance bound", moduli=False)
    p.add_argument("--dims", type=int)
    p.add_argument("--avoiders", help="semicolon-separated vectors, e.g. 2,2;3,1")
    p.add_argument("--box", help="comma-separated box vector")
    p.add_argument("--trials", type=int, help="check this many random instances instead")
    p.add_argument("--seed", type=int, default=0)

    p = add("basis", cmd_basis, "cyclic decomposition of the unit group mod l", moduli=False)
    p.add_argument("--modulus", type=parse_int, required=True)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 1
    except (UsageError, BudgetExceeded, ValueError, OverflowError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
