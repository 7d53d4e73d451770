"""Command-line front end.

Exit codes: 0 success, 1 I/O or parse problem, 2 no system exists for the
requested order, 3 verification failed, 4 a search hit its node limit.
"""

from __future__ import annotations

import argparse
import json
import sys

from .builder import admissible_3pyramidal, build_3pyramidal, group_descriptor_for
from .errors import DomainError, NonExistenceError, SearchLimitExceeded, StructureError
from .families import PartialSpread, df_search, family_to_json
from .groups import element_from_json, parse_descriptor, subgroups_of_prime_order
from .sequences import find_extended_langford, find_extended_skolem
from .system import TripleSystem
from .verifier import verify_pyramidal, verify_sts

EXIT_OK, EXIT_IO, EXIT_NONEXISTENT, EXIT_INVALID, EXIT_LIMIT = 0, 1, 2, 3, 4

# (class, verdict, group pattern)
EXISTENCE_TABLE = [
    ("24n+1", "No", "-"),
    ("24n+3", "Yes ⇔ n even", "Z4xZ<6n>"),
    ("24n+7", "Yes", "Z2xZ2xZ<6n+1>"),
    ("24n+9", "Yes", "D6xZ<4n+1>"),
    ("24n+13", "No", "-"),
    ("24n+15", "Yes", "Z2xZ2xZ3xZ<2n+1>"),
    ("24n+19", "Yes ⇔ n even", "Z4xZ<6n+4>"),
    ("24n+21", "No", "-"),
]


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which would collide with the
    # non-existence code
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_IO, f"{self.prog}: error: {message}\n")


def _err(msg):
    print(msg, file=sys.stderr)


def _emit(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
        return
    with open(out, "w") as fh:
        fh.write(text)


def cmd_generate(args):
    try:
        T = build_3pyramidal(args.v)
    except NonExistenceError as exc:
        _err(str(exc))
        return EXIT_NONEXISTENT
    except DomainError as exc:
        _err(str(exc))
        return EXIT_IO
    text = T.to_text() if args.format == "text" else json.dumps(T.to_json()) + "\n"
    try:
        _emit(text, args.out)
    except OSError as exc:
        _err(f"cannot write {args.out}: {exc}")
        return EXIT_IO
    return EXIT_OK


def _load_system(path):
    if path == "-":
        raw = sys.stdin.read()
    else:
        with open(path) as fh:
            raw = fh.read()
    if raw.lstrip().startswith("{"):
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise StructureError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        return TripleSystem.from_json(data)
    return TripleSystem.from_text(raw)


def verification_report(T):
    sts = verify_sts(T)
    pyr = None
    if T.group is not None or T.f == T.v:
        pyr = verify_pyramidal(T, T.group, T.f)
    counter = None
    if not sts.ok:
        counter = sts.to_json()["counterexample"]
    elif pyr is not None and not pyr.ok:
        counter = pyr.counterexample
    return {
        "steiner": sts.ok,
        "pyramidal": None if pyr is None else pyr.ok,
        "f": T.f,
        "counterexample": counter,
        "details": {"steiner": sts.to_json(), "pyramidal": None if pyr is None else pyr.to_json()},
    }


def cmd_verify(args):
    try:
        T = _load_system(args.path)
    except OSError as exc:
        _err(f"cannot read {args.path}: {exc}")
        return EXIT_IO
    except (StructureError, DomainError, KeyError, TypeError) as exc:
        _err(f"{args.path}: parse error: {exc}")
        return EXIT_IO
    report = verification_report(T)
    print(json.dumps(report))
    ok = report["steiner"] and report["pyramidal"] is not False
    return EXIT_OK if ok else EXIT_INVALID


def cmd_table(args):
    print("class\texistence")
    for cls, verdict, group in EXISTENCE_TABLE:
        print(f"{cls}\t{verdict}" + (f", {group}" if group != "-" else ""))
    if args.limit < 3:
        return EXIT_OK
    print()
    print("v\texists\tgroup")
    for v in range(3, args.limit + 1):
        if v % 6 not in (1, 3):
            continue
        if admissible_3pyramidal(v):
            print(f"{v}\tyes\t{group_descriptor_for(v) or '-'}")
        else:
            print(f"{v}\tno\t-")
    return EXIT_OK


def _print_sequence(seq):
    print("absent" if seq is None else json.dumps(list(seq.entries)))


def cmd_skolem(args):
    try:
        _print_sequence(find_extended_skolem(args.n, args.k, args.node_limit))
    except DomainError as exc:
        _err(str(exc))
        return EXIT_IO
    except SearchLimitExceeded as exc:
        _err(str(exc))
        return EXIT_LIMIT
    return EXIT_OK


def cmd_langford(args):
    try:
        _print_sequence(find_extended_langford(args.n, args.d, args.k, args.node_limit))
    except DomainError as exc:
        _err(str(exc))
        return EXIT_IO
    except SearchLimitExceeded as exc:
        _err(str(exc))
        return EXIT_LIMIT
    return EXIT_OK


def default_spread(G):
    """Every order-2 subgroup plus as few order-3 subgroups as the count allows.

    A ``(G, S, 3, 1)``-DF needs ``|G| - 1 - |union of S minus 1|`` divisible by 6.
    """
    members = list(subgroups_of_prime_order(G, 2))
    left = G.order - 1 - len(members)
    for S in subgroups_of_prime_order(G, 3):
        if left % 6 == 0:
            break
        if all(len(S & m) == 1 for m in members):
            members.append(S)
            left -= 2
    return PartialSpread(G, tuple(members))


def cmd_search(args):
    try:
        G = parse_descriptor(args.group)
        if args.spread is None:
            spread = default_spread(G)
        else:
            spread = PartialSpread(G, tuple(frozenset(element_from_json(G, e) for e in m)
                                            for m in json.loads(args.spread)))
    except (StructureError, DomainError, json.JSONDecodeError, TypeError) as exc:
        _err(f"bad input: {exc}")
        return EXIT_IO
    try:
        F = df_search(G, spread, args.node_limit)
    except DomainError as exc:
        _err(str(exc))
        return EXIT_IO
    except SearchLimitExceeded as exc:
        _err(str(exc))
        return EXIT_LIMIT
    print("absent" if F is None else json.dumps(family_to_json(F, spread)))
    return EXIT_OK


def cmd_report(args):
    from .report import write_report

    try:
        rows, csv_path, png_path = write_report(args.limit, args.out_dir)
    except OSError as exc:
        _err(f"cannot write report: {exc}")
        return EXIT_IO
    bad = [r["v"] for r in rows if r["verdict"] == "yes" and not (r["steiner"] and r["pyramidal"])]
    print(f"{len(rows)} orders, {sum(r['verdict'] == 'yes' for r in rows)} constructed")
    print(csv_path)
    print(png_path)
    if bad:
        _err(f"verification failed for v in {bad}")
        return EXIT_INVALID
    return EXIT_OK


def build_parser():
    p = _Parser(prog="pyramidal-sts", description="Construct and verify 3-pyramidal Steiner triple systems.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="build a 3-pyramidal STS(v)")
    g.add_argument("--v", type=int, required=True)
    g.add_argument("--format", choices=("json", "text"), default="json")
    g.add_argument("--out", default=None, help="output file (default stdout)")
    g.set_defaults(func=cmd_generate)

    vf = sub.add_parser("verify", help="check a system file (JSON or text, '-' for stdin)")
    vf.add_argument("path", nargs="?", default=None)
    vf.add_argument("--in", dest="in_path", default=None)
    vf.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", help="existence table by residue class")
    t.add_argument("--limit", type=int, default=100)
    t.set_defaults(func=cmd_table)

    for name, func, with_d in (("skolem", cmd_skolem, False), ("langford", cmd_langford, True)):
        s = sub.add_parser(name, help=f"extended {name} sequence")
        s.add_argument("--n", type=int, required=True)
        if with_d:
            s.add_argument("--d", type=int, required=True)
        s.add_argument("--k", type=int, required=True)
        s.add_argument("--node-limit", type=int, default=None)
        s.set_defaults(func=func)

    se = sub.add_parser("search", help="exhaustive difference-family search")
    se.add_argument("--group", required=True, help='descriptor such as "Z9" or "D6xZ3"')
    se.add_argument("--spread", default=None,
                    help="JSON list of subgroups, each a list of elements (default: involutions plus order-3 as needed)")
    se.add_argument("--node-limit", type=int, default=None)
    se.set_defaults(func=cmd_search)

    r = sub.add_parser("report", help="sweep v <= limit, write CSV and a PNG figure")
    r.add_argument("--limit", type=int, default=200)
    r.add_argument("--out-dir", default="report")
    r.set_defaults(func=cmd_report)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        args.path = args.in_path or args.path
        if args.path is None:
            _err("verify: give a path, --in PATH, or '-'")
            return EXIT_IO
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
