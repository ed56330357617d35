"""Command-line interface: generate, analyze, compare, and verify circuits.

Exit codes: 0 = all checks passed, 1 = a check failed, 2 = usage error.
Measured values are always printed next to the closed-form expectations so
drift is visible rather than silently tolerated.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor

from . import classic, kronalg, kronecker, qadder
from .core import metrics, snir_gap, validate_prefix
from .serialization import export_dot, export_json


def _build_circuit(name: str, n: int, s: int, k: int):
    if name == "kronecker":
        return kronecker.kronecker_circuit(n, s)
    if name == "ladner-fischer":
        return classic.ladner_fischer(n, k)
    gen = classic.GENERATORS.get(name)
    if gen is None:
        raise ValueError(f"unknown generator {name!r}")
    return gen(n)


GENERATOR_NAMES = ("serial", "sklansky", "kogge-stone", "brent-kung",
                   "ladner-fischer", "kronecker")


def cmd_generate(args) -> int:
    try:
        circuit = _build_circuit(args.generator, args.n, args.s, args.k)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.validate and not validate_prefix(circuit):
        print(f"error: generated circuit failed prefix validation", file=sys.stderr)
        return 1
    text = export_dot(circuit) if args.format == "dot" else export_json(circuit)
    if args.output:
        with open(args.output, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _table_row(name: str, n: int, s: int, k: int):
    c = _build_circuit(name, n, s, k)
    m = metrics(c)
    m_out = metrics(c, count_outputs=True)
    return (name, n, m.size, m.depth, m.max_fanout, m_out.max_fanout,
            m.deficiency, m.valid)


def _formula_checks(name: str, n: int, s: int, row):
    """Yields (field, expected, measured) triples for the closed forms."""
    _, _, size, depth, _, _, deficiency, valid = row
    if not valid:
        yield ("valid", True, False)
    is_pow2 = n >= 2 and (n & (n - 1)) == 0
    lg = int(math.log2(n)) if is_pow2 else None
    if name == "serial":
        yield ("size", n - 1, size)
        yield ("depth", n - 1, depth)
    elif name == "sklansky" and is_pow2:
        yield ("size", n * lg // 2, size)
        yield ("depth", lg, depth)
    elif name == "kogge-stone" and is_pow2:
        yield ("size", n * lg - n + 1, size)
        yield ("depth", lg, depth)
    elif name == "brent-kung" and is_pow2 and n >= 2:
        yield ("size", 2 * n - lg - 2, size)
        yield ("depth", 2 * lg - 1 if n > 2 else 1, depth)
        # entailed by the size and depth forms: (2n-lg-2)+(2lg-1)-(2n-2) = lg-1
        yield ("deficiency", lg - 1 if n > 2 else 0, deficiency)
    elif name == "kronecker":
        yield ("size (zero-deficiency: 2n-2-depth)", 2 * n - 2 - depth, size)


def cmd_table(args) -> int:
    names = args.generators.split(",") if args.generators else list(GENERATOR_NAMES)
    for name in names:
        if name not in GENERATOR_NAMES:
            print(f"error: unknown generator {name!r}", file=sys.stderr)
            return 2
    n_list = _parse_n_list(args.n_list)
    work = [(name, n, args.s, args.k) for name in names for n in n_list]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_table_row, *zip(*work)))
    else:
        rows = [_table_row(*w) for w in work]
    rows.sort(key=lambda r: (names.index(r[0]), r[1]))

    header = ("generator", "n", "size", "depth", "fanout",
              "fanout(+outputs)", "deficiency", "valid")
    if args.csv:
        print(",".join(header))
        for r in rows:
            print(",".join(str(x) for x in r))
    elif args.json:
        print(json.dumps([dict(zip(header, r)) for r in rows], indent=1))
    else:
        widths = [max(len(str(x)) for x in [h] + [r[i] for r in rows])
                  for i, h in enumerate(header)]
        print("  ".join(h.ljust(w) for h, w in zip(header, widths)))
        for r in rows:
            print("  ".join(str(x).ljust(w) for x, w in zip(r, widths)))

    if not args.check_formulas:
        return 0
    failures = []
    for row in rows:
        name, n = row[0], row[1]
        for field, expected, measured in _formula_checks(name, n, args.s, row):
            tag = "ok" if expected == measured else "MISMATCH"
            print(f"check {name} n={n} {field}: formula={expected} "
                  f"measured={measured} [{tag}]")
            if expected != measured:
                failures.append((name, n, field, expected, measured))
    if failures:
        print(f"{len(failures)} formula check(s) failed", file=sys.stderr)
        return 1
    print("all formula checks passed")
    return 0


def cmd_mindepth(args) -> int:
    table = kronecker.min_depth_table(args.max_n)
    sys.stdout.write(table.to_csv())
    return 0


def cmd_adder(args) -> int:
    if args.n < 1 or args.s < 2:
        print("error: need n >= 1 and s >= 2", file=sys.stderr)
        return 2
    if args.action == "build":
        circuit = qadder.build_adder(args.n, args.s)
        text = qadder.netlist(circuit)
        if args.output:
            with open(args.output, "w") as f:
                f.write(text)
        else:
            sys.stdout.write(text)
        return 0
    if args.action == "resources":
        rep = qadder.resource_report(args.n, args.s)
        depth_bound = args.s * math.ceil(math.log(args.n, args.s)) + 2 if args.n > 1 else 3
        if args.json:
            print(json.dumps(rep, indent=1))
        else:
            print(f"n={rep['n']} s={rep['s']}")
            print(f"toffoli_count: measured={rep['toffoli_count']} "
                  f"(linear-bound 4n={4 * args.n})")
            print(f"toffoli_depth: measured={rep['toffoli_depth']} "
                  f"(bound s*ceil(log_s n)+2={depth_bound})")
            print(f"ancillas: measured={rep['ancillas']}")
        return 0
    if args.action == "verify":
        if args.exhaustive and args.n > 10:
            print("error: exhaustive verification is limited to n <= 10",
                  file=sys.stderr)
            return 2
        report = qadder.verify_adder(args.n, args.s, trials=args.trials,
                                     seed=args.seed)
        mode = "exhaustive" if report.exhaustive else f"{report.cases} random pairs"
        if report.ok:
            print(f"adder n={args.n} s={args.s}: PASS ({mode})")
            return 0
        print(f"adder n={args.n} s={args.s}: FAIL ({mode})")
        n, s, a, b, got_sum, got_carry = report.counterexample
        print(f"counterexample: a={a} b={b} observed sum={got_sum} "
              f"carry={got_carry} expected sum={(a + b) % (1 << n)} "
              f"carry={(a + b) >> n}")
        return 1
    print(f"error: unknown adder action {args.action!r}", file=sys.stderr)
    return 2


def cmd_check_kron(args) -> int:
    if args.max_dim < 2:
        print("grid [2,max_dim]^2 is empty: trivially pass")
        return 0
    failures = []
    for n1 in range(2, args.max_dim + 1):
        for n2 in range(2, args.max_dim + 1):
            if not kronalg.decomposition_check(n1, n2):
                failures.append((n1, n2))
    total = (args.max_dim - 1) ** 2
    if failures:
        print(f"FAIL: {len(failures)}/{total} pairs failed: {failures[:10]}")
        return 1
    print(f"PASS: decomposition identities hold on all {total} pairs "
          f"(n1, n2) in [2,{args.max_dim}]^2")
    return 0


def cmd_ratio(args) -> int:
    n_list = _parse_n_list(args.n_list)
    rows = kronecker.depth_ratio_report(n_list, args.s)
    print("n,recursion_depth,depth/log2(n),built_depth")
    for n, d, ratio in rows:
        built = kronecker.circuit_depth(n, args.s)
        print(f"{n},{d},{ratio:.4f},{built}")
    return 0


def _parse_n_list(text: str) -> list:
    """Accepts '8,16,32', ranges 'lo:hi[:step]', or geometric 'lo:hi:*k'."""
    out = []
    for part in text.split(","):
        if ":" in part:
            bits = part.split(":")
            lo, hi = int(bits[0]), int(bits[1])
            if len(bits) > 2 and bits[2].startswith("*"):
                factor = int(bits[2][1:])
                v = lo
                while v <= hi:
                    out.append(v)
                    v *= factor
            else:
                step = int(bits[2]) if len(bits) > 2 else 1
                out.extend(range(lo, hi + 1, step))
        else:
            out.append(int(part))
    return out


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="prefixcircuits",
        description="Synthesize, validate, and analyze parallel prefix "
                    "circuits and the derived reversible adder.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="emit one circuit as JSON or DOT")
    g.add_argument("generator", choices=GENERATOR_NAMES)
    g.add_argument("-n", type=int, required=True)
    g.add_argument("-s", type=int, default=2, help="block size (kronecker)")
    g.add_argument("-k", type=int, default=0, help="depth parameter (ladner-fischer)")
    g.add_argument("--format", choices=("json", "dot"), default="json")
    g.add_argument("--validate", action="store_true")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_generate)

    t = sub.add_parser("table", help="metric table across generators")
    t.add_argument("--n-list", default="2:512:*2",
                   help="comma list; lo:hi or lo:hi:step ranges (hi inclusive)")
    t.add_argument("--generators", default=None,
                   help="comma list (default: all)")
    t.add_argument("-s", type=int, default=2)
    t.add_argument("-k", type=int, default=0)
    t.add_argument("--check-formulas", action="store_true")
    t.add_argument("--csv", action="store_true")
    t.add_argument("--json", action="store_true")
    t.add_argument("--jobs", type=int, default=1)
    t.set_defaults(func=cmd_table)

    m = sub.add_parser("mindepth", help="minimum-depth table as CSV")
    m.add_argument("--max-n", type=int, required=True)
    m.set_defaults(func=cmd_mindepth)

    a = sub.add_parser("adder", help="build/verify/report the reversible adder")
    a.add_argument("action", choices=("build", "verify", "resources"))
    a.add_argument("-n", type=int, required=True)
    a.add_argument("-s", type=int, default=2)
    a.add_argument("--trials", type=int, default=10000)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--exhaustive", action="store_true")
    a.add_argument("--json", action="store_true")
    a.add_argument("-o", "--output")
    a.set_defaults(func=cmd_adder)

    c = sub.add_parser("check-kron", help="verify the decomposition identities")
    c.add_argument("--max-dim", type=int, default=12)
    c.set_defaults(func=cmd_check_kron)

    r = sub.add_parser("ratio", help="depth/log2(n) of the blocked recursion")
    r.add_argument("--n-list", required=True)
    r.add_argument("-s", type=int, default=3)
    r.set_defaults(func=cmd_ratio)

    return p


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
