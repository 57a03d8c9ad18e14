"""Command-line front end: parameter checks, lattice listings, subgroup sums,
and the corpus verifier.

Exit codes: 0 success / all consistent, 1 domain failure (invalid triple or
theorem violation), 2 usage or parse error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from math import gcd
from typing import IO, Sequence

from . import verifier, zm
from .groups import (
    DEFAULT_ORDER_CAP,
    DEFAULT_SUBGROUP_CAP,
    CapExceeded,
    FiniteGroup,
    all_subgroups,
    alternating_group,
    cyclic_group,
    dicyclic_group,
    dihedral_group,
    direct_product,
    exponent,
    is_sylow_cyclic,
    metacyclic_group,
    phi_of_group,
    symmetric_group,
)
from .numtheory import mod_pow


class DescriptorError(ValueError):
    """A group descriptor string does not match the grammar."""


class DomainFailure(ValueError):
    """Structurally fine input that violates a mathematical precondition."""


# ---------------------------------------------------------------------------
# descriptor grammar:
#   cyclic:N | dihedral:K | dicyclic:K | symmetric:N | alternating:N
#   | zm:M,N,R | metacyclic:M,N,R | product:(DESC)x(DESC)[x(DESC)...]

def _parse_ints(text: str, count: int, descriptor: str) -> list[int]:
    parts = text.split(",")
    if len(parts) != count:
        raise DescriptorError(f"expected {count} comma-separated integers in {descriptor!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise DescriptorError(f"non-integer parameter in {descriptor!r}") from None


def _split_product(rest: str, descriptor: str) -> list[str]:
    parts = []
    i = 0
    while i < len(rest):
        if rest[i] != "(":
            raise DescriptorError(f"expected '(' at position {i} of {descriptor!r}")
        depth = 0
        j = i
        while j < len(rest):
            if rest[j] == "(":
                depth += 1
            elif rest[j] == ")":
                depth -= 1
                if depth == 0:
                    break
            j += 1
        if depth != 0:
            raise DescriptorError(f"unbalanced parentheses in {descriptor!r}")
        parts.append(rest[i + 1 : j])
        i = j + 1
        if i < len(rest):
            if rest[i] != "x":
                raise DescriptorError(f"expected 'x' between factors in {descriptor!r}")
            i += 1
            if i == len(rest):
                raise DescriptorError(f"trailing 'x' in {descriptor!r}")
    if len(parts) < 2:
        raise DescriptorError(f"product needs at least two factors in {descriptor!r}")
    return parts


def build_from_descriptor(text: str, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Build the group named by a descriptor string.

    Raises DescriptorError for grammar problems, DomainFailure for well-formed
    descriptors whose parameters violate a precondition (e.g. a non-ZM triple),
    and CapExceeded when the build outgrows the cap.
    """
    text = text.strip()
    head, sep, tail = text.partition(":")
    if not sep or not tail:
        raise DescriptorError(f"malformed descriptor {text!r}")
    if head == "product":
        factors = _split_product(tail, text)
        group = build_from_descriptor(factors[0], cap=cap)
        for factor in factors[1:]:
            group = direct_product(group, build_from_descriptor(factor, cap=cap), cap=cap)
        return group
    if head in ("cyclic", "dihedral", "dicyclic", "symmetric", "alternating"):
        (k,) = _parse_ints(tail, 1, text)
        if k < 1:
            raise DescriptorError(f"parameter must be >= 1 in {text!r}")
        builder = {
            "cyclic": cyclic_group,
            "dihedral": dihedral_group,
            "dicyclic": dicyclic_group,
            "symmetric": symmetric_group,
            "alternating": alternating_group,
        }[head]
        return builder(k, cap=cap)
    if head == "zm":
        m, n, r = _parse_ints(tail, 3, text)
        if m < 1 or n < 1:
            raise DescriptorError(f"m and n must be >= 1 in {text!r}")
        params = zm.validate_zm_params(m, n, r)
        if not isinstance(params, zm.ZmParams):
            raise DomainFailure(f"invalid ZM triple ({m},{n},{r}): " + "; ".join(params))
        return zm.to_permutation_group(params, cap=cap)
    if head == "metacyclic":
        m, n, r = _parse_ints(tail, 3, text)
        if m < 1 or n < 1:
            raise DescriptorError(f"m and n must be >= 1 in {text!r}")
        try:
            return metacyclic_group(m, n, r, cap=cap)
        except ValueError as exc:
            raise DomainFailure(str(exc)) from None
    raise DescriptorError(f"unknown group family {head!r}")


# ---------------------------------------------------------------------------
# output helpers

def _emit(records: list[dict], fields: Sequence[str], fmt: str, out: IO[str]) -> None:
    if fmt == "jsonl":
        for rec in records:
            out.write(json.dumps({k: rec[k] for k in fields if k in rec}) + "\n")
    elif fmt == "csv":
        writer = csv.DictWriter(out, fieldnames=list(fields), restval="", lineterminator="\n")
        writer.writeheader()
        for rec in records:
            writer.writerow({k: rec[k] for k in fields if k in rec})
    else:  # table
        rows = [[_cell(rec.get(k, "")) for k in fields] for rec in records]
        widths = [max(len(f), *(len(r[i]) for r in rows)) if rows else len(f)
                  for i, f in enumerate(fields)]
        out.write("  ".join(f.ljust(w) for f, w in zip(fields, widths)).rstrip() + "\n")
        for row in rows:
            out.write("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n")


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    return str(value)


def element_str(e: zm.ZmElement) -> str:
    """Normal form b^x a^y, with trivial factors dropped ('e' for identity)."""
    x, y = e
    parts = []
    if x:
        parts.append("b" if x == 1 else f"b^{x}")
    if y:
        parts.append("a" if y == 1 else f"a^{y}")
    return ".".join(parts) if parts else "e"


# ---------------------------------------------------------------------------
# subcommands

def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {value}")
    return value


def cmd_check_params(args: argparse.Namespace) -> int:
    m, n, r = args.m, args.n, args.r
    r_canon = r % m
    g_mn = gcd(m, n)
    g_mr = gcd(m, (r_canon + m - 1) % m)
    rn = mod_pow(r_canon, n, m)
    checks = [
        (f"gcd(m,n) = {g_mn}", g_mn == 1),
        (f"gcd(m,r-1) = {g_mr}", g_mr == 1),
        (f"r^n mod m = {rn}", rn == 1 % m),
    ]
    for text, ok in checks:
        print(f"ok   {text}" if ok else f"FAIL {text} != 1")
    if all(ok for _, ok in checks):
        print(f"valid: ZM({m},{n},{r_canon}) has order {m * n}")
        return 0
    print(f"invalid: ({m},{n},{r}) is not a ZM triple")
    return 1


def cmd_lattice(args: argparse.Namespace) -> int:
    params = zm.validate_zm_params(args.m, args.n, args.r)
    if not isinstance(params, zm.ZmParams):
        for violation in params:
            print(f"violation: {violation}", file=sys.stderr)
        return 1
    entries = zm.lattice_entries(params, with_members=args.elements)
    records = []
    for entry in entries:
        rec = {
            "m1": entry.triple.m1,
            "n1": entry.triple.n1,
            "s": entry.triple.s,
            "order": entry.order,
            "cyclic": entry.cyclic,
            "phi": entry.phi_value,
        }
        if args.elements:
            members = sorted(entry.members)
            if args.format == "jsonl":
                rec["members"] = [list(e) for e in members]
            else:
                rec["members"] = " ".join(element_str(e) for e in members)
        records.append(rec)
    fields = ["m1", "n1", "s", "order", "cyclic", "phi"]
    if args.elements:
        fields.append("members")
    _emit(records, fields, args.format, sys.stdout)
    if args.format == "table":
        total = sum(r["phi"] for r in records)
        print(f"S = {total} = |G| = {params.order}" if total == params.order
              else f"S(cyclic entries) = {total}, |G| = {params.order}  [MISMATCH]")
    return 0


def cmd_sfun(args: argparse.Namespace) -> int:
    try:
        group = build_from_descriptor(args.descriptor)
    except DescriptorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    subgroups = all_subgroups(group, cap=DEFAULT_SUBGROUP_CAP)
    s_value = sum(phi_of_group(h) for h in subgroups)
    rec = {
        "descriptor": args.descriptor,
        "order": group.order,
        "exponent": exponent(group),
        "phi": phi_of_group(group),
        "s": s_value,
        "sylow_cyclic": is_sylow_cyclic(group),
        "equality": s_value == group.order,
    }
    if args.format == "table":
        print(f"group      {rec['descriptor']}")
        print(f"|G|        {rec['order']}")
        print(f"exp(G)     {rec['exponent']}")
        print(f"phi(G)     {rec['phi']}")
        print(f"S(G)       {rec['s']}")
        print(f"sylow all cyclic  {'yes' if rec['sylow_cyclic'] else 'no'}")
        print("S(G) = |G|" if rec["equality"] else f"S(G) > |G| by {s_value - group.order}")
    else:
        _emit([rec], list(rec), args.format, sys.stdout)
    if args.subgroups:
        sub_records = [
            {"order": h.order, "phi": phi_of_group(h), "members": h.indices()}
            for h in subgroups
        ]
        if args.format == "table":
            print(f"subgroups ({len(sub_records)}):")
        _emit(sub_records, ["order", "phi", "members"], args.format, sys.stdout)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    families = None
    if args.families:
        families = [f.strip() for f in args.families.split(",") if f.strip()]
        unknown = set(families) - set(verifier.FAMILIES)
        if unknown:
            print(f"error: unknown families {sorted(unknown)} "
                  f"(choose from {', '.join(verifier.FAMILIES)})", file=sys.stderr)
            return 2
    specs = verifier.build_corpus(args.max_order, families)
    results = verifier.run_corpus(specs, parallel=args.parallel)

    records = [verifier.report_record(r.report, timings=args.timings) for r in results]
    fields = list(verifier.RECORD_FIELDS)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            _emit(records, fields, args.format, handle)
    else:
        _emit(records, fields, args.format, sys.stdout)

    violations = [v for r in results for v in r.violations]
    for violation in violations:
        print(f"violation: {violation}", file=sys.stderr)
    equal = sum(1 for r in results if r.report.equality)
    print(f"checked {len(results)} groups: {equal} equality, "
          f"{len(results) - equal} strict, {len(violations)} violations",
          file=sys.stderr)
    return 1 if violations else 0


# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zmsum",
        description="Subgroup-sum function S(G) on small finite groups and "
                    "the ZM(m,n,r) subgroup lattice, with a brute-force verifier.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-params", help="check the ZM triple conditions for (m, n, r)")
    p.add_argument("m", type=_positive_int)
    p.add_argument("n", type=_positive_int)
    p.add_argument("r", type=int)
    p.set_defaults(func=cmd_check_params)

    p = sub.add_parser("lattice", help="list the subgroup lattice of ZM(m, n, r) by triples")
    p.add_argument("m", type=_positive_int)
    p.add_argument("n", type=_positive_int)
    p.add_argument("r", type=int)
    p.add_argument("--format", choices=("table", "jsonl", "csv"), default="table")
    p.add_argument("--elements", action="store_true", help="include member normal forms")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("sfun", help="compute S(G) for a group descriptor, e.g. zm:3,2,2 "
                                    "or product:(cyclic:2)x(cyclic:2)")
    p.add_argument("descriptor")
    p.add_argument("--subgroups", action="store_true", help="list every subgroup with its phi")
    p.add_argument("--format", choices=("table", "jsonl", "csv"), default="table")
    p.set_defaults(func=cmd_sfun)

    p = sub.add_parser("verify", help="run the theorem checks over the default corpus")
    p.add_argument("--max-order", type=_positive_int, default=64)
    p.add_argument("--families", help="comma-separated subset of: " + ",".join(verifier.FAMILIES))
    p.add_argument("--format", choices=("table", "jsonl", "csv"), default="table")
    p.add_argument("--parallel", action="store_true", help="evaluate corpus entries in parallel")
    p.add_argument("--out", help="write the report stream to this path instead of stdout")
    p.add_argument("--timings", action="store_true",
                   help="emit real elapsed ms (breaks byte-for-byte reproducibility)")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except BrokenPipeError:
        # downstream consumer (e.g. head) closed the stream; not our failure
        sys.stderr.close()
        return 0


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
