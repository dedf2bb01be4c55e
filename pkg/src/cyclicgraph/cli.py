"""Command line entry point.

Exit status: 0 on success, 1 on bad input or construction errors, 2 when a
scan or verification finds a group below Z_n or a bijection is infeasible.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import harness
from .groups import DEFAULT_CLOSURE_BOUND, GroupError, construct_family, parse_spec

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_DISCOVERY = 2


class _Output:
    def __init__(self, path: str | None):
        self.path = path
        self.chunks: list[str] = []

    def write(self, text: str) -> None:
        self.chunks.append(text)

    def line(self, text: str = "") -> None:
        self.chunks.append(text + "\n")

    def flush(self) -> None:
        data = "".join(self.chunks)
        if self.path:
            Path(self.path).write_text(data, encoding="utf-8")
        else:
            sys.stdout.write(data)


def _build(args, text: str):
    spec = parse_spec(text)
    G = construct_family(spec, closure_bound=args.closure_bound, check_associativity=not args.skip_assoc_check)
    return G, spec.label


def _cmd_report(args, out: _Output) -> int:
    G, label = _build(args, args.spec)
    rep = harness.group_report(G, label)
    out.line(f"group:            {rep.label}")
    out.line(f"order:            {rep.order}")
    out.line(f"order histogram:  {harness.histogram_digest(rep.histogram)}")
    out.line(f"cyclic subgroups: {rep.cyclic_subgroups}")
    out.line(f"edges (hasse):    {rep.edges_hasse}")
    out.line(f"edges (formula):  {rep.edges_formula}")
    out.line(f"edges of Z_{rep.order}:     {rep.cyclic_edges}")
    out.line(f"agreement:        {str(rep.agreement).lower()}")
    return EXIT_OK


def _print_theorem(rep: harness.TheoremReport, out: _Output) -> None:
    status = "complete" if rep.complete else "INCOMPLETE catalog"
    out.line(f"order {rep.order} ({status}); Z_{rep.order} has {rep.cyclic_edges} edges")
    width = max(len(r.label) for r in rep.rows)
    for r in rep.rows:
        tags = [t for t, on in (("cyclic", r.cyclic), ("nilpotent", r.nilpotent)) if on]
        out.line(f"  {r.label:<{width}}  {r.edges:>5}  [{r.histogram}] {' '.join(tags)}".rstrip())
    out.line(f"minimum {rep.min_edges} attained by: {', '.join(rep.witnesses)}")
    out.line(f"verdict: {rep.verdict.value}")
    if rep.violations:
        out.line(f"THEOREM VIOLATION: {', '.join(rep.violations)}")


def _cmd_verify(args, out: _Output) -> int:
    rep = harness.verify_theorem(args.n)
    _print_theorem(rep, out)
    return EXIT_DISCOVERY if rep.alarming else EXIT_OK


def _parity(args) -> str | None:
    if args.odd_only:
        return "odd"
    if args.even_only:
        return "even"
    return None


def _cmd_scan(args, out: _Output) -> int:
    findings = harness.scan(args.max, _parity(args))
    alarm = False
    for f in findings:
        note = "" if f.complete else "  (incomplete catalog)"
        wit = f"  non-cyclic at minimum: {', '.join(f.witnesses)}" if f.witnesses else ""
        out.line(f"n={f.order:<4} Z_n={f.cyclic_edges:<4} min={f.min_edges:<4} {f.verdict.value}{wit}{note}")
        if f.violations:
            out.line(f"       THEOREM VIOLATION: {', '.join(f.violations)}")
        alarm |= f.verdict is harness.Verdict.MINIMUM_BELOW_CYCLIC or bool(f.violations)
    summary = harness.scan_summary(findings)
    out.line("summary: " + ", ".join(f"{k}={v}" for k, v in summary.items()))
    return EXIT_DISCOVERY if alarm else EXIT_OK


def _cmd_dot(args, out: _Output) -> int:
    G, label = _build(args, args.spec)
    out.write(harness.dot_text(G, label))
    return EXIT_OK


def _cmd_bijection(args, out: _Output) -> int:
    G, label = _build(args, args.spec)
    res = harness.bijection_result(G, label)
    out.line(f"group {res.label} of order {res.order} -> Z_{res.order}")
    if not res.feasible:
        cert = res.result
        out.line(
            f"INFEASIBLE: orders {list(cert.orders)} need {cert.demand} slots, admissible capacity {cert.capacity}"
        )
        return EXIT_DISCOVERY
    out.line("class flow (order in G -> order in Z_n: count):")
    for (d, d2), amount in sorted(res.result.flow.items()):
        out.line(f"  {d} -> {d2}: {amount}")
    out.line("element mapping (element -> residue):")
    for a, r in enumerate(res.result.mapping):
        out.line(f"  {a} -> {r}")
    out.line(f"verified: {str(res.valid).lower()}" + (f" ({res.reason})" if res.reason else ""))
    return EXIT_OK if res.valid else EXIT_DISCOVERY


def _cmd_json(args, out: _Output) -> int:
    try:
        if args.scan:
            findings = harness.scan(args.max, _parity(args))
            doc = [f.to_dict() for f in findings]
            code = EXIT_DISCOVERY if any(f.verdict is harness.Verdict.MINIMUM_BELOW_CYCLIC or f.violations for f in findings) else EXIT_OK
        elif args.verify is not None:
            rep = harness.verify_theorem(args.verify)
            doc = rep.to_dict()
            code = EXIT_DISCOVERY if rep.alarming else EXIT_OK
        elif args.spec is not None:
            G, label = _build(args, args.spec)
            doc = harness.group_report(G, label).to_dict()
            code = EXIT_OK
        else:
            raise GroupError("json needs a group spec, --scan or --verify N")
    except (GroupError, OSError) as exc:
        doc = {"error": str(exc), "type": type(exc).__name__}
        code = EXIT_DOMAIN
    out.write(json.dumps(doc, sort_keys=True, ensure_ascii=False) + "\n")
    return code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", metavar="PATH", help="write output to PATH instead of stdout")
    common.add_argument("--skip-assoc-check", action="store_true", help="trust Cayley files to be associative")
    common.add_argument("--closure-bound", type=int, default=DEFAULT_CLOSURE_BOUND, metavar="B", help="largest group order to build")

    parity = argparse.ArgumentParser(add_help=False)
    g = parity.add_mutually_exclusive_group()
    g.add_argument("--odd-only", action="store_true")
    g.add_argument("--even-only", action="store_true")

    p = argparse.ArgumentParser(prog="cyclicgraph", description="Cyclic subgroup graphs of finite groups.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("report", parents=[common], help="edge counts for one group")
    sp.add_argument("spec")
    sp.set_defaults(func=_cmd_report)

    sp = sub.add_parser("verify", parents=[common], help="compare all catalog groups of order N with Z_N")
    sp.add_argument("n", type=int)
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("scan", parents=[common, parity], help="verify every order up to --max")
    sp.add_argument("--max", type=int, default=15, metavar="N")
    sp.set_defaults(func=_cmd_scan)

    sp = sub.add_parser("dot", parents=[common], help="DOT text of the cyclic subgroup graph")
    sp.add_argument("spec")
    sp.set_defaults(func=_cmd_dot)

    sp = sub.add_parser("bijection", parents=[common], help="order-divisibility bijection onto Z_n")
    sp.add_argument("spec")
    sp.set_defaults(func=_cmd_bijection)

    sp = sub.add_parser("json", parents=[common, parity], help="JSON for a report, verification or scan")
    sp.add_argument("spec", nargs="?")
    sp.add_argument("--scan", action="store_true", help="scan orders 1..--max")
    sp.add_argument("--verify", type=int, metavar="N", help="verify order N")
    sp.add_argument("--max", type=int, default=15, metavar="N")
    sp.set_defaults(func=_cmd_json)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = _Output(args.output)
    try:
        code = args.func(args, out)
    except (GroupError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
