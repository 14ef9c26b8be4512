"""Command-line entry point.

Exit codes: 0 ok, 1 valid input with a negative answer, 2 invalid input or
usage, 3 capacity exceeded, 4 internal invariant failure.  With
``--format json`` stdout carries exactly one JSON document; diagnostics go to
stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

from .errors import CapacityError, InternalInvariantError, SchemeMinorError
from .graphio import graph_to_dict, parse_graph

EXIT_OK, EXIT_NEGATIVE, EXIT_INVALID, EXIT_CAPACITY, EXIT_INTERNAL = 0, 1, 2, 3, 4
_STATUS_EXIT = {"ok": EXIT_OK, "invalid-input": EXIT_INVALID, "capacity": EXIT_CAPACITY, "internal": EXIT_INTERNAL}


@dataclass
class CommandResult:
    status: str  # ok | invalid-input | capacity | internal
    payload: Optional[dict] = None
    diagnostics: list = field(default_factory=list)  # (severity, message)
    negative: bool = False  # a well-formed "no" answer
    text: Optional[str] = None  # human-readable rendering for --format text

    @property
    def exit_code(self) -> int:
        if self.status == "ok" and self.negative:
            return EXIT_NEGATIVE
        return _STATUS_EXIT[self.status]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.format_usage().strip()}\n{self.prog}: {message}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_graph(path: str, fmt: str):
    text = _read(path)
    if fmt == "auto":
        fmt = "graph6" if path.endswith((".g6", ".graph6")) or not text.lstrip().startswith("{") else "edge-json"
    return parse_graph(text, fmt)


def _load_json(path: str):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _parse_roots(text: str, n: int) -> list:
    """Roots as a comma list, an inline JSON list/object, or a JSON file."""
    if os.path.isfile(text):
        data = _load_json(text)
    elif text.lstrip().startswith(("{", "[")):
        data = json.loads(text)
    else:
        data = [int(x) for x in text.split(",") if x.strip()]
    if isinstance(data, dict):
        return [int(data[str(v)]) for v in range(n)]
    return [int(x) for x in data]


# -- subcommands ------------------------------------------------------------------------

def _scheme_validate(args) -> CommandResult:
    from .scheme import ColoredScheme, HScheme, validate_colored_scheme, validate_hscheme

    data = _load_json(args.scheme)
    if "colors" in data:
        rep = validate_colored_scheme(ColoredScheme.from_dict(data))
        kind = "colored"
    else:
        rep = validate_hscheme(HScheme.from_dict(data))
        kind = "hscheme"
    if rep.info.get("implementation_bug"):
        return CommandResult("internal", None, [("error", "derived property failed on a valid scheme")])
    payload = {"kind": kind, **rep.to_dict()}
    text = f"{kind}: {'valid' if rep.valid else 'invalid'}" + "".join(
        f"\n  [{v.clause}] {v.message}" for v in rep.violations
    )
    return CommandResult("ok", payload, negative=not rep.valid, text=text)


def _scheme_normalize(args) -> CommandResult:
    from .scheme import HScheme, normalize_scheme

    data = _load_json(args.scheme)
    res = normalize_scheme(HScheme.from_dict(data))
    payload = res.to_dict()
    host = res.colored.scheme.host
    text = f"normalized host: {host.n} vertices, {host.m} edges after {len(res.trace)} operations"
    return CommandResult("ok", payload, text=text)


def _minor_find(args) -> CommandResult:
    from .minors import SearchStats, find_minor, find_rooted_minor

    g = _load_graph(args.host, args.input_format)
    h = _load_graph(args.pattern, args.input_format)
    stats = SearchStats()
    if args.rooted or args.roots:
        if not args.roots:
            raise ValueError("--rooted needs --roots")
        roots = _parse_roots(args.roots, h.n)
        model = find_rooted_minor(g, h, roots, cap=args.max_host_vertices, stats=stats)
    else:
        model = find_minor(g, h, cap=args.max_host_vertices, stats=stats)
    if model is None:
        return CommandResult("ok", {"result": "none", "stats": stats.to_dict()}, negative=True, text="no minor")
    payload = {"result": "found", "model": model.to_dict(), "stats": stats.to_dict()}
    text = "minor found: " + ", ".join(f"{v}:{sorted(s)}" for v, s in enumerate(model.branch_sets))
    return CommandResult("ok", payload, text=text)


def _mprime_build(args) -> CommandResult:
    from .mprime import build_mprime

    h = _load_graph(args.graph, args.input_format)
    mp = build_mprime(h)
    payload = {"graph": graph_to_dict(mp.graph), "roots": list(mp.roots), "standard_scheme": mp.standard_scheme().to_dict()}
    return CommandResult("ok", payload, text=f"M'(H): {mp.graph.n} vertices, {mp.graph.m} edges")


def _mprime_decide(args) -> CommandResult:
    from .mprime import decide_mprime_contractible, verify_certificate

    h = _load_graph(args.graph, args.input_format)
    dec = decide_mprime_contractible(h, args.max_host_vertices)
    problems = verify_certificate(h, dec.certificate, args.max_host_vertices)
    if problems:
        raise InternalInvariantError("certificate failed verification: " + "; ".join(problems))
    payload = dec.to_dict()
    text = f"M'-contractible: {str(dec.contractible).lower()} ({dec.certificate.kind})"
    return CommandResult("ok", payload, negative=not dec.contractible, text=text)


def _mprime_witness(args) -> CommandResult:
    from .mprime import build_induced_model, find_inducing_stable_set

    h = _load_graph(args.graph, args.input_format)
    stats: dict = {}
    wit = find_inducing_stable_set(h, stats=stats)
    if wit is None:
        return CommandResult("ok", {"result": "none", "stats": stats}, negative=True, text="no inducing stable set")
    model = build_induced_model(h, wit)
    payload = {
        "result": "found",
        "witness": wit.to_dict(),
        "branch_sets": {str(v): sorted(s) for v, s in enumerate(model.branch_sets)},
        "stats": stats,
    }
    return CommandResult("ok", payload, text=f"inducing stable set S={list(wit.stable_set)}")


def _classify(args) -> CommandResult:
    from .classifier import classify

    h = _load_graph(args.graph, args.input_format)
    v = classify(h, args.effort, max_host_vertices=args.max_host_vertices, cycle_cap=args.cycle_cap)
    diags = [("warning", "deep search incomplete; verdict is fast-mode only")] if v.partial else []
    text = f"{v.status}" + (f" [{v.rule}] {v.citation}" if v.rule else "")
    text += "".join(f"\n  note: {a}" for a in v.annotations)
    return CommandResult("ok", v.to_dict(), diags, text=text)


def _atlas_verify(args) -> CommandResult:
    from .atlas import verify_atlas_claims

    rep = verify_atlas_claims(
        args.max_n, n_min=args.min_n, bipartite_only=args.bipartite_only, effort=args.effort,
        workers=args.workers, timings=args.timings,
    )
    diags = []
    if args.out:
        summary_path = rep.write(args.out)
        diags.append(("info", f"wrote {len(rep.records)} records to {args.out} and summary to {summary_path}"))
    payload = dict(rep.summary)
    payload["failures"] = rep.failures
    text = f"{len(rep.records)} graphs, {len(rep.failures)} failures"
    return CommandResult("ok", payload, diags, negative=bool(rep.failures), text=text)


def build_parser() -> argparse.ArgumentParser:
    from .classifier import CYCLE_CAP
    from .minors import MAX_HOST_VERTICES

    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--input-format", choices=("auto", "edge-json", "graph6"), default="auto")
    common.add_argument("--max-host-vertices", type=int, default=MAX_HOST_VERTICES)
    common.add_argument("--cycle-cap", type=int, default=CYCLE_CAP)

    p = _Parser(prog="scheme-minor", description="Schemes, rooted minors and M'(H) decisions for small graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sch = sub.add_parser("scheme").add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name, fn in (("validate", _scheme_validate), ("normalize", _scheme_normalize)):
        q = sch.add_parser(name, parents=[common])
        q.add_argument("--scheme", required=True, help="scheme JSON file")
        q.set_defaults(func=fn)

    mn = sub.add_parser("minor").add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = mn.add_parser("find", parents=[common])
    q.add_argument("--host", required=True)
    q.add_argument("--pattern", required=True)
    q.add_argument("--rooted", action="store_true")
    q.add_argument("--roots", help="comma list, JSON list/object, or JSON file")
    q.set_defaults(func=_minor_find)

    mp = sub.add_parser("mprime").add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name, fn in (("build", _mprime_build), ("decide", _mprime_decide), ("witness", _mprime_witness)):
        q = mp.add_parser(name, parents=[common])
        q.add_argument("--graph", required=True)
        q.set_defaults(func=fn)

    q = sub.add_parser("classify", parents=[common])
    q.add_argument("--graph", required=True)
    q.add_argument("--effort", choices=("fast", "deep"), default="fast")
    q.set_defaults(func=_classify)

    at = sub.add_parser("atlas").add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = at.add_parser("verify", parents=[common])
    q.add_argument("--max-n", type=int, required=True)
    q.add_argument("--min-n", type=int, default=1)
    q.add_argument("--out")
    q.add_argument("--bipartite-only", action="store_true")
    q.add_argument("--effort", choices=("fast", "deep"), default="deep")
    q.add_argument("--workers", type=int, help="default: SCHEME_MINOR_THREADS or CPU count")
    q.add_argument("--timings", action="store_true", help="record wall-clock timings (output no longer reproducible)")
    q.set_defaults(func=_atlas_verify)
    return p


def run(argv: Optional[list] = None) -> CommandResult:
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        return CommandResult("invalid-input", None, [("error", str(exc))])
    try:
        return args.func(args)
    except CapacityError as exc:
        return CommandResult("capacity", None, [("error", str(exc))])
    except InternalInvariantError as exc:
        return CommandResult("internal", None, [("error", str(exc))])
    except (SchemeMinorError, ValueError, KeyError, TypeError, OSError) as exc:
        msg = f"missing field {exc}" if isinstance(exc, KeyError) else str(exc)
        return CommandResult("invalid-input", None, [("error", msg)])


def _wants_text(argv: list) -> bool:
    return "--format" in argv and argv[argv.index("--format") + 1 : argv.index("--format") + 2] == ["text"]


def main(argv: Optional[list] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    if argv in ([], ["-h"], ["--help"]):
        build_parser().print_help(sys.stdout if argv else sys.stderr)
        return EXIT_OK if argv else EXIT_INVALID
    res = run(argv)
    for severity, message in res.diagnostics:
        print(f"{severity}: {message}", file=sys.stderr)
    if res.payload is not None:
        if _wants_text(argv) and res.text is not None:
            print(res.text)
        else:
            print(json.dumps(res.payload, sort_keys=True))
    return res.exit_code


__all__ = ["CommandResult", "run", "main", "build_parser"]
