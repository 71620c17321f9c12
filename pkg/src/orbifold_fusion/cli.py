"""Command-line front end.

Exit status: 0 on success, 1 for usage or input errors, 2 when a verification
(ring checks, acceptance fixtures) fails.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .builders import BUILDERS, BadParameter, InputDocument, UnknownBuilder, build_example, parse_input
from .fusion import fuse, fusion_table, verify_ring
from .identifiers import BadIdentifier, format_label, parse_label
from .modules import Orbifold
from .report import dumps, fusion_sum, inventory, load_orbifold, qdim_entry, setting_summary, table_document

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _source_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="FILE", help="JSON document with 'gram' and 'sigma'")
    src.add_argument("--builder", metavar="SPEC", help="one of: " + ", ".join(BUILDERS))
    p.add_argument("--labels", choices=("paper", "canonical"), default="paper")
    p.add_argument("--format", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="orbifold-fusion", description="Irreducible modules and fusion rules of Z2-orbifolds of lattice VOAs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_ in (("info", "lattice invariants"), ("classify", "label inventory"), ("table", "full fusion table")):
        _source_args(sub.add_parser(name, help=help_))
    p = sub.add_parser("qdim", help="quantum dimensions")
    _source_args(p)
    p.add_argument("--module", metavar="ID", help="a single module identifier")
    p = sub.add_parser("fuse", help="fusion product of two modules")
    _source_args(p)
    p.add_argument("a", metavar="A")
    p.add_argument("b", metavar="B")
    p = sub.add_parser("selftest", help="run the acceptance fixtures")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--only", metavar="N[,N...]", help="comma-separated criterion numbers")
    return parser


def load_document(args) -> InputDocument:
    if args.builder is not None:
        return build_example(args.builder)
    try:
        text = Path(args.input).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    return parse_input(text)


def _label(orb: Orbifold, text: str, mode: str):
    x = parse_label(orb, text, mode)
    if mode == "canonical":
        if x not in orb.class_of:
            raise UsageError(f"{text!r} is not an irreducible module of this orbifold")
        return orb.normalize(x)
    if x not in {y for fam in orb.enumerate_labels("paper").values() for y in fam}:
        raise UsageError(f"{text!r} is not a paper-mode label of this orbifold")
    return x


def _cmd_info(orb, args, out):
    doc = setting_summary(orb)
    if args.format == "json":
        return doc, EXIT_OK
    for key in sorted(doc):
        val = doc[key]
        if isinstance(val, dict):
            val = ", ".join(f"{k}={v}" for k, v in sorted(val.items()))
        elif isinstance(val, list):
            val = " ".join(map(str, val))
        out.append(f"{key}: {val}")
    return None, EXIT_OK


def _cmd_classify(orb, args, out):
    doc = inventory(orb, args.labels)
    if args.format == "json":
        return doc, EXIT_OK
    c = doc["counts"]
    out.append(f"mode: {doc['mode']}")
    out.append(f"counts: type1={c['type1']} type2={c['type2']} twisted={c['twisted']} total={doc['total']}")
    if "global_dimension" in doc:
        out.append(f"global dimension: {doc['global_dimension']}")
    for e in doc["labels"]:
        extra = f"  ({e['members']} labels)" if "members" in e else ""
        out.append(f"  {e['id']:<28} {e['qdim']}{extra}")
    return None, EXIT_OK


def _cmd_qdim(orb, args, out):
    mode = args.labels
    if args.module is not None:
        x = _label(orb, args.module, mode)
        doc = {"module": format_label(orb, x, mode), **qdim_entry(orb, x)}
        if args.format == "json":
            return doc, EXIT_OK
        out.append(doc["qdim"])
        return None, EXIT_OK
    inv = inventory(orb, mode)
    doc = {"mode": mode, "qdims": [{"module": e["id"], "qdim": e["qdim"], "square": e["square"]} for e in inv["labels"]]}
    if args.format == "json":
        return doc, EXIT_OK
    for e in doc["qdims"]:
        out.append(f"{e['module']:<28} {e['qdim']}")
    return None, EXIT_OK


def _cmd_fuse(orb, args, out):
    mode = args.labels
    a, b = _label(orb, args.a, mode), _label(orb, args.b, mode)
    s = fuse(orb, a, b, normalize=mode == "canonical")
    doc = {"a": format_label(orb, a, mode), "b": format_label(orb, b, mode), **fusion_sum(orb, s, mode)}
    if args.format == "json":
        return doc, EXIT_OK
    out.append(f"{doc['a']} x {doc['b']} = {_render_sum(doc)}")
    out.append(f"total qdim: {_render_total(doc['total_qdim'])}")
    return None, EXIT_OK


def _render_sum(doc) -> str:
    terms = [t["id"] if t["multiplicity"] == 1 else f"{t['multiplicity']}*{t['id']}" for t in doc["terms"]]
    return " + ".join(terms) if terms else "0"


def _render_total(total: dict) -> str:
    parts = []
    for s, c in total.items():
        parts.append(str(c) if s == "1" else (f"sqrt({s})" if c == 1 else f"{c}*sqrt({s})"))
    return " + ".join(parts) if parts else "0"


def _cmd_table(orb, args, out):
    table = fusion_table(orb, args.labels)
    report = verify_ring(table)
    code = EXIT_OK if report.ok else EXIT_VERIFY
    doc = table_document(table, report)
    if args.format == "json":
        return doc, code
    out.append(f"mode: {doc['mode']}, {len(doc['objects'])} objects")
    for row in doc["products"]:
        out.append(f"{row['a']} x {row['b']} = {_render_sum(row)}")
    for name, v in doc["verification"].items():
        out.append(f"check {name}: {'ok' if v['ok'] else 'FAILED ' + v['detail']}")
    return None, code


def _cmd_selftest(args, out):
    from . import acceptance

    chosen = acceptance.CRITERIA
    if args.only:
        try:
            nums = {int(t) for t in args.only.split(",")}
        except ValueError:
            raise UsageError(f"bad criterion list {args.only!r}") from None
        if not nums <= set(range(1, len(chosen) + 1)):
            raise UsageError(f"criteria are numbered 1..{len(chosen)}")
        chosen = [c for i, c in enumerate(chosen, 1) if i in nums]
    results = [c() for c in chosen]
    code = EXIT_OK if all(r.ok for r in results) else EXIT_VERIFY
    if args.format == "json":
        doc = {"criteria": [{"number": r.number, "title": r.title, "ok": r.ok,
                             "failed": [w for p, w in r.details if not p]} for r in results],
               "ok": code == EXIT_OK}
        return doc, code
    out.extend(r.line() for r in results)
    return None, code


COMMANDS = {"info": _cmd_info, "classify": _cmd_classify, "qdim": _cmd_qdim, "fuse": _cmd_fuse, "table": _cmd_table}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    out: list[str] = []
    try:
        if args.command == "selftest":
            doc, code = _cmd_selftest(args, out)
        else:
            orb = load_orbifold(load_document(args))
            doc, code = COMMANDS[args.command](orb, args, out)
    except (UsageError, UnknownBuilder, BadParameter, BadIdentifier) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: invalid input: {exc}", file=stderr)
        return EXIT_USAGE
    if doc is not None:
        stdout.write(dumps(doc))
    else:
        stdout.write("\n".join(out) + "\n")
    return code
