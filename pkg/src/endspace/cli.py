"""Command-line front end: ``endspace {parse,normalize,rank,order,classify,corpus}``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from importlib import resources
from pathlib import Path

from . import __version__
from .classify import Verdict, classify, is_telescoping
from .normalize import NotCountable, ms_invariant, normalize
from .oracle import derivative_fingerprint
from .order import classes, is_tame
from .parser import ParseError, ValidityError, parse_any, print_surface, print_term, to_dict
from .terms import ScopeError, Surface, TermError

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_SCOPE, EXIT_USAGE = 0, 1, 2, 3, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="endspace", description="Classify mapping class groups of infinite-type surfaces.")
    p.add_argument("--version", action="version", version=f"endspace {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--depth", type=int, default=8, help="derivative fingerprint depth")
    common.add_argument("--explain", action="store_true", help="print the full rule trace")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_ in [
        ("parse", "parse and validate a term or surface"),
        ("normalize", "print the canonical form"),
        ("rank", "Mazurkiewicz-Sierpinski invariant of a countable end space"),
        ("order", "end classes as a DOT digraph"),
        ("classify", "locally CB / CB generated / globally CB verdicts"),
    ]:
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.add_argument("input", help="DSL text, or @path to read it from a file")
    sp = sub.add_parser("corpus", help="run the bundled fixtures against their goldens", parents=[common])
    sp.add_argument("--fixtures", type=Path, default=None, help="directory of .surf fixtures")
    return p


def _read(arg: str) -> str:
    if arg.startswith("@"):
        return Path(arg[1:]).read_text()
    return arg


def _ends(x):
    return x.ends if isinstance(x, Surface) else x


def _show(x) -> str:
    return print_surface(x) if isinstance(x, Surface) else print_term(x)


# payloads


def verdict_payload(v: Verdict, telescoping: str) -> dict:
    w = v.witness
    return {
        "verdicts": {
            "locally_cb": v.locally_cb,
            "cb_generated": v.cb_generated,
            "globally_cb": v.globally_cb,
            "telescoping": telescoping,
        },
        "summary": trichotomy(v),
        "reasons": dict(v.reasons),
        "explanation": [
            {"rule": s.rule, "citation": s.citation, "detail": s.detail, "result": s.result} for s in v.explanation
        ],
        "witness": None
        if w is None
        else {
            "k_genus": w.k_genus,
            "k_boundary_count": w.k_boundary_count,
            "k_punctures": w.k_punctures,
            "A": [print_term(a) for a in w.A],
            "P": [{"piece": print_term(p), "absorbed_by": i} for p, i in w.P],
        },
        "certificates": [_cert_payload(c) for c in v.certificates],
    }


def _cert_payload(c) -> dict:
    out = {"kind": c.kind}
    for k, val in vars(c).items():
        out[k] = list(val) if isinstance(val, tuple) else val
    if out.get("genus") == float("inf"):
        out["genus"] = "inf"
    return out


def trichotomy(v: Verdict) -> str:
    if v.globally_cb == "yes":
        return "globally CB"
    if v.cb_generated == "yes":
        return "CB generated, not globally CB" if v.globally_cb == "no" else "CB generated"
    if v.locally_cb == "yes":
        return "locally CB, not CB generated" if v.cb_generated == "no" else "locally CB"
    if v.locally_cb == "no":
        return "not locally CB"
    return "undecided"


def order_payload(t) -> dict:
    poset = classes(t)
    return {
        "classes": [
            {
                "id": c.id,
                "label": c.label,
                "germ": print_term(c.germ),
                "locus": list(c.locus),
                "cardinality": c.cardinality,
                "parametric": c.parametric,
            }
            for c in poset
        ],
        "covers": [[a.id, b.id] for a, b in poset.covers()],
        "maximal": [c.id for c in poset.maximal()],
        "tame": is_tame(t),
    }


# commands


def _cmd_parse(x, args) -> tuple[dict, str]:
    return {"canonical": _show(x), "tree": to_dict(x)}, _show(x)


def _cmd_normalize(x, args):
    if isinstance(x, Surface):
        out = print_surface(Surface(x.genus, normalize(x.ends)))
    else:
        out = print_term(normalize(x))
    return {"normal_form": out}, out


def _cmd_rank(x, args):
    t = _ends(x)
    inv = ms_invariant(t)
    fp = derivative_fingerprint(t, args.depth)
    payload = {
        "alpha": str(inv.alpha),
        "n": inv.n,
        "genus_profile": str(inv.genus_profile),
        "fingerprint": [[[f, c] for f, c in step] for step in fp],
    }
    return payload, f"alpha={inv.alpha} n={inv.n} genus={inv.genus_profile}"


def _cmd_order(x, args):
    t = _ends(x)
    return order_payload(t), classes(t).to_dot()


def _cmd_classify(x, args):
    if not isinstance(x, Surface):
        raise UsageError("classify needs a surface: surface genus=<g> ends=<term>")
    v = classify(x)
    payload = verdict_payload(v, is_telescoping(x))
    lines = [
        _show(x),
        f"  {trichotomy(v)}",
        f"  locally CB:   {v.locally_cb}",
        f"  CB generated: {v.cb_generated}",
        f"  globally CB:  {v.globally_cb}",
    ]
    for field, why in v.reasons:
        lines.append(f"  unknown {field}: {why}")
    if v.witness is not None:
        w = v.witness
        lines.append(f"  K: genus {w.k_genus}, {w.k_boundary_count} boundary components, {w.k_punctures} punctures")
    for c in v.certificates:
        lines.append(f"  certificate {c.kind}: {c.describe()}")
    lines.append("  trace:")
    for s in v.explanation:
        if args.explain:
            lines.append(f"    [{s.rule}] {s.result}: {s.detail} ({s.citation})")
        else:
            lines.append(f"    [{s.rule}] {s.result}")
    return payload, "\n".join(lines)


COMMANDS = {
    "parse": _cmd_parse,
    "normalize": _cmd_normalize,
    "rank": _cmd_rank,
    "order": _cmd_order,
    "classify": _cmd_classify,
}


def fixtures_dir() -> Path:
    return Path(str(resources.files("endspace") / "fixtures"))


def run_corpus(directory: Path | None, out) -> tuple[int, list]:
    directory = directory or fixtures_dir()
    failures = []
    files = sorted(directory.glob("*.surf"))
    for path in files:
        golden = json.loads(path.with_suffix(".expected.json").read_text())
        s = parse_any(path.read_text())
        got = verdict_payload(classify(s), is_telescoping(s))
        diffs = compare_golden(golden, got)
        status = "PASS" if not diffs else "FAIL"
        print(f"{status} {path.stem}", file=out)
        for d in diffs:
            print(f"    {d}", file=out)
        if diffs:
            failures.append(path.stem)
    print(f"{len(files) - len(failures)}/{len(files)} fixtures match", file=out)
    return (EXIT_MISMATCH if failures else EXIT_OK), failures


def compare_golden(golden: dict, got: dict) -> list:
    diffs = []
    for k, want in golden.get("verdicts", {}).items():
        if got["verdicts"].get(k) != want:
            diffs.append(f"{k}: expected {want}, got {got['verdicts'].get(k)}")
    if "certificates" in golden:
        kinds = sorted(c["kind"] for c in got["certificates"])
        if kinds != sorted(golden["certificates"]):
            diffs.append(f"certificates: expected {sorted(golden['certificates'])}, got {kinds}")
    for k, want in golden.get("witness", {}).items():
        have = (got["witness"] or {}).get(k)
        if have != want:
            diffs.append(f"witness.{k}: expected {want}, got {have}")
    return diffs


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    started = time.perf_counter()
    try:
        if args.command == "corpus":
            code, _ = run_corpus(args.fixtures, out)
            return code
        text = _read(args.input)
        x = parse_any(text)
        payload, rendered = COMMANDS[args.command](x, args)
    except ParseError as e:
        print(f"parse error at line {e.line}, column {e.col}: {e.message}", file=err)
        return EXIT_INVALID
    except ValidityError as e:
        for (path, msg), span in zip(e.violations, e.spans):
            where = f" (offset {span.start})" if span is not None else ""
            print(f"invalid: {path}: {msg}{where}", file=err)
        return EXIT_INVALID
    except TermError as e:
        for path, msg in e.violations:
            print(f"invalid: {path}: {msg}", file=err)
        return EXIT_INVALID
    except (ScopeError, NotCountable) as e:
        print(f"out of scope: {e}", file=err)
        return EXIT_SCOPE
    except UsageError as e:
        print(f"usage: {e}", file=err)
        return EXIT_USAGE
    except OSError as e:
        print(f"cannot read input: {e}", file=err)
        return EXIT_USAGE
    if args.format == "structured":
        report = {"tool": "endspace", "version": __version__, "command": args.command, "input": text.strip(),
                  "result": payload}
        print(json.dumps(report, indent=2, sort_keys=True), file=out)
    else:
        print(rendered, file=out)
    # timing stays off stdout so reports diff cleanly
    print(f"# {args.command} took {time.perf_counter() - started:.3f}s", file=err)
    return EXIT_OK


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
