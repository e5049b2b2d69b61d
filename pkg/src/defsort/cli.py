"""Command-line front end: sort, check, order and dot commands.

All behaviour lives in the library modules; this file only dispatches,
resolves configuration (defaults, then a properties file, then DEFSORT_*
environment variables, then flags) and formats the trace output.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field

from .defcollect import collect
from .depgraph import build_graph
from .diag import CycleError, Diagnostic, DuplicateNameError, Loc, ParseError, UnknownNameError
from .dotviz import emit_def_dot, emit_module_dot
from .freevars import check_duplicate_binds, check_init_cycles, check_precondition_calls
from .modorder import build_module_graph, order_modules
from .reorder import sort_module
from .syntax import parse_source, print_module

BANNER = "Calling Exu VDM analyser..."

DEFAULT_PROPERTIES_FILE = "./defsort.properties"

DEFAULTS = {
    "output.dir": "./.generated/sorted",
    "dot.dir": ".",
    "dot.enabled": "false",
    "debug": "false",
    "check": "false",
}

_ANALYSIS_ERRORS = (ParseError, DuplicateNameError, UnknownNameError, CycleError)


@dataclass
class ToolConfig:
    output_dir: str = DEFAULTS["output.dir"]
    dot_dir: str = DEFAULTS["dot.dir"]
    dot_enabled: bool = False
    debug: bool = False
    check_only: bool = False
    properties: dict = field(default_factory=dict)


def load_properties(path: str):
    """Parse a key=value properties file into (map, warnings).

    `#` starts a comment, blank lines are skipped, a later key overrides an
    earlier one, and a line without `=` is skipped with a warning.
    """
    props: dict = {}
    warnings: list = []
    if not os.path.exists(path):
        return props, warnings
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                warnings.append(Diagnostic(
                    "warning", "bad-property",
                    f"malformed property line {line!r}", Loc(lineno, 1, path),
                ))
                continue
            key, _, value = line.partition("=")
            props[key.strip()] = value.strip()
    return props, warnings


def _truthy(value) -> bool:
    return str(value).strip().lower() in ("1", "true", "yes", "on")


def resolve_config(args):
    """Defaults < properties file < DEFSORT_* environment < flags."""
    props = dict(DEFAULTS)
    path = args.properties or DEFAULT_PROPERTIES_FILE
    file_props, warnings = load_properties(path)
    props.update(file_props)
    for key, value in os.environ.items():
        if key.startswith("DEFSORT_"):
            props[key[len("DEFSORT_"):].lower().replace("_", ".")] = value
    if args.output:
        props["output.dir"] = args.output
    if args.dot:
        props["dot.dir"] = args.dot
        props["dot.enabled"] = "true"
    if args.debug:
        props["debug"] = "true"
    if args.check:
        props["check"] = "true"
    cfg = ToolConfig(
        output_dir=props["output.dir"],
        dot_dir=props["dot.dir"],
        dot_enabled=_truthy(props["dot.enabled"]),
        debug=_truthy(props["debug"]),
        check_only=_truthy(props["check"]),
        properties=props,
    )
    return cfg, warnings


def _write_atomic(path: str, text: str):
    parent = os.path.dirname(path) or "."
    os.makedirs(parent, exist_ok=True)
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as f:
        f.write(text)
    os.replace(tmp, path)


def _parse_files(paths):
    """-> (list of (path, modules), error count); errors are printed."""
    parsed: list = []
    errors = 0
    for path in paths:
        try:
            with open(path, encoding="utf-8") as f:
                text = f.read()
            parsed.append((path, parse_source(text, path)))
        except OSError as exc:
            print(f"{path}: error: {exc.strerror or exc}", file=sys.stderr)
            errors += 1
        except _ANALYSIS_ERRORS as exc:
            print(str(exc), file=sys.stderr)
            errors += 1
    return parsed, errors


def _dot_path(cfg: ToolConfig, module_name: str) -> str:
    return os.path.join(cfg.dot_dir, f"{module_name}.dot")


def _emit_module_dot_file(cfg: ToolConfig, m) -> str:
    """Write one module's definition graph; returns the file path."""
    fm = collect(m)
    g = build_graph(fm)
    _, report = sort_module(m)
    path = _dot_path(cfg, m.name)
    _write_atomic(path, emit_def_dot(g, report))
    return path


def _trace_lines(report, dot_path=None) -> list:
    lines = [f"Calculating declaration dependencies for module `{report.module_name}`..."]
    if dot_path is not None:
        lines.append(f"Printed dependencies for module {report.module_name}.dot at {dot_path}")
    for ref in report.forward_refs:
        lines.append(ref.message)
    n = len(report.forward_refs)
    if report.sorted:
        lines.append(f"Found {n} definition use before declaration. Topological sorted required.")
        for label, names in (
            ("Original names", report.original_names),
            ("Start points", report.start_points),
            ("Sorted names", report.sorted_names),
            ("Organised names", report.organised_names),
        ):
            lines.append(f"{label:<15}: {', '.join(names)}")
        lines.append(f"Exu successfully sorted module {report.module_name} definitions")
    else:
        lines.append(f"Found {n} definition use before declaration. Topological sort not required.")
        lines.append(f"Exu module {report.module_name} definitions already sorted")
    return lines


def _status_line(report) -> str:
    if report.sorted:
        return f"Exu successfully sorted module {report.module_name} definitions"
    return f"Exu module {report.module_name} definitions already sorted"


def _cmd_sort(cfg: ToolConfig, paths) -> int:
    parsed, errors = _parse_files(paths)
    for path, mods in parsed:
        texts: list = []
        any_sorted = False
        for m in mods:
            try:
                out, report = sort_module(m)
            except _ANALYSIS_ERRORS as exc:
                print(str(exc), file=sys.stderr)
                errors += 1
                texts = []
                break
            dot_path = None
            if cfg.dot_enabled:
                dot_path = _emit_module_dot_file(cfg, m)
            if cfg.debug:
                for line in _trace_lines(report, dot_path):
                    print(line)
            else:
                print(_status_line(report))
            any_sorted = any_sorted or report.sorted
            texts.append(print_module(out))
        if texts and any_sorted and not cfg.check_only:
            _write_atomic(os.path.join(cfg.output_dir, os.path.basename(path)), "\n".join(texts))
    return 1 if errors else 0


def _module_diagnostics(m, fm) -> list:
    diags = check_duplicate_binds(m) + check_init_cycles(fm) + check_precondition_calls(m, fm)
    diags.sort(key=lambda d: (d.at.line, d.at.col, d.code))
    return diags


def _cmd_check(cfg: ToolConfig, paths) -> int:
    parsed, errors = _parse_files(paths)
    for path, mods in parsed:
        for m in mods:
            try:
                fm = collect(m)
                diags = _module_diagnostics(m, fm)
                if cfg.debug:
                    _, report = sort_module(m)
                    for line in _trace_lines(report):
                        print(line)
            except _ANALYSIS_ERRORS as exc:
                print(str(exc), file=sys.stderr)
                errors += 1
                continue
            for d in diags:
                print(str(d))
            errors += sum(1 for d in diags if d.severity == "error")
    return 1 if errors else 0


def _cmd_order(cfg: ToolConfig, paths) -> int:
    parsed, errors = _parse_files(paths)
    if errors:
        return 1
    mods = [m for _, file_mods in parsed for m in file_mods]
    ordered, _, warnings = order_modules(mods)
    for w in warnings:
        print(str(w), file=sys.stderr)
    for name in ordered:
        print(name)
    return 0


def _cmd_dot(cfg: ToolConfig, paths) -> int:
    parsed, errors = _parse_files(paths)
    mods = [m for _, file_mods in parsed for m in file_mods]
    for m in mods:
        try:
            path = _emit_module_dot_file(cfg, m)
        except _ANALYSIS_ERRORS as exc:
            print(str(exc), file=sys.stderr)
            errors += 1
            continue
        print(f"Printed dependencies for module {m.name}.dot at {path}")
    if mods:
        mg, warnings = build_module_graph(mods)
        for w in warnings:
            print(str(w), file=sys.stderr)
        path = os.path.join(cfg.dot_dir, "modules.dot")
        _write_atomic(path, emit_module_dot(mg))
        print(f"Printed module imports at {path}")
    return 1 if errors else 0


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="defsort",
        description="Analyse and rewrite VDM-SL modules so definitions precede their uses.",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    for name, text in (
        ("sort", "rewrite modules in dependency order"),
        ("check", "report diagnostics without writing anything"),
        ("order", "print the inter-module load order"),
        ("dot", "write dependency graphs as dot files"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("files", nargs="+", help="input .vdmsl files")
        p.add_argument("--debug", action="store_true", help="print the analysis trace")
        p.add_argument("--dot", metavar="DIR", help="also write dot files into DIR")
        p.add_argument("--output", metavar="DIR", help="directory for rewritten modules")
        p.add_argument("--check", action="store_true", help="analyse only, write nothing")
        p.add_argument("--properties", metavar="FILE", help="properties file to load")
    return ap


def run(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    cfg, warnings = resolve_config(args)
    for w in warnings:
        print(str(w), file=sys.stderr)
    if cfg.debug:
        print(BANNER)
    command = {
        "sort": _cmd_sort,
        "check": _cmd_check,
        "order": _cmd_order,
        "dot": _cmd_dot,
    }[args.command]
    return command(cfg, args.files)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
