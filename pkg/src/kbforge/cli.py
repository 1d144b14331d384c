"""``kbforge`` command line.

Exit status is 0 on success, 1 when a validation or diff finds a mismatch and
2 for usage, I/O and parse errors.  Artifacts go to stdout, diagnostics to
stderr.  Wherever a file is expected, ``builtin:<name>`` names a shipped
asset (bds, phonetic, phonetic-bds, latin).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import golden
from .emit import RegisterPair, emit_ascii_diagram, emit_unicode_table, emit_xkb
from .layout_io import LayoutParseError, parse_layout, serialize_layout
from .model import Layout, Mode
from .placement import RuleParseError, Status, parse_rules, run_placement
from .simulator import (
    EventSyntaxError,
    PasswordPolicy,
    SimState,
    indicator,
    parse_events,
    password_guard,
    type_sequence,
)

OK, MISMATCH, USAGE = 0, 1, 2

BUILTIN = "builtin:"


class CliError(Exception):
    """Reported on stderr, exits with status 2."""


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path!r}: {exc.strerror or exc}") from None


def _builtin(ref: str) -> str | None:
    if not ref.startswith(BUILTIN):
        return None
    name = ref[len(BUILTIN):]
    if name not in golden.BUILTIN_NAMES:
        raise CliError(f"unknown built-in {name!r}; expected one of {', '.join(golden.BUILTIN_NAMES)}")
    return name


def load_layout(ref: str) -> Layout:
    name = _builtin(ref)
    if name is not None:
        return golden.builtin_layout(name)
    return _parse_layout(_read(ref), ref)


def load_base(ref: str) -> Layout:
    name = _builtin(ref)
    if name is not None:
        return golden.builtin_base(name)
    return _parse_layout(_read(ref), ref)


def load_rules(ref: str):
    name = _builtin(ref)
    text = golden.builtin_rules_text(name) if name is not None else _read(ref)
    try:
        return parse_rules(text)
    except RuleParseError as exc:
        raise CliError(f"{ref}: {exc}") from None


def _parse_layout(text: str, origin: str) -> Layout:
    try:
        return parse_layout(text)
    except LayoutParseError as exc:
        raise CliError(f"{origin}: {exc}") from None


# -- commands ------------------------------------------------------------------


def cmd_compile(args) -> int:
    base = load_base(args.base)
    rules = load_rules(args.rules)
    layout, report = run_placement(base, rules)
    try:
        Path(args.output).write_text(serialize_layout(layout), encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot write {args.output!r}: {exc.strerror or exc}") from None
    print(report.summary())
    for outcome in report.outcomes:
        if outcome.status is not Status.PLACED:
            print(f"{outcome.status.value}: {outcome.target} (rule {outcome.rule_index + 1})")
        elif args.verbose:
            print(f"placed {outcome.target} at {outcome.key}/{outcome.reg} (step {outcome.step})")
    return OK


def cmd_check_goldens(args) -> int:
    status = OK
    for name in golden.BUILTIN_NAMES:
        if args.assets is None:
            layout_text = golden.builtin_layout_text(name)
            rules_text = golden.builtin_rules_text(name)
        else:
            root = Path(args.assets)
            layout_text = _read(str(root / "layouts" / f"{name}.layout"))
            rules_text = _read(str(root / "rules" / f"{name}.rules"))
        expected = _parse_layout(layout_text, f"golden {name}")
        try:
            rules = parse_rules(rules_text)
        except RuleParseError as exc:
            raise CliError(f"rules {name}: {exc}") from None
        compiled, report = run_placement(expected.strip_upper(), rules)
        diff = golden.diff_layouts(compiled, expected)
        if diff:
            status = MISMATCH
            print(f"{name}: MISMATCH ({len(diff)} cells)")
            sys.stdout.write("".join(f"  {e}\n" for e in diff))
        else:
            print(f"{name}: ok ({report.summary()})")
    return status


def cmd_emit(args) -> int:
    layout = load_layout(args.layout)
    if args.format == "table":
        sys.stdout.write(emit_unicode_table(layout))
    elif args.format == "ascii":
        sys.stdout.write(emit_ascii_diagram(layout, RegisterPair(args.registers)))
    else:
        if layout.mode is Mode.CYRILLIC:
            cyr, lat = layout, load_layout(args.pair or "builtin:latin")
        else:
            cyr, lat = load_layout(args.pair or "builtin:bds"), layout
        try:
            text = emit_xkb(cyr, lat, tuple(args.names) if args.names else ("", ""))
        except ValueError as exc:
            raise CliError(str(exc)) from None
        sys.stdout.write(text)
    return OK


def cmd_validate(args) -> int:
    layout = load_layout(args.layout)
    profile = golden.get_profile(args.profile)
    try:
        report = golden.validate_profile(layout, profile)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    sys.stdout.write(report.format())
    return OK if report.passed else MISMATCH


def cmd_diff(args) -> int:
    diff = golden.diff_layouts(load_layout(args.a), load_layout(args.b))
    sys.stdout.write(diff.format())
    return MISMATCH if diff else OK


def cmd_simulate(args) -> int:
    try:
        events = parse_events(args.events)
    except EventSyntaxError as exc:
        raise CliError(str(exc)) from None
    try:
        state = SimState(load_layout(args.cyr), load_layout(args.lat), Mode(args.mode), args.capslock)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    print(type_sequence(state, events))
    print(indicator(state))
    if args.password_policy:
        print(f"guard={password_guard(state, args.password_policy).value}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kbforge", description="Compile, verify and render Bulgarian keyboard layouts."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="place rule targets into registers 3-4 of a base layout")
    p.add_argument("--base", required=True)
    p.add_argument("--rules", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("-v", "--verbose", action="store_true", help="list every placement")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("check-goldens", help="recompile the shipped layouts and diff them")
    p.add_argument("--assets", help="directory with layouts/ and rules/ to check instead")
    p.set_defaults(func=cmd_check_goldens)

    p = sub.add_parser("emit", help="render a layout")
    p.add_argument("--layout", required=True)
    p.add_argument("--format", required=True, choices=("xkb", "table", "ascii"))
    p.add_argument("--registers", choices=("low", "high"), default="low")
    p.add_argument("--pair", help="layout of the other mode for xkb output")
    p.add_argument("--names", nargs=2, metavar=("CYRILLIC", "LATIN"), help="xkb group names")
    p.set_defaults(func=cmd_emit)

    p = sub.add_parser("validate", help="check a layout against a profile")
    p.add_argument("--layout", required=True)
    p.add_argument("--profile", required=True, choices=sorted(golden.PROFILES))
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("diff", help="list the cells where two layouts differ")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("simulate", help="type key events and print the text")
    p.add_argument("--cyr", default="builtin:bds")
    p.add_argument("--lat", default="builtin:latin")
    p.add_argument("--mode", choices=[m.value for m in Mode], default="cyrillic")
    p.add_argument("--events", required=True)
    p.add_argument("--capslock", action="store_true", help="start with CapsLock latched")
    p.add_argument("--password-policy", choices=[p.value for p in PasswordPolicy])
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"kbforge: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
