"""Layout file format and the code point <-> X keysym name mapping.

A layout file is UTF-8 text.  The first meaningful line is the header
``layout <name> mode <cyrillic|latin>``; every other non-blank line that is
not a ``#`` comment reads ``<KEYID> <r1> <r2> <r3> <r4>`` where each register
is ``U+XXXX`` or ``-`` for an empty slot.
"""

from __future__ import annotations

import functools
import re
from importlib import resources

from .model import CodePoint, KeyAssignment, KeyId, Layout, Mode

__all__ = [
    "LayoutParseError",
    "UnknownKeysymError",
    "parse_layout",
    "serialize_layout",
    "keysym_for",
    "codepoint_for_keysym",
    "keysym_table",
]

EMPTY = "-"

_HEADER_RE = re.compile(r"layout\s+(\S+)\s+mode\s+(\S+)")
_FALLBACK_RE = re.compile(r"U([0-9A-F]{4,6})")


class LayoutParseError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        self.message = message
        super().__init__(f"line {lineno}: {message}" if lineno is not None else message)


class UnknownKeysymError(KeyError):
    def __str__(self) -> str:
        return f"unknown keysym name {self.args[0]!r}"


def _meaningful_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def parse_layout(text: str) -> Layout:
    lines = _meaningful_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise LayoutParseError("missing layout header") from None
    m = _HEADER_RE.fullmatch(header)
    if m is None:
        raise LayoutParseError(f"malformed header {header!r}", lineno)
    name = m.group(1)
    try:
        mode = Mode(m.group(2))
    except ValueError:
        raise LayoutParseError(f"unknown mode {m.group(2)!r}", lineno) from None

    keys: dict[KeyId, KeyAssignment] = {}
    for lineno, line in lines:
        fields = line.split()
        if len(fields) != 5:
            raise LayoutParseError(f"expected a key and 4 registers, got {line!r}", lineno)
        try:
            key = KeyId(fields[0])
        except ValueError:
            raise LayoutParseError(f"unknown KeyId {fields[0]!r}", lineno) from None
        if key in keys:
            raise LayoutParseError(f"duplicate key line for {key}", lineno)
        regs = []
        for token in fields[1:]:
            if token == EMPTY:
                regs.append(None)
                continue
            try:
                regs.append(CodePoint.parse(token))
            except ValueError:
                raise LayoutParseError(f"malformed code point token {token!r}", lineno) from None
        keys[key] = KeyAssignment(tuple(regs))
    return Layout.from_mapping(name, mode, keys)


def serialize_layout(layout: Layout) -> str:
    lines = [f"layout {layout.name} mode {layout.mode.value}"]
    for key, assignment in layout.items():
        cells = (EMPTY if cp is None else str(cp) for cp in assignment.regs)
        lines.append(" ".join((key.name, *cells)))
    return "\n".join(lines) + "\n"


@functools.lru_cache(maxsize=None)
def keysym_table() -> dict[CodePoint, str]:
    """Named keysyms, keyed by code point.

    Only code points whose keysym is a proper name live here; everything else
    uses the ``U`` + hex fallback.
    """
    text = resources.files("kbforge").joinpath("data/keysyms.tsv").read_text("utf-8")
    table = {}
    for _, line in _meaningful_lines(text):
        cp, name = line.split("\t")
        table[CodePoint.parse(cp)] = name
    return table


@functools.lru_cache(maxsize=None)
def _names() -> dict[str, CodePoint]:
    inverse = {name: cp for cp, name in keysym_table().items()}
    assert len(inverse) == len(keysym_table()), "keysym names must be unique"
    return inverse


def keysym_for(cp: int) -> str:
    cp = CodePoint(cp)
    return keysym_table().get(cp) or f"U{int(cp):04X}"


def codepoint_for_keysym(name: str) -> CodePoint:
    try:
        return _names()[name]
    except KeyError:
        pass
    m = _FALLBACK_RE.fullmatch(name)
    if m is None:
        raise UnknownKeysymError(name)
    try:
        return CodePoint(int(m.group(1), 16))
    except ValueError:
        raise UnknownKeysymError(name) from None
