"""Render layouts as XKB symbols, Unicode/keysym tables and ASCII diagrams."""

from __future__ import annotations

import enum
import unicodedata
from typing import Optional

from .layout_io import LayoutParseError, codepoint_for_keysym, keysym_for
from .model import CodePoint, KeyAssignment, KeyId, Layout, Mode, key_order

__all__ = [
    "RegisterPair",
    "xkb_key_name",
    "emit_unicode_table",
    "parse_unicode_table",
    "emit_xkb",
    "emit_ascii_diagram",
    "display_symbol",
]


class RegisterPair(enum.Enum):
    LOW12 = "low"
    HIGH34 = "high"

    @property
    def registers(self) -> tuple[int, int]:
        return (1, 2) if self is RegisterPair.LOW12 else (3, 4)


# -- Unicode/keysym table ----------------------------------------------------


def _cells(cp: Optional[CodePoint]) -> tuple[str, str]:
    return ("", "") if cp is None else (str(cp), keysym_for(cp))


def emit_unicode_table(layout: Layout) -> str:
    """Two rows per key: registers 1 and 3, then registers 2 and 4.

    Columns are key, Unicode (low, high register) and keysym (low, high
    register), separated by single spaces; empty cells are empty strings so
    a row splits back into exactly five fields.
    """
    lines = [
        f"layout {layout.name} mode {layout.mode.value}",
        "# key unicode(1/2) unicode(3/4) keysym(1/2) keysym(3/4)",
    ]
    for key, a in layout.items():
        for label, lo, hi in ((key.name, 1, 3), ("", 2, 4)):
            u_lo, k_lo = _cells(a[lo])
            u_hi, k_hi = _cells(a[hi])
            lines.append(" ".join((label, u_lo, u_hi, k_lo, k_hi)))
    return "\n".join(lines) + "\n"


def parse_unicode_table(text: str) -> Layout:
    """Read back the output of :func:`emit_unicode_table`.

    Each code point must agree with the keysym printed next to it.
    """
    from .layout_io import _HEADER_RE

    lines = text.splitlines()
    if not lines or (m := _HEADER_RE.fullmatch(lines[0].strip())) is None:
        raise LayoutParseError("missing layout header", 1)
    name, mode = m.group(1), Mode(m.group(2))
    keys: dict[KeyId, KeyAssignment] = {}
    pending = None
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split(" ")
        if len(fields) != 5:
            raise LayoutParseError(f"expected 5 columns, got {len(fields)}", lineno)
        label, u_lo, u_hi, k_lo, k_hi = fields
        lo = _table_cell(u_lo, k_lo, lineno)
        hi = _table_cell(u_hi, k_hi, lineno)
        if label:
            if pending is not None:
                raise LayoutParseError(f"key {pending[0]} has only one row", lineno)
            try:
                pending = (KeyId(label), lo, hi)
            except ValueError:
                raise LayoutParseError(f"unknown KeyId {label!r}", lineno) from None
        else:
            if pending is None:
                raise LayoutParseError("continuation row without a key", lineno)
            key, r1, r3 = pending
            if key in keys:
                raise LayoutParseError(f"duplicate rows for {key}", lineno)
            keys[key] = KeyAssignment((r1, lo, r3, hi))
            pending = None
    if pending is not None:
        raise LayoutParseError(f"key {pending[0]} has only one row", len(lines))
    return Layout.from_mapping(name, mode, keys)


def _table_cell(ucode: str, keysym: str, lineno: int) -> Optional[CodePoint]:
    if not ucode and not keysym:
        return None
    try:
        cp = CodePoint.parse(ucode)
        named = codepoint_for_keysym(keysym)
    except (ValueError, KeyError) as exc:
        raise LayoutParseError(str(exc), lineno) from None
    if cp != named:
        raise LayoutParseError(f"{ucode} does not match keysym {keysym}", lineno)
    return cp


# -- XKB symbols ---------------------------------------------------------------


def xkb_key_name(key: KeyId) -> str:
    special = {"E00": "TLDE", "C12": "BKSL", "B00": "LSGT", "SPACE": "SPCE"}
    if key.name in special:
        return special[key.name]
    return f"A{key.name}"


def _xkb_block(layout: Layout, description: str, default: bool) -> list[str]:
    lines = [
        ("default " if default else "") + "partial alphanumeric_keys",
        f'xkb_symbols "{layout.name}" {{',
        f'    name[Group1] = "{description}";',
        '    include "level3(ralt_switch)"',
        "",
    ]
    for key, a in layout.items():
        syms = [keysym_for(cp) if cp is not None else "NoSymbol" for cp in a.regs]
        if a[3] is None and a[4] is None:
            syms = syms[:2]
        lines.append(f"    key <{xkb_key_name(key)}> {{ [ {', '.join(syms)} ] }};")
    lines.append("};")
    return lines


def emit_xkb(cyr: Layout, lat: Layout, group_names: tuple[str, str] = ("", "")) -> str:
    """XKB symbols text with one block for the Cyrillic and one for the Latin layout."""
    if cyr.mode is not Mode.CYRILLIC:
        raise ValueError(f"{cyr.name} is a {cyr.mode} layout, expected cyrillic")
    if lat.mode is not Mode.LATIN:
        raise ValueError(f"{lat.name} is a {lat.mode} layout, expected latin")
    cyr_name = group_names[0] or f"Bulgarian ({cyr.name})"
    lat_name = group_names[1] or f"English ({lat.name})"
    lines = ["// Generated by kbforge; keysyms in register order 1-4.", ""]
    lines += _xkb_block(cyr, cyr_name, default=True)
    lines.append("")
    lines += _xkb_block(lat, lat_name, default=False)
    return "\n".join(lines) + "\n"


# -- ASCII diagram ---------------------------------------------------------------

CELL_WIDTH = 5
# half-key steps keep the merged row borders regular
_ROW_INDENT = {"E": 0, "D": 9, "C": 12, "B": 9}
_SPACE_INDENT = 27
_SPACE_CELLS = 5


def display_symbol(cp: Optional[int]) -> str:
    if cp is None:
        return ""
    if cp == 0x2011:
        return "/-/"
    if cp == 0x00A0:
        return "NBSP"
    ch = chr(cp)
    if unicodedata.combining(ch):
        return "◌" + ch
    return ch


def _width(text: str) -> int:
    w = 0
    for ch in text:
        if unicodedata.combining(ch):
            continue
        w += 2 if unicodedata.east_asian_width(ch) in ("W", "F") else 1
    return w


def _center(text: str, width: int) -> str:
    pad = max(width - _width(text), 0)
    left = pad // 2
    return " " * left + text + " " * (pad - left)


def _merge_borders(a: str, b: str) -> str:
    rank = {" ": 0, "-": 1, "+": 2}
    n = max(len(a), len(b))
    a, b = a.ljust(n), b.ljust(n)
    return "".join(x if rank[x] >= rank[y] else y for x, y in zip(a, b)).rstrip()


def emit_ascii_diagram(layout: Layout, pair: RegisterPair | str = RegisterPair.LOW12) -> str:
    """Fixed-width picture of the keyboard for one register pair.

    Each key cell is five columns wide and shows the higher register of the
    pair above the lower one.  The space bar is drawn below the letter rows.
    """
    pair = RegisterPair(pair)
    lo, hi = pair.registers
    rows: dict[str, list[KeyId]] = {}
    for key in key_order():
        rows.setdefault(key.row, []).append(key)

    blocks = []  # (border, upper line, lower line)
    for row in "EDCB":
        keys = rows[row]
        indent = " " * _ROW_INDENT[row]
        border = indent + "+" + "+".join("-" * CELL_WIDTH for _ in keys) + "+"
        upper = indent + "|" + "|".join(_center(display_symbol(layout[k][hi]), CELL_WIDTH) for k in keys) + "|"
        lower = indent + "|" + "|".join(_center(display_symbol(layout[k][lo]), CELL_WIDTH) for k in keys) + "|"
        blocks.append((border, upper, lower))
    space = layout["SPACE"]
    width = _SPACE_CELLS * (CELL_WIDTH + 1) - 1
    indent = " " * _SPACE_INDENT
    blocks.append(
        (
            indent + "+" + "-" * width + "+",
            indent + "|" + _center(display_symbol(space[hi]), width) + "|",
            indent + "|" + _center(display_symbol(space[lo]), width) + "|",
        )
    )

    regs = "1-2" if pair is RegisterPair.LOW12 else "3-4"
    lines = [f"{layout.name} ({layout.mode.value}), registers {regs}"]
    previous = ""
    for border, upper, lower in blocks:
        lines.append(_merge_borders(previous, border))
        lines.append(upper)
        lines.append(lower)
        previous = border
    lines.append(previous)
    return "\n".join(lines) + "\n"
