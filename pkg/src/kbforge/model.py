"""Symbols, key positions and layouts.

Key positions follow ISO 9995 naming: ``E00``..``E12`` is the digit row,
``D01``..``D12``, ``C01``..``C12`` and ``B00``..``B10`` the letter rows, plus
the space bar (``SPACE``).  ``C12`` is the key next to Enter that carries the
backslash in Latin mode; ``B00`` is the extra key left of ``B01``.

Registers are numbered 1 to 4: 1 is the plain key, 2 is with Shift, 3 and 4
are the third-level registers without and with Shift.
"""

from __future__ import annotations

import enum
import functools
import re
import unicodedata
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional

__all__ = [
    "CodePoint",
    "KeyId",
    "Mode",
    "KeyAssignment",
    "Layout",
    "REGISTERS",
    "key_order",
    "occurrences_of",
    "is_free_slot",
    "toggle_case",
]

REGISTERS = (1, 2, 3, 4)

_CP_RE = re.compile(r"U\+([0-9A-F]{4,6})")


class CodePoint(int):
    """A Unicode scalar value, printed as ``U+XXXX``."""

    def __new__(cls, value: int) -> "CodePoint":
        value = int(value)
        if not 0 <= value <= 0x10FFFF or 0xD800 <= value <= 0xDFFF:
            raise ValueError(f"not a Unicode scalar value: {value:#x}")
        return super().__new__(cls, value)

    @classmethod
    def parse(cls, token: str) -> "CodePoint":
        m = _CP_RE.fullmatch(token)
        if m is None:
            raise ValueError(f"malformed code point token {token!r}")
        return cls(int(m.group(1), 16))

    @classmethod
    def of(cls, char: str) -> "CodePoint":
        return cls(ord(char))

    @property
    def char(self) -> str:
        return chr(self)

    def __str__(self) -> str:
        return f"U+{int(self):04X}"

    __repr__ = __str__


class Mode(enum.Enum):
    CYRILLIC = "cyrillic"
    LATIN = "latin"

    def __str__(self) -> str:
        return self.value


_ROWS = (("E", range(0, 13)), ("D", range(1, 13)), ("C", range(1, 13)), ("B", range(0, 11)))
_NAMES = tuple(f"{row}{i:02d}" for row, idx in _ROWS for i in idx) + ("SPACE",)
_POSITION = {name: pos for pos, name in enumerate(_NAMES)}


@functools.total_ordering
@dataclass(frozen=True)
class KeyId:
    """One of the 49 modelled key positions, ordered row by row."""

    name: str

    def __post_init__(self):
        if self.name not in _POSITION:
            raise ValueError(f"unknown KeyId {self.name!r}")

    @property
    def position(self) -> int:
        return _POSITION[self.name]

    @property
    def row(self) -> str:
        return "SPACE" if self.name == "SPACE" else self.name[0]

    @property
    def index(self) -> Optional[int]:
        return None if self.name == "SPACE" else int(self.name[1:])

    def __lt__(self, other):
        if not isinstance(other, KeyId):
            return NotImplemented
        return self.position < other.position

    def __str__(self) -> str:
        return self.name


_KEYS = tuple(KeyId(name) for name in _NAMES)


def key_order() -> tuple[KeyId, ...]:
    """All key positions in canonical order, ``E00`` first and ``SPACE`` last."""
    return _KEYS


def _check_register(reg: int) -> None:
    if reg not in REGISTERS:
        raise ValueError(f"register must be in 1..4, got {reg!r}")


@dataclass(frozen=True)
class KeyAssignment:
    """The four register slots of one key; ``None`` marks an empty slot."""

    regs: tuple[Optional[CodePoint], ...] = (None, None, None, None)

    def __post_init__(self):
        if len(self.regs) != 4:
            raise ValueError("a key has exactly four registers")
        object.__setattr__(
            self, "regs", tuple(None if cp is None else CodePoint(cp) for cp in self.regs)
        )

    def __getitem__(self, reg: int) -> Optional[CodePoint]:
        _check_register(reg)
        return self.regs[reg - 1]

    def replace(self, reg: int, cp: Optional[int]) -> "KeyAssignment":
        _check_register(reg)
        regs = list(self.regs)
        regs[reg - 1] = cp
        return KeyAssignment(tuple(regs))

    @property
    def is_empty(self) -> bool:
        return all(cp is None for cp in self.regs)


EMPTY_KEY = KeyAssignment()


@dataclass(frozen=True)
class Layout:
    """A named layout for one mode, covering every key position.

    ``keys`` is stored in canonical key order; index it with a :class:`KeyId`
    or a key name through ``layout[key]``.
    """

    name: str
    mode: Mode
    keys: tuple[KeyAssignment, ...]

    def __post_init__(self):
        if len(self.keys) != len(_KEYS):
            raise ValueError(f"layout needs {len(_KEYS)} keys, got {len(self.keys)}")
        object.__setattr__(self, "mode", Mode(self.mode))

    @classmethod
    def from_mapping(
        cls, name: str, mode: Mode, keys: Mapping[KeyId | str, KeyAssignment]
    ) -> "Layout":
        table = {(k if isinstance(k, KeyId) else KeyId(k)): v for k, v in keys.items()}
        return cls(name, mode, tuple(table.get(k, EMPTY_KEY) for k in _KEYS))

    @classmethod
    def empty(cls, name: str, mode: Mode) -> "Layout":
        return cls(name, mode, (EMPTY_KEY,) * len(_KEYS))

    def __getitem__(self, key: KeyId | str) -> KeyAssignment:
        if not isinstance(key, KeyId):
            key = KeyId(key)
        return self.keys[key.position]

    def items(self) -> Iterator[tuple[KeyId, KeyAssignment]]:
        return zip(_KEYS, self.keys)

    def cell(self, key: KeyId | str, reg: int) -> Optional[CodePoint]:
        return self[key][reg]

    def replace_key(self, key: KeyId | str, assignment: KeyAssignment) -> "Layout":
        if not isinstance(key, KeyId):
            key = KeyId(key)
        keys = list(self.keys)
        keys[key.position] = assignment
        return Layout(self.name, self.mode, tuple(keys))

    def replace_cell(self, key: KeyId | str, reg: int, cp: Optional[int]) -> "Layout":
        return self.replace_key(key, self[key].replace(reg, cp))

    def strip_upper(self) -> "Layout":
        """Copy with registers 3 and 4 emptied on every key."""
        keys = tuple(KeyAssignment(a.regs[:2] + (None, None)) for a in self.keys)
        return Layout(self.name, self.mode, keys)

    def symbols(self, registers: Iterable[int] = REGISTERS) -> set[CodePoint]:
        regs = tuple(registers)
        return {a[r] for a in self.keys for r in regs if a[r] is not None}


def occurrences_of(layout: Layout, cp: int) -> list[tuple[KeyId, int]]:
    """Every ``(key, register)`` slot holding ``cp``, in canonical order."""
    return [
        (key, reg)
        for key, assignment in layout.items()
        for reg in REGISTERS
        if assignment[reg] == cp
    ]


def is_free_slot(layout: Layout, key: KeyId | str, reg: int) -> bool:
    """Whether the placer may write into a third- or fourth-register slot.

    A slot is free when it is empty or when its occupant can also be typed
    from register 1 or 2 of some key, so overwriting it loses nothing.
    """
    if reg not in (3, 4):
        raise ValueError(f"only registers 3 and 4 are placeable, got {reg!r}")
    occupant = layout[key][reg]
    return occupant is None or occupant in layout.symbols((1, 2))


def toggle_case(cp: int) -> CodePoint:
    """Swap the case of a cased letter using the simple (1:1) case mapping.

    Code points that are not cased letters, or whose case mapping is not a
    single code point, come back unchanged.
    """
    ch = chr(cp)
    cat = unicodedata.category(ch)
    if cat == "Ll":
        other = ch.upper()
    elif cat in ("Lu", "Lt"):
        other = ch.lower()
    else:
        return CodePoint(cp)
    return CodePoint(ord(other)) if len(other) == 1 else CodePoint(cp)
