"""Built-in layouts and rule files, layout diffs and profile validation."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional, Sequence

from .layout_io import parse_layout
from .model import REGISTERS, CodePoint, KeyId, Layout, Mode, toggle_case
from .placement import Rule, parse_rules

__all__ = [
    "BUILTIN_NAMES",
    "builtin_layout",
    "builtin_base",
    "builtin_rules",
    "builtin_layout_text",
    "builtin_rules_text",
    "DiffEntry",
    "LayoutDiff",
    "diff_layouts",
    "Requirement",
    "ValidationProfile",
    "Finding",
    "ValidationReport",
    "PROFILES",
    "get_profile",
    "validate_profile",
]

BUILTIN_NAMES = ("bds", "phonetic", "phonetic-bds", "latin")


def _check_name(name: str) -> None:
    if name not in BUILTIN_NAMES:
        raise KeyError(f"unknown built-in layout {name!r}; expected one of {', '.join(BUILTIN_NAMES)}")


def _asset(path: str) -> str:
    return resources.files("kbforge").joinpath(f"data/{path}").read_text("utf-8")


def builtin_layout_text(name: str) -> str:
    _check_name(name)
    return _asset(f"layouts/{name}.layout")


def builtin_rules_text(name: str) -> str:
    _check_name(name)
    return _asset(f"rules/{name}.rules")


@functools.lru_cache(maxsize=None)
def builtin_layout(name: str) -> Layout:
    return parse_layout(builtin_layout_text(name))


def builtin_base(name: str) -> Layout:
    """The built-in layout with registers 3 and 4 emptied."""
    return builtin_layout(name).strip_upper()


def builtin_rules(name: str) -> list[Rule]:
    return parse_rules(builtin_rules_text(name))


@dataclass(frozen=True)
class DiffEntry:
    key: KeyId
    reg: int
    left: Optional[CodePoint]
    right: Optional[CodePoint]

    def __str__(self) -> str:
        def cell(cp):
            return "-" if cp is None else str(cp)

        return f"{self.key} reg{self.reg}: {cell(self.left)} != {cell(self.right)}"


@dataclass(frozen=True)
class LayoutDiff:
    entries: tuple[DiffEntry, ...] = ()

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def format(self) -> str:
        return "".join(f"{e}\n" for e in self.entries)


def diff_layouts(a: Layout, b: Layout) -> LayoutDiff:
    """Cell-by-cell differences; names and modes are not compared."""
    entries = []
    for (key, left), (_, right) in zip(a.items(), b.items()):
        for reg in REGISTERS:
            if left[reg] != right[reg]:
                entries.append(DiffEntry(key, reg, left[reg], right[reg]))
    return LayoutDiff(tuple(entries))


# -- profile validation ------------------------------------------------------


@dataclass(frozen=True)
class Requirement:
    """A checklist item: every code point in ``codepoints`` must be typeable."""

    label: str
    codepoints: tuple[CodePoint, ...]

    @classmethod
    def single(cls, cp: int) -> "Requirement":
        cp = CodePoint(cp)
        return cls(f"{cp} {chr(cp)}", (cp,))


@dataclass(frozen=True)
class ValidationProfile:
    """What a layout for one mode must offer.

    ``required`` items must be reachable from registers 1-2, where a cased
    letter also counts when its case partner sits in register 1 or 2
    (CapsLock reaches it).  ``required_any`` code points may sit in any
    register.  With ``full_base`` every key must define registers 1 and 2.
    ``without_lsgt`` models keyboards lacking the B00 key: nothing found
    only there counts.
    """

    name: str
    mode: Mode
    required: tuple[Requirement, ...]
    required_any: frozenset[CodePoint] = frozenset()
    full_base: bool = True
    without_lsgt: bool = False


@dataclass(frozen=True)
class Finding:
    label: str
    positions: dict  # CodePoint -> list of (KeyId, reg, via_capslock)
    missing: tuple[CodePoint, ...]

    @property
    def present(self) -> bool:
        return not self.missing


@dataclass
class ValidationReport:
    profile: str
    layout: str
    findings: list[Finding] = field(default_factory=list)
    structural: list[str] = field(default_factory=list)

    @property
    def missing(self) -> list[Finding]:
        return [f for f in self.findings if not f.present]

    @property
    def passed(self) -> bool:
        return not self.missing and not self.structural

    def format(self) -> str:
        lines = [f"profile {self.profile} on layout {self.layout}: {'PASS' if self.passed else 'FAIL'}"]
        for f in self.findings:
            if f.present:
                where = "; ".join(
                    ", ".join(f"{k}/{r}{' (capslock)' if cl else ''}" for k, r, cl in pos)
                    for pos in f.positions.values()
                )
                lines.append(f"  present {f.label}: {where}")
            else:
                lines.append(f"  MISSING {f.label}: " + " ".join(str(cp) for cp in f.missing))
        lines.extend(f"  STRUCTURE {msg}" for msg in self.structural)
        return "\n".join(lines) + "\n"


def _letters(first: str, last: str, skip: str = "") -> list[int]:
    return [c for c in range(ord(first), ord(last) + 1) if chr(c) not in skip]


# ы and э are Russian, ѐ and ѝ are not part of the base alphabet
_BG_LOWER = _letters("а", "я", skip="ыэ")
_BG_UPPER = _letters("А", "Я", skip="ЫЭ")
assert len(_BG_LOWER) == len(_BG_UPPER) == 30

_PRINTABLE_ASCII = _letters(" ", "~")


def _singles(cps: Sequence[int]) -> tuple[Requirement, ...]:
    return tuple(Requirement.single(cp) for cp in cps)


BG_CYRILLIC = ValidationProfile(
    name="bg-cyrillic",
    mode=Mode.CYRILLIC,
    required=(
        Requirement("Bulgarian quotes „ “", (CodePoint(0x201E), CodePoint(0x201C))),
        *_singles([0x2013, 0x045D, 0x040D, 0x20AC, 0x2116, 0x00A7]),
        *_singles(_BG_LOWER),
        *_singles(_BG_UPPER),
        *_singles(range(ord("0"), ord("9") + 1)),
    ),
    required_any=frozenset(CodePoint.of(c) for c in ' ,.;:!?()-+=/%"'),
)

EN_LATIN = ValidationProfile(
    name="en-latin",
    mode=Mode.LATIN,
    required=_singles(_PRINTABLE_ASCII),
    required_any=frozenset(
        CodePoint(c) for c in (0x2014, 0x2013, 0x201C, 0x201D, 0x2018, 0x2019, 0x00A0)
    ),
)

PROFILES = {p.name: p for p in (BG_CYRILLIC, EN_LATIN)}


def get_profile(name: str) -> ValidationProfile:
    try:
        return PROFILES[name]
    except KeyError:
        raise KeyError(f"unknown profile {name!r}; expected one of {', '.join(PROFILES)}") from None


def validate_profile(layout: Layout, profile: ValidationProfile) -> ValidationReport:
    if layout.mode is not profile.mode:
        raise ValueError(
            f"profile {profile.name} is for {profile.mode} layouts, {layout.name} is {layout.mode}"
        )
    base: dict[CodePoint, list] = {}
    anywhere: set[CodePoint] = set()
    for key, assignment in layout.items():
        if profile.without_lsgt and key.name == "B00":
            continue
        for reg in REGISTERS:
            cp = assignment[reg]
            if cp is None:
                continue
            anywhere.add(cp)
            if reg <= 2:
                base.setdefault(cp, []).append((key, reg, False))
                toggled = toggle_case(cp)
                if toggled != cp:
                    base.setdefault(toggled, []).append((key, reg, True))

    report = ValidationReport(profile.name, layout.name)
    for req in profile.required:
        positions = {cp: _prefer_direct(base[cp]) for cp in req.codepoints if cp in base}
        missing = tuple(cp for cp in req.codepoints if cp not in base)
        report.findings.append(Finding(req.label, positions, missing))
    for cp in sorted(profile.required_any):
        found = cp in anywhere
        positions = {}
        if found:
            positions[cp] = [
                (key, reg, False)
                for key, a in layout.items()
                for reg in REGISTERS
                if a[reg] == cp and not (profile.without_lsgt and key.name == "B00")
            ]
        report.findings.append(
            Finding(f"{cp} {chr(cp)} (any register)", positions, () if found else (cp,))
        )
    if profile.full_base:
        for key, a in layout.items():
            if profile.without_lsgt and key.name == "B00":
                continue
            for reg in (1, 2):
                if a[reg] is None:
                    report.structural.append(f"{key} register {reg} is empty")
    return report


def _prefer_direct(positions: list) -> list:
    direct = [p for p in positions if not p[2]]
    return direct or positions
