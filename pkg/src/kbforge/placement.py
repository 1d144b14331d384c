"""Approximation rules and the third/fourth-register placement procedure.

A rule names a target symbol and an ordered list of anchors: symbols already
on the keyboard that the target resembles.  The placer puts each target on
the key of its first usable anchor occurrence, never touching registers 1-2.

Rule file lines look like::

    place U+2014 after U+003D          # em dash next to '='
    place U+21D4 after U+2266, U+003C  # second anchor is a fallback

Order matters and repeated lines place the same symbol more than once.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from .model import CodePoint, KeyId, Layout, is_free_slot, key_order, occurrences_of

__all__ = [
    "Rule",
    "RuleParseError",
    "Status",
    "PlacementOutcome",
    "PlacementReport",
    "parse_rules",
    "serialize_rules",
    "try_place",
    "run_placement",
    "finalize_registers",
]


@dataclass(frozen=True)
class Rule:
    target: CodePoint
    anchors: tuple[CodePoint, ...]
    rationale: str = ""

    def __post_init__(self):
        object.__setattr__(self, "target", CodePoint(self.target))
        object.__setattr__(self, "anchors", tuple(CodePoint(a) for a in self.anchors))
        if not self.anchors:
            raise ValueError("a rule needs at least one anchor")
        if self.target in self.anchors:
            raise ValueError(f"{self.target} cannot anchor itself")


class RuleParseError(ValueError):
    def __init__(self, message: str, lineno: int):
        self.lineno = lineno
        self.message = message
        super().__init__(f"line {lineno}: {message}")


_RULE_RE = re.compile(r"place\s+(\S+)\s+after\s*(.*)")


def parse_rules(text: str) -> list[Rule]:
    rules = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body, _, rationale = raw.partition("#")
        body = body.strip()
        if not body:
            continue
        m = _RULE_RE.fullmatch(body)
        if m is None:
            raise RuleParseError(f"expected 'place U+XXXX after U+YYYY', got {body!r}", lineno)
        target_tok, anchor_text = m.groups()
        tokens = [t.strip() for t in anchor_text.split(",")] if anchor_text.strip() else []
        if not tokens or not all(tokens):
            raise RuleParseError("empty anchor list", lineno)
        try:
            target = CodePoint.parse(target_tok)
            anchors = tuple(CodePoint.parse(t) for t in tokens)
        except ValueError as exc:
            raise RuleParseError(str(exc), lineno) from None
        try:
            rules.append(Rule(target, anchors, rationale.strip()))
        except ValueError as exc:
            raise RuleParseError(str(exc), lineno) from None
    return rules


def serialize_rules(rules: Sequence[Rule]) -> str:
    lines = []
    for rule in rules:
        line = f"place {rule.target} after " + ", ".join(str(a) for a in rule.anchors)
        if rule.rationale:
            line += f"  # {rule.rationale}"
        lines.append(line)
    return "\n".join(lines) + ("\n" if lines else "")


class Status(enum.Enum):
    PLACED = "placed"
    SKIPPED = "skipped"  # no anchor present on the keyboard
    UNPLACEABLE = "unplaceable"  # anchors present, every slot blocked


@dataclass(frozen=True)
class PlacementOutcome:
    """What happened to one rule instance.

    For placed rules ``key``/``reg`` give the slot that received the target,
    ``step`` the clause (4-8) that fired and ``occurrence`` the anchor slot it
    was attached to.
    """

    target: CodePoint
    status: Status
    rule_index: int = -1
    key: Optional[KeyId] = None
    reg: Optional[int] = None
    step: Optional[int] = None
    anchor: Optional[CodePoint] = None
    occurrence: Optional[tuple[KeyId, int]] = None
    pass_number: int = 0


@dataclass
class PlacementReport:
    outcomes: list[PlacementOutcome] = field(default_factory=list)
    passes: int = 0

    def by_status(self, status: Status) -> list[PlacementOutcome]:
        return [o for o in self.outcomes if o.status is status]

    def counts(self) -> dict[str, int]:
        return {s.value: len(self.by_status(s)) for s in Status}

    def summary(self) -> str:
        c = self.counts()
        return (
            f"placed={c['placed']} skipped={c['skipped']} "
            f"unplaceable={c['unplaceable']} passes={self.passes}"
        )


def try_place(
    layout: Layout, target: int, occurrence: tuple[KeyId, int]
) -> Optional[tuple[Layout, PlacementOutcome]]:
    """Attach ``target`` to the key of one anchor occurrence.

    Tries the clauses in order and returns the updated layout with the
    outcome of the first one whose guard holds, or ``None`` when the key has
    no usable slot.
    """
    target = CodePoint(target)
    key, reg = occurrence
    if not isinstance(key, KeyId):
        key = KeyId(key)
    a = layout[key]
    anchor = a[reg]
    free3 = is_free_slot(layout, key, 3)
    free4 = is_free_slot(layout, key, 4)

    def placed(new: Layout, slot: int, step: int):
        outcome = PlacementOutcome(
            target, Status.PLACED, key=key, reg=slot, step=step,
            anchor=anchor, occurrence=(key, reg),
        )
        return new, outcome

    if reg == 1 and free3:
        return placed(layout.replace_cell(key, 3, target), 3, 4)
    if reg == 2 and free4:
        return placed(layout.replace_cell(key, 4, target), 4, 5)
    if free4:
        return placed(layout.replace_cell(key, 4, target), 4, 6)
    if reg == 4 and free3:
        moved = a.replace(3, a[4]).replace(4, target)
        return placed(layout.replace_key(key, moved), 4, 7)
    if free3:
        return placed(layout.replace_cell(key, 3, target), 3, 8)
    return None


def finalize_registers(layout: Layout) -> Layout:
    """Fill the partner slot of every lone third/fourth-register symbol.

    Only empty slots are filled.  A register-3 symbol that duplicates a
    register-1/2 symbol stays put, otherwise pairs such as ы/Ы on a key whose
    ы is also reachable elsewhere would collapse into Ы/Ы.
    """
    for key in key_order():
        a = layout[key]
        if a[4] is not None and a[3] is None:
            layout = layout.replace_cell(key, 3, a[4])
    for key in key_order():
        a = layout[key]
        if a[3] is not None and a[4] is None:
            layout = layout.replace_cell(key, 4, a[3])
    return layout


def _attempt(layout: Layout, rule: Rule):
    """Run one rule; returns (layout, outcome) or (None, status) on failure."""
    present = False
    for anchor in rule.anchors:
        for occurrence in occurrences_of(layout, anchor):
            present = True
            result = try_place(layout, rule.target, occurrence)
            if result is not None:
                return result
    return None, Status.UNPLACEABLE if present else Status.SKIPPED


def run_placement(base: Layout, rules: Sequence[Rule]) -> tuple[Layout, PlacementReport]:
    """Place every rule target into registers 3-4 of ``base``.

    Rules are tried in list order.  Rules that cannot be placed are retried
    in further passes over the remaining ones until a pass places nothing;
    whatever is left is reported as skipped or unplaceable.  The result is
    finalized so that register 3 is set exactly when register 4 is.
    """
    layout = base
    report = PlacementReport()
    pending = list(enumerate(rules))
    failures: dict[int, Status] = {}
    while pending:
        report.passes += 1
        remaining = []
        for index, rule in pending:
            new, outcome = _attempt(layout, rule)
            if new is None:
                failures[index] = outcome
                remaining.append((index, rule))
                continue
            layout = new
            failures.pop(index, None)
            report.outcomes.append(
                replace(outcome, rule_index=index, pass_number=report.passes)
            )
        if len(remaining) == len(pending):
            break
        pending = remaining
    for index, rule in pending:
        report.outcomes.append(
            PlacementOutcome(rule.target, failures[index], rule_index=index,
                             pass_number=report.passes)
        )
    return finalize_registers(layout), report

