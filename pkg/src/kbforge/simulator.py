"""Key events to characters, mode state and the password-entry guard."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, replace
from typing import Iterable, Optional

from .model import CodePoint, KeyId, Layout, Mode, toggle_case

__all__ = [
    "KeyEvent",
    "SimState",
    "PasswordPolicy",
    "GuardVerdict",
    "EventSyntaxError",
    "parse_events",
    "resolve_event",
    "type_sequence",
    "set_mode",
    "password_guard",
    "indicator",
]


@dataclass(frozen=True)
class KeyEvent:
    key: KeyId
    shift: bool = False
    level3: bool = False
    capslock: bool = False

    def __post_init__(self):
        if not isinstance(self.key, KeyId):
            object.__setattr__(self, "key", KeyId(self.key))

    @property
    def register(self) -> int:
        return 1 + int(self.shift) + 2 * int(self.level3)


@dataclass(frozen=True)
class SimState:
    cyr: Layout
    lat: Layout
    mode: Mode = Mode.CYRILLIC
    capslock: bool = False

    def __post_init__(self):
        if self.cyr.mode is not Mode.CYRILLIC:
            raise ValueError(f"{self.cyr.name} is not a cyrillic layout")
        if self.lat.mode is not Mode.LATIN:
            raise ValueError(f"{self.lat.name} is not a latin layout")
        object.__setattr__(self, "mode", Mode(self.mode))

    @property
    def active(self) -> Layout:
        return self.cyr if self.mode is Mode.CYRILLIC else self.lat


def resolve_event(state: SimState, ev: KeyEvent) -> Optional[CodePoint]:
    """The code point a key event produces, or ``None`` for an empty slot.

    CapsLock (on the event or latched in the state) toggles the case of
    letters in registers 1 and 2 only.
    """
    reg = ev.register
    cp = state.active[ev.key][reg]
    if cp is not None and reg <= 2 and (ev.capslock or state.capslock):
        cp = toggle_case(cp)
    return cp


def type_sequence(state: SimState, events: Iterable[KeyEvent]) -> str:
    out = []
    for ev in events:
        cp = resolve_event(state, ev)
        if cp is not None:
            out.append(chr(cp))
    return "".join(out)


def set_mode(state: SimState, mode: Mode | str) -> SimState:
    return replace(state, mode=Mode(mode))


class EventSyntaxError(ValueError):
    pass


_EVENT_RE = re.compile(r"(S\+)?(L3\+)?(CL\+)?([A-Z0-9]+)")


def parse_events(text: str) -> list[KeyEvent]:
    """Parse ``S+D03 L3+E08 CL+C01``-style event tokens.

    Modifier prefixes come in the order ``S+``, ``L3+``, ``CL+``.
    """
    events = []
    for token in text.split():
        m = _EVENT_RE.fullmatch(token)
        if m is None:
            raise EventSyntaxError(f"bad event token {token!r}")
        shift, level3, caps, name = m.groups()
        try:
            key = KeyId(name)
        except ValueError:
            raise EventSyntaxError(f"bad event token {token!r}: unknown key {name}") from None
        events.append(KeyEvent(key, bool(shift), bool(level3), bool(caps)))
    return events


class PasswordPolicy(enum.Enum):
    ASCII_ONLY = "ascii-only"
    ANY_SCRIPT = "any-script"


class GuardVerdict(enum.Enum):
    OK = "ok"
    MUST_SWITCH_TO_LATIN = "mustSwitchToLatin"
    MUST_INDICATE_STATE = "mustIndicateState"


def password_guard(state: SimState, policy: PasswordPolicy | str) -> GuardVerdict:
    """What input software should do before a password is typed.

    ASCII-only passwords need Latin mode.  When other scripts are allowed the
    keyboard state has to be shown to the user instead, since a wrong mode or
    layout would silently produce a different password.
    """
    policy = PasswordPolicy(policy)
    if policy is PasswordPolicy.ANY_SCRIPT:
        return GuardVerdict.MUST_INDICATE_STATE
    if state.mode is Mode.CYRILLIC:
        return GuardVerdict.MUST_SWITCH_TO_LATIN
    return GuardVerdict.OK


def indicator(state: SimState) -> str:
    return f"mode={state.mode.value} capslock={'on' if state.capslock else 'off'}"
