"""Compile, verify and render extended Bulgarian keyboard layouts.

The pipeline parses a register-1/2 base layout and a list of approximation
rules, places the rule targets into registers 3 and 4, and emits XKB
symbols, Unicode/keysym tables or ASCII diagrams.
"""

from .model import (
    CodePoint,
    KeyAssignment,
    KeyId,
    Layout,
    Mode,
    is_free_slot,
    key_order,
    occurrences_of,
)
from .layout_io import (
    LayoutParseError,
    codepoint_for_keysym,
    keysym_for,
    parse_layout,
    serialize_layout,
)
from .placement import (
    PlacementOutcome,
    PlacementReport,
    Rule,
    RuleParseError,
    Status,
    finalize_registers,
    parse_rules,
    run_placement,
    try_place,
)
from .golden import (
    BUILTIN_NAMES,
    PROFILES,
    builtin_base,
    builtin_layout,
    builtin_rules,
    diff_layouts,
    validate_profile,
)

__version__ = "0.1.0"

__all__ = [
    "CodePoint",
    "KeyAssignment",
    "KeyId",
    "Layout",
    "Mode",
    "is_free_slot",
    "key_order",
    "occurrences_of",
    "LayoutParseError",
    "codepoint_for_keysym",
    "keysym_for",
    "parse_layout",
    "serialize_layout",
    "PlacementOutcome",
    "PlacementReport",
    "Rule",
    "RuleParseError",
    "Status",
    "finalize_registers",
    "parse_rules",
    "run_placement",
    "try_place",
    "BUILTIN_NAMES",
    "PROFILES",
    "builtin_base",
    "builtin_layout",
    "builtin_rules",
    "diff_layouts",
    "validate_profile",
]
