"""Print both register pairs of every shipped layout, plus the XKB text for BDS."""

from kbforge.emit import RegisterPair, emit_ascii_diagram, emit_xkb
from kbforge.golden import BUILTIN_NAMES, builtin_layout

for name in BUILTIN_NAMES:
    for pair in RegisterPair:
        print(emit_ascii_diagram(builtin_layout(name), pair))

print(emit_xkb(builtin_layout("bds"), builtin_layout("latin"), ("Bulgarian (BDS)", "English")))
