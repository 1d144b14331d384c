"""Type a few words on the simulated keyboard and ask the password guard for advice."""

from kbforge.golden import builtin_layout
from kbforge.model import Mode
from kbforge.simulator import (
    PasswordPolicy, SimState, indicator, parse_events, password_guard, set_mode, type_sequence,
)

state = SimState(builtin_layout("bds"), builtin_layout("latin"))

# "Дез" on BDS, then the same keys in Latin mode
keys = parse_events("S+D09 D03 D10")
print(type_sequence(state, keys), indicator(state))
latin = set_mode(state, Mode.LATIN)
print(type_sequence(latin, keys), indicator(latin))

# quotes around a stressed vowel: the combining acute is Shift+level3 on E08
print(type_sequence(state, parse_events("C12 C03 S+L3+E08 S+C12")))

# capital soft sign is only reachable with CapsLock
print(type_sequence(state, parse_events("CL+C01")))

for s in (state, latin):
    for policy in PasswordPolicy:
        print(f"{indicator(s)} policy={policy.value}: {password_guard(s, policy).value}")
