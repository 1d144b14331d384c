"""Rebuild the BDS layout from its base and rule list, then show what each rule did.

Run with ``python demos/compile_and_check.py``.
"""

from kbforge import Status, builtin_base, builtin_layout, builtin_rules, diff_layouts, run_placement

base = builtin_base("bds")
rules = builtin_rules("bds")
layout, report = run_placement(base, rules)

print(report.summary())
for outcome in report.outcomes:
    if outcome.status is Status.PLACED:
        rule = rules[outcome.rule_index]
        print(
            f"{chr(outcome.target)!r:6} {outcome.key}/{outcome.reg} "
            f"via {chr(outcome.anchor)!r} (clause {outcome.step}); {rule.rationale}"
        )

diff = diff_layouts(layout, builtin_layout("bds"))
print("matches the shipped layout" if not diff else diff.format())

# dropping a rule leaves holes that the diff reports cell by cell
shorter, _ = run_placement(base, rules[1:])
print(f"without rule 1: {len(diff_layouts(shorter, builtin_layout('bds')))} cells differ")
