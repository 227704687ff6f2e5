"""
Which use cases does a risk reach?
==================================

A risk hits every use case that uses one of its assets directly, plus every
use case that depends on a hit one. Fridges with a reduced control panel
can only be configured remotely, which drags cooling into the blast radius
of cloud-side risks.
"""

# %%
from riskseed import load_bundled, match_assets, impacted_use_cases
from riskseed.model import natural_sorted

base, catalog = load_bundled()
reduced, _ = load_bundled(model="model-reduced-panel.json")
print("U1 depends on:", reduced.use_case("U1").depends_on)

# %%
# Compare, rule by rule, whether cooling (U1) is affected.
print(f"{'risk':<18} {'U1 (full panel)':<16} U1 (reduced panel)")
for rule in catalog:
    plain = impacted_use_cases(base, match_assets(base, rule))
    remote = impacted_use_cases(reduced, match_assets(reduced, rule))
    print(f"{rule.id:<18} {str('U1' in plain):<16} {'U1' in remote}")

# %%
# Full impact sets for one cloud-side risk.
rule = next(r for r in catalog if r.id == "discontinuation")
for name, model in (("full panel", base), ("reduced panel", reduced)):
    print(name, natural_sorted(impacted_use_cases(model, match_assets(model, rule))))
