"""
Modelling another device
========================

The engine knows nothing about fridges. This script describes a small smart
TV setup as a JSON document, validates it, and reuses a wildcard rule.
"""

# %%
import json

from riskseed import asset_needs, assess, parse_catalog, parse_model, render_needs

doc = {
    "scenario": "Living room TV with a vendor streaming portal.",
    "data": [
        {"id": "viewing", "name": "Viewing history",
         "harm": {"integrity": "negligible", "availability": "limited", "confidentiality": "substantial"}},
        {"id": "firmware", "name": "Firmware",
         "annotations": [{"action": "modification", "harm": "substantial"},
                         {"action": "interruption", "harm": "substantial"},
                         {"action": "interception", "harm": "limited"}]},
    ],
    "devices": [{"id": "tv", "name": "Smart TV"}, {"id": "portal", "name": "Vendor portal"}],
    "organizations": [{"id": "vendor", "name": "Vendor"}],
    "connections": [{"id": "wan", "endpoints": ["tv", "portal"], "internal": False, "personal": True}],
    "use_cases": [
        {"id": "watch", "name": "Streaming", "data": ["viewing"], "devices": ["tv", "portal"],
         "connections": ["wan"], "organizations": ["vendor"]},
        {"id": "update", "name": "Updates", "data": ["firmware"], "devices": ["tv", "portal"],
         "connections": ["wan"], "organizations": ["vendor"]},
    ],
}
model, diagnostics = parse_model(json.dumps(doc))
print("diagnostics:", [str(d) for d in diagnostics])
print(render_needs(asset_needs(model), "md"))

# %%
# Typos are caught with a path into the document.
broken = json.loads(json.dumps(doc))
broken["use_cases"][0]["devcies"] = ["tv"]
broken["use_cases"][1]["data"].append("firmwar")
_, diagnostics = parse_model(json.dumps(broken))
for d in diagnostics:
    print(d)

# %%
# ``"all"`` stands for every declared asset of a kind.
catalog, _ = parse_catalog(json.dumps({"rules": [{
    "id": "portal-shutdown", "name": "Portal shutdown", "group": "economic",
    "description": "The vendor retires the streaming portal.",
    "applies_to": {"devices": ["portal"], "organizations": "all"},
    "apparent_at_purchase": False, "exists_for_non_smart": False, "worst_harm": "substantial"}]}))
entry = assess(model, catalog).entries[0]
print(entry.name, sorted(entry.organizations), sorted(entry.impacted_use_cases))
