"""
Consolidated long-term risk register
====================================

Apply the bundled catalog to the bundled model: filter out risks that are
visible at purchase or shared with conventional fridges, match each rule
against the declared assets and merge rules that share an id.
"""

# %%
from riskseed import RiskRule, assess, filter_candidates, load_bundled, render_register

model, catalog = load_bundled()
register = assess(model, catalog)
print(render_register(register, "md"))

# %%
# The filter is driven by two analyst-set flags on each rule. A virus
# shipped with the firmware is visible at purchase; a worn-out compressor
# happens to any fridge. Neither survives.
extra = [
    RiskRule("preinstalled-malware", "Preinstalled malware", "operational", "Firmware ships infected.",
             devices=("A1",), apparent_at_purchase=True),
    RiskRule("compressor-wear", "Compressor wear", "operational", "The cooling unit ages.",
             devices=("A1",), exists_for_non_smart=True),
]
kept = filter_candidates(list(catalog) + extra)
print(len(kept), "of", len(catalog) + len(extra), "rules are long-term risks")

# %%
# Rules may be written per asset and merged afterwards. Two partial
# licensing rules end up as one register row with the union of devices.
parts = [
    RiskRule("licensing", "Licensing", "economic", "Revenue model changes.", devices=("A1",)),
    RiskRule("licensing", "Licensing", "economic", "Revenue model changes.", devices=("A3", "A4")),
]
merged = assess(model, parts)
print(sorted(merged.entries[0].devices))
print("worst harm:", register.summary.value)
