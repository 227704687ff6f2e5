"""
Protection needs of the smart fridge
====================================

Harm categories become protection levels per dimension, and every asset
inherits the highest level of any data it shares a use case with.
"""

# %%
# Load the bundled scenario and compute the needs of every data category,
# asset and use case.
from dataclasses import replace

from riskseed import Dimension, HarmCategory, asset_needs, load_bundled, render_needs

model, catalog = load_bundled()
needs = asset_needs(model)
print(render_needs(needs, "md"))

# %%
# The vendor cloud A3 handles only moderately sensitive sensor and app
# data in most use cases, but the update use case puts operating system
# data on it as well, so it ends up at ``high`` everywhere.
for uc in model.use_cases:
    if "A3" in uc.devices:
        print(uc.id, uc.name, "data:", ", ".join(uc.data))
print("A3 ->", [level.value for level in needs.asset("A3")])

# %%
# A clinic cooling medication would judge a manipulated update as
# threatening. Raising one harm value is enough to lift every asset on the
# update path to ``very_high`` integrity.
d6 = next(d for d in model.data if d.id == "D6")
clinic_d6 = replace(d6, harm={**d6.harm, Dimension.INTEGRITY: HarmCategory.THREATENING})
clinic = replace(model, data=tuple(clinic_d6 if d.id == "D6" else d for d in model.data))
clinic_needs = asset_needs(clinic)
for asset in ("A1", "A3", "C3", "O2", "A2"):
    print(asset, clinic_needs.assets[asset][Dimension.INTEGRITY].value)
