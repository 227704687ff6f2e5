"""Protection needs: harm-to-need mapping and maximum-principle inheritance."""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    DIMENSIONS,
    Diagnostic,
    Dimension,
    EcosystemModel,
    HarmCategory,
    ProtectionLevel,
    warning,
)

NeedVector = dict[Dimension, ProtectionLevel]

_HARM_TO_NEED = {
    HarmCategory.NEGLIGIBLE: ProtectionLevel.NORMAL,
    HarmCategory.LIMITED: ProtectionLevel.NORMAL,
    HarmCategory.SUBSTANTIAL: ProtectionLevel.HIGH,
    HarmCategory.THREATENING: ProtectionLevel.VERY_HIGH,
}


def map_harm_to_need(harm: HarmCategory) -> ProtectionLevel:
    return _HARM_TO_NEED[HarmCategory(harm)]


def _floor() -> NeedVector:
    return {d: ProtectionLevel.NORMAL for d in DIMENSIONS}


def _raise_to(target: NeedVector, other: NeedVector) -> None:
    for d in DIMENSIONS:
        if other[d] > target[d]:
            target[d] = other[d]


@dataclass(frozen=True)
class NeedsAssignment:
    """Protection level per dimension for every data category, asset and use case.

    Each mapping keeps the model's declaration order; ``assets`` lists
    devices, then connections, then organizations.
    """

    data: dict[str, NeedVector]
    assets: dict[str, NeedVector]
    use_cases: dict[str, NeedVector]

    def asset(self, asset_id: str) -> tuple[ProtectionLevel, ...]:
        return tuple(self.assets[asset_id][d] for d in DIMENSIONS)


def data_needs(model: EcosystemModel) -> dict[str, NeedVector]:
    return {dc.id: {d: map_harm_to_need(dc.harm[d]) for d in DIMENSIONS} for dc in model.data}


def asset_needs(model: EcosystemModel) -> NeedsAssignment:
    """Inherit data needs onto every asset and use case.

    An asset handles a data category when some use case lists both; it gets
    the maximum need over everything it handles, and ``normal`` if it
    handles nothing.
    """
    per_data = data_needs(model)
    assets = {a: _floor() for a in model.asset_ids()}
    use_cases = {}
    for uc in model.use_cases:
        vector = _floor()
        for data_id in uc.data:
            _raise_to(vector, per_data[data_id])
        use_cases[uc.id] = vector
        for asset_id in uc.assets():
            _raise_to(assets[asset_id], vector)
    return NeedsAssignment(per_data, assets, use_cases)


def personal_connection_lint(model: EcosystemModel, needs: NeedsAssignment) -> list[Diagnostic]:
    found = []
    for i, conn in enumerate(model.connections):
        level = needs.assets[conn.id][Dimension.CONFIDENTIALITY]
        if conn.personal and level < ProtectionLevel.HIGH:
            found.append(
                warning(
                    "W-PERSONAL",
                    (conn.id,),
                    f"connection {conn.id} may carry personal data but its confidentiality need is {level.value}",
                    ("connections", i),
                )
            )
    return found
