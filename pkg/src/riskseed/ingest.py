"""Reading and writing model and catalog documents (strict JSON)."""

from __future__ import annotations

import json
from typing import Any

from jsonschema import Draft202012Validator

from .model import (
    DIMENSIONS,
    ID_PATTERN,
    Connection,
    DataCategory,
    DeviceCategory,
    Diagnostic,
    EcosystemModel,
    HarmCategory,
    Organization,
    ThreatAction,
    UseCase,
    annotation_maxima,
    error,
    has_errors,
    sort_diagnostics,
    validate_model,
    warning,
)
from .risks import GROUPS, WILDCARD, RiskCatalog, RiskRule, check_duplicates

_ID = {"type": "string", "pattern": ID_PATTERN}
_ID_LIST = {"type": "array", "items": _ID}
_TEXT = {"type": "string"}
_HARM = {"enum": [h.value for h in HarmCategory]}


def _entity(**extra) -> dict:
    props = {"id": _ID, "name": _TEXT, "description": _TEXT}
    props.update(extra)
    return {
        "type": "object",
        "properties": props,
        "required": ["id", "name"],
        "additionalProperties": False,
    }


MODEL_SCHEMA: dict[str, Any] = {
    "type": "object",
    "properties": {
        "version": {"const": 1},
        "scenario": _TEXT,
        "comments": {"type": "array", "items": _TEXT},
        "data": {
            "type": "array",
            "items": _entity(
                harm={
                    "type": "object",
                    "properties": {d.value: _HARM for d in DIMENSIONS},
                    "additionalProperties": False,
                },
                annotations={
                    "type": "array",
                    "items": {
                        "type": "object",
                        "properties": {"action": {"enum": [a.value for a in ThreatAction]}, "harm": _HARM},
                        "required": ["action", "harm"],
                        "additionalProperties": False,
                    },
                },
            ),
        },
        "devices": {"type": "array", "items": _entity()},
        "organizations": {"type": "array", "items": _entity()},
        "connections": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "id": _ID,
                    "description": _TEXT,
                    "endpoints": {"type": "array", "items": _ID, "minItems": 2, "maxItems": 2},
                    "internal": {"type": "boolean"},
                    "personal": {"type": "boolean"},
                },
                "required": ["id", "endpoints", "internal", "personal"],
                "additionalProperties": False,
            },
        },
        "use_cases": {
            "type": "array",
            "minItems": 1,
            "items": _entity(
                data=_ID_LIST,
                devices=_ID_LIST,
                connections=_ID_LIST,
                organizations=_ID_LIST,
                depends_on=_ID_LIST,
            ),
        },
    },
    "required": ["use_cases"],
    "additionalProperties": False,
}

_APPLIES = {"anyOf": [{"const": WILDCARD}, _ID_LIST]}

CATALOG_SCHEMA: dict[str, Any] = {
    "type": "object",
    "properties": {
        "version": {"const": 1},
        "comments": {"type": "array", "items": _TEXT},
        "rules": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "id": _ID,
                    "name": _TEXT,
                    "group": {"enum": list(GROUPS)},
                    "description": _TEXT,
                    "reference": _TEXT,
                    "applies_to": {
                        "type": "object",
                        "properties": {
                            "organizations": _APPLIES,
                            "devices": _APPLIES,
                            "connections": _APPLIES,
                        },
                        "additionalProperties": False,
                    },
                    "apparent_at_purchase": {"type": "boolean"},
                    "exists_for_non_smart": {"type": "boolean"},
                    "worst_harm": _HARM,
                },
                "required": [
                    "id",
                    "name",
                    "group",
                    "description",
                    "applies_to",
                    "apparent_at_purchase",
                    "exists_for_non_smart",
                ],
                "additionalProperties": False,
            },
        },
    },
    "required": ["rules"],
    "additionalProperties": False,
}

_MODEL_VALIDATOR = Draft202012Validator(MODEL_SCHEMA)
_CATALOG_VALIDATOR = Draft202012Validator(CATALOG_SCHEMA)


class _DuplicateKey(ValueError):
    pass


def _no_duplicate_keys(pairs):
    out = {}
    for key, value in pairs:
        if key in out:
            raise _DuplicateKey(f"duplicate key {key!r}")
        out[key] = value
    return out


def _reject_constant(name):
    raise ValueError(f"non-standard JSON constant {name}")


def _load(text: str | bytes) -> tuple[Any, list[Diagnostic]]:
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            return None, [error("E-PARSE", (), f"input is not UTF-8: {exc.reason} at byte {exc.start}", ())]
    try:
        doc = json.loads(text, object_pairs_hook=_no_duplicate_keys, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        return None, [error("E-PARSE", (), f"malformed JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})", ())]
    except (ValueError, RecursionError) as exc:
        return None, [error("E-PARSE", (), f"malformed JSON: {exc}", ())]
    return doc, []


def _schema_errors(validator: Draft202012Validator, doc: Any) -> list[Diagnostic]:
    found = []
    for err in validator.iter_errors(doc):
        path = tuple(err.absolute_path)
        found.append(error("E-SCHEMA", tuple(str(p) for p in path), err.message, path))
    return found


def parse_model(text: str | bytes) -> tuple[EcosystemModel | None, list[Diagnostic]]:
    """Parse and validate a model document.

    Returns ``(model, diagnostics)``. The model is ``None`` whenever an
    error-severity diagnostic was found; warnings accompany a usable model.
    """
    doc, found = _load(text)
    if found:
        return None, found
    found = _schema_errors(_MODEL_VALIDATOR, doc)
    if found:
        return None, sort_diagnostics(found)

    data = []
    for i, raw in enumerate(doc.get("data", [])):
        dc, notes = _data_category(raw, i)
        data.append(dc)
        found.extend(notes)

    model = EcosystemModel(
        scenario=doc.get("scenario", ""),
        data=tuple(data),
        devices=tuple(DeviceCategory(d["id"], d["name"], d.get("description", "")) for d in doc.get("devices", [])),
        organizations=tuple(
            Organization(o["id"], o["name"], o.get("description", "")) for o in doc.get("organizations", [])
        ),
        connections=tuple(
            Connection(c["id"], tuple(c["endpoints"]), c["internal"], c["personal"], c.get("description", ""))
            for c in doc.get("connections", [])
        ),
        use_cases=tuple(
            UseCase(
                u["id"],
                u["name"],
                u.get("description", ""),
                data=tuple(u.get("data", [])),
                devices=tuple(u.get("devices", [])),
                connections=tuple(u.get("connections", [])),
                organizations=tuple(u.get("organizations", [])),
                depends_on=tuple(u.get("depends_on", [])),
            )
            for u in doc["use_cases"]
        ),
        comments=tuple(doc.get("comments", [])),
    )
    found.extend(validate_model(model))
    found = sort_diagnostics(found)
    return (None if has_errors(found) else model), found


def _data_category(raw: dict, index: int) -> tuple[DataCategory, list[Diagnostic]]:
    annotations = tuple((ThreatAction(a["action"]), HarmCategory(a["harm"])) for a in raw.get("annotations", []))
    derived = annotation_maxima(annotations)
    given = {d: HarmCategory(raw["harm"][d.value]) for d in DIMENSIONS if d.value in raw.get("harm", {})}
    harm = {}
    notes = []
    for dim in DIMENSIONS:
        if dim in given:
            harm[dim] = given[dim]
        elif dim in derived:
            harm[dim] = derived[dim]
        else:
            harm[dim] = HarmCategory.NEGLIGIBLE
            notes.append(
                warning(
                    "W-DEFAULT-HARM",
                    (raw["id"], dim.value),
                    f"no {dim.value} harm given for {raw['id']}; assuming negligible",
                    ("data", index),
                )
            )
    dc = DataCategory(raw["id"], raw["name"], raw.get("description", ""), harm, annotations)
    return dc, notes


def parse_catalog(text: str | bytes) -> tuple[RiskCatalog | None, list[Diagnostic]]:
    """Parse a risk catalog document; same return convention as :func:`parse_model`."""
    doc, found = _load(text)
    if found:
        return None, found
    found = _schema_errors(_CATALOG_VALIDATOR, doc)
    if found:
        return None, sort_diagnostics(found)

    rules = []
    for i, raw in enumerate(doc["rules"]):
        applies = raw["applies_to"]
        targets = {}
        for kind in ("organizations", "devices", "connections"):
            value = applies.get(kind, [])
            targets[kind] = WILDCARD if value == WILDCARD else tuple(value)
        if all(v == () for v in targets.values()):
            found.append(
                error("E-SCHEMA", (raw["id"],), f"rule {raw['id']} applies to no asset", ("rules", i, "applies_to"))
            )
        if "worst_harm" in raw:
            worst = HarmCategory(raw["worst_harm"])
        else:
            worst = HarmCategory.SUBSTANTIAL
            found.append(
                warning("W-DEFAULT-HARM", (raw["id"],), f"rule {raw['id']} has no worst_harm; assuming substantial",
                        ("rules", i))
            )
        rules.append(
            RiskRule(
                id=raw["id"],
                name=raw["name"],
                group=raw["group"],
                description=raw["description"],
                reference=raw.get("reference", ""),
                organizations=targets["organizations"],
                devices=targets["devices"],
                connections=targets["connections"],
                apparent_at_purchase=raw["apparent_at_purchase"],
                exists_for_non_smart=raw["exists_for_non_smart"],
                worst_harm=worst,
            )
        )
    found.extend(check_duplicates(rules))
    found = sort_diagnostics(found)
    catalog = RiskCatalog(tuple(rules), comments=tuple(doc.get("comments", [])))
    return (None if has_errors(found) else catalog), found


def canonical_json(doc: Any) -> str:
    """Sorted keys, two-space indent, LF line endings, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def model_to_doc(model: EcosystemModel) -> dict:
    doc: dict[str, Any] = {
        "version": 1,
        "scenario": model.scenario,
        "data": [],
        "devices": [{"id": d.id, "name": d.name, "description": d.description} for d in model.devices],
        "organizations": [{"id": o.id, "name": o.name, "description": o.description} for o in model.organizations],
        "connections": [
            {
                "id": c.id,
                "description": c.description,
                "endpoints": list(c.endpoints),
                "internal": c.internal,
                "personal": c.personal,
            }
            for c in model.connections
        ],
        "use_cases": [
            {
                "id": u.id,
                "name": u.name,
                "description": u.description,
                "data": list(u.data),
                "devices": list(u.devices),
                "connections": list(u.connections),
                "organizations": list(u.organizations),
                "depends_on": list(u.depends_on),
            }
            for u in model.use_cases
        ],
    }
    for dc in model.data:
        entry = {
            "id": dc.id,
            "name": dc.name,
            "description": dc.description,
            "harm": {d.value: dc.harm[d].value for d in DIMENSIONS},
        }
        if dc.annotations:
            entry["annotations"] = [{"action": a.value, "harm": h.value} for a, h in dc.annotations]
        doc["data"].append(entry)
    if model.comments:
        doc["comments"] = list(model.comments)
    return doc


def catalog_to_doc(catalog: RiskCatalog) -> dict:
    def targets(value):
        return WILDCARD if value == WILDCARD else list(value)

    doc: dict[str, Any] = {
        "version": 1,
        "rules": [
            {
                "id": r.id,
                "name": r.name,
                "group": r.group,
                "description": r.description,
                "reference": r.reference,
                "applies_to": {
                    "organizations": targets(r.organizations),
                    "devices": targets(r.devices),
                    "connections": targets(r.connections),
                },
                "apparent_at_purchase": r.apparent_at_purchase,
                "exists_for_non_smart": r.exists_for_non_smart,
                "worst_harm": r.worst_harm.value,
            }
            for r in catalog.rules
        ],
    }
    if catalog.comments:
        doc["comments"] = list(catalog.comments)
    return doc


def serialize_model(model: EcosystemModel) -> str:
    return canonical_json(model_to_doc(model))


def serialize_catalog(catalog: RiskCatalog) -> str:
    return canonical_json(catalog_to_doc(catalog))
