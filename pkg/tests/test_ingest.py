import json
import random

import pytest

from riskseed import bundled_path
from riskseed.ingest import (
    canonical_json,
    parse_catalog,
    parse_model,
    serialize_catalog,
    serialize_model,
)
from riskseed.model import Dimension, HarmCategory

BUNDLED = ["model.json", "model-reduced-panel.json", "catalog.json"]


def minimal_doc():
    return {
        "data": [{"id": "D1", "name": "d", "harm": {"integrity": "limited", "availability": "limited",
                                                     "confidentiality": "limited"}}],
        "devices": [{"id": "A1", "name": "a"}],
        "use_cases": [{"id": "U1", "name": "u", "data": ["D1"], "devices": ["A1"]}],
    }


def rule_doc(**over):
    rule = {
        "id": "privacy",
        "name": "Privacy",
        "group": "compliance",
        "description": "x",
        "applies_to": {"devices": ["A1"]},
        "apparent_at_purchase": False,
        "exists_for_non_smart": False,
        "worst_harm": "limited",
    }
    rule.update(over)
    return rule


def resolve(doc, path):
    node = doc
    for part in path:
        node = node[part]
    return node


def test_bundled_model_counts(fridge_model):
    m = fridge_model
    assert (len(m.use_cases), len(m.devices), len(m.data), len(m.organizations), len(m.connections)) == (8, 5, 6, 5, 5)
    assert m.use_case_ids() == [f"U{i}" for i in range(1, 9)]
    assert m.use_case("U4").devices == ("A1", "A2", "A4", "A5")


def test_bundled_catalog_counts(fridge_catalog):
    groups = [r.group for r in fridge_catalog]
    assert len(groups) == 14
    assert (groups.count("compliance"), groups.count("economic"), groups.count("operational")) == (5, 4, 5)


def test_minimal_document():
    model, found = parse_model(json.dumps(minimal_doc()))
    assert model is not None
    assert found == []


def test_harm_outside_enumeration():
    doc = minimal_doc()
    doc["data"][0]["harm"]["availability"] = "catastrophic"
    model, found = parse_model(json.dumps(doc))
    assert model is None
    assert [(d.code, d.path) for d in found] == [("E-SCHEMA", ("data", 0, "harm", "availability"))]
    assert found[0].where() == "data[0].harm.availability"


def test_unknown_key_rejected():
    doc = minimal_doc()
    doc["devices"][0]["colour"] = "white"
    model, found = parse_model(json.dumps(doc))
    assert model is None and [d.code for d in found] == ["E-SCHEMA"]
    assert found[0].path == ("devices", 0)


@pytest.mark.parametrize("text", ["", "{", "[1, 2]", "null", b"\xff\xfe", '{"a": 1, "a": 2}', '{"use_cases": NaN}'])
def test_malformed_inputs(text):
    model, found = parse_model(text)
    assert model is None
    assert found and all(d.is_error for d in found)
    assert found[0].code in {"E-PARSE", "E-SCHEMA"}


def test_validation_findings_are_merged():
    doc = minimal_doc()
    doc["use_cases"][0]["data"].append("D9")
    model, found = parse_model(json.dumps(doc))
    assert model is None
    assert [(d.code, d.location, d.path) for d in found] == [("E-REF", ("U1", "D9"), ("use_cases", 0, "data", 1))]


def test_missing_harm_defaults_with_warning():
    doc = minimal_doc()
    del doc["data"][0]["harm"]["integrity"]
    model, found = parse_model(json.dumps(doc))
    assert model.data[0].harm[Dimension.INTEGRITY] is HarmCategory.NEGLIGIBLE
    assert [(d.code, d.location) for d in found] == [("W-DEFAULT-HARM", ("D1", "integrity"))]


def test_harm_derived_from_annotations():
    doc = minimal_doc()
    doc["data"][0]["harm"] = {"integrity": "limited"}
    doc["data"][0]["annotations"] = [
        {"action": "interception", "harm": "substantial"},
        {"action": "interruption", "harm": "limited"},
        {"action": "interruption", "harm": "negligible"},
    ]
    model, found = parse_model(json.dumps(doc))
    assert found == []
    harm = model.data[0].harm
    assert harm[Dimension.CONFIDENTIALITY] is HarmCategory.SUBSTANTIAL
    assert harm[Dimension.AVAILABILITY] is HarmCategory.LIMITED
    again, _ = parse_model(serialize_model(model))
    assert again == model


def test_conflicting_annotation():
    doc = minimal_doc()
    doc["data"][0]["annotations"] = [{"action": "modification", "harm": "threatening"}]
    model, found = parse_model(json.dumps(doc))
    assert model is None
    assert [d.code for d in found] == ["E-SCHEMA"]


def test_version_field():
    doc = minimal_doc()
    doc["version"] = 1
    assert parse_model(json.dumps(doc))[0] is not None
    doc["version"] = 2
    assert parse_model(json.dumps(doc))[0] is None


def test_catalog_conflicting_duplicate():
    text = json.dumps({"rules": [rule_doc(), rule_doc(description="other")]})
    catalog, found = parse_catalog(text)
    assert catalog is None
    assert [(d.code, d.path) for d in found] == [("E-DUP", ("rules", 1))]


def test_catalog_identical_duplicate_is_legal():
    text = json.dumps({"rules": [rule_doc(), rule_doc(applies_to={"devices": ["A2"]}, worst_harm="substantial")]})
    catalog, found = parse_catalog(text)
    assert found == [] and len(catalog) == 2


def test_empty_catalog():
    catalog, found = parse_catalog('{"rules": []}')
    assert found == [] and len(catalog) == 0


def test_catalog_wildcard_and_defaults():
    rule = rule_doc(applies_to={"organizations": "all"})
    del rule["worst_harm"]
    catalog, found = parse_catalog(json.dumps({"rules": [rule]}))
    assert catalog.rules[0].organizations == "all"
    assert catalog.rules[0].devices == ()
    assert catalog.rules[0].worst_harm is HarmCategory.SUBSTANTIAL
    assert [d.code for d in found] == ["W-DEFAULT-HARM"]


def test_catalog_rule_without_targets():
    catalog, found = parse_catalog(json.dumps({"rules": [rule_doc(applies_to={})]}))
    assert catalog is None and [d.code for d in found] == ["E-SCHEMA"]


def test_catalog_bad_group():
    catalog, found = parse_catalog(json.dumps({"rules": [rule_doc(group="legal")]}))
    assert catalog is None and found[0].path == ("rules", 0, "group")


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_files_are_canonical(name):
    text = bundled_path(name).read_text(encoding="utf-8")
    if name.startswith("catalog"):
        value, _ = parse_catalog(text)
        out = serialize_catalog(value)
        assert parse_catalog(out)[0] == value
    else:
        value, _ = parse_model(text)
        out = serialize_model(value)
        assert parse_model(out)[0] == value
    assert out == text
    assert "\r" not in out and out.endswith("\n")


def test_canonical_json_sorted_two_space():
    assert canonical_json({"b": [1], "a": "é"}) == '{\n  "a": "é",\n  "b": [\n    1\n  ]\n}\n'


def _mutations(seed: int, base: str, count: int):
    rnd = random.Random(seed)
    for _ in range(count):
        chars = list(base)
        for _ in range(rnd.randint(1, 4)):
            i = rnd.randrange(len(chars))
            op = rnd.randrange(3)
            if op == 0:
                del chars[i]
            elif op == 1:
                chars.insert(i, rnd.choice('{}[]",:0aAtrue \n'))
            else:
                chars[i] = rnd.choice('{}[]",:0aAtrue \n')
        yield "".join(chars)


@pytest.mark.parametrize("parse", [parse_model, parse_catalog])
def test_mutated_documents_never_crash_and_paths_resolve(parse):
    base = bundled_path("model.json" if parse is parse_model else "catalog.json").read_text()
    for text in _mutations(7, base, 300):
        value, found = parse(text)
        assert (value is None) == any(d.is_error for d in found)
        try:
            doc = json.loads(text)
        except ValueError:
            continue
        for d in found:
            if d.path is not None:
                resolve(doc, d.path)
