"""Hypothesis strategies for bounded random models and catalogs."""

import random

from hypothesis import strategies as st

from riskseed.model import (
    DIMENSIONS,
    Connection,
    DataCategory,
    DeviceCategory,
    EcosystemModel,
    HarmCategory,
    Organization,
    UseCase,
)
from riskseed.risks import GROUPS, WILDCARD, RiskRule

HARMS = list(HarmCategory)


def _subset(draw, pool, min_size=0):
    if not pool:
        return ()
    picked = draw(st.lists(st.sampled_from(pool), min_size=min_size, max_size=len(pool), unique=True))
    return tuple(picked)


@st.composite
def models(draw, max_use_cases=10, max_data=8, max_devices=8, max_connections=8, max_orgs=6, acyclic=True):
    n_data = draw(st.integers(1, max_data))
    n_dev = draw(st.integers(1, max_devices))
    n_org = draw(st.integers(0, max_orgs))
    n_uc = draw(st.integers(1, max_use_cases))
    n_conn = draw(st.integers(0, max_connections)) if n_dev >= 2 else 0

    data = tuple(
        DataCategory(f"D{i}", f"data {i}", harm={d: draw(st.sampled_from(HARMS)) for d in DIMENSIONS})
        for i in range(1, n_data + 1)
    )
    devices = tuple(DeviceCategory(f"A{i}", f"device {i}") for i in range(1, n_dev + 1))
    orgs = tuple(Organization(f"O{i}", f"org {i}") for i in range(1, n_org + 1))
    dev_ids = [d.id for d in devices]
    conns = []
    for i in range(1, n_conn + 1):
        ends = draw(st.lists(st.sampled_from(dev_ids), min_size=2, max_size=2, unique=True))
        conns.append(Connection(f"C{i}", tuple(ends), draw(st.booleans()), draw(st.booleans())))
    conns = tuple(conns)

    use_cases = []
    for i in range(1, n_uc + 1):
        earlier = [f"U{j}" for j in range(1, i)]
        deps = _subset(draw, earlier if acyclic else [f"U{j}" for j in range(1, n_uc + 1)])
        use_cases.append(
            UseCase(
                f"U{i}",
                f"use case {i}",
                data=_subset(draw, [d.id for d in data]),
                devices=_subset(draw, dev_ids),
                connections=_subset(draw, [c.id for c in conns]),
                organizations=_subset(draw, [o.id for o in orgs]),
                depends_on=deps,
            )
        )
    return EcosystemModel("random", data, devices, orgs, conns, tuple(use_cases))


def permuted(model: EcosystemModel, seed: int) -> EcosystemModel:
    """Same model with every collection and every id list reshuffled."""
    rnd = random.Random(seed)

    def shuffled(seq):
        seq = list(seq)
        rnd.shuffle(seq)
        return tuple(seq)

    use_cases = tuple(
        UseCase(
            uc.id,
            uc.name,
            uc.description,
            shuffled(uc.data),
            shuffled(uc.devices),
            shuffled(uc.connections),
            shuffled(uc.organizations),
            shuffled(uc.depends_on),
        )
        for uc in model.use_cases
    )
    return EcosystemModel(
        model.scenario,
        shuffled(model.data),
        shuffled(model.devices),
        shuffled(model.organizations),
        shuffled(model.connections),
        shuffled(use_cases),
        model.comments,
    )


RULE_POOL = ["alpha", "beta", "gamma", "delta", "epsilon"]


def _targets(draw, pool):
    if draw(st.integers(0, 9)) == 0:
        return WILDCARD
    return _subset(draw, pool)


@st.composite
def rules(draw, model: EcosystemModel, pool=RULE_POOL):
    rule_id = draw(st.sampled_from(pool))
    # metadata is a function of the id so duplicates never conflict
    return RiskRule(
        id=rule_id,
        name=rule_id.title(),
        group=GROUPS[pool.index(rule_id) % 3],
        description=f"{rule_id} risk",
        organizations=_targets(draw, model.organization_ids() + ["O99"]),
        devices=_targets(draw, model.device_ids() + ["A99"]),
        connections=_targets(draw, model.connection_ids() + ["C99"]),
        apparent_at_purchase=draw(st.booleans()),
        exists_for_non_smart=draw(st.booleans()),
        worst_harm=draw(st.sampled_from(HARMS)),
    )


@st.composite
def models_with_rules(draw, max_rules=12, **model_kw):
    model = draw(models(**model_kw))
    catalog = draw(st.lists(rules(model), max_size=max_rules))
    return model, catalog


CORRUPTIONS = ["none", "dangling", "wrong_kind", "dup_id", "dup_ref", "self_loop", "bad_endpoint", "no_use_cases"]


@st.composite
def corrupted_models(draw, **model_kw):
    """Random models, some with one deliberately broken structural premise."""
    from dataclasses import replace

    model = draw(models(acyclic=False, **model_kw))
    kind = draw(st.sampled_from(CORRUPTIONS))
    ucs = list(model.use_cases)
    if kind == "dangling":
        ucs[0] = replace(ucs[0], data=ucs[0].data + ("D99",))
    elif kind == "wrong_kind":
        ucs[0] = replace(ucs[0], devices=tuple(d for d in ucs[0].devices if d != "D1") + ("D1",))
    elif kind == "dup_id":
        return replace(model, devices=model.devices + (DeviceCategory(model.data[0].id, "clash"),))
    elif kind == "dup_ref" and ucs[0].data:
        ucs[0] = replace(ucs[0], data=ucs[0].data + ucs[0].data[:1])
    elif kind == "self_loop":
        a = model.devices[0].id
        return replace(model, connections=model.connections + (Connection("CX", (a, a), False, False),))
    elif kind == "bad_endpoint":
        a = model.devices[0].id
        return replace(model, connections=model.connections + (Connection("CX", (a, "A99"), False, False),))
    elif kind == "no_use_cases":
        return replace(model, use_cases=())
    return replace(model, use_cases=tuple(ucs))
