"""Applying a risk catalog to an ecosystem model."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence, Union

from .model import Diagnostic, EcosystemModel, HarmCategory, error

GROUPS = ("compliance", "economic", "operational")
WILDCARD = "all"

Targets = Union[str, tuple[str, ...]]
KINDS = ("organizations", "devices", "connections")


@dataclass(frozen=True)
class RiskRule:
    id: str
    name: str
    group: str
    description: str
    organizations: Targets = ()
    devices: Targets = ()
    connections: Targets = ()
    reference: str = ""
    apparent_at_purchase: bool = False
    exists_for_non_smart: bool = False
    worst_harm: HarmCategory = HarmCategory.SUBSTANTIAL

    def __post_init__(self):
        if self.group not in GROUPS:
            raise ValueError(f"unknown risk group {self.group!r}")

    @property
    def metadata(self) -> tuple[str, str, str]:
        return (self.name, self.description, self.group)

    @property
    def is_long_term(self) -> bool:
        return not (self.apparent_at_purchase or self.exists_for_non_smart)


@dataclass(frozen=True)
class RiskCatalog:
    rules: tuple[RiskRule, ...] = ()
    comments: tuple[str, ...] = ()

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)


@dataclass(frozen=True)
class Match:
    """A rule together with the model assets it applies to."""

    rule: RiskRule
    organizations: frozenset[str]
    devices: frozenset[str]
    connections: frozenset[str]

    @property
    def is_empty(self) -> bool:
        return not (self.organizations or self.devices or self.connections)

    def assets(self) -> frozenset[str]:
        return self.organizations | self.devices | self.connections


@dataclass(frozen=True)
class RegisterEntry:
    rule: RiskRule
    organizations: frozenset[str]
    devices: frozenset[str]
    connections: frozenset[str]
    impacted_use_cases: frozenset[str] = frozenset()

    @property
    def id(self) -> str:
        return self.rule.id

    @property
    def name(self) -> str:
        return self.rule.name

    @property
    def group(self) -> str:
        return self.rule.group

    @property
    def worst_harm(self) -> HarmCategory:
        return self.rule.worst_harm

    def as_match(self) -> Match:
        return Match(self.rule, self.organizations, self.devices, self.connections)


@dataclass(frozen=True)
class RiskRegister:
    entries: tuple[RegisterEntry, ...] = ()

    @property
    def summary(self) -> HarmCategory:
        return register_summary(self)

    def group(self, name: str) -> list[RegisterEntry]:
        return [e for e in self.entries if e.group == name]

    def get(self, rule_id: str) -> RegisterEntry | None:
        for entry in self.entries:
            if entry.id == rule_id:
                return entry
        return None

    def __len__(self):
        return len(self.entries)


class ConsolidationError(ValueError):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("; ".join(d.message for d in diagnostics))


def check_duplicates(rules: Iterable[RiskRule]) -> list[Diagnostic]:
    """E-DUP for every rule whose id was seen earlier with other metadata."""
    first: dict[str, RiskRule] = {}
    found = []
    for i, rule in enumerate(rules):
        seen = first.setdefault(rule.id, rule)
        if seen.metadata != rule.metadata:
            fields = [f for f, a, b in zip(("name", "description", "group"), seen.metadata, rule.metadata) if a != b]
            found.append(
                error("E-DUP", (rule.id,), f"rule {rule.id} is redefined with a different {', '.join(fields)}",
                      ("rules", i))
            )
    return found


def filter_candidates(catalog: RiskCatalog | Iterable[RiskRule]) -> list[RiskRule]:
    """Drop rules that are apparent at purchase or also exist for non-smart devices."""
    return [r for r in catalog if r.is_long_term]


def _expand(targets: Targets, declared: Sequence[str]) -> frozenset[str]:
    if targets == WILDCARD:
        return frozenset(declared)
    return frozenset(targets) & frozenset(declared)


def match_assets(model: EcosystemModel, rule: RiskRule) -> Match:
    return Match(
        rule,
        _expand(rule.organizations, model.organization_ids()),
        _expand(rule.devices, model.device_ids()),
        _expand(rule.connections, model.connection_ids()),
    )


def consolidate(matches: Iterable[Match], model: EcosystemModel | None = None) -> RiskRegister:
    """Merge matches sharing a rule id into one register entry each.

    Matched sets are united and the worst harm is the maximum over the
    merged parts. Entries are ordered by group, then by first occurrence.
    With a model, each entry also gets its impacted use cases.
    """
    matches = list(matches)
    problems = check_duplicates(m.rule for m in matches)
    if problems:
        raise ConsolidationError(problems)

    merged: dict[str, RegisterEntry] = {}
    for m in matches:
        prev = merged.get(m.rule.id)
        if prev is None:
            merged[m.rule.id] = RegisterEntry(m.rule, m.organizations, m.devices, m.connections)
            continue
        rule = prev.rule
        if m.rule.worst_harm > rule.worst_harm:
            rule = replace(rule, worst_harm=m.rule.worst_harm)
        merged[m.rule.id] = RegisterEntry(
            rule,
            prev.organizations | m.organizations,
            prev.devices | m.devices,
            prev.connections | m.connections,
        )

    entries = sorted(merged.values(), key=lambda e: GROUPS.index(e.group))
    if model is not None:
        entries = [replace(e, impacted_use_cases=impacted_use_cases(model, e.as_match())) for e in entries]
    return RiskRegister(tuple(entries))


def impacted_use_cases(model: EcosystemModel, matched: Match) -> frozenset[str]:
    """Use cases touching a matched asset, closed under dependency edges.

    A use case that depends on an impacted use case is impacted too.
    """
    hit = matched.assets()
    impacted = {uc.id for uc in model.use_cases if uc.assets() & hit}
    changed = True
    while changed:
        changed = False
        for uc in model.use_cases:
            if uc.id not in impacted and impacted.intersection(uc.depends_on):
                impacted.add(uc.id)
                changed = True
    return frozenset(impacted)


def register_summary(register: RiskRegister) -> HarmCategory:
    return max((e.worst_harm for e in register.entries), default=HarmCategory.NEGLIGIBLE)


def assess(model: EcosystemModel, catalog: RiskCatalog | Iterable[RiskRule]) -> RiskRegister:
    """Filter, match, drop inapplicable rules, consolidate and compute impact."""
    matches = [match_assets(model, rule) for rule in filter_candidates(catalog)]
    return consolidate((m for m in matches if not m.is_empty), model)
