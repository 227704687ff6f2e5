"""Domain types for ecosystem models and format-independent structural validation."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator

ID_PATTERN = r"^[A-Za-z][A-Za-z0-9_-]*$"
_ID_RE = re.compile(ID_PATTERN)


class _OrderedEnum(str, Enum):
    """String enum ordered by declaration position rather than by text."""

    @property
    def rank(self) -> int:
        return list(type(self)).index(self)

    def __lt__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.rank < other.rank

    def __le__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.rank <= other.rank

    def __gt__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.rank > other.rank

    def __ge__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.rank >= other.rank

    def __str__(self) -> str:
        return self.value

    __hash__ = str.__hash__


class ProtectionLevel(_OrderedEnum):
    NORMAL = "normal"
    HIGH = "high"
    VERY_HIGH = "very_high"


class HarmCategory(_OrderedEnum):
    NEGLIGIBLE = "negligible"
    LIMITED = "limited"
    SUBSTANTIAL = "substantial"
    THREATENING = "threatening"


class Dimension(str, Enum):
    INTEGRITY = "integrity"
    AVAILABILITY = "availability"
    CONFIDENTIALITY = "confidentiality"

    def __str__(self) -> str:
        return self.value


class ThreatAction(str, Enum):
    INTERRUPTION = "interruption"
    INTERCEPTION = "interception"
    MODIFICATION = "modification"
    FABRICATION = "fabrication"

    @property
    def dimension(self) -> Dimension:
        return _ACTION_DIMENSION[self]

    def __str__(self) -> str:
        return self.value


_ACTION_DIMENSION = {
    ThreatAction.INTERRUPTION: Dimension.AVAILABILITY,
    ThreatAction.INTERCEPTION: Dimension.CONFIDENTIALITY,
    ThreatAction.MODIFICATION: Dimension.INTEGRITY,
    ThreatAction.FABRICATION: Dimension.INTEGRITY,
}

DIMENSIONS: tuple[Dimension, ...] = tuple(Dimension)


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"

    def __str__(self) -> str:
        return self.value


# closed set of diagnostic codes
DIAGNOSTIC_CODES = frozenset(
    {
        "E-PARSE",
        "E-SCHEMA",
        "E-DUP",
        "E-REF",
        "E-CYCLE",
        "W-ENDPOINT",
        "W-UNUSED",
        "W-DEFAULT-HARM",
        "W-PERSONAL",
    }
)


@dataclass(frozen=True)
class Diagnostic:
    """A validation finding.

    ``location`` is a path of model ids (``("U4", "C4")``); ``path`` is the
    matching position in the source document, when there is one.
    """

    severity: Severity
    code: str
    location: tuple[str, ...]
    message: str
    path: tuple[str | int, ...] | None = None

    def __post_init__(self):
        if self.code not in DIAGNOSTIC_CODES:
            raise ValueError(f"unknown diagnostic code {self.code!r}")

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    @property
    def key(self) -> tuple:
        """Identity of the finding independent of document position."""
        return (self.severity.value, self.code, self.location)

    def where(self) -> str:
        if self.path is not None:
            return format_path(self.path)
        return "/".join(self.location) or "$"

    def __str__(self) -> str:
        return f"{self.severity.value.upper()} {self.code} {self.where()}: {self.message}"


def error(code: str, location: Iterable[str], message: str, path=None) -> Diagnostic:
    return Diagnostic(Severity.ERROR, code, tuple(location), message, _tuple_or_none(path))


def warning(code: str, location: Iterable[str], message: str, path=None) -> Diagnostic:
    return Diagnostic(Severity.WARNING, code, tuple(location), message, _tuple_or_none(path))


def _tuple_or_none(path):
    return None if path is None else tuple(path)


def format_path(path: Iterable[str | int]) -> str:
    """Render ``("data", 0, "harm")`` as ``data[0].harm``; the root is ``$``."""
    out = ""
    for part in path:
        if isinstance(part, int):
            out += f"[{part}]"
        else:
            out += f".{part}" if out else part
    return out or "$"


def has_errors(diagnostics: Iterable[Diagnostic]) -> bool:
    return any(d.is_error for d in diagnostics)


_NATURAL_RE = re.compile(r"^(.*?)(\d*)$", re.S)


def natural_key(token: str) -> tuple:
    """Sort key ordering ``A2`` before ``A10``."""
    prefix, digits = _NATURAL_RE.match(token).groups()
    return (prefix, int(digits) if digits else -1, token)


def natural_sorted(tokens: Iterable[str]) -> list[str]:
    return sorted(tokens, key=natural_key)


def is_valid_id(token) -> bool:
    return isinstance(token, str) and _ID_RE.match(token) is not None


@dataclass(frozen=True)
class DataCategory:
    id: str
    name: str
    description: str = ""
    harm: dict[Dimension, HarmCategory] = field(default_factory=dict)
    annotations: tuple[tuple[ThreatAction, HarmCategory], ...] = ()

    def __hash__(self):
        return hash(self.id)


@dataclass(frozen=True)
class DeviceCategory:
    id: str
    name: str
    description: str = ""


@dataclass(frozen=True)
class Organization:
    id: str
    name: str
    description: str = ""


@dataclass(frozen=True)
class Connection:
    id: str
    endpoints: tuple[str, str]
    internal: bool
    personal: bool
    description: str = ""


@dataclass(frozen=True)
class UseCase:
    id: str
    name: str
    description: str = ""
    data: tuple[str, ...] = ()
    devices: tuple[str, ...] = ()
    connections: tuple[str, ...] = ()
    organizations: tuple[str, ...] = ()
    depends_on: tuple[str, ...] = ()

    def assets(self) -> frozenset[str]:
        return frozenset(self.devices) | frozenset(self.connections) | frozenset(self.organizations)


@dataclass(frozen=True)
class EcosystemModel:
    scenario: str = ""
    data: tuple[DataCategory, ...] = ()
    devices: tuple[DeviceCategory, ...] = ()
    organizations: tuple[Organization, ...] = ()
    connections: tuple[Connection, ...] = ()
    use_cases: tuple[UseCase, ...] = ()
    comments: tuple[str, ...] = ()

    def data_ids(self) -> list[str]:
        return [d.id for d in self.data]

    def device_ids(self) -> list[str]:
        return [d.id for d in self.devices]

    def organization_ids(self) -> list[str]:
        return [o.id for o in self.organizations]

    def connection_ids(self) -> list[str]:
        return [c.id for c in self.connections]

    def use_case_ids(self) -> list[str]:
        return [u.id for u in self.use_cases]

    def asset_ids(self) -> list[str]:
        """Devices, then connections, then organizations, each in declaration order."""
        return self.device_ids() + self.connection_ids() + self.organization_ids()

    def use_case(self, uc_id: str) -> UseCase:
        for uc in self.use_cases:
            if uc.id == uc_id:
                return uc
        raise KeyError(uc_id)

    def connection(self, conn_id: str) -> Connection:
        for conn in self.connections:
            if conn.id == conn_id:
                return conn
        raise KeyError(conn_id)


_SECTIONS = ("data", "devices", "organizations", "connections", "use_cases")
_USE_CASE_REFS = {
    "data": "data",
    "devices": "devices",
    "connections": "connections",
    "organizations": "organizations",
    "depends_on": "use_cases",
}


def _declared(model: EcosystemModel) -> Iterator[tuple[str, int, object]]:
    for section in _SECTIONS:
        for i, item in enumerate(getattr(model, section)):
            yield section, i, item


def validate_model(model: EcosystemModel) -> list[Diagnostic]:
    """Check a model's structural premises.

    Returns every finding, sorted so that the result does not depend on the
    declaration order of the model's collections. Callers treat any
    error-severity finding as fatal.
    """
    found: list[Diagnostic] = []

    kinds: dict[str, set[str]] = {s: set() for s in _SECTIONS}
    seen: set[str] = set()
    for section, i, item in _declared(model):
        if not is_valid_id(item.id):
            found.append(error("E-SCHEMA", (str(item.id),), f"malformed id {item.id!r}", (section, i, "id")))
        if item.id in seen:
            found.append(error("E-DUP", (item.id,), f"id {item.id!r} is declared more than once", (section, i, "id")))
        seen.add(item.id)
        kinds[section].add(item.id)

    if not model.use_cases:
        found.append(error("E-SCHEMA", (), "model declares no use case", ("use_cases",)))

    for i, dc in enumerate(model.data):
        found.extend(_check_harm(dc, i))

    for i, conn in enumerate(model.connections):
        for j, end in enumerate(conn.endpoints):
            if end not in kinds["devices"]:
                found.append(
                    error("E-REF", (conn.id, end), f"connection {conn.id} names undeclared device {end!r}",
                          ("connections", i, "endpoints", j))
                )
        if len(conn.endpoints) != 2 or conn.endpoints[0] == conn.endpoints[1]:
            found.append(
                error("E-SCHEMA", (conn.id,), f"connection {conn.id} needs two distinct endpoints",
                      ("connections", i, "endpoints"))
            )

    used: set[str] = set()
    for i, uc in enumerate(model.use_cases):
        for attr, section in _USE_CASE_REFS.items():
            refs = getattr(uc, attr)
            seen_here: set[str] = set()
            for j, ref in enumerate(refs):
                path = ("use_cases", i, attr, j)
                if ref in seen_here:
                    found.append(error("E-DUP", (uc.id, ref), f"use case {uc.id} lists {ref!r} twice in {attr}", path))
                seen_here.add(ref)
                if ref not in kinds[section]:
                    found.append(
                        error("E-REF", (uc.id, ref), f"use case {uc.id} references undeclared {section} id {ref!r}", path)
                    )
            if attr != "depends_on":
                used.update(refs)

        uc_devices = set(uc.devices)
        for j, conn_id in enumerate(uc.connections):
            if conn_id not in kinds["connections"]:
                continue
            conn = model.connection(conn_id)
            missing = [e for e in conn.endpoints if e in kinds["devices"] and e not in uc_devices]
            if missing:
                found.append(
                    warning(
                        "W-ENDPOINT",
                        (uc.id, conn_id),
                        f"use case {uc.id} uses connection {conn_id} but not its endpoint(s) "
                        + ", ".join(natural_sorted(set(missing))),
                        ("use_cases", i, "connections", j),
                    )
                )

    for section in ("data", "devices", "connections", "organizations"):
        for i, item in enumerate(getattr(model, section)):
            if item.id not in used:
                found.append(
                    warning("W-UNUSED", (item.id,), f"{item.id} appears in no use case", (section, i))
                )

    cycle = find_dependency_cycle(model)
    if cycle:
        idx = model.use_case_ids().index(cycle[0])
        found.append(
            error("E-CYCLE", tuple(cycle), "use-case dependencies form a cycle: " + " -> ".join(cycle + [cycle[0]]),
                  ("use_cases", idx, "depends_on"))
        )

    return sort_diagnostics(found)


def _check_harm(dc: DataCategory, index: int) -> list[Diagnostic]:
    out = []
    missing = [d for d in DIMENSIONS if d not in dc.harm]
    if missing:
        out.append(
            error("E-SCHEMA", (dc.id,), f"harm of {dc.id} is not defined for " + ", ".join(d.value for d in missing),
                  ("data", index))
        )
    for dim, harm in annotation_maxima(dc.annotations).items():
        if dim in dc.harm and dc.harm[dim] != harm:
            out.append(
                error(
                    "E-SCHEMA",
                    (dc.id, dim.value),
                    f"{dc.id} {dim.value} harm is {dc.harm[dim].value} but its annotations give {harm.value}",
                    ("data", index, "harm", dim.value),
                )
            )
    return out


def annotation_maxima(annotations) -> dict[Dimension, HarmCategory]:
    """Worst annotated harm per dimension, for dimensions that have annotations."""
    out: dict[Dimension, HarmCategory] = {}
    for action, harm in annotations:
        dim = ThreatAction(action).dimension
        out[dim] = max(out.get(dim, harm), harm)
    return out


def find_dependency_cycle(model: EcosystemModel) -> list[str]:
    """Return one dependency cycle as a list of use-case ids, or ``[]``.

    The search visits nodes and edges in natural id order and rotates the
    cycle to start at its smallest id, so the answer is stable under
    reordering of the model.
    """
    graph: dict[str, list[str]] = {}
    for uc in model.use_cases:
        graph.setdefault(uc.id, [])
        graph[uc.id].extend(uc.depends_on)
    known = set(graph)
    for node in graph:
        graph[node] = natural_sorted({d for d in graph[node] if d in known})

    WHITE, GREY, BLACK = 0, 1, 2
    colour = dict.fromkeys(graph, WHITE)
    for root in natural_sorted(graph):
        if colour[root] != WHITE:
            continue
        stack = [(root, iter(graph[root]))]
        trail = [root]
        colour[root] = GREY
        while stack:
            node, edges = stack[-1]
            nxt = next(edges, None)
            if nxt is None:
                colour[node] = BLACK
                stack.pop()
                trail.pop()
            elif colour[nxt] == GREY:
                cycle = trail[trail.index(nxt):]
                start = cycle.index(min(cycle, key=natural_key))
                return cycle[start:] + cycle[:start]
            elif colour[nxt] == WHITE:
                colour[nxt] = GREY
                stack.append((nxt, iter(graph[nxt])))
                trail.append(nxt)
    return []


_SEVERITY_ORDER = {Severity.ERROR: 0, Severity.WARNING: 1}


def sort_diagnostics(diagnostics: Iterable[Diagnostic]) -> list[Diagnostic]:
    return sorted(
        diagnostics,
        key=lambda d: (
            _SEVERITY_ORDER[d.severity],
            d.code,
            tuple(natural_key(p) for p in d.location),
            d.message,
        ),
    )
