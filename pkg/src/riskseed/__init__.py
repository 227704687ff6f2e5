"""Declarative identification of long-term risks for smart devices."""

from importlib import resources
from pathlib import Path

from .ingest import parse_catalog, parse_model, serialize_catalog, serialize_model
from .model import (
    Connection,
    DataCategory,
    DeviceCategory,
    Diagnostic,
    Dimension,
    EcosystemModel,
    HarmCategory,
    Organization,
    ProtectionLevel,
    Severity,
    ThreatAction,
    UseCase,
    validate_model,
)
from .needs import NeedsAssignment, asset_needs, data_needs, map_harm_to_need, personal_connection_lint
from .report import ReportFormat, render_needs, render_register
from .risks import (
    Match,
    RegisterEntry,
    RiskCatalog,
    RiskRegister,
    RiskRule,
    assess,
    consolidate,
    filter_candidates,
    impacted_use_cases,
    match_assets,
    register_summary,
)

__version__ = "0.1.0"


def bundled_path(name: str, scenario: str = "smart-fridge") -> Path:
    """Path of a file shipped with the package, e.g. ``bundled_path("model.json")``."""
    return Path(str(resources.files(__package__) / "data" / scenario / name))


def load_bundled(scenario: str = "smart-fridge", model: str = "model.json"):
    """Parse the bundled model and catalog of a scenario; raises on errors."""
    parsed_model, found = parse_model(bundled_path(model, scenario).read_bytes())
    parsed_catalog, found_cat = parse_catalog(bundled_path("catalog.json", scenario).read_bytes())
    if parsed_model is None or parsed_catalog is None:
        raise ValueError("bundled scenario does not parse: " + "; ".join(map(str, found + found_cat)))
    return parsed_model, parsed_catalog


__all__ = [
    "Connection",
    "DataCategory",
    "DeviceCategory",
    "Diagnostic",
    "Dimension",
    "EcosystemModel",
    "HarmCategory",
    "Match",
    "NeedsAssignment",
    "Organization",
    "ProtectionLevel",
    "RegisterEntry",
    "ReportFormat",
    "RiskCatalog",
    "RiskRegister",
    "RiskRule",
    "Severity",
    "ThreatAction",
    "UseCase",
    "assess",
    "asset_needs",
    "bundled_path",
    "consolidate",
    "data_needs",
    "filter_candidates",
    "impacted_use_cases",
    "load_bundled",
    "map_harm_to_need",
    "match_assets",
    "parse_catalog",
    "parse_model",
    "personal_connection_lint",
    "register_summary",
    "render_needs",
    "render_register",
    "serialize_catalog",
    "serialize_model",
    "validate_model",
]
