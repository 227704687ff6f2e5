"""Deterministic Markdown and CSV rendering of needs and risk registers."""

from __future__ import annotations

import csv
import io
from enum import Enum
from typing import Iterable, Sequence

from .model import DIMENSIONS, natural_sorted
from .needs import NeedsAssignment
from .risks import GROUPS, RiskRegister, register_summary


class ReportFormat(str, Enum):
    MARKDOWN = "markdown"
    CSV = "csv"

    @classmethod
    def parse(cls, value: "str | ReportFormat") -> "ReportFormat":
        if isinstance(value, cls):
            return value
        aliases = {"md": cls.MARKDOWN, "markdown": cls.MARKDOWN, "csv": cls.CSV}
        try:
            return aliases[value.lower()]
        except KeyError:
            raise ValueError(f"unknown report format {value!r}") from None


NEED_COLUMNS = ["Integrity", "Availability", "Confidentiality"]
REGISTER_COLUMNS = ["Risk", "Orga.", "Devices", "Connections", "Use cases", "Worst harm", "Description"]
GROUP_TITLES = {
    "compliance": "Long-term compliance risks",
    "economic": "Long-term economic risks",
    "operational": "Long-term operational risks",
}


def _md_cell(value: str) -> str:
    return value.replace("\\", "\\\\").replace("|", "\\|").replace("\r", " ").replace("\n", " ")


def markdown_table(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    lines = ["| " + " | ".join(_md_cell(h) for h in header) + " |", "|" + "---|" * len(header)]
    lines.extend("| " + " | ".join(_md_cell(c) for c in row) + " |" for row in rows)
    return "\n".join(lines) + "\n"


def csv_cell(value: str) -> str:
    """Cell text as written to CSV: CR and CRLF become LF, NUL is dropped."""
    return value.replace("\r\n", "\n").replace("\r", "\n").replace("\x00", "")


def _csv_text(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    writer.writerow(header)
    writer.writerows([csv_cell(c) for c in row] for row in rows)
    return buf.getvalue()


def _need_rows(table: dict) -> list[list[str]]:
    return [[key] + [vector[d].value for d in DIMENSIONS] for key, vector in table.items()]


def render_needs(needs: NeedsAssignment, format: "ReportFormat | str" = ReportFormat.MARKDOWN) -> str:
    fmt = ReportFormat.parse(format)
    sections = [
        ("data", "Data", "Protection needs of data", needs.data),
        ("asset", "Asset", "Protection needs of assets", needs.assets),
        ("use_case", "Use case", "Protection needs of use cases", needs.use_cases),
    ]
    if fmt is ReportFormat.CSV:
        rows = [[kind] + row for kind, _, _, table in sections for row in _need_rows(table)]
        return _csv_text(["table", "id"] + [d.value for d in DIMENSIONS], rows)
    parts = [
        f"## {title}\n\n" + markdown_table([label] + NEED_COLUMNS, _need_rows(table))
        for _, label, title, table in sections
    ]
    return "\n".join(parts)


def _ids(values: Iterable[str]) -> str:
    return ", ".join(natural_sorted(values))


def _register_row(entry) -> list[str]:
    return [
        entry.name,
        _ids(entry.organizations),
        _ids(entry.devices),
        _ids(entry.connections),
        _ids(entry.impacted_use_cases),
        entry.worst_harm.value,
        entry.rule.description,
    ]


def render_register(register: RiskRegister, format: "ReportFormat | str" = ReportFormat.MARKDOWN) -> str:
    fmt = ReportFormat.parse(format)
    summary = f"worst harm: {register_summary(register).value}"
    if fmt is ReportFormat.CSV:
        header = ["group", "id", "risk", "organizations", "devices", "connections", "use_cases", "worst_harm",
                  "description"]
        rows = [[e.group, e.id] + _register_row(e) for g in GROUPS for e in register.group(g)]
        rows.append(["summary", "", summary, "", "", "", "", register_summary(register).value, ""])
        return _csv_text(header, rows)
    parts = [
        f"## {GROUP_TITLES[g]}\n\n" + markdown_table(REGISTER_COLUMNS, [_register_row(e) for e in register.group(g)])
        for g in GROUPS
    ]
    parts.append(summary + "\n")
    return "\n".join(parts)


def parse_csv(text: str) -> list[list[str]]:
    return list(csv.reader(io.StringIO(text, newline="")))
