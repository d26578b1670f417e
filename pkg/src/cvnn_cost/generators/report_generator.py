"""
Use-Case Report Generator
Renders a reproduced use-case table to Markdown
"""

from pathlib import Path
from typing import Dict, List, Optional

from jinja2 import Environment, FileSystemLoader, select_autoescape

from ..core.specs import ArchKind, Mode
from ..harness.use_cases import UseCaseReport

TEMPLATE_DIR = Path(__file__).resolve().parent.parent / "templates"


def format_count(value: Optional[int]) -> str:
    return "-" if value is None else f"{value:,}"


def cell_mark(cell) -> str:
    if cell.is_open:
        return "open"
    return "✓" if cell.match else "✗"


class ReportGenerator:
    """Renders UseCaseReport objects through the jinja2 templates"""

    def __init__(self, template_dir: Path = TEMPLATE_DIR):
        self.template_dir = Path(template_dir)
        self.env = Environment(
            loader=FileSystemLoader(str(self.template_dir)),
            autoescape=select_autoescape(["html", "xml"]),
            trim_blocks=True,
            lstrip_blocks=True,
        )
        self.env.filters["count"] = format_count

    def _rows(self, report: UseCaseReport) -> List[Dict]:
        archs = [arch for arch in ArchKind]
        cases = list(dict.fromkeys(c.config.use_case for c in report.cells))
        rows = []
        for arch in archs:
            row = {"arch": arch.label, "cells": []}
            for case in cases:
                for mode in (Mode.TRAINING, Mode.INFERENCE):
                    try:
                        cell = report.cell(case, arch, mode)
                    except KeyError:
                        row["cells"].append({"value": None, "mark": ""})
                        continue
                    row["cells"].append({"value": cell.computed if cell.computed is not None else cell.expected,
                                         "mark": cell_mark(cell)})
            rows.append(row)
        return rows

    def _context(self, report: UseCaseReport, titles: Optional[Dict[str, str]] = None) -> Dict:
        cases = list(dict.fromkeys(c.config.use_case for c in report.cells))
        titles = titles or {}
        cheapest = {
            titles.get(case, case): {mode.value: (arch.label if arch else "-") for mode, arch in modes.items()}
            for case, modes in report.cheapest.items()
        }
        return {
            "cases": [titles.get(case, case) for case in cases],
            "rows": self._rows(report),
            "matched": report.matched,
            "derived": report.matched + len(report.mismatched),
            "open_cells": report.open_cells,
            "cheapest": cheapest,
            "derivations": [
                {"case": titles.get(c.config.use_case, c.config.use_case), "arch": c.config.arch.label,
                 "text": c.config.derivation}
                for c in report.cells if c.mode is Mode.TRAINING and c.config.derivation
            ],
        }

    def render_markdown(self, report: UseCaseReport, titles: Optional[Dict[str, str]] = None) -> str:
        template = self.env.get_template("use_cases.md.j2")
        return template.render(**self._context(report, titles))

    def write_markdown(self, report: UseCaseReport, path, titles: Optional[Dict[str, str]] = None) -> Path:
        path = Path(path)
        path.write_text(self.render_markdown(report, titles), encoding="utf-8")
        return path
