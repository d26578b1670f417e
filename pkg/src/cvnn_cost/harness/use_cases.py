"""
Use-Case Reproduction
Loads the bundled application table and recomputes every cell from the closed forms
"""

import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Union

from ..analysis.cost_model import cheapest, cost
from ..core.errors import CvnnError, TableError
from ..core.specs import ArchKind, Mode, Spec, spec_from_fields

logger = logging.getLogger(__name__)

DEFAULT_TABLE = Path(__file__).resolve().parent.parent / "data" / "use_cases.json"

ENTRY_KEYS = {"architecture", "status", "inputs", "outputs", "neurons", "bottlenecks",
              "expected_training", "expected_inference", "derivation"}


class Status(Enum):
    DERIVED = "derived"
    OPEN = "open"


@dataclass
class UseCaseConfig:
    """One (use case, architecture) cell pair with its published values"""
    use_case: str
    arch: ArchKind
    status: Status
    expected_training: int
    expected_inference: int
    spec: Optional[Spec] = None
    derivation: str = ""

    def expected(self, mode: Mode) -> int:
        return self.expected_training if mode is Mode.TRAINING else self.expected_inference


@dataclass
class UseCase:
    name: str
    title: str
    entries: List[UseCaseConfig] = field(default_factory=list)


@dataclass
class UseCaseTable:
    use_cases: List[UseCase] = field(default_factory=list)
    source: Optional[Path] = None

    def entries(self) -> List[UseCaseConfig]:
        return [entry for case in self.use_cases for entry in case.entries]


def _parse_entry(use_case: str, raw: Dict) -> UseCaseConfig:
    if not isinstance(raw, dict):
        raise TableError(f"{use_case}: entry must be an object")
    unknown = set(raw) - ENTRY_KEYS
    if unknown:
        raise TableError(f"{use_case}: unknown keys {sorted(unknown)}")
    try:
        arch = ArchKind.parse(raw["architecture"])
        status = Status(raw.get("status", "derived"))
        expected_training = int(raw["expected_training"])
        expected_inference = int(raw["expected_inference"])
    except (KeyError, ValueError, TypeError, CvnnError) as exc:
        raise TableError(f"{use_case}: malformed entry {raw!r}: {exc}") from exc

    spec = None
    if status is Status.DERIVED:
        try:
            spec = spec_from_fields(arch, raw["inputs"], raw["outputs"], raw["neurons"],
                                    raw.get("bottlenecks"))
        except KeyError as exc:
            raise TableError(f"{use_case}/{arch.value}: derived entry missing {exc}") from exc
        except CvnnError as exc:
            raise TableError(f"{use_case}/{arch.value}: {exc}") from exc

    return UseCaseConfig(use_case, arch, status, expected_training, expected_inference,
                         spec, raw.get("derivation", ""))


def load_use_case_table(path: Union[str, Path, None] = None) -> UseCaseTable:
    """Parse a use-case table; a missing file raises FileNotFoundError"""
    path = Path(path) if path else DEFAULT_TABLE
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as exc:
            raise TableError(f"{path}: not valid JSON ({exc})") from exc

    if not isinstance(data, dict) or not isinstance(data.get("use_cases"), list):
        raise TableError(f"{path}: expected an object with a 'use_cases' list")

    table = UseCaseTable(source=path)
    for raw_case in data["use_cases"]:
        try:
            name = raw_case["name"]
            entries = raw_case["entries"]
        except (KeyError, TypeError) as exc:
            raise TableError(f"{path}: use case without name/entries") from exc
        case = UseCase(name, raw_case.get("title", name))
        case.entries = [_parse_entry(name, raw) for raw in entries]
        table.use_cases.append(case)
    logger.debug("loaded %d use cases from %s", len(table.use_cases), path)
    return table


@dataclass
class UseCaseCell:
    config: UseCaseConfig
    mode: Mode
    expected: int
    computed: Optional[int]

    @property
    def is_open(self) -> bool:
        return self.config.status is Status.OPEN

    @property
    def match(self) -> Optional[bool]:
        return None if self.is_open else self.computed == self.expected


@dataclass
class UseCaseReport:
    cells: List[UseCaseCell] = field(default_factory=list)
    cheapest: Dict[str, Dict[Mode, Optional[ArchKind]]] = field(default_factory=dict)

    @property
    def matched(self) -> int:
        return sum(1 for c in self.cells if c.match is True)

    @property
    def mismatched(self) -> List[UseCaseCell]:
        return [c for c in self.cells if c.match is False]

    @property
    def open_cells(self) -> int:
        return sum(1 for c in self.cells if c.is_open)

    @property
    def ok(self) -> bool:
        return not self.mismatched

    def cell(self, use_case: str, arch: ArchKind, mode: Mode) -> UseCaseCell:
        for c in self.cells:
            if c.config.use_case == use_case and c.config.arch is arch and c.mode is mode:
                return c
        raise KeyError((use_case, arch, mode))


def reproduce_use_cases(table: Optional[UseCaseTable] = None) -> UseCaseReport:
    """Recompute every derived cell; open cells are echoed, not asserted"""
    table = table or load_use_case_table()
    report = UseCaseReport()
    for case in table.use_cases:
        per_mode: Dict[Mode, Dict[ArchKind, Optional[int]]] = {mode: {} for mode in Mode}
        for entry in case.entries:
            for mode in (Mode.TRAINING, Mode.INFERENCE):
                computed = cost(entry.spec, mode) if entry.spec is not None else None
                report.cells.append(UseCaseCell(entry, mode, entry.expected(mode), computed))
                # open cells still rank by their published value
                per_mode[mode][entry.arch] = computed if computed is not None else entry.expected(mode)
        report.cheapest[case.name] = {mode: cheapest(costs) for mode, costs in per_mode.items()}

    for cell in report.mismatched:
        logger.info("%s/%s %s: expected %d, computed %d", cell.config.use_case,
                    cell.config.arch.value, cell.mode.value, cell.expected, cell.computed)
    return report
