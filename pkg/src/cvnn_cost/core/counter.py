"""
Multiplication Ledger
Phase-tagged, categorized counts of the real multiplications a computation executes
"""

from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from .errors import LedgerError

UINT64_MAX = 2 ** 64 - 1


class Phase(Enum):
    """Computation phase a metered operation executes under"""
    FORWARD = "forward"
    BACKWARD_DELTA = "backward_delta"
    PARAMETER_UPDATE = "parameter_update"


class MultKind(Enum):
    """Multiplication event kinds and their fixed real-multiplication cost"""
    COMPLEX_TIMES_COMPLEX = ("complex_times_complex", 4)
    COMPLEX_TIMES_REAL = ("complex_times_real", 2)
    REAL_TIMES_REAL = ("real_times_real", 1)
    SQUARED_MAGNITUDE = ("squared_magnitude", 2)
    REAL_DIVISION = ("real_division", 1)

    def __init__(self, label: str, cost: int):
        self.label = label
        self.cost = cost


@dataclass(frozen=True)
class MultEvent:
    """One ledger entry: `occurrences` events of `kind` under `phase`"""
    phase: Phase
    kind: MultKind
    occurrences: int = 1

    @property
    def cost(self) -> int:
        return self.kind.cost * self.occurrences


Cell = Tuple[Phase, MultKind]


@dataclass(frozen=True)
class CounterSnapshot:
    """Immutable copy of a counter's cells (occurrence counts per phase and kind)"""
    cells: Mapping[Cell, int] = field(default_factory=lambda: MappingProxyType({}))

    def occurrences(self, phase: Phase, kind: MultKind) -> int:
        return self.cells.get((phase, kind), 0)

    def phase_total(self, phase: Phase) -> int:
        """Real multiplications executed under one phase"""
        return sum(kind.cost * n for (p, kind), n in self.cells.items() if p is phase)

    def by_phase(self) -> Dict[Phase, int]:
        return {phase: self.phase_total(phase) for phase in Phase}

    @property
    def grand_total(self) -> int:
        return sum(kind.cost * n for (_, kind), n in self.cells.items())

    def to_dict(self) -> Dict[str, Dict[str, int]]:
        result: Dict[str, Dict[str, int]] = {}
        for (phase, kind), n in sorted(self.cells.items(), key=lambda item: (item[0][0].value, item[0][1].label)):
            result.setdefault(phase.value, {})[kind.label] = n
        return result


class MultCounter:
    """Single-owner mutable ledger of metered multiplications.

    Kernels call `record` while a phase is active; the phase is entered with
    the `phase` context manager. Counts are unsigned 64-bit: exceeding that
    range raises instead of wrapping.
    """

    def __init__(self, record_events: bool = False):
        self._cells: Dict[Cell, int] = {}
        self._phase: Optional[Phase] = None
        self._total = 0
        self.record_events = record_events
        self.events: List[MultEvent] = []

    @property
    def active_phase(self) -> Optional[Phase]:
        return self._phase

    @contextmanager
    def phase(self, phase: Phase) -> Iterator["MultCounter"]:
        """Run the enclosed block under `phase`, restoring the previous one afterwards"""
        previous = self._phase
        self._phase = phase
        try:
            yield self
        finally:
            self._phase = previous

    def record(self, kind: MultKind, occurrences: int = 1):
        """Add `occurrences` events of `kind` to the active phase"""
        if self._phase is None:
            raise LedgerError(f"{kind.label} executed with no active phase")
        if occurrences < 0:
            raise LedgerError("negative occurrence count")
        if occurrences == 0:
            return
        total = self._total + kind.cost * occurrences
        if total > UINT64_MAX:
            raise LedgerError("multiplication counter overflow")
        self._total = total
        cell = (self._phase, kind)
        self._cells[cell] = self._cells.get(cell, 0) + occurrences
        if self.record_events:
            self.events.append(MultEvent(self._phase, kind, occurrences))

    @property
    def grand_total(self) -> int:
        return self._total

    def snapshot(self) -> CounterSnapshot:
        return CounterSnapshot(MappingProxyType(dict(self._cells)))

    def reset(self):
        """Zero every cell and drop the event log"""
        self._cells.clear()
        self._total = 0
        self.events.clear()


def counter_snapshot(ctx: MultCounter) -> CounterSnapshot:
    return ctx.snapshot()


def counter_reset(ctx: MultCounter):
    ctx.reset()


def counter_diff(before: CounterSnapshot, after: CounterSnapshot) -> CounterSnapshot:
    """Componentwise `after - before`; a negative cell means the ledger was corrupted"""
    cells: Dict[Cell, int] = {}
    for cell in set(before.cells) | set(after.cells):
        delta = after.cells.get(cell, 0) - before.cells.get(cell, 0)
        if delta < 0:
            phase, kind = cell
            raise LedgerError(f"negative diff in cell ({phase.value}, {kind.label}): {delta}")
        if delta:
            cells[cell] = delta
    return CounterSnapshot(MappingProxyType(cells))


def replay(events: Iterable[MultEvent]) -> int:
    """Grand total implied by an event log"""
    return sum(event.cost for event in events)
