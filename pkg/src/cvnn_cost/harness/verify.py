"""
Count Verification
Runs instrumented networks on random specs and compares metered counts to the closed forms
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional

import numpy as np

from ..analysis.cost_model import cost
from ..core import numerics as nx
from ..core.counter import MultCounter, Phase
from ..core.errors import InvalidSpecError
from ..core.specs import ArchKind, DeepSpec, Mode, ShallowSpec, Spec
from ..networks import TrainConfig, build

logger = logging.getLogger(__name__)

Formula = Callable[[Spec, Mode], int]


@dataclass
class SpecGenerator:
    """Seeded source of random valid specs within fixed bounds"""
    seed: int = 0
    max_inputs: int = 16
    max_outputs: int = 16
    max_neurons: int = 64
    max_layers: int = 5

    def __post_init__(self):
        for name in ("max_inputs", "max_outputs", "max_neurons"):
            if getattr(self, name) < 1:
                raise InvalidSpecError(f"{name} must be >= 1")
        if self.max_layers < 2:
            raise InvalidSpecError("max_layers must be >= 2")
        self.rng = np.random.default_rng(self.seed)

    def _draw(self, high: int) -> int:
        return int(self.rng.integers(1, high, endpoint=True))

    def shallow(self, arch: ArchKind) -> ShallowSpec:
        return ShallowSpec(arch, self._draw(self.max_inputs), self._draw(self.max_outputs),
                           self._draw(self.max_neurons))

    def deep(self, arch: ArchKind) -> DeepSpec:
        P = self._draw(self.max_inputs)
        R = self._draw(self.max_outputs)
        if arch is ArchKind.PTRBF:
            L = self._draw(self.max_layers)
            neurons = [self._draw(self.max_neurons) for _ in range(L)]
            bottlenecks = [self._draw(self.max_neurons) for _ in range(L - 1)] + [R]
            return DeepSpec(arch, P, tuple(neurons), tuple(bottlenecks))
        L = int(self.rng.integers(2, self.max_layers, endpoint=True))
        hidden = [self._draw(self.max_neurons) for _ in range(L - 1)]
        return DeepSpec(arch, P, tuple(hidden + [R]))

    def seed_for_network(self) -> int:
        return int(self.rng.integers(0, 2 ** 31))

    def complex_vector(self, n: int) -> np.ndarray:
        return nx.uniform_complex(self.rng, (n,), low=-0.5, high=0.5)


@dataclass
class CountReport:
    """Formula vs metered count for one (spec, mode)"""
    spec: Spec
    mode: Mode
    formula_count: int
    metered_count: int
    per_phase: Dict[str, int] = field(default_factory=dict)

    @property
    def match(self) -> bool:
        return self.formula_count == self.metered_count

    def describe(self) -> str:
        phases = ", ".join(f"{name}={count}" for name, count in self.per_phase.items())
        status = "ok" if self.match else f"MISMATCH (diff {self.metered_count - self.formula_count:+d})"
        return (f"{self.spec.describe()} {self.mode.value}: formula {self.formula_count}, "
                f"metered {self.metered_count} [{phases}] {status}")


def _phase_breakdown(ctx: MultCounter) -> Dict[str, int]:
    return {phase.value: count for phase, count in ctx.snapshot().by_phase().items()}


def measure(spec: Spec, seed: int, x: np.ndarray, d: np.ndarray,
            cfg: Optional[TrainConfig] = None, formula: Formula = cost) -> List[CountReport]:
    """Inference and training reports for one spec on one (x, d) sample"""
    cfg = cfg or TrainConfig()
    net = build(spec, seed)

    ctx = MultCounter()
    net.infer(x, ctx)
    reports = [CountReport(spec, Mode.INFERENCE, formula(spec, Mode.INFERENCE),
                           ctx.grand_total, _phase_breakdown(ctx))]

    ctx.reset()
    net.train_step(x, d, cfg, ctx)
    reports.append(CountReport(spec, Mode.TRAINING, formula(spec, Mode.TRAINING),
                               ctx.grand_total, _phase_breakdown(ctx)))

    forward = ctx.snapshot().phase_total(Phase.FORWARD)
    if forward != reports[0].metered_count:
        logger.warning("%s: forward sub-count %d differs from inference count %d",
                       spec.describe(), forward, reports[0].metered_count)
    return reports


def verify_counts(generator: SpecGenerator, trials: int,
                  archs: Optional[Iterable[ArchKind]] = None,
                  deep_trials: int = 0,
                  formula: Formula = cost) -> List[CountReport]:
    """Reports for `trials` shallow specs per architecture plus `deep_trials`
    deep specs per deep-capable architecture, two reports per spec"""
    if trials < 1:
        raise InvalidSpecError("trials must be >= 1")
    if deep_trials < 0:
        raise InvalidSpecError("deep_trials must be >= 0")
    archs = sorted(set(archs or ArchKind), key=lambda a: a.order)

    reports: List[CountReport] = []
    for arch in archs:
        specs: List[Spec] = [generator.shallow(arch) for _ in range(trials)]
        if not arch.shallow_only:
            specs.extend(generator.deep(arch) for _ in range(deep_trials))
        for spec in specs:
            x = generator.complex_vector(spec.inputs)
            d = generator.complex_vector(spec.outputs)
            reports.extend(measure(spec, generator.seed_for_network(), x, d, formula=formula))
        logger.debug("%s: %d specs verified", arch.label, len(specs))

    failures = [r for r in reports if not r.match]
    for report in failures:
        logger.info("count mismatch: %s", report.describe())
    logger.info("verified %d reports, %d mismatches", len(reports), len(failures))
    return reports


def summarize(reports: List[CountReport]) -> Dict[str, int]:
    """Matching spec and report totals (a spec matches when both its modes match)"""
    pairs = [reports[i:i + 2] for i in range(0, len(reports), 2)]
    matching_specs = sum(all(r.match for r in pair) for pair in pairs)
    return {
        "specs": len(pairs),
        "matching_specs": matching_specs,
        "reports": len(reports),
        "matching_reports": sum(r.match for r in reports),
    }
