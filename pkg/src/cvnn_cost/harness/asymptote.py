"""
Empirical Asymptote
Log-log slope of the exact cost along each regime's parameter coupling
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from ..analysis.cost_model import asymptotic_class, cost
from ..core.specs import (
    ArchKind,
    AsymptoticRegime,
    ComplexityOrder,
    DeepSpec,
    Mode,
    ShallowSpec,
    Spec,
)

logger = logging.getLogger(__name__)

# Exponent ranges of the geometric series N = 2^k
SERIES = {
    AsymptoticRegime.SHALLOW_N_DOMINANT: range(4, 15),
    AsymptoticRegime.SHALLOW_BALANCED: range(4, 15),
    AsymptoticRegime.DEEP_N_DOMINANT: range(4, 13),
    AsymptoticRegime.DEEP_BALANCED: range(4, 9),
}
N_DOMINANT_IO = 4
N_DOMINANT_LAYERS = 4


@dataclass
class AsymptoteFit:
    arch: ArchKind
    regime: AsymptoticRegime
    mode: Mode
    slope: float
    order: ComplexityOrder
    N: List[int] = field(default_factory=list)
    costs: List[int] = field(default_factory=list)

    @property
    def expected(self) -> ComplexityOrder:
        return asymptotic_class(self.arch, self.regime)


def regime_spec(arch: ArchKind, regime: AsymptoticRegime, N: int,
                io: int = N_DOMINANT_IO, layers: int = N_DOMINANT_LAYERS) -> Spec:
    """The ShallowSpec or DeepSpec a regime couples to hidden size N.

    Shallow N-dominant: P = R = io. Shallow balanced: P = R = N.
    Deep regimes: P = R = N with L = `layers` (N-dominant) or L = N (balanced);
    PT-RBF layers use I^l = O^l = N.
    """
    if regime is AsymptoticRegime.SHALLOW_N_DOMINANT:
        return ShallowSpec(arch, io, io, N)
    if regime is AsymptoticRegime.SHALLOW_BALANCED:
        return ShallowSpec(arch, N, N, N)
    asymptotic_class(arch, regime)  # NotApplicable for shallow-only architectures
    L = layers if regime is AsymptoticRegime.DEEP_N_DOMINANT else N
    if arch is ArchKind.PTRBF:
        return DeepSpec(arch, N, tuple([N] * L), tuple([N] * L))
    return DeepSpec(arch, N, tuple([N] * L))


def empirical_asymptote(arch, regime, exponents: Optional[Sequence[int]] = None,
                        mode: Mode = Mode.TRAINING, io: int = N_DOMINANT_IO,
                        layers: int = N_DOMINANT_LAYERS) -> AsymptoteFit:
    """Fit log(cost) = slope * log(N) + c over N = 2^k and round to the nearest order"""
    arch = ArchKind.parse(arch)
    regime = AsymptoticRegime.parse(regime)
    asymptotic_class(arch, regime)
    exponents = list(exponents if exponents is not None else SERIES[regime])
    sizes = [2 ** k for k in exponents]
    costs = [cost(regime_spec(arch, regime, N, io, layers), mode) for N in sizes]

    slope, _ = np.polyfit(np.log(sizes), np.log(np.asarray(costs, dtype=float)), 1)
    nearest = int(np.clip(np.rint(slope), 1, 3))
    fit = AsymptoteFit(arch, regime, Mode.parse(mode), float(slope), ComplexityOrder(nearest), sizes, costs)
    logger.debug("%s %s: slope %.4f", arch.label, regime.value, fit.slope)
    return fit
