"""
Closed-Form Cost Model
Real-multiplication counts of shallow and deep CVNNs, and their asymptotic orders
"""

import logging
from dataclasses import dataclass, asdict
from typing import Dict, Iterable, List, Optional, Sequence

from ..core.errors import InvalidSpecError, NotApplicableError
from ..core.specs import (
    SHALLOW_ONLY_MESSAGE,
    ArchKind,
    AsymptoticRegime,
    ComplexityOrder,
    DeepSpec,
    Mode,
    ShallowSpec,
    Spec,
)

logger = logging.getLogger(__name__)


# Human-readable forms, shown by `asym` and the reproduced report
SHALLOW_FORMULAS = {
    ArchKind.CVFNN: ("N(8P+12R+8)+8R", "4N(P+R)"),
    ArchKind.SCFNN: ("N(8P+12R+8)+6R", "4N(P+R)"),
    ArchKind.MLMVN: ("N(8P+12R+16)+12R", "4N(P+R+1)+4R"),
    ArchKind.CRBF: ("N(4P+6R+5)+4R", "N(2P+2R+1)"),
    ArchKind.FCRBF: ("N(12P+12R+12)+4R", "4N(P+R)"),
    ArchKind.PTRBF: ("N(4P+12R+12)+4R", "2N(P+2R+1)"),
}

DEEP_FORMULAS = {
    ArchKind.CVFNN: ("4Σ_{l<L} I^l(2I^{l-1}+I^{l+1}+2) + 8I^L(I^{L-1}+1)", "4Σ I^l I^{l-1}"),
    ArchKind.SCFNN: ("4Σ_{l<L} I^l(2I^{l-1}+I^{l+1}+2) + 2I^L(4I^{L-1}+3)", "4Σ I^l I^{l-1}"),
    ArchKind.MLMVN: ("4Σ_{l<L} I^l(2I^{l-1}+I^{l+1}+4) + 4I^L(2I^{L-1}+3)", "4Σ I^l(I^{l-1}+1)"),
    ArchKind.PTRBF: ("4Σ I^l(O^{l-1}+3O^l+3) + 4Σ_{l<L} O^l(I^{l+1}+1) + 4O^L",
                     "2Σ I^l(O^{l-1}+2O^l+1)"),
}

_ORDERS = {
    # (shallow N-dominant, shallow balanced, deep N-dominant, deep balanced)
    ArchKind.CVFNN: (1, 2, 2, 3),
    ArchKind.SCFNN: (1, 2, 2, 3),
    ArchKind.MLMVN: (1, 2, 2, 3),
    ArchKind.CRBF: (1, 2, None, None),
    ArchKind.FCRBF: (1, 2, None, None),
    ArchKind.PTRBF: (1, 2, 2, 3),
}


def formula_text(arch: ArchKind, mode: Mode, deep: bool = False) -> str:
    column = 0 if Mode.parse(mode) is Mode.TRAINING else 1
    table = DEEP_FORMULAS if deep else SHALLOW_FORMULAS
    if arch not in table:
        raise NotApplicableError(f"{arch.label}: {SHALLOW_ONLY_MESSAGE}")
    return table[arch][column]


def shallow_cost(spec: ShallowSpec, mode: Mode) -> int:
    """Exact integer evaluation of the shallow closed form for `spec`"""
    P, R, N = spec.P, spec.R, spec.N
    arch = spec.arch
    if Mode.parse(mode) is Mode.TRAINING:
        if arch is ArchKind.CVFNN:
            return N * (8 * P + 12 * R + 8) + 8 * R
        if arch is ArchKind.SCFNN:
            return N * (8 * P + 12 * R + 8) + 6 * R
        if arch is ArchKind.MLMVN:
            return N * (8 * P + 12 * R + 16) + 12 * R
        if arch is ArchKind.CRBF:
            return N * (4 * P + 6 * R + 5) + 4 * R
        if arch is ArchKind.FCRBF:
            return N * (12 * P + 12 * R + 12) + 4 * R
        return N * (4 * P + 12 * R + 12) + 4 * R

    if arch in (ArchKind.CVFNN, ArchKind.SCFNN, ArchKind.FCRBF):
        return 4 * N * (P + R)
    if arch is ArchKind.MLMVN:
        return 4 * N * (P + R + 1) + 4 * R
    if arch is ArchKind.CRBF:
        return N * (2 * P + 2 * R + 1)
    return 2 * N * (P + 2 * R + 1)


def _perceptron_deep_training(sizes: Sequence[int], hidden_extra: int) -> int:
    L = len(sizes) - 1
    return 4 * sum(
        sizes[l] * (2 * sizes[l - 1] + sizes[l + 1] + hidden_extra)
        for l in range(1, L)
    )


def deep_cost(spec: DeepSpec, mode: Mode) -> int:
    """Exact integer evaluation of the deep closed form for `spec`"""
    arch = spec.arch
    if arch.shallow_only:
        raise NotApplicableError(f"{arch.label}: {SHALLOW_ONLY_MESSAGE}")
    training = Mode.parse(mode) is Mode.TRAINING

    if arch is ArchKind.PTRBF:
        I = [None, *spec.neurons]
        O = spec.bottleneck_sizes()
        L = spec.L
        if not training:
            return 2 * sum(I[l] * (O[l - 1] + 2 * O[l] + 1) for l in range(1, L + 1))
        layers = 4 * sum(I[l] * (O[l - 1] + 3 * O[l] + 3) for l in range(1, L + 1))
        bottlenecks = 4 * sum(O[l] * (I[l + 1] + 1) for l in range(1, L))
        return layers + bottlenecks + 4 * O[L]

    I = spec.layer_sizes()
    L = spec.L
    if not training:
        extra = 1 if arch is ArchKind.MLMVN else 0
        return 4 * sum(I[l] * (I[l - 1] + extra) for l in range(1, L + 1))
    if arch is ArchKind.CVFNN:
        return _perceptron_deep_training(I, 2) + 8 * I[L] * (I[L - 1] + 1)
    if arch is ArchKind.SCFNN:
        return _perceptron_deep_training(I, 2) + 2 * I[L] * (4 * I[L - 1] + 3)
    return _perceptron_deep_training(I, 4) + 4 * I[L] * (2 * I[L - 1] + 3)


def cost(spec: Spec, mode: Mode) -> int:
    """Dispatch to the shallow or deep closed form"""
    if isinstance(spec, ShallowSpec):
        return shallow_cost(spec, mode)
    if isinstance(spec, DeepSpec):
        return deep_cost(spec, mode)
    raise InvalidSpecError(f"not an architecture spec: {spec!r}")


def asymptotic_class(arch: ArchKind, regime: AsymptoticRegime) -> ComplexityOrder:
    """Tabulated asymptotic order; identical for training and inference"""
    arch = ArchKind.parse(arch)
    regime = AsymptoticRegime.parse(regime)
    order = _ORDERS[arch][list(AsymptoticRegime).index(regime)]
    if order is None:
        raise NotApplicableError(f"{arch.label} in {regime.value}: {SHALLOW_ONLY_MESSAGE}")
    return ComplexityOrder(order)


@dataclass(frozen=True)
class SweepRow:
    arch: ArchKind
    mode: Mode
    P: int
    R: int
    N: int
    multiplications: int

    def to_dict(self) -> Dict:
        row = asdict(self)
        row["arch"] = self.arch.value
        row["mode"] = self.mode.value
        return row


def sweep(archs: Iterable[ArchKind], mode: Mode, P: int, R: int,
          n_range: Iterable[int]) -> List[SweepRow]:
    """Shallow cost of each architecture over a range of hidden sizes.

    Rows are ordered by architecture (enum order) and then N ascending; an
    empty range yields no rows.
    """
    mode = Mode.parse(mode)
    ordered = sorted({ArchKind.parse(a) for a in archs}, key=lambda a: a.order)
    hidden = sorted(set(n_range))
    rows = [
        SweepRow(arch, mode, P, R, N, shallow_cost(ShallowSpec(arch, P, R, N), mode))
        for arch in ordered
        for N in hidden
    ]
    logger.debug("sweep produced %d rows for %d architectures", len(rows), len(ordered))
    return rows


def cheapest(costs: Dict[ArchKind, Optional[int]]) -> Optional[ArchKind]:
    """Architecture with the lowest known cost (ties broken by enum order)"""
    known = [(value, arch.order, arch) for arch, value in costs.items() if value is not None]
    return min(known)[2] if known else None
