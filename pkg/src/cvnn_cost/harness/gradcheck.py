"""
Gradient Check
Analytic descent directions vs central finite differences of 1/2 ||d - y||^2
"""

import logging
from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from ..core import numerics as nx
from ..core.counter import MultCounter, Phase
from ..core.errors import InvalidSpecError, NonFiniteError, NotApplicableError
from ..core.specs import ArchKind
from ..networks import Network

logger = logging.getLogger(__name__)

MIN_STEP = 1e-7
MAX_STEP = 1e-4


@dataclass
class GradientCheckResult:
    max_rel_error: float
    analytic_norm: float
    per_parameter: Dict[str, float] = field(default_factory=dict)

    def passed(self, tolerance: float) -> bool:
        return self.max_rel_error < tolerance


def _loss(net: Network, x: np.ndarray, d: np.ndarray) -> float:
    ctx = MultCounter()
    with ctx.phase(Phase.FORWARD):
        y, _ = net.forward(x, ctx)
    return nx.half_sq_norm(d - y)


def numeric_directions(net: Network, x, d, step: float = 1e-6) -> Dict[str, np.ndarray]:
    """Negative central-difference gradient for every parameter component.

    Complex parameters are perturbed along their real and imaginary parts
    separately and packed back into one complex direction.
    """
    x = np.asarray(x, dtype=complex)
    d = np.asarray(d, dtype=complex)
    shifted = net.copy()
    directions = {}
    for name, value in net.parameters().items():
        is_complex = np.iscomplexobj(value)
        axes = (1.0, 1j) if is_complex else (1.0,)
        grad = np.zeros_like(value)
        for index in np.ndindex(value.shape):
            for axis in axes:
                plus, minus = value.copy(), value.copy()
                plus[index] += axis * step
                minus[index] -= axis * step
                shifted.set_parameters({name: plus})
                loss_plus = _loss(shifted, x, d)
                shifted.set_parameters({name: minus})
                loss_minus = _loss(shifted, x, d)
                quotient = (loss_plus - loss_minus) / (2 * step)
                if not np.isfinite(quotient):
                    raise NonFiniteError(f"non-finite difference quotient for {name}{index}")
                grad[index] += axis * quotient
            shifted.set_parameters({name: value})
        directions[name] = -grad
    return directions


def gradient_check(net: Network, x, d, step: float = 1e-6) -> GradientCheckResult:
    """Largest per-parameter relative error between analytic and numeric directions.

    Relative error of a block is ||a - n||_inf / max(||a||_inf, ||n||_inf, 1e-12).
    """
    if net.arch is ArchKind.MLMVN:
        raise NotApplicableError("MLMVN is trained by error correction, not by gradients")
    if not MIN_STEP <= step <= MAX_STEP:
        raise InvalidSpecError(f"step must be in [{MIN_STEP}, {MAX_STEP}], got {step}")

    analytic = net.descent_directions(x, d)
    numeric = numeric_directions(net, x, d, step)

    per_parameter = {}
    for name, a in analytic.items():
        n = numeric[name]
        scale = max(np.max(np.abs(a)), np.max(np.abs(n)), 1e-12)
        per_parameter[name] = float(np.max(np.abs(a - n)) / scale)

    norm = float(np.sqrt(sum(np.sum(np.abs(a) ** 2) for a in analytic.values())))
    result = GradientCheckResult(max(per_parameter.values()), norm, per_parameter)
    logger.debug("%s gradient check: max rel error %.3e", net.spec.describe(), result.max_rel_error)
    return result
