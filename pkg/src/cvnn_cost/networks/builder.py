"""
Network Builder
Seeded construction and the module-level infer / train_step entry points
"""

import logging

import numpy as np

from ..core.counter import MultCounter
from ..core.errors import InvalidSpecError, NotApplicableError
from ..core.specs import SHALLOW_ONLY_MESSAGE, ArchKind, DeepSpec, ShallowSpec, Spec
from .base import Network, TrainConfig
from .mvn import MLMVN
from .perceptron import CVFNN, SCFNN
from .ptrbf import PTRBF
from .rbf import CRBF, FCRBF

logger = logging.getLogger(__name__)

NETWORK_CLASSES = {
    ArchKind.CVFNN: CVFNN,
    ArchKind.SCFNN: SCFNN,
    ArchKind.MLMVN: MLMVN,
    ArchKind.CRBF: CRBF,
    ArchKind.FCRBF: FCRBF,
    ArchKind.PTRBF: PTRBF,
}


def build(spec: Spec, seed: int = 0) -> Network:
    """Deterministic network for (spec, seed)"""
    if not isinstance(spec, (ShallowSpec, DeepSpec)):
        raise InvalidSpecError(f"not an architecture spec: {spec!r}")
    if spec.arch.shallow_only and isinstance(spec, DeepSpec):
        raise NotApplicableError(f"{spec.arch.label}: {SHALLOW_ONLY_MESSAGE}")
    rng = np.random.default_rng(seed)
    net = NETWORK_CLASSES[spec.arch](spec, rng)
    logger.debug("built %s with seed %d", spec.describe(), seed)
    return net


def infer(net: Network, x, ctx: MultCounter) -> np.ndarray:
    return net.infer(x, ctx)


def train_step(net: Network, x, d, cfg: TrainConfig, ctx: MultCounter) -> float:
    return net.train_step(x, d, cfg, ctx)
