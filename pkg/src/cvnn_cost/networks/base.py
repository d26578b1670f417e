"""
Network Base
Parameter store, phase choreography and the online training step shared by
all six architectures

Every product in this package goes through cvnn_cost.core.numerics; the
networks package itself contains no arithmetic multiplication or division.
"""

import copy
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ..core import numerics as nx
from ..core.counter import MultCounter, Phase
from ..core.errors import DimensionError, InvalidSpecError, NonFiniteError
from ..core.specs import ArchKind, Spec

logger = logging.getLogger(__name__)

WIDTH_FLOOR = 1e-6

WEIGHT = "weight"
CENTER = "center"
WIDTH = "width"


@dataclass(frozen=True)
class TrainConfig:
    """Learning rates for one online step.

    `learning_rate` applies to every parameter group without its own rate;
    RBF networks may give centers and widths separate rates.
    """
    learning_rate: float = 0.01
    weight_rate: Optional[float] = None
    center_rate: Optional[float] = None
    width_rate: Optional[float] = None

    def __post_init__(self):
        for name in ("learning_rate", "weight_rate", "center_rate", "width_rate"):
            value = getattr(self, name)
            if value is None and name != "learning_rate":
                continue
            if not np.isfinite(value) or value <= 0:
                raise InvalidSpecError(f"{name} must be finite and positive, got {value}")

    def rate_for(self, group: str) -> float:
        specific = {WEIGHT: self.weight_rate, CENTER: self.center_rate, WIDTH: self.width_rate}.get(group)
        return self.learning_rate if specific is None else specific

    @classmethod
    def from_dict(cls, data: Optional[Dict]) -> "TrainConfig":
        data = dict(data or {})
        return cls(**{k: data[k] for k in ("learning_rate", "weight_rate", "center_rate", "width_rate") if k in data})


class Network(ABC):
    """A CVNN with its parameters.

    Subclasses implement the three phases:
      forward     -> (output, cache)                     [Forward]
      backward    -> per-layer deltas                    [BackwardDelta]
      directions  -> descent direction per parameter    [ParameterUpdate]
    A descent direction is the exact negative gradient of 1/2 ||d - y||^2
    (real and imaginary parts packed as one complex number).

    Single-owner mutable state: do not share one instance between threads.
    """

    arch: ArchKind

    def __init__(self, spec: Spec, params: Dict[str, np.ndarray], groups: Dict[str, str]):
        self.spec = spec
        self.params = params
        self.groups = groups

    # -- shape contract -----------------------------------------------------

    @property
    def inputs(self) -> int:
        return self.spec.inputs

    @property
    def outputs(self) -> int:
        return self.spec.outputs

    def _as_vector(self, v, length: int, what: str) -> np.ndarray:
        v = np.asarray(v, dtype=complex)
        if v.ndim != 1 or v.shape[0] != length:
            raise DimensionError(f"{what} must be a vector of length {length}, got shape {v.shape}")
        return v

    # -- phases -------------------------------------------------------------

    @abstractmethod
    def forward(self, x: np.ndarray, ctx: MultCounter) -> Tuple[np.ndarray, Any]:
        """Output for input x plus whatever the backward pass needs"""

    @abstractmethod
    def backward(self, cache: Any, e: np.ndarray, ctx: MultCounter) -> Any:
        """Deltas for every layer given the output error e = d - y"""

    @abstractmethod
    def directions(self, cache: Any, deltas: Any, e: np.ndarray, ctx: MultCounter) -> Dict[str, np.ndarray]:
        """Descent direction for every parameter"""

    def constrain(self):
        """Re-establish parameter invariants after an update (no-op by default)"""

    # -- public operations --------------------------------------------------

    def infer(self, x, ctx: MultCounter) -> np.ndarray:
        x = self._as_vector(x, self.inputs, "input")
        with ctx.phase(Phase.FORWARD):
            y, _ = self.forward(x, ctx)
        return y

    def loss(self, d: np.ndarray, y: np.ndarray) -> float:
        return nx.half_sq_norm(d - y)

    def descent_directions(self, x, d, ctx: Optional[MultCounter] = None) -> Dict[str, np.ndarray]:
        """Exact negative gradients at (x, d) without touching the parameters"""
        ctx = ctx if ctx is not None else MultCounter()
        x = self._as_vector(x, self.inputs, "input")
        d = self._as_vector(d, self.outputs, "target")
        with ctx.phase(Phase.FORWARD):
            y, cache = self.forward(x, ctx)
        e = d - y
        with ctx.phase(Phase.BACKWARD_DELTA):
            deltas = self.backward(cache, e, ctx)
        with ctx.phase(Phase.PARAMETER_UPDATE):
            return self.directions(cache, deltas, e, ctx)

    def train_step(self, x, d, cfg: TrainConfig, ctx: MultCounter) -> float:
        """One online step; returns the loss measured before the update"""
        x = self._as_vector(x, self.inputs, "input")
        d = self._as_vector(d, self.outputs, "target")
        with ctx.phase(Phase.FORWARD):
            y, cache = self.forward(x, ctx)
        e = d - y
        loss = self.loss(d, y)
        if not np.isfinite(loss):
            raise NonFiniteError(f"{self.arch.label}: non-finite loss {loss}")
        with ctx.phase(Phase.BACKWARD_DELTA):
            deltas = self.backward(cache, e, ctx)
        with ctx.phase(Phase.PARAMETER_UPDATE):
            self.apply(self.directions(cache, deltas, e, ctx), cfg)
        return loss

    def apply(self, directions: Dict[str, np.ndarray], cfg: TrainConfig):
        for name, direction in directions.items():
            rate = cfg.rate_for(self.groups[name])
            self.params[name] = nx.fused_axpy(self.params[name], rate, direction)
        self.constrain()

    # -- parameter access ---------------------------------------------------

    def parameters(self) -> Dict[str, np.ndarray]:
        """Copies of every parameter array, keyed by name"""
        return {name: value.copy() for name, value in self.params.items()}

    def set_parameters(self, params: Dict[str, np.ndarray]):
        for name, value in params.items():
            if name not in self.params:
                raise DimensionError(f"unknown parameter '{name}'")
            value = np.asarray(value, dtype=self.params[name].dtype)
            if value.shape != self.params[name].shape:
                raise DimensionError(f"parameter '{name}' must have shape {self.params[name].shape}")
            self.params[name] = value.copy()

    def copy(self) -> "Network":
        return copy.deepcopy(self)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.spec.describe()}>"
