"""
Multilayer Multi-Valued Neurons
Continuous unit-circle neurons trained by the derivative-free error-correction rule
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ..core import numerics as nx
from ..core.counter import MultCounter, Phase
from ..core.errors import NonFiniteError, NotApplicableError
from ..core.specs import ArchKind
from .base import WEIGHT, TrainConfig
from .perceptron import LayeredPerceptron


@dataclass
class MVNCache:
    """Layer outputs h^0..h^L, weighted sums z^l and their moduli |z^l|"""
    outputs: List[np.ndarray] = field(default_factory=list)
    sums: List[Optional[np.ndarray]] = field(default_factory=list)
    moduli: List[Optional[np.ndarray]] = field(default_factory=list)


class MLMVN(LayeredPerceptron):
    """Feedforward network of multi-valued neurons.

    Each neuron outputs z / |z|. Training projects the target onto the unit
    circle, shares the output error backwards through the conjugate weights
    (divided by fan-in + 1) and then corrects the layers one at a time, from
    the first to the output layer, feeding each layer the refreshed outputs
    of the layer before it.

    The refreshed weighted sum is taken as z + eta * delta / |z|, which is
    exact when every input of the corrected layer lies on the unit circle.
    Hidden outputs always do; network inputs must be unit-modulus (phase
    encoded) for the refresh to match a fresh forward pass of layer 1.
    """

    arch = ArchKind.MLMVN

    def forward(self, x: np.ndarray, ctx: MultCounter):
        cache = MVNCache(outputs=[x], sums=[None], moduli=[None])
        h = x
        for l in range(1, self.depth + 1):
            z = nx.matvec(self.params[f"W{l}"], h, ctx) + self.params[f"b{l}"]
            h, modulus = nx.normalize(z, ctx)
            cache.sums.append(z)
            cache.moduli.append(modulus)
            cache.outputs.append(h)
        return h, cache

    def loss(self, d, y) -> float:
        """Angular error: 1/2 sum of squared wrapped phase differences"""
        return nx.angular_loss(d, y)

    def backward(self, cache: MVNCache, e, ctx: MultCounter):
        L = self.depth
        outputs = cache.outputs
        deltas = [None for _ in range(L + 1)]

        target, _ = nx.normalize(e + outputs[L], ctx)
        deltas[L] = nx.cdiv_real(target - outputs[L], self.sizes[L - 1] + 1, ctx)

        for l in range(L - 1, 0, -1):
            s = nx.rmatvec(self.params[f"W{l + 1}"], deltas[l + 1], ctx)
            shared = nx.cdiv_real(s, self.sizes[l - 1] + 1, ctx)
            target, _ = nx.normalize(outputs[l] + shared, ctx)
            deltas[l] = target - outputs[l]
        return deltas

    def directions(self, cache, deltas, e, ctx):
        raise NotApplicableError(
            "MLMVN learns by error correction; it has no gradient directions")

    def correct(self, cache: MVNCache, deltas, eta: float, ctx: MultCounter):
        """Sequential layer correction (runs under the ParameterUpdate phase)"""
        L = self.depth
        inputs = cache.outputs[0]
        for l in range(1, L + 1):
            scaled = nx.cdiv_real(deltas[l], cache.moduli[l], ctx)
            rate = nx.mvn_rate(eta, self.sizes[l - 1])
            step = nx.outer_conj(scaled, inputs, ctx)
            self.params[f"W{l}"] = nx.fused_axpy(self.params[f"W{l}"], rate, step)
            self.params[f"b{l}"] = nx.fused_axpy(self.params[f"b{l}"], rate, scaled)
            if l < L:
                # z' = z + eta * delta, exact for unit-circle inputs
                refreshed = nx.fused_axpy(cache.sums[l], eta, scaled)
                inputs, _ = nx.normalize(refreshed, ctx)

    def train_step(self, x, d, cfg: TrainConfig, ctx: MultCounter) -> float:
        x = self._as_vector(x, self.inputs, "input")
        d = self._as_vector(d, self.outputs, "target")
        with ctx.phase(Phase.FORWARD):
            y, cache = self.forward(x, ctx)
        loss = self.loss(d, y)
        if not np.isfinite(loss):
            raise NonFiniteError(f"{self.arch.label}: non-finite loss {loss}")
        with ctx.phase(Phase.BACKWARD_DELTA):
            deltas = self.backward(cache, d - y, ctx)
        with ctx.phase(Phase.PARAMETER_UPDATE):
            self.correct(cache, deltas, cfg.rate_for(WEIGHT), ctx)
        return loss


@dataclass
class MVNeuron:
    """A single multi-valued neuron: weights w_1..w_n and bias w_0"""
    weights: np.ndarray
    bias: complex = 0j

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=complex)
        self.bias = complex(self.bias)

    @property
    def fan_in(self) -> int:
        return self.weights.shape[0]

    def weighted_sum(self, x, ctx: MultCounter) -> complex:
        return complex(np.sum(nx.cmul(self.weights, x, ctx))) + self.bias

    def output(self, x, ctx: MultCounter) -> complex:
        y, _ = nx.normalize(self.weighted_sum(x, ctx), ctx)
        return complex(y)


def mvn_correct(neuron: MVNeuron, x, d: complex, eta: float = 1.0,
                ctx: Optional[MultCounter] = None) -> MVNeuron:
    """One error-correction step w_i += eta / (n + 1) * (d - z) * conj(x_i).

    The bias is the weight of a constant input 1. With eta = 1 and every
    |x_i| = 1 the corrected weighted sum equals d exactly.
    """
    ctx = ctx if ctx is not None else MultCounter()
    x = np.asarray(x, dtype=complex)
    with ctx.phase(Phase.FORWARD):
        z = neuron.weighted_sum(x, ctx)
    delta = complex(d) - z
    rate = nx.mvn_rate(eta, neuron.fan_in)
    with ctx.phase(Phase.PARAMETER_UPDATE):
        step = nx.cmul(delta, np.conj(x), ctx)
    return MVNeuron(
        weights=nx.fused_axpy(neuron.weights, rate, step),
        bias=complex(nx.fused_axpy(neuron.bias, rate, delta)),
    )
