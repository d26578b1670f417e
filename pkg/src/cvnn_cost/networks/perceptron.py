"""
Complex-Valued Perceptrons
Fully complex (CVFNN) and split-complex (SCFNN) multilayer perceptrons
"""

from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from ..core import numerics as nx
from ..core.counter import MultCounter
from ..core.specs import ArchKind, ShallowSpec, Spec
from .base import WEIGHT, Network


def layer_sizes(spec: Spec) -> List[int]:
    """I^0..I^L; a shallow spec is the two-layer stack [P, N, R]"""
    if isinstance(spec, ShallowSpec):
        return [spec.P, spec.N, spec.R]
    return spec.layer_sizes()


def init_layers(sizes: List[int], rng: np.random.Generator):
    """W^l (I^l x I^(l-1)) and b^l (I^l), complex uniform scaled by 1/sqrt(fan-in)"""
    params: Dict[str, np.ndarray] = {}
    groups: Dict[str, str] = {}
    for l in range(1, len(sizes)):
        scale = nx.fan_in_scale(sizes[l - 1])
        params[f"W{l}"] = nx.uniform_complex(rng, (sizes[l], sizes[l - 1]), scale)
        params[f"b{l}"] = nx.uniform_complex(rng, (sizes[l],), scale)
        groups[f"W{l}"] = WEIGHT
        groups[f"b{l}"] = WEIGHT
    return params, groups


@dataclass
class LayerCache:
    """Layer outputs h^0..h^L (h^0 is the input) and pre-activations z^1..z^L"""
    outputs: List[np.ndarray] = field(default_factory=list)
    sums: List[np.ndarray] = field(default_factory=list)


class LayeredPerceptron(Network):
    """Stack of fully connected complex layers with a shared activation"""

    def __init__(self, spec: Spec, rng: np.random.Generator):
        self.sizes = layer_sizes(spec)
        params, groups = init_layers(self.sizes, rng)
        super().__init__(spec, params, groups)

    @property
    def depth(self) -> int:
        return len(self.sizes) - 1

    def activation(self, z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def forward(self, x: np.ndarray, ctx: MultCounter):
        cache = LayerCache(outputs=[x], sums=[None])
        h = x
        for l in range(1, self.depth + 1):
            z = nx.matvec(self.params[f"W{l}"], h, ctx) + self.params[f"b{l}"]
            h = self.activation(z)
            cache.sums.append(z)
            cache.outputs.append(h)
        return h, cache

    def directions(self, cache: LayerCache, deltas, e, ctx: MultCounter) -> Dict[str, np.ndarray]:
        dirs = {}
        for l in range(1, self.depth + 1):
            dirs[f"W{l}"] = nx.outer_conj(deltas[l], cache.outputs[l - 1], ctx)
            dirs[f"b{l}"] = deltas[l]
        return dirs


class CVFNN(LayeredPerceptron):
    """Fully complex MLP with tanh of the complex argument in every layer"""

    arch = ArchKind.CVFNN

    def activation(self, z):
        return nx.ctanh(z)

    def _derivative(self, h, ctx):
        # tanh' = 1 - tanh^2, from the cached output
        return 1.0 - nx.cmul(h, h, ctx)

    def backward(self, cache: LayerCache, e, ctx: MultCounter):
        L = self.depth
        deltas = [None for _ in range(L + 1)]
        deltas[L] = nx.cmul(e, np.conj(self._derivative(cache.outputs[L], ctx)), ctx)
        for l in range(L - 1, 0, -1):
            s = nx.rmatvec(self.params[f"W{l + 1}"], deltas[l + 1], ctx)
            deltas[l] = nx.cmul(s, np.conj(self._derivative(cache.outputs[l], ctx)), ctx)
        return deltas


class SCFNN(LayeredPerceptron):
    """Split-complex MLP: tanh applied to real and imaginary parts separately.

    `trace` holds the squared magnitude of each hidden layer's latest deltas.
    """

    arch = ArchKind.SCFNN

    def __init__(self, spec: Spec, rng: np.random.Generator):
        super().__init__(spec, rng)
        self.trace: Dict[int, np.ndarray] = {}

    def activation(self, z):
        return nx.split_tanh(z)

    def _derivative(self, z, ctx):
        """sech^2 of each component, as 1 / cosh^2"""
        c_re = nx.rcosh(z.real)
        c_im = nx.rcosh(z.imag)
        d_re = nx.div_real(1.0, nx.rmul(c_re, c_re, ctx), ctx)
        d_im = nx.div_real(1.0, nx.rmul(c_im, c_im, ctx), ctx)
        return nx.complex_from_parts(d_re, d_im)

    def backward(self, cache: LayerCache, e, ctx: MultCounter):
        L = self.depth
        deltas = [None for _ in range(L + 1)]
        deltas[L] = nx.hadamard(e, self._derivative(cache.sums[L], ctx), ctx)
        for l in range(L - 1, 0, -1):
            s = nx.rmatvec(self.params[f"W{l + 1}"], deltas[l + 1], ctx)
            deltas[l] = nx.hadamard(s, self._derivative(cache.sums[l], ctx), ctx)
            self.trace[l] = nx.sqmag(deltas[l], ctx)
        return deltas
