"""
Single-Neuron XOR
A lone split-complex neuron separating the four XOR patterns
"""

import logging
from dataclasses import dataclass
from typing import List

import numpy as np

from ..core import numerics as nx
from ..core.counter import MultCounter, Phase

logger = logging.getLogger(__name__)

# x1 + i x2 for x1, x2 in {-1, +1}; the XOR class is x1 * x2
PATTERNS = np.array([-1 - 1j, -1 + 1j, 1 - 1j, 1 + 1j])
CLASSES = np.array([1, -1, -1, 1])
TARGET_SCALE = 0.8
UNDEFINED_EPS = 1e-3


@dataclass
class XorResult:
    seed: int
    accuracy: float
    steps: int
    converged: bool


class SplitNeuron:
    """f(x) = tanh(Re z) + i tanh(Im z) with z = w x + b"""

    def __init__(self, w: complex = 0j, b: complex = 0j):
        self.w = complex(w)
        self.b = complex(b)

    @classmethod
    def random(cls, rng: np.random.Generator) -> "SplitNeuron":
        w, b = nx.uniform_complex(rng, (2,))
        return cls(w, b)

    def output(self, x, ctx: MultCounter) -> np.ndarray:
        z = nx.cmul(self.w, x, ctx) + self.b
        return nx.split_tanh(z)

    def step(self, x: complex, target: complex, lr: float, ctx: MultCounter):
        with ctx.phase(Phase.FORWARD):
            z = complex(nx.cmul(self.w, x, ctx)) + self.b
        f = nx.split_tanh(z)
        with ctx.phase(Phase.BACKWARD_DELTA):
            d_re = 1.0 - nx.rmul(f.real, f.real, ctx)
            d_im = 1.0 - nx.rmul(f.imag, f.imag, ctx)
            delta = nx.hadamard(target - f, nx.complex_from_parts(d_re, d_im), ctx)
        with ctx.phase(Phase.PARAMETER_UPDATE):
            self.w = complex(nx.fused_axpy(self.w, lr, nx.cmul(delta, np.conj(x), ctx)))
            self.b = complex(nx.fused_axpy(self.b, lr, delta))


def classify(f: np.ndarray, eps: float = UNDEFINED_EPS) -> np.ndarray:
    """sign(Re f) * sign(Im f); 0 (undefined) where either part is within eps of 0"""
    f = np.asarray(f)
    classes = np.sign(f.real) * np.sign(f.imag)
    undefined = (np.abs(f.real) < eps) | (np.abs(f.imag) < eps)
    return np.where(undefined, 0, classes).astype(int)


def accuracy(neuron: SplitNeuron) -> float:
    ctx = MultCounter()
    with ctx.phase(Phase.FORWARD):
        f = neuron.output(PATTERNS, ctx)
    return float(np.mean(classify(f) == CLASSES))


def xor_demo(seed: int, max_steps: int = 10000, learning_rate: float = 0.1) -> XorResult:
    """Train one neuron online over the XOR patterns until all four are classified"""
    rng = np.random.default_rng(seed)
    neuron = SplitNeuron.random(rng)
    targets = TARGET_SCALE * PATTERNS
    ctx = MultCounter()

    steps = 0
    while steps < max_steps:
        if accuracy(neuron) == 1.0:
            break
        for x, target in zip(PATTERNS, targets):
            neuron.step(x, target, learning_rate, ctx)
            steps += 1
            if steps >= max_steps:
                break

    score = accuracy(neuron)
    logger.debug("xor seed %d: accuracy %.2f after %d steps", seed, score, steps)
    return XorResult(seed, score, steps, score == 1.0)


def xor_sweep(seeds=range(10), max_steps: int = 10000) -> List[XorResult]:
    return [xor_demo(seed, max_steps) for seed in seeds]
