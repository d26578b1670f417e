"""
Complex RBF Networks
Shallow complex radial basis networks: Gaussian (C-RBF) and fully complex sech (FC-RBF)
"""

from dataclasses import dataclass
from typing import Dict

import numpy as np

from ..core import numerics as nx
from ..core.counter import MultCounter
from ..core.errors import NotApplicableError
from ..core.specs import SHALLOW_ONLY_MESSAGE, ArchKind, ShallowSpec, Spec
from .base import CENTER, WEIGHT, WIDTH, WIDTH_FLOOR, Network


def _require_shallow(spec: Spec, arch: ArchKind) -> ShallowSpec:
    if not isinstance(spec, ShallowSpec):
        raise NotApplicableError(f"{arch.label}: {SHALLOW_ONLY_MESSAGE}")
    return spec


def init_centers(rng: np.random.Generator, shape) -> np.ndarray:
    """Centers uniform in the unit square, per component"""
    return nx.uniform_complex(rng, shape, low=0.0, high=1.0)


def init_readout(rng: np.random.Generator, R: int, N: int) -> Dict[str, np.ndarray]:
    scale = nx.fan_in_scale(N)
    return {
        "W": nx.uniform_complex(rng, (R, N), scale),
        "b": nx.uniform_complex(rng, (R,), scale),
    }


@dataclass
class GaussianCache:
    diff: np.ndarray   # x - c_n, (N, P)
    t: np.ndarray      # ||x - c_n||^2 / sigma_n^2
    phi: np.ndarray    # exp(-t), real in (0, 1]


class CRBF(Network):
    """Complex RBF with real Gaussian kernels exp(-||x - c_n||^2 / sigma_n^2).

    Widths are stored as variances v_n = sigma_n^2 and kept at or above the
    width floor. The bias is trained as the weight of a constant unit regressor.
    """

    arch = ArchKind.CRBF

    def __init__(self, spec: Spec, rng: np.random.Generator):
        spec = _require_shallow(spec, self.arch)
        params = {
            "C": init_centers(rng, (spec.N, spec.P)),
            "v": np.ones(spec.N),
            **init_readout(rng, spec.R, spec.N),
        }
        groups = {"C": CENTER, "v": WIDTH, "W": WEIGHT, "b": WEIGHT}
        super().__init__(spec, params, groups)

    def forward(self, x, ctx: MultCounter):
        diff = x[np.newaxis, :] - self.params["C"]
        a = np.sum(nx.sqmag(diff, ctx), axis=1)
        t = nx.div_real(a, self.params["v"], ctx)
        phi = nx.gaussian(t)
        y = nx.matvec_real(self.params["W"], phi, ctx) + self.params["b"]
        return y, GaussianCache(diff, t, phi)

    def backward(self, cache: GaussianCache, e, ctx: MultCounter):
        g = nx.rmatvec_re(self.params["W"], e, ctx)
        return nx.rmul(g, cache.phi, ctx)

    def directions(self, cache: GaussianCache, q, e, ctx: MultCounter):
        v = self.params["v"]
        kappa = nx.div_real(q, v, ctx)
        half = nx.cscale(cache.diff, kappa[:, np.newaxis], ctx)
        return {
            "W": nx.outer_real(e, cache.phi, ctx),
            "b": nx.cmul(e, np.ones_like(e), ctx),
            "C": half + half,
            "v": nx.div_real(nx.rmul(q, cache.t, ctx), v, ctx),
        }

    def constrain(self):
        self.params["v"] = np.maximum(self.params["v"], WIDTH_FLOOR)


@dataclass
class SechCache:
    diff: np.ndarray   # x - c_n, (N, P)
    z: np.ndarray      # sum_p g_np (x_p - c_np)
    phi: np.ndarray    # sech(z)


class FCRBF(Network):
    """Fully complex RBF: phi_n = sech(sum_p g_np (x_p - c_np)) with complex widths g"""

    arch = ArchKind.FCRBF

    def __init__(self, spec: Spec, rng: np.random.Generator):
        spec = _require_shallow(spec, self.arch)
        params = {
            "C": init_centers(rng, (spec.N, spec.P)),
            "G": nx.uniform_complex(rng, (spec.N, spec.P), nx.fan_in_scale(spec.P)),
            **init_readout(rng, spec.R, spec.N),
        }
        groups = {"C": CENTER, "G": WIDTH, "W": WEIGHT, "b": WEIGHT}
        super().__init__(spec, params, groups)

    def forward(self, x, ctx: MultCounter):
        diff = x[np.newaxis, :] - self.params["C"]
        z = np.sum(nx.cmul(self.params["G"], diff, ctx), axis=1)
        phi = nx.csech(z)
        y = nx.matvec(self.params["W"], phi, ctx) + self.params["b"]
        return y, SechCache(diff, z, phi)

    def backward(self, cache: SechCache, e, ctx: MultCounter):
        g = nx.rmatvec(self.params["W"], e, ctx)
        sech2 = nx.cmul(cache.phi, cache.phi, ctx)
        # d/dz sech z = -sech^2 z sinh z
        fprime = -nx.cmul(sech2, nx.csinh(cache.z), ctx)
        return nx.cmul(g, np.conj(fprime), ctx)

    def directions(self, cache: SechCache, delta, e, ctx: MultCounter):
        delta = delta[:, np.newaxis]
        return {
            "W": nx.outer_conj(e, cache.phi, ctx),
            "b": nx.cmul(e, np.ones_like(e), ctx),
            "G": nx.cmul(delta, np.conj(cache.diff), ctx),
            "C": -nx.cmul(delta, np.conj(self.params["G"]), ctx),
        }
