"""
Phase-Transmittance RBF
Split-complex Gaussian neurons followed by a linear complex bottleneck, stackable into deep networks
"""

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ..core import numerics as nx
from ..core.counter import MultCounter
from ..core.specs import ShallowSpec, Spec, ArchKind
from .base import CENTER, WEIGHT, WIDTH, WIDTH_FLOOR, Network


def layer_shapes(spec: Spec) -> List[Tuple[int, int, int]]:
    """(fan-in O^(l-1), neurons I^l, bottleneck O^l) per layer"""
    if isinstance(spec, ShallowSpec):
        return [(spec.P, spec.N, spec.R)]
    O = spec.bottleneck_sizes()
    return [(O[l - 1], spec.neurons[l - 1], O[l]) for l in range(1, spec.L + 1)]


@dataclass
class PTLayerCache:
    diff: np.ndarray    # h - c_n, (I, Q)
    a_re: np.ndarray    # ||Re(h - c_n)||^2
    a_im: np.ndarray    # ||Im(h - c_n)||^2
    phi: np.ndarray     # exp(-a_re / vr) + i exp(-a_im / vi)


class PTRBF(Network):
    """Phase-transmittance RBF network.

    Layer l holds centers C (I x Q), per-neuron variance pairs (vr, vi) and a
    bottleneck projection W (O x I) with bias b; its O outputs feed layer l+1.
    """

    arch = ArchKind.PTRBF

    def __init__(self, spec: Spec, rng: np.random.Generator):
        self.shapes = layer_shapes(spec)
        params, groups = {}, {}
        for l, (Q, I, O) in enumerate(self.shapes, start=1):
            scale = nx.fan_in_scale(I)
            params[f"C{l}"] = nx.uniform_complex(rng, (I, Q), low=0.0, high=1.0)
            params[f"vr{l}"] = np.ones(I)
            params[f"vi{l}"] = np.ones(I)
            params[f"W{l}"] = nx.uniform_complex(rng, (O, I), scale)
            params[f"b{l}"] = nx.uniform_complex(rng, (O,), scale)
            groups.update({f"C{l}": CENTER, f"vr{l}": WIDTH, f"vi{l}": WIDTH,
                           f"W{l}": WEIGHT, f"b{l}": WEIGHT})
        super().__init__(spec, params, groups)

    @property
    def depth(self) -> int:
        return len(self.shapes)

    def forward(self, x, ctx: MultCounter):
        caches = [None]
        h = x
        for l in range(1, self.depth + 1):
            diff = h[np.newaxis, :] - self.params[f"C{l}"]
            a_re = np.sum(nx.rmul(diff.real, diff.real, ctx), axis=1)
            a_im = np.sum(nx.rmul(diff.imag, diff.imag, ctx), axis=1)
            t_re = nx.div_real(a_re, self.params[f"vr{l}"], ctx)
            t_im = nx.div_real(a_im, self.params[f"vi{l}"], ctx)
            phi = nx.complex_from_parts(nx.gaussian(t_re), nx.gaussian(t_im))
            h = nx.matvec(self.params[f"W{l}"], phi, ctx) + self.params[f"b{l}"]
            caches.append(PTLayerCache(diff, a_re, a_im, phi))
        return h, caches

    def backward(self, caches, e, ctx: MultCounter):
        """Bottleneck errors eps^l and kernel sensitivities q^l, output layer first"""
        L = self.depth
        eps = [None for _ in range(L + 1)]
        sens = [None for _ in range(L + 1)]
        eps[L] = e
        for l in range(L, 0, -1):
            cache = caches[l]
            g = nx.rmatvec(self.params[f"W{l}"], eps[l], ctx)
            q_re = nx.rmul(g.real, cache.phi.real, ctx)
            q_im = nx.rmul(g.imag, cache.phi.imag, ctx)
            sens[l] = (q_re, q_im)
            if l > 1:
                k_re = nx.div_real(nx.rmul(q_re[:, np.newaxis], cache.diff.real, ctx),
                                   self.params[f"vr{l}"][:, np.newaxis], ctx)
                k_im = nx.div_real(nx.rmul(q_im[:, np.newaxis], cache.diff.imag, ctx),
                                   self.params[f"vi{l}"][:, np.newaxis], ctx)
                half = nx.complex_from_parts(np.sum(k_re, axis=0), np.sum(k_im, axis=0))
                eps[l - 1] = -(half + half)
        return eps, sens

    def directions(self, caches, backward, e, ctx: MultCounter):
        eps, sens = backward
        dirs = {}
        for l in range(1, self.depth + 1):
            cache = caches[l]
            q_re, q_im = sens[l]
            vr, vi = self.params[f"vr{l}"], self.params[f"vi{l}"]
            dirs[f"W{l}"] = nx.outer_conj(eps[l], cache.phi, ctx)
            dirs[f"b{l}"] = nx.cmul(eps[l], np.ones_like(eps[l]), ctx)

            k_re = nx.div_real(q_re, vr, ctx)
            k_im = nx.div_real(q_im, vi, ctx)
            half = nx.complex_from_parts(
                nx.rmul(k_re[:, np.newaxis], cache.diff.real, ctx),
                nx.rmul(k_im[:, np.newaxis], cache.diff.imag, ctx),
            )
            dirs[f"C{l}"] = half + half

            dirs[f"vr{l}"] = nx.div_real(nx.div_real(nx.rmul(q_re, cache.a_re, ctx), vr, ctx), vr, ctx)
            dirs[f"vi{l}"] = nx.div_real(nx.div_real(nx.rmul(q_im, cache.a_im, ctx), vi, ctx), vi, ctx)
        return dirs

    def constrain(self):
        for l in range(1, self.depth + 1):
            for name in (f"vr{l}", f"vi{l}"):
                self.params[name] = np.maximum(self.params[name], WIDTH_FLOOR)
