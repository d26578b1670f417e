"""
Metered Complex Arithmetic
Double-precision kernels that report every real multiplication to a MultCounter

Counting conventions:
  complex x complex = 4, complex x real = 2, real x real = 1,
  |z|^2 = 2, real division = 1 (complex / real = 2).
Additions, subtractions, negation, comparisons, square roots and activation
functions are free: activations are assumed to come from lookup tables.
Learning-rate scalings are fused into the adjacent counted product and cost 0.

All kernels broadcast over numpy arrays; one call on k broadcast elements
records k occurrences of its event kind.
"""

from typing import Tuple, Union

import numpy as np

from .counter import MultCounter, MultKind
from .errors import DimensionError

ArrayLike = Union[complex, float, np.ndarray]

NORM_EPS = 1e-30


def _size(*operands) -> int:
    return int(np.broadcast(*[np.asarray(op) for op in operands]).size)


def _metered(ctx: MultCounter, kind: MultKind, occurrences: int):
    if ctx is None:
        raise TypeError("metered kernel called without a counter")
    ctx.record(kind, occurrences)


# ---------------------------------------------------------------------------
# Elementwise kernels
# ---------------------------------------------------------------------------

def cmul(a: ArrayLike, b: ArrayLike, ctx: MultCounter) -> ArrayLike:
    """a * b with both operands complex (schoolbook product, 4 real multiplications)"""
    _metered(ctx, MultKind.COMPLEX_TIMES_COMPLEX, _size(a, b))
    return np.multiply(a, b)


def cscale(a: ArrayLike, r: ArrayLike, ctx: MultCounter) -> ArrayLike:
    """r * a with complex a and real r"""
    _metered(ctx, MultKind.COMPLEX_TIMES_REAL, _size(a, r))
    return np.multiply(a, np.real(r))


def rmul(a: ArrayLike, b: ArrayLike, ctx: MultCounter) -> ArrayLike:
    """Product of two reals"""
    _metered(ctx, MultKind.REAL_TIMES_REAL, _size(a, b))
    return np.multiply(np.real(a), np.real(b))


def sqmag(a: ArrayLike, ctx: MultCounter) -> ArrayLike:
    """re^2 + im^2"""
    _metered(ctx, MultKind.SQUARED_MAGNITUDE, _size(a))
    a = np.asarray(a)
    return a.real * a.real + a.imag * a.imag


def div_real(a: ArrayLike, b: ArrayLike, ctx: MultCounter) -> ArrayLike:
    """a / b for reals; b must be nonzero everywhere"""
    if np.any(np.asarray(b) == 0):
        raise ZeroDivisionError("div_real with a zero divisor")
    _metered(ctx, MultKind.REAL_DIVISION, _size(a, b))
    return np.divide(np.real(a), np.real(b))


def cdiv_real(a: ArrayLike, r: ArrayLike, ctx: MultCounter) -> ArrayLike:
    """Complex a divided by real r: two real divisions"""
    if np.any(np.asarray(r) == 0):
        raise ZeroDivisionError("cdiv_real with a zero divisor")
    _metered(ctx, MultKind.REAL_DIVISION, 2 * _size(a, r))
    return np.divide(a, np.real(r))


def hadamard(a: ArrayLike, b: ArrayLike, ctx: MultCounter) -> ArrayLike:
    """Componentwise product Re(a)Re(b) + i Im(a)Im(b) (split-complex gating)"""
    _metered(ctx, MultKind.REAL_TIMES_REAL, 2 * _size(a, b))
    a, b = np.asarray(a), np.asarray(b)
    return complex_from_parts(a.real * b.real, a.imag * b.imag)


def cinner_re(a: ArrayLike, b: ArrayLike, ctx: MultCounter) -> ArrayLike:
    """Re(conj(a) * b) = Re(a)Re(b) + Im(a)Im(b)"""
    _metered(ctx, MultKind.REAL_TIMES_REAL, 2 * _size(a, b))
    a, b = np.asarray(a), np.asarray(b)
    return a.real * b.real + a.imag * b.imag


def normalize(z: ArrayLike, ctx: MultCounter, eps: float = NORM_EPS) -> Tuple[np.ndarray, np.ndarray]:
    """Project onto the unit circle: returns (z / |z|, |z|).

    |z| is floored at `eps`; the square root is free, so each value costs one
    squared magnitude plus two real divisions.
    """
    modulus = np.maximum(np.sqrt(sqmag(z, ctx)), eps)
    return cdiv_real(z, modulus, ctx), modulus


# ---------------------------------------------------------------------------
# Matrix kernels (additions of the partial products are free)
# ---------------------------------------------------------------------------

def _check_matvec(W: np.ndarray, x: np.ndarray, axis: int):
    if W.ndim != 2 or x.ndim != 1 or W.shape[axis] != x.shape[0]:
        raise DimensionError(f"cannot contract matrix {W.shape} with vector {x.shape}")


def matvec(W: np.ndarray, x: np.ndarray, ctx: MultCounter) -> np.ndarray:
    """W @ x, complex operands"""
    W, x = np.asarray(W), np.asarray(x)
    _check_matvec(W, x, 1)
    _metered(ctx, MultKind.COMPLEX_TIMES_COMPLEX, W.size)
    return W @ x


def matvec_real(W: np.ndarray, phi: np.ndarray, ctx: MultCounter) -> np.ndarray:
    """W @ phi with complex W and real phi"""
    W, phi = np.asarray(W), np.asarray(phi)
    _check_matvec(W, phi, 1)
    _metered(ctx, MultKind.COMPLEX_TIMES_REAL, W.size)
    return W @ np.real(phi)


def rmatvec(W: np.ndarray, e: np.ndarray, ctx: MultCounter) -> np.ndarray:
    """W^H @ e: errors sent back through the conjugate transpose"""
    W, e = np.asarray(W), np.asarray(e)
    _check_matvec(W, e, 0)
    _metered(ctx, MultKind.COMPLEX_TIMES_COMPLEX, W.size)
    return np.conj(W).T @ e


def rmatvec_re(W: np.ndarray, e: np.ndarray, ctx: MultCounter) -> np.ndarray:
    """Re(W^H @ e), two real multiplications per entry"""
    W, e = np.asarray(W), np.asarray(e)
    _check_matvec(W, e, 0)
    return cinner_re(W, e[:, None], ctx).sum(axis=0)


def outer_conj(e: np.ndarray, h: np.ndarray, ctx: MultCounter) -> np.ndarray:
    """e h^H: the complex-gradient outer product"""
    e, h = np.asarray(e), np.asarray(h)
    _metered(ctx, MultKind.COMPLEX_TIMES_COMPLEX, e.size * h.size)
    return np.outer(e, np.conj(h))


def outer_real(e: np.ndarray, phi: np.ndarray, ctx: MultCounter) -> np.ndarray:
    """e phi^T with real phi"""
    e, phi = np.asarray(e), np.asarray(phi)
    _metered(ctx, MultKind.COMPLEX_TIMES_REAL, e.size * phi.size)
    return np.outer(e, np.real(phi))


# ---------------------------------------------------------------------------
# Zero-cost helpers: activation lookups, fused updates, assembly
# ---------------------------------------------------------------------------

def complex_from_parts(re: ArrayLike, im: ArrayLike) -> np.ndarray:
    """Place two real arrays into the real and imaginary slots"""
    re, im = np.broadcast_arrays(np.asarray(re, dtype=float), np.asarray(im, dtype=float))
    out = np.empty(re.shape, dtype=complex)
    out.real = re
    out.imag = im
    return out


def ctanh(z: ArrayLike) -> np.ndarray:
    """Fully complex tanh"""
    return np.tanh(z)


def split_tanh(z: ArrayLike) -> np.ndarray:
    """tanh(Re z) + i tanh(Im z)"""
    z = np.asarray(z)
    return complex_from_parts(np.tanh(z.real), np.tanh(z.imag))


def csech(z: ArrayLike) -> np.ndarray:
    return 1.0 / np.cosh(z)


def csinh(z: ArrayLike) -> np.ndarray:
    return np.sinh(z)


def rcosh(u: ArrayLike) -> np.ndarray:
    return np.cosh(np.real(u))


def gaussian(t: ArrayLike) -> np.ndarray:
    """exp(-t) for real t >= 0"""
    return np.exp(-np.real(t))


def fused_axpy(param: np.ndarray, rate: float, direction: ArrayLike) -> np.ndarray:
    """param + rate * direction with the rate fused into the producing product (cost 0)"""
    return param + rate * np.asarray(direction)


def mvn_rate(eta: float, fan_in: int) -> float:
    """Error-correction rate eta / (n + 1) of a multi-valued neuron with n inputs"""
    return eta / (fan_in + 1)


def fan_in_scale(fan_in: int) -> float:
    return 1.0 / np.sqrt(fan_in)


def uniform_complex(rng: np.random.Generator, shape, scale: float = 1.0,
                    low: float = -1.0, high: float = 1.0) -> np.ndarray:
    """Complex array with independent uniform real and imaginary parts, times `scale`.

    Initialisation is not part of the cost model and is not metered.
    """
    re = rng.uniform(low, high, size=shape)
    im = rng.uniform(low, high, size=shape)
    return complex_from_parts(re, im) * scale


# ---------------------------------------------------------------------------
# Unmetered monitors (reporting only, never part of an algorithm's arithmetic)
# ---------------------------------------------------------------------------

def half_sq_norm(e: ArrayLike) -> float:
    """Loss 1/2 ||e||^2"""
    e = np.asarray(e)
    return float(0.5 * np.sum(e.real ** 2 + e.imag ** 2))


def angular_loss(d: ArrayLike, y: ArrayLike) -> float:
    """1/2 sum of squared wrapped phase differences between d and y"""
    diff = np.angle(np.asarray(d)) - np.angle(np.asarray(y))
    wrapped = (diff + np.pi) % (2 * np.pi) - np.pi
    return float(0.5 * np.sum(wrapped ** 2))
