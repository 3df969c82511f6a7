"""Fourier transforms on roots of unity and deflation by interpolation."""
import math
from dataclasses import dataclass

import numpy as np

from .complexpoly import as_poly, degree, expand_factors, max_norm, rounding_floor
from .errors import NodeCollision
from . import kernels

COLLISION_RTOL = 1e-13
MAX_ROTATIONS = 8


def dft(values):
    """``out_j = sum_k values_k w^(jk)`` with ``w = exp(2 pi i/n)``.

    Applied to a coefficient vector this gives the polynomial's values at
    the n-th roots of unity.
    """
    x = np.asarray(values, dtype=np.complex128)
    return np.fft.ifft(x) * len(x)


def idft(values):
    """Inverse of :func:`dft`: ``out_k = (1/n) sum_j values_j w^(-jk)``."""
    x = np.asarray(values, dtype=np.complex128)
    return np.fft.fft(x) / len(x)


@dataclass
class DeflationResult:
    quotient: np.ndarray
    divisor: np.ndarray
    remainder_norm: float
    rotation: int = 0          # k in theta = pi k / (7(n+1)); 0 means plain roots of unity
    raw_leading: complex = 1.0  # leading coefficient before re-monicizing


def deflate(psi, v):
    """Divide the approximate roots ``v`` out of the monic ``psi``.

    The quotient of degree ``n = deg psi - len(v)`` is recovered from the
    values ``psi/p`` at the (n+1)-st roots of unity, ``p = prod (z - v_k)``.
    If ``p`` nearly vanishes at a node, the nodes are rotated by
    ``theta = pi k/(7(n+1))``, ``k = 1..8``.
    """
    psi = as_poly(psi)
    v = np.asarray(v, dtype=np.complex128).ravel()
    d = degree(psi)
    if len(v) > d:
        raise ValueError(f"cannot divide {len(v)} roots out of a degree-{d} polynomial")
    if abs(psi[-1] - 1.0) > 1e-8:
        raise ValueError("psi must be monic")
    n = d - len(v)
    p = expand_factors(v)
    base = np.exp(2j * np.pi * np.arange(n + 1) / (n + 1))

    for k in range(MAX_ROTATIONS + 1):
        theta = math.pi * k / (7 * (n + 1))
        nodes = base * complex(math.cos(theta), math.sin(theta)) if k else base
        pv = kernels.horner(p, nodes)
        mags = np.abs(pv)
        # relative test, plus values indistinguishable from zero under rounding
        if (np.all(mags >= COLLISION_RTOL * mags.max())
                and np.all(mags > rounding_floor(p, nodes))):
            break
    else:
        raise NodeCollision(
            f"divisor vanishes at interpolation nodes after {MAX_ROTATIONS} rotations")

    q = idft(kernels.horner(psi, nodes) / pv)
    if k:
        q = q * np.exp(-1j * theta * np.arange(n + 1))
    lead = complex(q[-1])
    q = q / lead
    q[-1] = 1.0
    rem = max_norm(psi - np.convolve(p, q))
    return DeflationResult(q, p, rem, k, lead)
