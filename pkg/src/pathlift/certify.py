"""Certificates for Newton convergence and root identity.

``alpha(f, z) < 1/8`` certifies ``z`` as an approximate zero: plain Newton
from ``z`` converges quadratically from the first step.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .complexpoly import as_poly, evaluate, derivative, rounding_floor
from .errors import DerivativeVanishes

ALPHA_CERT = 1 / 8
DERIV_FLOOR = kernels.DERIV_FLOOR


@dataclass(frozen=True)
class AlphaReport:
    alpha: float
    newton_step: complex   # f(z)/f'(z)
    argmax_k: int          # k attaining the max; 0 when deg f < 2


def _alpha_from_taylor(c):
    # c = [f, f', f''/2, ...] at one point; moduli only, so unit scalings cancel exactly
    m = np.abs(c)
    c1 = m[1]
    u = m[0] / c1
    best = 0.0
    arg = 2 if len(c) >= 3 else 0
    for k in range(2, len(c)):
        if m[k] == 0.0:
            continue
        ratio = m[k] / c1
        if 0.0 < ratio < math.inf:
            lr = math.log(ratio)
        else:
            lr = math.log(m[k]) - math.log(c1)
        term = u * math.exp(lr / (k - 1))
        if term > best:
            best, arg = term, k
    return best, arg


def alpha(f, z):
    """Smale's alpha: ``max_{k>1} |f/f'| |f^(k)/(k! f')|^{1/(k-1)}`` at ``z``."""
    f = as_poly(f)
    c = kernels.taylor_many(f, np.array([z], dtype=np.complex128))[0]
    if len(c) < 2 or abs(c[1]) < DERIV_FLOOR:
        raise DerivativeVanishes(f"|f'({z!r})| below {DERIV_FLOOR:g}")
    a, k = _alpha_from_taylor(c)
    return AlphaReport(a, complex(c[0] / c[1]), k)


def alpha_many(f, points):
    """Alpha at each point; NaN where the point is lost or ``f'`` vanishes."""
    f = as_poly(f)
    pts = np.asarray(points, dtype=np.complex128).ravel()
    out = np.full(pts.shape, np.nan)
    ok = np.isfinite(pts)
    if not ok.any():
        return out
    rows = kernels.taylor_many(f, pts[ok])
    for i, c in zip(np.flatnonzero(ok), rows):
        if len(c) >= 2 and abs(c[1]) >= DERIV_FLOOR:
            out[i] = _alpha_from_taylor(c)[0]
    return out


def contraction_B(r):
    """Newton residual contraction bound ``2r (1+r)^3 / (1-r)^5``, valid for r < 0.148."""
    if not 0.0 <= r < 0.148:
        raise ValueError(f"r = {r} outside [0, 0.148)")
    return 2.0 * r * (1.0 + r) ** 3 / (1.0 - r) ** 5


def duplicate_radius(psi, y):
    """``3 |psi(y)| / |psi'(y)|`` with ``|psi(y)|`` floored at Horner's rounding error."""
    val = abs(evaluate(psi, y))
    dval = abs(evaluate(derivative(psi), y))
    if dval < DERIV_FLOOR:
        raise DerivativeVanishes(f"|psi'({y!r})| below {DERIV_FLOOR:g}")
    val = max(val, float(rounding_floor(psi, np.array([y]))[0]))
    return 3.0 * val / dval


def same_root(psi, accepted, candidate):
    """True when ``candidate`` and ``accepted`` approximate the same simple root.

    ``candidate`` must be the point with the larger ``|psi|``.
    """
    psi = as_poly(psi)
    return abs(accepted - candidate) < duplicate_radius(psi, candidate)
