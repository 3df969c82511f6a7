"""Dense complex polynomials: evaluation, norms, root bounds, rescaling.

A polynomial is a 1-D complex128 array of coefficients in ascending order,
``p[j]`` multiplying ``z**j``. Use :func:`as_poly` at API boundaries to
coerce, trim trailing zeros, and check finiteness.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import EvaluationOverflow, TauUnderflow

EPS = np.finfo(np.float64).eps
TAU_FLOOR = 1e-250


def as_poly(coeffs):
    """Coerce to a trimmed complex coefficient vector.

    Trailing (high-order) zeros are dropped so ``p[-1] != 0`` unless the
    polynomial is identically zero, which is returned as ``[0]``.
    """
    p = np.atleast_1d(np.asarray(coeffs, dtype=np.complex128))
    if p.ndim != 1 or p.size == 0:
        raise ValueError("coefficients must be a nonempty 1-D sequence")
    if not np.all(np.isfinite(p)):
        raise ValueError("coefficients must be finite")
    nz = np.flatnonzero(p)
    if nz.size == 0:
        return np.zeros(1, dtype=np.complex128)
    return p[: nz[-1] + 1].copy()


def degree(p):
    return len(p) - 1


def evaluate(p, z):
    """Horner value of ``p`` at the scalar ``z``."""
    v = complex(kernels.horner(p, np.array([z], dtype=np.complex128))[0])
    if not (math.isfinite(v.real) and math.isfinite(v.imag)):
        raise EvaluationOverflow(f"non-finite value of degree-{degree(p)} polynomial at {z!r}")
    return v


def evaluate_many(p, points):
    """Batched Horner; element-wise identical to :func:`evaluate`."""
    pts = np.asarray(points, dtype=np.complex128).ravel()
    if pts.size == 0:
        return np.zeros(0, dtype=np.complex128)
    vals = kernels.horner(p, pts)
    bad = np.flatnonzero(~np.isfinite(vals))
    if bad.size:
        i = int(bad[0])
        raise EvaluationOverflow(f"non-finite value at point index {i} ({pts[i]!r})", index=i)
    return vals


def eval_bound(p, points):
    """``sum |a_j| |z|^j`` at each point; scales Horner's rounding error."""
    r = np.abs(np.asarray(points, dtype=np.complex128))
    acc = np.full(r.shape, abs(p[-1]))
    for a in np.abs(p[-2::-1]):
        acc = acc * r + a
    return acc


def rounding_floor(p, points):
    """A priori bound on the absolute rounding error of complex Horner."""
    return 4.0 * max(degree(p), 1) * EPS * eval_bound(p, points)


def derivative(p):
    if degree(p) < 1:
        return np.zeros(1, dtype=np.complex128)
    return p[1:] * np.arange(1, len(p))


def taylor_coeffs_at(p, z):
    """``[f(z), f'(z), f''(z)/2!, ..., f^(d)(z)/d!]``."""
    return kernels.taylor_many(p, np.array([z], dtype=np.complex128))[0]


def max_norm(p):
    return float(np.max(np.abs(p)))


def _scale_radius(p):
    # max_{j<d} |a_j/a_d|^{1/(d-j)}; 0 when every lower coefficient vanishes
    d = degree(p)
    mods = np.abs(p[:-1] / p[-1])
    best = 0.0
    for j in range(d):
        if mods[j] > 0:
            best = max(best, math.exp(math.log(mods[j]) / (d - j)))
    return best


def root_radius_bound(p):
    """Radius of an open disk about 0 containing every root.

    A result of 0 means all roots sit at the origin.
    """
    p = as_poly(p)
    if degree(p) < 1:
        raise ValueError("root bound needs degree >= 1")
    return 2.0 * _scale_radius(p)


def _rescale(p, scale):
    # coefficients of p(scale*z)/scale^d for monic p
    d = degree(p)
    out = np.array(p, dtype=np.complex128)
    for j in range(d):
        out[j] = p[j] * scale ** (j - d)
    out[-1] = 1.0
    return out


def normalize_to_pd1(p):
    """Return ``(q, B)`` with ``q(z) = p(Bz)/(B^d a_d)`` monic, ``|q_j| <= 1``.

    Roots of ``p`` are ``B`` times the roots of ``q``.
    """
    p = as_poly(p)
    if degree(p) < 1:
        raise ValueError("cannot normalize a constant polynomial")
    B = _scale_radius(p)
    if B == 0.0:
        B = 1.0
    monic = p / p[-1]
    monic[-1] = 1.0
    return _rescale(monic, B), B


@dataclass(frozen=True)
class NormalizedInput:
    f0: np.ndarray
    K: float
    original_degree: int


def rescale_main(phi, eps, tau_floor=TAU_FLOOR):
    """Rescale a monic ``phi`` so its roots lie in the disk of radius 1/2.

    Returns ``(NormalizedInput, tau)`` where ``K = 4 max|a_j|^{1/(d-j)}``
    and ``tau = eps/(2 K^d) (4/7)^(d+3)``.
    """
    phi = as_poly(phi)
    d = degree(phi)
    if d < 1:
        raise ValueError("need degree >= 1")
    if abs(phi[-1] - 1.0) > 1e-12:
        raise ValueError(f"phi must be monic (leading coefficient {phi[-1]!r})")
    if not eps > 0:
        raise ValueError("eps must be positive")
    phi = phi.copy()
    phi[-1] = 1.0
    s = _scale_radius(phi)
    K = 4.0 * s if s > 0 else 1.0
    log_tau = math.log(eps) - math.log(2.0) - d * math.log(K) + (d + 3) * math.log(4 / 7)
    if log_tau < math.log(tau_floor):
        raise TauUnderflow(
            f"tau = exp({log_tau:.1f}) is below the floor {tau_floor:g} for degree {d}; "
            "double precision supports roughly d <= 24 at useful epsilon")
    tau = eps / (2.0 * K ** d) * (4 / 7) ** (d + 3)
    if not (tau > 0 and math.isfinite(tau)):
        tau = math.exp(log_tau)
    return NormalizedInput(_rescale(phi, K), K, d), tau


def expand_factors(roots):
    """Monic polynomial with exactly the given roots (ascending coefficients)."""
    out = np.ones(1, dtype=np.complex128)
    for r in np.asarray(roots, dtype=np.complex128).ravel():
        nxt = np.zeros(len(out) + 1, dtype=np.complex128)
        nxt[1:] = out
        nxt[:-1] -= r * out
        out = nxt
    return out


def residual_norm(phi, roots):
    """``|| phi - prod (z - root) ||`` in the coefficient max-norm."""
    phi = as_poly(phi)
    roots = np.asarray(roots, dtype=np.complex128).ravel()
    if len(roots) != degree(phi):
        raise ValueError(f"expected {degree(phi)} roots, got {len(roots)}")
    return max_norm(phi - expand_factors(roots))


def factor_to_root_precision(eps_root, d):
    """Factorization tolerance ``(eps_root/8d)^d`` that pins roots to ``eps_root``."""
    if not eps_root > 0:
        raise ValueError("eps_root must be positive")
    if d < 1:
        raise ValueError("d must be >= 1")
    log_val = d * (math.log(eps_root) - math.log(8 * d))
    if log_val < math.log(TAU_FLOOR):
        raise TauUnderflow(f"(eps_root/8d)^d underflows for d = {d}")
    return (eps_root / (8 * d)) ** d
