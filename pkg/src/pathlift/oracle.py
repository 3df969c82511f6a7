"""Reference root solver for tests and CLI cross-checks.

Aberth-Ehrlich simultaneous iteration. It shares nothing with the
path-lifting pipeline beyond plain Horner evaluation, which is what makes
it usable as ground truth.
"""
import math
from dataclasses import dataclass

import numpy as np

from .complexpoly import as_poly, degree, max_norm, root_radius_bound
from .errors import NoConvergence

_EPS = np.finfo(np.float64).eps
_OFFSET = (math.sqrt(5) - 1) / 2  # irrational start angle


@dataclass
class OracleResult:
    roots: np.ndarray
    max_backward_error: float
    iterations: int


def _horner_d(p, z):
    v = p[-1]
    dv = 0j
    for a in p[-2::-1]:
        dv = dv * z + v
        v = v * z + a
    return v, dv


def oracle_roots(p, tol=1e-13, max_sweeps=500):
    """All roots of ``p`` with multiplicity.

    Stops when every per-root update is below ``tol`` or when every
    residual is already at Horner's rounding level (the only attainable
    stop near multiple roots). Raises :class:`NoConvergence` otherwise.
    """
    p = as_poly(p)
    d = degree(p)
    if d < 1:
        raise ValueError("need degree >= 1")
    p = p / p[-1]
    if not np.any(p[:-1]):
        return OracleResult(np.zeros(d, dtype=np.complex128), 0.0, 0)
    r = 0.9 * root_radius_bound(p)
    z = r * np.exp(1j * (2 * np.pi * np.arange(d) / d + _OFFSET))
    abs_p = np.abs(p)

    for sweep in range(1, max_sweeps + 1):
        biggest = 0.0
        settled = True
        for k in range(d):
            zk = z[k]
            v, dv = _horner_d(p, zk)
            rad = 8 * d * _EPS * _horner_real(abs_p, abs(zk))
            if abs(v) > rad:
                settled = False
            if v == 0:
                continue
            s = 0j
            for j in range(d):
                if j != k:
                    diff = zk - z[j]
                    if diff != 0:
                        s += 1.0 / diff
            den = dv - v * s
            if den == 0:
                den = _EPS * (1 + abs(dv))
            step = v / den
            z[k] = zk - step
            biggest = max(biggest, abs(step))
        if biggest < tol or settled:
            break
    else:
        raise NoConvergence(f"no convergence after {max_sweeps} sweeps "
                            f"(last update {biggest:.3g})")
    back = max(abs(_horner_d(p, zk)[0]) for zk in z) / max_norm(p)
    return OracleResult(z, float(back), sweep)


def _horner_real(a, x):
    acc = a[-1]
    for c in a[-2::-1]:
        acc = acc * x + c
    return acc


def _perfect_matching(ok):
    n = ok.shape[0]
    match = [-1] * n

    def augment(i, seen):
        for j in np.flatnonzero(ok[i]):
            if not seen[j]:
                seen[j] = True
                if match[j] < 0 or augment(match[j], seen):
                    match[j] = i
                    return True
        return False

    return all(augment(i, [False] * n) for i in range(n))


def match_multisets(a, b):
    """Bottleneck distance: min over bijections of the max pairwise distance."""
    a = np.asarray(a, dtype=np.complex128).ravel()
    b = np.asarray(b, dtype=np.complex128).ravel()
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    if len(a) == 0:
        return 0.0
    dist = np.abs(a[:, None] - b[None, :])
    levels = np.unique(dist)
    lo, hi = 0, len(levels) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _perfect_matching(dist <= levels[mid]):
            hi = mid
        else:
            lo = mid + 1
    return float(levels[lo])
