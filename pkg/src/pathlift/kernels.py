"""Hot numeric kernels with a numba path and a vectorized numpy path.

Every public kernel takes ``backend=None`` and dispatches to the active
backend (see :func:`active_backend` / :func:`use_backend`). Both paths run
the same floating-point recurrences in the same order, so results agree to
rounding; tests compare them directly.

Coefficient arrays are complex128, ascending powers.
"""
import math
from contextlib import contextmanager

import numpy as np

from ._jit import HAVE_NUMBA, jit

# Per-point status codes shared by the tracking and Newton kernels.
OK = 0
DIVERGED = 1
FLAT = 2  # |f'| below DERIV_FLOOR

DERIV_FLOOR = 1e-300

_active = "numba" if HAVE_NUMBA else "numpy"


def active_backend():
    return _active


def available_backends():
    return ("numba", "numpy") if HAVE_NUMBA else ("numpy",)


def set_backend(name):
    global _active
    if name not in available_backends():
        raise ValueError(f"backend {name!r} not available; have {available_backends()}")
    _active = name


@contextmanager
def use_backend(name):
    prev = _active
    set_backend(name)
    try:
        yield
    finally:
        set_backend(prev)


def _pick(backend):
    name = _active if backend is None else backend
    if name == "numba":
        if not HAVE_NUMBA:
            raise ValueError("numba backend requested but numba is unavailable")
        return True
    if name != "numpy":
        raise ValueError(f"unknown backend {name!r}")
    return False


def _c(a):
    return np.ascontiguousarray(a, dtype=np.complex128)


# ---------------------------------------------------------------------------
# Horner evaluation

def _np_horner(coeffs, z):
    out = np.full(z.shape, coeffs[-1], dtype=np.complex128)
    with np.errstate(over="ignore", invalid="ignore"):  # callers check finiteness
        for a in coeffs[-2::-1]:
            out = out * z + a
    return out


@jit
def _nb_horner(coeffs, z):
    n = coeffs.shape[0]
    out = np.empty(z.shape[0], np.complex128)
    for i in range(z.shape[0]):
        zi = z[i]
        acc = coeffs[n - 1]
        for j in range(n - 2, -1, -1):
            acc = acc * zi + coeffs[j]
        out[i] = acc
    return out


def horner(coeffs, z, backend=None):
    """Values of the polynomial at every point of ``z``."""
    coeffs, z = _c(coeffs), _c(z)
    if _pick(backend):
        return _nb_horner(coeffs, z)
    return _np_horner(coeffs, z)


def _np_horner_d(coeffs, z):
    p = np.full(z.shape, coeffs[-1], dtype=np.complex128)
    dp = np.zeros(z.shape, dtype=np.complex128)
    with np.errstate(over="ignore", invalid="ignore"):
        for a in coeffs[-2::-1]:
            dp = dp * z + p
            p = p * z + a
    return p, dp


@jit
def _nb_horner_d(coeffs, z):
    n = coeffs.shape[0]
    p_out = np.empty(z.shape[0], np.complex128)
    dp_out = np.empty(z.shape[0], np.complex128)
    for i in range(z.shape[0]):
        zi = z[i]
        p = coeffs[n - 1]
        dp = 0j
        for j in range(n - 2, -1, -1):
            dp = dp * zi + p
            p = p * zi + coeffs[j]
        p_out[i] = p
        dp_out[i] = dp
    return p_out, dp_out


def horner_with_derivative(coeffs, z, backend=None):
    """``(f(z), f'(z))`` in one Horner pass per point."""
    coeffs, z = _c(coeffs), _c(z)
    if _pick(backend):
        return _nb_horner_d(coeffs, z)
    return _np_horner_d(coeffs, z)


# ---------------------------------------------------------------------------
# Taylor coefficients f^(k)(z)/k! by repeated synthetic division

def _np_taylor(coeffs, z):
    n = coeffs.shape[0]
    b = np.empty((z.shape[0], n), dtype=np.complex128)
    b[:] = coeffs
    for k in range(n - 1):
        for j in range(n - 2, k - 1, -1):
            b[:, j] = b[:, j] + z * b[:, j + 1]
    return b


@jit
def _nb_taylor(coeffs, z):
    n = coeffs.shape[0]
    out = np.empty((z.shape[0], n), np.complex128)
    for i in range(z.shape[0]):
        zi = z[i]
        for j in range(n):
            out[i, j] = coeffs[j]
        for k in range(n - 1):
            for j in range(n - 2, k - 1, -1):
                out[i, j] = out[i, j] + zi * out[i, j + 1]
    return out


def taylor_many(coeffs, z, backend=None):
    """Row ``i`` holds ``f^(k)(z_i)/k!`` for ``k = 0..d``."""
    coeffs, z = _c(coeffs), _c(z)
    if _pick(backend):
        return _nb_taylor(coeffs, z)
    return _np_taylor(coeffs, z)


# ---------------------------------------------------------------------------
# Path lifting along the ray w_n = (1-h)^n w_0

def _np_plm(coeffs, z0, w0, nsteps, target, decay, escape, trace):
    npts = z0.shape[0]
    z = z0.copy()
    zhat = np.full(npts, np.nan + 0j, dtype=np.complex128)
    status = np.zeros(npts, dtype=np.int64)
    live = np.ones(npts, dtype=bool)
    top = int(nsteps.max()) + 1 if npts else 0
    if trace:
        res_tr = np.full((npts, top), np.nan)
        w_tr = np.full((npts, top), np.nan)
    else:
        res_tr = w_tr = None
    for s in range(top):
        idx = np.nonzero(live)[0]
        if idx.size == 0:
            break
        zs = z[idx]
        p, dp = _np_horner_d(coeffs, zs)
        if trace:
            wn = w0[idx] * decay ** s
            res_tr[idx, s] = np.abs(p - wn)
            w_tr[idx, s] = np.abs(wn)
        last = nsteps[idx] == s
        tgt = np.where(last, target[idx], w0[idx] * decay ** (s + 1))
        flat = np.abs(dp) < DERIV_FLOOR
        with np.errstate(all="ignore"):
            znew = zs - (p - tgt) / np.where(flat, 1.0, dp)
            lost = ~np.isfinite(znew) | (np.abs(znew) > escape)
        lost &= ~flat
        status[idx[flat]] = FLAT
        status[idx[lost]] = DIVERGED
        live[idx[flat | lost]] = False
        good = ~(flat | lost)
        z[idx[good]] = znew[good]
        fin = idx[good & last]
        zhat[fin] = z[fin]
        live[fin] = False
    return zhat, status, res_tr, w_tr


@jit
def _nb_plm(coeffs, z0, w0, nsteps, target, decay, escape, trace, res_tr, w_tr):
    n = coeffs.shape[0]
    npts = z0.shape[0]
    zhat = np.empty(npts, np.complex128)
    status = np.zeros(npts, np.int64)
    for i in range(npts):
        z = z0[i]
        zhat[i] = complex(np.nan, np.nan)
        for s in range(nsteps[i] + 1):
            p = coeffs[n - 1]
            dp = 0j
            for j in range(n - 2, -1, -1):
                dp = dp * z + p
                p = p * z + coeffs[j]
            if trace:
                wn = w0[i] * decay ** s
                res_tr[i, s] = abs(p - wn)
                w_tr[i, s] = abs(wn)
            if s == nsteps[i]:
                tgt = target[i]
            else:
                tgt = w0[i] * decay ** (s + 1)
            if abs(dp) < DERIV_FLOOR:
                status[i] = FLAT
                break
            z = z - (p - tgt) / dp
            if not (math.isfinite(z.real) and math.isfinite(z.imag)) or abs(z) > escape:
                status[i] = DIVERGED
                break
        if status[i] == OK:
            zhat[i] = z
    return zhat, status


def plm_track(coeffs, z0, w0, nsteps, target, h, escape, trace=False, backend=None):
    """Run the path-lifting iteration for a batch of start points.

    Point ``i`` takes ``nsteps[i]`` damped Newton steps toward
    ``w_n = (1-h)^n w0[i]`` and one final step toward ``target[i]``.

    Returns ``(z_hat, status, residual_trace, ray_trace)``. Lost points
    carry NaN in ``z_hat`` and a nonzero status. The traces (only when
    ``trace``) have shape ``(npts, max(nsteps)+1)``: ``|f(z_n) - w_n|`` and
    ``|w_n|`` for ``n = 0..N_i``, NaN-padded.
    """
    coeffs, z0, w0, target = _c(coeffs), _c(z0), _c(w0), _c(target)
    nsteps = np.ascontiguousarray(nsteps, dtype=np.int64)
    decay = 1.0 - float(h)
    if _pick(backend):
        npts = z0.shape[0]
        if trace:
            top = int(nsteps.max()) + 1 if npts else 0
            res_tr = np.full((npts, top), np.nan)
            w_tr = np.full((npts, top), np.nan)
        else:
            res_tr = w_tr = np.empty((0, 0))
        zhat, status = _nb_plm(coeffs, z0, w0, nsteps, target, decay,
                               float(escape), bool(trace), res_tr, w_tr)
        if not trace:
            res_tr = w_tr = None
        return zhat, status, res_tr, w_tr
    return _np_plm(coeffs, z0, w0, nsteps, target, decay, float(escape), trace)


# ---------------------------------------------------------------------------
# Plain Newton (polishing)

def _np_newton(coeffs, x, iters):
    x = x.copy()
    status = np.zeros(x.shape[0], dtype=np.int64)
    for _ in range(iters):
        live = status == OK
        p, dp = _np_horner_d(coeffs, x[live])
        flat = np.abs(dp) < DERIV_FLOOR
        with np.errstate(all="ignore"):
            step = p / np.where(flat, 1.0, dp)
        idx = np.nonzero(live)[0]
        status[idx[flat]] = FLAT
        x[idx[~flat]] -= step[~flat]
    x[status != OK] = np.nan
    return x, status


@jit
def _nb_newton(coeffs, x, iters):
    n = coeffs.shape[0]
    out = np.empty(x.shape[0], np.complex128)
    status = np.zeros(x.shape[0], np.int64)
    for i in range(x.shape[0]):
        z = x[i]
        for _ in range(iters):
            p = coeffs[n - 1]
            dp = 0j
            for j in range(n - 2, -1, -1):
                dp = dp * z + p
                p = p * z + coeffs[j]
            if abs(dp) < DERIV_FLOOR:
                status[i] = FLAT
                break
            z = z - p / dp
        out[i] = z if status[i] == OK else complex(np.nan, np.nan)
    return out, status


def newton(coeffs, x, iters, backend=None):
    """``iters`` plain Newton steps from every point of ``x``."""
    coeffs, x = _c(coeffs), _c(x)
    if _pick(backend):
        return _nb_newton(coeffs, x, int(iters))
    return _np_newton(coeffs, x, int(iters))


def warmup():
    """Compile the numba kernels once (no-op on the numpy backend)."""
    if not HAVE_NUMBA:
        return
    c = np.array([-0.25, 0, 1], dtype=np.complex128)
    z = np.array([1.5 + 0j, -1.5 + 0j])
    horner(c, z, "numba")
    horner_with_derivative(c, z, "numba")
    taylor_many(c, z, "numba")
    newton(c, z, 2, "numba")
    n = np.array([3, 4])
    plm_track(c, z, z, n, z * 1e-3, 1 / 27, 10.0, False, "numba")
    plm_track(c, z, z, n, z * 1e-3, 1 / 27, 10.0, True, "numba")
